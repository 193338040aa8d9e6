//! Constructors for every operator family of the model: rigid strings and
//! their closed string-nets (tetrahedra), flexible bilayer strings with
//! their link/plaquette/star calculus, membranes and half-filled
//! membranes, and the logical / gauge operator sets on coprime tori.
//!
//! Constructors are pure: they multiply single-qubit letters into a
//! phase-tracked word and never touch shared state.

mod bilayer;
mod logical;
mod membranes;
mod strings;

pub use bilayer::{link, plaquette, star};
pub use logical::{
    gauge_groups, half_membrane, logical_set, z_bar_1, z_bar_2, GaugeGroups, HalfMembraneSpec,
    LogicalSet, LABELS,
};
pub use membranes::{membrane, membrane_corners, membrane_sites};
pub use strings::{
    closed_rigid_string, dislocation_pair, dislocation_sites, flexible_endpoint_sites,
    flexible_sites, flexible_string, loop_winding, random_closed_flexible_loop,
    rigid_endpoint_sites, rigid_letter, rigid_string, tetrahedron, tetrahedron_interior,
    winding_staircase, DislocationSpec, FlexibleStringSpec, RigidStringSpec, TetrahedronSpec,
};

use crate::lattice::{Axis, Vec3};

/// Link step vectors of a `[t]`-bilayer: `lambda(x) = (0, t_y, t_z)`,
/// `lambda(y) = (t_x, 0, t_z)`, `lambda(z) = (t_x, t_y, 0)`.
pub fn lambda(t: Vec3, axis: Axis) -> Vec3 {
    match axis {
        Axis::X => Vec3::new(0, t.y, t.z),
        Axis::Y => Vec3::new(t.x, 0, t.z),
        Axis::Z => Vec3::new(t.x, t.y, 0),
    }
}
