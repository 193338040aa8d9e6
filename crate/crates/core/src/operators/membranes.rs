//! Rectangular (diamond-shaped) membrane operators whose syndrome is four
//! isolated monopoles at the corners.

use crate::error::{Error, Result};
use crate::lattice::{Axis, Context, Site, Vec3};
use crate::pauli::{Letter, PauliWord};

/// Even sites of the membrane: the diamond `|da| + |db| <= r` in the
/// plane through `center` orthogonal to `axis`.
pub fn membrane_sites(center: Site, r: i64, axis: Axis) -> Vec<Site> {
    let (e1, e2) = in_plane_axes(axis);
    let mut out = Vec::new();
    for da in -r..=r {
        for db in -(r - da.abs())..=(r - da.abs()) {
            let u = center + e1.unit().scaled(da) + e2.unit().scaled(db);
            if u.is_even() {
                out.push(u);
            }
        }
    }
    out
}

fn in_plane_axes(axis: Axis) -> (Axis, Axis) {
    match axis {
        Axis::X => (Axis::Y, Axis::Z),
        Axis::Y => (Axis::Z, Axis::X),
        Axis::Z => (Axis::X, Axis::Y),
    }
}

/// `W(M) = prod_{u in M} sigma^axis_u` for even radius `r`.
pub fn membrane(ctx: &Context, center: Site, r: i64, axis: Axis) -> Result<PauliWord> {
    if r < 0 || r % 2 != 0 {
        return Err(Error::Config(format!(
            "membrane radius must be even and non-negative, got {r}"
        )));
    }
    if !center.is_even() {
        return Err(Error::Parity {
            site: center,
            expected: "even",
        });
    }
    let letter = Letter::of_axis(axis);
    let mut word = PauliWord::identity(*ctx);
    for u in membrane_sites(center, r, axis) {
        let v = ctx.canonical(u);
        if !ctx.contains(v) {
            return Err(Error::OutOfWindow(v));
        }
        word.mul_letter(v, letter)?;
    }
    Ok(word)
}

/// The four monopole corners `center +- (r+1) e1, center +- (r+1) e2`.
pub fn membrane_corners(center: Site, r: i64, axis: Axis) -> [Site; 4] {
    let (e1, e2) = in_plane_axes(axis);
    [
        center + e1.unit().scaled(r + 1),
        center - e1.unit().scaled(r + 1),
        center + e2.unit().scaled(r + 1),
        center - e2.unit().scaled(r + 1),
    ]
}

/// Convenience: corner displacement check used in tests.
pub(crate) fn _corner_offsets(r: i64) -> [Vec3; 4] {
    [
        Vec3::new(r + 1, 0, 0),
        Vec3::new(-r - 1, 0, 0),
        Vec3::new(0, r + 1, 0),
        Vec3::new(0, -r - 1, 0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Window;
    use crate::pauli::generator;

    fn window(r: i64) -> Context {
        Context::Patch(Window::with_margin([-r, -r, -r], [r, r, r], 3).unwrap())
    }

    #[test]
    fn membrane_weight_enumeration() {
        // Even sites with |i| + |j| <= r have |i| + |j| even, so the count
        // is 1 + 4*2 + 4*4 + ... = (r+1)^2.
        for r in [0i64, 2, 4, 6] {
            let sites = membrane_sites(Site::new(0, 0, 0), r, Axis::Z);
            assert_eq!(sites.len() as i64, (r + 1) * (r + 1));
        }
        // The z-plane diamond at r = 2, enumerated by hand, has 9 sites.
        assert_eq!(membrane_sites(Site::new(0, 0, 0), 2, Axis::Z).len(), 9);
    }

    #[test]
    fn odd_radius_rejected() {
        let ctx = window(8);
        assert!(matches!(
            membrane(&ctx, Site::new(0, 0, 0), 3, Axis::Z),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn degenerate_radius_zero_is_single_letter() {
        let ctx = window(6);
        let w = membrane(&ctx, Site::new(0, 0, 0), 0, Axis::Z).unwrap();
        assert_eq!(w.weight(), 1);
        assert_eq!(w.letter_at(Site::new(0, 0, 0)), Some(Letter::Z));
        // Four excitations at the four nearest in-plane generators.
        let mut excited = 0;
        for v in crate::lattice::all_sites(&ctx) {
            if v.is_odd() && ctx.neighbors(v).iter().all(Option::is_some) {
                let s = generator(&ctx, v).unwrap();
                if !w.commutes_with(&s).unwrap() {
                    excited += 1;
                }
            }
        }
        assert_eq!(excited, 4);
    }

    #[test]
    fn membrane_syndrome_is_four_corner_monopoles() {
        let ctx = window(9);
        for (axis, r) in [(Axis::Z, 2i64), (Axis::X, 2), (Axis::Y, 4)] {
            let center = Site::new(0, 0, 0);
            let w = membrane(&ctx, center, r, axis).unwrap();
            let mut excited = Vec::new();
            for v in crate::lattice::all_sites(&ctx) {
                if v.is_odd() && ctx.neighbors(v).iter().all(Option::is_some) {
                    let s = generator(&ctx, v).unwrap();
                    if !w.commutes_with(&s).unwrap() {
                        excited.push(v);
                    }
                }
            }
            let mut corners = membrane_corners(center, r, axis).to_vec();
            corners.sort_unstable();
            excited.sort_unstable();
            assert_eq!(excited, corners, "axis {axis:?} r {r}");
        }
    }
}
