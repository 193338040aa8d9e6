//! Half-filled membranes and the logical / gauge operator sets of a
//! coprime-odd torus.
//!
//! A half-filled membrane `sigma^alpha_{abc}` acts with one letter on the
//! sublattice `Lambda_abc` intersected with a single coordinate plane.
//! With `p_x, p_y, p_z` odd and pairwise coprime the twelve half-filled
//! membranes generate the full logical algebra of the four encoded qubits;
//! closed flexible strings generate `<S, Zbar_1, Zbar_2>` and closed rigid
//! strings generate the six same-letter membrane pairs.

use crate::error::{Error, Result};
use crate::lattice::{Axis, Context, LatticeSpec, Site};
use crate::pauli::{Letter, PauliWord};

/// One parity class intersected with one coordinate plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfMembraneSpec {
    pub axis: Axis,
    /// Parity label `(a, b, c)` with `a + b + c` even.
    pub abc: (i64, i64, i64),
    /// Fixed coordinate of the plane; must match the label parity on the
    /// plane axis. Shifting by 2 gives stabilizer-equivalent operators.
    pub offset: i64,
}

impl HalfMembraneSpec {
    pub fn canonical(axis: Axis, abc: (i64, i64, i64)) -> Self {
        let offset = match axis {
            Axis::X => abc.0,
            Axis::Y => abc.1,
            Axis::Z => abc.2,
        };
        HalfMembraneSpec { axis, abc, offset }
    }

    fn validate(&self) -> Result<()> {
        let (a, b, c) = self.abc;
        if ![a, b, c].iter().all(|v| *v == 0 || *v == 1) || (a + b + c) % 2 != 0 {
            return Err(Error::Config(format!(
                "half-membrane label must be one of 000, 011, 101, 110, got {}{}{}",
                a, b, c
            )));
        }
        let along = match self.axis {
            Axis::X => a,
            Axis::Y => b,
            Axis::Z => c,
        };
        if self.offset.rem_euclid(2) != along {
            return Err(Error::Config(format!(
                "plane offset {} has the wrong parity for label {}{}{}",
                self.offset, a, b, c
            )));
        }
        Ok(())
    }
}

/// `sigma^alpha_{abc}`: one Pauli letter over `Lambda_abc` in the plane
/// `coord_alpha = offset`. Weight `p_beta * p_gamma`.
pub fn half_membrane(ctx: &Context, spec: &HalfMembraneSpec) -> Result<PauliWord> {
    let Context::Torus(lattice) = ctx else {
        return Err(Error::InvalidOperator(
            "half-filled membranes need a periodic context".into(),
        ));
    };
    spec.validate()?;
    let (a, b, c) = spec.abc;
    let [lx, ly, lz] = lattice.dims();
    let letter = Letter::of_axis(spec.axis);
    let mut word = PauliWord::identity(*ctx);
    match spec.axis {
        Axis::X => {
            for j in (b..ly).step_by(2) {
                for k in (c..lz).step_by(2) {
                    word.mul_letter(ctx.canonical(Site::new(spec.offset, j, k)), letter)?;
                }
            }
        }
        Axis::Y => {
            for i in (a..lx).step_by(2) {
                for k in (c..lz).step_by(2) {
                    word.mul_letter(ctx.canonical(Site::new(i, spec.offset, k)), letter)?;
                }
            }
        }
        Axis::Z => {
            for i in (a..lx).step_by(2) {
                for j in (b..ly).step_by(2) {
                    word.mul_letter(ctx.canonical(Site::new(i, j, spec.offset)), letter)?;
                }
            }
        }
    }
    Ok(word)
}

/// The four even parity labels in a fixed order.
pub const LABELS: [(i64, i64, i64); 4] = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)];

fn require_coprime_odd(spec: LatticeSpec) -> Result<()> {
    if !spec.is_coprime_odd() {
        return Err(Error::Config(format!(
            "logical set needs odd pairwise-coprime half-dimensions, got {},{},{}",
            spec.p_x, spec.p_y, spec.p_z
        )));
    }
    Ok(())
}

fn sigma(ctx: &Context, axis: Axis, abc: (i64, i64, i64)) -> PauliWord {
    half_membrane(ctx, &HalfMembraneSpec::canonical(axis, abc)).unwrap()
}

fn product(ctx: &Context, parts: &[PauliWord]) -> PauliWord {
    let mut word = PauliWord::identity(*ctx);
    for p in parts {
        word = word.mul(p).unwrap();
    }
    word
}

/// `Zbar_1 = prod_abc sigma^x_{abc}`.
pub fn z_bar_1(spec: LatticeSpec) -> Result<PauliWord> {
    require_coprime_odd(spec)?;
    let ctx = Context::Torus(spec);
    Ok(product(&ctx, &LABELS.map(|abc| sigma(&ctx, Axis::X, abc))))
}

/// `Zbar_2 = prod_abc sigma^z_{abc}`.
pub fn z_bar_2(spec: LatticeSpec) -> Result<PauliWord> {
    require_coprime_odd(spec)?;
    let ctx = Context::Torus(spec);
    Ok(product(&ctx, &LABELS.map(|abc| sigma(&ctx, Axis::Z, abc))))
}

/// Logical Pauli operators on the four encoded qubits; qubits 1 and 2 are
/// the gauge pair touched by closed flexible strings, qubits 3 and 4 are
/// the protected subsystem.
#[derive(Clone, Debug)]
pub struct LogicalSet {
    pub x_bar: [PauliWord; 4],
    pub z_bar: [PauliWord; 4],
}

impl LogicalSet {
    pub fn all(&self) -> Vec<(&'static str, &PauliWord)> {
        vec![
            ("X1", &self.x_bar[0]),
            ("X2", &self.x_bar[1]),
            ("X3", &self.x_bar[2]),
            ("X4", &self.x_bar[3]),
            ("Z1", &self.z_bar[0]),
            ("Z2", &self.z_bar[1]),
            ("Z3", &self.z_bar[2]),
            ("Z4", &self.z_bar[3]),
        ]
    }
}

pub fn logical_set(spec: LatticeSpec) -> Result<LogicalSet> {
    require_coprime_odd(spec)?;
    let ctx = Context::Torus(spec);
    let sx = |abc| sigma(&ctx, Axis::X, abc);
    let sz = |abc| sigma(&ctx, Axis::Z, abc);
    let x_bar = [
        product(&ctx, &[sz((0, 0, 0)), sz((0, 1, 1)), sz((1, 1, 0))]),
        sx((1, 0, 1)),
        product(&ctx, &[sx((0, 0, 0)), sx((0, 1, 1))]),
        product(&ctx, &[sx((0, 0, 0)), sx((1, 1, 0))]),
    ];
    let z_bar = [
        z_bar_1(spec)?,
        z_bar_2(spec)?,
        product(&ctx, &[sz((0, 0, 0)), sz((1, 1, 0))]),
        product(&ctx, &[sz((0, 0, 0)), sz((0, 1, 1))]),
    ];
    Ok(LogicalSet { x_bar, z_bar })
}

/// Generating sets of the string-generated subgroups: `flexible` extends
/// the stabilizer group to `G' = <S, Zbar_1, Zbar_2>`; `rigid` generates
/// `G''` (same-letter membrane pairs from closed rigid strings); `gauge`
/// extends to the subsystem gauge group `G = <S, Zbar_1, Zbar_2, Xbar_1,
/// Xbar_2>`.
#[derive(Clone, Debug)]
pub struct GaugeGroups {
    pub flexible: Vec<PauliWord>,
    pub rigid: Vec<PauliWord>,
    pub gauge: Vec<PauliWord>,
}

pub fn gauge_groups(spec: LatticeSpec) -> Result<GaugeGroups> {
    require_coprime_odd(spec)?;
    let ctx = Context::Torus(spec);
    let logical = logical_set(spec)?;
    let s = |axis, abc| sigma(&ctx, axis, abc);
    let rigid = vec![
        product(&ctx, &[s(Axis::Z, (0, 0, 0)), s(Axis::Z, (1, 1, 0))]),
        product(&ctx, &[s(Axis::Z, (1, 0, 1)), s(Axis::Z, (0, 1, 1))]),
        product(&ctx, &[s(Axis::Y, (0, 0, 0)), s(Axis::Y, (1, 0, 1))]),
        product(&ctx, &[s(Axis::Y, (0, 1, 1)), s(Axis::Y, (1, 1, 0))]),
        product(&ctx, &[s(Axis::X, (0, 0, 0)), s(Axis::X, (0, 1, 1))]),
        product(&ctx, &[s(Axis::X, (1, 1, 0)), s(Axis::X, (1, 0, 1))]),
    ];
    Ok(GaugeGroups {
        flexible: vec![logical.z_bar[0].clone(), logical.z_bar[1].clone()],
        rigid,
        gauge: vec![
            logical.z_bar[0].clone(),
            logical.z_bar[1].clone(),
            logical.x_bar[0].clone(),
            logical.x_bar[1].clone(),
        ],
    })
}
