//! Link, plaquette and star operators of a `[t]`-bilayer, which is a
//! honeycomb lattice in disguise: the two even planes `Sigma_{t,a-1}`,
//! `Sigma_{t,a+1}` are its two site colors, links are the `lambda`
//! steps, and the generators centered between the planes act as
//! hexagonal plaquettes.

use super::lambda;
use crate::error::{Error, Result};
use crate::lattice::{body_diagonal_index, Axis, Context, Site, Vec3, AXES};
use crate::pauli::{Letter, PauliWord};

fn check_diag(t: Vec3) -> Result<()> {
    if body_diagonal_index(t).is_none() {
        return Err(Error::InvalidOperator(format!(
            "({},{},{}) is not a body-diagonal",
            t.x, t.y, t.z
        )));
    }
    Ok(())
}

/// Link operator `K_e = sigma^alpha_u sigma^alpha_v` over the link
/// `e = (u, u + sign * lambda(alpha))`.
pub fn link(ctx: &Context, t: Vec3, u: Site, alpha: Axis, sign: i64) -> Result<PauliWord> {
    check_diag(t)?;
    if !u.is_even() {
        return Err(Error::Parity {
            site: u,
            expected: "even",
        });
    }
    let v = u + lambda(t, alpha).scaled(sign);
    let letter = Letter::of_axis(alpha);
    let mut word = PauliWord::identity(*ctx);
    word.mul_letter(ctx.canonical(u), letter)?;
    word.mul_letter(ctx.canonical(v), letter)?;
    Ok(word)
}

/// Plaquette operator `B_p`: the six boundary links of the hexagon whose
/// center is the odd site `v`. Multiplied in the cyclic order below this
/// reproduces the central generator exactly, phase included.
pub fn plaquette(ctx: &Context, t: Vec3, center: Site) -> Result<PauliWord> {
    check_diag(t)?;
    if !center.is_odd() {
        return Err(Error::Parity {
            site: center,
            expected: "odd",
        });
    }
    let v = center;
    let ring = [
        v + Vec3::new(t.x, 0, 0),
        v - Vec3::new(0, t.y, 0),
        v + Vec3::new(0, 0, t.z),
        v - Vec3::new(t.x, 0, 0),
        v + Vec3::new(0, t.y, 0),
        v - Vec3::new(0, 0, t.z),
    ];
    let mut word = PauliWord::identity(*ctx);
    for e in 0..6 {
        let a = ring[e];
        let b = ring[(e + 1) % 6];
        let d = b - a;
        let alpha = AXES
            .into_iter()
            .find(|&ax| {
                let l = lambda(t, ax);
                d == l || d == -l
            })
            .expect("hexagon edges are lambda steps");
        let letter = Letter::of_axis(alpha);
        word.mul_letter(ctx.canonical(a), letter)?;
        word.mul_letter(ctx.canonical(b), letter)?;
    }
    Ok(word)
}

/// Star operator `A_w = i K_x K_y K_z` over the three links incident to
/// `w` on the chosen side (`sign = +1` uses `w + lambda(alpha)`). The
/// letters at `w` itself cancel, so the star acts only on the three
/// neighbors.
pub fn star(ctx: &Context, t: Vec3, w: Site, sign: i64) -> Result<PauliWord> {
    check_diag(t)?;
    let mut word = PauliWord::identity(*ctx);
    for alpha in AXES {
        let k = link(ctx, t, w, alpha, sign)?;
        word = word.mul(&k)?;
    }
    // The i prefactor of the star definition.
    word.scalar_i();
    Ok(word)
}
