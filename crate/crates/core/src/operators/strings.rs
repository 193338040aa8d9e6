//! Rigid strings, flexible bilayer strings, tetrahedra and dislocations.

use std::collections::{HashMap, VecDeque};

use rand::Rng;

use super::lambda;
use crate::error::{Error, Result};
use crate::lattice::{
    body_diagonal_index, face_diagonal_index, Axis, Context, LatticeSpec, Site, Vec3, AXES,
};
use crate::pauli::{Letter, PauliWord};

/// Straight even-site string along a face-diagonal `h`, sites
/// `u_0, u_0 + h, ..., u_0 + m h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidStringSpec {
    pub start: Site,
    pub h: Vec3,
    pub m: usize,
}

/// The Pauli letter a rigid string applies: `Z` for strings in a
/// `[001]`-plane, `Y` for `[010]`, `X` for `[100]`.
pub fn rigid_letter(h: Vec3) -> Result<Letter> {
    if face_diagonal_index(h).is_none() {
        return Err(Error::InvalidOperator(format!(
            "({},{},{}) is not a face-diagonal",
            h.x, h.y, h.z
        )));
    }
    Ok(if h.z == 0 {
        Letter::Z
    } else if h.y == 0 {
        Letter::Y
    } else {
        Letter::X
    })
}

fn validate_even_start(u: Site) -> Result<()> {
    if !u.is_even() {
        return Err(Error::Parity {
            site: u,
            expected: "even",
        });
    }
    Ok(())
}

/// `W(gamma) = prod_i sigma_{u_i}` over the rigid string sites.
pub fn rigid_string(ctx: &Context, spec: &RigidStringSpec) -> Result<PauliWord> {
    validate_even_start(spec.start)?;
    let letter = rigid_letter(spec.h)?;
    let mut word = PauliWord::identity(*ctx);
    for i in 0..=spec.m {
        let u = ctx.canonical(spec.start + spec.h.scaled(i as i64));
        if !ctx.contains(u) {
            return Err(Error::OutOfWindow(u));
        }
        word.mul_letter(u, letter)?;
    }
    Ok(word)
}

/// The four generators excited by a rigid string when its end-points are
/// well separated: `{u_0 - a e1, u_0 - b e2}` and `{u_m + a e1, u_m + b e2}`
/// for `h = a e1 + b e2`.
pub fn rigid_endpoint_sites(spec: &RigidStringSpec) -> ([Site; 2], [Site; 2]) {
    let h = spec.h;
    let (e1, e2) = if h.z == 0 {
        (Vec3::new(h.x, 0, 0), Vec3::new(0, h.y, 0))
    } else if h.y == 0 {
        (Vec3::new(h.x, 0, 0), Vec3::new(0, 0, h.z))
    } else {
        (Vec3::new(0, h.y, 0), Vec3::new(0, 0, h.z))
    };
    let end = spec.start + h.scaled(spec.m as i64);
    ([spec.start - e1, spec.start - e2], [end + e1, end + e2])
}

/// Closed rigid string winding the torus: the full period of `u_0 + i h`.
/// Returns the word and the period (number of distinct sites).
pub fn closed_rigid_string(ctx: &Context, start: Site, h: Vec3) -> Result<(PauliWord, usize)> {
    let Context::Torus(spec) = ctx else {
        return Err(Error::InvalidOperator(
            "closed rigid strings need a periodic context".into(),
        ));
    };
    validate_even_start(start)?;
    let letter = rigid_letter(h)?;
    let [lx, ly, lz] = spec.dims();
    let period_axis = |c: i64, l: i64| if c == 0 { 1 } else { l / num_gcd(c.abs(), l) };
    let period = [
        period_axis(h.x, lx),
        period_axis(h.y, ly),
        period_axis(h.z, lz),
    ]
    .into_iter()
    .fold(1i64, num_lcm);
    let mut word = PauliWord::identity(*ctx);
    for i in 0..period {
        word.mul_letter(ctx.canonical(start + h.scaled(i)), letter)?;
    }
    Ok((word, period as usize))
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn num_lcm(a: i64, b: i64) -> i64 {
    a / num_gcd(a, b) * b
}

/// Flexible bilayer string: `u_{j+1} = u_j + (-1)^j eps lambda(alpha_j)`,
/// with `W = prod_j sigma^{alpha_j}_{u_j} sigma^{alpha_j}_{u_{j+1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlexibleStringSpec {
    pub start: Site,
    pub t: Vec3,
    pub eps: i64,
    pub steps: Vec<Axis>,
}

impl FlexibleStringSpec {
    fn validate(&self) -> Result<()> {
        validate_even_start(self.start)?;
        if body_diagonal_index(self.t).is_none() {
            return Err(Error::InvalidOperator(format!(
                "({},{},{}) is not a body-diagonal",
                self.t.x, self.t.y, self.t.z
            )));
        }
        if self.eps != 1 && self.eps != -1 {
            return Err(Error::InvalidOperator("eps must be +-1".into()));
        }
        Ok(())
    }
}

/// Unreduced site sequence `u_0, ..., u_m` of a flexible string.
pub fn flexible_sites(spec: &FlexibleStringSpec) -> Vec<Site> {
    let mut sites = vec![spec.start];
    let mut u = spec.start;
    for (j, &alpha) in spec.steps.iter().enumerate() {
        let sign = if j % 2 == 0 { spec.eps } else { -spec.eps };
        u = u + lambda(spec.t, alpha).scaled(sign);
        sites.push(u);
    }
    sites
}

pub fn flexible_string(ctx: &Context, spec: &FlexibleStringSpec) -> Result<PauliWord> {
    spec.validate()?;
    let sites = flexible_sites(spec);
    let mut word = PauliWord::identity(*ctx);
    for (j, &alpha) in spec.steps.iter().enumerate() {
        let letter = Letter::of_axis(alpha);
        for u in [sites[j], sites[j + 1]] {
            let v = ctx.canonical(u);
            if !ctx.contains(v) {
                return Err(Error::OutOfWindow(v));
            }
            word.mul_letter(v, letter)?;
        }
    }
    Ok(word)
}

/// The eight generators excited near well-separated end-points. For an
/// end-point `e` whose outgoing link sign is `s` (`s = eps` at the start,
/// `s = eps (-1)^m` at the far end) the excited sites are
/// `e - s t_x x, e - s t_y y, e - s t_z z` and `e + s t`.
///
/// The far-end signs here follow from direct commutation with the
/// generators; they mirror the start-end formula under string reversal.
pub fn flexible_endpoint_sites(spec: &FlexibleStringSpec) -> ([Site; 4], [Site; 4]) {
    let t = spec.t;
    let sites = flexible_sites(spec);
    let end = *sites.last().unwrap();
    let quad = |e: Site, s: i64| -> [Site; 4] {
        [
            e - Vec3::new(t.x, 0, 0).scaled(s),
            e - Vec3::new(0, t.y, 0).scaled(s),
            e - Vec3::new(0, 0, t.z).scaled(s),
            e + t.scaled(s),
        ]
    };
    let m = spec.steps.len() as i64;
    let end_sign = if m % 2 == 0 { spec.eps } else { -spec.eps };
    (quad(spec.start, spec.eps), quad(end, end_sign))
}

/// Random closed flexible loop on a torus: a random walk followed by a
/// breadth-first closing path on the (site, step-parity) graph. Returns
/// the loop spec plus its winding numbers mod 2 per axis.
pub fn random_closed_flexible_loop(
    spec: LatticeSpec,
    t: Vec3,
    wander: usize,
    rng: &mut impl Rng,
) -> (FlexibleStringSpec, [i64; 3]) {
    let ctx = Context::Torus(spec);
    let start = random_even_site(&ctx, rng);
    let mut steps: Vec<Axis> = (0..2 * wander)
        .map(|_| AXES[rng.random_range(0..3)])
        .collect();
    // Close the walk: BFS over (canonical site, parity of steps taken).
    let mut u = start;
    for (j, &alpha) in steps.iter().enumerate() {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        u = u + lambda(t, alpha).scaled(sign);
    }
    let closing = bfs_close(
        &ctx,
        t,
        ctx.canonical(u),
        steps.len() % 2,
        ctx.canonical(start),
    );
    steps.extend(closing);
    let loop_spec = FlexibleStringSpec {
        start,
        t,
        eps: 1,
        steps,
    };
    let winding = loop_winding(spec, &loop_spec);
    (loop_spec, winding)
}

fn random_even_site(ctx: &Context, rng: &mut impl Rng) -> Site {
    let q = rng.random_range(0..ctx.qubit_count());
    ctx.qubit_site(q)
}

/// Winding numbers (mod 2) of a closed flexible string: the unreduced
/// displacement divided by the lattice periods.
pub fn loop_winding(spec: LatticeSpec, loop_spec: &FlexibleStringSpec) -> [i64; 3] {
    let sites = flexible_sites(loop_spec);
    let delta = *sites.last().unwrap() - sites[0];
    let [lx, ly, lz] = spec.dims();
    debug_assert_eq!(delta.x.rem_euclid(lx), 0);
    debug_assert_eq!(delta.y.rem_euclid(ly), 0);
    debug_assert_eq!(delta.z.rem_euclid(lz), 0);
    [
        (delta.x / lx).rem_euclid(2),
        (delta.y / ly).rem_euclid(2),
        (delta.z / lz).rem_euclid(2),
    ]
}

fn bfs_close(ctx: &Context, t: Vec3, from: Site, from_parity: usize, target: Site) -> Vec<Axis> {
    if from == target && from_parity == 0 {
        return Vec::new();
    }
    let mut prev: HashMap<(Site, usize), (Site, usize, Axis)> = HashMap::new();
    let mut queue = VecDeque::new();
    queue.push_back((from, from_parity));
    prev.insert((from, from_parity), (from, from_parity, Axis::X));
    while let Some((u, par)) = queue.pop_front() {
        for alpha in AXES {
            let sign = if par == 0 { 1 } else { -1 };
            let v = ctx.canonical(u + lambda(t, alpha).scaled(sign));
            let key = (v, 1 - par);
            if let std::collections::hash_map::Entry::Vacant(slot) = prev.entry(key) {
                slot.insert((u, par, alpha));
                if key == (target, 0) {
                    // Reconstruct the step sequence.
                    let mut path = Vec::new();
                    let mut cur = key;
                    while cur != (from, from_parity) {
                        let (pu, pp, alpha) = prev[&cur];
                        path.push(alpha);
                        cur = (pu, pp);
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(key);
            }
        }
    }
    unreachable!("the bilayer walk graph is connected");
}

/// Deterministic non-contractible loop: alternate `+lambda(a), -lambda(b)`
/// until the walk closes on the torus. Winds once around each of the two
/// axes involved (an odd number of times for coprime-ish dims).
pub fn winding_staircase(
    spec: LatticeSpec,
    t: Vec3,
    a: Axis,
    b: Axis,
    start: Site,
) -> FlexibleStringSpec {
    let step = lambda(spec_assert_diag(t), a) - lambda(t, b);
    let [lx, ly, lz] = spec.dims();
    let period_axis = |c: i64, l: i64| if c == 0 { 1 } else { l / num_gcd(c.abs(), l) };
    let reps = [
        period_axis(step.x, lx),
        period_axis(step.y, ly),
        period_axis(step.z, lz),
    ]
    .into_iter()
    .fold(1i64, num_lcm);
    let mut steps = Vec::with_capacity(2 * reps as usize);
    for _ in 0..reps {
        steps.push(a);
        steps.push(b);
    }
    FlexibleStringSpec {
        start,
        t,
        eps: 1,
        steps,
    }
}

fn spec_assert_diag(t: Vec3) -> Vec3 {
    debug_assert!(body_diagonal_index(t).is_some());
    t
}

/// Closed rigid string-net on the four even vertices of a cube of edge
/// `2r`; the six tetrahedron edges are rigid strings of the six types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetrahedronSpec {
    pub corner: Site,
    pub r: i64,
    /// Chooses which four of the eight cube vertices form the tetrahedron.
    pub mirrored: bool,
}

impl TetrahedronSpec {
    /// The four tetrahedron vertices.
    pub fn vertices(&self) -> [Site; 4] {
        let c = self.corner;
        let s = 2 * self.r;
        if !self.mirrored {
            [
                c,
                c + Vec3::new(s, s, 0),
                c + Vec3::new(0, s, s),
                c + Vec3::new(s, 0, s),
            ]
        } else {
            [
                c + Vec3::new(s, 0, 0),
                c + Vec3::new(0, s, 0),
                c + Vec3::new(0, 0, s),
                c + Vec3::new(s, s, s),
            ]
        }
    }
}

/// `W(T)`: the product of the six rigid edge strings.
pub fn tetrahedron(ctx: &Context, spec: &TetrahedronSpec) -> Result<PauliWord> {
    if spec.r < 1 {
        return Err(Error::InvalidOperator("tetrahedron needs r >= 1".into()));
    }
    validate_even_start(spec.corner)?;
    let verts = spec.vertices();
    let mut word = PauliWord::identity(*ctx);
    // Edges grouped by the axis they are orthogonal to, x then y then z,
    // so the three letters at each vertex multiply as X Y Z.
    let mut edges: Vec<(Site, Vec3)> = Vec::new();
    for a in 0..4 {
        for b in (a + 1)..4 {
            let d = verts[b] - verts[a];
            let h = Vec3::new(d.x.signum(), d.y.signum(), d.z.signum());
            edges.push((verts[a], h));
        }
    }
    edges.sort_by_key(|(_, h)| match rigid_letter(*h).unwrap() {
        Letter::X => 0,
        Letter::Y => 1,
        Letter::Z => 2,
    });
    for (start, h) in edges {
        let edge = rigid_string(
            ctx,
            &RigidStringSpec {
                start,
                h,
                m: (2 * spec.r) as usize,
            },
        )?;
        word = word.mul(&edge)?;
    }
    Ok(word)
}

/// Odd sites inside the solid tetrahedron (faces included).
pub fn tetrahedron_interior(ctx: &Context, spec: &TetrahedronSpec) -> Vec<Site> {
    let verts = spec.vertices();
    let vx = |s: Site| [s.i, s.j, s.k];
    let mut out = Vec::new();
    let c = spec.corner;
    let s = 2 * spec.r;
    for i in c.i..=c.i + s {
        for j in c.j..=c.j + s {
            for k in c.k..=c.k + s {
                let p = Site::new(i, j, k);
                if !p.is_odd() {
                    continue;
                }
                let mut inside = true;
                for face in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
                    let opposite = (0..4).find(|v| !face.contains(v)).unwrap();
                    let a = vx(verts[face[0]]);
                    let b = vx(verts[face[1]]);
                    let cc = vx(verts[face[2]]);
                    let d = vx(verts[opposite]);
                    let ab = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                    let ac = [cc[0] - a[0], cc[1] - a[1], cc[2] - a[2]];
                    let n = [
                        ab[1] * ac[2] - ab[2] * ac[1],
                        ab[2] * ac[0] - ab[0] * ac[2],
                        ab[0] * ac[1] - ab[1] * ac[0],
                    ];
                    let side = |q: [i64; 3]| {
                        n[0] * (q[0] - a[0]) + n[1] * (q[1] - a[1]) + n[2] * (q[2] - a[2])
                    };
                    let sp = side(vx(p));
                    let sd = side(d);
                    if sp != 0 && sp.signum() != sd.signum() {
                        inside = false;
                        break;
                    }
                }
                if inside {
                    out.push(ctx.canonical(p));
                }
            }
        }
    }
    out
}

/// A pair of shifted parallel `[110]` rigid strings joined by a
/// dislocation. `gamma_1` runs `m1` steps and ends at `(-1, 1, 0)`;
/// `gamma_2` starts at `(2, 0, 0)` and runs `m2` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DislocationSpec {
    pub m1: usize,
    pub m2: usize,
}

pub fn dislocation_pair(ctx: &Context, spec: &DislocationSpec) -> Result<PauliWord> {
    let h = Vec3::new(1, 1, 0);
    let end1 = Site::new(-1, 1, 0);
    let start1 = end1 - h.scaled(spec.m1 as i64);
    let gamma1 = rigid_string(
        ctx,
        &RigidStringSpec {
            start: start1,
            h,
            m: spec.m1,
        },
    )?;
    let gamma2 = rigid_string(
        ctx,
        &RigidStringSpec {
            start: Site::new(2, 0, 0),
            h,
            m: spec.m2,
        },
    )?;
    gamma1.mul(&gamma2)
}

/// The four excitations flanking the dislocation itself.
pub fn dislocation_sites() -> [Site; 4] {
    [
        Site::new(-1, 2, 0),
        Site::new(0, 1, 0),
        Site::new(1, 0, 0),
        Site::new(2, -1, 0),
    ]
}
