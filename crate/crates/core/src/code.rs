//! Ground-space structure of the code on a torus.
//!
//! The stabilizer group is generated by one six-body `S_u` per odd site.
//! Stacking their symplectic images as rows of an `n x 2n` GF(2) matrix,
//! the number of encoded qubits is `k = n - rank`, and the left nullspace
//! is the dependency space `C = { t : prod_u S_u^{t_u} = +-I }`. Members
//! of `C` satisfy four-term parity checks at every even site, are periodic
//! with period `2g` along each axis (`g = gcd(p_x, p_y, p_z)`), and fold
//! onto the cubic lattice `Z_{2g}^3`, where the dependency space has
//! dimension `4g`. Re-attaching the tracked phases shows that every
//! dependency product is exactly `+I`, i.e. `-I` is not in the group.

use serde::Serialize;

use crate::error::Error;
use crate::gf2::{BitVec, Gf2Matrix};
use crate::lattice::{Context, LatticeSpec, Site, Vec3};
use crate::pauli::{generator, PauliWord};

/// Symplectic generator matrix: one row per odd site, `2n` columns.
pub fn generator_matrix(ctx: &Context) -> Gf2Matrix {
    let n = ctx.qubit_count();
    let mut m = Gf2Matrix::new(2 * n);
    for u in ctx.odd_sites() {
        match generator(ctx, u) {
            Ok(word) => m.push_row(word.symplectic()),
            // Window-boundary generators are simply omitted.
            Err(Error::UndefinedGenerator(_)) => m.push_row(BitVec::zeros(2 * n)),
            Err(e) => unreachable!("generator construction failed: {e}"),
        }
    }
    m
}

/// Number of logical qubits `k = n - rank`.
pub fn logical_count(spec: LatticeSpec) -> usize {
    let ctx = Context::Torus(spec);
    ctx.qubit_count() - generator_matrix(&ctx).rank()
}

/// Basis of the dependency space `C(p_x, p_y, p_z)` over the odd sites.
#[derive(Clone, Debug)]
pub struct DependencySpace {
    pub spec: LatticeSpec,
    pub basis: Vec<BitVec>,
}

pub fn dependency_space(spec: LatticeSpec) -> DependencySpace {
    let ctx = Context::Torus(spec);
    let basis = generator_matrix(&ctx).left_nullspace();
    DependencySpace { spec, basis }
}

impl DependencySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Random GF(2) combination of the basis.
    pub fn random_element(&self, rng: &mut impl rand::Rng) -> BitVec {
        let n = self.basis.first().map_or(0, BitVec::len);
        let mut t = BitVec::zeros(n);
        for b in &self.basis {
            if rng.random::<bool>() {
                t.xor_assign(b);
            }
        }
        t
    }
}

/// Phase-tracked product `prod_u S_u^{t_u}` over a dependency vector.
pub fn dependency_product(spec: LatticeSpec, t: &BitVec) -> PauliWord {
    let ctx = Context::Torus(spec);
    let mut word = PauliWord::identity(ctx);
    for g in t.iter_ones() {
        let u = ctx.generator_site(g);
        word = word.mul(&generator(&ctx, u).unwrap()).unwrap();
    }
    word
}

/// The three four-term parity checks at an even site, as odd-site index
/// quadruples over the xy, xz and yz neighbor pairs.
pub fn parity_checks_at(ctx: &Context, u: Site) -> Option<[Vec<usize>; 3]> {
    let idx = |d: Vec3| ctx.generator_index(ctx.canonical(u + d)).ok();
    let px = [idx(Vec3::new(-1, 0, 0))?, idx(Vec3::new(1, 0, 0))?];
    let py = [idx(Vec3::new(0, -1, 0))?, idx(Vec3::new(0, 1, 0))?];
    let pz = [idx(Vec3::new(0, 0, -1))?, idx(Vec3::new(0, 0, 1))?];
    Some([
        vec![px[0], px[1], py[0], py[1]],
        vec![px[0], px[1], pz[0], pz[1]],
        vec![py[0], py[1], pz[0], pz[1]],
    ])
}

/// True when `t` satisfies all parity checks at every even site.
pub fn satisfies_parity_checks(spec: LatticeSpec, t: &BitVec) -> bool {
    let ctx = Context::Torus(spec);
    for u in ctx.even_sites() {
        let Some(checks) = parity_checks_at(&ctx, u) else {
            return false;
        };
        for check in checks {
            let parity: usize = check.iter().filter(|&&g| t.get(g)).count();
            if !parity.is_multiple_of(2) {
                return false;
            }
        }
    }
    true
}

/// True when `t_u = t_{u + 2g a}` for every odd site and every axis.
pub fn satisfies_period(spec: LatticeSpec, t: &BitVec) -> bool {
    let ctx = Context::Torus(spec);
    let g = spec.g();
    for u in ctx.odd_sites() {
        let here = t.get(ctx.generator_index(u).unwrap());
        for d in [
            Vec3::new(2 * g, 0, 0),
            Vec3::new(0, 2 * g, 0),
            Vec3::new(0, 0, 2 * g),
        ] {
            let v = ctx.canonical(u + d);
            if t.get(ctx.generator_index(v).unwrap()) != here {
                return false;
            }
        }
    }
    true
}

/// The four odd-sublattice indicator vectors (parity classes 100, 010,
/// 001, 111), which span `C` when `g = 1`.
pub fn sublattice_indicators(spec: LatticeSpec) -> [BitVec; 4] {
    let ctx = Context::Torus(spec);
    let n = ctx.odd_count();
    let classes = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)];
    let mut out = [
        BitVec::zeros(n),
        BitVec::zeros(n),
        BitVec::zeros(n),
        BitVec::zeros(n),
    ];
    for u in ctx.odd_sites() {
        let par = (u.i.rem_euclid(2), u.j.rem_euclid(2), u.k.rem_euclid(2));
        for (slot, &(a, b, c)) in classes.iter().enumerate() {
            if par == (a, b, c) {
                out[slot].set(ctx.generator_index(u).unwrap(), true);
            }
        }
    }
    out
}

/// Sign formula for the dependency product: the product equals
/// `(-1)^{f(t)} I` with
/// `f(t) = sum_{u in L_001 u L_010} t_u t_{u+2x} + t_u t_{u+2y} (mod 2)`.
pub fn sign_formula(spec: LatticeSpec, t: &BitVec) -> u8 {
    let ctx = Context::Torus(spec);
    let mut f = 0usize;
    for u in ctx.odd_sites() {
        let par = (u.i.rem_euclid(2), u.j.rem_euclid(2), u.k.rem_euclid(2));
        if par != (0, 0, 1) && par != (0, 1, 0) {
            continue;
        }
        if !t.get(ctx.generator_index(u).unwrap()) {
            continue;
        }
        for d in [Vec3::new(2, 0, 0), Vec3::new(0, 2, 0)] {
            let v = ctx.canonical(u + d);
            if t.get(ctx.generator_index(v).unwrap()) {
                f += 1;
            }
        }
    }
    (f % 2) as u8
}

/// Verdict of the `-I not in S` check for one spec.
#[derive(Clone, Debug, Serialize)]
pub struct MinusIdentityReport {
    pub dim: usize,
    pub all_products_positive: bool,
    pub sign_formula_agrees: bool,
    /// Index of an offending basis vector, when any product is not `+I`.
    pub violation: Option<usize>,
}

/// For every dependency-basis vector, multiply out the generators with
/// exact phases and confirm the product is `+I`; cross-check the sign
/// formula on `samples` random elements of `C`.
pub fn check_no_minus_identity(
    spec: LatticeSpec,
    samples: usize,
    rng: &mut impl rand::Rng,
) -> MinusIdentityReport {
    let dep = dependency_space(spec);
    let mut violation = None;
    for (i, t) in dep.basis.iter().enumerate() {
        let word = dependency_product(spec, t);
        assert!(
            word.is_identity_up_to_phase(),
            "dependency vector does not multiply to a phase"
        );
        if !word.is_identity() {
            violation = Some(i);
            break;
        }
    }
    let mut agrees = true;
    for _ in 0..samples {
        let t = dep.random_element(rng);
        let word = dependency_product(spec, &t);
        let predicted = if sign_formula(spec, &t) == 0 { 0 } else { 2 };
        if word.phase() != predicted {
            agrees = false;
            break;
        }
    }
    MinusIdentityReport {
        dim: dep.dim(),
        all_products_positive: violation.is_none(),
        sign_formula_agrees: agrees,
        violation,
    }
}

/// 2D dependency code `C(g, g)` on the odd sites of `Z_{2g} x Z_{2g}`:
/// checks `t_{i+1,j} + t_{i-1,j} + t_{i,j+1} + t_{i,j-1} = 0` at even
/// sites. Returns the check matrix and the odd-site list indexing its
/// columns.
pub fn two_dim_check_matrix(g: i64) -> (Gf2Matrix, Vec<(i64, i64)>) {
    let l = 2 * g;
    let mut odd_sites = Vec::new();
    for i in 0..l {
        for j in 0..l {
            if (i + j).rem_euclid(2) == 1 {
                odd_sites.push((i, j));
            }
        }
    }
    let index = |i: i64, j: i64| -> usize {
        let (i, j) = (i.rem_euclid(l), j.rem_euclid(l));
        odd_sites.binary_search(&(i, j)).unwrap()
    };
    let mut m = Gf2Matrix::new(odd_sites.len());
    for i in 0..l {
        for j in 0..l {
            if (i + j).rem_euclid(2) == 0 {
                let mut row = BitVec::zeros(odd_sites.len());
                for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    row.flip(index(i + di, j + dj));
                }
                m.push_row(row);
            }
        }
    }
    (m, odd_sites)
}

/// `dim C(g, g)`, expected to be `2g`.
pub fn dim_c2(g: i64) -> usize {
    let (m, sites) = two_dim_check_matrix(g);
    sites.len() - m.rank()
}

/// Fold a periodic dependency vector onto `Z_{2g}^3` coordinates. Returns
/// `None` when the vector is not `2g`-periodic (it always is for `t in C`).
pub fn fold_to_ggg(spec: LatticeSpec, t: &BitVec) -> Option<BitVec> {
    let g = spec.g();
    let ctx = Context::Torus(spec);
    let folded_ctx = Context::Torus(LatticeSpec::new(g, g, g).unwrap());
    let mut out = BitVec::zeros(folded_ctx.odd_count());
    let mut assigned = vec![false; folded_ctx.odd_count()];
    for u in ctx.odd_sites() {
        let bit = t.get(ctx.generator_index(u).unwrap());
        let v = folded_ctx.canonical(Site::new(u.i, u.j, u.k));
        let fi = folded_ctx.generator_index(v).unwrap();
        if assigned[fi] {
            if out.get(fi) != bit {
                return None;
            }
        } else {
            assigned[fi] = true;
            out.set(fi, bit);
        }
    }
    Some(out)
}

/// Everything the ground-space verification reports for one spec.
#[derive(Clone, Debug, Serialize)]
pub struct GroundSpaceReport {
    pub p: [i64; 3],
    pub n: usize,
    pub rank: usize,
    pub k: usize,
    pub expected_k: usize,
    pub minus_identity_found: bool,
    pub ok: bool,
}

pub fn ground_space_report(spec: LatticeSpec) -> GroundSpaceReport {
    use rand::SeedableRng;
    let ctx = Context::Torus(spec);
    let n = ctx.qubit_count();
    let rank = generator_matrix(&ctx).rank();
    let k = n - rank;
    let expected_k = (4 * spec.g()) as usize;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let minus = check_no_minus_identity(spec, 16, &mut rng);
    GroundSpaceReport {
        p: [spec.p_x, spec.p_y, spec.p_z],
        n,
        rank,
        k,
        expected_k,
        minus_identity_found: !minus.all_products_positive,
        ok: k == expected_k && minus.all_products_positive,
    }
}
