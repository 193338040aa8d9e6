//! Syndromes, topological charges and superselection sectors.
//!
//! A syndrome assigns a bit to every odd site; the charge of a syndrome
//! on the plane `Sigma_{t,alpha}` is the parity of its bits there. The
//! charge table is a complete sector invariant: a bulk syndrome is caused
//! by a finite-support Pauli iff every charge vanishes, which this module
//! checks constructively with a GF(2) solve over window-supported errors.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::lattice::{Context, Site, Vec3, BODY_DIAGONALS};
use crate::pauli::{Letter, PauliWord};

/// Finite set of excited odd sites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    pub ctx: Context,
    pub support: BTreeSet<Site>,
}

impl Syndrome {
    pub fn new(ctx: Context, support: impl IntoIterator<Item = Site>) -> Result<Syndrome> {
        let mut set = BTreeSet::new();
        for u in support {
            let u = ctx.canonical(u);
            if !ctx.contains(u) {
                return Err(Error::OutOfWindow(u));
            }
            if !u.is_odd() {
                return Err(Error::Parity {
                    site: u,
                    expected: "odd",
                });
            }
            set.insert(u);
        }
        Ok(Syndrome { ctx, support: set })
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    /// True when the support keeps at least the window margin from every
    /// face (trivially true on a torus).
    pub fn bulk_valid(&self) -> bool {
        match self.ctx {
            Context::Torus(_) => true,
            Context::Patch(w) => self
                .support
                .iter()
                .all(|&u| w.boundary_distance(u) >= w.margin),
        }
    }

    /// Distance of the support from the window boundary (`None` on a torus
    /// or for empty syndromes).
    pub fn boundary_distance(&self) -> Option<i64> {
        match self.ctx {
            Context::Torus(_) => None,
            Context::Patch(w) => self.support.iter().map(|&u| w.boundary_distance(u)).min(),
        }
    }

    pub fn xor(&self, other: &Syndrome) -> Result<Syndrome> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let support: BTreeSet<Site> = self
            .support
            .symmetric_difference(&other.support)
            .copied()
            .collect();
        Ok(Syndrome {
            ctx: self.ctx,
            support,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sites: Vec<[i64; 3]> = self.support.iter().map(|u| [u.i, u.j, u.k]).collect();
        serde_json::json!({
            "context": self.ctx.to_string(),
            "support": sites,
            "bulk_valid": self.bulk_valid(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Syndrome> {
        let ctx: Context = v
            .get("context")
            .and_then(serde_json::Value::as_str)
            .ok_or_else(|| Error::Json("missing context".into()))?
            .parse()?;
        let arr = v
            .get("support")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Json("missing support".into()))?;
        let mut sites = Vec::new();
        for e in arr {
            let c = e
                .as_array()
                .filter(|c| c.len() == 3)
                .ok_or_else(|| Error::Json("support entries must be [i,j,k]".into()))?;
            let mut xyz = [0i64; 3];
            for (slot, val) in c.iter().enumerate() {
                xyz[slot] = val
                    .as_i64()
                    .ok_or_else(|| Error::Json("bad coordinate".into()))?;
            }
            sites.push(Site::new(xyz[0], xyz[1], xyz[2]));
        }
        Syndrome::new(ctx, sites)
    }
}

/// Syndrome of a Pauli word: `s(u) = 1` iff `S_u` anticommutes with it.
/// Only generators adjacent to the support are probed, so this is fast
/// for local operators; on a window, boundary generators act by their
/// in-window restriction, which is exact for window-supported words.
pub fn syndrome_of(word: &PauliWord) -> Syndrome {
    let ctx = word.context();
    let mut candidates: BTreeSet<Site> = BTreeSet::new();
    for u in word.support() {
        for v in ctx.neighbors(u).iter().flatten() {
            if v.is_odd() {
                candidates.insert(*v);
            }
        }
    }
    let mut support = BTreeSet::new();
    for v in candidates {
        let mut parity = 0usize;
        // Walk the six letters of S_v that exist in context.
        for (axis_idx, letter) in [Letter::X, Letter::Y, Letter::Z].iter().enumerate() {
            for sign in [-1i64, 1] {
                let mut d = Vec3::new(0, 0, 0);
                match axis_idx {
                    0 => d.x = sign,
                    1 => d.y = sign,
                    _ => d.z = sign,
                }
                let q = ctx.canonical(v + d);
                if !ctx.contains(q) {
                    continue;
                }
                if let Some(l) = word.letter_at(q) {
                    if l.anticommutes(*letter) {
                        parity ^= 1;
                    }
                }
            }
        }
        if parity == 1 {
            support.insert(v);
        }
    }
    Syndrome { ctx, support }
}

/// Charge table: the nonzero `theta_{t,alpha}` entries, keyed by the
/// body-diagonal index and the plane label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeTable {
    pub nonzero: BTreeMap<usize, BTreeSet<i64>>,
    pub support_len: usize,
}

/// Single plane charge `theta_{t,alpha}(s)`.
pub fn theta(s: &Syndrome, t: Vec3, alpha: i64) -> u8 {
    let target = normalize_label(&s.ctx, alpha);
    let parity = s
        .support
        .iter()
        .filter(|&&u| s.ctx.plane_label(t, u) == target)
        .count();
    (parity % 2) as u8
}

fn normalize_label(ctx: &Context, alpha: i64) -> i64 {
    match ctx {
        Context::Torus(spec) => alpha.rem_euclid(2 * spec.g()),
        Context::Patch(_) => alpha,
    }
}

/// Full charge table of a syndrome.
pub fn charge_table(s: &Syndrome) -> ChargeTable {
    let mut nonzero: BTreeMap<usize, BTreeSet<i64>> = BTreeMap::new();
    for (ti, t) in BODY_DIAGONALS.iter().enumerate() {
        let mut parities: BTreeMap<i64, usize> = BTreeMap::new();
        for &u in &s.support {
            *parities.entry(s.ctx.plane_label(*t, u)).or_insert(0) += 1;
        }
        let set: BTreeSet<i64> = parities
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(a, _)| a)
            .collect();
        if !set.is_empty() {
            nonzero.insert(ti, set);
        }
    }
    ChargeTable {
        nonzero,
        support_len: s.len(),
    }
}

impl ChargeTable {
    pub fn is_zero(&self) -> bool {
        self.nonzero.is_empty()
    }

    pub fn get(&self, t_index: usize, alpha: i64) -> u8 {
        self.nonzero
            .get(&t_index)
            .is_some_and(|set| set.contains(&alpha)) as u8
    }

    pub fn xor(&self, other: &ChargeTable) -> ChargeTable {
        let mut nonzero: BTreeMap<usize, BTreeSet<i64>> = BTreeMap::new();
        for ti in 0..BODY_DIAGONALS.len() {
            let a = self.nonzero.get(&ti).cloned().unwrap_or_default();
            let b = other.nonzero.get(&ti).cloned().unwrap_or_default();
            let sym: BTreeSet<i64> = a.symmetric_difference(&b).copied().collect();
            if !sym.is_empty() {
                nonzero.insert(ti, sym);
            }
        }
        ChargeTable {
            nonzero,
            support_len: 0,
        }
    }

    /// Equality as sector invariants (support length is bookkeeping).
    pub fn same_charges(&self, other: &ChargeTable) -> bool {
        self.nonzero == other.nonzero
    }

    /// Row-sum parity per body-diagonal: must equal `|support| mod 2`.
    pub fn row_parities_consistent(&self) -> bool {
        let want = self.support_len % 2;
        (0..BODY_DIAGONALS.len())
            .all(|ti| self.nonzero.get(&ti).map_or(0, BTreeSet::len) % 2 == want)
    }

    /// Mod-4 column identity: the number of dots with `alpha = 1 (mod 4)`
    /// is even, and likewise for `alpha = -1 (mod 4)`.
    pub fn mod4_parities_consistent(&self) -> bool {
        let mut plus = 0usize;
        let mut minus = 0usize;
        for set in self.nonzero.values() {
            for &a in set {
                match a.rem_euclid(4) {
                    1 => plus += 1,
                    3 => minus += 1,
                    _ => {}
                }
            }
        }
        plus.is_multiple_of(2) && minus.is_multiple_of(2)
    }

    /// Dot diagram: one row per body-diagonal, columns are ascending odd
    /// labels.
    pub fn render(&self) -> String {
        let labels: BTreeSet<i64> = self
            .nonzero
            .values()
            .flat_map(|s| s.iter().copied())
            .collect();
        let (lo, hi) = match (labels.first(), labels.last()) {
            (Some(&lo), Some(&hi)) => (lo - 2, hi + 2),
            _ => (-1, 1),
        };
        let names = ["[111]", "[1-1-1]", "[-11-1]", "[-1-11]"];
        let cols: Vec<i64> = (lo..=hi).filter(|a| a.rem_euclid(2) == 1).collect();
        let mut out = String::new();
        out.push_str("alpha    ");
        for a in &cols {
            out.push_str(&format!("{a:>4}"));
        }
        out.push('\n');
        for (ti, name) in names.iter().enumerate() {
            out.push_str(&format!("{name:<9}"));
            for a in &cols {
                let mark = if self.get(ti, *a) == 1 { "*" } else { "." };
                out.push_str(&format!("{mark:>4}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Sector equality: identical charge tables.
pub fn sectors_equal(a: &Syndrome, b: &Syndrome) -> Result<bool> {
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch);
    }
    Ok(charge_table(a).same_charges(&charge_table(b)))
}

/// Outcome of the window syndrome solve.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    /// A window-supported Pauli causing the syndrome.
    Solved(PauliWord),
    /// No solution; the listed nonzero charges certify the obstruction.
    Certificate(ChargeTable),
    /// No solution found and the syndrome is too close to the boundary
    /// for the charge certificate to be meaningful: enlarge the window.
    Inconclusive,
}

/// Error-coordinate matrix for a window: two bits (x, z) per interior
/// even site (all six neighbors inside, so no excitation escapes
/// untracked), one row per in-window odd site.
pub fn window_error_matrix(ctx: &Context) -> (Gf2Matrix, Vec<Site>) {
    let interior: Vec<Site> = ctx
        .even_sites()
        .into_iter()
        .filter(|&u| ctx.neighbors(u).iter().all(Option::is_some))
        .collect();
    let odd = ctx.odd_sites();
    let cols = 2 * interior.len();
    let col_of: BTreeMap<Site, usize> = interior.iter().enumerate().map(|(c, &u)| (u, c)).collect();
    let mut rows = Vec::with_capacity(odd.len());
    for &v in &odd {
        let mut row = BitVec::zeros(cols);
        for (axis_idx, letter) in [Letter::X, Letter::Y, Letter::Z].iter().enumerate() {
            for sign in [-1i64, 1] {
                let mut d = Vec3::new(0, 0, 0);
                match axis_idx {
                    0 => d.x = sign,
                    1 => d.y = sign,
                    _ => d.z = sign,
                }
                let q = ctx.canonical(v + d);
                if let Some(&c) = col_of.get(&q) {
                    let (xb, zb) = letter.bits();
                    // An X error toggles S_v when S_v acts here with Z or
                    // Y; a Z error when S_v acts with X or Y.
                    if zb {
                        row.flip(2 * c);
                    }
                    if xb {
                        row.flip(2 * c + 1);
                    }
                }
            }
        }
        rows.push(row);
    }
    (Gf2Matrix::from_rows(cols, rows), interior)
}

/// Find a window-supported Pauli causing `s`, or certify that none exists.
pub fn solve_syndrome(s: &Syndrome) -> Result<SolveOutcome> {
    let Context::Patch(_) = s.ctx else {
        return Err(Error::InvalidOperator(
            "solve_syndrome expects a window context".into(),
        ));
    };
    let ctx = s.ctx;
    let (m, interior) = window_error_matrix(&ctx);
    let mut b = BitVec::zeros(ctx.odd_count());
    for &u in &s.support {
        b.set(ctx.generator_index(u)?, true);
    }
    match m.solve(&b) {
        Some(x) => {
            let mut word = PauliWord::identity(ctx);
            for (c, &u) in interior.iter().enumerate() {
                if let Some(letter) = Letter::from_bits(x.get(2 * c), x.get(2 * c + 1)) {
                    word.mul_letter(u, letter)?;
                }
            }
            debug_assert_eq!(&syndrome_of(&word).support, &s.support);
            Ok(SolveOutcome::Solved(word))
        }
        None => {
            let table = charge_table(s);
            if table.is_zero() || !s.bulk_valid() {
                Ok(SolveOutcome::Inconclusive)
            } else {
                Ok(SolveOutcome::Certificate(table))
            }
        }
    }
}

/// One dipole or quadrupole in a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Particle {
    /// Quadrupole of type `t` (index into the body-diagonal list) in the
    /// bilayer centered on the odd plane `bilayer`; its charges sit at
    /// `bilayer -+ 2`.
    Quadrupole { t_index: usize, bilayer: i64 },
    /// Dipole of type `h` (index into the face-diagonal list) anchored at
    /// even plane label 0: charges at `-+1` on the two body-diagonals
    /// orthogonal to `h`.
    Dipole { h_index: usize },
}

impl Particle {
    /// Charge signature of the particle.
    pub fn signature(&self) -> ChargeTable {
        let mut nonzero: BTreeMap<usize, BTreeSet<i64>> = BTreeMap::new();
        match self {
            Particle::Quadrupole { t_index, bilayer } => {
                nonzero.insert(*t_index, BTreeSet::from([bilayer - 2, bilayer + 2]));
            }
            Particle::Dipole { h_index } => {
                let h = crate::lattice::FACE_DIAGONALS[*h_index];
                for (ti, t) in BODY_DIAGONALS.iter().enumerate() {
                    if t.x * h.x + t.y * h.y + t.z * h.z == 0 {
                        nonzero.insert(ti, BTreeSet::from([-1, 1]));
                    }
                }
            }
        }
        ChargeTable {
            nonzero,
            support_len: 0,
        }
    }
}

/// Decomposition of an even-excitation syndrome into dipoles and
/// quadrupoles; non-unique in general, deterministic here.
#[derive(Clone, Debug, Serialize)]
pub struct ParticleDecomposition {
    pub particles: Vec<Particle>,
}

impl ParticleDecomposition {
    /// XOR of the constituent charge signatures.
    pub fn recombined(&self) -> ChargeTable {
        let mut acc = ChargeTable {
            nonzero: BTreeMap::new(),
            support_len: 0,
        };
        for p in &self.particles {
            acc = acc.xor(&p.signature());
        }
        acc
    }
}

/// Reduce a window syndrome to particles: quadrupoles translate every
/// charge dot into the columns `alpha = -+1` (largest magnitude first),
/// the leftover pattern is one dipole or the `[110], [1-10]` pair.
pub fn decompose(s: &Syndrome) -> Result<ParticleDecomposition> {
    let Context::Patch(_) = s.ctx else {
        return Err(Error::InvalidOperator(
            "decompose expects a window context".into(),
        ));
    };
    if !s.len().is_multiple_of(2) {
        return Err(Error::OddSupport);
    }
    let table = charge_table(s);
    let mut particles = Vec::new();
    let mut final_theta = [false; 4];
    for (ti, theta_slot) in final_theta.iter_mut().enumerate() {
        let Some(dots) = table.nonzero.get(&ti) else {
            continue;
        };
        let mut sorted: Vec<i64> = dots.iter().copied().collect();
        sorted.sort_by_key(|a| std::cmp::Reverse(a.abs()));
        for alpha in sorted {
            let target = if alpha.rem_euclid(4) == 1 { 1 } else { -1 };
            let mut cur = alpha;
            while cur > target {
                particles.push(Particle::Quadrupole {
                    t_index: ti,
                    bilayer: cur - 2,
                });
                cur -= 4;
            }
            while cur < target {
                particles.push(Particle::Quadrupole {
                    t_index: ti,
                    bilayer: cur + 2,
                });
                cur += 4;
            }
        }
        // After the shifts each column holds the dots of one mod-4 class;
        // the per-column parities agree by the even-support row identity.
        let plus = dots.iter().filter(|a| a.rem_euclid(4) == 1).count() % 2;
        let minus = dots.iter().filter(|a| a.rem_euclid(4) == 3).count() % 2;
        debug_assert_eq!(plus, minus, "row parity identity");
        *theta_slot = plus == 1;
    }
    dedupe_quadrupole_pairs(&mut particles);
    let set_count = final_theta.iter().filter(|&&b| b).count();
    match set_count {
        0 => {}
        2 => {
            let (t1, t2) = {
                let mut it = (0..4).filter(|&i| final_theta[i]);
                (it.next().unwrap(), it.next().unwrap())
            };
            let h_index = crate::lattice::FACE_DIAGONALS
                .iter()
                .position(|h| {
                    let a = BODY_DIAGONALS[t1];
                    let b = BODY_DIAGONALS[t2];
                    a.x * h.x + a.y * h.y + a.z * h.z == 0 && b.x * h.x + b.y * h.y + b.z * h.z == 0
                })
                .expect("each body-diagonal pair is orthogonal to one face-diagonal");
            particles.push(Particle::Dipole { h_index });
        }
        4 => {
            particles.push(Particle::Dipole { h_index: 0 });
            particles.push(Particle::Dipole { h_index: 1 });
        }
        _ => unreachable!("mod-4 identity forces an even number of residual charges"),
    }
    let decomposition = ParticleDecomposition { particles };
    debug_assert!(decomposition.recombined().same_charges(&table));
    Ok(decomposition)
}

fn dedupe_quadrupole_pairs(particles: &mut Vec<Particle>) {
    let mut counts: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for p in particles.iter() {
        if let Particle::Quadrupole { t_index, bilayer } = p {
            *counts.entry((*t_index, *bilayer)).or_insert(0) += 1;
        }
    }
    let mut seen: BTreeSet<(usize, i64)> = BTreeSet::new();
    particles.retain(|p| match p {
        Particle::Quadrupole { t_index, bilayer } => {
            counts[&(*t_index, *bilayer)] % 2 == 1 && seen.insert((*t_index, *bilayer))
        }
        _ => true,
    });
}

/// Result of the exhaustive minimum-weight monopole scan.
#[derive(Clone, Debug, Serialize)]
pub struct MonopoleScan {
    pub r: i64,
    /// Exact minimum when found under the cap.
    pub exact: Option<usize>,
    /// Certified lower bound (`cap + 1` when the cap was exhausted).
    pub lower: usize,
    /// Membrane upper bound `(r_even + 1)^2`.
    pub upper: usize,
}

/// Least weight of a Pauli whose syndrome, restricted to the Chebyshev
/// ball of radius `r` around `center`, is exactly one monopole at the
/// center. Complete depth-first chase over (adjacent qubit, letter)
/// actions, exhaustive up to `cap` actions.
pub fn monopole_weight_scan(
    ctx: &Context,
    center: Site,
    r: i64,
    cap: usize,
) -> Result<MonopoleScan> {
    if !center.is_odd() {
        return Err(Error::Parity {
            site: center,
            expected: "odd",
        });
    }
    let mut ball: Vec<Site> = Vec::new();
    for di in -r..=r {
        for dj in -r..=r {
            for dk in -r..=r {
                let v = ctx.canonical(center + Vec3::new(di, dj, dk));
                if v.is_odd() && ctx.contains(v) {
                    ball.push(v);
                }
            }
        }
    }
    ball.sort_unstable();
    ball.dedup();
    let center = ctx.canonical(center);
    let want: BTreeMap<Site, bool> = ball.iter().map(|&v| (v, v == center)).collect();

    struct Search<'c> {
        ctx: &'c Context,
        want: BTreeMap<Site, bool>,
        best: Option<usize>,
        cap: usize,
    }
    impl Search<'_> {
        fn violated(&self, word: &PauliWord) -> Option<Site> {
            let syn = syndrome_of(word);
            self.want
                .iter()
                .find(|(&v, &bit)| syn.support.contains(&v) != bit)
                .map(|(&v, _)| v)
        }

        fn run(&mut self, word: &mut PauliWord, depth: usize) {
            match self.violated(word) {
                None => {
                    let w = word.weight();
                    if self.best.is_none_or(|b| w < b) {
                        self.best = Some(w);
                    }
                }
                Some(v) => {
                    if depth == self.cap {
                        return;
                    }
                    for (axis_idx, gen_letter) in
                        [Letter::X, Letter::Y, Letter::Z].iter().enumerate()
                    {
                        for sign in [-1i64, 1] {
                            let mut d = Vec3::new(0, 0, 0);
                            match axis_idx {
                                0 => d.x = sign,
                                1 => d.y = sign,
                                _ => d.z = sign,
                            }
                            let q = self.ctx.canonical(v + d);
                            if !self.ctx.contains(q) {
                                continue;
                            }
                            for flip in [Letter::X, Letter::Y, Letter::Z] {
                                if !flip.anticommutes(*gen_letter) {
                                    continue;
                                }
                                word.mul_letter(q, flip).unwrap();
                                self.run(word, depth + 1);
                                word.mul_letter(q, flip).unwrap();
                            }
                        }
                    }
                }
            }
        }
    }

    let mut search = Search {
        ctx,
        want,
        best: None,
        cap,
    };
    let mut word = PauliWord::identity(*ctx);
    search.run(&mut word, 0);
    let r_even = if r % 2 == 0 { r } else { r + 1 };
    let upper = ((r_even + 1) * (r_even + 1)) as usize;
    Ok(MonopoleScan {
        r,
        exact: search.best,
        lower: search.best.unwrap_or(cap + 1),
        upper,
    })
}

/// Charge matrix over a support region: one row per plane meeting the
/// region, one column per odd site. Sampling its nullspace gives random
/// zero-charge syndromes.
pub fn region_charge_matrix(ctx: &Context, region: &[Site]) -> Gf2Matrix {
    let cols = region.len();
    let mut rows = Vec::new();
    for t in BODY_DIAGONALS {
        let labels: BTreeSet<i64> = region.iter().map(|&u| ctx.plane_label(t, u)).collect();
        for alpha in labels {
            let mut row = BitVec::zeros(cols);
            for (c, &u) in region.iter().enumerate() {
                if ctx.plane_label(t, u) == alpha {
                    row.set(c, true);
                }
            }
            rows.push(row);
        }
    }
    Gf2Matrix::from_rows(cols, rows)
}
