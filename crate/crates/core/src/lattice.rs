//! Coordinate arithmetic, parity bookkeeping and sublattice enumeration.
//!
//! Two geometric contexts are supported: a periodic torus
//! `Z_{L_x} x Z_{L_y} x Z_{L_z}` with all dimensions even (`L_a = 2 p_a`),
//! and an open rectangular window of `Z^3` standing in for the infinite
//! lattice. A site `u = (i, j, k)` is even iff `i + j + k` is even; qubits
//! live on even sites, generators are centered on odd sites. Parity is
//! stable under the torus identifications exactly because every `L_a` is
//! even, which is why odd dimensions are rejected at construction.
//!
//! All context objects are small `Copy` values, immutable after
//! construction, and safe to share across threads.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Integer displacement on the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Vec3 {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(&self, u: Site) -> i64 {
        self.x * u.i + self.y * u.j + self.z * u.k
    }

    pub fn scaled(&self, s: i64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn component(&self, axis: Axis) -> i64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    /// Coordinate-sum parity of the displacement.
    pub fn parity(&self) -> i64 {
        (self.x + self.y + self.z).rem_euclid(2)
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Lattice site `(i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

impl Site {
    pub const fn new(i: i64, j: i64, k: i64) -> Self {
        Site { i, j, k }
    }

    pub fn parity(&self) -> i64 {
        (self.i + self.j + self.k).rem_euclid(2)
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }

    pub fn coord(&self, axis: Axis) -> i64 {
        match axis {
            Axis::X => self.i,
            Axis::Y => self.j,
            Axis::Z => self.k,
        }
    }
}

impl std::ops::Add<Vec3> for Site {
    type Output = Site;
    fn add(self, d: Vec3) -> Site {
        Site::new(self.i + d.x, self.j + d.y, self.k + d.z)
    }
}

impl std::ops::Sub<Vec3> for Site {
    type Output = Site;
    fn sub(self, d: Vec3) -> Site {
        Site::new(self.i - d.x, self.j - d.y, self.k - d.z)
    }
}

impl std::ops::Sub for Site {
    type Output = Vec3;
    fn sub(self, o: Site) -> Vec3 {
        Vec3::new(self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Coordinate axes, with the Pauli letter each axis carries in the
/// six-body generator (`X` along x, `Y` along y, `Z` along z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

impl Axis {
    pub fn unit(&self) -> Vec3 {
        match self {
            Axis::X => Vec3::new(1, 0, 0),
            Axis::Y => Vec3::new(0, 1, 0),
            Axis::Z => Vec3::new(0, 0, 1),
        }
    }

    pub fn index(&self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        AXES[i]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Axis> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::InvalidSpec(format!("unknown axis {other:?}"))),
        }
    }
}

/// The six face-diagonals of the cubic lattice.
pub const FACE_DIAGONALS: [Vec3; 6] = [
    Vec3::new(1, 1, 0),
    Vec3::new(1, -1, 0),
    Vec3::new(1, 0, 1),
    Vec3::new(1, 0, -1),
    Vec3::new(0, 1, 1),
    Vec3::new(0, 1, -1),
];

/// The four body-diagonals of the cubic lattice.
pub const BODY_DIAGONALS: [Vec3; 4] = [
    Vec3::new(1, 1, 1),
    Vec3::new(1, -1, -1),
    Vec3::new(-1, 1, -1),
    Vec3::new(-1, -1, 1),
];

/// Index of a body-diagonal in [`BODY_DIAGONALS`], identifying `t` and `-t`.
pub fn body_diagonal_index(t: Vec3) -> Option<usize> {
    BODY_DIAGONALS.iter().position(|&b| b == t || b == -t)
}

/// Index of a face-diagonal in [`FACE_DIAGONALS`], identifying `h` and `-h`.
pub fn face_diagonal_index(h: Vec3) -> Option<usize> {
    FACE_DIAGONALS.iter().position(|&f| f == h || f == -h)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Periodic lattice `Z_{2 p_x} x Z_{2 p_y} x Z_{2 p_z}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    pub p_x: i64,
    pub p_y: i64,
    pub p_z: i64,
}

impl LatticeSpec {
    pub fn new(p_x: i64, p_y: i64, p_z: i64) -> Result<Self> {
        if p_x < 1 || p_y < 1 || p_z < 1 {
            return Err(Error::InvalidSpec(format!(
                "half-dimensions must be positive, got {p_x},{p_y},{p_z}"
            )));
        }
        Ok(LatticeSpec { p_x, p_y, p_z })
    }

    /// Sites per axis: `L_a = 2 p_a`.
    pub fn dims(&self) -> [i64; 3] {
        [2 * self.p_x, 2 * self.p_y, 2 * self.p_z]
    }

    /// Number of qubits `n = L_x L_y L_z / 2 = 4 p_x p_y p_z`.
    pub fn qubit_count(&self) -> usize {
        (4 * self.p_x * self.p_y * self.p_z) as usize
    }

    pub fn g(&self) -> i64 {
        gcd(self.p_x, gcd(self.p_y, self.p_z))
    }

    /// True when `p_x, p_y, p_z` are odd and pairwise coprime, the regime
    /// where the half-filled membranes form a complete logical set.
    pub fn is_coprime_odd(&self) -> bool {
        let [a, b, c] = [self.p_x, self.p_y, self.p_z];
        a % 2 == 1 && b % 2 == 1 && c % 2 == 1 && gcd(a, b) == 1 && gcd(b, c) == 1 && gcd(c, a) == 1
    }

    pub fn reduce(&self, u: Site) -> Site {
        let [lx, ly, lz] = self.dims();
        Site::new(u.i.rem_euclid(lx), u.j.rem_euclid(ly), u.k.rem_euclid(lz))
    }
}

/// Open rectangular window of `Z^3` with inclusive bounds and a guard
/// margin inside which syndromes count as bulk-valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: [i64; 3],
    pub hi: [i64; 3],
    pub margin: i64,
}

pub const DEFAULT_MARGIN: i64 = 3;

impl Window {
    pub fn new(lo: [i64; 3], hi: [i64; 3]) -> Result<Self> {
        Window::with_margin(lo, hi, DEFAULT_MARGIN)
    }

    pub fn with_margin(lo: [i64; 3], hi: [i64; 3], margin: i64) -> Result<Self> {
        for a in 0..3 {
            if lo[a] > hi[a] {
                return Err(Error::InvalidSpec(format!(
                    "empty window bounds on axis {a}: {}..{}",
                    lo[a], hi[a]
                )));
            }
            if margin < 0 || 2 * margin > hi[a] - lo[a] + 1 {
                return Err(Error::InvalidSpec(format!(
                    "margin {margin} exceeds half the extent on axis {a}"
                )));
            }
        }
        Ok(Window { lo, hi, margin })
    }

    pub fn contains(&self, u: Site) -> bool {
        let c = [u.i, u.j, u.k];
        (0..3).all(|a| self.lo[a] <= c[a] && c[a] <= self.hi[a])
    }

    /// Chebyshev distance from `u` to the nearest window face.
    pub fn boundary_distance(&self, u: Site) -> i64 {
        let c = [u.i, u.j, u.k];
        (0..3)
            .map(|a| (c[a] - self.lo[a]).min(self.hi[a] - c[a]))
            .min()
            .unwrap()
    }
}

/// Count of integers `t` in `[a, b]` with `t = p (mod 2)`.
fn count_parity(a: i64, b: i64, p: i64) -> i64 {
    if a > b {
        return 0;
    }
    let lo = a + (p - a).rem_euclid(2);
    if lo > b {
        0
    } else {
        (b - lo) / 2 + 1
    }
}

/// Geometry context shared by Pauli words, syndromes and charge tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Context {
    Torus(LatticeSpec),
    Patch(Window),
}

impl Context {
    pub fn torus(p_x: i64, p_y: i64, p_z: i64) -> Result<Context> {
        Ok(Context::Torus(LatticeSpec::new(p_x, p_y, p_z)?))
    }

    pub fn window(lo: [i64; 3], hi: [i64; 3]) -> Result<Context> {
        Ok(Context::Patch(Window::new(lo, hi)?))
    }

    /// Canonical representative of a site: reduced coordinates on the
    /// torus, the site itself on a window.
    pub fn canonical(&self, u: Site) -> Site {
        match self {
            Context::Torus(s) => s.reduce(u),
            Context::Patch(_) => u,
        }
    }

    pub fn contains(&self, u: Site) -> bool {
        match self {
            Context::Torus(_) => true,
            Context::Patch(w) => w.contains(u),
        }
    }

    pub fn qubit_count(&self) -> usize {
        match self {
            Context::Torus(s) => s.qubit_count(),
            Context::Patch(w) => self.parity_count(w, 0),
        }
    }

    /// Number of odd sites (generator slots, defined or not).
    pub fn odd_count(&self) -> usize {
        match self {
            Context::Torus(s) => s.qubit_count(),
            Context::Patch(w) => self.parity_count(w, 1),
        }
    }

    fn parity_count(&self, w: &Window, parity: i64) -> usize {
        let mut total = 0i64;
        for i in w.lo[0]..=w.hi[0] {
            total += Self::row_count(w, i, parity);
        }
        total as usize
    }

    // Sites (i, j, k) with fixed i and (i + j + k) = parity (mod 2).
    fn row_count(w: &Window, i: i64, parity: i64) -> i64 {
        let je = count_parity(w.lo[1], w.hi[1], 0);
        let jo = count_parity(w.lo[1], w.hi[1], 1);
        let ke0 = count_parity(w.lo[2], w.hi[2], (parity - i).rem_euclid(2));
        let ke1 = count_parity(w.lo[2], w.hi[2], (parity - i - 1).rem_euclid(2));
        je * ke0 + jo * ke1
    }

    fn index_in(&self, u: Site, parity: i64) -> Option<usize> {
        let u = self.canonical(u);
        if u.parity() != parity || !self.contains(u) {
            return None;
        }
        match self {
            Context::Torus(s) => {
                let [_, ly, lz] = s.dims();
                let k0 = (parity - u.i - u.j).rem_euclid(2);
                Some((((u.i * ly + u.j) * lz) / 2 + (u.k - k0) / 2) as usize)
            }
            Context::Patch(w) => {
                let mut idx = 0i64;
                for i in w.lo[0]..u.i {
                    idx += Self::row_count(w, i, parity);
                }
                // Columns before (u.i, u.j), then position inside the column.
                let p_even_j = (parity - u.i).rem_euclid(2);
                let p_odd_j = (parity - u.i - 1).rem_euclid(2);
                idx += count_parity(w.lo[1], u.j - 1, 0) * count_parity(w.lo[2], w.hi[2], p_even_j)
                    + count_parity(w.lo[1], u.j - 1, 1) * count_parity(w.lo[2], w.hi[2], p_odd_j);
                let pk = (parity - u.i - u.j).rem_euclid(2);
                idx += count_parity(w.lo[2], u.k - 1, pk);
                Some(idx as usize)
            }
        }
    }

    /// Index of an even site among the qubits, lexicographic in `(i, j, k)`.
    pub fn qubit_index(&self, u: Site) -> Result<usize> {
        if !self.contains(self.canonical(u)) {
            return Err(Error::OutOfWindow(u));
        }
        self.index_in(u, 0).ok_or(Error::Parity {
            site: u,
            expected: "even",
        })
    }

    /// Index of an odd site among the generator slots.
    pub fn generator_index(&self, u: Site) -> Result<usize> {
        if !self.contains(self.canonical(u)) {
            return Err(Error::OutOfWindow(u));
        }
        self.index_in(u, 1).ok_or(Error::Parity {
            site: u,
            expected: "odd",
        })
    }

    fn site_of(&self, idx: usize, parity: i64) -> Site {
        match self {
            Context::Torus(s) => {
                let [_, ly, lz] = s.dims();
                let per_col = (lz / 2) as usize;
                let col = (idx / per_col) as i64;
                let pos = (idx % per_col) as i64;
                let i = col / ly;
                let j = col % ly;
                let k0 = (parity - i - j).rem_euclid(2);
                Site::new(i, j, 2 * pos + k0)
            }
            Context::Patch(w) => {
                let mut rem = idx as i64;
                for i in w.lo[0]..=w.hi[0] {
                    let rc = Self::row_count(w, i, parity);
                    if rem < rc {
                        for j in w.lo[1]..=w.hi[1] {
                            let pk = (parity - i - j).rem_euclid(2);
                            let cc = count_parity(w.lo[2], w.hi[2], pk);
                            if rem < cc {
                                let lo = w.lo[2] + (pk - w.lo[2]).rem_euclid(2);
                                return Site::new(i, j, lo + 2 * rem);
                            }
                            rem -= cc;
                        }
                        unreachable!("row_count/col_count mismatch");
                    }
                    rem -= rc;
                }
                panic!("site index {idx} out of range");
            }
        }
    }

    pub fn qubit_site(&self, idx: usize) -> Site {
        self.site_of(idx, 0)
    }

    pub fn generator_site(&self, idx: usize) -> Site {
        self.site_of(idx, 1)
    }

    pub fn even_sites(&self) -> Vec<Site> {
        (0..self.qubit_count())
            .map(|q| self.qubit_site(q))
            .collect()
    }

    pub fn odd_sites(&self) -> Vec<Site> {
        (0..self.odd_count())
            .map(|q| self.generator_site(q))
            .collect()
    }

    /// The six nearest neighbors `u ± x, u ± y, u ± z` with wraparound on
    /// the torus. Off-window neighbors come back as `None`; on a small
    /// torus the same canonical site may occur twice.
    pub fn neighbors(&self, u: Site) -> [Option<Site>; 6] {
        let deltas = [
            Vec3::new(-1, 0, 0),
            Vec3::new(1, 0, 0),
            Vec3::new(0, -1, 0),
            Vec3::new(0, 1, 0),
            Vec3::new(0, 0, -1),
            Vec3::new(0, 0, 1),
        ];
        let mut out = [None; 6];
        for (slot, d) in deltas.iter().enumerate() {
            let v = self.canonical(u + *d);
            if self.contains(v) {
                out[slot] = Some(v);
            }
        }
        out
    }

    /// `gcd(p_x, p_y, p_z)` on the torus.
    pub fn g(&self) -> Option<i64> {
        match self {
            Context::Torus(s) => Some(s.g()),
            Context::Patch(_) => None,
        }
    }

    pub fn spec(&self) -> Option<LatticeSpec> {
        match self {
            Context::Torus(s) => Some(*s),
            Context::Patch(_) => None,
        }
    }

    pub fn as_window(&self) -> Option<Window> {
        match self {
            Context::Torus(_) => None,
            Context::Patch(w) => Some(*w),
        }
    }

    /// Plane label of `t . u`: on the torus the label lives in `Z_{2g}`.
    pub fn plane_label(&self, t: Vec3, u: Site) -> i64 {
        match self {
            Context::Torus(s) => t.dot(u).rem_euclid(2 * s.g()),
            Context::Patch(_) => t.dot(u),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Torus(s) => write!(f, "{},{},{}", s.p_x, s.p_y, s.p_z),
            Context::Patch(w) => write!(
                f,
                "window:{}..{},{}..{},{}..{}",
                w.lo[0], w.hi[0], w.lo[1], w.hi[1], w.lo[2], w.hi[2]
            ),
        }
    }
}

impl FromStr for Context {
    type Err = Error;

    /// Parses `"px,py,pz"` or `"window:imin..imax,jmin..jmax,kmin..kmax"`.
    fn from_str(s: &str) -> Result<Context> {
        if let Some(rest) = s.strip_prefix("window:") {
            let mut lo = [0i64; 3];
            let mut hi = [0i64; 3];
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::InvalidSpec(format!("bad window spec {s:?}")));
            }
            for (a, part) in parts.iter().enumerate() {
                let (l, h) = part
                    .split_once("..")
                    .ok_or_else(|| Error::InvalidSpec(format!("bad window range {part:?}")))?;
                lo[a] = l
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad integer {l:?}")))?;
                hi[a] = h
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad integer {h:?}")))?;
            }
            // Clamp the default margin for small windows.
            let max_margin = (0..3).map(|a| (hi[a] - lo[a] + 1) / 2).min().unwrap();
            Ok(Context::Patch(Window::with_margin(
                lo,
                hi,
                DEFAULT_MARGIN.min(max_margin),
            )?))
        } else {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::InvalidSpec(format!("bad lattice spec {s:?}")));
            }
            let mut p = [0i64; 3];
            for (a, part) in parts.iter().enumerate() {
                p[a] = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad integer {part:?}")))?;
            }
            Context::torus(p[0], p[1], p[2])
        }
    }
}

/// All sites of the plane `t . u = alpha` (taken mod `2g` on the torus).
pub fn plane_sites(ctx: &Context, t: Vec3, alpha: i64) -> Vec<Site> {
    match ctx {
        Context::Torus(s) => {
            let m = 2 * s.g();
            let target = alpha.rem_euclid(m);
            all_sites(ctx)
                .into_iter()
                .filter(|&u| t.dot(u).rem_euclid(m) == target)
                .collect()
        }
        Context::Patch(_) => all_sites(ctx)
            .into_iter()
            .filter(|&u| t.dot(u) == alpha)
            .collect(),
    }
}

/// Every site of the context, both parities, lexicographic order.
pub fn all_sites(ctx: &Context) -> Vec<Site> {
    let (lo, hi) = match ctx {
        Context::Torus(s) => {
            let [lx, ly, lz] = s.dims();
            ([0, 0, 0], [lx - 1, ly - 1, lz - 1])
        }
        Context::Patch(w) => (w.lo, w.hi),
    };
    let mut out = Vec::new();
    for i in lo[0]..=hi[0] {
        for j in lo[1]..=hi[1] {
            for k in lo[2]..=hi[2] {
                out.push(Site::new(i, j, k));
            }
        }
    }
    out
}
