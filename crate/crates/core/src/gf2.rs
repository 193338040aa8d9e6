//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are stored as 64-bit limbs, matrices as row vectors. Gaussian
//! elimination pivots on the first set bit of each row and eliminates with
//! whole-word XOR; there is nothing cleverer here because nothing cleverer
//! is needed: a 3600 x 7200 rank computation runs in well under a second.
//! Elimination below the pivot is data-parallel over the remaining rows
//! when the `parallel` feature is on.

#[cfg(feature = "parallel")]
use crate::par::*;

// Below this many limb operations per sweep the rayon dispatch overhead
// outweighs the XOR work and the elimination runs sequentially.
#[cfg(feature = "parallel")]
const PAR_MIN_WORDS: usize = 1 << 22;

fn xor_below(tail: &mut [BitVec], pivot_row: &BitVec, lead: usize) {
    #[cfg(feature = "parallel")]
    if tail.len() * pivot_row.len().div_ceil(64) > PAR_MIN_WORDS {
        tail.par_iter_mut().for_each(|row| {
            if row.get(lead) {
                row.xor_assign(pivot_row);
            }
        });
        return;
    }
    for row in tail.iter_mut() {
        if row.get(lead) {
            row.xor_assign(pivot_row);
        }
    }
}

/// Dense bit vector backed by `u64` limbs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    limbs: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            limbs: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.limbs[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.limbs[i >> 6] |= mask;
        } else {
            self.limbs[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.limbs[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter_mut().zip(other.limbs.iter()) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Popcount of the AND with `other`, reduced mod 2 by the caller when
    /// a symplectic form is wanted.
    pub fn and_count(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.limbs
            .iter()
            .zip(other.limbs.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Popcount of the OR with `other` (qubit-paired weight helper).
    pub fn or_count(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.limbs
            .iter()
            .zip(other.limbs.iter())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&w| w == 0)
    }

    pub fn first_set(&self) -> Option<usize> {
        for (w, &limb) in self.limbs.iter().enumerate() {
            if limb != 0 {
                return Some((w << 6) + limb.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(w, &limb)| {
            let mut bits = limb;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some((w << 6) + b)
                }
            })
        })
    }

    /// Concatenate two vectors (used to glue X and Z masks).
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[{}; ones=", self.len)?;
        f.debug_list().entries(self.iter_ones()).finish()?;
        write!(f, "]")
    }
}

/// Dense GF(2) matrix stored by rows.
#[derive(Clone, Debug)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn new(cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Gf2Matrix { cols, rows }
    }

    pub fn push_row(&mut self, row: BitVec) {
        debug_assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut rows = vec![BitVec::zeros(self.nrows()); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                rows[c].set(r, true);
            }
        }
        Gf2Matrix::from_rows(self.nrows(), rows)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelonize().pivots.len()
    }

    /// In-place forward elimination to row echelon form; returns the pivot
    /// columns. Rows end up sorted with pivot rows first.
    fn echelonize(mut self) -> Echelon {
        let mut pivots = Vec::new();
        let mut done = 0;
        while done < self.rows.len() {
            // Pick the remaining row whose leading bit is leftmost.
            let mut best: Option<(usize, usize)> = None;
            for r in done..self.rows.len() {
                if let Some(lead) = self.rows[r].first_set() {
                    if best.is_none_or(|(_, bl)| lead < bl) {
                        best = Some((r, lead));
                    }
                }
            }
            let Some((r, lead)) = best else { break };
            self.rows.swap(done, r);
            let (head, tail) = self.rows.split_at_mut(done + 1);
            xor_below(tail, &head[done], lead);
            pivots.push(lead);
            done += 1;
        }
        self.rows.truncate(pivots.len());
        Echelon {
            cols: self.cols,
            rows: self.rows,
            pivots,
        }
    }

    /// Reduced row echelon form of the row space.
    pub fn row_reduce(&self) -> Echelon {
        let mut ech = self.clone().echelonize();
        ech.back_substitute();
        ech
    }

    /// Basis of the right nullspace `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let ech = self.row_reduce();
        let pivot_set: std::collections::HashSet<usize> = ech.pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in ech.pivots.iter().enumerate() {
                if ech.rows[r].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        debug_assert_eq!(b.len(), self.nrows());
        // Augment with b as an extra column and eliminate.
        let mut aug = Gf2Matrix::new(self.cols + 1);
        for (r, row) in self.rows.iter().enumerate() {
            let mut arow = BitVec::zeros(self.cols + 1);
            for c in row.iter_ones() {
                arow.set(c, true);
            }
            if b.get(r) {
                arow.set(self.cols, true);
            }
            aug.push_row(arow);
        }
        let mut ech = aug.echelonize();
        ech.back_substitute();
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in ech.pivots.iter().enumerate() {
            if p == self.cols {
                return None; // pivot in the augmented column
            }
            if ech.rows[r].get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Basis of the left nullspace `{t : t^T M = 0}`, computed by tracking
    /// an identity block through the elimination.
    pub fn left_nullspace(&self) -> Vec<BitVec> {
        let n = self.nrows();
        let mut aug = Gf2Matrix::new(self.cols + n);
        for (r, row) in self.rows.iter().enumerate() {
            let mut arow = BitVec::zeros(self.cols + n);
            for c in row.iter_ones() {
                arow.set(c, true);
            }
            arow.set(self.cols + r, true);
            aug.push_row(arow);
        }
        // Eliminate on the original columns only: rows whose original part
        // vanished record a dependency in the tracker block.
        let mut pivots: Vec<usize> = Vec::new();
        let mut rows = aug.rows;
        let mut done = 0;
        while done < rows.len() {
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in rows.iter().enumerate().skip(done) {
                match row.first_set() {
                    Some(lead) if lead < self.cols && best.is_none_or(|(_, bl)| lead < bl) => {
                        best = Some((r, lead));
                    }
                    _ => {}
                }
            }
            let Some((r, lead)) = best else { break };
            rows.swap(done, r);
            let (head, tail) = rows.split_at_mut(done + 1);
            xor_below(tail, &head[done], lead);
            pivots.push(lead);
            done += 1;
        }
        rows[done..]
            .iter()
            .map(|row| row.slice(self.cols, n))
            .collect()
    }
}

/// Echelonized row space with recorded pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn back_substitute(&mut self) {
        for r in (0..self.rows.len()).rev() {
            let p = self.pivots[r];
            let (above, below) = self.rows.split_at_mut(r);
            let pivot_row = &below[0];
            for row in above.iter_mut() {
                if row.get(p) {
                    row.xor_assign(pivot_row);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduce `v` against the row space; the remainder is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, v: &mut BitVec) {
        debug_assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut r = v.clone();
        self.reduce(&mut r);
        r.is_zero()
    }
}
