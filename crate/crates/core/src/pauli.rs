//! Phase-tracked Pauli words over the even sublattice.
//!
//! A word is stored in the canonical form `i^phase * prod_q X_q^{x_q} Z_q^{z_q}`
//! with the phase exponent kept exactly mod 4; `Y` is `x = z = 1` together
//! with one factor of `i` in the phase (`Y = i X Z`). Multiplication applies
//! the reordering rule `Z^a X^b = (-1)^{ab} X^b Z^a` qubit-wise, so products
//! of generator sets come out with their exact sign — which is the whole
//! point: the `-I not in S` check is meaningless without it.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::lattice::{Axis, Context, Site};

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    /// `(x bit, z bit)` of the canonical encoding.
    pub fn bits(&self) -> (bool, bool) {
        match self {
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    /// Phase of `i` contributed by the canonical encoding (`Y = i X Z`).
    pub fn phase(&self) -> u8 {
        match self {
            Letter::Y => 1,
            _ => 0,
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Option<Letter> {
        match (x, z) {
            (true, false) => Some(Letter::X),
            (true, true) => Some(Letter::Y),
            (false, true) => Some(Letter::Z),
            (false, false) => None,
        }
    }

    /// The letter the six-body generator applies along `axis`.
    pub fn of_axis(axis: Axis) -> Letter {
        match axis {
            Axis::X => Letter::X,
            Axis::Y => Letter::Y,
            Axis::Z => Letter::Z,
        }
    }

    /// True when single-qubit letters anticommute (distinct letters).
    pub fn anticommutes(&self, other: Letter) -> bool {
        *self != other
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Letter::X => write!(f, "X"),
            Letter::Y => write!(f, "Y"),
            Letter::Z => write!(f, "Z"),
        }
    }
}

/// Phase-tracked Pauli word over the qubits of a context.
#[derive(Clone, PartialEq, Eq)]
pub struct PauliWord {
    ctx: Context,
    phase: u8, // exponent of i, mod 4
    x: BitVec,
    z: BitVec,
}

impl PauliWord {
    pub fn identity(ctx: Context) -> Self {
        let n = ctx.qubit_count();
        PauliWord {
            ctx,
            phase: 0,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_mask(&self) -> &BitVec {
        &self.x
    }

    pub fn z_mask(&self) -> &BitVec {
        &self.z
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x.or_count(&self.z)
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.x.is_zero() && self.z.is_zero()
    }

    /// Multiply by the scalar `i`.
    pub fn scalar_i(&mut self) {
        self.phase = (self.phase + 1) % 4;
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of `Y` positions (`x` and `z` both set).
    pub fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    /// Hermitian iff the phase matches the `Y` count mod 2.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize).rem_euclid(2) == self.y_count().rem_euclid(2)
    }

    /// Hermitian with a `+1` overall sign (phase = #Y mod 4).
    pub fn is_positive_hermitian(&self) -> bool {
        (self.phase as usize).rem_euclid(4) == self.y_count().rem_euclid(4)
    }

    pub fn letter_at(&self, u: Site) -> Option<Letter> {
        let q = self.ctx.qubit_index(u).ok()?;
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    /// Sites acted on, in qubit-index order.
    pub fn support(&self) -> Vec<Site> {
        let mut idx: Vec<usize> = self.x.iter_ones().chain(self.z.iter_ones()).collect();
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter().map(|q| self.ctx.qubit_site(q)).collect()
    }

    /// Multiply by a single-qubit letter on the right.
    pub fn mul_letter(&mut self, u: Site, letter: Letter) -> Result<()> {
        let q = self.ctx.qubit_index(u).map_err(|_| Error::Parity {
            site: u,
            expected: "even (in context)",
        })?;
        let (xb, zb) = letter.bits();
        self.phase = (self.phase + letter.phase()) % 4;
        if xb && self.z.get(q) {
            self.phase = (self.phase + 2) % 4;
        }
        if xb {
            self.x.flip(q);
        }
        if zb {
            self.z.flip(q);
        }
        Ok(())
    }

    /// Exact group product `self * other`.
    pub fn mul(&self, other: &PauliWord) -> Result<PauliWord> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        out.phase = (self.phase + other.phase) % 4;
        // Z^a X^b = (-1)^{ab} X^b Z^a per qubit.
        let crossings = self.z.and_count(&other.x);
        out.phase = (out.phase + 2 * (crossings % 2) as u8) % 4;
        out.x.xor_assign(&other.x);
        out.z.xor_assign(&other.z);
        Ok(out)
    }

    /// Symplectic-form parity: 0 when the words commute.
    pub fn sym_form(&self, other: &PauliWord) -> Result<u8> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let a = self.x.and_count(&other.z) + self.z.and_count(&other.x);
        Ok((a % 2) as u8)
    }

    pub fn commutes_with(&self, other: &PauliWord) -> Result<bool> {
        Ok(self.sym_form(other)? == 0)
    }

    /// `X`-mask and `Z`-mask glued into one `2n`-bit symplectic vector.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Rebuild a (phase-zero) word from a symplectic vector.
    pub fn from_symplectic(ctx: Context, v: &BitVec) -> PauliWord {
        let n = ctx.qubit_count();
        debug_assert_eq!(v.len(), 2 * n);
        PauliWord {
            ctx,
            phase: 0,
            x: v.slice(0, n),
            z: v.slice(n, n),
        }
    }

    pub fn to_json(&self) -> Value {
        let xs: Vec<usize> = self.x.iter_ones().collect();
        let zs: Vec<usize> = self.z.iter_ones().collect();
        json!({
            "phase": self.phase,
            "x": xs,
            "z": zs,
            "context": self.ctx.to_string(),
        })
    }

    pub fn from_json(v: &Value) -> Result<PauliWord> {
        let ctx: Context = v
            .get("context")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json("missing context".into()))?
            .parse()?;
        let phase = v
            .get("phase")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing phase".into()))? as u8;
        if phase > 3 {
            return Err(Error::Json(format!("phase {phase} out of range 0..=3")));
        }
        let n = ctx.qubit_count();
        let read_mask = |key: &str| -> Result<BitVec> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json(format!("missing {key} mask")))?;
            let mut mask = BitVec::zeros(n);
            for e in arr {
                let q = e
                    .as_u64()
                    .ok_or_else(|| Error::Json(format!("bad index in {key}")))?
                    as usize;
                if q >= n {
                    return Err(Error::Json(format!("qubit index {q} out of range")));
                }
                mask.set(q, true);
            }
            Ok(mask)
        };
        Ok(PauliWord {
            ctx,
            phase,
            x: read_mask("x")?,
            z: read_mask("z")?,
        })
    }
}

impl std::fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i^{} ", self.phase)?;
        let mut first = true;
        let mut idx: Vec<usize> = self.x.iter_ones().chain(self.z.iter_ones()).collect();
        idx.sort_unstable();
        idx.dedup();
        for q in idx {
            let u = self.ctx.qubit_site(q);
            let l = Letter::from_bits(self.x.get(q), self.z.get(q)).unwrap();
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}{u}")?;
            first = false;
        }
        if first {
            write!(f, "I")?;
        }
        Ok(())
    }
}

/// The six-body generator `S_u = X X Y Y Z Z` at an odd site.
///
/// On a window every neighbor must lie inside, otherwise the generator is
/// undefined. On a small torus duplicate neighbors cancel through the
/// multiplication, so degenerate dimensions stay total.
pub fn generator(ctx: &Context, u: Site) -> Result<PauliWord> {
    let u = ctx.canonical(u);
    if !u.is_odd() {
        return Err(Error::Parity {
            site: u,
            expected: "odd",
        });
    }
    if !ctx.contains(u) {
        return Err(Error::OutOfWindow(u));
    }
    let mut word = PauliWord::identity(*ctx);
    for (axis, letter) in [
        (Axis::X, Letter::X),
        (Axis::Y, Letter::Y),
        (Axis::Z, Letter::Z),
    ] {
        for sign in [-1i64, 1] {
            let v = ctx.canonical(u + axis.unit().scaled(sign));
            if !ctx.contains(v) {
                return Err(Error::UndefinedGenerator(u));
            }
            word.mul_letter(v, letter)?;
        }
    }
    Ok(word)
}

/// All-pairs commutation check, data-parallel over the first index.
pub fn all_pairs_commute(words: &[PauliWord]) -> bool {
    use crate::par::*;
    words.par_iter().enumerate().all(|(i, a)| {
        words[i + 1..]
            .iter()
            .all(|b| a.commutes_with(b).unwrap_or(false))
    })
}

/// True when the generator at `u` is defined in this context.
pub fn generator_defined(ctx: &Context, u: Site) -> bool {
    match ctx {
        Context::Torus(_) => u.is_odd(),
        Context::Patch(w) => {
            u.is_odd() && w.contains(u) && ctx.neighbors(u).iter().all(Option::is_some)
        }
    }
}
