//! The six degenerate Stirling families as polynomials in `λ`.
//!
//! Entries use offset indexing: for an r-family, `(n, k)` stands for the
//! number with top index `n + r` and bottom index `k + r`, so every table is
//! a triangle `0 <= k <= n`. Values outside the triangle are zero.
//!
//! Two independent routes compute each value:
//!
//! * [`value`] / [`table`] run a two-term triangular recurrence obtained by
//!   multiplying the defining expansion by one more linear factor;
//! * [`oracle_value`] / [`StirlingTable::from_oracle`] expand the defining
//!   polynomial in the target basis with [`crate::bases::expand_in_basis`].

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bases::{basis_polys, expand_in_basis, shift_x, Basis};
use crate::poly::{Poly, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `S_{1,λ}(n,k)`: `(x)_n = Σ S_{1,λ}(n,k) (x)_{k,λ}`
    S1,
    /// `S_{2,λ}(n,k)`: `(x)_{n,λ} = Σ S_{2,λ}(n,k) (x)_k`
    S2,
    /// unsigned `[n,k]_λ`: `<x>_n = Σ [n,k]_λ <x>_{k,λ}`
    S1u,
    /// `{n+r, k+r}_{r,λ}`: `(x+r)_{n,λ} = Σ {n+r,k+r}_{r,λ} (x)_k`
    RS2,
    /// unsigned `[n+r, k+r]_{r,λ}`: `<x+r>_n = Σ [n+r,k+r]_{r,λ} <x>_{k,λ}`
    RS1u,
    /// `S^{(r)}_{1,λ}(n+r, k+r)`: `(x-r)_n = Σ S^{(r)}_{1,λ}(n+r,k+r) (x)_{k,λ}`
    RS1,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::S1,
        Kind::S2,
        Kind::S1u,
        Kind::RS2,
        Kind::RS1u,
        Kind::RS1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::S1 => "S1",
            Kind::S2 => "S2",
            Kind::S1u => "S1u",
            Kind::RS2 => "rS2",
            Kind::RS1u => "rS1u",
            Kind::RS1 => "rS1",
        }
    }

    pub fn has_r(self) -> bool {
        matches!(self, Kind::RS2 | Kind::RS1u | Kind::RS1)
    }

    /// The plain family an r-family collapses to at `r = 0`.
    pub fn plain(self) -> Kind {
        match self {
            Kind::RS2 => Kind::S2,
            Kind::RS1u => Kind::S1u,
            Kind::RS1 => Kind::S1,
            k => k,
        }
    }

    /// (source sequence, x-shift sign, target basis) of the defining expansion.
    fn definition(self) -> (Basis, i64, Basis) {
        match self {
            Kind::S1 => (Basis::Falling, 0, Basis::DegFalling),
            Kind::S2 => (Basis::DegFalling, 0, Basis::Falling),
            Kind::S1u => (Basis::Rising, 0, Basis::DegRising),
            Kind::RS2 => (Basis::DegFalling, 1, Basis::Falling),
            Kind::RS1u => (Basis::Rising, 1, Basis::DegRising),
            Kind::RS1 => (Basis::Falling, -1, Basis::DegFalling),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFamily;

impl fmt::Display for UnknownFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown Stirling family (expected S1, S2, S1u, rS1, rS2 or rS1u)")
    }
}

impl FromStr for Kind {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or(UnknownFamily)
    }
}

/// A Stirling family at a fixed `r`. Plain families always carry `r = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    kind: Kind,
    r: u32,
}

impl Family {
    pub fn new(kind: Kind, r: u32) -> Self {
        let r = if kind.has_r() { r } else { 0 };
        Family { kind, r }
    }

    pub fn plain(kind: Kind) -> Self {
        Family::new(kind, 0)
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn r(self) -> u32 {
        self.r
    }

    /// Multiplier of entry `(n, k)` when stepping from row `n` to row `n + 1`:
    /// `next(n+1, k) = prev(n, k-1) + weight(n, k) * prev(n, k)`.
    fn weight(self, n: u32, k: u32) -> Poly {
        let (n, k, r) = (i64::from(n), i64::from(k), i64::from(self.r));
        let lam = Poly::lambda();
        match self.kind {
            // (x-r)_n (x - r - n) with x = (x - kλ) + kλ
            Kind::S1 | Kind::RS1 => &(&Poly::int(k) * &lam) - &Poly::int(r + n),
            // (x+r)_{n,λ} (x + r - nλ) with x = (x - k) + k
            Kind::S2 | Kind::RS2 => &Poly::int(k + r) - &(&Poly::int(n) * &lam),
            // <x+r>_n (x + r + n) with x = (x + kλ) - kλ
            Kind::S1u | Kind::RS1u => &Poly::int(n + r) - &(&Poly::int(k) * &lam),
        }
    }

    fn next_row(self, n: u32, prev: &[Poly]) -> Vec<Poly> {
        (0..=n + 1)
            .map(|k| {
                let mut v = match k {
                    0 => Poly::zero(),
                    _ => prev[k as usize - 1].clone(),
                };
                if k <= n {
                    v += &(&self.weight(n, k) * &prev[k as usize]);
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.has_r() {
            write!(f, "{}(r={})", self.kind.name(), self.r)
        } else {
            f.write_str(self.kind.name())
        }
    }
}

/// Triangle of values `(n, k)`, `0 <= k <= n <= nmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    family: Family,
    rows: Vec<Vec<Poly>>,
}

impl StirlingTable {
    /// Builds the triangle with the triangular recurrence.
    pub fn from_recurrence(family: Family, nmax: u32) -> Self {
        let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(nmax as usize + 1);
        rows.push(alloc::vec![Poly::one()]);
        for n in 0..nmax {
            let next = family.next_row(n, &rows[n as usize]);
            rows.push(next);
        }
        StirlingTable { family, rows }
    }

    /// Builds the triangle from the defining basis expansions.
    pub fn from_oracle(family: Family, nmax: u32) -> Self {
        let (source, sign, target) = family.kind.definition();
        let shift = sign * i64::from(family.r);
        let sources = basis_polys(source, nmax as usize + 1);
        let rows = sources
            .iter()
            .map(|p| expand_in_basis(&shift_x(p, shift), target))
            .collect();
        StirlingTable { family, rows }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nmax(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn row(&self, n: u32) -> &[Poly] {
        &self.rows[n as usize]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Poly]> {
        self.rows.iter().map(Vec::as_slice)
    }

    /// Entry `(n, k)`; zero when `n < 0`, `k < 0` or `k > n`.
    ///
    /// Panics if `n > nmax`.
    pub fn get(&self, n: i64, k: i64) -> &Poly {
        if n < 0 || k < 0 || k > n {
            return &ZERO;
        }
        assert!(
            n <= i64::from(self.nmax()),
            "row {n} requested from a table of {} built to nmax = {}",
            self.family,
            self.nmax()
        );
        &self.rows[n as usize][k as usize]
    }

    /// Overwrites one in-range entry.
    pub fn set(&mut self, n: u32, k: u32, value: Poly) {
        assert!(k <= n && n <= self.nmax(), "entry ({n}, {k}) out of range");
        self.rows[n as usize][k as usize] = value;
    }

    /// Applies `f` to every entry, e.g. a numeric substitution for `λ`.
    pub fn map(&self, mut f: impl FnMut(&Poly) -> Poly) -> StirlingTable {
        StirlingTable {
            family: self.family,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(&mut f).collect())
                .collect(),
        }
    }
}

/// One family value by recurrence. Zero when `k < 0` or `k > n`.
pub fn value(family: Family, n: u32, k: i64) -> Poly {
    if k < 0 || k > i64::from(n) {
        return Poly::zero();
    }
    let mut row = alloc::vec![Poly::one()];
    for m in 0..n {
        row = family.next_row(m, &row);
    }
    row.swap_remove(k as usize)
}

/// One family value read off the defining expansion.
pub fn oracle_value(family: Family, n: u32, k: i64) -> Poly {
    if k < 0 || k > i64::from(n) {
        return Poly::zero();
    }
    let (source, sign, target) = family.kind.definition();
    let p = shift_x(
        &crate::bases::basis_poly(source, n),
        sign * i64::from(family.r),
    );
    expand_in_basis(&p, target).swap_remove(k as usize)
}

pub fn table(family: Family, nmax: u32) -> StirlingTable {
    StirlingTable::from_recurrence(family, nmax)
}
