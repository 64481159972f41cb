//! The differential-operator realization `a = d/dx`, `a⁺ = x`.
//!
//! Operators are applied to polynomials directly, with no normal ordering
//! involved, which makes this module an oracle for [`crate::weyl`]. Operator
//! expressions are kept as trees of words, normal-ordered sums, compositions
//! and linear combinations so an identity can be realized straight from its
//! defining product form.

use alloc::vec::Vec;
use core::fmt;

use crate::poly::{Monomial, Poly};
use crate::weyl::{Letter, NormalForm, OperatorWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizedOperator {
    /// A word, applied letter by letter from the right.
    Word(OperatorWord),
    /// `Σ c_ij x^i D^j`
    Normal(NormalForm),
    /// Operator product `F_0 F_1 ... F_n`; `F_n` acts first.
    Compose(Vec<RealizedOperator>),
    /// `Σ c · F`, coefficients polynomial in `λ`.
    Combination(Vec<(Poly, RealizedOperator)>),
}

impl RealizedOperator {
    pub fn identity() -> Self {
        RealizedOperator::Word(OperatorWord::default())
    }

    pub fn scalar(c: Poly) -> Self {
        RealizedOperator::Combination(alloc::vec![(c, RealizedOperator::identity())])
    }

    /// `xD`
    pub fn number() -> Self {
        RealizedOperator::Word(OperatorWord::new(alloc::vec![Letter::C, Letter::A]))
    }

    /// `x^i D^j`
    pub fn x_pow_d_pow(i: u32, j: u32) -> Self {
        RealizedOperator::Word(OperatorWord::normal(i, j))
    }

    /// `self + c`
    pub fn plus(self, c: Poly) -> Self {
        RealizedOperator::Combination(alloc::vec![
            (Poly::one(), self),
            (c, RealizedOperator::identity()),
        ])
    }

    /// `(base + shift)_{n,λ}` as a composition of `n` shifted copies of `base`.
    pub fn deg_falling(base: &RealizedOperator, shift: &Poly, n: u32) -> Self {
        RealizedOperator::Compose(
            (0..n)
                .map(|i| {
                    let c = shift - &(&Poly::int(i64::from(i)) * &Poly::lambda());
                    base.clone().plus(c)
                })
                .collect(),
        )
    }

    /// Applies the operator to `p`.
    pub fn apply(&self, p: &Poly) -> Poly {
        match self {
            RealizedOperator::Word(w) => w.0.iter().rev().fold(p.clone(), |acc, l| match l {
                Letter::A => acc.derivative_x(),
                Letter::C => acc.shift_monomial(Monomial::new(0, 1)),
            }),
            RealizedOperator::Normal(nf) => nf
                .coefficients()
                .iter()
                .map(|(&(i, j), c)| {
                    let mut d = p.clone();
                    for _ in 0..j {
                        d = d.derivative_x();
                    }
                    &d.shift_monomial(Monomial::new(0, i)) * c
                })
                .sum(),
            RealizedOperator::Compose(factors) => {
                factors.iter().rev().fold(p.clone(), |acc, f| f.apply(&acc))
            }
            RealizedOperator::Combination(parts) => {
                parts.iter().map(|(c, op)| c * &op.apply(p)).sum()
            }
        }
    }

    /// Upper bound on the number of derivatives the operator can take, read
    /// off the expression tree.
    pub fn annihilation_bound(&self) -> u32 {
        match self {
            RealizedOperator::Word(w) => w.annihilations(),
            RealizedOperator::Normal(nf) => nf.max_annihilation(),
            RealizedOperator::Compose(fs) => fs.iter().map(Self::annihilation_bound).sum(),
            RealizedOperator::Combination(parts) => parts
                .iter()
                .map(|(_, op)| op.annihilation_bound())
                .max()
                .unwrap_or(0),
        }
    }
}

impl From<OperatorWord> for RealizedOperator {
    fn from(w: OperatorWord) -> Self {
        RealizedOperator::Word(w)
    }
}

impl From<NormalForm> for RealizedOperator {
    fn from(nf: NormalForm) -> Self {
        RealizedOperator::Normal(nf)
    }
}

/// First monomial `x^m` on which two operators disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMismatch {
    pub m: u32,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl fmt::Display for MonomialMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "on x^{}: lhs gives {}, rhs gives {}",
            self.m, self.lhs, self.rhs
        )
    }
}

/// Compares `lhs` and `rhs` on `x^0, ..., x^mmax`.
///
/// Operators of the form `Σ c_ij x^i D^j` with `j <= J` are equal iff they
/// agree on `x^0..x^J`, so `mmax` must be at least the annihilation degree of
/// both sides.
pub fn operators_equal_on_monomials(
    lhs: &RealizedOperator,
    rhs: &RealizedOperator,
    mmax: u32,
) -> Result<(), MonomialMismatch> {
    for m in 0..=mmax {
        let xm = Poly::term(crate::poly::rational(1), Monomial::new(0, m));
        let l = lhs.apply(&xm);
        let r = rhs.apply(&xm);
        if l != r {
            return Err(MonomialMismatch { m, lhs: l, rhs: r });
        }
    }
    Ok(())
}

/// Annihilation bound of both sides plus a margin of two.
pub fn default_mmax(lhs: &RealizedOperator, rhs: &RealizedOperator) -> u32 {
    lhs.annihilation_bound().max(rhs.annihilation_bound()) + 2
}
