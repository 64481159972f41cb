//! Factorial-type polynomial sequences and exact change of basis.
//!
//! Every non-monomial basis here is monic in `x`, so expanding a polynomial
//! is a top-down deflation: peel off the leading `x` coefficient, subtract
//! that multiple of the basis element, repeat. No division ever happens,
//! which makes the conversion usable as a brute-force oracle for the
//! Stirling recurrences.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use crate::poly::{Monomial, Poly, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// `x^n`
    Monomial,
    /// `(x)_n = x(x-1)...(x-n+1)`
    Falling,
    /// `(x)_{n,λ} = x(x-λ)...(x-(n-1)λ)`
    DegFalling,
    /// `<x>_n = x(x+1)...(x+n-1)`
    Rising,
    /// `<x>_{n,λ} = x(x+λ)...(x+(n-1)λ)`
    DegRising,
}

impl Basis {
    pub const ALL: [Basis; 5] = [
        Basis::Monomial,
        Basis::Falling,
        Basis::DegFalling,
        Basis::Rising,
        Basis::DegRising,
    ];

    /// The linear factor `x + step_i` that takes element `i` to element `i + 1`.
    fn factor(self, i: u32) -> Poly {
        let i = i64::from(i);
        let step = match self {
            Basis::Monomial => Poly::zero(),
            Basis::Falling => Poly::int(-i),
            Basis::Rising => Poly::int(i),
            Basis::DegFalling => &Poly::int(-i) * &Poly::lambda(),
            Basis::DegRising => &Poly::int(i) * &Poly::lambda(),
        };
        &Poly::x() + &step
    }
}

/// The `n`-th element of basis `b`.
pub fn basis_poly(b: Basis, n: u32) -> Poly {
    (0..n).map(|i| b.factor(i)).product()
}

/// The first `count` elements of `b`, built incrementally.
pub fn basis_polys(b: Basis, count: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::with_capacity(count);
    for i in 0..count {
        let next = match out.last() {
            None => Poly::one(),
            Some(prev) => prev * &b.factor(i as u32 - 1),
        };
        out.push(next);
    }
    out
}

/// Coefficients `c_0..c_d` (polynomials in `λ`) with `p = Σ c_k · basis_poly(b, k)`.
/// The zero polynomial expands to an empty list.
pub fn expand_in_basis(p: &Poly, b: Basis) -> Vec<Poly> {
    let Some(d) = p.degree(Var::X) else {
        return Vec::new();
    };
    let basis = basis_polys(b, d as usize + 1);
    let mut residual = p.clone();
    let mut coeffs = alloc::vec![Poly::zero(); d as usize + 1];
    for k in (0..=d).rev() {
        let c = residual.coeff_of_x(k);
        if c.is_zero() {
            continue;
        }
        residual -= &(&c * &basis[k as usize]);
        coeffs[k as usize] = c;
    }
    debug_assert!(residual.is_zero());
    coeffs
}

/// `p(x + c)`, expanded.
pub fn shift_x(p: &Poly, c: i64) -> Poly {
    if c == 0 {
        return p.clone();
    }
    let c = BigInt::from(c);
    let mut out = Poly::zero();
    for (m, coeff) in p.terms() {
        // (x + c)^e = Σ_i C(e, i) c^(e-i) x^i
        for i in 0..=m.x {
            let weight = binomial(BigInt::from(m.x), BigInt::from(i))
                * num_traits::pow::Pow::pow(&c, m.x - i);
            if weight.is_zero() {
                continue;
            }
            let term = Poly::term(
                coeff * Rational::from_integer(weight),
                Monomial::new(m.lambda, i),
            );
            out += &term;
        }
    }
    out
}

/// The degenerate falling factorial `(c)_{n,λ} = c(c-λ)...(c-(n-1)λ)` of
/// an arbitrary polynomial `c`.
pub fn deg_falling_at(c: &Poly, n: u32) -> Poly {
    (0..n)
        .map(|i| c - &(&Poly::int(i64::from(i)) * &Poly::lambda()))
        .product()
}

/// `<c>_{n,λ} = c(c+λ)...(c+(n-1)λ)`.
pub fn deg_rising_at(c: &Poly, n: u32) -> Poly {
    (0..n)
        .map(|i| c + &(&Poly::int(i64::from(i)) * &Poly::lambda()))
        .product()
}
