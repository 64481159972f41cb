//! Exact rationals and canonical sparse polynomials in the two symbols `λ`
//! (the degeneracy parameter) and `x` (the formal variable).
//!
//! A [`Poly`] is a map from [`Monomial`] exponent pairs to nonzero
//! [`Rational`] coefficients. The map never stores a zero coefficient, so two
//! polynomials are equal exactly when their term maps are equal. The zero
//! polynomial is the empty map.

use alloc::collections::btree_map::{self, BTreeMap, Entry};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write as _};
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The two polynomial symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Lambda,
    X,
}

/// Exponent pair `λ^lambda x^x`.
///
/// Ordered graded-lexicographically: total degree first, then the `λ`
/// exponent, then the `x` exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub lambda: u32,
    pub x: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { lambda: 0, x: 0 };

    pub const fn new(lambda: u32, x: u32) -> Self {
        Monomial { lambda, x }
    }

    pub fn total_degree(self) -> u64 {
        u64::from(self.lambda) + u64::from(self.x)
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            lambda: self
                .lambda
                .checked_add(other.lambda)
                .expect("λ exponent overflow"),
            x: self.x.checked_add(other.x).expect("x exponent overflow"),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.lambda.cmp(&other.lambda))
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical sparse polynomial over [`Rational`] in `λ` and `x`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Shared zero, handy when an accessor must hand out a reference.
pub static ZERO: Poly = Poly {
    terms: BTreeMap::new(),
};

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rational(n))
    }

    pub fn lambda() -> Self {
        Poly::term(Rational::one(), Monomial::new(1, 0))
    }

    pub fn x() -> Self {
        Poly::term(Rational::one(), Monomial::new(0, 1))
    }

    /// `c · λ^a · x^b`.
    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds a polynomial from arbitrary `(monomial, coefficient)` pairs,
    /// collecting like terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> btree_map::Iter<'_, Monomial, Rational> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree in `var`, or `None` for the zero polynomial.
    pub fn degree(&self, var: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match var {
                Var::Lambda => m.lambda,
                Var::X => m.x,
            })
            .max()
    }

    pub fn is_constant_in(&self, var: Var) -> bool {
        self.degree(var).unwrap_or(0) == 0
    }

    /// The coefficient of `x^e`, as a polynomial in `λ`.
    pub fn coeff_of_x(&self, e: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x == e)
                .map(|(m, c)| (Monomial::new(m.lambda, 0), c.clone()))
                .collect(),
        }
    }

    /// The constant term, if the polynomial is a plain rational.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `λ^a x^b`.
    pub fn shift_monomial(&self, by: Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.times(by), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation of one variable at a rational value.
    pub fn substitute(&self, var: Var, value: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = match var {
                Var::Lambda => (m.lambda, Monomial::new(0, m.x)),
                Var::X => (m.x, Monomial::new(m.lambda, 0)),
            };
            let factor = num_traits::pow::Pow::pow(value, e);
            out.add_term(rest, c * factor);
        }
        out
    }

    /// Replaces `var` by an arbitrary polynomial.
    pub fn compose(&self, var: Var, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut powers: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = match var {
                Var::Lambda => (m.lambda, Monomial::new(0, m.x)),
                Var::X => (m.x, Monomial::new(m.lambda, 0)),
            };
            while powers.len() <= e as usize {
                let next = match powers.last() {
                    None => Poly::one(),
                    Some(p) => p * value,
                };
                powers.push(next);
            }
            out += &powers[e as usize].shift_monomial(rest).scale(c);
        }
        out
    }

    /// Formal partial derivative with respect to `x`.
    pub fn derivative_x(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| {
                    (
                        Monomial::new(m.lambda, m.x - 1),
                        c * rational(i64::from(m.x)),
                    )
                })
                .collect(),
        }
    }

    /// The deterministic serialization `c * λ^a * x^b + ...`, terms in
    /// ascending graded-lex order, coefficients as `num/den` (`num` alone
    /// when the denominator is 1). The zero polynomial prints as `0`.
    pub fn canonical_text(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{} * λ^{} * x^{}", c, m.lambda, m.x);
        }
        out
    }

    /// `true` when the display form needs parentheses to act as a factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn write_symbol(f: &mut fmt::Formatter<'_>, name: &str, e: u32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_char(' ')?;
    }
    *first = false;
    if e == 1 {
        f.write_str(name)
    } else {
        write!(f, "{name}^{e}")
    }
}

/// Human-readable form, e.g. `1 - lambda` or `x^2 - 3 lambda x`. The output
/// is accepted by the expression parser of the command-line front end.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_char('-')?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut first = true;
            if !magnitude.is_one() || *m == Monomial::ONE {
                write!(f, "{magnitude}")?;
                first = false;
            }
            write_symbol(f, "lambda", m.lambda, &mut first)?;
            write_symbol(f, "x", m.x, &mut first)?;
        }
        Ok(())
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl core::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl core::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn lam() -> Poly {
        Poly::lambda()
    }
    fn x() -> Poly {
        Poly::x()
    }
    fn c(n: i64) -> Poly {
        Poly::int(n)
    }

    #[test]
    fn add_cancels_like_terms() {
        let p = &x().pow(2) - &(&lam() * &x());
        let q = &lam() * &x();
        assert_eq!(&p + &q, x().pow(2));
        assert_eq!(&p + &Poly::zero(), p);
        let s = (&x() - &lam()) + (&x() - &(&c(2) * &lam()));
        assert_eq!(s, &(&c(2) * &x()) - &(&c(3) * &lam()));
    }

    #[test]
    fn mul_expands() {
        assert_eq!(&x() * &(&x() - &lam()), &x().pow(2) - &(&lam() * &x()));
        let cubic = &(&x() * &(&x() - &lam())) * &(&x() - &(&c(2) * &lam()));
        let expected = Poly::from_terms(vec![
            (Monomial::new(0, 3), rational(1)),
            (Monomial::new(1, 2), rational(-3)),
            (Monomial::new(2, 1), rational(2)),
        ]);
        assert_eq!(cubic, expected);
        assert_eq!(&cubic * &Poly::one(), cubic);
    }

    #[test]
    fn substitute_examples() {
        let p = &x().pow(2) - &(&lam() * &x());
        assert_eq!(p.substitute(Var::Lambda, &rational(0)), x().pow(2));
        assert_eq!(p.substitute(Var::Lambda, &rational(1)), &x().pow(2) - &x());
        let cubic = Poly::from_terms(vec![
            (Monomial::new(0, 3), rational(1)),
            (Monomial::new(1, 2), rational(-3)),
            (Monomial::new(2, 1), rational(2)),
        ]);
        let at_one = &(&c(1) - &(&c(3) * &lam())) + &(&c(2) * &lam().pow(2));
        assert_eq!(cubic.substitute(Var::X, &rational(1)), at_one);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(x().pow(3).derivative_x(), &c(3) * &x().pow(2));
        assert_eq!(
            (&lam() * &x().pow(2)).derivative_x(),
            &(&c(2) * &lam()) * &x()
        );
        assert_eq!(c(5).derivative_x(), Poly::zero());
    }

    #[test]
    fn zero_is_empty_and_canonical() {
        let p = &x() - &x();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
        assert_eq!(p, Poly::zero());
        assert_eq!(p.degree(Var::X), None);
        assert_eq!(p.canonical_text(), "0");
    }

    #[test]
    fn text_forms() {
        let p = &(&c(1) - &(&c(3) * &lam())) + &(&Poly::constant(ratio(2, 3)) * &lam().pow(2));
        assert_eq!(
            p.canonical_text(),
            "1 * λ^0 * x^0 + -3 * λ^1 * x^0 + 2/3 * λ^2 * x^0"
        );
        assert_eq!(p.to_string(), "1 - 3 lambda + 2/3 lambda^2");
        assert_eq!((&c(1) - &lam()).to_string(), "1 - lambda");
        assert_eq!(
            (&x().pow(2) - &(&lam() * &x())).to_string(),
            "x^2 - lambda x"
        );
        assert_eq!((-&lam()).to_string(), "-lambda");
    }

    #[test]
    fn graded_lex_order() {
        let mut ms = vec![
            Monomial::new(0, 2),
            Monomial::new(1, 0),
            Monomial::new(1, 1),
            Monomial::new(0, 0),
            Monomial::new(2, 0),
        ];
        ms.sort();
        assert_eq!(
            ms,
            vec![
                Monomial::new(0, 0),
                Monomial::new(1, 0),
                Monomial::new(0, 2),
                Monomial::new(1, 1),
                Monomial::new(2, 0),
            ]
        );
    }

    #[test]
    fn compose_substitutes_polynomials() {
        // x^2 with x -> x + λ
        let p = x().pow(2);
        let got = p.compose(Var::X, &(&x() + &lam()));
        assert_eq!(got, (&x() + &lam()).pow(2));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((0u32..4, 0u32..4, -6i64..7, 1i64..4), 0..6).prop_map(|ts| {
            Poly::from_terms(
                ts.into_iter()
                    .map(|(l, e, n, d)| (Monomial::new(l, e), ratio(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn leibniz_rule(p in arb_poly(), q in arb_poly()) {
            let lhs = (&p * &q).derivative_x();
            let rhs = &(&p.derivative_x() * &q) + &(&p * &q.derivative_x());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn substitute_is_a_ring_map(p in arb_poly(), q in arb_poly(), n in -4i64..5, d in 1i64..4, on_x in any::<bool>()) {
            let var = if on_x { Var::X } else { Var::Lambda };
            let v = ratio(n, d);
            prop_assert_eq!((&p + &q).substitute(var, &v), &p.substitute(var, &v) + &q.substitute(var, &v));
            prop_assert_eq!((&p * &q).substitute(var, &v), &p.substitute(var, &v) * &q.substitute(var, &v));
        }

        #[test]
        fn no_zero_coefficients(p in arb_poly(), q in arb_poly()) {
            let s = &(&p * &q) - &(&q * &p);
            prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
            prop_assert!(s.is_zero());
        }
    }
}
