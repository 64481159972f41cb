//! Normal-ordered arithmetic in the single-mode boson (Weyl) algebra.
//!
//! Elements are finite sums `Σ c_ij (a⁺)^i a^j` with coefficients polynomial
//! in `λ`. The only relation is `a a⁺ = a⁺ a + 1`, and a product of two
//! normal-ordered monomials is reordered with the closed form
//!
//! ```text
//! a^j (a⁺)^p = Σ_k C(j,k) C(p,k) k! (a⁺)^(p-k) a^(j-k)
//! ```
//!
//! [`reduce`] is the slow letter-by-letter rewriting of a word and serves as
//! a cross-check for [`NormalForm::mul`].

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::poly::{Poly, Rational, Var};

/// A letter of an operator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// annihilation `a`
    A,
    /// creation `a⁺`
    C,
}

/// A product of letters, read left to right as an operator product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OperatorWord(pub Vec<Letter>);

impl OperatorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        OperatorWord(letters)
    }

    /// `(a⁺)^i a^j`
    pub fn normal(i: u32, j: u32) -> Self {
        let mut v = Vec::with_capacity((i + j) as usize);
        v.extend(core::iter::repeat_n(Letter::C, i as usize));
        v.extend(core::iter::repeat_n(Letter::A, j as usize));
        OperatorWord(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn annihilations(&self) -> u32 {
        self.0.iter().filter(|l| **l == Letter::A).count() as u32
    }

    pub fn creations(&self) -> u32 {
        self.0.iter().filter(|l| **l == Letter::C).count() as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadLetter(pub char);

impl fmt::Display for BadLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid letter {:?} in operator word (expected A or C)",
            self.0
        )
    }
}

/// Parses words such as `ACC`; whitespace is ignored.
impl FromStr for OperatorWord {
    type Err = BadLetter;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'A' | 'a' => Ok(Letter::A),
                'C' | 'c' => Ok(Letter::C),
                other => Err(BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(OperatorWord)
    }
}

/// Canonical element of the Weyl algebra: `(i, j) -> coefficient of (a⁺)^i a^j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    terms: BTreeMap<(u32, u32), Poly>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn identity() -> Self {
        NormalForm::scalar(Poly::one())
    }

    pub fn scalar(c: Poly) -> Self {
        NormalForm::monomial(0, 0, c)
    }

    /// `c (a⁺)^i a^j`
    pub fn monomial(i: u32, j: u32, c: Poly) -> Self {
        debug_assert!(
            c.is_constant_in(Var::X),
            "Weyl coefficients are polynomials in λ only"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        NormalForm { terms }
    }

    pub fn annihilation() -> Self {
        NormalForm::monomial(0, 1, Poly::one())
    }

    pub fn creation() -> Self {
        NormalForm::monomial(1, 0, Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Read-only view of the canonical term map.
    pub fn coefficients(&self) -> &BTreeMap<(u32, u32), Poly> {
        &self.terms
    }

    pub fn coefficient(&self, i: u32, j: u32) -> &Poly {
        self.terms.get(&(i, j)).unwrap_or(&crate::poly::ZERO)
    }

    /// Largest annihilation power present.
    pub fn max_annihilation(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    fn add_term(&mut self, key: (u32, u32), c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Poly) -> NormalForm {
        let mut out = NormalForm::zero();
        for (&key, v) in &self.terms {
            out.add_term(key, v * c);
        }
        out
    }

    pub fn mul(&self, rhs: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        for (&(i, j), u) in &self.terms {
            for (&(p, q), v) in &rhs.terms {
                let uv = u * v;
                for k in 0..=j.min(p) {
                    let weight = reorder_weight(j, p, k);
                    out.add_term(
                        (i + p - k, j + q - k),
                        uv.scale(&Rational::from_integer(weight)),
                    );
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> NormalForm {
        (0..e).fold(NormalForm::identity(), |acc, _| acc.mul(self))
    }

    /// `[self, rhs] = self·rhs - rhs·self`
    pub fn commutator(&self, rhs: &NormalForm) -> NormalForm {
        &self.mul(rhs) - &rhs.mul(self)
    }

    /// Evaluates `λ` at a rational value in every coefficient.
    pub fn substitute_lambda(&self, value: &Rational) -> NormalForm {
        let mut out = NormalForm::zero();
        for (&key, c) in &self.terms {
            out.add_term(key, c.substitute(Var::Lambda, value));
        }
        out
    }

    /// Terms in display order: by `(i + j, i)` descending.
    pub fn display_terms(&self) -> Vec<(u32, u32, &Poly)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&(i, j), c)| (i, j, c)).collect();
        v.sort_by_key(|t| core::cmp::Reverse((t.0 + t.1, t.0)));
        v
    }
}

/// `C(j,k) C(p,k) k!`
fn reorder_weight(j: u32, p: u32, k: u32) -> BigInt {
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    binomial(BigInt::from(j), BigInt::from(k)) * binomial(BigInt::from(p), BigInt::from(k)) * fact
}

/// Text form `P(λ) ad^i a^j + ...`, terms sorted by `(i + j, i)` descending;
/// compound coefficients are parenthesized.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (i, j, c)) in self.display_terms().into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if c.is_compound() {
                write!(f, "({c}) ad^{i} a^{j}")?;
            } else {
                write!(f, "{c} ad^{i} a^{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({self})")
    }
}

impl Add<&NormalForm> for &NormalForm {
    type Output = NormalForm;
    fn add(self, rhs: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, c.clone());
        }
        out
    }
}

impl Sub<&NormalForm> for &NormalForm {
    type Output = NormalForm;
    fn sub(self, rhs: &NormalForm) -> NormalForm {
        self + &(-rhs)
    }
}

impl Neg for &NormalForm {
    type Output = NormalForm;
    fn neg(self) -> NormalForm {
        NormalForm {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul<&NormalForm> for &NormalForm {
    type Output = NormalForm;
    fn mul(self, rhs: &NormalForm) -> NormalForm {
        NormalForm::mul(self, rhs)
    }
}

impl core::iter::Sum for NormalForm {
    fn sum<I: Iterator<Item = NormalForm>>(iter: I) -> NormalForm {
        iter.fold(NormalForm::zero(), |acc, x| &acc + &x)
    }
}

/// `n̂ = a⁺a`
pub fn number_op() -> NormalForm {
    NormalForm::monomial(1, 1, Poly::one())
}

/// `(base + shift)_{n,λ} = Π_{i<n} (base + shift - iλ)`, multiplied left to right.
pub fn deg_falling_of(base: &NormalForm, shift: i64, n: u32) -> NormalForm {
    deg_falling_by(base, &Poly::int(shift), n)
}

/// Same as [`deg_falling_of`] with a polynomial shift.
pub fn deg_falling_by(base: &NormalForm, shift: &Poly, n: u32) -> NormalForm {
    let mut acc = NormalForm::identity();
    for i in 0..n {
        let c = shift - &(&Poly::int(i64::from(i)) * &Poly::lambda());
        let factor = base + &NormalForm::scalar(c);
        acc = acc.mul(&factor);
    }
    acc
}

pub fn normal_order_coefficients(nf: &NormalForm) -> &BTreeMap<(u32, u32), Poly> {
    nf.coefficients()
}

/// Normal-orders a word by repeatedly rewriting its leftmost `a a⁺` into
/// `a⁺ a + 1`. Identical intermediate words are merged as they appear.
pub fn reduce(word: &OperatorWord) -> NormalForm {
    let mut pending: BTreeMap<Vec<Letter>, BigInt> = BTreeMap::new();
    pending.insert(word.0.clone(), BigInt::one());
    let mut out = NormalForm::zero();
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        match w.windows(2).position(|p| p == [Letter::A, Letter::C]) {
            None => {
                let i = w.iter().take_while(|l| **l == Letter::C).count() as u32;
                let j = w.len() as u32 - i;
                out.add_term((i, j), Poly::constant(Rational::from_integer(c)));
            }
            Some(pos) => {
                let mut swapped = w.clone();
                swapped.swap(pos, pos + 1);
                let mut dropped = w;
                dropped.drain(pos..pos + 2);
                *pending.entry(swapped).or_default() += &c;
                *pending.entry(dropped).or_default() += c;
            }
        }
    }
    out
}

/// Folds a word letter by letter with [`NormalForm::mul`].
pub fn word_product(word: &OperatorWord) -> NormalForm {
    word.0.iter().fold(NormalForm::identity(), |acc, l| {
        acc.mul(&match l {
            Letter::A => NormalForm::annihilation(),
            Letter::C => NormalForm::creation(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn c(n: i64) -> Poly {
        Poly::int(n)
    }
    fn m(i: u32, j: u32, coef: Poly) -> NormalForm {
        NormalForm::monomial(i, j, coef)
    }

    #[test]
    fn reduce_examples() {
        let ac: OperatorWord = "AC".parse().unwrap();
        assert_eq!(reduce(&ac), &m(1, 1, c(1)) + &m(0, 0, c(1)));
        let acc: OperatorWord = "ACC".parse().unwrap();
        assert_eq!(reduce(&acc), &m(2, 1, c(1)) + &m(1, 0, c(2)));
        assert_eq!(reduce(&OperatorWord::default()), NormalForm::identity());
    }

    #[test]
    fn mul_examples() {
        let a = NormalForm::annihilation();
        let ad = NormalForm::creation();
        assert_eq!(a.mul(&ad), &m(1, 1, c(1)) + &m(0, 0, c(1)));
        let lhs = a.pow(2).mul(&ad.pow(2));
        let expected = &(&m(2, 2, c(1)) + &m(1, 1, c(4))) + &m(0, 0, c(2));
        assert_eq!(lhs, expected);
        assert_eq!(lhs, reduce(&"AACC".parse().unwrap()));
        assert_eq!(lhs.mul(&NormalForm::identity()), lhs);
    }

    #[test]
    fn number_operator_examples() {
        let n = number_op();
        assert_eq!(n, m(1, 1, c(1)));
        assert_eq!(n.mul(&n), &m(2, 2, c(1)) + &m(1, 1, c(1)));
        let a = NormalForm::annihilation();
        assert_eq!(a.commutator(&n), a);
        assert_eq!(
            n.commutator(&NormalForm::creation()),
            NormalForm::creation()
        );
    }

    #[test]
    fn deg_falling_examples() {
        let n = number_op();
        let two = deg_falling_of(&n, 0, 2);
        assert_eq!(two, &m(2, 2, c(1)) + &m(1, 1, &c(1) - &Poly::lambda()));
        assert_eq!(deg_falling_of(&n, 0, 1), n);
        assert_eq!(deg_falling_of(&n, 1, 1), &n + &NormalForm::identity());
        assert_eq!(deg_falling_of(&n, 3, 0), NormalForm::identity());

        let coeffs = normal_order_coefficients(&two);
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[&(2, 2)], c(1));
        assert_eq!(coeffs[&(1, 1)], &c(1) - &Poly::lambda());
        assert_eq!(
            normal_order_coefficients(&NormalForm::identity())[&(0, 0)],
            c(1)
        );
        let shifted = deg_falling_of(&n, 1, 1);
        assert_eq!(normal_order_coefficients(&shifted)[&(0, 0)], c(1));
        assert_eq!(normal_order_coefficients(&shifted)[&(1, 1)], c(1));
    }

    #[test]
    fn display_form() {
        let two = deg_falling_of(&number_op(), 0, 2);
        assert_eq!(two.to_string(), "1 ad^2 a^2 + (1 - lambda) ad^1 a^1");
        let x = &(&m(0, 3, c(-2)) + &m(1, 0, Poly::lambda()))
            + &m(0, 0, Poly::constant(crate::poly::ratio(1, 2)));
        assert_eq!(
            x.to_string(),
            "-2 ad^0 a^3 + lambda ad^1 a^0 + 1/2 ad^0 a^0"
        );
        assert_eq!(NormalForm::zero().to_string(), "0");
    }

    #[test]
    fn substitute_lambda_drops_zeros() {
        let two = deg_falling_of(&number_op(), 0, 2);
        assert_eq!(two.substitute_lambda(&rational(1)), m(2, 2, c(1)));
    }

    #[test]
    fn word_parse_rejects_junk() {
        assert_eq!("AXC".parse::<OperatorWord>(), Err(BadLetter('X')));
    }

    fn arb_word(max: usize) -> impl Strategy<Value = OperatorWord> {
        prop::collection::vec(prop_oneof![Just(Letter::A), Just(Letter::C)], 0..=max)
            .prop_map(OperatorWord)
    }

    fn arb_nf() -> impl Strategy<Value = NormalForm> {
        prop::collection::vec((0u32..4, 0u32..4, -3i64..4, 0u32..3), 0..=5).prop_map(|ts| {
            ts.into_iter()
                .map(|(i, j, n, l)| m(i, j, &c(n) * &Poly::lambda().pow(l)))
                .sum()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rewriting_agrees_with_closed_form(w in arb_word(14)) {
            prop_assert_eq!(reduce(&w), word_product(&w));
        }

        #[test]
        fn mul_is_associative(u in arb_nf(), v in arb_nf(), w in arb_nf()) {
            prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        }

        #[test]
        fn mul_distributes(u in arb_nf(), v in arb_nf(), w in arb_nf()) {
            prop_assert_eq!(u.mul(&(&v + &w)), &u.mul(&v) + &u.mul(&w));
        }

        #[test]
        fn grading_is_preserved(w in arb_word(12)) {
            let grade = i64::from(w.creations()) - i64::from(w.annihilations());
            for &(i, j) in reduce(&w).coefficients().keys() {
                prop_assert_eq!(i64::from(i) - i64::from(j), grade);
            }
        }

        #[test]
        fn no_zero_coefficients(u in arb_nf(), v in arb_nf()) {
            let d = u.commutator(&v);
            prop_assert!(d.coefficients().values().all(|c| !c.is_zero()));
        }
    }
}
