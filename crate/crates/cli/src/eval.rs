//! Bottom-up evaluation of parsed expressions into normal forms.

use weylstir_core::weyl::deg_falling_by;
use weylstir_core::{NormalForm, Poly, Rational};

use crate::parse::Expr;

pub fn evaluate(e: &Expr) -> NormalForm {
    match e {
        Expr::Annihilate => NormalForm::annihilation(),
        Expr::Create => NormalForm::creation(),
        Expr::Number => NormalForm::creation().mul(&NormalForm::annihilation()),
        Expr::Lambda => NormalForm::scalar(Poly::lambda()),
        Expr::Int(n) => NormalForm::scalar(Poly::constant(Rational::from_integer(n.clone()))),
        Expr::Rational(q) => NormalForm::scalar(Poly::constant(q.clone())),
        Expr::Sum(parts) => parts.iter().map(evaluate).sum(),
        Expr::Product(parts) => parts
            .iter()
            .fold(NormalForm::identity(), |acc, p| acc.mul(&evaluate(p))),
        Expr::Power(base, e) => evaluate(base).pow(*e),
        Expr::DegFall(base, n) => deg_falling_by(&evaluate(base), &Poly::zero(), *n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use weylstir_core::stirling::{value, Family, Kind};
    use weylstir_core::weyl::{deg_falling_of, number_op};

    fn eval(s: &str) -> NormalForm {
        evaluate(&parse(s).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(eval("N (N - lambda)"), deg_falling_of(&number_op(), 0, 2));
        assert_eq!(eval("a ad"), &number_op() + &NormalForm::identity());
        let s2 = Family::plain(Kind::S2);
        let expected: NormalForm = (0..=3)
            .map(|l| NormalForm::monomial(l, l, value(s2, 3, i64::from(l))))
            .sum();
        assert_eq!(eval("ff(N,3)"), expected);
    }

    #[test]
    fn commutator_and_scalars() {
        assert_eq!(eval("a ad - ad a"), NormalForm::identity());
        assert_eq!(eval("1/2 * 2 a"), NormalForm::annihilation());
        assert_eq!(eval("a^0"), NormalForm::identity());
        assert_eq!(eval("ff(N, 0)"), NormalForm::identity());
        assert_eq!(eval("-lambda + lambda"), NormalForm::zero());
        assert_eq!(eval("(ad a)^2"), eval("N N"));
    }
}
