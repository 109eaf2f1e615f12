//! Univariate polynomials in time with exact calculus.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{from_usize, Real, Scalar};

/// `c0 + c1 t + c2 t^2 + ...`, kept without trailing zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// Evaluates at a floating-point time, converting coefficients on the fly.
    pub fn eval_real<F: Real>(&self, t: F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * t + c.to_real::<F>())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * from_usize::<T>(k))
                .collect(),
        )
    }

    /// Antiderivative vanishing at `t = 0`, i.e. `t -> ∫_0^t p`.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() / from_usize::<T>(k + 1)),
        );
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_real<F: Real>(&self) -> Polynomial<F> {
        self.map_scalar(|c| c.to_real::<F>())
    }
}

impl<T: Scalar> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> From<T> for Polynomial<T> {
    fn from(c: T) -> Self {
        Self::constant(c)
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;
    use proptest::prelude::*;

    fn p(cs: &[(i64, i64)]) -> Polynomial<Rational> {
        Polynomial::new(cs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn trims_and_evaluates() {
        let q = p(&[(1, 1), (0, 1), (3, 1), (0, 1)]);
        assert_eq!(q.degree(), Some(2));
        assert_eq!(q.eval(&ratio(2, 1)), ratio(13, 1));
        assert!(Polynomial::<Rational>::new(vec![ratio(0, 1)]).is_zero());
    }

    #[test]
    fn calculus() {
        // 2t -> t^2, derivative back to 2t
        let v = p(&[(0, 1), (2, 1)]);
        assert_eq!(v.integral(), p(&[(0, 1), (0, 1), (1, 1)]));
        assert_eq!(v.integral().derivative(), v);
        let sq = &v * &v;
        assert_eq!(sq.integral().eval(&ratio(1, 1)), ratio(4, 3));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(1, 2), (0, 1), (-3, 1)]).to_string(), "-3*t^2 + 1/2");
        assert_eq!(p(&[(0, 1), (1, 1)]).to_string(), "t");
        assert_eq!(Polynomial::<Rational>::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial<Rational>> {
        prop::collection::vec((-20i64..20, 1i64..7), 0..5)
            .prop_map(|cs| p(&cs))
    }

    proptest! {
        #[test]
        fn derivative_of_integral_is_identity(a in arb_poly()) {
            prop_assert_eq!(a.integral().derivative(), a);
        }

        #[test]
        fn product_rule(a in arb_poly(), b in arb_poly()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), t in (-9i64..9, 1i64..5)) {
            let t = ratio(t.0, t.1);
            prop_assert_eq!((&a * &b).eval(&t), a.eval(&t) * b.eval(&t));
            prop_assert_eq!((&a - &b).eval(&t), a.eval(&t) - b.eval(&t));
        }
    }
}
