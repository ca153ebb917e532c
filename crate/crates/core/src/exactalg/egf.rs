use std::fmt;

use serde::Serialize;

use super::Rational;
use crate::error::{Error, Result};

/// A power series `Σ c_n xⁿ` truncated after degree `order`.
///
/// When the series encodes an S-module, `c_n = dim(n) / n!`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Egf {
    coeffs: Vec<Rational>,
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * Rational::from_int(k))
}

impl Egf {
    pub fn zero(order: usize) -> Self {
        Egf {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut f = Self::zero(order);
        f.coeffs[0] = Rational::one();
        f
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut f = Self::zero(order);
        if order >= 1 {
            f.coeffs[1] = Rational::one();
        }
        f
    }

    /// Builds a series from coefficients, truncating or zero-padding to
    /// `order`.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut f = Self::zero(order);
        for (slot, c) in f.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        f
    }

    /// The EGF of an S-module from its dimensions `dim(0), dim(1), …`.
    pub fn from_dims(order: usize, dims: impl Fn(usize) -> Rational) -> Self {
        Egf {
            coeffs: (0..=order).map(|n| dims(n) / factorial(n)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// `n! [xⁿ] f`, the dimension sequence when the series is an EGF.
    pub fn dims(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * &factorial(n))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn check_order(&self, other: &Egf) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    fn check_no_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    pub fn add(&self, other: &Egf) -> Result<Egf> {
        self.check_order(other)?;
        Ok(Egf {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Egf) -> Result<Egf> {
        self.check_order(other)?;
        Ok(Egf {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Egf {
        Egf {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Egf) -> Result<Egf> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Egf::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += &(a * b);
            }
        }
        Ok(out)
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Egf> {
        self.check_no_constant()?;
        // e = exp(f) solves e' = f' e: n e_n = Σ_{k=1..n} k f_k e_{n-k}.
        let n = self.order();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &(Rational::from_int(k as i64) * &self.coeffs[k] * &e[m - k]);
                }
            }
            e[m] = acc / Rational::from_int(m as i64);
        }
        Ok(Egf { coeffs: e })
    }

    /// `log(1 + g)` for `g` with zero constant term.
    pub fn log1p(&self) -> Result<Egf> {
        self.check_no_constant()?;
        // Σ_{k≥1} (-1)^{k+1} g^k / k
        let n = self.order();
        let mut out = Egf::zero(n);
        let mut power = self.clone();
        for k in 1..=n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rational::new(sign, k as i64)))?;
            power = power.mul(self)?;
        }
        Ok(out)
    }

    /// `-log(1 - f)` for `f` with zero constant term.
    pub fn log1p_neg(&self) -> Result<Egf> {
        self.check_no_constant()?;
        let n = self.order();
        let mut out = Egf::zero(n);
        let mut power = self.clone();
        for k in 1..=n {
            out = out.add(&power.scale(&Rational::new(1, k as i64)))?;
            power = power.mul(self)?;
        }
        Ok(out)
    }

    /// `self ∘ g`, i.e. `Σ c_k g^k`, for `g` with zero constant term.
    pub fn compose(&self, g: &Egf) -> Result<Egf> {
        self.check_order(g)?;
        g.check_no_constant()?;
        let n = self.order();
        let mut out = Egf::zero(n);
        out.coeffs[0] = self.coeffs[0].clone();
        let mut power = g.clone();
        for k in 1..=n {
            if !self.coeffs[k].is_zero() {
                out = out.add(&power.scale(&self.coeffs[k]))?;
            }
            power = power.mul(g)?;
        }
        Ok(out)
    }

    /// The unique `f` with zero constant term solving `f = x + c ∘ f` to
    /// this order. `c` must have valuation at least 2, which makes each
    /// iteration fix one more coefficient.
    pub fn fixed_point_free_operad(c: &Egf, order: usize) -> Result<Egf> {
        if !c.coeffs[0].is_zero() || c.order() >= 1 && !c.coeffs[1].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let c = Egf::from_coeffs(order, c.coeffs.iter().cloned());
        let x = Egf::x(order);
        let mut f = x.clone();
        for _ in 0..=order {
            let next = x.add(&c.compose(&f)?)?;
            if next == f {
                return Ok(f);
            }
            f = next;
        }
        Err(Error::NoConvergence(order + 1))
    }
}

impl fmt::Debug for Egf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| format!("{c}*x^{n}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 + O(x^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(x^{})", terms.join(" + "), self.order() + 1)
        }
    }
}

/// EGF of `PreLie`: `dim(n) = n^{n-1}`.
pub fn prelie_series(order: usize) -> Egf {
    Egf::from_dims(order, |n| {
        if n == 0 {
            Rational::zero()
        } else {
            Rational::from_int(n as i64).pow(n as u32 - 1)
        }
    })
}

/// EGF of the cyclic Lie module: `dim(n) = (n-2)!` for `n ≥ 2`.
pub fn cyclie_series(order: usize) -> Egf {
    Egf::from_dims(order, |n| if n < 2 { Rational::zero() } else { factorial(n - 2) })
}

/// EGF of `Lie`, equal to `-log(1 - x)`.
pub fn lie_series(order: usize) -> Egf {
    Egf::from_dims(order, |n| if n == 0 { Rational::zero() } else { factorial(n - 1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(Egf::zero(5).exp().unwrap(), Egf::one(5));
    }

    #[test]
    fn constant_term_rejected() {
        assert_eq!(Egf::one(3).exp(), Err(Error::NonzeroConstantTerm));
        assert_eq!(Egf::one(3).log1p_neg(), Err(Error::NonzeroConstantTerm));
        assert_eq!(Egf::x(3).compose(&Egf::one(3)), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn indec_to_order_three() {
        // Hand expansion: f = x + x^2 + 3/2 x^3,
        // exp(-f) = 1 - x - x^2 - 3/2 x^3 + (x^2 + 2x^3)/2 - x^3/6 + O(x^4)
        //         = 1 - x - x^2/2 - 2/3 x^3.
        let f = prelie_series(3);
        assert_eq!(f.coeffs(), &[r(0, 1), r(1, 1), r(1, 1), r(3, 2)]);
        let indec = Egf::one(3).sub(&f.scale(&r(-1, 1)).exp().unwrap()).unwrap();
        assert_eq!(indec.coeffs(), &[r(0, 1), r(1, 1), r(1, 2), r(2, 3)]);
        let dims: Vec<Rational> = indec.dims();
        assert_eq!(&dims[1..], &[r(1, 1), r(1, 1), r(4, 1)]);
    }

    #[test]
    fn compose_with_identity() {
        let l = lie_series(8);
        assert_eq!(l.compose(&Egf::x(8)).unwrap(), l);
        assert_eq!(l, Egf::x(8).log1p_neg().unwrap());
    }

    #[test]
    fn fixed_point_trivial_cases() {
        assert_eq!(Egf::fixed_point_free_operad(&Egf::zero(6), 6).unwrap(), Egf::x(6));
        let c = Egf::from_coeffs(2, [r(0, 1), r(0, 1), r(1, 2)]);
        let f = Egf::fixed_point_free_operad(&c, 2).unwrap();
        assert_eq!(f.coeffs(), &[r(0, 1), r(1, 1), r(1, 2)]);
        assert!(Egf::fixed_point_free_operad(&Egf::x(3), 3).is_err());
    }

    #[test]
    fn free_operad_on_cyclie() {
        let f = Egf::fixed_point_free_operad(&cyclie_series(6), 6).unwrap();
        let dims: Vec<i64> = f.dims().iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(&dims[1..], &[1, 1, 4, 27, 256, 3125]);
        // oracle: x = (1 - f)(-log(1 - f)) coefficientwise
        let rhs = Egf::one(6).sub(&f).unwrap().mul(&f.log1p_neg().unwrap()).unwrap();
        assert_eq!(rhs, Egf::x(6));
    }

    #[test]
    fn composition_is_associative() {
        let a = Egf::from_coeffs(7, [r(0, 1), r(1, 1), r(2, 3), r(-1, 5), r(0, 1), r(7, 2)]);
        let b = Egf::from_coeffs(7, [r(0, 1), r(-1, 2), r(1, 1), r(0, 1), r(3, 1)]);
        let c = Egf::from_coeffs(7, [r(0, 1), r(2, 1), r(0, 1), r(1, 4)]);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn exp_log_round_trip() {
        let g = Egf::from_coeffs(9, [r(0, 1), r(3, 1), r(-1, 2), r(5, 7), r(0, 1), r(1, 9)]);
        let round = g.log1p().unwrap().exp().unwrap();
        assert_eq!(round, Egf::one(9).add(&g).unwrap());
    }
}
