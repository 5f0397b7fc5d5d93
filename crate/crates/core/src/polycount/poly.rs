use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Shorthand for an exact rational from a numerator and denominator.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `p/q` with `q > 0` in lowest terms, `p` for integers and `0` for zero.
pub fn fmt_rational(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let r: BigRational = s.parse().ok()?;
    // reject things like "2/4" that are not in lowest terms or have a bad sign
    (fmt_rational(&r) == s).then_some(r)
}

/// Polynomial in the size parameter `N` with exact rational coefficients,
/// stored in the monomial basis with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolynomialQ {
    coeffs: Vec<BigRational>,
}

impl PolynomialQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `N`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `a N + b` with integer coefficients.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_coeffs(vec![qi(b), qi(a)])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Monomial coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_int(&self, n: i64) -> BigRational {
        self.eval(&qi(n))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `C(N, k) = N (N-1) ... (N-k+1) / k!`.
    pub fn binomial(k: usize) -> Self {
        let mut p = Self::one();
        for i in 0..k {
            p = &p * &Self::linear(1, -(i as i64));
        }
        let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    /// `Σ b_k C(N, k)`.
    pub fn from_binomial(coeffs: &[BigRational]) -> Self {
        let mut out = Self::zero();
        for (k, b) in coeffs.iter().enumerate() {
            if !b.is_zero() {
                out += Self::binomial(k).scale(b);
            }
        }
        out
    }

    /// Coefficients over `C(N, 0), C(N, 1), ...` (forward differences at 0).
    pub fn to_binomial(&self) -> Vec<BigRational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut row: Vec<BigRational> = (0..=deg as i64).map(|n| self.eval_int(n)).collect();
        let mut out = Vec::with_capacity(row.len());
        while !row.is_empty() {
            out.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// LaTeX rendering in the binomial basis, highest term first.
    pub fn latex(&self) -> String {
        let b = self.to_binomial();
        if b.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in b.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let basis = match k {
                0 => String::new(),
                1 => "N".to_string(),
                k => format!("{{N\\choose {k}}}"),
            };
            let coef = if a.is_integer() {
                if a.is_one() && k > 0 {
                    String::new()
                } else {
                    a.to_string()
                }
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            out.push_str(&coef);
            out.push_str(&basis);
        }
        out
    }
}

impl fmt::Display for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => f.write_str("N")?,
                1 => write!(f, "{a}*N")?,
                k if a.is_one() => write!(f, "N^{k}")?,
                k => write!(f, "{a}*N^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolynomialQ {
    type Output = PolynomialQ;
    fn add(self, rhs: &PolynomialQ) -> PolynomialQ {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        PolynomialQ::from_coeffs(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Add for PolynomialQ {
    type Output = PolynomialQ;
    fn add(self, rhs: PolynomialQ) -> PolynomialQ {
        &self + &rhs
    }
}

impl AddAssign for PolynomialQ {
    fn add_assign(&mut self, rhs: PolynomialQ) {
        *self = &*self + &rhs;
    }
}

impl Neg for &PolynomialQ {
    type Output = PolynomialQ;
    fn neg(self) -> PolynomialQ {
        PolynomialQ::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for PolynomialQ {
    type Output = PolynomialQ;
    fn neg(self) -> PolynomialQ {
        -&self
    }
}

impl Sub for &PolynomialQ {
    type Output = PolynomialQ;
    fn sub(self, rhs: &PolynomialQ) -> PolynomialQ {
        self + &(-rhs)
    }
}

impl Sub for PolynomialQ {
    type Output = PolynomialQ;
    fn sub(self, rhs: PolynomialQ) -> PolynomialQ {
        &self - &rhs
    }
}

impl Mul for &PolynomialQ {
    type Output = PolynomialQ;
    fn mul(self, rhs: &PolynomialQ) -> PolynomialQ {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialQ::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialQ::from_coeffs(out)
    }
}

impl Mul for PolynomialQ {
    type Output = PolynomialQ;
    fn mul(self, rhs: PolynomialQ) -> PolynomialQ {
        &self * &rhs
    }
}

impl std::iter::Sum for PolynomialQ {
    fn sum<I: Iterator<Item = PolynomialQ>>(iter: I) -> Self {
        iter.fold(PolynomialQ::zero(), |a, b| a + b)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    monomial: Vec<String>,
    binomial: Vec<String>,
    latex: String,
}

impl Serialize for PolynomialQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            monomial: self.coeffs.iter().map(fmt_rational).collect(),
            binomial: self.to_binomial().iter().map(fmt_rational).collect(),
            latex: self.latex(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolynomialQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolyJson::deserialize(d)?;
        let parse = |v: &[String]| -> Result<Vec<BigRational>, D::Error> {
            v.iter()
                .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`"))))
                .collect()
        };
        let p = PolynomialQ::from_coeffs(parse(&raw.monomial)?);
        if p.to_binomial() != parse(&raw.binomial)? {
            return Err(D::Error::custom("monomial and binomial views disagree"));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InterpolationError {
    #[error("need {needed} distinct sample points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("sample at N = {n} disagrees with the degree-{degree} interpolant")]
    Inconsistent { n: i64, degree: usize },
}

/// Interpolates through the first `degree_bound + 1` distinct sample points
/// and checks every remaining point against the result.
pub fn poly_from_samples(
    points: &[(i64, BigRational)],
    degree_bound: usize,
) -> Result<PolynomialQ, InterpolationError> {
    let mut distinct: Vec<(i64, BigRational)> = Vec::new();
    for (n, v) in points {
        match distinct.iter().find(|(m, _)| m == n) {
            Some((_, w)) if w != v => {
                return Err(InterpolationError::Inconsistent { n: *n, degree: degree_bound })
            }
            Some(_) => {}
            None => distinct.push((*n, v.clone())),
        }
    }
    let needed = degree_bound + 1;
    if distinct.len() < needed {
        return Err(InterpolationError::TooFewPoints { needed, got: distinct.len() });
    }
    let (fit, extra) = distinct.split_at(needed);

    // Newton divided differences
    let xs: Vec<BigRational> = fit.iter().map(|(n, _)| qi(*n)).collect();
    let mut dd: Vec<BigRational> = fit.iter().map(|(_, v)| v.clone()).collect();
    for level in 1..needed {
        for i in (level..needed).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = PolynomialQ::zero();
    let mut basis = PolynomialQ::one();
    for (i, c) in dd.iter().enumerate() {
        p += basis.scale(c);
        basis = &basis * &PolynomialQ::from_coeffs(vec![-xs[i].clone(), BigRational::one()]);
    }
    for (n, v) in extra {
        if p.eval_int(*n) != *v {
            return Err(InterpolationError::Inconsistent { n: *n, degree: degree_bound });
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qv(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(a, b)| q(a, b)).collect()
    }

    #[test]
    fn binomial_basis_views() {
        let n2 = PolynomialQ::from_coeffs(qv(&[(0, 1), (0, 1), (1, 1)]));
        assert_eq!(n2.to_binomial(), qv(&[(0, 1), (1, 1), (2, 1)]));
        assert!(PolynomialQ::zero().to_binomial().is_empty());
        let sample = PolynomialQ::from_binomial(&qv(&[(0, 1), (1, 4), (1, 1), (1, 1)]));
        let direct = &(&PolynomialQ::binomial(3) + &PolynomialQ::binomial(2))
            + &PolynomialQ::var().scale(&q(1, 4));
        assert_eq!(sample, direct);
        assert_eq!(sample.to_binomial(), qv(&[(0, 1), (1, 4), (1, 1), (1, 1)]));
    }

    #[test]
    fn binomial_values() {
        let c3 = PolynomialQ::binomial(3);
        for n in 0..8i64 {
            let expect = (0..3).map(|i| n - i).product::<i64>() / 6;
            assert_eq!(c3.eval_int(n), qi(expect));
        }
    }

    #[test]
    fn interpolation_examples() {
        let pts = vec![(1, qi(1)), (2, qi(4)), (3, qi(9))];
        assert_eq!(
            poly_from_samples(&pts, 2).unwrap(),
            PolynomialQ::from_coeffs(qv(&[(0, 1), (0, 1), (1, 1)]))
        );
        let bad = vec![(1, qi(3)), (2, qi(5))];
        assert!(matches!(
            poly_from_samples(&bad, 0),
            Err(InterpolationError::Inconsistent { n: 2, .. })
        ));
        let gl = vec![(1, q(1, 2)), (2, qi(2)), (3, q(9, 2))];
        assert_eq!(
            poly_from_samples(&gl, 2).unwrap(),
            PolynomialQ::from_coeffs(qv(&[(0, 1), (0, 1), (1, 2)]))
        );
        assert!(matches!(
            poly_from_samples(&pts[..2], 2),
            Err(InterpolationError::TooFewPoints { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn json_shape() {
        let p = PolynomialQ::from_coeffs(qv(&[(0, 1), (0, 1), (1, 2)]));
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["monomial"], serde_json::json!(["0", "0", "1/2"]));
        assert_eq!(v["binomial"], serde_json::json!(["0", "1/2", "1"]));
        let back: PolynomialQ = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_value(PolynomialQ::zero()).unwrap()["monomial"], serde_json::json!([]));
    }

    #[test]
    fn latex_matches_binomial_style() {
        let p = PolynomialQ::from_binomial(&qv(&[(0, 1), (11, 8), (-7, 1), (-4, 1)]));
        assert_eq!(p.latex(), "-4{N\\choose 3} - 7{N\\choose 2} + \\frac{11}{8}N");
        assert_eq!(PolynomialQ::zero().latex(), "0");
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(fmt_rational(&q(-6, 4)), "-3/2");
        assert_eq!(fmt_rational(&q(0, 5)), "0");
        assert_eq!(fmt_rational(&q(8, 2)), "4");
        assert!(parse_rational("2/4").is_none());
        assert_eq!(parse_rational("-3/2"), Some(q(-3, 2)));
    }

    proptest! {
        #[test]
        fn interpolation_recovers_random_polynomials(
            coeffs in prop::collection::vec((-50i64..50, 1i64..9), 0..9),
        ) {
            let p = PolynomialQ::from_coeffs(coeffs.iter().map(|&(a, b)| q(a, b)).collect());
            let pts: Vec<_> = (0..10).map(|n| (n - 3, p.eval_int(n - 3))).collect();
            prop_assert_eq!(poly_from_samples(&pts, 8).unwrap(), p.clone());
            prop_assert_eq!(PolynomialQ::from_binomial(&p.to_binomial()), p);
        }
    }
}
