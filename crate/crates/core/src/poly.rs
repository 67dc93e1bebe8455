//! Dense polynomials with exact integer coefficients.
//!
//! Coefficients are stored highest degree first, so `coeffs()[k]` is the
//! coefficient `c_k` of `x^(n-k)`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from `c_0..c_n` (highest degree first).
    /// Leading zeros are dropped; the zero polynomial is rejected.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let coeffs = trim(coeffs);
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("zero polynomial".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `c_k`, the coefficient of `x^(n-k)`.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_one()
    }

    /// Multiplicity of the root `0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^z` where `z` is the multiplicity of the root `0`.
    pub fn strip_zero_roots(&self) -> (usize, IntPolynomial) {
        let z = self.zero_root_multiplicity();
        let coeffs = self.coeffs[..self.coeffs.len() - z].to_vec();
        (z, IntPolynomial { coeffs })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(big_to_f64).collect()
    }

    /// Horner evaluation in double-precision complex arithmetic.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        horner(&self.to_f64(), x)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| big_to_f64(c).abs()).fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        IntPolynomial { coeffs: mul(&self.coeffs, &other.coeffs) }
    }

    pub fn derivative(&self) -> Option<IntPolynomial> {
        let d = derivative(&self.coeffs);
        (!d.is_empty()).then_some(IntPolynomial { coeffs: d })
    }

    /// Primitive greatest common divisor, normalised to a positive leading
    /// coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        IntPolynomial { coeffs: gcd(&self.coeffs, &other.coeffs) }
    }

    /// Exact division by a monic divisor; `None` if the remainder is
    /// nonzero or `divisor` is not monic.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if !divisor.is_monic() || divisor.degree() > self.degree() {
            return None;
        }
        let (q, r) = div_rem_monic(&self.coeffs, &divisor.coeffs);
        r.is_empty().then_some(IntPolynomial { coeffs: q })
    }

    /// Square-free factorisation of a monic polynomial.
    ///
    /// Returns pairs `(f_i, i)` with every `f_i` monic and square-free,
    /// pairwise coprime, of positive degree, and `self = Π f_i^i`.
    pub fn square_free_factors(&self) -> Result<Vec<(IntPolynomial, usize)>> {
        if !self.is_monic() {
            return Err(Error::InvalidParameter("square-free split needs a monic polynomial".into()));
        }
        // s_i = square-free part of f_i, f_{i+1} = f_i / s_i; the factor of
        // exact multiplicity i is s_i / s_{i+1}.
        let mut parts = Vec::new();
        let mut f = self.clone();
        while f.degree() > 0 {
            let s = f.square_free_part();
            f = f.div_exact(&s).expect("square-free part divides");
            parts.push(s);
        }
        let mut out = Vec::new();
        for i in 0..parts.len() {
            let factor = match parts.get(i + 1) {
                Some(next) => parts[i].div_exact(next).expect("nested square-free parts"),
                None => parts[i].clone(),
            };
            if factor.degree() > 0 {
                out.push((factor, i + 1));
            }
        }
        Ok(out)
    }

    fn square_free_part(&self) -> IntPolynomial {
        match self.derivative() {
            None => self.clone(),
            Some(d) => {
                let g = self.gcd(&d);
                self.div_exact(&g).expect("gcd of a monic polynomial is monic")
            }
        }
    }

    /// Coefficients as decimal strings, the wire form of [`PolyJson`].
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.degree(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let coeffs = json
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| Error::InvalidParameter(format!("coefficient `{s}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != json.n + 1 {
            return Err(Error::InvalidParameter(format!(
                "degree {} needs {} coefficients, got {}",
                json.n,
                json.n + 1,
                coeffs.len()
            )));
        }
        let p = Self::new(coeffs)?;
        if p.degree() != json.n {
            return Err(Error::InvalidParameter("leading coefficient is zero".into()));
        }
        Ok(p)
    }
}

/// `{"n": int, "coeffs": ["c_0", ..., "c_n"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = n - k;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if !a.is_one() || power == 0 {
                write!(f, "{a}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                p => write!(f, "x^{p}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub(crate) fn horner(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn trim(mut c: Vec<BigInt>) -> Vec<BigInt> {
    let lead = c.iter().take_while(|x| x.is_zero()).count();
    c.drain(..lead);
    c
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn derivative(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len() - 1;
    trim(a[..n].iter().enumerate().map(|(k, c)| c * BigInt::from(n - k)).collect())
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = content(&a);
    if g.is_zero() {
        return a;
    }
    if a[0].is_negative() {
        g = -g;
    }
    a.into_iter().map(|c| c / &g).collect()
}

/// `lc(b)^k · a mod b` for some `k ≥ 0`, trimmed.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = &b[0];
    while !r.is_empty() && r.len() >= b.len() {
        let lr = r[0].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[j] -= &lr * y;
        }
        debug_assert!(r[0].is_zero());
        r = trim(r);
    }
    r
}

fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive(a.to_vec()), primitive(b.to_vec()))
    } else {
        (primitive(b.to_vec()), primitive(a.to_vec()))
    };
    while !y.is_empty() {
        let r = primitive(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

fn div_rem_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut q = Vec::with_capacity(qlen);
    for i in 0..qlen {
        let c = r[i].clone();
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] -= &c * y;
            }
        }
        q.push(c);
    }
    (q, trim(r[qlen..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c).unwrap()
    }

    #[test]
    fn eval_examples() {
        let k3 = p(&[1, 0, 3, -2]);
        assert_eq!(k3.eval(Complex64::new(0.0, 0.0)), Complex64::new(-2.0, 0.0));
        assert_eq!(IntPolynomial::monomial(7).eval(Complex64::new(1.0, 0.0)), Complex64::new(1.0, 0.0));
        let c4 = p(&[1, 0, 4, 0, 4]);
        let v = c4.eval(Complex64::new(0.0, 2f64.sqrt()));
        assert!(v.norm() < 1e-12, "{v}");
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 3, -2]).to_string(), "x^3 + 3x - 2");
        assert_eq!(p(&[1, 0, 0]).to_string(), "x^2");
        assert_eq!(p(&[-1, 1]).to_string(), "-x + 1");
    }

    #[test]
    fn zero_roots() {
        let star = p(&[1, 0, 3, 0, 0]);
        let (z, rest) = star.strip_zero_roots();
        assert_eq!(z, 2);
        assert_eq!(rest, p(&[1, 0, 3]));
        assert_eq!(IntPolynomial::monomial(3).strip_zero_roots(), (3, p(&[1])));
    }

    #[test]
    fn square_free_of_even_cycle_polynomial() {
        // (x^2 + 2)^2
        let f = p(&[1, 0, 4, 0, 4]);
        assert_eq!(f.square_free_factors().unwrap(), vec![(p(&[1, 0, 2]), 2)]);
        // (x - 1)^3 (x + 2) x^2
        let g = p(&[1, -1]).mul(&p(&[1, -1])).mul(&p(&[1, -1])).mul(&p(&[1, 2])).mul(&IntPolynomial::monomial(2));
        let f = g.square_free_factors().unwrap();
        assert_eq!(f, vec![(p(&[1, 2]), 1), (p(&[1, 0]), 2), (p(&[1, -1]), 3)]);
    }

    #[test]
    fn json_round_trip_preserves_big_values() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let f = IntPolynomial::new(vec![BigInt::one(), BigInt::zero(), -big]).unwrap();
        let json = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(json, r#"{"n":2,"coeffs":["1","0","-123456789012345678901234567890"]}"#);
        let back: PolyJson = serde_json::from_str(&json).unwrap();
        assert_eq!(IntPolynomial::from_json(&back).unwrap(), f);
        assert!(IntPolynomial::from_json(&PolyJson { n: 3, coeffs: vec!["1".into()] }).is_err());
    }

    fn monic_from_roots(roots: &[i64]) -> IntPolynomial {
        roots.iter().fold(p(&[1]), |acc, &r| acc.mul(&p(&[1, -r])))
    }

    proptest! {
        #[test]
        fn square_free_recombines(roots in proptest::collection::vec(-4i64..=4, 1..9)) {
            let f = monic_from_roots(&roots);
            let factors = f.square_free_factors().unwrap();
            let mut back = p(&[1]);
            for (g, mult) in &factors {
                prop_assert!(g.is_monic());
                prop_assert_eq!(g.gcd(&g.derivative().unwrap()).degree(), 0);
                for _ in 0..*mult {
                    back = back.mul(g);
                }
            }
            prop_assert_eq!(back, f);
        }
    }
}
