//! Polynomials `f(q) = sum_n q^n a_n` with quaternion coefficients on the
//! right. They are the closed polynomial subfamily of slice functions: the
//! stem is `F(z) = sum_n z^n a_n`, with the complex monomials acting
//! centrally on the coefficients.

use num_complex::Complex64;

use crate::quaternion::Quaternion;
use crate::slicefn::stem::StemValue;

#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionPolynomial {
    coeffs: Vec<Quaternion>,
}

impl QuaternionPolynomial {
    /// Canonicalizes by stripping trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Quaternion>) -> QuaternionPolynomial {
        while coeffs.last().is_some_and(|c| *c == Quaternion::ZERO) {
            coeffs.pop();
        }
        QuaternionPolynomial { coeffs }
    }

    pub fn zero() -> QuaternionPolynomial {
        QuaternionPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(a: Quaternion) -> QuaternionPolynomial {
        QuaternionPolynomial::new(vec![a])
    }

    pub fn one() -> QuaternionPolynomial {
        QuaternionPolynomial::constant(Quaternion::ONE)
    }

    /// The identity function `q`.
    pub fn identity() -> QuaternionPolynomial {
        QuaternionPolynomial::new(vec![Quaternion::ZERO, Quaternion::ONE])
    }

    pub fn from_reals(coeffs: &[f64]) -> QuaternionPolynomial {
        QuaternionPolynomial::new(coeffs.iter().map(|&c| Quaternion::real(c)).collect())
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the canonical form; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, r: &QuaternionPolynomial) -> QuaternionPolynomial {
        let n = self.coeffs.len().max(r.coeffs.len());
        let mut out = vec![Quaternion::ZERO; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += *c;
        }
        for (i, c) in r.coeffs.iter().enumerate() {
            out[i] += *c;
        }
        QuaternionPolynomial::new(out)
    }

    pub fn neg(&self) -> QuaternionPolynomial {
        QuaternionPolynomial::new(self.coeffs.iter().map(|c| -*c).collect())
    }

    pub fn sub(&self, r: &QuaternionPolynomial) -> QuaternionPolynomial {
        self.add(&r.neg())
    }

    pub fn scale(&self, s: f64) -> QuaternionPolynomial {
        QuaternionPolynomial::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// *-product by coefficient convolution: `c_n = sum_{m<=n} a_m b_{n-m}`,
    /// quaternion products taken in that order.
    pub fn star(&self, r: &QuaternionPolynomial) -> QuaternionPolynomial {
        if self.is_zero() || r.is_zero() {
            return QuaternionPolynomial::zero();
        }
        let mut out = vec![Quaternion::ZERO; self.coeffs.len() + r.coeffs.len() - 1];
        for (m, a) in self.coeffs.iter().enumerate() {
            for (k, b) in r.coeffs.iter().enumerate() {
                out[m + k] += *a * *b;
            }
        }
        QuaternionPolynomial::new(out)
    }

    /// n-fold *-power; the empty product is 1.
    pub fn star_power(&self, n: u32) -> QuaternionPolynomial {
        let mut acc = QuaternionPolynomial::one();
        for _ in 0..n {
            acc = acc.star(self);
        }
        acc
    }

    /// Coefficients conjugated; the stem of the conjugate function.
    pub fn conj_coeffs(&self) -> QuaternionPolynomial {
        QuaternionPolynomial::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Real parts of the coefficients: the scalar part `(f + f^c)/2`.
    pub fn scalar_part(&self) -> QuaternionPolynomial {
        QuaternionPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| Quaternion::real(c.re()))
                .collect(),
        )
    }

    /// Vector parts of the coefficients: `(f - f^c)/2`.
    pub fn vector_part(&self) -> QuaternionPolynomial {
        QuaternionPolynomial::new(self.coeffs.iter().map(|c| c.vec()).collect())
    }

    /// Symmetrized function `f * f^c`; real coefficients up to rounding.
    pub fn symmetrized(&self) -> QuaternionPolynomial {
        self.star(&self.conj_coeffs())
    }

    /// Largest deviation of any coefficient from a real number.
    pub fn max_imaginary_residual(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.vec().norm())
            .fold(0.0, f64::max)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Stem value at `z = alpha + imath beta`, by Horner evaluation with the
    /// central complex variable.
    pub fn stem_at(&self, alpha: f64, beta: f64) -> StemValue {
        let z = Complex64::new(alpha, beta);
        let mut acc = StemValue::ZERO;
        for a in self.coeffs.iter().rev() {
            acc = acc.mul_complex(z) + StemValue::from_quaternion(*a);
        }
        acc
    }

    pub fn coeffwise_distance(&self, r: &QuaternionPolynomial) -> f64 {
        let n = self.coeffs.len().max(r.coeffs.len());
        (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(Quaternion::ZERO);
                let b = r.coeffs.get(i).copied().unwrap_or(Quaternion::ZERO);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}
