//! Square roots of slice-preserving polynomials.
//!
//! A nonzero real-coefficient polynomial `h` is the square of another one
//! exactly when every real zero has even multiplicity, every spherical zero
//! has spherical multiplicity divisible by 4, and `h >= 0` on the real axis
//! (equivalently, given the parity conditions, positive leading
//! coefficient). The square root is rebuilt from the factored zero
//! structure and normalized to a positive leading coefficient.

mod roots;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use roots::PolyRoot;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::slicefn::QuaternionPolynomial;
use crate::tol::{TAU_EVAL, TAU_ROOT};

/// Polynomial with real coefficients: a slice-preserving entire function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> RealPolynomial {
        while coeffs.last().is_some_and(|c| *c == 0.0) {
            coeffs.pop();
        }
        RealPolynomial { coeffs }
    }

    pub fn constant(c: f64) -> RealPolynomial {
        RealPolynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn mul(&self, other: &RealPolynomial) -> RealPolynomial {
        if self.is_zero() || other.is_zero() {
            return RealPolynomial::new(Vec::new());
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }

    pub fn scale(&self, s: f64) -> RealPolynomial {
        RealPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }

    pub fn coeffwise_distance(&self, other: &RealPolynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0.0)
                    - other.coeffs.get(i).copied().unwrap_or(0.0))
                .abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn to_quaternion_poly(&self) -> QuaternionPolynomial {
        QuaternionPolynomial::from_reals(&self.coeffs)
    }

    /// Real part of a quaternion polynomial whose coefficients are real
    /// within tolerance.
    pub fn from_quaternion_poly(p: &QuaternionPolynomial) -> Result<RealPolynomial> {
        let scale = 1.0 + p.max_coeff_norm();
        if p.max_imaginary_residual() > TAU_EVAL * scale {
            return Err(Error::NotSlicePreserving);
        }
        Ok(RealPolynomial::new(
            p.coeffs().iter().map(|c| c.re()).collect(),
        ))
    }
}

/// A spherical zero `S_{a + b J}`: the quadratic factor
/// `(q^2 - 2 a q + a^2 + b^2)^m`. The spherical multiplicity is `2 m`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SphereZero {
    pub center: f64,
    pub radius: f64,
    /// Exponent of the quadratic factor.
    pub quad_multiplicity: u32,
}

impl SphereZero {
    pub fn spherical_multiplicity(&self) -> u32 {
        2 * self.quad_multiplicity
    }
}

/// Factored form of a real-coefficient polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroStructure {
    pub leading: f64,
    pub real_roots: Vec<(f64, u32)>,
    pub spheres: Vec<SphereZero>,
}

impl ZeroStructure {
    /// Multiplies the factorization back out.
    pub fn reconstruct(&self) -> RealPolynomial {
        let mut acc = RealPolynomial::constant(self.leading);
        for &(r, k) in &self.real_roots {
            let factor = RealPolynomial::new(vec![-r, 1.0]);
            for _ in 0..k {
                acc = acc.mul(&factor);
            }
        }
        for s in &self.spheres {
            let factor = RealPolynomial::new(vec![
                s.center * s.center + s.radius * s.radius,
                -2.0 * s.center,
                1.0,
            ]);
            for _ in 0..s.quad_multiplicity {
                acc = acc.mul(&factor);
            }
        }
        acc
    }
}

/// All complex roots of `p` with multiplicities (conjugate pairs merged into
/// their upper-half-plane representative).
pub fn find_roots(p: &RealPolynomial) -> Result<Vec<PolyRoot>> {
    let tol = (TAU_ROOT * 10.0).max(1e-9);
    roots::real_poly_roots(p.coeffs(), tol)
}

/// Groups the zero set of a nonzero slice-preserving polynomial into real
/// zeroes and spheres with real center.
pub fn zero_structure(h: &RealPolynomial) -> Result<ZeroStructure> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut real_roots = Vec::new();
    let mut spheres = Vec::new();
    for root in find_roots(h)? {
        if root.conjugate_pair {
            spheres.push(SphereZero {
                center: root.value.re,
                radius: root.value.im.abs(),
                quad_multiplicity: root.multiplicity,
            });
        } else {
            real_roots.push((root.value.re, root.multiplicity));
        }
    }
    real_roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    spheres.sort_by(|a, b| {
        (a.center, a.radius)
            .partial_cmp(&(b.center, b.radius))
            .unwrap()
    });
    Ok(ZeroStructure {
        leading: h.leading(),
        real_roots,
        spheres,
    })
}

/// Outcome of the square-root existence test, with the failing condition
/// spelled out.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SqrtCheck {
    pub has_sqrt: bool,
    pub reason: Option<String>,
    pub structure: ZeroStructure,
}

/// Decides whether `h` is the square of a slice-preserving polynomial:
/// real zeroes of even multiplicity, spherical multiplicities divisible by
/// 4, and `h >= 0` on the real axis.
pub fn has_sqrt(h: &RealPolynomial) -> Result<SqrtCheck> {
    let structure = zero_structure(h)?;
    for &(r, k) in &structure.real_roots {
        if k % 2 == 1 {
            return Ok(SqrtCheck {
                has_sqrt: false,
                reason: Some(format!("odd real multiplicity {k} at q = {r}")),
                structure,
            });
        }
    }
    for s in &structure.spheres {
        if s.quad_multiplicity % 2 == 1 {
            return Ok(SqrtCheck {
                has_sqrt: false,
                reason: Some(format!(
                    "spherical multiplicity {}",
                    s.spherical_multiplicity()
                )),
                structure,
            });
        }
    }
    // Parity conditions hold, so h has constant sign on the real axis; the
    // sign is the sign of the leading coefficient. Sample defensively.
    if structure.leading < 0.0 {
        return Ok(SqrtCheck {
            has_sqrt: false,
            reason: Some("negative on the real axis".to_string()),
            structure,
        });
    }
    let bound = 1.0 + h.max_coeff() / h.leading().abs().max(f64::MIN_POSITIVE);
    let tol = TAU_EVAL * (1.0 + h.max_coeff());
    for i in 0..100 {
        let x = -bound + 2.0 * bound * (i as f64) / 99.0;
        if h.eval(x) < -tol {
            return Ok(SqrtCheck {
                has_sqrt: false,
                reason: Some("negative on the real axis".to_string()),
                structure,
            });
        }
    }
    Ok(SqrtCheck {
        has_sqrt: true,
        reason: None,
        structure,
    })
}

/// The square root `sqrt(leading) * prod (q - r)^(k/2) * prod quad^(m/2)`,
/// normalized to a positive leading coefficient.
pub fn sqrt(h: &RealPolynomial) -> Result<RealPolynomial> {
    let check = has_sqrt(h)?;
    if !check.has_sqrt {
        return Err(Error::NoSquareRoot(check.reason.unwrap_or_default()));
    }
    let halved = ZeroStructure {
        leading: check.structure.leading.sqrt(),
        real_roots: check
            .structure
            .real_roots
            .iter()
            .map(|&(r, k)| (r, k / 2))
            .collect(),
        spheres: check
            .structure
            .spheres
            .iter()
            .map(|s| SphereZero {
                quad_multiplicity: s.quad_multiplicity / 2,
                ..*s
            })
            .collect(),
    };
    Ok(halved.reconstruct())
}

/// Whether the symmetrized function of a quaternion polynomial has a
/// slice-preserving square root; by the zero-set characterization this holds
/// exactly when `g` has no non-real zeroes of odd isolated multiplicity.
pub fn symmetrized_has_sqrt(g: &QuaternionPolynomial) -> Result<SqrtCheck> {
    let sym = RealPolynomial::from_quaternion_poly(&g.symmetrized())?;
    if sym.is_zero() {
        // g^s = 0 admits the zero square root.
        return Ok(SqrtCheck {
            has_sqrt: true,
            reason: None,
            structure: ZeroStructure {
                leading: 0.0,
                real_roots: vec![],
                spheres: vec![],
            },
        });
    }
    has_sqrt(&sym)
}

/// Convenience: symmetrized square root check straight from coefficients.
pub fn symmetrized_of_coeffs(coeffs: Vec<Quaternion>) -> Result<SqrtCheck> {
    symmetrized_has_sqrt(&QuaternionPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[f64]) -> RealPolynomial {
        RealPolynomial::new(coeffs.to_vec())
    }

    #[test]
    fn zero_structure_examples() {
        // q^2 + 1: the unit sphere with spherical multiplicity 2.
        let s = zero_structure(&poly(&[1.0, 0.0, 1.0])).unwrap();
        assert!(s.real_roots.is_empty());
        assert_eq!(s.spheres.len(), 1);
        assert_eq!(s.spheres[0].spherical_multiplicity(), 2);
        assert!((s.spheres[0].center).abs() < 1e-10);
        assert!((s.spheres[0].radius - 1.0).abs() < 1e-10);

        // (q - 3)^4
        let c = poly(&[81.0, -108.0, 54.0, -12.0, 1.0]);
        let s = zero_structure(&c).unwrap();
        assert_eq!(s.real_roots, vec![(s.real_roots[0].0, 4)]);
        assert!((s.real_roots[0].0 - 3.0).abs() < 1e-9);
        assert!(s.spheres.is_empty());

        // (q^2+1)^2 (q-1)^2
        let h = poly(&[1.0, 0.0, 1.0])
            .mul(&poly(&[1.0, 0.0, 1.0]))
            .mul(&poly(&[-1.0, 1.0]))
            .mul(&poly(&[-1.0, 1.0]));
        let s = zero_structure(&h).unwrap();
        assert_eq!(s.spheres.len(), 1);
        assert_eq!(s.spheres[0].quad_multiplicity, 2);
        assert_eq!(s.real_roots.len(), 1);
        assert_eq!(s.real_roots[0].1, 2);
        // Reconstruction reproduces the input.
        assert!(s.reconstruct().coeffwise_distance(&h) < 1e-9 * (1.0 + h.max_coeff()));
    }

    #[test]
    fn has_sqrt_examples() {
        let check = has_sqrt(&poly(&[1.0, 0.0, 1.0])).unwrap();
        assert!(!check.has_sqrt);
        assert_eq!(check.reason.as_deref(), Some("spherical multiplicity 2"));

        // (q^2 + 1)^2: spherical multiplicity 4.
        let check = has_sqrt(&poly(&[1.0, 0.0, 2.0, 0.0, 1.0])).unwrap();
        assert!(check.has_sqrt);

        // -(q - 1)^2: even multiplicities but negative values.
        let check = has_sqrt(&poly(&[-1.0, 2.0, -1.0])).unwrap();
        assert!(!check.has_sqrt);
        assert_eq!(check.reason.as_deref(), Some("negative on the real axis"));

        // (q - 1)^3: odd real multiplicity.
        let check = has_sqrt(&poly(&[-1.0, 3.0, -3.0, 1.0])).unwrap();
        assert!(!check.has_sqrt);
        assert!(check.reason.unwrap().starts_with("odd real multiplicity 3"));
    }

    #[test]
    fn sqrt_examples() {
        // Constant.
        let r = sqrt(&poly(&[4.0])).unwrap();
        assert_eq!(r.coeffs(), &[2.0]);

        // (q^2 + 1)^2 -> q^2 + 1.
        let r = sqrt(&poly(&[1.0, 0.0, 2.0, 0.0, 1.0])).unwrap();
        assert!(r.coeffwise_distance(&poly(&[1.0, 0.0, 1.0])) < 1e-8);

        // q^4 - 2 q^2 + 1 = (q^2 - 1)^2 -> q^2 - 1 (positive leading).
        let r = sqrt(&poly(&[1.0, 0.0, -2.0, 0.0, 1.0])).unwrap();
        assert!(r.coeffwise_distance(&poly(&[-1.0, 0.0, 1.0])) < 1e-8);
        assert!(r.leading() > 0.0);

        // Square of the root matches coefficientwise.
        let sq = r.mul(&r);
        assert!(sq.coeffwise_distance(&poly(&[1.0, 0.0, -2.0, 0.0, 1.0])) < 1e-8);

        assert!(matches!(
            sqrt(&poly(&[1.0, 0.0, 1.0])),
            Err(Error::NoSquareRoot(_))
        ));
    }

    #[test]
    fn symmetrized_checks() {
        use crate::quaternion::Quaternion;
        const I: Quaternion = Quaternion::I;

        // g = q + i: g^s = q^2 + 1, no square root.
        let g = QuaternionPolynomial::new(vec![I, Quaternion::ONE]);
        assert!(!symmetrized_has_sqrt(&g).unwrap().has_sqrt);

        // g = (q + i)*(q + i): g^s = (q^2 + 1)^2, admits one.
        let g2 = g.star(&g);
        assert!(symmetrized_has_sqrt(&g2).unwrap().has_sqrt);

        // Slice-preserving g = q^2: g^s = q^4, sqrt = q^2.
        let g3 = QuaternionPolynomial::from_reals(&[0.0, 0.0, 1.0]);
        assert!(symmetrized_has_sqrt(&g3).unwrap().has_sqrt);
        let sym = RealPolynomial::from_quaternion_poly(&g3.symmetrized()).unwrap();
        let r = sqrt(&sym).unwrap();
        assert!(r.coeffwise_distance(&poly(&[0.0, 0.0, 1.0])) < 1e-8);
    }

    #[test]
    fn quartic_multiplicity_round_trip() {
        // (q^2 + 1)^4 -> (q^2 + 1)^2
        let base = poly(&[1.0, 0.0, 1.0]);
        let mut h = RealPolynomial::constant(1.0);
        for _ in 0..4 {
            h = h.mul(&base);
        }
        let r = sqrt(&h).unwrap();
        let expected = base.mul(&base);
        assert!(
            r.coeffwise_distance(&expected) < 1e-7,
            "got {:?}",
            r.coeffs()
        );
    }
}
