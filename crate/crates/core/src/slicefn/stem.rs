//! Values of stem functions: the algebra `H (x) C`.
//!
//! A stem value is a pair `p + I q` of quaternions with a central imaginary
//! unit `I` (written `imath` in the sources below to avoid confusion with the
//! quaternion `i`). The product is
//! `(p + I q)(p' + I q') = pp' - qq' + I (pq' + qp')`.
//!
//! Complex numbers embed centrally as `a + I b` with real `a`, `b`; this is
//! what makes slice-preserving functions commute with everything.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::quaternion::Quaternion;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StemValue {
    /// Value of the first stem component `F1`.
    pub p: Quaternion,
    /// Value of the second stem component `F2`.
    pub q: Quaternion,
}

impl StemValue {
    pub const ZERO: StemValue = StemValue {
        p: Quaternion::ZERO,
        q: Quaternion::ZERO,
    };
    pub const ONE: StemValue = StemValue {
        p: Quaternion::ONE,
        q: Quaternion::ZERO,
    };

    pub fn new(p: Quaternion, q: Quaternion) -> StemValue {
        StemValue { p, q }
    }

    pub fn from_quaternion(p: Quaternion) -> StemValue {
        StemValue {
            p,
            q: Quaternion::ZERO,
        }
    }

    pub fn from_complex(z: Complex64) -> StemValue {
        StemValue {
            p: Quaternion::real(z.re),
            q: Quaternion::real(z.im),
        }
    }

    pub fn scale(self, s: f64) -> StemValue {
        StemValue {
            p: self.p.scale(s),
            q: self.q.scale(s),
        }
    }

    /// Componentwise quaternion conjugation (the stem of the conjugate
    /// function).
    pub fn conj_components(self) -> StemValue {
        StemValue {
            p: self.p.conj(),
            q: self.q.conj(),
        }
    }

    /// Central action of a complex scalar.
    pub fn mul_complex(self, z: Complex64) -> StemValue {
        StemValue {
            p: self.p.scale(z.re) - self.q.scale(z.im),
            q: self.q.scale(z.re) + self.p.scale(z.im),
        }
    }

    /// Projection onto the central copy of C: the real parts of both
    /// components.
    pub fn complex_part(self) -> Complex64 {
        Complex64::new(self.p.re(), self.q.re())
    }

    /// The complement of [`complex_part`](Self::complex_part): vector parts
    /// of both components.
    pub fn vector_part(self) -> StemValue {
        StemValue {
            p: self.p.vec(),
            q: self.q.vec(),
        }
    }

    /// For a vector stem value `v`, `v * v` is the central complex scalar
    /// `-(sigma)` with `sigma = |vec p|^2 - |vec q|^2 + 2 I <vec p, vec q>`.
    /// `sigma` is the value of the symmetrized function of the vector part.
    pub fn vector_square_sigma(self) -> Complex64 {
        let vp = self.p.vec();
        let vq = self.q.vec();
        Complex64::new(vp.norm_sqr() - vq.norm_sqr(), 2.0 * vp.dot(vq))
    }

    pub fn norm(self) -> f64 {
        (self.p.norm_sqr() + self.q.norm_sqr()).sqrt()
    }

    /// Exact supremum of `|F1 + I F2|` over the sphere of imaginary units.
    ///
    /// `|F1 + I F2|^2 = |F1|^2 + |F2|^2 - 2 <I, vec(F2 F1^c)>`, a linear
    /// function of `I` on the unit sphere, so the extrema are
    /// `|F1|^2 + |F2|^2 +/- 2 |vec(F2 F1^c)|`.
    pub fn sphere_sup(self) -> f64 {
        let cross = (self.q * self.p.conj()).vec().norm();
        (self.p.norm_sqr() + self.q.norm_sqr() + 2.0 * cross)
            .max(0.0)
            .sqrt()
    }

    /// Exact infimum of `|F1 + I F2|` over the sphere of imaginary units.
    pub fn sphere_inf(self) -> f64 {
        let cross = (self.q * self.p.conj()).vec().norm();
        (self.p.norm_sqr() + self.q.norm_sqr() - 2.0 * cross)
            .max(0.0)
            .sqrt()
    }
}

/// Product in `H (x) C`.
impl Mul for StemValue {
    type Output = StemValue;
    fn mul(self, r: StemValue) -> StemValue {
        StemValue {
            p: self.p * r.p - self.q * r.q,
            q: self.p * r.q + self.q * r.p,
        }
    }
}

impl Add for StemValue {
    type Output = StemValue;
    fn add(self, r: StemValue) -> StemValue {
        StemValue {
            p: self.p + r.p,
            q: self.q + r.q,
        }
    }
}

impl Sub for StemValue {
    type Output = StemValue;
    fn sub(self, r: StemValue) -> StemValue {
        StemValue {
            p: self.p - r.p,
            q: self.q - r.q,
        }
    }
}

impl Neg for StemValue {
    type Output = StemValue;
    fn neg(self) -> StemValue {
        StemValue {
            p: -self.p,
            q: -self.q,
        }
    }
}

/// Compensated (Kahan) accumulator for stem values. The truncated series
/// evaluators sum many terms of widely varying magnitude; compensation keeps
/// the summation error at the scale of the result instead of the largest
/// term.
#[derive(Clone, Copy, Debug, Default)]
pub struct StemKahan {
    sum: StemValue,
    carry: StemValue,
}

impl StemKahan {
    pub fn add(&mut self, term: StemValue) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> StemValue {
        self.sum
    }
}
