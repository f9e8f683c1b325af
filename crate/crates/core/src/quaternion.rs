//! Quaternion arithmetic and the sphere of imaginary units.
//!
//! A quaternion `q = w + xi + yj + zk` is stored as four `f64` components.
//! The basis satisfies `i^2 = j^2 = k^2 = -1` and `k = ij = -ji`. The unit
//! sphere of imaginary units `{u : u^2 = -1}` is modelled by [`ImaginaryUnit`],
//! and every quaternion decomposes as `alpha + beta * I` with `beta >= 0`
//! via [`sphere_coords`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tol::TAU_ALG;

/// Element of the quaternion algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Scalar part `Re(q)`.
    pub fn re(self) -> f64 {
        self.w
    }

    /// Vector part `q - Re(q)`.
    pub fn vec(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    /// Conjugate `w - xi - yj - zk`.
    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Multiplicative inverse `conj(q) / |q|^2`.
    pub fn inv(self) -> Result<Quaternion> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn scale(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Euclidean inner product of the four components.
    pub fn dot(self, other: Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.norm() <= tol
    }

    /// True when the vector part is below `tol`.
    pub fn is_real(self, tol: f64) -> bool {
        self.vec().norm() <= tol
    }

    /// Distance to the plane spanned by `1` and `axis`.
    pub fn cj_residual(self, axis: ImaginaryUnit) -> f64 {
        let v = self.vec();
        let along = axis.0.scale(v.dot(axis.0));
        (v - along).norm()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, rhs: Quaternion) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let mut part = |f: &mut fmt::Formatter<'_>, c: f64, sym: &str| -> fmt::Result {
            if c == 0.0 {
                return Ok(());
            }
            if wrote {
                write!(f, " {} ", if c < 0.0 { "-" } else { "+" })?;
                write!(f, "{}{}", c.abs(), sym)?;
            } else {
                write!(f, "{}{}", c, sym)?;
            }
            wrote = true;
            Ok(())
        };
        part(f, self.w, "")?;
        part(f, self.x, "i")?;
        part(f, self.y, "j")?;
        part(f, self.z, "k")?;
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Wire format: a bare 4-array [w, x, y, z].
impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.w, self.x, self.y, self.z].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = <Vec<f64>>::deserialize(deserializer)?;
        match parts.as_slice() {
            [w, x, y, z] => Ok(Quaternion::new(*w, *x, *y, *z)),
            other => Err(D::Error::custom(format!(
                "quaternion needs 4 components, got {}",
                other.len()
            ))),
        }
    }
}

/// A point of the sphere `{u : u^2 = -1}`: purely imaginary with unit norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ImaginaryUnit(Quaternion);

impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let q = Quaternion::deserialize(deserializer)?;
        ImaginaryUnit::new(q).map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit(Quaternion::I);
    pub const J: ImaginaryUnit = ImaginaryUnit(Quaternion::J);
    pub const K: ImaginaryUnit = ImaginaryUnit(Quaternion::K);

    /// Validates `re(u) = 0` and `|u| = 1` within [`TAU_ALG`].
    pub fn new(u: Quaternion) -> Result<ImaginaryUnit> {
        let re_abs = u.w.abs();
        let norm_dev = (u.norm() - 1.0).abs();
        if re_abs > TAU_ALG || norm_dev > TAU_ALG {
            return Err(Error::NotImaginaryUnit { re_abs, norm_dev });
        }
        Ok(ImaginaryUnit(
            Quaternion::new(0.0, u.x, u.y, u.z).scale(1.0 / u.vec().norm()),
        ))
    }

    /// Normalizes the vector part of `q`; `None` when it is numerically zero.
    pub fn from_vector_part(q: Quaternion) -> Option<ImaginaryUnit> {
        let v = q.vec();
        let n = v.norm();
        if n <= TAU_ALG {
            None
        } else {
            Some(ImaginaryUnit(v.scale(1.0 / n)))
        }
    }

    /// Uniform sample from the unit sphere of imaginary units.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R) -> ImaginaryUnit {
        loop {
            let v = Quaternion::new(
                0.0,
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
            );
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                return ImaginaryUnit(v.scale(1.0 / n));
            }
        }
    }

    pub fn as_quaternion(self) -> Quaternion {
        self.0
    }

    /// Flips the sign so that the first coordinate (in i, j, k order) larger
    /// than [`TAU_ALG`] in magnitude is positive. Gives every axis a
    /// reproducible representative among `{u, -u}`.
    pub fn canonical_sign(self) -> ImaginaryUnit {
        for c in [self.0.x, self.0.y, self.0.z] {
            if c.abs() > TAU_ALG {
                return if c < 0.0 {
                    ImaginaryUnit(-self.0)
                } else {
                    self
                };
            }
        }
        self
    }
}

impl Neg for ImaginaryUnit {
    type Output = ImaginaryUnit;
    fn neg(self) -> ImaginaryUnit {
        ImaginaryUnit(-self.0)
    }
}

impl fmt::Display for ImaginaryUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Writes `a = alpha + beta * I` with `beta >= 0`. Returns `I = None` when
/// the point is real (vector part below [`TAU_ALG`]), in which case
/// `beta = 0`.
pub fn sphere_coords(a: Quaternion) -> (f64, f64, Option<ImaginaryUnit>) {
    match ImaginaryUnit::from_vector_part(a) {
        None => (a.w, 0.0, None),
        Some(unit) => (a.w, a.vec().norm(), Some(unit)),
    }
}

/// Completes `I` to an alternating orthonormal triple `(I, J, K)` with
/// `IJ = K`. `J` is obtained by Gram-Schmidt against the canonical axis
/// least aligned with `I`, ties broken in i, j, k order.
pub fn orthonormal_basis(i: ImaginaryUnit) -> (ImaginaryUnit, ImaginaryUnit, ImaginaryUnit) {
    let iq = i.as_quaternion();
    let axes = [Quaternion::I, Quaternion::J, Quaternion::K];
    let mut best = 0;
    let mut best_align = f64::INFINITY;
    for (idx, axis) in axes.iter().enumerate() {
        let align = iq.dot(*axis).abs();
        if align < best_align - TAU_ALG {
            best = idx;
            best_align = align;
        }
    }
    let axis = axes[best];
    let raw = axis - iq.scale(axis.dot(iq));
    let j = ImaginaryUnit(raw.scale(1.0 / raw.norm()));
    let k = ImaginaryUnit(iq * j.0);
    (i, j, k)
}

/// An alternating orthonormal completion `(1, I, J, K)` of the quaternions.
#[derive(Clone, Copy, Debug)]
pub struct Basis {
    pub i: ImaginaryUnit,
    pub j: ImaginaryUnit,
    pub k: ImaginaryUnit,
}

impl Basis {
    /// The canonical basis (1, i, j, k).
    pub fn canonical() -> Basis {
        Basis {
            i: ImaginaryUnit::I,
            j: ImaginaryUnit::J,
            k: ImaginaryUnit::K,
        }
    }

    /// Validates orthonormality and `IJ = K`.
    pub fn new(i: ImaginaryUnit, j: ImaginaryUnit, k: ImaginaryUnit) -> Result<Basis> {
        let (iq, jq, kq) = (i.as_quaternion(), j.as_quaternion(), k.as_quaternion());
        let ortho = iq.dot(jq).abs() <= TAU_ALG
            && jq.dot(kq).abs() <= TAU_ALG
            && iq.dot(kq).abs() <= TAU_ALG;
        let alternating = (iq * jq - kq).norm() <= TAU_ALG;
        if ortho && alternating {
            Ok(Basis { i, j, k })
        } else {
            Err(Error::BadBasis)
        }
    }

    /// Completes `I` deterministically via [`orthonormal_basis`].
    pub fn completing(i: ImaginaryUnit) -> Basis {
        let (i, j, k) = orthonormal_basis(i);
        Basis { i, j, k }
    }
}
