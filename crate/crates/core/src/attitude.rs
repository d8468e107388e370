//! Rotation algebra shared by every integrator.
//!
//! Quaternions are stored scalar-first, `q = s + η`, and compose with the
//! Hamilton product. Vectors double as pure quaternions where the kinematics
//! need them (`q ∘ ω`).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Below this magnitude the rotation-vector and Rodrigues conversions switch
/// to their series limits.
pub const SMALL_ANGLE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// The vector as a quaternion with zero scalar part.
    #[inline]
    pub fn pure(self) -> Quaternion {
        Quaternion::new(0.0, self)
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Vec3 {
    #[inline]
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, k: f64) -> Vec3 {
        Vec3::new(self.x / k, self.y / k, self.z / k)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e}, {:e}, {:e})", self.x, self.y, self.z)
    }
}

/// Scalar-first quaternion `s + η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub s: f64,
    pub v: Vec3,
}

impl Default for Quaternion {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion { s: 1.0, v: Vec3::ZERO };
    pub const ZERO: Quaternion = Quaternion { s: 0.0, v: Vec3::ZERO };

    #[inline]
    pub const fn new(s: f64, v: Vec3) -> Self {
        Self { s, v }
    }

    pub const fn from_components(s: f64, x: f64, y: f64, z: f64) -> Self {
        Self { s, v: Vec3::new(x, y, z) }
    }

    #[inline]
    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.s, -self.v)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.s * self.s + self.v.norm_squared()
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn normalize(self) -> Quaternion {
        let n = self.norm();
        Quaternion::new(self.s / n, self.v / n)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.s, self.v.x, self.v.y, self.v.z]
    }

    /// Rotation of `angle` radians about a unit `axis`.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Quaternion {
        let (sh, ch) = (0.5 * angle).sin_cos();
        Quaternion::new(ch, axis * sh)
    }
}

/// Hamilton product `a ∘ b = [s₁s₂ − η₁·η₂ ; s₁η₂ + s₂η₁ + η₁×η₂]`.
#[inline]
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(a.s * b.s - a.v.dot(b.v), b.v * a.s + a.v * b.s + a.v.cross(b.v))
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        quat_mul(self, o)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, k: f64) -> Quaternion {
        Quaternion::new(self.s * k, self.v * k)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.s + o.s, self.v + o.v)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.s - o.s, self.v - o.v)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.s, -self.v)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}, {:.17e}, {:.17e}]", self.s, self.v.x, self.v.y, self.v.z)
    }
}

/// `q = cos(|σ|/2) + (σ/|σ|) sin(|σ|/2)`.
pub fn quat_from_rotvec(sigma: Vec3) -> Quaternion {
    let angle_sq = sigma.norm_squared();
    let angle = angle_sq.sqrt();
    if angle < SMALL_ANGLE {
        return Quaternion::new(1.0 - angle_sq / 8.0, sigma * 0.5);
    }
    let (sh, ch) = (0.5 * angle).sin_cos();
    Quaternion::new(ch, sigma * (sh / angle))
}

/// `q = (2 + g) / √(4 + |g|²)` for a Rodrigues vector `g = 2 tan(α/2) e`.
pub fn quat_from_rodrigues(g: Vec3) -> Quaternion {
    let k = 1.0 / (4.0 + g.norm_squared()).sqrt();
    Quaternion::new(2.0 * k, g * k)
}

/// Principal rotation angle error metric `2 |vec(q_true* ∘ q_est)|`.
///
/// The vector part changes sign but not magnitude under `q_est → −q_est`, so
/// antipodal estimates score identically.
pub fn attitude_error(q_true: Quaternion, q_est: Quaternion) -> f64 {
    2.0 * quat_mul(q_true.conj(), q_est).v.norm()
}
