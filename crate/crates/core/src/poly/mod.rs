//! Vector-valued polynomials in the monomial ("normal") basis and the
//! Chebyshev basis of the first kind.
//!
//! Both containers are generic over [`Coeff`], so the same arithmetic serves
//! angular-velocity fits (`Vec3`), attitude quaternion iterates
//! (`Quaternion`) and scalar helpers such as `A(|σ(t)|)` (`f64`).

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Sub};

use crate::attitude::{Quaternion, Vec3};

pub mod cheb;
pub mod normal;

pub use cheb::{cheb_basis, cheb_defint, ChebSeries};
pub use normal::Poly;

/// Element type of a polynomial coefficient list.
pub trait Coeff:
    Copy + Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + AddAssign
{
    const ZERO: Self;

    fn norm_squared(self) -> f64;

    fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }
}

impl Coeff for f64 {
    const ZERO: f64 = 0.0;

    fn norm_squared(self) -> f64 {
        self * self
    }
}

impl Coeff for Vec3 {
    const ZERO: Vec3 = Vec3::ZERO;

    fn norm_squared(self) -> f64 {
        Vec3::norm_squared(self)
    }
}

impl Coeff for Quaternion {
    const ZERO: Quaternion = Quaternion::ZERO;

    fn norm_squared(self) -> f64 {
        Quaternion::norm_squared(self)
    }
}

/// Discrepancy of polynomial coefficients: `√Σ|aₖ − bₖ|²`, the shorter list
/// padded with zeros.
pub fn coeff_discrepancy<T: Coeff>(a: &[T], b: &[T]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(T::ZERO);
            let y = b.get(k).copied().unwrap_or(T::ZERO);
            (x - y).norm_squared()
        })
        .sum::<f64>()
        .sqrt()
}

/// Magnitude of the highest retained term over an interval: `|b_m| span^m`
/// for a normal polynomial, or `|b_m|` for a Chebyshev series (`|F_m| ≤ 1`).
pub trait HighestTerm {
    fn highest_term(&self) -> f64;
}

/// Highest-order-term test: true iff the highest retained term of `poly`,
/// after truncation to `m_t`, is below `tol`.
pub fn hot_check<P: HighestTerm + Truncate>(poly: &P, m_t: usize, tol: f64) -> bool {
    poly.truncated(m_t).highest_term() < tol
}

pub trait Truncate: Sized {
    /// Drop coefficients above degree `m_t`.
    fn truncated(&self, m_t: usize) -> Self;
}
