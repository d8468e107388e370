//! Picard iteration over the Chebyshev basis on `τ ∈ [−1, 1]`,
//! `t = (1 + τ) t_N / 2`.
//!
//! Products of series are expanded with `F_k F_i = (F_{k+i} + F_{|k−i|}) / 2`
//! and integrated term by term from `τ = −1`, so each step only rewrites
//! coefficient lists. The exact rotation-vector equation has the
//! non-polynomial factor `A(|σ|)`; that term is interpolated at Chebyshev
//! nodes instead.

use crate::attitude::{Quaternion, Vec3};
use crate::error::{Error, Result};
use crate::picard_np::{drive, PicardSolution, PicardState};
use crate::poly::cheb::{cheb_mul, cheb_triple};
use crate::poly::{coeff_discrepancy, ChebSeries, Coeff, Truncate};
use crate::stop::StopRule;
use crate::taylor::ASeries;

pub type ChebIterState<T> = PicardState<ChebSeries<T>>;

/// Chebyshev interpolation coefficients `γ_0..γ_p` of `eta` from its values
/// at the `q` nodes `cos((s + ½)π / q)`. Exact when `eta` is a polynomial of
/// degree below `q`.
pub fn gamma_coeffs<T: Coeff>(eta: impl Fn(f64) -> T, p: usize, q: usize) -> Result<Vec<T>> {
    if q < p + 1 {
        return Err(Error::InsufficientNodes { nodes: q, degree: p });
    }
    let qf = q as f64;
    let angles: Vec<f64> = (0..q).map(|s| (s as f64 + 0.5) * std::f64::consts::PI / qf).collect();
    let values: Vec<T> = angles.iter().map(|a| eta(a.cos())).collect();
    Ok((0..=p)
        .map(|k| {
            let weight = if k == 0 { 1.0 / qf } else { 2.0 / qf };
            let sum = angles.iter().zip(&values).fold(T::ZERO, |acc, (a, &v)| acc + v * (k as f64 * a).cos());
            sum * weight
        })
        .collect())
}

/// A kinematic equation in the Chebyshev basis.
pub trait ChebKinematics {
    type Value: Coeff;

    fn initial(&self) -> Self::Value;

    /// Untruncated update `y(0) + ∫_{−1}^{τ} f(y, ω) (t_N / 2) dτ`.
    fn update(&self, y: &ChebSeries<Self::Value>, omega: &ChebSeries<Vec3>, m_t: usize) -> ChebSeries<Self::Value>;

    /// Untruncated degree of an update from degree `m` with a degree-`n` fit.
    fn growth(&self, m: usize, n: usize, m_t: usize) -> usize;

    /// Rejects parameter combinations the update cannot handle.
    fn validate(&self, _m_t: usize) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuatCheb {
    pub q0: Quaternion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RodCheb;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotCheb {
    /// Exact `A(|σ|)`, third term interpolated at `nodes` points
    /// (`2 m_T + 1` when unset).
    Full {
        nodes: Option<usize>,
    },
    T3,
    T2,
}

impl RotCheb {
    pub fn nodes(&self, m_t: usize) -> usize {
        match *self {
            RotCheb::Full { nodes: Some(q) } => q,
            _ => 2 * m_t + 1,
        }
    }
}

impl ChebKinematics for QuatCheb {
    type Value = Quaternion;

    fn initial(&self) -> Quaternion {
        self.q0
    }

    fn update(&self, q: &ChebSeries<Quaternion>, omega: &ChebSeries<Vec3>, _m_t: usize) -> ChebSeries<Quaternion> {
        let span = omega.span();
        cheb_mul(q, omega, |b, c| b * c.pure())
            .integral_from_start()
            .scale(span / 4.0)
            .add(&ChebSeries::constant(self.q0, span))
    }

    fn growth(&self, m: usize, n: usize, _m_t: usize) -> usize {
        m + n + 1
    }
}

impl ChebKinematics for RodCheb {
    type Value = Vec3;

    fn initial(&self) -> Vec3 {
        Vec3::ZERO
    }

    fn update(&self, g: &ChebSeries<Vec3>, omega: &ChebSeries<Vec3>, _m_t: usize) -> ChebSeries<Vec3> {
        let outer = cheb_triple(g, g, omega, |a, b, c| a * b.dot(c));
        omega
            .add(&cheb_mul(g, omega, Vec3::cross).scale(0.5))
            .add(&outer.scale(0.25))
            .integral_from_start()
            .scale(omega.span() / 2.0)
    }

    fn growth(&self, m: usize, n: usize, _m_t: usize) -> usize {
        2 * m + n + 1
    }
}

impl ChebKinematics for RotCheb {
    type Value = Vec3;

    fn initial(&self) -> Vec3 {
        Vec3::ZERO
    }

    fn update(&self, sigma: &ChebSeries<Vec3>, omega: &ChebSeries<Vec3>, m_t: usize) -> ChebSeries<Vec3> {
        let span = omega.span();
        let mut rhs = omega.add(&cheb_mul(sigma, omega, Vec3::cross).scale(0.5));
        match self {
            RotCheb::T2 => {}
            RotCheb::T3 => {
                rhs = rhs.add(&cheb_triple(sigma, sigma, omega, |a, b, c| a.cross(b.cross(c))).scale(1.0 / 12.0));
            }
            RotCheb::Full { .. } => {
                let eta = |tau: f64| {
                    let s = sigma.eval_unchecked(tau);
                    let w = omega.eval_unchecked(tau);
                    s.cross(s.cross(w)) * ASeries::eval(s.norm())
                };
                let gamma = gamma_coeffs(eta, m_t, self.nodes(m_t)).expect("node count checked by validate");
                rhs = rhs.add(&ChebSeries::new(gamma, span));
            }
        }
        rhs.integral_from_start().scale(span / 2.0)
    }

    fn growth(&self, m: usize, n: usize, m_t: usize) -> usize {
        match self {
            RotCheb::T2 => m + n + 1,
            RotCheb::T3 => 2 * m + n + 1,
            RotCheb::Full { .. } => (m + n).max(m_t) + 1,
        }
    }

    fn validate(&self, m_t: usize) -> Result<()> {
        let q = self.nodes(m_t);
        if q < m_t + 1 {
            return Err(Error::InsufficientNodes { nodes: q, degree: m_t });
        }
        Ok(())
    }
}

pub fn picard_cheb_init<K: ChebKinematics>(kin: &K, omega: &ChebSeries<Vec3>, m_t: usize) -> ChebIterState<K::Value> {
    PicardState {
        iterate: ChebSeries::constant(kin.initial(), omega.span()),
        iteration: 0,
        m_t,
        dpc: None,
        raw_degree: 0,
    }
}

/// One update followed by truncation to `m_T`.
pub fn picard_cheb_step<K: ChebKinematics>(
    state: &ChebIterState<K::Value>,
    omega: &ChebSeries<Vec3>,
    kin: &K,
) -> ChebIterState<K::Value> {
    let prev = &state.iterate;
    let raw = kin.update(prev, omega, state.m_t);
    let expected = kin.growth(prev.degree(), omega.degree(), state.m_t);
    assert_eq!(raw.degree(), expected, "untruncated Picard degree");
    let next = raw.truncated(state.m_t);
    let dpc = coeff_discrepancy(next.coeffs(), prev.coeffs());
    PicardState { iterate: next, iteration: state.iteration + 1, m_t: state.m_t, dpc: Some(dpc), raw_degree: expected }
}

pub fn picard_cheb_solve<K: ChebKinematics>(
    omega: &ChebSeries<Vec3>,
    kin: &K,
    m_t: usize,
    stop: StopRule,
) -> Result<PicardSolution<ChebSeries<K::Value>>> {
    let required = omega.degree() + 1;
    if m_t < required {
        return Err(Error::TruncationTooLow { m_t, required });
    }
    kin.validate(m_t)?;
    drive(picard_cheb_init(kin, omega, m_t), |s| picard_cheb_step(s, omega, kin), stop)
}
