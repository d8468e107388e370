//! Picard iteration over the monomial basis.
//!
//! Each step integrates the kinematic right-hand side evaluated on the
//! previous iterate, `y_j(t) = y(0) + ∫₀ᵗ f(y_{j−1}, ω)`, exactly in
//! polynomial arithmetic and truncates the result to degree `m_T`.

use crate::attitude::{Quaternion, Vec3};
use crate::error::{Error, Result};
use crate::poly::normal::convolve;
use crate::poly::{coeff_discrepancy, Coeff, Poly, Truncate};
use crate::stop::StopRule;

/// One Picard iterate with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct PicardState<P> {
    pub iterate: P,
    /// Number of updates applied so far.
    pub iteration: usize,
    pub m_t: usize,
    /// Discrepancy between this iterate and the previous one.
    pub dpc: Option<f64>,
    /// Degree of the last update before truncation.
    pub raw_degree: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PicardSolution<P> {
    pub poly: P,
    pub iterations: usize,
    pub dpc_history: Vec<f64>,
}

pub type NpIterState<T> = PicardState<Poly<T>>;

/// Runs `step` from `init` under `stop`.
pub(crate) fn drive<P>(
    init: PicardState<P>,
    mut step: impl FnMut(&PicardState<P>) -> PicardState<P>,
    stop: StopRule,
) -> Result<PicardSolution<P>> {
    let mut state = init;
    let mut history = Vec::new();
    let tol = stop.tolerance();
    let cap = stop.cap();
    loop {
        state = step(&state);
        let dpc = state.dpc.unwrap_or(f64::INFINITY);
        history.push(dpc);
        let done = match tol {
            None => state.iteration >= cap,
            Some(tol) => dpc < tol,
        };
        if done {
            return Ok(PicardSolution { poly: state.iterate, iterations: state.iteration, dpc_history: history });
        }
        if tol.is_some() && (state.iteration >= cap || !dpc.is_finite()) {
            return Err(Error::NotConverged { iterations: state.iteration, dpc });
        }
    }
}

/// A kinematic equation in the monomial basis.
pub trait NpKinematics {
    type Value: Coeff;

    /// Zeroth iterate: the initial condition held constant.
    fn initial(&self) -> Self::Value;

    /// Untruncated update `y(0) + ∫₀ᵗ f(y, ω)`.
    fn update(&self, y: &Poly<Self::Value>, omega: &Poly<Vec3>) -> Poly<Self::Value>;

    /// Untruncated degree of an update from degree `m` with a degree-`n` fit.
    fn growth(&self, m: usize, n: usize) -> usize;
}

/// `q̇ = ½ q ∘ ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuatNp {
    pub q0: Quaternion,
}

/// `ġ = ω + ½ g×ω + ¼ g (gᵀω)` from `g(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RodNp;

/// `σ̇ = ω + ½ σ×ω [+ σ×(σ×ω)/12]` from `σ(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotNp {
    /// Keeps the third term with `A(|σ|) ≈ 1/12`.
    T3,
    /// Drops the third term.
    T2,
}

impl NpKinematics for QuatNp {
    type Value = Quaternion;

    fn initial(&self) -> Quaternion {
        self.q0
    }

    fn update(&self, q: &Poly<Quaternion>, omega: &Poly<Vec3>) -> Poly<Quaternion> {
        convolve(q, omega, |b, d| b * d.pure()).antiderivative().scale(0.5).add(&Poly::constant(self.q0))
    }

    fn growth(&self, m: usize, n: usize) -> usize {
        m + n + 1
    }
}

impl NpKinematics for RodNp {
    type Value = Vec3;

    fn initial(&self) -> Vec3 {
        Vec3::ZERO
    }

    fn update(&self, g: &Poly<Vec3>, omega: &Poly<Vec3>) -> Poly<Vec3> {
        let dot = convolve(g, omega, Vec3::dot);
        let outer = convolve(g, &dot, |v, s| v * s);
        omega.add(&convolve(g, omega, Vec3::cross).scale(0.5)).add(&outer.scale(0.25)).antiderivative()
    }

    fn growth(&self, m: usize, n: usize) -> usize {
        2 * m + n + 1
    }
}

impl NpKinematics for RotNp {
    type Value = Vec3;

    fn initial(&self) -> Vec3 {
        Vec3::ZERO
    }

    fn update(&self, sigma: &Poly<Vec3>, omega: &Poly<Vec3>) -> Poly<Vec3> {
        let cross = convolve(sigma, omega, Vec3::cross);
        let mut rhs = omega.add(&cross.scale(0.5));
        if *self == RotNp::T3 {
            rhs = rhs.add(&convolve(sigma, &cross, Vec3::cross).scale(1.0 / 12.0));
        }
        rhs.antiderivative()
    }

    fn growth(&self, m: usize, n: usize) -> usize {
        match self {
            RotNp::T3 => 2 * m + n + 1,
            RotNp::T2 => m + n + 1,
        }
    }
}

/// Zeroth iterate for `kin` on the interval of `omega`.
pub fn picard_np_init<K: NpKinematics>(kin: &K, omega: &Poly<Vec3>, m_t: usize) -> NpIterState<K::Value> {
    PicardState {
        iterate: Poly::constant(kin.initial()).with_span(omega.span()),
        iteration: 0,
        m_t,
        dpc: None,
        raw_degree: 0,
    }
}

/// One update followed by truncation to `m_T`. The discrepancy is measured
/// on coefficients in normalized time `t / t_N`.
pub fn picard_np_step<K: NpKinematics>(
    state: &NpIterState<K::Value>,
    omega: &Poly<Vec3>,
    kin: &K,
) -> NpIterState<K::Value> {
    let prev = &state.iterate;
    let raw = kin.update(prev, omega);
    let expected = kin.growth(prev.degree(), omega.degree());
    assert_eq!(raw.degree(), expected, "untruncated Picard degree");
    let next = raw.truncated(state.m_t).with_span(omega.span());
    let dpc = coeff_discrepancy(&next.normalized_coeffs(), &prev.normalized_coeffs());
    PicardState { iterate: next, iteration: state.iteration + 1, m_t: state.m_t, dpc: Some(dpc), raw_degree: expected }
}

/// Iterates to `stop`. Requires `m_T ≥ n + 1` so that the first update is
/// not truncated.
pub fn picard_np_solve<K: NpKinematics>(
    omega: &Poly<Vec3>,
    kin: &K,
    m_t: usize,
    stop: StopRule,
) -> Result<PicardSolution<Poly<K::Value>>> {
    let required = omega.degree() + 1;
    if m_t < required {
        return Err(Error::TruncationTooLow { m_t, required });
    }
    drive(picard_np_init(kin, omega, m_t), |s| picard_np_step(s, omega, kin), stop)
}
