//! Angular-velocity polynomial fitted from one batch of gyro samples.
//!
//! Samples sit at `t_k = kT`, `k = 1..=N`, over the update interval
//! `[0, t_N]`. Rate samples are point values `ω(t_k)`; increment samples are
//! `∫ω` over `[t_{k−1}, t_k]`. Every system is solved by Householder QR in
//! normalized time `s = t / t_N`, which keeps the columns comparably scaled.

use nalgebra::{DMatrix, Dyn, OMatrix, U3};

use crate::attitude::Vec3;
use crate::error::{Error, Result};
use crate::poly::{cheb_basis, cheb_defint, ChebSeries, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleKind {
    /// Angular rate, rad/s.
    Rate,
    /// Angular increment over one sampling interval, rad.
    Increment,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GyroBatch {
    pub kind: SampleKind,
    pub samples: Vec<Vec3>,
    /// Sampling interval `T`, s.
    pub interval: f64,
}

impl GyroBatch {
    pub fn new(kind: SampleKind, samples: Vec<Vec3>, interval: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidBatch("no samples".into()));
        }
        if !(interval > 0.0 && interval.is_finite()) {
            return Err(Error::InvalidBatch(format!("sampling interval {interval} must be positive")));
        }
        Ok(Self { kind, samples, interval })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Update interval length `t_N = N T`.
    pub fn span(&self) -> f64 {
        self.samples.len() as f64 * self.interval
    }

    /// Default fit degree `n = N − 1`.
    pub fn full_degree(&self) -> usize {
        self.samples.len() - 1
    }

    fn expect(&self, kind: SampleKind, degree: usize) -> Result<()> {
        if self.kind != kind {
            return Err(Error::KindMismatch { expected: kind, found: self.kind });
        }
        if degree + 1 > self.samples.len() {
            return Err(Error::DegreeTooHigh { degree, samples: self.samples.len() });
        }
        Ok(())
    }
}

/// Least-squares solution of `A X = B` for three right-hand sides.
fn solve_least_squares(a: DMatrix<f64>, rhs: &[Vec3]) -> Result<Vec<Vec3>> {
    let cols = a.ncols();
    let b = OMatrix::<f64, Dyn, U3>::from_fn(rhs.len(), |r, c| rhs[r].to_array()[c]);
    let qr = a.qr();
    let r = qr.r();
    let max_diag = (0..cols).map(|i| r[(i, i)].abs()).fold(0.0, f64::max);
    let rank = (0..cols).filter(|&i| r[(i, i)].abs() > max_diag * 1e-13 * cols as f64).count();
    if rank < cols {
        return Err(Error::RankDeficient { rank, columns: cols });
    }
    let qtb = qr.q().transpose() * b;
    let x = r.solve_upper_triangular(&qtb).ok_or(Error::RankDeficient { rank: 0, columns: cols })?;
    Ok((0..cols).map(|i| Vec3::new(x[(i, 0)], x[(i, 1)], x[(i, 2)])).collect())
}

fn unnormalize(coeffs: Vec<Vec3>, span: f64) -> Poly<Vec3> {
    let mut scale = 1.0;
    let coeffs = coeffs
        .into_iter()
        .map(|c| {
            let out = c / scale;
            scale *= span;
            out
        })
        .collect();
    Poly::new(coeffs).with_span(span)
}

/// Fit `ω(t) = Σ dᵢ tⁱ` to rate samples (Vandermonde system).
pub fn fit_normal_rates(batch: &GyroBatch, degree: usize) -> Result<Poly<Vec3>> {
    batch.expect(SampleKind::Rate, degree)?;
    let n = batch.len();
    let a = DMatrix::from_fn(n, degree + 1, |k, i| ((k + 1) as f64 / n as f64).powi(i as i32));
    let d = solve_least_squares(a, &batch.samples)?;
    Ok(unnormalize(d, batch.span()))
}

/// Fit `ω(t) = Σ dᵢ tⁱ` to increment samples through the integrated monomials
/// `(t_k^{i+1} − t_{k−1}^{i+1}) / (i + 1)`.
pub fn fit_normal_increments(batch: &GyroBatch, degree: usize) -> Result<Poly<Vec3>> {
    batch.expect(SampleKind::Increment, degree)?;
    let n = batch.len();
    let span = batch.span();
    let a = DMatrix::from_fn(n, degree + 1, |k, i| {
        let hi = ((k + 1) as f64 / n as f64).powi(i as i32 + 1);
        let lo = (k as f64 / n as f64).powi(i as i32 + 1);
        (hi - lo) / (i as f64 + 1.0)
    });
    let rhs: Vec<Vec3> = batch.samples.iter().map(|&v| v / span).collect();
    let d = solve_least_squares(a, &rhs)?;
    Ok(unnormalize(d, span))
}

fn sample_tau(k: usize, n: usize) -> f64 {
    2.0 * k as f64 / n as f64 - 1.0
}

/// Fit `ω(τ) = Σ cᵢ Fᵢ(τ)` to rate samples.
pub fn fit_cheb_rates(batch: &GyroBatch, degree: usize) -> Result<ChebSeries<Vec3>> {
    batch.expect(SampleKind::Rate, degree)?;
    let n = batch.len();
    let rows: Vec<Vec<f64>> = (1..=n).map(|k| cheb_basis(degree, sample_tau(k, n))).collect();
    let a = DMatrix::from_fn(n, degree + 1, |k, i| rows[k][i]);
    let c = solve_least_squares(a, &batch.samples)?;
    Ok(ChebSeries::new(c, batch.span()))
}

/// Fit `ω(τ) = Σ cᵢ Fᵢ(τ)` to increments using
/// `Δθ_k = (t_N/2) Σ cᵢ G_{i,[τ_{k−1}, τ_k]}`.
pub fn fit_cheb_increments(batch: &GyroBatch, degree: usize) -> Result<ChebSeries<Vec3>> {
    batch.expect(SampleKind::Increment, degree)?;
    let n = batch.len();
    let span = batch.span();
    let mut a = DMatrix::zeros(n, degree + 1);
    for k in 0..n {
        let (lo, hi) = (sample_tau(k, n), sample_tau(k + 1, n));
        for i in 0..=degree {
            a[(k, i)] = cheb_defint(i, lo, hi)?;
        }
    }
    let rhs: Vec<Vec3> = batch.samples.iter().map(|&v| v * (2.0 / span)).collect();
    let c = solve_least_squares(a, &rhs)?;
    Ok(ChebSeries::new(c, span))
}

/// Normal-basis fit for either sample kind.
pub fn fit_normal(batch: &GyroBatch, degree: usize) -> Result<Poly<Vec3>> {
    match batch.kind {
        SampleKind::Rate => fit_normal_rates(batch, degree),
        SampleKind::Increment => fit_normal_increments(batch, degree),
    }
}

/// Chebyshev-basis fit for either sample kind.
pub fn fit_cheb(batch: &GyroBatch, degree: usize) -> Result<ChebSeries<Vec3>> {
    match batch.kind {
        SampleKind::Rate => fit_cheb_rates(batch, degree),
        SampleKind::Increment => fit_cheb_increments(batch, degree),
    }
}
