//! Classical coning motion: analytic truth, gyro sample synthesis and drift
//! accumulation for any [`Algorithm`].
//!
//! The body attitude is `q(t) = cos(α/2) + sin(α/2)[0, cos Ωt, sin Ωt]`,
//! `Ω = 2π f_c`. Sample `k ≥ 1` sits at `t_k = k / f_s`; update interval `i`
//! covers samples `iN + 1 ..= (i + 1)N`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algorithm::{Algorithm, Family, Parameter};
use crate::attitude::{attitude_error, quat_from_rodrigues, quat_from_rotvec, Quaternion, Vec3};
use crate::baselines::{classic_three_sample, classic_two_sample};
use crate::error::{Error, Result};
use crate::fit::{fit_cheb, fit_normal, GyroBatch, SampleKind};
use crate::picard_cheb::{picard_cheb_solve, QuatCheb, RodCheb, RotCheb};
use crate::picard_np::{picard_np_solve, QuatNp, RodNp, RotNp};
use crate::stop::StopRule;
use crate::taylor::{taylor_solve, QuatRecursion, RodRecursion, RotRecursion, RotVariant};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConingParams {
    /// Half-angle, rad.
    pub alpha: f64,
    /// Coning frequency, Hz.
    pub fc: f64,
    /// Sampling frequency, Hz.
    pub fs: f64,
    /// Samples per update interval.
    pub samples: usize,
    /// Run length, s.
    pub duration: f64,
}

impl ConingParams {
    pub fn new(alpha: f64, fc: f64, fs: f64, samples: usize, duration: f64) -> Result<Self> {
        let p = Self { alpha, fc, fs, samples, duration };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |field: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(field, format!("must be positive, got {v}")))
            }
        };
        positive("fc", self.fc)?;
        positive("fs", self.fs)?;
        positive("duration", self.duration)?;
        if !self.alpha.is_finite() {
            return Err(Error::config("alpha", "must be finite"));
        }
        if self.samples == 0 {
            return Err(Error::config("N", "must be at least 1"));
        }
        if self.intervals() == 0 {
            return Err(Error::config("duration", "shorter than one update interval"));
        }
        Ok(())
    }

    pub fn omega_c(&self) -> f64 {
        2.0 * PI * self.fc
    }

    pub fn sample_time(&self, k: usize) -> f64 {
        k as f64 / self.fs
    }

    /// Full update intervals within `duration`.
    pub fn intervals(&self) -> usize {
        let total = (self.duration * self.fs * (1.0 + 1e-12)).floor() as usize;
        total / self.samples
    }

    /// `f_c / f_s`.
    pub fn relative_frequency(&self) -> f64 {
        self.fc / self.fs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseParams {
    /// Angle random walk, rad/√s.
    pub arw: f64,
    pub seed: u64,
}

impl NoiseParams {
    pub fn none() -> Self {
        Self::default()
    }

    /// From an angle random walk in deg/√h.
    pub fn from_deg_per_root_hour(arw: f64, seed: u64) -> Self {
        Self { arw: arw.to_radians() / 60.0, seed }
    }

    /// Unit-variance normal triple for global sample `k`, identical for every
    /// algorithm and update size sharing the seed.
    fn unit_triple(&self, k: usize) -> Vec3 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k as u64);
        Vec3::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal))
    }
}

pub fn coning_rate(p: &ConingParams, t: f64) -> Vec3 {
    let w = p.omega_c();
    let (sa, half) = (p.alpha.sin(), (p.alpha / 2.0).sin());
    let (s, c) = (w * t).sin_cos();
    Vec3::new(-2.0 * half * half, -sa * s, sa * c) * w
}

/// `∫ω` over `[t0, t1]` in closed form.
pub fn coning_increment(p: &ConingParams, t0: f64, t1: f64) -> Vec3 {
    let w = p.omega_c();
    let (sa, half) = (p.alpha.sin(), (p.alpha / 2.0).sin());
    // product forms avoid cancellation for short intervals
    let d = (w * (t1 - t0) / 2.0).sin();
    let (sm, cm) = (w * (t1 + t0) / 2.0).sin_cos();
    Vec3::new(-2.0 * half * half * w * (t1 - t0), -2.0 * sa * sm * d, 2.0 * sa * cm * d)
}

pub fn coning_true_quat(p: &ConingParams, t: f64) -> Quaternion {
    let (s, c) = (p.omega_c() * t).sin_cos();
    let (sh, ch) = (p.alpha / 2.0).sin_cos();
    Quaternion::from_components(ch, 0.0, sh * c, sh * s)
}

/// Gyro samples of update interval `index`.
pub fn synth_batch(p: &ConingParams, index: usize, kind: SampleKind, noise: &NoiseParams) -> Result<GyroBatch> {
    let t = 1.0 / p.fs;
    let first = index * p.samples + 1;
    let samples = (first..first + p.samples)
        .map(|k| {
            let clean = match kind {
                SampleKind::Rate => coning_rate(p, p.sample_time(k)),
                SampleKind::Increment => coning_increment(p, p.sample_time(k - 1), p.sample_time(k)),
            };
            if noise.arw == 0.0 {
                return clean;
            }
            let sd = match kind {
                SampleKind::Rate => noise.arw / t.sqrt(),
                SampleKind::Increment => noise.arw * t.sqrt(),
            };
            clean + noise.unit_triple(k) * sd
        })
        .collect();
    GyroBatch::new(kind, samples, t)
}

/// Algorithm choice plus its numerical settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgoConfig {
    pub algorithm: Algorithm,
    /// Truncation degree (series order for Taylor methods).
    pub m_t: usize,
    pub stop: StopRule,
    /// Fit degree; `N − 1` when unset.
    pub fit_degree: Option<usize>,
    /// Interpolation nodes for the exact Chebyshev rotation-vector method.
    pub nodes: Option<usize>,
    /// Quaternion methods start from the previous attitude instead of the
    /// identity.
    pub carry_attitude: bool,
}

impl AlgoConfig {
    /// Default truncation for `samples` per update and a `1e-14` tolerance.
    pub fn new(algorithm: Algorithm, samples: usize) -> Self {
        Self {
            algorithm,
            m_t: algorithm.default_truncation(samples),
            stop: StopRule::dpc(1e-14),
            fit_degree: None,
            nodes: None,
            carry_attitude: false,
        }
    }

    pub fn with_truncation(mut self, m_t: usize) -> Self {
        self.m_t = m_t;
        self
    }

    pub fn with_stop(mut self, stop: StopRule) -> Self {
        self.stop = stop;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalOutcome {
    pub attitude: Quaternion,
    /// Picard iterations or Taylor order; 0 for closed-form methods.
    pub iterations: usize,
}

/// Advances `q_prev` over the interval covered by `batch`.
pub fn run_interval(batch: &GyroBatch, cfg: &AlgoConfig, q_prev: Quaternion) -> Result<IntervalOutcome> {
    let algo = cfg.algorithm;
    let span = batch.span();
    let degree = cfg.fit_degree.unwrap_or(batch.full_degree());
    let carry = cfg.carry_attitude && algo.parameter() == Parameter::Quaternion;
    let q0 = if carry { q_prev } else { Quaternion::IDENTITY };

    enum Inc {
        Quat(Quaternion),
        Rod(Vec3),
        Rot(Vec3),
    }

    let (inc, iterations) = match algo.family() {
        Family::Classic => {
            let n = algo.fixed_samples().unwrap_or(0);
            if batch.kind != SampleKind::Increment {
                return Err(Error::KindMismatch { expected: SampleKind::Increment, found: batch.kind });
            }
            if batch.len() != n {
                return Err(Error::InvalidBatch(format!("{algo} needs {n} samples, got {}", batch.len())));
            }
            let d = &batch.samples;
            let s = if n == 2 { classic_two_sample(d[0], d[1]) } else { classic_three_sample(d[0], d[1], d[2]) };
            (Inc::Rot(s), 0)
        }
        Family::Taylor => {
            let omega = fit_normal(batch, degree)?;
            match algo {
                Algorithm::QuatTaylor => {
                    let out = taylor_solve(QuatRecursion::new(&omega, q0), cfg.m_t, cfg.stop);
                    (Inc::Quat(out.poly.eval(span)), out.order)
                }
                Algorithm::RodTaylor => {
                    let out = taylor_solve(RodRecursion::new(&omega), cfg.m_t, cfg.stop);
                    (Inc::Rod(out.poly.eval(span)), out.order)
                }
                _ => {
                    let variant = match algo {
                        Algorithm::RotTaylorT2 => RotVariant::T2,
                        Algorithm::RotTaylorT2s => RotVariant::T2s,
                        _ => RotVariant::Full,
                    };
                    let out = taylor_solve(RotRecursion::new(&omega, variant), cfg.m_t, cfg.stop);
                    (Inc::Rot(out.poly.eval(span)), out.order)
                }
            }
        }
        Family::PicardNormal => {
            let omega = fit_normal(batch, degree)?;
            match algo {
                Algorithm::QuatFIterNp => {
                    let s = picard_np_solve(&omega, &QuatNp { q0 }, cfg.m_t, cfg.stop)?;
                    (Inc::Quat(s.poly.eval(span)), s.iterations)
                }
                Algorithm::RodFIterNp => {
                    let s = picard_np_solve(&omega, &RodNp, cfg.m_t, cfg.stop)?;
                    (Inc::Rod(s.poly.eval(span)), s.iterations)
                }
                _ => {
                    let kin = if algo == Algorithm::RotFIterNpT3 { RotNp::T3 } else { RotNp::T2 };
                    let s = picard_np_solve(&omega, &kin, cfg.m_t, cfg.stop)?;
                    (Inc::Rot(s.poly.eval(span)), s.iterations)
                }
            }
        }
        Family::PicardCheb => {
            let omega = fit_cheb(batch, degree)?;
            match algo {
                Algorithm::QuatFIter => {
                    let s = picard_cheb_solve(&omega, &QuatCheb { q0 }, cfg.m_t, cfg.stop)?;
                    (Inc::Quat(s.poly.end_value()), s.iterations)
                }
                Algorithm::RodFIter => {
                    let s = picard_cheb_solve(&omega, &RodCheb, cfg.m_t, cfg.stop)?;
                    (Inc::Rod(s.poly.end_value()), s.iterations)
                }
                _ => {
                    let kin = match algo {
                        Algorithm::RotFIterT3 => RotCheb::T3,
                        Algorithm::RotFIterT2 => RotCheb::T2,
                        _ => RotCheb::Full { nodes: cfg.nodes },
                    };
                    let s = picard_cheb_solve(&omega, &kin, cfg.m_t, cfg.stop)?;
                    (Inc::Rot(s.poly.end_value()), s.iterations)
                }
            }
        }
    };

    let attitude = match inc {
        Inc::Quat(q) if carry => q.normalize(),
        Inc::Quat(q) => q_prev * q.normalize(),
        Inc::Rod(g) => q_prev * quat_from_rodrigues(g),
        Inc::Rot(s) => q_prev * quat_from_rotvec(s),
    };
    Ok(IntervalOutcome { attitude, iterations })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftOutcome {
    /// Attitude error at the end of the last full interval, rad.
    pub drift: f64,
    pub iterations_mean: f64,
    pub intervals: usize,
}

/// Steps every full update interval from the true initial attitude and
/// reports the final attitude error.
pub fn accumulate_drift(
    p: &ConingParams,
    cfg: &AlgoConfig,
    noise: &NoiseParams,
    kind: SampleKind,
) -> Result<DriftOutcome> {
    p.validate()?;
    let intervals = p.intervals();
    let mut q = coning_true_quat(p, 0.0);
    let mut iterations = 0usize;
    for index in 0..intervals {
        let step = synth_batch(p, index, kind, noise).and_then(|b| run_interval(&b, cfg, q));
        let out = step.map_err(|e| Error::Interval { index, source: Box::new(e) })?;
        q = out.attitude;
        iterations += out.iterations;
    }
    let end = p.sample_time(intervals * p.samples);
    Ok(DriftOutcome {
        drift: attitude_error(coning_true_quat(p, end), q),
        iterations_mean: iterations as f64 / intervals as f64,
        intervals,
    })
}
