//! Taylor-series attitude integrators.
//!
//! Each kinematic equation `ẏ = f(y, ω)` is expanded at `t = 0` with the
//! derivatives `y⁽ʲ⁾(0)` computed recursively from lower-order ones by the
//! Leibniz rule `(uv)⁽ʲ⁻¹⁾ = Σᵢ C(j−1, i) u⁽ʲ⁻¹⁻ⁱ⁾ v⁽ⁱ⁾`. The angular-velocity
//! derivatives come from the fitted polynomial, `ω⁽ⁱ⁾(0) = i! dᵢ`.
//!
//! The recursions run in normalized time `s = t / t_N`, where every
//! kinematic equation keeps its form with `ω̃(s) = t_N ω(t_N s)`; this keeps
//! high-order derivatives within floating-point range. Derivatives are stored
//! raw in a [`DerivTable`]; the `1/j!` scaling happens once when the series
//! is assembled.

use crate::attitude::{Quaternion, Vec3};
use crate::poly::normal::convolve;
use crate::poly::{Coeff, Poly};
use crate::stop::StopRule;

/// Power series of `A(|σ|) = (1 − |σ| sin|σ| / (2(1 − cos|σ|))) / |σ|²` in
/// `u = |σ|²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ASeries;

impl ASeries {
    pub const COEFFS: [f64; 6] =
        [1.0 / 12.0, 1.0 / 720.0, 1.0 / 30240.0, 1.0 / 1209600.0, 1.0 / 47900160.0, 691.0 / 1307674368000.0];

    /// Series value at `u = |σ|²`.
    pub fn eval_u(u: f64) -> f64 {
        Self::COEFFS.iter().rev().fold(0.0, |acc, &a| acc * u + a)
    }

    /// `A(angle)`: the series below 0.25 rad, the closed form above.
    pub fn eval(angle: f64) -> f64 {
        let x = angle.abs();
        if x < 0.25 {
            Self::eval_u(x * x)
        } else {
            (1.0 - x * x.sin() / (2.0 * (1.0 - x.cos()))) / (x * x)
        }
    }

    /// `dᵏA/d|σ|ᵏ` at zero; odd orders vanish.
    pub fn derivative_at_zero(k: usize) -> f64 {
        if k % 2 == 1 || k / 2 >= Self::COEFFS.len() {
            return 0.0;
        }
        Self::COEFFS[k / 2] * factorial(k)
    }
}

/// `A(|σ(t)|)` as a time polynomial truncated at degree `m`, built by
/// substituting `u(t) = σ(t)·σ(t)` into [`ASeries`].
pub fn a_series_compose(sigma: &Poly<Vec3>, m: usize) -> Poly<f64> {
    let truncate = |p: Poly<f64>| {
        let mut c = p.into_coeffs();
        c.truncate(m + 1);
        Poly::new(c)
    };
    let u = truncate(convolve(sigma, sigma, Vec3::dot));
    let mut acc = Poly::constant(*ASeries::COEFFS.last().unwrap());
    for &a in ASeries::COEFFS.iter().rev().skip(1) {
        acc = truncate(convolve(&acc, &u, |x, y| x * y)).add(&Poly::constant(a));
    }
    acc.with_span(sigma.span())
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Pascal's triangle, grown on demand.
#[derive(Debug, Clone, Default)]
struct Binomials {
    rows: Vec<Vec<f64>>,
}

impl Binomials {
    fn get(&mut self, n: usize, k: usize) -> f64 {
        while self.rows.len() <= n {
            let next = match self.rows.last() {
                None => vec![1.0],
                Some(prev) => {
                    let mut row = vec![1.0; prev.len() + 1];
                    for i in 1..prev.len() {
                        row[i] = prev[i - 1] + prev[i];
                    }
                    row
                }
            };
            self.rows.push(next);
        }
        self.rows[n][k]
    }
}

/// Raw derivatives at the interval start in normalized time,
/// `values[j] = dʲy/dsʲ(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivTable<T> {
    pub values: Vec<T>,
}

impl<T: Coeff> DerivTable<T> {
    /// `Σ y⁽ʲ⁾(0) (t / span)ʲ / j!` as a polynomial in `t`.
    pub fn to_poly(&self, span: f64) -> Poly<T> {
        let mut fact = 1.0;
        let coeffs = self
            .values
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                if j > 0 {
                    fact *= j as f64 * span;
                }
                v * (1.0 / fact)
            })
            .collect();
        Poly::new(coeffs).with_span(span)
    }
}

/// Raw derivatives of `ω̃`, `i! dᵢ t_Nⁱ⁺¹`, zero past the fit degree.
#[derive(Debug, Clone)]
struct RateDerivatives {
    raw: Vec<Vec3>,
    span: f64,
}

impl RateDerivatives {
    fn new(omega: &Poly<Vec3>) -> Self {
        let span = omega.span();
        let mut fact = span;
        let raw = omega
            .normalized_coeffs()
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if i > 0 {
                    fact *= i as f64;
                }
                d * fact
            })
            .collect();
        Self { raw, span }
    }

    fn at(&self, i: usize) -> Vec3 {
        self.raw.get(i).copied().unwrap_or(Vec3::ZERO)
    }
}

/// One kinematic equation expanded order by order.
pub trait DerivativeRecursion {
    type Value: Coeff;

    /// Interval length `t_N`.
    fn span(&self) -> f64;

    fn initial(&self) -> Self::Value;

    /// `y⁽ʲ⁾(0)` for `j ≥ 1`, given `table = [y(0), …, y⁽ʲ⁻¹⁾(0)]`.
    fn next(&mut self, j: usize, table: &[Self::Value]) -> Self::Value;
}

/// `q̇ = ½ q ∘ ω`: `q⁽ʲ⁾ = ½ Σᵢ C(j−1, i) q⁽ʲ⁻¹⁻ⁱ⁾ ∘ ω⁽ⁱ⁾`.
#[derive(Debug, Clone)]
pub struct QuatRecursion {
    q0: Quaternion,
    rate: RateDerivatives,
    binom: Binomials,
}

impl QuatRecursion {
    pub fn new(omega: &Poly<Vec3>, q0: Quaternion) -> Self {
        Self { q0, rate: RateDerivatives::new(omega), binom: Binomials::default() }
    }
}

impl DerivativeRecursion for QuatRecursion {
    type Value = Quaternion;

    fn span(&self) -> f64 {
        self.rate.span
    }

    fn initial(&self) -> Quaternion {
        self.q0
    }

    fn next(&mut self, j: usize, q: &[Quaternion]) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        for i in 0..j {
            let w = self.rate.at(i);
            if w == Vec3::ZERO {
                continue;
            }
            acc += (q[j - 1 - i] * w.pure()) * self.binom.get(j - 1, i);
        }
        acc * 0.5
    }
}

/// `ġ = ω + ½ g×ω + ¼ g (gᵀω)` from `g(0) = 0`.
#[derive(Debug, Clone)]
pub struct RodRecursion {
    rate: RateDerivatives,
    binom: Binomials,
    /// `(gᵀω)⁽ⁱ⁾(0)`
    dot: Vec<f64>,
}

impl RodRecursion {
    pub fn new(omega: &Poly<Vec3>) -> Self {
        Self { rate: RateDerivatives::new(omega), binom: Binomials::default(), dot: Vec::new() }
    }
}

impl DerivativeRecursion for RodRecursion {
    type Value = Vec3;

    fn span(&self) -> f64 {
        self.rate.span
    }

    fn initial(&self) -> Vec3 {
        Vec3::ZERO
    }

    fn next(&mut self, j: usize, g: &[Vec3]) -> Vec3 {
        let i_new = j - 1;
        let s: f64 = (0..=i_new).map(|k| self.binom.get(i_new, k) * g[i_new - k].dot(self.rate.at(k))).sum();
        self.dot.push(s);

        let mut cross = Vec3::ZERO;
        let mut outer = Vec3::ZERO;
        for i in 0..j {
            let c = self.binom.get(j - 1, i);
            cross += g[j - 1 - i].cross(self.rate.at(i)) * c;
            outer += g[j - 1 - i] * (c * self.dot[i]);
        }
        self.rate.at(j - 1) + cross * 0.5 + outer * 0.25
    }
}

/// Which rotation-vector rate equation to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotVariant {
    /// `σ̇ = ω + ½ σ×ω + A(|σ|) σ×(σ×ω)`.
    Full,
    /// `σ̇ ≈ ω + ½ σ×ω`.
    T2,
    /// `σ̇ ≈ ω + ½ (∫₀ᵗω) × ω`.
    T2s,
}

#[derive(Debug, Clone)]
pub struct RotRecursion {
    variant: RotVariant,
    rate: RateDerivatives,
    binom: Binomials,
    /// `(σ×ω)⁽ᵏ⁾(0)`
    cross: Vec<Vec3>,
    /// `(σ×(σ×ω))⁽ⁱ⁾(0)`
    double: Vec<Vec3>,
}

impl RotRecursion {
    pub fn new(omega: &Poly<Vec3>, variant: RotVariant) -> Self {
        Self {
            variant,
            rate: RateDerivatives::new(omega),
            binom: Binomials::default(),
            cross: Vec::new(),
            double: Vec::new(),
        }
    }

    /// Raw time derivatives `A⁽ᵏ⁾(0)`, `k ≤ j − 1`, from the partial series.
    fn a_derivatives(&self, sigma: &[Vec3], order: usize) -> Vec<f64> {
        let partial = DerivTable { values: sigma.to_vec() }.to_poly(1.0);
        let a = a_series_compose(&partial, order);
        let mut fact = 1.0;
        (0..=order)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                a.coeff(k) * fact
            })
            .collect()
    }
}

impl DerivativeRecursion for RotRecursion {
    type Value = Vec3;

    fn span(&self) -> f64 {
        self.rate.span
    }

    fn initial(&self) -> Vec3 {
        Vec3::ZERO
    }

    fn next(&mut self, j: usize, sigma: &[Vec3]) -> Vec3 {
        let w = &self.rate;
        if self.variant == RotVariant::T2s {
            // (∫ω)⁽ʲ⁻¹⁻ⁱ⁾ = ω⁽ʲ⁻²⁻ⁱ⁾, and ω⁽⁻¹⁾(0) = 0
            let mut acc = Vec3::ZERO;
            for i in 0..j.saturating_sub(1) {
                acc += w.at(j - 2 - i).cross(w.at(i)) * self.binom.get(j - 1, i);
            }
            return w.at(j - 1) + acc * 0.5;
        }

        let k_new = j - 1;
        let p: Vec3 =
            (0..=k_new).fold(Vec3::ZERO, |acc, s| acc + sigma[k_new - s].cross(w.at(s)) * self.binom.get(k_new, s));
        self.cross.push(p);
        let base = w.at(j - 1) + self.cross[j - 1] * 0.5;
        if self.variant == RotVariant::T2 {
            return base;
        }

        let r: Vec3 = (0..=k_new)
            .fold(Vec3::ZERO, |acc, k| acc + sigma[k_new - k].cross(self.cross[k]) * self.binom.get(k_new, k));
        self.double.push(r);
        let a = self.a_derivatives(sigma, j - 1);
        let mut third = Vec3::ZERO;
        for i in 0..j {
            third += self.double[i] * (self.binom.get(j - 1, i) * a[j - 1 - i]);
        }
        base + third
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorOutcome<T> {
    pub derivs: DerivTable<T>,
    pub poly: Poly<T>,
    /// Highest derivative order computed.
    pub order: usize,
    /// Whether a tolerance rule was met before reaching `m_t`.
    pub converged: bool,
}

/// Expand up to order `m_t`, stopping early under a tolerance rule once two
/// consecutive highest-order terms `|y⁽ʲ⁾(0)| t_Nʲ / j!` fall below the
/// tolerance. `StopRule::Iterations(k)` fixes the order at `min(k, m_t)`.
pub fn taylor_solve<R: DerivativeRecursion>(mut rec: R, m_t: usize, stop: StopRule) -> TaylorOutcome<R::Value> {
    let (max_order, tol) = match stop {
        StopRule::Iterations(k) => (k.min(m_t), None),
        other => (m_t, other.tolerance()),
    };
    let mut table = vec![rec.initial()];
    let span = rec.span();
    let mut scale = 1.0; // 1 / j!
    let mut quiet = 0;
    let mut converged = tol.is_none();
    for j in 1..=max_order {
        let d = rec.next(j, &table);
        table.push(d);
        scale /= j as f64;
        if let Some(tol) = tol {
            if (d * scale).norm() < tol {
                quiet += 1;
                if quiet == 2 {
                    converged = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }
    let derivs = DerivTable { values: table };
    let poly = derivs.to_poly(span);
    let order = derivs.values.len() - 1;
    TaylorOutcome { derivs, poly, order, converged }
}

/// Quaternion Taylor series of order `m`.
pub fn taylor_quat(omega: &Poly<Vec3>, q0: Quaternion, m: usize) -> Poly<Quaternion> {
    taylor_solve(QuatRecursion::new(omega, q0), m, StopRule::Iterations(m.max(1))).poly.truncated_to(m)
}

/// Rodrigues-vector Taylor series of order `m` from `g(0) = 0`.
pub fn taylor_rod(omega: &Poly<Vec3>, m: usize) -> Poly<Vec3> {
    taylor_solve(RodRecursion::new(omega), m, StopRule::Iterations(m.max(1))).poly.truncated_to(m)
}

/// Rotation-vector Taylor series of order `m` from `σ(0) = 0`.
pub fn taylor_rot(omega: &Poly<Vec3>, m: usize, variant: RotVariant) -> Poly<Vec3> {
    taylor_solve(RotRecursion::new(omega, variant), m, StopRule::Iterations(m.max(1))).poly.truncated_to(m)
}

trait TruncatedTo {
    fn truncated_to(self, m: usize) -> Self;
}

impl<T: Coeff> TruncatedTo for Poly<T> {
    fn truncated_to(self, m: usize) -> Self {
        use crate::poly::Truncate;
        self.truncated(m)
    }
}
