//! Chebyshev series `Σ cᵢ Fᵢ(τ)` on `τ ∈ [−1, 1]`, mapped to the update
//! interval by `t = (1 + τ) span / 2`.

use super::{Coeff, HighestTerm, Poly, Truncate};
use crate::error::{Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

fn check_domain(x: f64) -> Result<()> {
    if x.is_nan() || x.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::OutOfDomain { value: x });
    }
    Ok(())
}

/// `F₀(x), …, F_n(x)` by the three-term recurrence.
pub fn cheb_basis(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(x);
    }
    for i in 1..n {
        let next = 2.0 * x * out[i] - out[i - 1];
        out.push(next);
    }
    out
}

#[cfg(test)]
fn basis_at(i: usize, x: f64) -> f64 {
    cheb_basis(i, x)[i]
}

/// Antiderivative of `Fᵢ` evaluated at `x`, with `∫F₀ = x` and `∫F₁ = x²/2`.
fn antiderivative_at(i: usize, x: f64) -> f64 {
    match i {
        0 => x,
        1 => 0.5 * x * x,
        _ => {
            let f = cheb_basis(i + 1, x);
            f[i + 1] / (2.0 * (i as f64 + 1.0)) - f[i - 1] / (2.0 * (i as f64 - 1.0))
        }
    }
}

/// `∫ₐᵇ Fᵢ(τ) dτ` for `−1 ≤ a ≤ b ≤ 1`.
pub fn cheb_defint(i: usize, a: f64, b: f64) -> Result<f64> {
    check_domain(a)?;
    check_domain(b)?;
    Ok(antiderivative_at(i, b) - antiderivative_at(i, a))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries<T> {
    coeffs: Vec<T>,
    span: f64,
}

impl<T: Coeff> ChebSeries<T> {
    pub fn new(coeffs: Vec<T>, span: f64) -> Self {
        let coeffs = if coeffs.is_empty() { vec![T::ZERO] } else { coeffs };
        Self { coeffs, span }
    }

    pub fn constant(c: T, span: f64) -> Self {
        Self::new(vec![c], span)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or(T::ZERO)
    }

    /// Value at `τ`, rejecting arguments outside `[−1, 1]`.
    pub fn eval(&self, tau: f64) -> Result<T> {
        check_domain(tau)?;
        Ok(self.eval_unchecked(tau))
    }

    /// Recurrence evaluation without the domain check.
    pub fn eval_unchecked(&self, tau: f64) -> T {
        let (mut prev, mut cur) = (1.0, tau);
        let mut acc = self.coeffs[0];
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            if i > 1 {
                let next = 2.0 * tau * cur - prev;
                prev = cur;
                cur = next;
            }
            acc += c * cur;
        }
        acc
    }

    pub fn tau_of(&self, t: f64) -> f64 {
        2.0 * t / self.span - 1.0
    }

    /// Value at interval time `t ∈ [0, span]`.
    pub fn eval_time(&self, t: f64) -> Result<T> {
        self.eval(self.tau_of(t))
    }

    /// Value at the interval end, `τ = 1`, where every `Fᵢ` equals one.
    pub fn end_value(&self) -> T {
        self.coeffs.iter().fold(T::ZERO, |acc, &c| acc + c)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| c * k).collect(), span: self.span }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self { coeffs, span: self.span }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(T) -> U) -> ChebSeries<U> {
        ChebSeries { coeffs: self.coeffs.iter().map(|&c| f(c)).collect(), span: self.span }
    }

    /// `∫₋₁^τ p(τ') dτ'` as a Chebyshev series of one higher degree, using
    /// `∫F₀ = F₁`, `∫F₁ = (F₂ + F₀)/4` and
    /// `∫Fᵢ = F_{i+1}/(2(i+1)) − F_{i−1}/(2(i−1))` for `i ≥ 2`.
    pub fn integral_from_start(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![T::ZERO; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            match i {
                0 => out[1] += c,
                1 => {
                    out[2] += c * 0.25;
                    out[0] += c * 0.25;
                }
                _ => {
                    out[i + 1] += c * (0.5 / (i as f64 + 1.0));
                    out[i - 1] += c * (-0.5 / (i as f64 - 1.0));
                }
            }
        }
        // fix the lower limit: F_k(−1) = (−1)^k
        let at_start = out.iter().enumerate().fold(T::ZERO, |acc, (k, &c)| if k % 2 == 0 { acc + c } else { acc - c });
        out[0] = out[0] - at_start;
        Self { coeffs: out, span: self.span }
    }

    /// Expansion in the monomial basis of interval time `t`.
    pub fn to_normal(&self) -> Poly<T> {
        // monomial coefficients of F_i(τ)
        let n = self.coeffs.len();
        let mut basis: Vec<Vec<f64>> = vec![vec![1.0]];
        if n > 1 {
            basis.push(vec![0.0, 1.0]);
        }
        for i in 1..n.saturating_sub(1) {
            let mut next = vec![0.0; i + 2];
            for (k, &c) in basis[i].iter().enumerate() {
                next[k + 1] += 2.0 * c;
            }
            for (k, &c) in basis[i - 1].iter().enumerate() {
                next[k] -= c;
            }
            basis.push(next);
        }
        let mut in_tau = vec![T::ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            for (k, &b) in basis[i].iter().enumerate() {
                in_tau[k] += c * b;
            }
        }
        // τ = a t + b with a = 2/span, b = −1
        let a = 2.0 / self.span;
        let mut out = vec![T::ZERO; n];
        for (k, &c) in in_tau.iter().enumerate() {
            // (a t − 1)^k = Σ_j C(k, j) a^j t^j (−1)^{k−j}
            let mut binom = 1.0;
            for (j, o) in out.iter_mut().enumerate().take(k + 1) {
                let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
                *o += c * (binom * a.powi(j as i32) * sign);
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
        }
        Poly::new(out).with_span(self.span)
    }
}

/// Product of two series under a bilinear coefficient product, expanded with
/// `F_k F_i = (F_{k+i} + F_{|k−i|}) / 2`.
pub fn cheb_mul<A, B, C>(a: &ChebSeries<A>, b: &ChebSeries<B>, f: impl Fn(A, B) -> C) -> ChebSeries<C>
where
    A: Coeff,
    B: Coeff,
    C: Coeff,
{
    let mut out = vec![C::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
    for (k, &ak) in a.coeffs.iter().enumerate() {
        for (i, &bi) in b.coeffs.iter().enumerate() {
            let half = f(ak, bi) * 0.5;
            out[k + i] += half;
            out[k.abs_diff(i)] += half;
        }
    }
    ChebSeries { coeffs: out, span: a.span }
}

/// Triple product `Σ_s Σ_k Σ_i f(a_s, b_k, c_i) F_s F_k F_i` expanded as
/// `(F_{s+k+i} + F_{|s+k−i|} + F_{|s−k|+i} + F_{||s−k|−i|}) / 4`.
pub fn cheb_triple<A, B, C, D>(
    a: &ChebSeries<A>,
    b: &ChebSeries<B>,
    c: &ChebSeries<C>,
    f: impl Fn(A, B, C) -> D,
) -> ChebSeries<D>
where
    A: Coeff,
    B: Coeff,
    C: Coeff,
    D: Coeff,
{
    let len = a.coeffs.len() + b.coeffs.len() + c.coeffs.len() - 2;
    let mut out = vec![D::ZERO; len];
    for (s, &a_s) in a.coeffs.iter().enumerate() {
        for (k, &b_k) in b.coeffs.iter().enumerate() {
            let sum = s + k;
            let diff = s.abs_diff(k);
            for (i, &c_i) in c.coeffs.iter().enumerate() {
                let q = f(a_s, b_k, c_i) * 0.25;
                out[sum + i] += q;
                out[sum.abs_diff(i)] += q;
                out[diff + i] += q;
                out[diff.abs_diff(i)] += q;
            }
        }
    }
    ChebSeries { coeffs: out, span: a.span }
}

impl<T: Coeff> Truncate for ChebSeries<T> {
    fn truncated(&self, m_t: usize) -> Self {
        let keep = (m_t + 1).min(self.coeffs.len());
        Self { coeffs: self.coeffs[..keep].to_vec(), span: self.span }
    }
}

impl<T: Coeff> HighestTerm for ChebSeries<T> {
    fn highest_term(&self) -> f64 {
        self.coeffs[self.degree()].norm()
    }
}
