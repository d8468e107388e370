use super::{Coeff, HighestTerm, Truncate};

/// `p(t) = Σ cᵢ tⁱ` on the update interval `[0, span]`.
///
/// `span` does not affect evaluation; it scales the highest-term and
/// coefficient-discrepancy measures so that they compare term magnitudes over
/// the interval rather than raw monomial coefficients, which grow like
/// `span⁻ⁱ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
    span: f64,
}

impl<T: Coeff> Poly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![T::ZERO] } else { coeffs };
        Self { coeffs, span: 1.0 }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn with_span(mut self, span: f64) -> Self {
        self.span = span;
        self
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Index of the last stored coefficient (explicit trailing zeros count).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or(T::ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> T {
        let mut acc = T::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// `∫₀ᵗ p`: degree grows by one and the constant term is zero.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(T::ZERO);
        out.extend(self.coeffs.iter().enumerate().map(|(i, &c)| c * (1.0 / (i as f64 + 1.0))));
        Self { coeffs: out, span: self.span }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self { coeffs: vec![T::ZERO], span: self.span };
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect();
        Self { coeffs, span: self.span }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| c * k).collect(), span: self.span }
    }

    /// Coefficient-wise sum, padding the shorter operand.
    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self { coeffs, span: self.span }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(T) -> U) -> Poly<U> {
        Poly { coeffs: self.coeffs.iter().map(|&c| f(c)).collect(), span: self.span }
    }

    /// Coefficients of the polynomial in normalized time `s = t / span`,
    /// i.e. `cᵢ spanⁱ`.
    pub fn normalized_coeffs(&self) -> Vec<T> {
        let mut scale = 1.0;
        self.coeffs
            .iter()
            .map(|&c| {
                let out = c * scale;
                scale *= self.span;
                out
            })
            .collect()
    }
}

/// Cauchy product of two polynomials under a bilinear coefficient product
/// `f` (quaternion product, cross product, dot product, ...).
pub fn convolve<A, B, C>(a: &Poly<A>, b: &Poly<B>, f: impl Fn(A, B) -> C) -> Poly<C>
where
    A: Coeff,
    B: Coeff,
    C: Coeff,
{
    let mut out = vec![C::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
    for (k, &ak) in a.coeffs.iter().enumerate() {
        for (i, &bi) in b.coeffs.iter().enumerate() {
            out[k + i] += f(ak, bi);
        }
    }
    Poly { coeffs: out, span: a.span }
}

impl<T: Coeff> Truncate for Poly<T> {
    fn truncated(&self, m_t: usize) -> Self {
        let keep = (m_t + 1).min(self.coeffs.len());
        Self { coeffs: self.coeffs[..keep].to_vec(), span: self.span }
    }
}

impl<T: Coeff> HighestTerm for Poly<T> {
    fn highest_term(&self) -> f64 {
        let m = self.degree();
        self.coeffs[m].norm() * self.span.powi(m as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attitude::Vec3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn evaluation_basics() {
        let c = Poly::constant(Vec3::new(1.0, 2.0, 3.0));
        assert_eq!(c.eval(-7.5), Vec3::new(1.0, 2.0, 3.0));
        let p = Poly::new(vec![Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)]);
        assert_eq!(p.eval(2.0), Vec3::new(2.0, 0.0, 0.0));
    }

    #[test]
    fn horner_matches_naive_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let coeffs: Vec<Vec3> = (0..8)
            .map(|_| Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let p = Poly::new(coeffs.clone());
        for &t in &[-1.3, -0.2, 0.0, 0.41, 0.97, 1.5] {
            let naive = coeffs.iter().enumerate().fold(Vec3::ZERO, |acc, (i, &c)| acc + c * f64::powi(t, i as i32));
            assert!((p.eval(t) - naive).norm() < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn antiderivative_shape() {
        let d0 = Vec3::new(1.0, -2.0, 0.5);
        let d1 = Vec3::new(0.3, 0.0, 4.0);
        let a = Poly::constant(d0).antiderivative();
        assert_eq!(a.coeffs(), &[Vec3::ZERO, d0]);
        let b = Poly::new(vec![d0, d1]).antiderivative();
        assert_eq!(b.coeffs(), &[Vec3::ZERO, d0, d1 * 0.5]);
        let p = Poly::new(vec![d0, d1, d0 * 3.0, d1 * -1.5, d0 * 0.25]);
        let back = p.antiderivative().derivative();
        for (x, y) in back.coeffs().iter().zip(p.coeffs()) {
            assert!((*x - *y).norm() < 1e-14);
        }
    }

    #[test]
    fn truncation() {
        let p = Poly::new((0..4).map(|i| i as f64 + 1.0).collect::<Vec<f64>>());
        assert_eq!(p.truncated(5), p);
        let long = Poly::new((0..11).map(|i| i as f64 + 1.0).collect::<Vec<f64>>());
        let t = long.truncated(7);
        assert_eq!(t.degree(), 7);
        assert_eq!(t.coeffs(), &long.coeffs()[..8]);
    }

    #[test]
    fn convolution_matches_pointwise_product() {
        let a = Poly::new(vec![1.0, -2.0, 0.5]);
        let b = Poly::new(vec![Vec3::new(1.0, 0.0, 2.0), Vec3::new(0.0, 3.0, -1.0)]);
        let c = convolve(&a, &b, |s, v| v * s);
        assert_eq!(c.degree(), 3);
        for &t in &[-0.7, 0.0, 0.3, 1.1] {
            assert!((c.eval(t) - b.eval(t) * a.eval(t)).norm() < 1e-14);
        }
    }
}
