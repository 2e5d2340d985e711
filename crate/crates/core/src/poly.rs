//! Complex polynomial arithmetic and simultaneous root finding.
//!
//! The solver is Aberth-Ehrlich iteration from staggered circular starts,
//! with deterministic restarts and a Durand-Kerner pass as fallback. Roots
//! are accepted only when the relative backward residual is small, so
//! clustered roots come back as tight clusters rather than silent garbage.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("polynomial degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("cannot parse complex coefficient {0:?}")]
    ParseCoefficient(String),
    #[error("root finding did not converge; worst relative residual {worst:.3e}")]
    NonConvergence { worst: f64 },
}

/// A monic polynomial `z^d + a_{d-1} z^{d-1} + ... + a_0`, stored by its
/// lower-order coefficients `a_0..a_{d-1}`. Degree at least 2.
#[derive(Clone, PartialEq, Debug)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex64>,
}

impl MonicPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if coeffs.len() < 2 {
            return Err(PolyError::DegreeTooSmall(coeffs.len()));
        }
        Ok(MonicPolynomial { coeffs })
    }

    /// Parses a comma-separated coefficient list "a0,a1,..."; entries are
    /// complex literals like "1", "-2.5", "3i", "1+2i", "1.5e-3-0.2i".
    /// A list of length `degree - 1` means the top coefficient `a_{d-1}` is
    /// zero (a normalized polynomial); length `degree` gives it explicitly.
    pub fn parse(coeffs: &str, degree: usize) -> Result<Self, PolyError> {
        let mut parsed: Vec<Complex64> = Vec::new();
        for tok in coeffs.split(',') {
            let tok = tok.trim().replace(' ', "");
            let c: Complex64 = tok
                .parse()
                .map_err(|_| PolyError::ParseCoefficient(tok.clone()))?;
            parsed.push(c);
        }
        if parsed.len() + 1 == degree {
            parsed.push(Complex64::new(0.0, 0.0));
        }
        if parsed.len() != degree {
            return Err(PolyError::ParseCoefficient(format!(
                "{} coefficients for degree {}",
                parsed.len(),
                degree
            )));
        }
        Self::new(parsed)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Lower coefficients `a_0..a_{d-1}` (the leading coefficient is 1).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Whether the `z^{d-1}` coefficient vanishes exactly.
    pub fn is_normalized(&self) -> bool {
        let top = self.coeffs[self.coeffs.len() - 1];
        top.re == 0.0 && top.im == 0.0
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    /// Value of the derivative at `z`.
    pub fn eval_deriv(&self, z: Complex64) -> Complex64 {
        let d = self.degree();
        let mut acc = Complex64::new(d as f64, 0.0);
        for k in (1..d).rev() {
            acc = acc * z + self.coeffs[k] * (k as f64);
        }
        acc
    }

    /// The derivative as a general polynomial, low to high.
    pub fn derivative(&self) -> Vec<Complex64> {
        let d = self.degree();
        let mut out = Vec::with_capacity(d);
        for k in 1..d {
            out.push(self.coeffs[k] * (k as f64));
        }
        out.push(Complex64::new(d as f64, 0.0));
        out
    }

    /// Substitutes `z -> z + shift`, returning the (still monic) shifted
    /// polynomial via repeated synthetic division.
    pub fn shift(&self, shift: Complex64) -> MonicPolynomial {
        let d = self.degree();
        let mut full: Vec<Complex64> = self.coeffs.clone();
        full.push(Complex64::new(1.0, 0.0));
        // Taylor coefficients at `shift` by repeated synthetic division.
        let mut taylor = vec![Complex64::new(0.0, 0.0); d + 1];
        for t in taylor.iter_mut().take(d + 1) {
            let mut rem = Complex64::new(0.0, 0.0);
            for k in (0..full.len()).rev() {
                let tmp = full[k];
                full[k] = rem;
                rem = rem * shift + tmp;
            }
            *t = rem;
            full.pop();
        }
        taylor.pop(); // leading 1
        MonicPolynomial { coeffs: taylor }
    }

    /// Centers the polynomial: substitutes `z -> z - a_{d-1}/d` so the
    /// `z^{d-1}` coefficient vanishes. Critical values are unchanged, because
    /// the substitution only translates the source plane.
    pub fn normalize(&self) -> MonicPolynomial {
        if self.is_normalized() {
            return self.clone();
        }
        let d = self.degree() as f64;
        let c = self.coeffs[self.coeffs.len() - 1] / d;
        let mut shifted = self.shift(-c);
        // The top coefficient is zero up to rounding; make the invariant exact.
        let top = shifted.coeffs.len() - 1;
        shifted.coeffs[top] = Complex64::new(0.0, 0.0);
        shifted
    }

    /// Fujiwara-type bound: every root of `f - w` with `|w| <= wmax` has
    /// modulus at most this.
    pub fn root_bound(&self, wmax: f64) -> f64 {
        let d = self.degree();
        let mut bound: f64 = 0.0;
        for (k, &a) in self.coeffs.iter().enumerate() {
            let mag = if k == 0 { a.norm() + wmax } else { a.norm() };
            if mag > 0.0 {
                bound = bound.max(mag.powf(1.0 / (d - k) as f64));
            }
        }
        2.0 * bound.max(1.0)
    }
}

/// Configuration for the simultaneous root finder.
#[derive(Clone, Copy, Debug)]
pub struct RootFinderConfig {
    pub max_iterations: usize,
    /// Step-size stopping threshold, relative to `1 + |z|`.
    pub step_tolerance: f64,
    /// Acceptance threshold on the relative backward residual.
    pub residual_tolerance: f64,
}

impl Default for RootFinderConfig {
    fn default() -> Self {
        RootFinderConfig {
            max_iterations: 600,
            step_tolerance: 1e-13,
            residual_tolerance: 1e-8,
        }
    }
}

/// All roots (with multiplicity) of a general polynomial given low-to-high;
/// the leading coefficient must be nonzero.
pub fn all_roots(
    coeffs: &[Complex64],
    cfg: &RootFinderConfig,
) -> Result<Vec<Complex64>, PolyError> {
    let n = coeffs.len() - 1;
    assert!(
        coeffs[n].norm() > 0.0,
        "leading coefficient must be nonzero"
    );
    if n == 0 {
        return Ok(Vec::new());
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / coeffs[n]).collect();

    let mut radius = fujiwara(&monic);
    let mut phase = 0.39;
    for _attempt in 0..4 {
        if let Some(roots) = aberth_pass(&monic, radius, phase, cfg) {
            return Ok(roots);
        }
        phase += 0.83;
        radius *= 1.37;
    }
    if let Some(roots) = durand_kerner_pass(&monic, fujiwara(&monic), 0.11, cfg) {
        return Ok(roots);
    }
    // Report the best residual of a final diagnostic pass.
    let guesses = initial_guesses(&monic, fujiwara(&monic), 0.39);
    let worst = guesses
        .iter()
        .map(|&z| relative_residual(&monic, z))
        .fold(0.0f64, f64::max);
    Err(PolyError::NonConvergence { worst })
}

fn fujiwara(monic: &[Complex64]) -> f64 {
    let n = monic.len() - 1;
    let mut bound: f64 = 0.0;
    for (k, &a) in monic.iter().enumerate().take(n) {
        let mag = a.norm();
        if mag > 0.0 {
            bound = bound.max(mag.powf(1.0 / (n - k) as f64));
        }
    }
    (2.0 * bound).max(0.5)
}

fn initial_guesses(monic: &[Complex64], radius: f64, phase: f64) -> Vec<Complex64> {
    let n = monic.len() - 1;
    (0..n)
        .map(|j| {
            let theta = phase + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

fn eval_poly(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        acc = acc * z + a;
    }
    acc
}

fn eval_poly_deriv(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (1..c.len()).rev() {
        acc = acc * z + c[k] * (k as f64);
    }
    acc
}

fn relative_residual(c: &[Complex64], z: Complex64) -> f64 {
    // Backward-error style scaling with (1 + |z|)^n: a plain sum of
    // |c_k||z|^k would degenerate at exact multiple roots with vanishing
    // lower coefficients (z^m at z near 0).
    let num = eval_poly(c, z).norm();
    let n = c.len() - 1;
    let cmax = c.iter().map(|a| a.norm()).fold(f64::MIN_POSITIVE, f64::max);
    num / (cmax * (1.0 + z.norm()).powi(n as i32))
}

fn aberth_pass(
    monic: &[Complex64],
    radius: f64,
    phase: f64,
    cfg: &RootFinderConfig,
) -> Option<Vec<Complex64>> {
    let n = monic.len() - 1;
    let mut z = initial_guesses(monic, radius, phase);
    for _ in 0..cfg.max_iterations {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let p = eval_poly(monic, z[j]);
            let dp = eval_poly_deriv(monic, z[j]);
            let newton = if dp.norm() > f64::MIN_POSITIVE {
                p / dp
            } else {
                Complex64::new(1e-12, 1e-12)
            };
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..n {
                if i != j {
                    let diff = z[j] - z[i];
                    if diff.norm() > f64::MIN_POSITIVE {
                        s += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let w = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[j] -= w;
            max_step = max_step.max(w.norm() / (1.0 + z[j].norm()));
        }
        if max_step <= cfg.step_tolerance {
            break;
        }
    }
    accept_roots(monic, z, cfg)
}

fn durand_kerner_pass(
    monic: &[Complex64],
    radius: f64,
    phase: f64,
    cfg: &RootFinderConfig,
) -> Option<Vec<Complex64>> {
    let n = monic.len() - 1;
    let mut z = initial_guesses(monic, radius, phase);
    for _ in 0..cfg.max_iterations * 2 {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for i in 0..n {
                if i != j {
                    denom *= z[j] - z[i];
                }
            }
            if denom.norm() < 1e-300 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let w = eval_poly(monic, z[j]) / denom;
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[j] -= w;
            max_step = max_step.max(w.norm() / (1.0 + z[j].norm()));
        }
        if max_step <= cfg.step_tolerance {
            break;
        }
    }
    accept_roots(monic, z, cfg)
}

fn accept_roots(
    monic: &[Complex64],
    roots: Vec<Complex64>,
    cfg: &RootFinderConfig,
) -> Option<Vec<Complex64>> {
    let ok = roots
        .iter()
        .all(|&z| relative_residual(monic, z) <= cfg.residual_tolerance);
    if ok {
        Some(roots)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn eval_and_derivative() {
        // f = z^3 - 3z
        let f = MonicPolynomial::new(vec![c(0.0, 0.0), c(-3.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(f.eval(c(2.0, 0.0)), c(2.0, 0.0));
        assert_eq!(f.eval_deriv(c(1.0, 0.0)), c(0.0, 0.0));
        assert_eq!(f.derivative(), vec![c(-3.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]);
    }

    #[test]
    fn normalize_completes_the_square() {
        // z^2 + 2z -> z^2 - 1
        let f = MonicPolynomial::new(vec![c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        let g = f.normalize();
        assert!(g.is_normalized());
        assert!((g.coeffs()[0] - c(-1.0, 0.0)).norm() < 1e-14);
        let already = MonicPolynomial::new(vec![c(3.0, 1.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(already.normalize(), already);
    }

    #[test]
    fn roots_of_simple_polynomials() {
        let cfg = RootFinderConfig::default();
        // z^2 - 1
        let roots = sorted(all_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &cfg).unwrap());
        assert!((roots[0] - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-10);
        // 3z^2 - 3 (non-monic input)
        let roots = sorted(all_roots(&[c(-3.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)], &cfg).unwrap());
        assert!((roots[0] - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn multiple_roots_come_back_as_clusters() {
        let cfg = RootFinderConfig::default();
        // 5 z^4: quadruple root at 0.
        let coeffs = vec![
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(5.0, 0.0),
        ];
        let roots = all_roots(&coeffs, &cfg).unwrap();
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!(r.norm() < 1e-4, "cluster member {r} too far from 0");
        }
    }

    #[test]
    fn random_polynomials_recover_their_roots() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let cfg = RootFinderConfig::default();
        for _ in 0..50 {
            let n = rng.gen_range(2..=8);
            let true_roots: Vec<Complex64> = (0..n)
                .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            // Expand prod (z - r_i).
            let mut coeffs = vec![c(1.0, 0.0)];
            for &r in &true_roots {
                let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
                for (k, &a) in coeffs.iter().enumerate() {
                    next[k + 1] += a;
                    next[k] -= a * r;
                }
                coeffs = next;
            }
            let found = all_roots(&coeffs, &cfg).unwrap();
            // Match greedily.
            let mut remaining = found;
            for &r in &true_roots {
                let (idx, _) = remaining
                    .iter()
                    .enumerate()
                    .min_by(|a, b| (a.1 - r).norm().partial_cmp(&(b.1 - r).norm()).unwrap())
                    .unwrap();
                assert!((remaining[idx] - r).norm() < 1e-6, "lost root {r}");
                remaining.remove(idx);
            }
        }
    }

    #[test]
    fn parse_coefficients() {
        let f = MonicPolynomial::parse("0,-3", 3).unwrap();
        assert_eq!(f.coeffs(), &[c(0.0, 0.0), c(-3.0, 0.0), c(0.0, 0.0)]);
        assert!(f.is_normalized());
        let g = MonicPolynomial::parse("1+2i, -3i, 0.5", 3).unwrap();
        assert_eq!(g.coeffs(), &[c(1.0, 2.0), c(0.0, -3.0), c(0.5, 0.0)]);
        assert!(MonicPolynomial::parse("1,2,3", 3).is_ok());
        assert!(MonicPolynomial::parse("1,2,3,4", 3).is_err());
        assert!(MonicPolynomial::parse("nope", 2).is_err());
        assert!(MonicPolynomial::parse("1", 1).is_err());
    }

    #[test]
    fn shift_is_exact_on_quadratics() {
        // (z + s)^2 + a1 (z + s) + a0, checked symbolically.
        let f = MonicPolynomial::new(vec![c(2.0, -1.0), c(3.0, 0.5)]).unwrap();
        let s = c(0.25, -0.75);
        let g = f.shift(s);
        let a1 = c(3.0, 0.5) + s * 2.0;
        let a0 = s * s + c(3.0, 0.5) * s + c(2.0, -1.0);
        assert!((g.coeffs()[1] - a1).norm() < 1e-14);
        assert!((g.coeffs()[0] - a0).norm() < 1e-14);
    }
}
