//! Predictor-corrector continuation of polynomial fibers.
//!
//! Given the `d` roots of `f(z) = w0`, [`track_path`] follows them as `w`
//! moves along a path in the target plane: an Euler predictor through
//! `dz/dw = 1/f'(z)` and a Newton corrector on `f(z) = w`, with step halving
//! whenever Newton stalls or two tracked roots come within the separation
//! guard. The permutation of the fiber is read off at the end by nearest
//! matching.

use num_complex::Complex64;

use super::loops::PathPiece;
use super::MonodromyError;
use crate::poly::MonicPolynomial;

/// Tracking tolerances. `newton_tol` is the residual acceptance threshold
/// (relative to `1 + |w|`), `min_separation` the pairwise root guard
/// (relative to the fiber scale).
#[derive(Clone, Copy, Debug)]
pub struct TrackerConfig {
    pub newton_tol: f64,
    pub min_separation: f64,
    pub max_steps: usize,
    pub max_newton_iters: usize,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            newton_tol: 1e-12,
            min_separation: 1e-4,
            max_steps: 100_000,
            max_newton_iters: 16,
        }
    }
}

/// Follows the fiber along the concatenated pieces; returns the final root
/// positions, in the same order as `start`.
pub fn track_path(
    f: &MonicPolynomial,
    start: &[Complex64],
    pieces: &[PathPiece],
    cfg: &TrackerConfig,
) -> Result<Vec<Complex64>, MonodromyError> {
    let mut roots = start.to_vec();
    let mut steps_used = 0usize;
    for (piece_idx, piece) in pieces.iter().enumerate() {
        let mut t = 0.0f64;
        let mut dt = 0.05f64;
        while t < 1.0 {
            if steps_used >= cfg.max_steps {
                return Err(MonodromyError::Tracking {
                    piece: piece_idx,
                    t,
                    reason: format!("step budget of {} exhausted", cfg.max_steps),
                });
            }
            steps_used += 1;
            let t_next = (t + dt).min(1.0);
            let w_now = piece.at(t);
            let w_next = piece.at(t_next);
            match step(f, &roots, w_now, w_next, cfg) {
                Some(next) => {
                    roots = next;
                    t = t_next;
                    dt = (dt * 1.5).min(0.1);
                }
                None => {
                    dt *= 0.5;
                    if dt < 1e-12 {
                        return Err(MonodromyError::Tracking {
                            piece: piece_idx,
                            t,
                            reason: "step size underflow: roots collide or Newton stalls".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(roots)
}

fn step(
    f: &MonicPolynomial,
    roots: &[Complex64],
    w_now: Complex64,
    w_next: Complex64,
    cfg: &TrackerConfig,
) -> Option<Vec<Complex64>> {
    let dw = w_next - w_now;
    let tol = cfg.newton_tol * (1.0 + w_next.norm());
    // No root may move more than a fraction of the current fiber separation
    // in one accepted step; larger motions risk silently exchanging two
    // sheets across a nearby branch cut.
    let mut start_sep = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            start_sep = start_sep.min((roots[i] - roots[j]).norm());
        }
    }
    let move_cap = 0.25 * start_sep;
    let mut out = Vec::with_capacity(roots.len());
    for &z0 in roots {
        let dp = f.eval_deriv(z0);
        let mut z = if dp.norm() > f64::MIN_POSITIVE {
            z0 + dw / dp
        } else {
            z0
        };
        let mut converged = false;
        for _ in 0..cfg.max_newton_iters {
            let resid = f.eval(z) - w_next;
            if resid.norm() <= tol {
                converged = true;
                break;
            }
            let dz = f.eval_deriv(z);
            if dz.norm() <= f64::MIN_POSITIVE {
                return None;
            }
            z -= resid / dz;
            if !z.re.is_finite() || !z.im.is_finite() {
                return None;
            }
        }
        if !converged {
            return None;
        }
        if (z - z0).norm() > move_cap {
            return None;
        }
        out.push(z);
    }
    // Separation guard: reject the step if two tracked roots approach.
    let scale = out.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let guard = cfg.min_separation * scale;
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if (out[i] - out[j]).norm() < guard {
                return None;
            }
        }
    }
    Some(out)
}

/// Matches each entry of `end` to its nearest entry of `reference`,
/// requiring an unambiguous bijection: `result[i] = j` means the root that
/// started at `reference[i]`... ended at the position `reference[j]`.
pub fn match_fiber(
    end: &[Complex64],
    reference: &[Complex64],
) -> Result<Vec<usize>, MonodromyError> {
    let n = end.len();
    let mut min_sep = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            min_sep = min_sep.min((reference[i] - reference[j]).norm());
        }
    }
    let mut used = vec![false; n];
    let mut out = vec![0usize; n];
    for (i, &e) in end.iter().enumerate() {
        let (j, dist) = reference
            .iter()
            .enumerate()
            .map(|(j, &r)| (j, (e - r).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite distances"))
            .expect("nonempty fiber");
        if n > 1 && dist > 0.25 * min_sep {
            return Err(MonodromyError::FiberMatching(format!(
                "endpoint {e} is {dist:.3e} away from its nearest fiber point (separation {min_sep:.3e})"
            )));
        }
        if used[j] {
            return Err(MonodromyError::FiberMatching(
                "two tracked roots matched the same fiber point".into(),
            ));
        }
        used[j] = true;
        out[i] = j;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{all_roots, RootFinderConfig};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tracking_a_trivial_path_is_identity() {
        let f = MonicPolynomial::new(vec![c(-1.0, 0.0), c(0.0, 0.0)]).unwrap(); // z^2 - 1
        let w0 = c(0.0, -1.0);
        let mut coeffs: Vec<Complex64> = f.coeffs().to_vec();
        coeffs[0] -= w0;
        coeffs.push(c(1.0, 0.0));
        let fiber = all_roots(&coeffs, &RootFinderConfig::default()).unwrap();
        let path = [PathPiece::Line { from: w0, to: w0 }];
        let end = track_path(&f, &fiber, &path, &TrackerConfig::default()).unwrap();
        let perm = match_fiber(&end, &fiber).unwrap();
        assert_eq!(perm, vec![0, 1]);
    }

    #[test]
    fn fiber_matching_rejects_ambiguity() {
        let reference = [c(0.0, 0.0), c(1.0, 0.0)];
        let end = [c(0.5, 0.4), c(1.0, 0.0)];
        assert!(match_fiber(&end, &reference).is_err());
        let good = [c(1.0, 0.01), c(0.01, 0.0)];
        assert_eq!(match_fiber(&good, &reference).unwrap(), vec![1, 0]);
    }
}
