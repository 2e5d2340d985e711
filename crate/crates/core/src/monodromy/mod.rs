//! Numerical monodromy of polynomial branched covers.
//!
//! For a monic polynomial of degree `d >= 2`, [`monodromy`] computes the
//! critical values, a canonical loop system around them, and the permutation
//! of the fiber along each loop. Sheets are labeled by continuing the
//! basepoint fiber far below, where the roots separate into the `d`
//! asymptotic sectors of `z^d`; the labels are arranged so that the total
//! monodromy (the ordered product in canonical branch-point order, right
//! factor acting first) is the long cycle. The result also carries the
//! completion normal form and the genus bookkeeping of the configuration.

pub mod loops;
pub mod track;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::completion::{self, CompletionElement};
use crate::perm::{GeoElement, Permutation};
use crate::poly::{all_roots, MonicPolynomial, PolyError, RootFinderConfig};
use loops::{LoopSystem, PathPiece};
use track::{match_fiber, track_path, TrackerConfig};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("loop geometry failure: {0}")]
    Geometry(String),
    #[error("tracking failed in piece {piece} at t = {t:.6}: {reason}")]
    Tracking {
        piece: usize,
        t: f64,
        reason: String,
    },
    #[error("fiber matching failed: {0}")]
    FiberMatching(String),
    #[error("sheet labeling failed: {0}")]
    Labeling(String),
    #[error("inconsistent monodromy data: {0}")]
    Inconsistent(String),
    #[error("non-integral genus: chi = {chi} with n = {n} poles gives no nonnegative integer")]
    NonIntegralGenus { chi: i64, n: usize },
}

/// Tolerances for the monodromy pipeline. `cluster_tol` merges critical
/// values at relative distance below it; `tracker` holds the continuation
/// tolerances.
#[derive(Clone, Copy, Debug)]
pub struct MonodromyConfig {
    pub cluster_tol: f64,
    pub tracker: TrackerConfig,
    pub roots: RootFinderConfig,
}

impl Default for MonodromyConfig {
    fn default() -> Self {
        MonodromyConfig {
            cluster_tol: 1e-8,
            tracker: TrackerConfig::default(),
            roots: RootFinderConfig::default(),
        }
    }
}

impl MonodromyConfig {
    /// The same configuration with the tracking tolerance tightened by the
    /// given factor (used by the stability checks).
    pub fn refined(&self, factor: f64) -> Self {
        let mut out = *self;
        out.tracker.newton_tol /= factor;
        out
    }
}

/// A branch point: location, multiplicity (number of merged critical
/// points, counted with multiplicity) and the sheet permutation of its loop.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BranchPointDto", into = "BranchPointDto")]
pub struct BranchPoint {
    pub location: Complex64,
    pub multiplicity: usize,
    pub monodromy: Permutation,
}

#[derive(Serialize, Deserialize)]
struct BranchPointDto {
    re: f64,
    im: f64,
    multiplicity: usize,
    permutation: Vec<usize>,
}

impl TryFrom<BranchPointDto> for BranchPoint {
    type Error = MonodromyError;
    fn try_from(dto: BranchPointDto) -> Result<Self, MonodromyError> {
        let monodromy = Permutation::from_one_line(&dto.permutation)
            .map_err(|e| MonodromyError::Inconsistent(e.to_string()))?;
        let bp = BranchPoint {
            location: Complex64::new(dto.re, dto.im),
            multiplicity: dto.multiplicity,
            monodromy,
        };
        bp.validate()?;
        Ok(bp)
    }
}

impl From<BranchPoint> for BranchPointDto {
    fn from(bp: BranchPoint) -> BranchPointDto {
        BranchPointDto {
            re: bp.location.re,
            im: bp.location.im,
            multiplicity: bp.multiplicity,
            permutation: bp.monodromy.one_line(),
        }
    }
}

impl BranchPoint {
    fn validate(&self) -> Result<(), MonodromyError> {
        if self.monodromy.is_identity() {
            return Err(MonodromyError::Inconsistent(format!(
                "branch point at {} has trivial monodromy",
                self.location
            )));
        }
        if self.monodromy.norm() != self.multiplicity {
            return Err(MonodromyError::Inconsistent(format!(
                "branch point at {}: multiplicity {} but monodromy norm {}",
                self.location,
                self.multiplicity,
                self.monodromy.norm()
            )));
        }
        Ok(())
    }
}

/// Branch points with monodromies relative to a canonical loop system, plus
/// the derived total monodromy and genus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HurwitzConfigurationDto", into = "HurwitzConfigurationDto")]
pub struct HurwitzConfiguration {
    pub d: usize,
    pub basepoint: Complex64,
    pub branch_points: Vec<BranchPoint>,
    pub total: CompletionElement,
    pub genus: usize,
    pub n_poles: usize,
}

#[derive(Serialize, Deserialize)]
struct HurwitzConfigurationDto {
    degree: usize,
    basepoint: ComplexDto,
    branch_points: Vec<BranchPoint>,
    total: CompletionElement,
    genus: usize,
    n_poles: usize,
}

#[derive(Serialize, Deserialize)]
struct ComplexDto {
    re: f64,
    im: f64,
}

impl TryFrom<HurwitzConfigurationDto> for HurwitzConfiguration {
    type Error = MonodromyError;
    fn try_from(dto: HurwitzConfigurationDto) -> Result<Self, MonodromyError> {
        let cfg = HurwitzConfiguration::from_branch_points(
            dto.degree,
            Complex64::new(dto.basepoint.re, dto.basepoint.im),
            dto.branch_points,
            dto.n_poles,
        )?;
        if cfg.total != dto.total || cfg.genus != dto.genus {
            return Err(MonodromyError::Inconsistent(
                "serialized total/genus disagree with the branch data".into(),
            ));
        }
        Ok(cfg)
    }
}

impl From<HurwitzConfiguration> for HurwitzConfigurationDto {
    fn from(cfg: HurwitzConfiguration) -> HurwitzConfigurationDto {
        HurwitzConfigurationDto {
            degree: cfg.d,
            basepoint: ComplexDto {
                re: cfg.basepoint.re,
                im: cfg.basepoint.im,
            },
            branch_points: cfg.branch_points,
            total: cfg.total,
            genus: cfg.genus,
            n_poles: cfg.n_poles,
        }
    }
}

impl HurwitzConfiguration {
    /// Assembles and validates a configuration from branch data. The total
    /// is the completion normal form of the monodromy sequence in the given
    /// order, and the genus comes from the Euler-characteristic count.
    pub fn from_branch_points(
        d: usize,
        basepoint: Complex64,
        branch_points: Vec<BranchPoint>,
        n_poles: usize,
    ) -> Result<Self, MonodromyError> {
        if d < 2 {
            return Err(MonodromyError::Poly(PolyError::DegreeTooSmall(d)));
        }
        for bp in &branch_points {
            bp.validate()?;
        }
        let sigmas: Vec<Permutation> = branch_points
            .iter()
            .map(|bp| bp.monodromy.clone())
            .collect();
        let factors: Vec<GeoElement> = sigmas.iter().cloned().map(GeoElement::new).collect();
        let total = completion::normal_form(d, &factors)
            .map_err(|e| MonodromyError::Inconsistent(e.to_string()))?;
        let genus = config_genus(&sigmas, n_poles, d)?;
        Ok(HurwitzConfiguration {
            d,
            basepoint,
            branch_points,
            total,
            genus,
            n_poles,
        })
    }

    pub fn monodromies(&self) -> Vec<Permutation> {
        self.branch_points
            .iter()
            .map(|bp| bp.monodromy.clone())
            .collect()
    }
}

/// Critical values of `f`: roots of `f'` pushed through `f`, merged at
/// relative tolerance `cluster_tol`, with multiplicities summing to `d - 1`.
/// Returned in canonical order (increasing real part, ties by imaginary).
pub fn critical_values(
    f: &MonicPolynomial,
    cfg: &MonodromyConfig,
) -> Result<Vec<(Complex64, usize)>, MonodromyError> {
    let zeros = all_roots(&f.derivative(), &cfg.roots)?;
    let values: Vec<Complex64> = zeros.iter().map(|&z| f.eval(z)).collect();
    let vmax = values.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
    let tol = cfg.cluster_tol * vmax;

    // Single-linkage clustering at tolerance `tol`.
    let n = values.len();
    let mut cluster: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 1..n {
                if (values[i] - values[j]).norm() <= tol && cluster[i] != cluster[j] {
                    let (a, b) = (cluster[i].min(cluster[j]), cluster[i].max(cluster[j]));
                    for c in cluster.iter_mut() {
                        if *c == b {
                            *c = a;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    let mut ids: Vec<usize> = cluster.clone();
    ids.sort_unstable();
    ids.dedup();
    for id in ids {
        let members: Vec<Complex64> = (0..n)
            .filter(|&i| cluster[i] == id)
            .map(|i| values[i])
            .collect();
        let centroid = members.iter().sum::<Complex64>() / members.len() as f64;
        out.push((centroid, members.len()));
    }
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite")
    });
    Ok(out)
}

/// Basepoint below a point set; see [`loops::basepoint`].
pub fn basepoint(points: &[Complex64]) -> Complex64 {
    loops::basepoint(points)
}

/// Canonical admissible loop system; see [`loops::loop_system`].
pub fn loop_system(points: &[Complex64]) -> Result<LoopSystem, MonodromyError> {
    loops::loop_system(points)
}

/// Full monodromy computation for a polynomial branched cover.
pub fn monodromy(
    f: &MonicPolynomial,
    cfg: &MonodromyConfig,
) -> Result<HurwitzConfiguration, MonodromyError> {
    let d = f.degree();
    let cvs = critical_values(f, cfg)?;
    let points: Vec<Complex64> = cvs.iter().map(|&(z, _)| z).collect();
    let system = loop_system(&points)?;
    let base = system.basepoint;

    let fiber = fiber_at(f, base, &cfg.roots)?;
    let labels = sector_labels(f, &fiber, base, cfg)?;

    // Track all loops from the shared labeled fiber; canonical order is the
    // loop order, so parallel scheduling cannot affect the output.
    let perms: Vec<Result<Permutation, MonodromyError>> = system
        .loops
        .par_iter()
        .map(|l| {
            let end = track_path(f, &fiber, &l.path(), &cfg.tracker)?;
            let matching = match_fiber(&end, &fiber)?;
            // Monodromy is the inverse of the transport map: under the
            // right-factor-first product this makes loop concatenation a
            // homomorphism, so the canonical-order product is the total
            // monodromy of one clockwise loop around everything.
            let mut images = vec![0usize; d];
            for (p, &q) in matching.iter().enumerate() {
                images[labels[q]] = labels[p];
            }
            Permutation::from_images(images)
                .map_err(|e| MonodromyError::Inconsistent(e.to_string()))
        })
        .collect();

    let mut branch_points = Vec::with_capacity(cvs.len());
    for ((loc, mult), perm) in cvs.iter().zip(perms) {
        let monodromy = perm?;
        if monodromy.is_identity() {
            return Err(MonodromyError::Inconsistent(format!(
                "trivial monodromy at critical value {loc}"
            )));
        }
        if monodromy.norm() != *mult {
            return Err(MonodromyError::Inconsistent(format!(
                "critical value {loc}: cluster multiplicity {mult} but monodromy norm {}",
                monodromy.norm()
            )));
        }
        branch_points.push(BranchPoint {
            location: *loc,
            multiplicity: *mult,
            monodromy,
        });
    }

    let sigmas: Vec<Permutation> = branch_points.iter().map(|b| b.monodromy.clone()).collect();
    check_polynomial_invariants(d, &sigmas)?;
    let cfg_out = HurwitzConfiguration::from_branch_points(d, base, branch_points, 1)?;
    debug_assert_eq!(cfg_out.genus, 0);
    Ok(cfg_out)
}

/// The invariants every successfully tracked polynomial must satisfy: all
/// monodromies nontrivial with norms summing to d-1, every contiguous
/// partial product geodesic, and total monodromy the long cycle.
fn check_polynomial_invariants(d: usize, sigmas: &[Permutation]) -> Result<(), MonodromyError> {
    let total_norm: usize = sigmas.iter().map(|s| s.norm()).sum();
    if total_norm != d - 1 {
        return Err(MonodromyError::Inconsistent(format!(
            "monodromy norms sum to {total_norm}, expected {}",
            d - 1
        )));
    }
    for i in 0..sigmas.len() {
        let mut acc = sigmas[i].clone();
        let mut norms = sigmas[i].norm();
        for s in &sigmas[i + 1..] {
            acc = acc.compose(s);
            norms += s.norm();
            if acc.norm() != norms {
                return Err(MonodromyError::Inconsistent(
                    "a partial product of monodromies is not geodesic".into(),
                ));
            }
        }
    }
    let total = Permutation::product(d, sigmas.iter());
    if total != Permutation::long_cycle(d) {
        return Err(MonodromyError::Inconsistent(format!(
            "total monodromy {} is not the long cycle",
            total.to_cycle_string()
        )));
    }
    Ok(())
}

/// Roots of `f(z) = w`.
fn fiber_at(
    f: &MonicPolynomial,
    w: Complex64,
    roots_cfg: &RootFinderConfig,
) -> Result<Vec<Complex64>, MonodromyError> {
    let mut coeffs: Vec<Complex64> = f.coeffs().to_vec();
    coeffs[0] -= w;
    coeffs.push(Complex64::new(1.0, 0.0));
    Ok(all_roots(&coeffs, roots_cfg)?)
}

/// Labels the basepoint fiber by continuing it straight down to a circle of
/// large modulus, where the roots approximate the d-th roots of `w` and fall
/// into `d` angular sectors, labeled counterclockwise starting on the ray
/// through the basepoint. Together with the inverse-transport convention in
/// the tracking step this makes a clockwise loop around everything act as
/// the long cycle.
fn sector_labels(
    f: &MonicPolynomial,
    fiber: &[Complex64],
    base: Complex64,
    cfg: &MonodromyConfig,
) -> Result<Vec<usize>, MonodromyError> {
    let d = f.degree();
    let rho = f.root_bound(base.norm());
    let r_far = (4.0 * rho).powi(d as i32).max(4.0 * base.norm()).max(16.0);

    // Downward ray in doubling legs; |w| grows from |base| to r_far.
    let mut pieces = Vec::new();
    let mut w = base;
    while w.norm() < r_far {
        let next = Complex64::new(0.0, -(w.norm() * 2.0).min(r_far));
        pieces.push(PathPiece::Line { from: w, to: next });
        w = next;
    }
    let far = track_path(f, fiber, &pieces, &cfg.tracker)?;

    // Match the far fiber to the asymptotic sector points of z^d at arg(w) =
    // -pi/2.
    let r_root = r_far.powf(1.0 / d as f64);
    let sectors: Vec<Complex64> = (0..d)
        .map(|j| {
            let theta =
                (-std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * j as f64) / d as f64;
            Complex64::from_polar(r_root, theta)
        })
        .collect();
    let sep = 2.0 * r_root * (std::f64::consts::PI / d as f64).sin();
    let mut labels = vec![usize::MAX; d];
    let mut taken = vec![false; d];
    for (p, &z) in far.iter().enumerate() {
        let (j, dist) = sectors
            .iter()
            .enumerate()
            .map(|(j, &s)| (j, (z - s).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
            .expect("d >= 2");
        if dist > 0.3 * sep || taken[j] {
            return Err(MonodromyError::Labeling(format!(
                "root at {z} does not fall cleanly into an asymptotic sector"
            )));
        }
        taken[j] = true;
        labels[p] = j;
    }
    Ok(labels)
}

/// Result of shrinking the critical values into the open unit square.
#[derive(Clone, Debug, PartialEq)]
pub struct Rescaled {
    pub poly: MonicPolynomial,
    /// Scale parameter in `(0, 1]`; the substituted polynomial is
    /// `t^d f(z/t)` and its critical values are those of `f` times `t^d`.
    pub t: f64,
    /// Translation such that critical values plus it lie in `(0,1)^2`.
    pub offset: Complex64,
}

/// Chooses `t` in `(0, 1]` so that the critical values of `t^d f(z/t)`,
/// after the recorded affine repositioning, lie in the open unit square.
/// Monodromy permutations are unchanged. `t = 1` when the values already
/// fit without repositioning.
pub fn rescale_into_rectangle(
    f: &MonicPolynomial,
    cfg: &MonodromyConfig,
) -> Result<Rescaled, MonodromyError> {
    let d = f.degree();
    let cvs = critical_values(f, cfg)?;
    let inside = cvs
        .iter()
        .all(|(z, _)| z.re > 0.0 && z.re < 1.0 && z.im > 0.0 && z.im < 1.0);
    if inside {
        return Ok(Rescaled {
            poly: f.clone(),
            t: 1.0,
            offset: Complex64::new(0.0, 0.0),
        });
    }
    let vmax = cvs.iter().map(|(z, _)| z.norm()).fold(0.0f64, f64::max);
    let t = if vmax <= 0.4 {
        1.0
    } else {
        (0.4 / vmax).powf(1.0 / d as f64).min(1.0)
    };
    let scale = t.powi(d as i32);
    let coeffs: Vec<Complex64> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &a)| a * t.powi((d - k) as i32))
        .collect();
    let poly = MonicPolynomial::new(coeffs).expect("degree unchanged");
    debug_assert!(scale <= 1.0);
    Ok(Rescaled {
        poly,
        t,
        offset: Complex64::new(0.5, 0.5),
    })
}

/// Genus of a configuration with monodromies `sigmas`, `n` poles and degree
/// `d`: `g = (2 - n - d + sum N(sigma_i)) / 2`. The ordered product must
/// have `n` cycles; a configuration violating that or producing a
/// non-integral or negative genus is rejected.
pub fn config_genus(sigmas: &[Permutation], n: usize, d: usize) -> Result<usize, MonodromyError> {
    let product = Permutation::product(d, sigmas.iter());
    if product.cycle_count() != n {
        return Err(MonodromyError::Inconsistent(format!(
            "ordered product has {} cycles, expected {} poles",
            product.cycle_count(),
            n
        )));
    }
    let h: usize = sigmas.iter().map(|s| s.norm()).sum();
    let chi = 2i64 - n as i64 - d as i64 + h as i64; // equals 2g
    if chi < 0 || chi % 2 != 0 {
        return Err(MonodromyError::NonIntegralGenus { chi: 2 - chi, n });
    }
    Ok((chi / 2) as usize)
}

/// Tracks one big clockwise circle enclosing every branch point; used by the
/// tests as an independent check that the assembled ordered product equals
/// the actual total monodromy.
pub fn big_loop_monodromy(
    f: &MonicPolynomial,
    cfg: &MonodromyConfig,
) -> Result<Permutation, MonodromyError> {
    let d = f.degree();
    let cvs = critical_values(f, cfg)?;
    let points: Vec<Complex64> = cvs.iter().map(|&(z, _)| z).collect();
    let base = basepoint(&points);
    // Circle through the basepoint, centered straight above it, containing
    // all branch points.
    let mut r = 1.0f64;
    for z in &points {
        let dx = z.re - base.re;
        let dy = z.im - base.im;
        r = r.max((dx * dx + dy * dy) / (2.0 * dy) + 0.5);
    }
    let center = base + Complex64::new(0.0, r);
    let fiber = fiber_at(f, base, &cfg.roots)?;
    let labels = sector_labels(f, &fiber, base, cfg)?;
    let path = [PathPiece::Arc {
        center,
        radius: r,
        theta_from: -std::f64::consts::FRAC_PI_2,
        theta_by: -2.0 * std::f64::consts::PI,
    }];
    let end = track_path(f, &fiber, &path, &cfg.tracker)?;
    let matching = match_fiber(&end, &fiber)?;
    let mut images = vec![0usize; d];
    for (p, &q) in matching.iter().enumerate() {
        images[labels[q]] = labels[p];
    }
    Permutation::from_images(images).map_err(|e| MonodromyError::Inconsistent(e.to_string()))
}
