//! Closed-form dimension and Euler-characteristic bookkeeping for moduli of
//! branched covers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::completion::{make_klud_g, CompletionError};
use crate::monodromy::HurwitzConfiguration;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimsError {
    #[error("obstructed range: degree {deg} is below 2g - 1 = {bound}")]
    ObstructedRange { deg: i64, bound: i64 },
    #[error(transparent)]
    Completion(#[from] CompletionError),
}

/// Genus, pole count and pole orders, with the derived totals `d` and
/// `h = 2g + n + d - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub g: usize,
    pub d_vec: Vec<usize>,
}

impl SurfaceData {
    pub fn new(g: usize, d_vec: Vec<usize>) -> Result<Self, DimsError> {
        // Reuse the pole-order validation of the completion element builder.
        make_klud_g(g, &d_vec)?;
        Ok(SurfaceData { g, d_vec })
    }

    pub fn n(&self) -> usize {
        self.d_vec.len()
    }

    pub fn d(&self) -> usize {
        self.d_vec.iter().sum()
    }

    pub fn h(&self) -> usize {
        2 * self.g + self.n() + self.d() - 2
    }
}

/// Unobstructed Riemann-Roch count: `deg - g + 1` when `deg >= 2g - 1`;
/// below that the difference formula does not pin the dimension.
pub fn riemann_roch(g: usize, deg: i64) -> Result<i64, DimsError> {
    let bound = 2 * g as i64 - 1;
    if deg < bound {
        return Err(DimsError::ObstructedRange { deg, bound });
    }
    Ok(deg - g as i64 + 1)
}

/// The dimension record for one `(g, n, d)`. Formulas that only hold in a
/// restricted range carry validity flags instead of erroring, so tables can
/// include out-of-range rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsRecord {
    pub g: usize,
    pub n: usize,
    pub d: usize,
    pub h: usize,
    /// Real dimension of the space of directed harmonic functions: `3d - n`.
    pub harm_real: i64,
    /// After forgetting all but one integration constant: `2d - n + 1`.
    pub charm_real: i64,
    /// Complex dimension of the space of directed meromorphic functions on a
    /// fixed surface: `d - g + 1 - n`; meaningful when `d >= 2g + n - 1`.
    pub cc_o_fiber_complex: i64,
    pub cc_o_fiber_valid: bool,
    /// Real dimension of the total moduli space: `2h`.
    pub cc_o_total_real: i64,
    /// `6g - 6 + 4n`, the real dimension of Teichmueller and moduli space;
    /// the formula degenerates for `(g, n) = (0, 1)`.
    pub teich_real: i64,
    pub moduli_real: i64,
    pub teich_valid: bool,
}

/// Evaluates every dimension formula at `(g, n, d)`.
pub fn dims(s: &SurfaceData) -> DimsRecord {
    let (g, n, d) = (s.g as i64, s.n() as i64, s.d() as i64);
    DimsRecord {
        g: s.g,
        n: s.n(),
        d: s.d(),
        h: s.h(),
        harm_real: 3 * d - n,
        charm_real: 2 * d - n + 1,
        cc_o_fiber_complex: d - g + 1 - n,
        cc_o_fiber_valid: d >= 2 * g + n - 1,
        cc_o_total_real: 2 * s.h() as i64,
        teich_real: 6 * g - 6 + 4 * n,
        moduli_real: 6 * g - 6 + 4 * n,
        teich_valid: g > 0 || n > 1,
    }
}

/// Consistency report comparing the two Euler-characteristic routes on a
/// configuration: the cover count `d(1 - k) + n + sum(d - N(sigma_i))` and
/// `2 - 2g` from the genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub chi_cover_count: i64,
    pub chi_from_genus: i64,
    pub consistent: bool,
    pub genus: usize,
}

pub fn euler_check(cfg: &HurwitzConfiguration) -> EulerReport {
    let d = cfg.d as i64;
    let k = cfg.branch_points.len() as i64;
    let n = cfg.n_poles as i64;
    let sheet_count: i64 = cfg
        .branch_points
        .iter()
        .map(|bp| d - bp.monodromy.norm() as i64)
        .sum();
    let chi_cover_count = d * (1 - k) + n + sheet_count;
    let chi_from_genus = 2 - 2 * cfg.genus as i64;
    EulerReport {
        chi_cover_count,
        chi_from_genus,
        consistent: chi_cover_count == chi_from_genus,
        genus: cfg.genus,
    }
}

/// CSV table of dimension records over inclusive ranges of `g`, `n`, `d`
/// (pole orders do not enter any formula, so rows are keyed by the totals).
pub fn dims_table_csv(g_max: usize, n_max: usize, d_max: usize) -> String {
    let mut out = String::from(
        "g,n,d,h,harm_real,charm_real,cc_o_fiber_complex,cc_o_fiber_valid,cc_o_total_real,teich_real,moduli_real,teich_valid\n",
    );
    for record in dims_table(g_max, n_max, d_max) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            record.g,
            record.n,
            record.d,
            record.h,
            record.harm_real,
            record.charm_real,
            record.cc_o_fiber_complex,
            record.cc_o_fiber_valid,
            record.cc_o_total_real,
            record.teich_real,
            record.moduli_real,
            record.teich_valid,
        ));
    }
    out
}

/// All records with `g <= g_max`, `n <= n_max`, `n <= d <= d_max`.
pub fn dims_table(g_max: usize, n_max: usize, d_max: usize) -> Vec<DimsRecord> {
    let mut out = Vec::new();
    for g in 0..=g_max {
        for n in 1..=n_max {
            for d in n.max(2)..=d_max {
                // A representative composition of d into n positive parts.
                let mut d_vec = vec![1; n];
                d_vec[0] = d - (n - 1);
                let s = SurfaceData::new(g, d_vec).expect("valid pole orders");
                out.push(dims(&s));
            }
        }
    }
    out
}
