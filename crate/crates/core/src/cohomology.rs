//! Graded dimensions of conjugation invariants and their stabilization.
//!
//! The space of conjugation invariants of the geodesic PMQ on `d` points has
//! a basis indexed by cycle types; a type of norm `m` sits in cohomological
//! degree `2m`. For `m <= d/2` the types of norm `m` biject with partitions
//! of `m` (a part `j` becomes a cycle of length `j + 1`), so the stable
//! dimension in degree `2m` is the partition number `p(m)` - one polynomial
//! generator in each even degree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::perm::CycleType;

/// All cycle types of norm `m` fitting in degree `d`, i.e. with
/// `sum (i-1) lambda_i = m` and `sum i lambda_i <= d`, in lexicographic
/// order of the multiplicity vector.
pub fn conjugacy_basis(d: usize, m: usize) -> Vec<CycleType> {
    assert!(d >= 2, "the ambient degree must be at least 2");
    let mut out = Vec::new();
    let mut lambda = BTreeMap::new();
    enumerate(d, m, 2, &mut lambda, &mut out);
    out.sort();
    out
}

fn enumerate(
    d: usize,
    norm_left: usize,
    min_len: usize,
    lambda: &mut BTreeMap<usize, usize>,
    out: &mut Vec<CycleType>,
) {
    if norm_left == 0 {
        let ct = CycleType::new(d, lambda.clone());
        if ct.moved_points() <= d {
            out.push(ct);
        }
        return;
    }
    // A cycle of length i adds i - 1 to the norm and i to the size.
    let size_used: usize = lambda.iter().map(|(&i, &m)| i * m).sum();
    for i in min_len..=norm_left + 1 {
        if size_used + i > d {
            break;
        }
        *lambda.entry(i).or_insert(0) += 1;
        enumerate(d, norm_left - (i - 1), i, lambda, out);
        let entry = lambda.get_mut(&i).expect("just inserted");
        *entry -= 1;
        if *entry == 0 {
            lambda.remove(&i);
        }
    }
}

/// The partition number `p(m)`, by the bounded-parts recurrence.
pub fn stable_dim(m: usize) -> u64 {
    // table[k] = number of partitions of k into parts <= current bound.
    let mut table = vec![0u64; m + 1];
    table[0] = 1;
    for part in 1..=m {
        for k in part..=m {
            table[k] += table[k - part];
        }
    }
    table[m]
}

/// Per-degree truncation of the invariant dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimTable {
    pub d: usize,
    /// `dims[m]` is the dimension in cohomological degree `2m`.
    pub dims: Vec<usize>,
    pub basis: Vec<Vec<CycleType>>,
}

pub fn dim_table(d: usize, m_max: usize) -> GradedDimTable {
    let basis: Vec<Vec<CycleType>> = (0..=m_max).map(|m| conjugacy_basis(d, m)).collect();
    let dims = basis.iter().map(|b| b.len()).collect();
    GradedDimTable { d, dims, basis }
}

impl GradedDimTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,m,dim\n");
        for (m, dim) in self.dims.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", self.d, m, dim));
        }
        out
    }
}

/// The 0/1 matrix of the stabilization map from the degree-(d+1) basis to
/// the degree-d basis in norm `m`: identity on the types that still fit,
/// zero on those needing all of `d + 1` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationMap {
    pub d: usize,
    pub m: usize,
    /// Basis of the target (degree d).
    pub rows: Vec<CycleType>,
    /// Basis of the source (degree d + 1).
    pub cols: Vec<CycleType>,
    pub matrix: Vec<Vec<u8>>,
}

pub fn stabilization_map(d: usize, m: usize) -> StabilizationMap {
    let rows = conjugacy_basis(d, m);
    let cols = conjugacy_basis(d + 1, m);
    let matrix = rows
        .iter()
        .map(|row| {
            cols.iter()
                .map(|col| u8::from(row.lambda == col.lambda))
                .collect()
        })
        .collect();
    StabilizationMap {
        d,
        m,
        rows,
        cols,
        matrix,
    }
}

impl StabilizationMap {
    /// Every target type appears among the sources, so the map is always
    /// surjective; this checks it structurally.
    pub fn is_surjective(&self) -> bool {
        self.matrix.iter().all(|row| row.contains(&1))
    }

    /// Bijective exactly when no source type dies, i.e. no column is zero.
    pub fn is_bijective(&self) -> bool {
        self.rows.len() == self.cols.len() && self.is_surjective()
    }
}
