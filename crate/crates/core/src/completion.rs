//! Normal forms for formal products of geodesic PMQ elements.
//!
//! A [`CompletionElement`] is a triple (permutation; block partition; one
//! branch count per block). It is the complete invariant of a factorisation
//! tuple up to braid moves and geodesic merge/split of adjacent factors:
//! [`normal_form`] computes it, [`canonical_factorization`] produces a
//! representative tuple of transpositions, and [`CompletionElement::multiply`]
//! is concatenation of tuples at the level of invariants.
//!
//! Realizability of a triple is decided blockwise. A block `B` carrying the
//! restricted permutation `s_B` and count `r` is the invariant of some
//! transposition tuple connecting `B` and multiplying to `s_B` exactly when
//!   `r = 0` for singleton blocks, and otherwise
//!   `r >= 2|B| - 2 - N(s_B)` with `r = N(s_B) (mod 2)`.
//! The lower bound is the Euler-characteristic bound for a connected degree-
//! `|B|` cover of the disc; the unit test suite certifies the equivalence by
//! brute force against all transposition tuples for small degrees.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{GeoElement, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("blocks do not partition the ground set: {0}")]
    NotAPartition(String),
    #[error("blocks and counts have different lengths: {0} blocks, {1} counts")]
    CountMismatch(usize, usize),
    #[error("unrealizable element: {0}")]
    Unrealizable(String),
    #[error("factor sequences may not contain the unit element")]
    IdentityFactor,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid pole orders {0:?}: need every entry >= 1 and total degree >= 2")]
    InvalidPoleOrders(Vec<usize>),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Normal form (sigma; P_1,..,P_l; r_1,..,r_l) of an element of the completed
/// geodesic PMQ. Blocks are stored sorted by minimum element with `r` aligned,
/// so derived equality and ordering are canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "CompletionElementDto", into = "CompletionElementDto")]
pub struct CompletionElement {
    sigma: Permutation,
    blocks: Vec<Vec<usize>>,
    r: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CompletionElementDto {
    d: usize,
    sigma: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    r: Vec<usize>,
}

impl TryFrom<CompletionElementDto> for CompletionElement {
    type Error = CompletionError;
    fn try_from(dto: CompletionElementDto) -> Result<Self, CompletionError> {
        let sigma = Permutation::from_one_line(&dto.sigma)?;
        if sigma.degree() != dto.d {
            return Err(CompletionError::DegreeMismatch(dto.d, sigma.degree()));
        }
        let blocks: Vec<Vec<usize>> = dto
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| {
                        if x == 0 || x > dto.d {
                            Err(CompletionError::NotAPartition(format!(
                                "point {x} out of range 1..={}",
                                dto.d
                            )))
                        } else {
                            Ok(x - 1)
                        }
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        CompletionElement::new(sigma, blocks, dto.r)
    }
}

impl From<CompletionElement> for CompletionElementDto {
    fn from(e: CompletionElement) -> CompletionElementDto {
        CompletionElementDto {
            d: e.degree(),
            sigma: e.sigma.one_line(),
            blocks: e
                .blocks
                .iter()
                .map(|b| b.iter().map(|&x| x + 1).collect())
                .collect(),
            r: e.r.clone(),
        }
    }
}

impl CompletionElement {
    /// Validates the blockwise realizability conditions and stores the
    /// partition in canonical order. Points are zero-based.
    pub fn new(
        sigma: Permutation,
        blocks: Vec<Vec<usize>>,
        r: Vec<usize>,
    ) -> Result<Self, CompletionError> {
        let d = sigma.degree();
        if blocks.len() != r.len() {
            return Err(CompletionError::CountMismatch(blocks.len(), r.len()));
        }
        let mut owner = vec![usize::MAX; d];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(CompletionError::NotAPartition("empty block".into()));
            }
            for &x in block {
                if x >= d {
                    return Err(CompletionError::NotAPartition(format!(
                        "point {} out of range",
                        x + 1
                    )));
                }
                if owner[x] != usize::MAX {
                    return Err(CompletionError::NotAPartition(format!(
                        "point {} in two blocks",
                        x + 1
                    )));
                }
                owner[x] = bi;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(CompletionError::NotAPartition(
                "blocks do not cover 1..=d".into(),
            ));
        }
        // Every cycle of sigma must stay inside one block.
        for cycle in sigma.cycles() {
            let b = owner[cycle[0]];
            if cycle.iter().any(|&x| owner[x] != b) {
                return Err(CompletionError::Unrealizable(format!(
                    "cycle {:?} straddles blocks",
                    cycle.iter().map(|&x| x + 1).collect::<Vec<_>>()
                )));
            }
        }
        let mut sorted: Vec<(Vec<usize>, usize)> = blocks
            .into_iter()
            .zip(r)
            .map(|(mut b, r)| {
                b.sort_unstable();
                (b, r)
            })
            .collect();
        sorted.sort();
        let (blocks, r): (Vec<_>, Vec<_>) = sorted.into_iter().unzip();

        let elem = CompletionElement { sigma, blocks, r };
        for bi in 0..elem.blocks.len() {
            let b = elem.blocks[bi].len();
            let n_b = elem.block_norm(bi);
            let r = elem.r[bi];
            if b == 1 {
                if r != 0 {
                    return Err(CompletionError::Unrealizable(format!(
                        "singleton block {{{}}} carries count {r}",
                        elem.blocks[bi][0] + 1
                    )));
                }
            } else {
                if r % 2 != n_b % 2 {
                    return Err(CompletionError::Unrealizable(format!(
                        "count {r} has wrong parity on a block of norm {n_b}"
                    )));
                }
                if r + n_b < 2 * b - 2 {
                    return Err(CompletionError::Unrealizable(format!(
                        "count {r} below the connectivity bound {} on a block of size {b}",
                        2 * b - 2 - n_b
                    )));
                }
            }
        }
        Ok(elem)
    }

    pub fn degree(&self) -> usize {
        self.sigma.degree()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// Blocks sorted by minimum element, each sorted internally.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Branch counts aligned with [`Self::blocks`].
    pub fn counts(&self) -> &[usize] {
        &self.r
    }

    /// Norm of sigma restricted to block `bi`: block size minus the number of
    /// sigma-cycles inside the block.
    fn block_norm(&self, bi: usize) -> usize {
        let block = &self.blocks[bi];
        let mut seen = vec![false; block.len()];
        let pos = |x: usize| block.binary_search(&x).expect("cycle point inside block");
        let mut cycles = 0;
        for start in 0..block.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = block[start];
            loop {
                let p = pos(x);
                if seen[p] {
                    break;
                }
                seen[p] = true;
                x = self.sigma.apply(x);
            }
        }
        block.len() - cycles
    }

    /// Total branch count `sum_B r(B)`; the norm in the completed PMQ.
    pub fn norm(&self) -> usize {
        self.r.iter().sum()
    }

    /// Image in the enveloping group, the index-two subgroup of Z x S_d of
    /// pairs with matching parity.
    pub fn to_enveloping(&self) -> EnvelopingElement {
        EnvelopingElement::new(self.norm() as i64, self.sigma.clone())
            .expect("completion norm has the parity of sigma")
    }

    /// The identity element: unit permutation, singleton blocks, zero counts.
    pub fn one(d: usize) -> Self {
        embed(&GeoElement::unit(d))
    }

    pub fn is_one(&self) -> bool {
        self.norm() == 0 && self.sigma.is_identity()
    }

    /// Product of normal forms: permutations compose (right factor first),
    /// non-singleton blocks of both factors merge as hyperedges, counts add
    /// over merged parts. Equals the normal form of concatenated canonical
    /// factorizations; associative, with [`Self::one`] as unit.
    pub fn multiply(&self, rhs: &CompletionElement) -> CompletionElement {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "multiplying completion elements of different degrees"
        );
        let d = self.degree();
        let mut uf = UnionFind::new(d);
        for (block, &r) in self
            .blocks
            .iter()
            .zip(&self.r)
            .chain(rhs.blocks.iter().zip(&rhs.r))
        {
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
            uf.add_count(block[0], r);
        }
        let sigma = self.sigma.compose(&rhs.sigma);
        let (blocks, r) = uf.into_blocks();
        CompletionElement::new(sigma, blocks, r)
            .expect("a product of realizable elements is realizable")
    }
}

impl fmt::Display for CompletionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let pts: Vec<String> = b.iter().map(|&x| (x + 1).to_string()).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        let counts: Vec<String> = self.r.iter().map(|r| r.to_string()).collect();
        write!(
            f,
            "({}; {}; {})",
            self.sigma.to_cycle_string(),
            blocks.join(","),
            counts.join(",")
        )
    }
}

impl fmt::Debug for CompletionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of the enveloping group: an integer and a permutation of equal
/// parity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct EnvelopingElement {
    pub n: i64,
    pub sigma: Permutation,
}

impl EnvelopingElement {
    pub fn new(n: i64, sigma: Permutation) -> Result<Self, CompletionError> {
        if n.rem_euclid(2) as usize != sigma.parity() {
            return Err(CompletionError::Unrealizable(format!(
                "({n}, {sigma}) violates the parity constraint"
            )));
        }
        Ok(EnvelopingElement { n, sigma })
    }

    pub fn one(d: usize) -> Self {
        EnvelopingElement {
            n: 0,
            sigma: Permutation::identity(d),
        }
    }

    pub fn mul(&self, rhs: &EnvelopingElement) -> EnvelopingElement {
        EnvelopingElement {
            n: self.n + rhs.n,
            sigma: self.sigma.compose(&rhs.sigma),
        }
    }

    pub fn inverse(&self) -> EnvelopingElement {
        EnvelopingElement {
            n: -self.n,
            sigma: self.sigma.inverse(),
        }
    }
}

/// Canonical inclusion of the PMQ into its completion: blocks are the cycles
/// of the permutation (singletons for fixed points) and each block carries the
/// norm of its cycle.
pub fn embed(g: &GeoElement) -> CompletionElement {
    let blocks = g.perm().cycles();
    let r = blocks.iter().map(|c| c.len() - 1).collect();
    CompletionElement::new(g.perm().clone(), blocks, r)
        .expect("cycle blocks with cycle norms are realizable")
}

/// Normal form of an ordered tuple of non-unit PMQ elements.
///
/// Each factor contributes its geodesic transposition factorization: the
/// support graph acquires the factor's cycles as hyperedges and each cycle
/// adds (length - 1) to the count of its component. Blocks are the connected
/// components (plus singletons), sigma is the ordered product. The result is
/// invariant under braid moves and geodesic merge/split of the input.
///
/// ```
/// use hurlab_core::completion::normal_form;
/// use hurlab_core::perm::{GeoElement, Permutation};
/// let t = GeoElement::new(Permutation::transposition(4, 0, 1));
/// let e = normal_form(4, &vec![t; 6]).unwrap();
/// assert_eq!(e.sigma(), &Permutation::identity(4));
/// assert_eq!(e.blocks(), &[vec![0, 1], vec![2], vec![3]]);
/// assert_eq!(e.counts(), &[6, 0, 0]);
/// ```
pub fn normal_form(d: usize, factors: &[GeoElement]) -> Result<CompletionElement, CompletionError> {
    let mut uf = UnionFind::new(d);
    let mut sigma = Permutation::identity(d);
    for f in factors {
        if f.degree() != d {
            return Err(CompletionError::DegreeMismatch(d, f.degree()));
        }
        if f.is_unit() {
            return Err(CompletionError::IdentityFactor);
        }
        for cycle in f.perm().cycles() {
            if cycle.len() < 2 {
                continue;
            }
            for w in cycle.windows(2) {
                uf.union(w[0], w[1]);
            }
            uf.add_count(cycle[0], cycle.len() - 1);
        }
        sigma = sigma.compose(f.perm());
    }
    let (blocks, r) = uf.into_blocks();
    Ok(CompletionElement::new(sigma, blocks, r)
        .expect("the invariant of an actual tuple is realizable"))
}

/// A deterministic tuple of transpositions with normal form `a`.
///
/// Per block (ordered by minimum): factor each sigma-cycle `(a1 .. am)` as
/// `(a1 a2)(a2 a3)...(a_{m-1} a_m)`, then connect the cycles to the block
/// minimum by doubled transpositions, then pad with a repeated transposition
/// on the two smallest points to reach the block count.
pub fn canonical_factorization(a: &CompletionElement) -> Vec<GeoElement> {
    let d = a.degree();
    let mut out = Vec::with_capacity(a.norm());
    for (bi, block) in a.blocks().iter().enumerate() {
        let mut used = 0usize;
        let mut components: Vec<usize> = Vec::new(); // minimum of each sigma-cycle in the block
        for cycle in a.sigma().cycles() {
            if !block.contains(&cycle[0]) {
                continue;
            }
            components.push(cycle[0]);
            for w in cycle.windows(2) {
                out.push(GeoElement::new(Permutation::transposition(d, w[0], w[1])));
                used += 1;
            }
        }
        components.sort_unstable();
        let anchor = components[0];
        for &c in &components[1..] {
            for _ in 0..2 {
                out.push(GeoElement::new(Permutation::transposition(d, anchor, c)));
            }
            used += 2;
        }
        let r = a.counts()[bi];
        debug_assert!(
            r >= used && (r - used).is_multiple_of(2),
            "counts below the realizability bound"
        );
        if r > used {
            let pad = Permutation::transposition(d, block[0], block[1]);
            for _ in 0..r - used {
                out.push(GeoElement::new(pad.clone()));
            }
        }
    }
    out
}

/// The distinguished element (kappa; {1..d}; h) with h = 2g + n + d - 2,
/// where kappa has one cycle of length `d_i` per pole and the `d_i` sum to
/// `d`. Built as the product of 2g copies of (1,2)-hat, kappa-hat, and each
/// boundary transposition (bl_i - 1, bl_i)-hat twice.
pub fn make_klud_g(g: usize, d_vec: &[usize]) -> Result<CompletionElement, CompletionError> {
    let d: usize = d_vec.iter().sum();
    if d_vec.is_empty() || d_vec.contains(&0) || d < 2 {
        return Err(CompletionError::InvalidPoleOrders(d_vec.to_vec()));
    }
    let mut cycles = Vec::new();
    let mut offsets = Vec::new(); // bl_i, zero-based
    let mut next = 0usize;
    for &di in d_vec {
        offsets.push(next);
        cycles.push((next..next + di).collect::<Vec<_>>());
        next += di;
    }
    let kappa = Permutation::from_cycles(d, &cycles)?;

    let t12 = embed(&GeoElement::new(Permutation::transposition(d, 0, 1)));
    let mut acc = CompletionElement::one(d);
    for _ in 0..2 * g {
        acc = acc.multiply(&t12);
    }
    acc = acc.multiply(&embed(&GeoElement::new(kappa)));
    for &bl in &offsets[1..] {
        let tr = embed(&GeoElement::new(Permutation::transposition(d, bl - 1, bl)));
        acc = acc.multiply(&tr).multiply(&tr);
    }
    Ok(acc)
}

/// Genus stabilization: left multiplication by (1,2)-hat twice.
pub fn stab_genus(a: &CompletionElement) -> CompletionElement {
    let d = a.degree();
    let t12 = embed(&GeoElement::new(Permutation::transposition(d, 0, 1)));
    t12.multiply(&t12).multiply(a)
}

/// Degree stabilization: include into degree d+1 (new fixed point, new
/// singleton block), then right multiplication by (d, d+1)-hat.
pub fn stab_degree(a: &CompletionElement) -> CompletionElement {
    let d = a.degree();
    let included = include_degree(a);
    let tr = embed(&GeoElement::new(Permutation::transposition(
        d + 1,
        d - 1,
        d,
    )));
    included.multiply(&tr)
}

/// The standard inclusion into degree d+1.
pub fn include_degree(a: &CompletionElement) -> CompletionElement {
    let d = a.degree();
    let mut image: Vec<usize> = a.sigma().images().to_vec();
    image.push(d);
    let sigma = Permutation::from_images(image).expect("extension by a fixed point");
    let mut blocks = a.blocks().to_vec();
    let mut r = a.counts().to_vec();
    blocks.push(vec![d]);
    r.push(0);
    CompletionElement::new(sigma, blocks, r).expect("inclusion preserves realizability")
}

/// Total monodromy of `e`: 2d-2 copies of (1,2)-hat.
pub fn totmon_e(d: usize) -> CompletionElement {
    let t = GeoElement::new(Permutation::transposition(d, 0, 1));
    normal_form(d, &vec![t; 2 * d - 2]).expect("transpositions are non-unit")
}

/// Total monodromy of `e'`: each adjacent transposition hat repeated twice.
pub fn totmon_e_prime(d: usize) -> CompletionElement {
    let mut factors = Vec::new();
    for j in 0..d - 1 {
        let t = GeoElement::new(Permutation::transposition(d, j, j + 1));
        factors.push(t.clone());
        factors.push(t);
    }
    normal_form(d, &factors).expect("transpositions are non-unit")
}

/// Searches for `(y, k)` with `x * y = totmon_e_prime(d)^k` and `k <= max_k`.
///
/// `x` must lie in the submonoid of elements with unit permutation (all its
/// counts are then automatically even). The witness is constructed rather
/// than searched: for the smallest feasible `k`, `y` is either the unit (when
/// `x` already is the k-th power) or the identity-permutation element whose
/// single non-singleton block holds the minima of the blocks of `x` and
/// carries the missing count.
pub fn is_propagator_witness(
    x: &CompletionElement,
    max_k: usize,
) -> Option<(CompletionElement, usize)> {
    assert!(
        x.sigma().is_identity(),
        "propagator witnesses are searched in the unit-permutation submonoid"
    );
    let d = x.degree();
    let ep_norm = 2 * d - 2;
    for k in 1..=max_k {
        let target_norm = k * ep_norm;
        if target_norm < x.norm() {
            continue;
        }
        let rest = target_norm - x.norm();
        let target = power_of_e_prime(d, k);
        if rest == 0 {
            if *x == target {
                return Some((CompletionElement::one(d), k));
            }
            continue;
        }
        // One block per minimum of a block of x connects everything; when x
        // is already a single block any pair of points will do.
        let connector: Vec<usize> = if x.blocks().len() >= 2 {
            x.blocks().iter().map(|b| b[0]).collect()
        } else {
            vec![0, 1]
        };
        if rest < 2 * connector.len() - 2 {
            continue;
        }
        let mut blocks = vec![connector.clone()];
        let mut r = vec![rest];
        for p in 0..d {
            if !connector.contains(&p) {
                blocks.push(vec![p]);
                r.push(0);
            }
        }
        let y = CompletionElement::new(Permutation::identity(d), blocks, r)
            .expect("connector blocks with even counts are realizable");
        debug_assert_eq!(x.multiply(&y), target);
        return Some((y, k));
    }
    None
}

fn power_of_e_prime(d: usize, k: usize) -> CompletionElement {
    let ep = totmon_e_prime(d);
    let mut acc = ep.clone();
    for _ in 1..k {
        acc = acc.multiply(&ep);
    }
    acc
}

/// Random realizable element: a random permutation, a random coarsening of
/// its cycle partition, and random admissible counts. Intended for seeded
/// property tests.
pub fn random_element(d: usize, rng: &mut impl rand::Rng) -> CompletionElement {
    use rand::seq::SliceRandom;
    let mut image: Vec<usize> = (0..d).collect();
    image.shuffle(rng);
    let sigma = Permutation::from_images(image).expect("shuffle is a bijection");
    // Randomly merge cycle blocks, tracking how many cycles each group holds.
    let mut groups: Vec<(Vec<usize>, usize)> = Vec::new();
    for cycle in sigma.cycles() {
        if !groups.is_empty() && rng.gen_bool(0.4) {
            let gi = rng.gen_range(0..groups.len());
            groups[gi].0.extend(cycle);
            groups[gi].1 += 1;
        } else {
            groups.push((cycle, 1));
        }
    }
    let mut blocks = Vec::new();
    let mut r = Vec::new();
    for (mut g, cycles_in) in groups {
        g.sort_unstable();
        let b = g.len();
        let n_b = b - cycles_in;
        let min = if b == 1 { 0 } else { 2 * b - 2 - n_b };
        let extra = if b == 1 { 0 } else { 2 * rng.gen_range(0..=2) };
        blocks.push(g);
        r.push(min + extra);
    }
    CompletionElement::new(sigma, blocks, r).expect("constructed counts are admissible")
}

/// Random element of the unit-permutation submonoid.
pub fn random_unit_sigma_element(d: usize, rng: &mut impl rand::Rng) -> CompletionElement {
    use rand::seq::SliceRandom;
    let mut points: Vec<usize> = (0..d).collect();
    points.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < d {
        let take = rng.gen_range(1..=(d - i)).min(rng.gen_range(1..=3));
        blocks.push(points[i..i + take].to_vec());
        i += take;
    }
    let r: Vec<usize> = blocks
        .iter()
        .map(|b| {
            if b.len() == 1 {
                0
            } else {
                2 * b.len() - 2 + 2 * rng.gen_range(0..=2)
            }
        })
        .collect();
    CompletionElement::new(Permutation::identity(d), blocks, r)
        .expect("even counts above the bound are realizable")
}

struct UnionFind {
    parent: Vec<usize>,
    count: Vec<usize>,
}

impl UnionFind {
    fn new(d: usize) -> Self {
        UnionFind {
            parent: (0..d).collect(),
            count: vec![0; d],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
            self.count[ra] += self.count[rb];
            self.count[rb] = 0;
        }
    }

    fn add_count(&mut self, x: usize, c: usize) {
        let r = self.find(x);
        self.count[r] += c;
    }

    fn into_blocks(mut self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let d = self.parent.len();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); d];
        for x in 0..d {
            let r = self.find(x);
            members[r].push(x);
        }
        let mut blocks = Vec::new();
        let mut counts = Vec::new();
        for (group, &count) in members.iter_mut().zip(&self.count) {
            if !group.is_empty() {
                blocks.push(std::mem::take(group));
                counts.push(count);
            }
        }
        (blocks, counts)
    }
}
