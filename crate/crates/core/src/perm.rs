//! Permutations of `{1,..,d}` and the geodesic partial product.
//!
//! A [`Permutation`] is stored as its image vector (zero-based in memory,
//! one-based in every serialized form). The transposition word-length norm
//! `N(s) = d - #cycles(s)` turns the symmetric group into a partially
//! multiplicative quandle: [`GeoElement::partial_product`] is defined exactly
//! on *geodesic* pairs, i.e. when the norms add up.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image of length {len} is not a bijection of 1..={len}")]
    NotABijection { len: usize },
    #[error("point {point} out of range for degree {d}")]
    PointOutOfRange { point: usize, d: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cycles are not disjoint: point {0} repeated")]
    OverlappingCycles(usize),
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// A permutation of `{0,..,d-1}` in image form: `image[i]` is where `i` goes.
///
/// Comparison is lexicographic on the image vector, which is also the order
/// used to pick canonical orbit representatives.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation {
            image: (0..d).collect(),
        }
    }

    /// Builds a permutation from a zero-based image vector.
    pub fn from_images(image: Vec<usize>) -> Result<Self, PermError> {
        let d = image.len();
        let mut seen = vec![false; d];
        for &x in &image {
            if x >= d || seen[x] {
                return Err(PermError::NotABijection { len: d });
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation from a one-based image vector, as used in all
    /// serialized formats ("2 3 1" is the 3-cycle `1 -> 2 -> 3 -> 1`).
    pub fn from_one_line(image: &[usize]) -> Result<Self, PermError> {
        if image.contains(&0) {
            return Err(PermError::NotABijection { len: image.len() });
        }
        Self::from_images(image.iter().map(|&x| x - 1).collect())
    }

    /// The long cycle `lc_d`: `0 -> 1 -> ... -> d-1 -> 0`.
    pub fn long_cycle(d: usize) -> Self {
        Permutation {
            image: (0..d).map(|i| (i + 1) % d).collect(),
        }
    }

    /// The transposition swapping the zero-based points `a` and `b`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        assert!(
            a < d && b < d && a != b,
            "invalid transposition ({a} {b}) in degree {d}"
        );
        let mut image: Vec<usize> = (0..d).collect();
        image.swap(a, b);
        Permutation { image }
    }

    /// Builds a permutation of degree `d` from disjoint cycles (zero-based).
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut image: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= d {
                    return Err(PermError::PointOutOfRange { point: x + 1, d });
                }
                if seen[x] {
                    return Err(PermError::OverlappingCycles(x + 1));
                }
                seen[x] = true;
                image[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(image)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// One-based image vector, the wire format.
    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    /// Group product `self * rhs` in which `rhs` acts first:
    /// `(self * rhs)(x) = self(rhs(x))`.
    pub fn compose(&self, rhs: &Permutation) -> Self {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "composing permutations of different degrees"
        );
        Permutation {
            image: rhs.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    /// Conjugate `self^tau = tau^-1 * self * tau`.
    pub fn conjugate(&self, tau: &Permutation) -> Self {
        let inv = tau.inverse();
        inv.compose(self).compose(tau)
    }

    /// The ordered product of a sequence, rightmost factor acting first.
    pub fn product(
        d: usize,
        factors: impl IntoIterator<Item = impl std::borrow::Borrow<Permutation>>,
    ) -> Self {
        let mut acc = Permutation::identity(d);
        for f in factors {
            acc = acc.compose(f.borrow());
        }
        acc
    }

    /// Cycle decomposition including fixed points, each cycle starting at its
    /// minimum and cycles ordered by minimum. The cycles partition `{0,..,d-1}`.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut count = 0;
        for start in 0..d {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
            }
        }
        count
    }

    /// Word-length norm with respect to all transpositions:
    /// `N(s) = d - #cycles(s)` (fixed points count as cycles).
    pub fn norm(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    /// Sign parity; always congruent to the norm mod 2.
    pub fn parity(&self) -> usize {
        self.norm() % 2
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lambda = BTreeMap::new();
        for cycle in self.cycles() {
            if cycle.len() >= 2 {
                *lambda.entry(cycle.len()).or_insert(0) += 1;
            }
        }
        CycleType {
            d: self.degree(),
            lambda,
        }
    }

    /// Points moved by the permutation, sorted.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image[i] != i).collect()
    }

    /// Cycle notation with one-based points; fixed points omitted, identity
    /// printed as "()".
    pub fn to_cycle_string(&self) -> String {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() >= 2).collect();
        if nontrivial.is_empty() {
            return "()".to_string();
        }
        nontrivial
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|&x| (x + 1).to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]", self.to_cycle_string())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses one-line notation "2 3 1". Cycle notation needs an ambient
    /// degree; see [`parse_permutation`].
    fn from_str(s: &str) -> Result<Self, PermError> {
        let nums: Result<Vec<usize>, _> =
            s.split_whitespace().map(|t| t.parse::<usize>()).collect();
        let nums = nums.map_err(|_| PermError::Parse(s.to_string()))?;
        if nums.is_empty() {
            return Err(PermError::Parse(s.to_string()));
        }
        Self::from_one_line(&nums)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(v: Vec<usize>) -> Result<Self, PermError> {
        Permutation::from_one_line(&v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.one_line()
    }
}

/// Parses either one-line notation ("2 3 1") or cycle notation ("(1 2)(3 4 5)",
/// commas allowed). Cycle notation takes the ambient degree from `d`, or from
/// the largest point mentioned when `d` is `None`.
pub fn parse_permutation(s: &str, d: Option<usize>) -> Result<Permutation, PermError> {
    let s = s.trim();
    if !s.contains('(') {
        if s == "id" || s == "()" {
            return match d {
                Some(d) => Ok(Permutation::identity(d)),
                None => Err(PermError::Parse(s.to_string())),
            };
        }
        let p: Permutation = s.parse()?;
        if let Some(d) = d {
            if d != p.degree() {
                return Err(PermError::DegreeMismatch(d, p.degree()));
            }
        }
        return Ok(p);
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut max_point = 0usize;
    for chunk in s.split(')') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let Some(body) = chunk.strip_prefix('(') else {
            return Err(PermError::Parse(s.to_string()));
        };
        let pts: Result<Vec<usize>, _> = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>())
            .collect();
        let pts = pts.map_err(|_| PermError::Parse(s.to_string()))?;
        if pts.contains(&0) {
            return Err(PermError::Parse(s.to_string()));
        }
        max_point = max_point.max(pts.iter().copied().max().unwrap_or(0));
        cycles.push(pts.iter().map(|&x| x - 1).collect());
    }
    let d = d.unwrap_or(max_point);
    if max_point > d {
        return Err(PermError::PointOutOfRange {
            point: max_point,
            d,
        });
    }
    Permutation::from_cycles(d, &cycles)
}

/// All permutations of degree `d` (Heap's algorithm); intended for desk-scale
/// enumeration, `d!` entries.
pub fn all_permutations(d: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..d).collect();
    let n = d;
    out.push(Permutation { image: a.clone() });
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(Permutation { image: a.clone() });
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// All transpositions of degree `d`, ordered lexicographically by support.
pub fn transpositions(d: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            out.push(Permutation::transposition(d, a, b));
        }
    }
    out
}

/// An element of the geodesic PMQ: a permutation with the partial product
/// defined exactly on norm-additive pairs. The identity permutation is the
/// PMQ unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeoElement {
    perm: Permutation,
}

impl GeoElement {
    pub fn new(perm: Permutation) -> Self {
        GeoElement { perm }
    }

    pub fn unit(d: usize) -> Self {
        GeoElement {
            perm: Permutation::identity(d),
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn into_perm(self) -> Permutation {
        self.perm
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn norm(&self) -> usize {
        self.perm.norm()
    }

    pub fn is_unit(&self) -> bool {
        self.perm.is_identity()
    }

    /// The geodesic partial product: `Some(self * rhs)` (rhs acting first)
    /// when `N(self * rhs) = N(self) + N(rhs)`, `None` otherwise. An undefined
    /// product is a normal outcome, not an error.
    ///
    /// ```
    /// use hurlab_core::perm::{parse_permutation, GeoElement};
    /// let t12 = GeoElement::new(parse_permutation("(1 2)", Some(3)).unwrap());
    /// let t23 = GeoElement::new(parse_permutation("(2 3)", Some(3)).unwrap());
    /// let lc3 = t12.partial_product(&t23).unwrap();
    /// assert_eq!(lc3.perm().one_line(), vec![2, 3, 1]);
    /// assert_eq!(t12.partial_product(&t12), None); // norms do not add
    /// ```
    pub fn partial_product(&self, rhs: &GeoElement) -> Option<GeoElement> {
        let prod = self.perm.compose(&rhs.perm);
        if prod.norm() == self.perm.norm() + rhs.perm.norm() {
            Some(GeoElement { perm: prod })
        } else {
            None
        }
    }

    /// Quandle conjugation `self^tau = tau^-1 * self * tau`; preserves norm
    /// and cycle type.
    pub fn conjugate(&self, tau: &Permutation) -> GeoElement {
        GeoElement {
            perm: self.perm.conjugate(tau),
        }
    }
}

impl From<Permutation> for GeoElement {
    fn from(perm: Permutation) -> Self {
        GeoElement { perm }
    }
}

impl fmt::Display for GeoElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm)
    }
}

/// A cycle type: multiplicities `lambda[i]` of cycle lengths `i >= 2` in an
/// ambient degree `d`. `N(lambda) = sum (i-1) lambda_i` is the norm of any
/// representative; fixed points are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CycleType {
    pub d: usize,
    pub lambda: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn new(d: usize, lambda: BTreeMap<usize, usize>) -> Self {
        let lambda = lambda
            .into_iter()
            .filter(|&(i, m)| i >= 2 && m > 0)
            .collect();
        CycleType { d, lambda }
    }

    /// `N(lambda) = sum_{i>=2} (i-1) lambda_i`.
    pub fn norm(&self) -> usize {
        self.lambda.iter().map(|(&i, &m)| (i - 1) * m).sum()
    }

    /// `sum_{i>=2} i lambda_i`, the number of non-fixed points; at most `d`.
    pub fn moved_points(&self) -> usize {
        self.lambda.iter().map(|(&i, &m)| i * m).sum()
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.lambda.get(&i).copied().unwrap_or(0)
    }

    /// A canonical representative in `S_d`, cycles packed from the left.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 0usize;
        for (&len, &mult) in &self.lambda {
            for _ in 0..mult {
                cycles.push((next..next + len).collect::<Vec<_>>());
                next += len;
            }
        }
        Permutation::from_cycles(self.d, &cycles).expect("packed cycles are disjoint")
    }
}

impl PartialOrd for CycleType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycleType {
    /// Lexicographic on the dense multiplicity vector `(lambda_2, lambda_3, ...)`,
    /// with the ambient degree as the leading key.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let max_len = self
            .lambda
            .keys()
            .chain(other.lambda.keys())
            .copied()
            .max()
            .unwrap_or(1);
        self.d.cmp(&other.d).then_with(|| {
            for i in 2..=max_len {
                let ord = self.multiplicity(i).cmp(&other.multiplicity(i));
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lambda.is_empty() {
            return write!(f, "1^{}", self.d);
        }
        let parts: Vec<String> = self
            .lambda
            .iter()
            .map(|(i, m)| {
                if *m == 1 {
                    i.to_string()
                } else {
                    format!("{i}^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn p(s: &str) -> Permutation {
        parse_permutation(s, None).unwrap()
    }

    fn pd(s: &str, d: usize) -> Permutation {
        parse_permutation(s, Some(d)).unwrap()
    }

    /// Independent word-length oracle: BFS over right multiplication by
    /// transpositions, starting at the identity.
    fn word_length_bfs(d: usize) -> HashMap<Permutation, usize> {
        let trs = transpositions(d);
        let mut dist = HashMap::new();
        let mut frontier = vec![Permutation::identity(d)];
        dist.insert(Permutation::identity(d), 0usize);
        let mut level = 0usize;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for g in &frontier {
                for t in &trs {
                    let h = g.compose(t);
                    if !dist.contains_key(&h) {
                        dist.insert(h.clone(), level);
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    #[test]
    fn norm_matches_bfs_word_length_up_to_degree_5() {
        for d in 1..=5 {
            let oracle = word_length_bfs(d);
            for s in all_permutations(d) {
                assert_eq!(s.norm(), oracle[&s], "norm mismatch for {s:?}");
            }
        }
    }

    #[test]
    fn norm_examples() {
        for d in 1..=8 {
            assert_eq!(Permutation::long_cycle(d).norm(), d - 1);
            assert_eq!(Permutation::identity(d).norm(), 0);
        }
        assert_eq!(pd("(1 2)(3 4 5)", 5).norm(), 3);
    }

    #[test]
    fn cycle_count_plus_norm_is_degree_and_parity_matches() {
        for d in 1..=5 {
            for s in all_permutations(d) {
                assert_eq!(s.cycle_count() + s.norm(), d);
                assert_eq!(s.parity(), s.norm() % 2);
            }
        }
    }

    #[test]
    fn adjacent_transpositions_multiply_to_long_cycle() {
        // Pins the global composition convention: the right factor acts first.
        for d in 2..=8 {
            let prod = Permutation::product(
                d,
                (0..d - 1).map(|j| Permutation::transposition(d, j, j + 1)),
            );
            assert_eq!(prod, Permutation::long_cycle(d));
        }
    }

    #[test]
    fn partial_product_examples() {
        let t12 = GeoElement::new(pd("(1 2)", 3));
        let t23 = GeoElement::new(pd("(2 3)", 3));
        assert_eq!(t12.partial_product(&t12), None);
        let prod = t12.partial_product(&t23).expect("geodesic pair");
        assert_eq!(prod.perm(), &Permutation::long_cycle(3));
        assert_eq!(prod.norm(), 2);
        for s in all_permutations(4) {
            let g = GeoElement::new(s.clone());
            let unit = GeoElement::unit(4);
            assert_eq!(unit.partial_product(&g), Some(g.clone()));
            assert_eq!(g.partial_product(&unit), Some(g));
        }
    }

    #[test]
    fn partial_product_defined_iff_norms_add_exhaustive_d4() {
        for a in all_permutations(4) {
            for b in all_permutations(4) {
                let ga = GeoElement::new(a.clone());
                let gb = GeoElement::new(b.clone());
                let prod = a.compose(&b);
                let defined = ga.partial_product(&gb).is_some();
                assert_eq!(defined, prod.norm() == a.norm() + b.norm());
                if let Some(g) = ga.partial_product(&gb) {
                    assert_eq!(g.perm(), &prod);
                    // Augmentation: a defined product of non-units is a non-unit.
                    if !ga.is_unit() && !gb.is_unit() {
                        assert!(!g.is_unit());
                    }
                }
            }
        }
    }

    #[test]
    fn braiding_identity() {
        // (j+1, j+2)^{lc_d} = (j, j+1), one-based.
        for d in 2..=10 {
            let lc = Permutation::long_cycle(d);
            for j in 0..d.saturating_sub(2) {
                let t = Permutation::transposition(d, j + 1, j + 2);
                assert_eq!(t.conjugate(&lc), Permutation::transposition(d, j, j + 1));
            }
        }
    }

    #[test]
    fn conjugation_quandle_axioms() {
        for s in all_permutations(4) {
            let g = GeoElement::new(s.clone());
            assert_eq!(g.conjugate(&Permutation::identity(4)), g);
            assert_eq!(g.conjugate(&s), g);
        }
    }

    #[test]
    fn cycle_type_examples() {
        let lc4 = Permutation::long_cycle(4);
        assert_eq!(lc4.cycles(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(lc4.cycle_type().lambda, BTreeMap::from([(4, 1)]));

        let id = Permutation::identity(5);
        assert!(id.cycle_type().lambda.is_empty());
        assert_eq!(id.cycle_type().norm(), 0);

        let s = pd("(1 2)(3 4 5)", 6);
        assert_eq!(s.cycle_type().lambda, BTreeMap::from([(2, 1), (3, 1)]));
        assert_eq!(s.cycle_type().norm(), 3);
        assert_eq!(s.cycle_type().norm(), s.norm());
    }

    #[test]
    fn cycles_partition_the_points() {
        for s in all_permutations(5) {
            let mut pts: Vec<usize> = s.cycles().into_iter().flatten().collect();
            pts.sort_unstable();
            assert_eq!(pts, (0..5).collect::<Vec<_>>());
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(p("2 3 1"), Permutation::long_cycle(3));
        assert_eq!(p("(1 2)(3 4 5)"), pd("(1 2)(3 4 5)", 5));
        assert_eq!(pd("(1 2)", 4).to_string(), "2 1 3 4");
        assert_eq!(pd("(1 2)", 4).to_cycle_string(), "(1 2)");
        assert_eq!(Permutation::identity(3).to_cycle_string(), "()");
        let s = pd("(2 4)(1 3)", 4);
        assert_eq!(s.to_string().parse::<Permutation>().unwrap(), s);
        assert!("0 1 2".parse::<Permutation>().is_err());
        assert!("2 2 1".parse::<Permutation>().is_err());
        assert!(parse_permutation("(1 2)(2 3)", None).is_err());
    }

    #[test]
    fn serde_uses_one_based_images() {
        let s = Permutation::long_cycle(3);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,3,1]");
        let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Permutation>("[2,2,1]").is_err());
    }

    fn perm_strategy(d: usize) -> impl Strategy<Value = Permutation> {
        Just((0..d).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|image| Permutation::from_images(image).expect("shuffled identity"))
    }

    fn two_perms() -> impl Strategy<Value = (Permutation, Permutation)> {
        (1usize..=7).prop_flat_map(|d| (perm_strategy(d), perm_strategy(d)))
    }

    fn three_perms() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1usize..=7).prop_flat_map(|d| (perm_strategy(d), perm_strategy(d), perm_strategy(d)))
    }

    proptest! {
        #[test]
        fn conjugation_preserves_norm_and_cycle_type((s, t) in two_perms()) {
            let c = s.conjugate(&t);
            prop_assert_eq!(c.norm(), s.norm());
            prop_assert_eq!(c.cycle_type(), s.cycle_type());
            prop_assert_eq!(c.conjugate(&t.inverse()), s);
        }

        #[test]
        fn compose_is_associative_and_inverse_cancels((a, b, c) in three_perms()) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert_eq!(a.compose(&a.inverse()), Permutation::identity(a.degree()));
        }

        #[test]
        fn one_line_round_trips((s, _) in two_perms()) {
            prop_assert_eq!(s.to_string().parse::<Permutation>().unwrap(), s.clone());
            prop_assert_eq!(parse_permutation(&s.to_cycle_string(), Some(s.degree())).unwrap(), s);
        }
    }
}
