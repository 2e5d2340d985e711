//! Braid moves on factorization tuples and orbit enumeration.
//!
//! A [`FactorSequence`] is an ordered tuple of non-unit PMQ elements. The
//! braid group acts by [`hurwitz_move`]; geodesic merge/split of adjacent
//! factors are the extra moves under which the completion normal form is the
//! full orbit invariant. [`orbit`] computes BFS closures, and
//! [`classify_components`] enumerates and groups all tuples of a given
//! length, which at desk scale reproduces the classical classification of
//! connected components of spaces of simple branched covers.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::completion::{self, CompletionElement, CompletionError};
use crate::perm::{all_permutations, transpositions, GeoElement, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("adjacent factors are not a geodesic pair")]
    NotGeodesic,
    #[error("budget exceeded: more than {cap} sequences visited")]
    BudgetExceeded { cap: usize },
    #[error(transparent)]
    Completion(#[from] CompletionError),
}

/// Default BFS node cap; exceeding it is an error, never silent truncation.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// An ordered tuple of non-unit geodesic PMQ elements of a common degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FactorSequenceDto", into = "FactorSequenceDto")]
pub struct FactorSequence {
    d: usize,
    factors: Vec<GeoElement>,
}

#[derive(Serialize, Deserialize)]
struct FactorSequenceDto {
    d: usize,
    factors: Vec<Vec<usize>>,
}

impl TryFrom<FactorSequenceDto> for FactorSequence {
    type Error = OrbitError;
    fn try_from(dto: FactorSequenceDto) -> Result<Self, OrbitError> {
        let factors = dto
            .factors
            .iter()
            .map(|f| Permutation::from_one_line(f).map(GeoElement::new))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CompletionError::from)?;
        FactorSequence::new(dto.d, factors)
    }
}

impl From<FactorSequence> for FactorSequenceDto {
    fn from(s: FactorSequence) -> FactorSequenceDto {
        FactorSequenceDto {
            d: s.d,
            factors: s.factors.iter().map(|f| f.perm().one_line()).collect(),
        }
    }
}

impl FactorSequence {
    pub fn new(d: usize, factors: Vec<GeoElement>) -> Result<Self, OrbitError> {
        for f in &factors {
            if f.degree() != d {
                return Err(CompletionError::DegreeMismatch(d, f.degree()).into());
            }
            if f.is_unit() {
                return Err(CompletionError::IdentityFactor.into());
            }
        }
        Ok(FactorSequence { d, factors })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[GeoElement] {
        &self.factors
    }

    /// Ordered product as a permutation, rightmost factor acting first.
    pub fn product(&self) -> Permutation {
        Permutation::product(self.d, self.factors.iter().map(|g| g.perm()))
    }

    /// Total norm of the factors; invariant under all moves.
    pub fn total_norm(&self) -> usize {
        self.factors.iter().map(|f| f.norm()).sum()
    }

    /// Completion normal form; the orbit invariant.
    pub fn normal_form(&self) -> CompletionElement {
        completion::normal_form(self.d, &self.factors)
            .expect("factor sequences contain no unit elements")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Left,
    Right,
}

/// The braid move at the adjacent pair `(i, i+1)` (zero-based `i`).
///
/// `Right` sends `(a, b)` to `(b, b^-1 a b)`, `Left` is its inverse
/// `(a, b) -> (a b a^-1, a)`. The ordered product and the multiset of
/// conjugacy classes are preserved.
pub fn hurwitz_move(
    s: &FactorSequence,
    i: usize,
    dir: Direction,
) -> Result<FactorSequence, OrbitError> {
    if i + 1 >= s.factors.len() {
        return Err(OrbitError::IndexOutOfRange {
            index: i,
            len: s.factors.len(),
        });
    }
    let mut factors = s.factors.clone();
    let (a, b) = (factors[i].clone(), factors[i + 1].clone());
    match dir {
        Direction::Right => {
            factors[i] = b.clone();
            factors[i + 1] = a.conjugate(b.perm());
        }
        Direction::Left => {
            factors[i] = b.conjugate(&a.perm().inverse());
            factors[i + 1] = a;
        }
    }
    Ok(FactorSequence { d: s.d, factors })
}

/// Replaces the adjacent pair `(i, i+1)` by its geodesic product.
pub fn coalesce_move(s: &FactorSequence, i: usize) -> Result<FactorSequence, OrbitError> {
    if i + 1 >= s.factors.len() {
        return Err(OrbitError::IndexOutOfRange {
            index: i,
            len: s.factors.len(),
        });
    }
    let prod = s.factors[i]
        .partial_product(&s.factors[i + 1])
        .ok_or(OrbitError::NotGeodesic)?;
    let mut factors = s.factors.clone();
    factors.splice(i..=i + 1, [prod]);
    Ok(FactorSequence { d: s.d, factors })
}

/// Replaces the factor at `i` by a geodesic two-factorization `(b, c)`.
pub fn split_move(
    s: &FactorSequence,
    i: usize,
    b: GeoElement,
    c: GeoElement,
) -> Result<FactorSequence, OrbitError> {
    if i >= s.factors.len() {
        return Err(OrbitError::IndexOutOfRange {
            index: i,
            len: s.factors.len(),
        });
    }
    if b.is_unit() || c.is_unit() {
        return Err(CompletionError::IdentityFactor.into());
    }
    match b.partial_product(&c) {
        Some(prod) if prod == s.factors[i] => {}
        _ => return Err(OrbitError::NotGeodesic),
    }
    let mut factors = s.factors.clone();
    factors.splice(i..=i, [b, c]);
    Ok(FactorSequence { d: s.d, factors })
}

/// All geodesic two-factorizations `(b, c)` of a non-unit element into
/// non-unit elements.
pub fn geodesic_splits(a: &GeoElement) -> Vec<(GeoElement, GeoElement)> {
    let d = a.degree();
    let mut out = Vec::new();
    for b in all_permutations(d) {
        if b.is_identity() {
            continue;
        }
        let c = b.inverse().compose(a.perm());
        if c.is_identity() {
            continue;
        }
        if b.norm() + c.norm() == a.norm() {
            out.push((GeoElement::new(b), GeoElement::new(c)));
        }
    }
    out
}

/// Which moves to close under.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveSet {
    /// Braid moves only; length is invariant, so orbits are always finite.
    Hurwitz,
    /// Braid moves plus geodesic coalesce/split; total norm is invariant.
    HurwitzAndGeodesic,
}

/// BFS closure of a sequence under a move set, as a sorted set.
///
/// The canonical representative of the returned orbit is its minimum in the
/// derived lexicographic order on factor images.
pub fn orbit(
    s: &FactorSequence,
    moves: MoveSet,
    node_cap: usize,
) -> Result<Vec<FactorSequence>, OrbitError> {
    let mut seen: HashMap<FactorSequence, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(s.clone(), ());
    queue.push_back(s.clone());
    while let Some(current) = queue.pop_front() {
        for next in neighbors(&current, moves) {
            if !seen.contains_key(&next) {
                if seen.len() >= node_cap {
                    return Err(OrbitError::BudgetExceeded { cap: node_cap });
                }
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<FactorSequence> = seen.into_keys().collect();
    out.sort();
    Ok(out)
}

fn neighbors(s: &FactorSequence, moves: MoveSet) -> Vec<FactorSequence> {
    let mut out = Vec::new();
    for i in 0..s.len().saturating_sub(1) {
        out.push(hurwitz_move(s, i, Direction::Right).expect("index in range"));
        out.push(hurwitz_move(s, i, Direction::Left).expect("index in range"));
        if moves == MoveSet::HurwitzAndGeodesic {
            if let Ok(merged) = coalesce_move(s, i) {
                out.push(merged);
            }
        }
    }
    if moves == MoveSet::HurwitzAndGeodesic {
        for i in 0..s.len() {
            for (b, c) in geodesic_splits(&s.factors[i]) {
                out.push(split_move(s, i, b, c).expect("split of a factor is valid"));
            }
        }
    }
    out
}

/// One orbit in a classification report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Orbit {
    pub size: usize,
    pub representative: FactorSequence,
    pub normal_form: CompletionElement,
}

/// Orbit classification of all length-k tuples over an alphabet.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub orbit_count: usize,
    pub orbits: Vec<Orbit>,
    /// Completion normal form -> indices into `orbits` with that form.
    pub classifier: BTreeMap<CompletionElement, Vec<usize>>,
}

/// Groups all length-`k` tuples (of transpositions, or of all non-unit
/// elements) by Hurwitz orbit. The budget bounds both the enumeration size
/// and the BFS.
pub fn classify_components(
    d: usize,
    k: usize,
    transpositions_only: bool,
    node_cap: usize,
) -> Result<OrbitReport, OrbitError> {
    Ok(classify_components_detailed(d, k, transpositions_only, node_cap)?.0)
}

/// As [`classify_components`], also returning the tuple -> orbit index map.
pub fn classify_components_detailed(
    d: usize,
    k: usize,
    transpositions_only: bool,
    node_cap: usize,
) -> Result<(OrbitReport, HashMap<FactorSequence, usize>), OrbitError> {
    let alphabet: Vec<GeoElement> = if transpositions_only {
        transpositions(d).into_iter().map(GeoElement::new).collect()
    } else {
        all_permutations(d)
            .into_iter()
            .filter(|p| !p.is_identity())
            .map(GeoElement::new)
            .collect()
    };
    let total = alphabet
        .len()
        .checked_pow(k as u32)
        .filter(|&t| t <= node_cap);
    let Some(_) = total else {
        return Err(OrbitError::BudgetExceeded { cap: node_cap });
    };

    let mut assignment: HashMap<FactorSequence, usize> = HashMap::new();
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut indices = vec![0usize; k];
    loop {
        let factors: Vec<GeoElement> = indices.iter().map(|&i| alphabet[i].clone()).collect();
        let seq = FactorSequence { d, factors };
        if !assignment.contains_key(&seq) {
            let members = orbit(&seq, MoveSet::Hurwitz, node_cap)?;
            let representative = members[0].clone();
            let normal_form = representative.normal_form();
            let id = orbits.len();
            orbits.push(Orbit {
                size: members.len(),
                representative,
                normal_form,
            });
            for m in members {
                assignment.insert(m, id);
            }
        }
        // Odometer over tuples.
        let mut pos = k;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < alphabet.len() {
                break;
            }
            indices[pos] = 0;
        }
        if indices.iter().all(|&i| i == 0) {
            break;
        }
        if k == 0 {
            break;
        }
    }

    let mut classifier: BTreeMap<CompletionElement, Vec<usize>> = BTreeMap::new();
    for (id, orbit) in orbits.iter().enumerate() {
        classifier
            .entry(orbit.normal_form.clone())
            .or_default()
            .push(id);
    }
    let report = OrbitReport {
        orbit_count: orbits.len(),
        orbits,
        classifier,
    };
    Ok((report, assignment))
}

/// Splits a sequence into sub-sequences along the blocks of its normal form.
///
/// Every factor's support lies inside a single block, so the partition is
/// well defined; parts are ordered by block minimum, and factors keep their
/// relative order. A single-block sequence comes back whole.
pub fn split_by_blocks(s: &FactorSequence) -> Vec<FactorSequence> {
    let nf = s.normal_form();
    let blocks: Vec<&Vec<usize>> = nf.blocks().iter().filter(|b| b.len() >= 2).collect();
    if blocks.len() <= 1 {
        return vec![s.clone()];
    }
    let mut parts: Vec<FactorSequence> = blocks
        .iter()
        .map(|_| FactorSequence {
            d: s.d,
            factors: Vec::new(),
        })
        .collect();
    for f in &s.factors {
        let support = f.perm().support();
        let bi = blocks
            .iter()
            .position(|b| support.iter().all(|x| b.contains(x)))
            .expect("factor support lies inside one block of the normal form");
        parts[bi].factors.push(f.clone());
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::random_element;
    use crate::perm::parse_permutation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::{BTreeSet, HashSet};

    fn geo(s: &str, d: usize) -> GeoElement {
        GeoElement::new(parse_permutation(s, Some(d)).unwrap())
    }

    fn seq(d: usize, factors: &[&str]) -> FactorSequence {
        FactorSequence::new(d, factors.iter().map(|f| geo(f, d)).collect()).unwrap()
    }

    #[test]
    fn hurwitz_move_examples() {
        let s = seq(2, &["(1 2)", "(1 2)"]);
        assert_eq!(hurwitz_move(&s, 0, Direction::Right).unwrap(), s);

        let s = seq(3, &["(1 2)", "(2 3)"]);
        let moved = hurwitz_move(&s, 0, Direction::Right).unwrap();
        assert_eq!(moved, seq(3, &["(2 3)", "(1 3)"]));
        assert_eq!(moved.product(), s.product());
        assert_eq!(hurwitz_move(&moved, 0, Direction::Left).unwrap(), s);
        assert!(hurwitz_move(&s, 1, Direction::Right).is_err());
    }

    #[test]
    fn moves_preserve_product_and_class_multiset() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let d = rng.gen_range(2..=5);
            let e = random_element(d, &mut rng);
            let s = FactorSequence::new(d, crate::completion::canonical_factorization(&e)).unwrap();
            if s.len() < 2 {
                continue;
            }
            let i = rng.gen_range(0..s.len() - 1);
            let dir = if rng.gen_bool(0.5) {
                Direction::Left
            } else {
                Direction::Right
            };
            let moved = hurwitz_move(&s, i, dir).unwrap();
            assert_eq!(moved.product(), s.product());
            let classes = |t: &FactorSequence| {
                let mut v: Vec<_> = t.factors().iter().map(|f| f.perm().cycle_type()).collect();
                v.sort();
                v
            };
            assert_eq!(classes(&moved), classes(&s));
            assert_eq!(moved.normal_form(), s.normal_form());
        }
    }

    #[test]
    fn coalesce_and_split_examples() {
        let s = seq(3, &["(1 2)", "(2 3)"]);
        let merged = coalesce_move(&s, 0).unwrap();
        assert_eq!(merged, seq(3, &["(1 2 3)"]));
        assert_eq!(merged.normal_form(), s.normal_form());

        let bad = seq(3, &["(1 2)", "(1 2)"]);
        assert_eq!(coalesce_move(&bad, 0), Err(OrbitError::NotGeodesic));

        let back = split_move(&merged, 0, geo("(1 2)", 3), geo("(2 3)", 3)).unwrap();
        assert_eq!(back, s);
        assert!(split_move(&merged, 0, geo("(1 2)", 3), geo("(1 3)", 3)).is_err());
    }

    #[test]
    fn orbit_examples() {
        // The three pairs multiplying to (1 3 2) form one orbit.
        let s = seq(3, &["(1 2)", "(1 3)"]);
        let orb = orbit(&s, MoveSet::Hurwitz, 1000).unwrap();
        assert_eq!(orb.len(), 3);
        for m in &orb {
            assert_eq!(m.product(), s.product());
        }

        // Singleton sequences admit no moves.
        let single = seq(3, &["(1 2 3)"]);
        assert_eq!(
            orbit(&single, MoveSet::Hurwitz, 1000).unwrap(),
            vec![single]
        );

        // All nine transposition pairs fall into five orbits.
        let report = classify_components(3, 2, true, 10_000).unwrap();
        assert_eq!(report.orbit_count, 5);
        let total: usize = report.orbits.iter().map(|o| o.size).sum();
        assert_eq!(total, 9);
        // ... matching five distinct normal forms.
        assert_eq!(report.classifier.len(), 5);

        // Tiny budget is an explicit error.
        assert!(matches!(
            orbit(&s, MoveSet::Hurwitz, 2),
            Err(OrbitError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn classify_k1_gives_singletons() {
        let report = classify_components(3, 1, true, 1000).unwrap();
        assert_eq!(report.orbit_count, 3);
        assert!(report.orbits.iter().all(|o| o.size == 1));
        assert_eq!(report.classifier.len(), 3);
    }

    #[test]
    fn hurwitz_criterion_small_cases() {
        // d=3, k=4, total monodromy the long cycle: one transitive orbit.
        let (report, _) = classify_components_detailed(3, 4, true, 100_000).unwrap();
        let lc3 = Permutation::long_cycle(3);
        let transitive_with_lc: Vec<&Orbit> = report
            .orbits
            .iter()
            .filter(|o| o.normal_form.sigma() == &lc3 && o.normal_form.blocks().len() == 1)
            .collect();
        assert_eq!(transitive_with_lc.len(), 1);

        // d=2, k=3: a single orbit of transitive triples with product (1 2).
        let report = classify_components(2, 3, true, 1000).unwrap();
        assert_eq!(report.orbit_count, 1);
        assert_eq!(report.orbits[0].size, 1);
    }

    #[test]
    fn split_by_blocks_examples() {
        let s = seq(4, &["(1 2)", "(3 4)", "(1 2)"]);
        let parts = split_by_blocks(&s);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], seq(4, &["(1 2)", "(1 2)"]));
        assert_eq!(parts[1], seq(4, &["(3 4)"]));

        let single = seq(3, &["(1 2)", "(2 3)"]);
        assert_eq!(split_by_blocks(&single), vec![single]);
    }

    #[test]
    fn orbit_size_is_multinomial_times_part_orbit_sizes() {
        // Factors in different blocks shuffle freely past each other, so the
        // orbit of the whole sequence is the product of the part orbits
        // together with a free choice of interleaving.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut tested = 0;
        while tested < 100 {
            let d = rng.gen_range(3..=5);
            let k = rng.gen_range(2..=4);
            let trs = transpositions(d);
            let factors: Vec<GeoElement> = (0..k)
                .map(|_| GeoElement::new(trs[rng.gen_range(0..trs.len())].clone()))
                .collect();
            let s = FactorSequence::new(d, factors).unwrap();
            let parts = split_by_blocks(&s);
            if parts.len() < 2 {
                continue;
            }
            tested += 1;
            let whole = orbit(&s, MoveSet::Hurwitz, 100_000).unwrap().len();
            let product: usize = parts
                .iter()
                .map(|p| orbit(p, MoveSet::Hurwitz, 100_000).unwrap().len())
                .product();
            let factorial = |n: usize| (1..=n).product::<usize>();
            let interleavings =
                factorial(s.len()) / parts.iter().map(|p| factorial(p.len())).product::<usize>();
            assert_eq!(whole, interleavings * product, "sequence {s:?}");
        }
    }

    #[test]
    fn normal_form_constant_on_combined_move_classes_d3() {
        // Universe: all tuples over non-unit elements of S_3 with total norm <= 4.
        let d = 3;
        let alphabet: Vec<GeoElement> = all_permutations(d)
            .into_iter()
            .filter(|p| !p.is_identity())
            .map(GeoElement::new)
            .collect();
        let mut universe: Vec<FactorSequence> = vec![];
        let mut frontier: Vec<Vec<GeoElement>> = vec![vec![]];
        while let Some(prefix) = frontier.pop() {
            let norm: usize = prefix.iter().map(|f| f.norm()).sum();
            if !prefix.is_empty() {
                universe.push(FactorSequence::new(d, prefix.clone()).unwrap());
            }
            for a in &alphabet {
                if norm + a.norm() <= 4 {
                    let mut next = prefix.clone();
                    next.push(a.clone());
                    frontier.push(next);
                }
            }
        }
        // Equivalence classes under Hurwitz + coalesce/split = normal form fibers.
        let mut class_of: HashMap<FactorSequence, usize> = HashMap::new();
        let mut class_nf: Vec<CompletionElement> = Vec::new();
        for s in &universe {
            if class_of.contains_key(s) {
                continue;
            }
            let members = orbit(s, MoveSet::HurwitzAndGeodesic, 1_000_000).unwrap();
            let id = class_nf.len();
            class_nf.push(s.normal_form());
            for m in members {
                class_of.insert(m, id);
            }
        }
        let mut fibers: HashMap<CompletionElement, BTreeSet<usize>> = HashMap::new();
        for s in &universe {
            let id = class_of[s];
            assert_eq!(
                s.normal_form(),
                class_nf[id],
                "normal form not constant on class"
            );
            fibers.entry(s.normal_form()).or_default().insert(id);
        }
        for (nf, classes) in fibers {
            assert_eq!(
                classes.len(),
                1,
                "normal form {nf} splits into several classes"
            );
        }
        // Also: the set of represented normal forms is closed and consistent.
        let distinct: HashSet<CompletionElement> =
            universe.iter().map(|s| s.normal_form()).collect();
        assert_eq!(distinct.len(), class_nf.len());
    }

    #[test]
    fn serde_round_trip() {
        let s = seq(3, &["(1 2)", "(2 3)"]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"d":3,"factors":[[2,1,3],[1,3,2]]}"#);
        let back: FactorSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        // Unit factors are rejected.
        assert!(serde_json::from_str::<FactorSequence>(r#"{"d":2,"factors":[[1,2]]}"#).is_err());
    }
}
