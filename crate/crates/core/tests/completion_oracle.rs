//! Brute-force certification of the realizability conditions: for small
//! degree and count, the set of completion normal forms of *all*
//! transposition tuples equals the set of elements satisfying the blockwise
//! conditions enforced by the constructor. This is the oracle that pins the
//! "count >= 2|B| - 2 - N(sigma_B)" bound.

use std::collections::BTreeSet;

use hurlab_core::completion::{normal_form, CompletionElement};
use hurlab_core::perm::{all_permutations, transpositions, GeoElement, Permutation};

/// All set partitions of `{0..d-1}` coarser than the cycle partition of
/// `sigma`, via restricted-growth enumeration over the cycle blocks.
fn coarsenings(sigma: &Permutation) -> Vec<Vec<Vec<usize>>> {
    let cycles = sigma.cycles();
    let mut out = Vec::new();
    let mut assignment: Vec<usize> = Vec::new();
    fn rec(cycles: &[Vec<usize>], assignment: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if assignment.len() == cycles.len() {
            let groups = assignment.iter().copied().max().map_or(0, |m| m + 1);
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); groups];
            for (ci, &g) in assignment.iter().enumerate() {
                blocks[g].extend(cycles[ci].iter().copied());
            }
            for b in &mut blocks {
                b.sort_unstable();
            }
            out.push(blocks);
            return;
        }
        let next_group = assignment.iter().copied().max().map_or(0, |m| m + 1);
        for g in 0..=next_group {
            assignment.push(g);
            rec(cycles, assignment, out);
            assignment.pop();
        }
    }
    rec(&cycles, &mut assignment, &mut out);
    out
}

fn all_valid_elements(d: usize, max_norm: usize) -> BTreeSet<CompletionElement> {
    let mut out = BTreeSet::new();
    for sigma in all_permutations(d) {
        for blocks in coarsenings(&sigma) {
            // Enumerate count vectors bounded by max_norm in total.
            let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
            while let Some(prefix) = stack.pop() {
                if prefix.len() == blocks.len() {
                    if let Ok(e) = CompletionElement::new(sigma.clone(), blocks.clone(), prefix) {
                        if e.norm() <= max_norm {
                            out.insert(e);
                        }
                    }
                    continue;
                }
                let used: usize = prefix.iter().sum();
                for r in 0..=max_norm.saturating_sub(used) {
                    let mut next = prefix.clone();
                    next.push(r);
                    stack.push(next);
                }
            }
        }
    }
    out
}

fn all_tuple_normal_forms(d: usize, max_len: usize) -> BTreeSet<CompletionElement> {
    let trs: Vec<GeoElement> = transpositions(d).into_iter().map(GeoElement::new).collect();
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Vec<GeoElement>> = vec![Vec::new()];
    while let Some(tuple) = frontier.pop() {
        out.insert(normal_form(d, &tuple).expect("transpositions are non-unit"));
        if tuple.len() < max_len {
            for t in &trs {
                let mut next = tuple.clone();
                next.push(t.clone());
                frontier.push(next);
            }
        }
    }
    out
}

#[test]
fn realizable_elements_are_exactly_tuple_normal_forms() {
    for (d, max_norm) in [(2usize, 6usize), (3, 6), (4, 6), (5, 6)] {
        let realizable = all_valid_elements(d, max_norm);
        let reachable = all_tuple_normal_forms(d, max_norm);
        for e in &reachable {
            assert!(
                realizable.contains(e),
                "d={d}: normal form {e} violates the invariants"
            );
        }
        for e in &realizable {
            assert!(
                reachable.contains(e),
                "d={d}: element {e} satisfies the invariants but no tuple realizes it"
            );
        }
    }
}

#[test]
fn the_connectivity_bound_is_sharp() {
    // The identity on a merged 3-block needs 4 transpositions, not 2: there
    // is no pair of transpositions connecting three points with product one.
    let reachable = all_tuple_normal_forms(3, 4);
    let too_small = CompletionElement::new(Permutation::identity(3), vec![vec![0, 1, 2]], vec![2]);
    assert!(too_small.is_err());
    let minimal =
        CompletionElement::new(Permutation::identity(3), vec![vec![0, 1, 2]], vec![4]).unwrap();
    assert!(reachable.contains(&minimal));
}
