//! Minimum hitting set (hypergraph cover) by branch and bound.
//!
//! Elements are decided in ascending order with the include branch first,
//! so for a fixed budget `k` the first cover found is the lexicographically
//! least sorted sequence of size `k`. The budget is raised from a packing
//! lower bound until a cover exists, which yields the minimum size and the
//! lexicographically least minimiser together.

use crate::error::{Error, Result};

pub(crate) const MAX_EDGES: usize = 64;
const MAX_ELEMENTS: usize = 128;

/// Returns the minimum number of elements meeting every edge and the
/// lexicographically least such set. Edges must be non-empty.
pub(crate) fn min_hitting_set(edges: &[Vec<u64>]) -> Result<(usize, Vec<u64>)> {
    if edges.len() > MAX_EDGES {
        return Err(Error::SizeLimit(format!(
            "{} covering constraints exceed the branch-and-bound guard of {MAX_EDGES}",
            edges.len()
        )));
    }
    let mut elems: Vec<u64> = edges.iter().flatten().copied().collect();
    elems.sort_unstable();
    elems.dedup();
    if elems.len() > MAX_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "{} ground elements exceed the bitmask width {MAX_ELEMENTS}",
            elems.len()
        )));
    }
    if edges.iter().any(|e| e.is_empty()) {
        return Err(Error::Domain("an empty edge can never be hit".into()));
    }
    let pos = |v: u64| elems.binary_search(&v).unwrap();
    let mut masks: Vec<(usize, u128)> = edges
        .iter()
        .map(|e| {
            let m = e.iter().fold(0u128, |m, &v| m | 1u128 << pos(v));
            (127 - m.leading_zeros() as usize, m)
        })
        .collect();
    // Deadline order: an edge is lost once every element up to its last has been passed.
    masks.sort_unstable();
    masks.dedup();
    let solver = Solver {
        n_elems: elems.len(),
        edges: masks,
    };
    for k in 0..=solver.edges.len() {
        if let Some(chosen) = solver.search(0, 0, k) {
            let set = (0..elems.len())
                .filter(|&i| chosen >> i & 1 == 1)
                .map(|i| elems[i])
                .collect();
            return Ok((k, set));
        }
    }
    unreachable!("choosing one element per edge always covers")
}

struct Solver {
    n_elems: usize,
    edges: Vec<(usize, u128)>,
}

impl Solver {
    /// Can the edges be covered by adding `budget` more elements with index
    /// `>= at` to `chosen`? Returns the first such completion.
    fn search(&self, at: usize, chosen: u128, budget: usize) -> Option<u128> {
        let avail = if at >= 128 { 0 } else { !0u128 << at };
        let mut packed = 0usize;
        let mut used = 0u128;
        for &(last, m) in &self.edges {
            if m & chosen != 0 {
                continue;
            }
            if last < at {
                return None;
            }
            let rest = m & avail;
            if rest & used == 0 {
                packed += 1;
                used |= rest;
            }
        }
        if packed > budget {
            return None;
        }
        if packed == 0 {
            return Some(chosen);
        }
        if at >= self.n_elems {
            return None;
        }
        if budget > 0 {
            if let Some(c) = self.search(at + 1, chosen | 1u128 << at, budget - 1) {
                return Some(c);
            }
        }
        self.search(at + 1, chosen, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(edges: &[Vec<u64>]) -> (usize, Vec<u64>) {
        let mut elems: Vec<u64> = edges.iter().flatten().copied().collect();
        elems.sort_unstable();
        elems.dedup();
        let mut best: Option<Vec<u64>> = None;
        for mask in 0u32..(1 << elems.len()) {
            let set: Vec<u64> = (0..elems.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i]).collect();
            if !edges.iter().all(|e| e.iter().any(|v| set.contains(v))) {
                continue;
            }
            best = match best {
                None => Some(set),
                Some(b) if set.len() < b.len() || (set.len() == b.len() && set < b) => Some(set),
                b => b,
            };
        }
        let b = best.unwrap();
        (b.len(), b)
    }

    #[test]
    fn matches_exhaustive_search() {
        let cases: Vec<Vec<Vec<u64>>> = vec![
            vec![vec![1, 2], vec![2, 4], vec![3, 6]],
            vec![vec![5], vec![1, 9], vec![2, 9], vec![3, 4]],
            vec![vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 9], vec![4, 8, 12]],
            vec![vec![7, 8], vec![1, 8], vec![1, 7]],
        ];
        for edges in cases {
            assert_eq!(min_hitting_set(&edges).unwrap(), brute(&edges));
        }
    }

    #[test]
    fn guard() {
        let edges: Vec<Vec<u64>> = (1..=65).map(|n| vec![n]).collect();
        assert!(matches!(min_hitting_set(&edges), Err(Error::SizeLimit(_))));
        assert_eq!(min_hitting_set(&[]).unwrap(), (0, vec![]));
    }
}
