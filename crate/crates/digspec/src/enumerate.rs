//! Exhaustive labeled-digraph enumeration.
//!
//! The search space for order n is the set of subsets of the n(n-1)
//! possible arcs. Subsets are visited by increasing cardinality and
//! lexicographically within each cardinality, so the stream is
//! deterministic and any index range can be handed to an independent
//! worker via combinadic unranking.

use thiserror::Error;

use crate::digraph::Digraph;

/// Raw-subset cap for a single search; anything beyond this is refused.
const SUBSET_CAP: u128 = 1 << 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search space of {0} arc subsets exceeds the guard of 2^40")]
    SearchSpaceTooLarge(u128),
    #[error("internal search invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigraphClass {
    All,
    OrientedTrees,
    Unicyclic,
    ConnectedOnly,
}

impl DigraphClass {
    pub fn matches(&self, d: &Digraph) -> bool {
        match self {
            DigraphClass::All => true,
            DigraphClass::OrientedTrees => d.classify().oriented_tree,
            DigraphClass::Unicyclic => d.classify().unicyclic,
            DigraphClass::ConnectedOnly => d.is_weakly_connected(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationSpec {
    pub n: usize,
    pub max_arcs: usize,
    pub class: DigraphClass,
}

impl EnumerationSpec {
    pub fn new(n: usize, max_arcs: usize, class: DigraphClass) -> Self {
        assert!(max_arcs <= n * n.saturating_sub(1));
        EnumerationSpec { n, max_arcs, class }
    }

    pub fn all(n: usize) -> Self {
        Self::new(n, n * n.saturating_sub(1), DigraphClass::All)
    }
}

pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of arc subsets of size <= max_arcs out of m possible arcs.
pub fn subset_count(m: usize, max_arcs: usize) -> u128 {
    (0..=max_arcs.min(m)).map(|k| binomial(m, k)).sum()
}

/// All ordered pairs (u, v), u != v, in lexicographic order.
fn arc_universe(n: usize) -> Vec<(usize, usize)> {
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1));
    for u in 0..n {
        for v in 0..n {
            if u != v {
                arcs.push((u, v));
            }
        }
    }
    arcs
}

/// Streams every labeled digraph matching the spec, each exactly once.
pub struct DigraphEnumerator {
    universe: Vec<(usize, usize)>,
    spec: EnumerationSpec,
    k: usize,
    /// Lexicographic combination of indices into the universe.
    comb: Vec<usize>,
    /// The current combination has not been yielded yet.
    fresh: bool,
    /// Raw subsets still to visit (before class filtering).
    remaining: u128,
    done: bool,
}

impl DigraphEnumerator {
    /// Enumerator over the whole subset sequence.
    pub fn new(spec: EnumerationSpec) -> Result<Self, SearchError> {
        let m = spec.n * spec.n.saturating_sub(1);
        let total = subset_count(m, spec.max_arcs);
        if total > SUBSET_CAP {
            return Err(SearchError::SearchSpaceTooLarge(total));
        }
        Ok(DigraphEnumerator {
            universe: arc_universe(spec.n),
            spec,
            k: 0,
            comb: Vec::new(),
            fresh: true,
            remaining: total,
            done: false,
        })
    }

    /// Enumerator over the global subset index range [start, end).
    pub fn range(spec: EnumerationSpec, start: u128, end: u128) -> Result<Self, SearchError> {
        let m = spec.n * spec.n.saturating_sub(1);
        let total = subset_count(m, spec.max_arcs);
        if total > SUBSET_CAP {
            return Err(SearchError::SearchSpaceTooLarge(total));
        }
        let end = end.min(total);
        if start >= end {
            return Ok(DigraphEnumerator {
                universe: arc_universe(spec.n),
                spec,
                k: 0,
                comb: Vec::new(),
                fresh: false,
                remaining: 0,
                done: true,
            });
        }
        // Locate the cardinality level containing `start` and unrank the
        // combination within it.
        let mut offset: u128 = 0;
        let mut k = 0;
        loop {
            let level = binomial(m, k);
            if start < offset + level {
                break;
            }
            offset += level;
            k += 1;
        }
        let comb = unrank_combination(m, k, start - offset);
        Ok(DigraphEnumerator {
            universe: arc_universe(spec.n),
            spec,
            k,
            comb,
            fresh: true,
            remaining: end - start,
            done: false,
        })
    }

    /// Raw subsets not yet visited (ignores the class filter).
    pub fn raw_remaining(&self) -> u128 {
        self.remaining
    }

    fn advance_raw(&mut self) -> Option<Digraph> {
        if self.done || self.remaining == 0 {
            self.done = true;
            return None;
        }
        let m = self.universe.len();
        if !self.fresh {
            if !next_combination(&mut self.comb, m) {
                self.k += 1;
                if self.k > self.spec.max_arcs || self.k > m {
                    self.done = true;
                    return None;
                }
                self.comb = (0..self.k).collect();
            }
        }
        self.fresh = false;
        self.remaining -= 1;
        let arcs: Vec<(usize, usize)> =
            self.comb.iter().map(|&i| self.universe[i]).collect();
        Some(Digraph::from_sorted_unchecked(self.spec.n, arcs))
    }
}

impl Iterator for DigraphEnumerator {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        loop {
            let d = self.advance_raw()?;
            if self.spec.class.matches(&d) {
                return Some(d);
            }
        }
    }
}

/// Steps `comb` to the next lexicographic k-combination of 0..m, or
/// returns false if it was the last one. An empty combination has no
/// successor.
fn next_combination(comb: &mut [usize], m: usize) -> bool {
    let k = comb.len();
    if k == 0 {
        return false;
    }
    let mut j = k;
    while j > 0 {
        j -= 1;
        if comb[j] < m - k + j {
            comb[j] += 1;
            for i in j + 1..k {
                comb[i] = comb[i - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Lexicographic rank -> k-combination of 0..m.
fn unrank_combination(m: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut comb = Vec::with_capacity(k);
    let mut c = 0;
    for slot in 0..k {
        loop {
            let with_c = binomial(m - c - 1, k - slot - 1);
            if rank < with_c {
                comb.push(c);
                c += 1;
                break;
            }
            rank -= with_c;
            c += 1;
        }
    }
    comb
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_binomial_sums() {
        let e = DigraphEnumerator::new(EnumerationSpec::new(3, 6, DigraphClass::All)).unwrap();
        assert_eq!(e.count(), 64);

        // sum_{k<=4} C(12,k) = 1+12+66+220+495
        let e = DigraphEnumerator::new(EnumerationSpec::new(4, 4, DigraphClass::All)).unwrap();
        assert_eq!(e.count(), 794);
    }

    #[test]
    fn no_duplicates_full_space() {
        for n in 1..=4 {
            let m = n * (n - 1);
            let e = DigraphEnumerator::new(EnumerationSpec::all(n)).unwrap();
            let seen: HashSet<Digraph> = e.collect();
            assert_eq!(seen.len(), 1usize << m);
        }
    }

    #[test]
    fn oriented_tree_filter() {
        let e = DigraphEnumerator::new(EnumerationSpec::new(
            4,
            3,
            DigraphClass::OrientedTrees,
        ))
        .unwrap();
        let trees: Vec<Digraph> = e.collect();
        assert!(!trees.is_empty());
        for t in &trees {
            assert_eq!(t.arc_count(), 3);
            assert!(t.is_weakly_connected());
            assert!(t.classify().oriented_tree);
        }
        // cross-check against a brute-force filter of the full space
        let brute = DigraphEnumerator::new(EnumerationSpec::all(4))
            .unwrap()
            .filter(|d| d.classify().oriented_tree)
            .count();
        assert_eq!(trees.len(), brute);
    }

    #[test]
    fn range_partition_covers_sequence() {
        let spec = EnumerationSpec::new(4, 4, DigraphClass::All);
        let total = subset_count(12, 4);
        let full: Vec<Digraph> =
            DigraphEnumerator::new(spec.clone()).unwrap().collect();
        let mut stitched = Vec::new();
        let chunk = total / 3;
        for w in 0..3u128 {
            let start = w * chunk;
            let end = if w == 2 { total } else { (w + 1) * chunk };
            let part = DigraphEnumerator::range(spec.clone(), start, end).unwrap();
            stitched.extend(part);
        }
        assert_eq!(full, stitched);
    }

    #[test]
    fn guard_rejects_oversized_space() {
        // n = 7 full space is 2^42 subsets
        assert!(matches!(
            DigraphEnumerator::new(EnumerationSpec::all(7)),
            Err(SearchError::SearchSpaceTooLarge(_))
        ));
        // but a pruned n = 7 search is fine
        assert!(DigraphEnumerator::new(EnumerationSpec::new(7, 7, DigraphClass::All)).is_ok());
    }

    #[test]
    fn unrank_is_inverse_of_iteration() {
        let m = 10;
        let k = 4;
        let mut comb: Vec<usize> = (0..k).collect();
        let mut rank = 0u128;
        loop {
            assert_eq!(unrank_combination(m, k, rank), comb);
            if !next_combination(&mut comb, m) {
                break;
            }
            rank += 1;
        }
        assert_eq!(rank + 1, binomial(m, k));
    }
}
