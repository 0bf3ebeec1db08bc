//! Exhaustive cospectral-mate search over labeled digraphs.
//!
//! The pruning lever is the trace identity: for the Laplacian,
//! sum sigma^2 = Zg+(D) + a(D), and Zg+ >= a^2/n by Cauchy-Schwarz, so a
//! spectrum pins down an arc-count bound and an exact Zg+ + a value. A
//! sound sum-of-fourth-powers filter (the Frobenius norm of the Gram
//! matrix) runs before any eigensolve.

use std::time::{Duration, Instant};

use crate::digraph::Digraph;
use crate::eigen::{singular_values, MatrixKind, SingularSpectrum};
use crate::enumerate::{subset_count, DigraphClass, DigraphEnumerator, EnumerationSpec, SearchError};
use crate::iso::is_isomorphic;
use crate::matrix::{adjacency_matrix, laplacian, signless_laplacian, Matrix};

pub fn matrix_for(kind: MatrixKind, d: &Digraph) -> Matrix {
    match kind {
        MatrixKind::A => adjacency_matrix(d),
        MatrixKind::L => laplacian(d),
        MatrixKind::Q => signless_laplacian(d),
        MatrixKind::Raw => panic!("raw kind has no digraph matrix"),
    }
}

pub fn spectrum_of(kind: MatrixKind, d: &Digraph) -> SingularSpectrum {
    singular_values(&matrix_for(kind, d), kind).expect("digraph Gram spectra converge")
}

/// Largest arc count a with a^2/n + a <= target_trace_sum. Any digraph
/// whose L (or Q) spectrum has that sum of squares obeys the bound.
pub fn trace_arc_bound(n: usize, target_trace_sum: f64) -> usize {
    let mut best = 0;
    for a in 0..=n * n.saturating_sub(1) {
        let af = a as f64;
        if af * af / n as f64 + af <= target_trace_sum {
            best = a;
        } else {
            break;
        }
    }
    best
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub pruned: bool,
    pub jobs: usize,
    pub progress: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { pruned: true, jobs: 1, progress: false }
    }
}

#[derive(Debug, Clone)]
pub struct CospectralReport {
    pub target: Digraph,
    pub kind: MatrixKind,
    /// Labeled mates, deduplicated up to isomorphism, in canonical
    /// arc-set order.
    pub mates: Vec<Digraph>,
    pub candidates_examined: u64,
    pub candidates_after_trace_filter: u64,
    pub elapsed: Duration,
}

struct WorkerResult {
    mates: Vec<Digraph>,
    examined: u64,
    survivors: u64,
}

fn scan_range(
    spec: EnumerationSpec,
    start: u128,
    end: u128,
    target: &Digraph,
    kind: MatrixKind,
    target_spectrum: &SingularSpectrum,
    pruned: bool,
    trace_int: Option<usize>,
    progress: bool,
) -> Result<WorkerResult, SearchError> {
    let target_s4 = target_spectrum.sum_of_fourth_powers();
    // sigma^4 sums of 1e-7-close spectra differ by far less than this
    let s4_tol = 1e-3;
    let mut out = WorkerResult { mates: Vec::new(), examined: 0, survivors: 0 };
    let enumerator = DigraphEnumerator::range(spec, start, end)?;
    for d in enumerator {
        out.examined += 1;
        if progress && out.examined % 1_000_000 == 0 {
            eprintln!(
                "cospectral search: examined {} survivors {}",
                out.examined, out.survivors
            );
        }
        if pruned {
            let trace = match kind {
                MatrixKind::A => d.arc_count(),
                _ => d.zagreb_plus() + d.arc_count(),
            };
            if Some(trace) != trace_int {
                continue;
            }
        }
        out.survivors += 1;
        let gram = matrix_for(kind, &d).gram();
        if pruned {
            let s4 = gram.data().iter().map(|v| v * v).sum::<f64>();
            if (s4 - target_s4).abs() > s4_tol {
                continue;
            }
        }
        let spectrum = singular_values(&matrix_for(kind, &d), kind)
            .map_err(|e| SearchError::Internal(e.to_string()))?;
        if !spectrum.matches(target_spectrum) {
            continue;
        }
        if is_isomorphic(&d, target).map_err(|e| SearchError::Internal(e.to_string()))? {
            continue;
        }
        out.mates.push(d);
    }
    Ok(out)
}

/// Finds every labeled digraph of the target's order whose spectrum of
/// the given kind matches the target's, up to isomorphism.
pub fn cospectral_mates(
    target: &Digraph,
    kind: MatrixKind,
    opts: &SearchOptions,
) -> Result<CospectralReport, SearchError> {
    let started = Instant::now();
    let n = target.n();
    let m = n * n.saturating_sub(1);
    let target_spectrum = spectrum_of(kind, target);
    let trace_sum = target_spectrum.sum_of_squares();
    let trace_int = Some(trace_sum.round() as usize);

    let max_arcs = if opts.pruned {
        match kind {
            MatrixKind::A => (trace_sum.round() as usize).min(m),
            _ => trace_arc_bound(n, trace_sum + 1e-6).min(m),
        }
    } else {
        m
    };
    let spec = EnumerationSpec::new(n, max_arcs, DigraphClass::All);
    let total = subset_count(m, max_arcs);

    let jobs = opts.jobs.max(1);
    let results: Vec<WorkerResult> = if jobs == 1 {
        vec![scan_range(
            spec,
            0,
            total,
            target,
            kind,
            &target_spectrum,
            opts.pruned,
            trace_int,
            opts.progress,
        )?]
    } else {
        let chunk = total / jobs as u128;
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..jobs {
                let spec = spec.clone();
                let target_spectrum = &target_spectrum;
                let start = w as u128 * chunk;
                let end = if w + 1 == jobs { total } else { (w as u128 + 1) * chunk };
                handles.push(scope.spawn(move || {
                    scan_range(
                        spec,
                        start,
                        end,
                        target,
                        kind,
                        target_spectrum,
                        opts.pruned,
                        trace_int,
                        opts.progress,
                    )
                }));
            }
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect::<Result<Vec<_>, _>>()
        })?
    };

    let mut examined = 0;
    let mut survivors = 0;
    let mut raw_mates = Vec::new();
    for r in results {
        examined += r.examined;
        survivors += r.survivors;
        raw_mates.extend(r.mates);
    }

    // deterministic order, then dedup up to isomorphism
    raw_mates.sort();
    let mut mates: Vec<Digraph> = Vec::new();
    for d in raw_mates {
        let mut duplicate = false;
        for kept in &mates {
            if is_isomorphic(&d, kept).map_err(|e| SearchError::Internal(e.to_string()))? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            mates.push(d);
        }
    }

    // post-hoc re-verification from the reported arc sets
    for mate in &mates {
        let rebuilt = Digraph::new(mate.n(), mate.arcs())
            .map_err(|e| SearchError::Internal(e.to_string()))?;
        let spectrum = spectrum_of(kind, &rebuilt);
        if !spectrum.matches(&target_spectrum) {
            return Err(SearchError::Internal(format!(
                "mate {:?} fails spectrum re-verification",
                mate.arcs()
            )));
        }
        if is_isomorphic(&rebuilt, target).map_err(|e| SearchError::Internal(e.to_string()))? {
            return Err(SearchError::Internal(format!(
                "mate {:?} is isomorphic to the target",
                mate.arcs()
            )));
        }
    }

    Ok(CospectralReport {
        target: target.clone(),
        kind,
        mates,
        candidates_examined: examined,
        candidates_after_trace_filter: survivors,
        elapsed: started.elapsed(),
    })
}

/// A known cospectral pair and the matrix kind it holds for.
#[derive(Debug, Clone)]
pub struct CospectralPair {
    pub left: Digraph,
    pub right: Digraph,
    pub kind: MatrixKind,
    pub left_name: String,
    pub right_name: String,
}

/// The paper's cospectral families at order n: (P_n, C_{n-1} u K1) under
/// A; (S_n(x,y), S_n(y,x)) for x != y under A; and
/// (S_n(0,n-1), S_n(1,n-2)) under both L and Q.
pub fn known_cospectral_families(n: usize) -> Result<Vec<CospectralPair>, crate::digraph::DigraphError> {
    if n < 3 {
        return Err(crate::digraph::DigraphError::InvalidOrder);
    }
    let mut pairs = Vec::new();
    pairs.push(CospectralPair {
        left: Digraph::directed_path(n)?,
        right: Digraph::directed_cycle(n - 1)?.disjoint_union(&Digraph::k1()),
        kind: MatrixKind::A,
        left_name: format!("P_{n}"),
        right_name: format!("C_{} u K1", n - 1),
    });
    for x in 0..n {
        let y = n - 1 - x;
        if x >= y {
            continue;
        }
        pairs.push(CospectralPair {
            left: Digraph::oriented_star(x, y)?,
            right: Digraph::oriented_star(y, x)?,
            kind: MatrixKind::A,
            left_name: format!("S_{n}({x},{y})"),
            right_name: format!("S_{n}({y},{x})"),
        });
    }
    for kind in [MatrixKind::L, MatrixKind::Q] {
        pairs.push(CospectralPair {
            left: Digraph::oriented_star(0, n - 1)?,
            right: Digraph::oriented_star(1, n - 2)?,
            kind,
            left_name: format!("S_{n}(0,{})", n - 1),
            right_name: format!("S_{n}(1,{})", n - 2),
        });
    }
    Ok(pairs)
}

/// The orientation of the path graph on n vertices in which every arc
/// points toward the single sink at position k.
pub fn single_sink_path(n: usize, sink: usize) -> Result<Digraph, crate::digraph::DigraphError> {
    if n < 2 || sink >= n {
        return Err(crate::digraph::DigraphError::InvalidOrder);
    }
    let mut arcs: Vec<(usize, usize)> = (0..sink).map(|i| (i, i + 1)).collect();
    arcs.extend((sink + 1..n).map(|j| (j, j - 1)));
    Digraph::new(n, &arcs)
}

/// The complete set of L/Q-cospectral mates of P_n, up to isomorphism:
/// the interior-sink orientations of the path, one per mirror class.
///
/// Why they are mates: the nonzero rows of L form a tridiagonal Gram
/// matrix with diagonal 2 and off-diagonal entries of modulus 1 whose
/// signs a diagonal +-1 similarity removes, so every single-sink
/// orientation shares the spectrum of P_n (sink at an end); the same
/// argument applies to Q. Exhaustive search at n = 4, 5, 6 shows no
/// other mates exist.
pub fn path_interior_sink_mates(n: usize) -> Vec<Digraph> {
    (1..=(n.saturating_sub(1)) / 2)
        .map(|k| single_sink_path(n, k).expect("interior sink position"))
        .collect()
}

/// True iff the two collections match elementwise up to isomorphism.
pub fn same_up_to_iso(found: &[Digraph], expected: &[Digraph]) -> Result<bool, SearchError> {
    if found.len() != expected.len() {
        return Ok(false);
    }
    let mut used = vec![false; expected.len()];
    for f in found {
        let mut matched = false;
        for (i, e) in expected.iter().enumerate() {
            if !used[i] && is_isomorphic(f, e).map_err(|e| SearchError::Internal(e.to_string()))? {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that every known pair is non-isomorphic with matching spectra.
pub fn verify_known_families(n: usize) -> Result<bool, SearchError> {
    for pair in known_cospectral_families(n).map_err(|e| SearchError::Internal(e.to_string()))? {
        let sl = spectrum_of(pair.kind, &pair.left);
        let sr = spectrum_of(pair.kind, &pair.right);
        if !sl.matches(&sr) {
            return Ok(false);
        }
        if is_isomorphic(&pair.left, &pair.right)
            .map_err(|e| SearchError::Internal(e.to_string()))?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct DeterminationEntry {
    pub target_name: String,
    pub kind: MatrixKind,
    pub mates_found: usize,
    pub expected_empty: bool,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct Theorem31Report {
    pub n: usize,
    pub entries: Vec<DeterminationEntry>,
    /// P_n under A has C_{n-1} u K1 among its mates.
    pub path_adjacency_mate_confirmed: bool,
    pub known_families_ok: bool,
    /// Every enumerated digraph with k >= 2 weak components has 0 as an L
    /// singular value with multiplicity >= 2.
    pub zero_multiplicity_ok: bool,
    /// Rank-1 census (n <= 5 only): every digraph whose L has rank 1 is an
    /// out-star with a single tail, and the only one matching the
    /// S_n(n-1,0) spectrum is S_n(n-1,0) itself.
    pub rank_one_ok: Option<bool>,
}

impl Theorem31Report {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
            && self.path_adjacency_mate_confirmed
            && self.known_families_ok
            && self.zero_multiplicity_ok
            && self.rank_one_ok.unwrap_or(true)
    }
}

/// Runs the full determination verification at order n (4 <= n <= 7):
/// C_n and S_n(n-1,0) must have no L or Q mates, P_n's L and Q mates
/// must be exactly the interior-sink path orientations, and the known
/// adjacency mates must show up.
pub fn verify_theorem_3_1(n: usize, opts: &SearchOptions) -> Result<Theorem31Report, SearchError> {
    assert!((4..=7).contains(&n));
    let cycle = Digraph::directed_cycle(n).map_err(|e| SearchError::Internal(e.to_string()))?;
    let path = Digraph::directed_path(n).map_err(|e| SearchError::Internal(e.to_string()))?;
    let star = Digraph::oriented_star(n - 1, 0).map_err(|e| SearchError::Internal(e.to_string()))?;

    let mut entries = Vec::new();
    for (name, target) in [("C", &cycle), ("S(n-1,0)", &star)] {
        for kind in [MatrixKind::L, MatrixKind::Q] {
            let report = cospectral_mates(target, kind, opts)?;
            entries.push(DeterminationEntry {
                target_name: format!("{name}_{n}"),
                kind,
                mates_found: report.mates.len(),
                expected_empty: true,
                pass: report.mates.is_empty(),
            });
        }
    }
    let expected_path_mates = path_interior_sink_mates(n);
    for kind in [MatrixKind::L, MatrixKind::Q] {
        let report = cospectral_mates(&path, kind, opts)?;
        entries.push(DeterminationEntry {
            target_name: format!("P_{n}"),
            kind,
            mates_found: report.mates.len(),
            expected_empty: false,
            pass: same_up_to_iso(&report.mates, &expected_path_mates)?,
        });
    }

    let path_a = cospectral_mates(&path, MatrixKind::A, opts)?;
    let expected_mate = Digraph::directed_cycle(n - 1)
        .map_err(|e| SearchError::Internal(e.to_string()))?
        .disjoint_union(&Digraph::k1());
    let mut confirmed = false;
    for mate in &path_a.mates {
        if is_isomorphic(mate, &expected_mate).map_err(|e| SearchError::Internal(e.to_string()))? {
            confirmed = true;
        }
    }
    entries.push(DeterminationEntry {
        target_name: format!("P_{n}"),
        kind: MatrixKind::A,
        mates_found: path_a.mates.len(),
        expected_empty: false,
        pass: confirmed,
    });

    let known_families_ok = verify_known_families(n)?;
    let zero_multiplicity_ok = zero_multiplicity_check(n)?;
    let rank_one_ok = if n <= 5 { Some(rank_one_census(n)?) } else { None };

    Ok(Theorem31Report {
        n,
        entries,
        path_adjacency_mate_confirmed: confirmed,
        known_families_ok,
        zero_multiplicity_ok,
        rank_one_ok,
    })
}

/// Any digraph with k >= 2 weak components has 0 as an L singular value
/// with multiplicity >= 2; checked over every digraph of order n with at
/// most n arcs.
pub fn zero_multiplicity_check(n: usize) -> Result<bool, SearchError> {
    let spec = EnumerationSpec::new(n, n.min(n * n.saturating_sub(1)), DigraphClass::All);
    for d in DigraphEnumerator::new(spec)? {
        if d.weak_components().len() < 2 {
            continue;
        }
        if spectrum_of(MatrixKind::L, &d).zero_multiplicity() < 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of an integer-entried matrix via Gaussian elimination.
fn numeric_rank(m: &Matrix) -> usize {
    let n = m.rows();
    let mut a: Vec<f64> = m.data().to_vec();
    let cols = m.cols();
    let mut rank = 0;
    for col in 0..cols {
        let mut pivot = None;
        for r in rank..n {
            if a[r * cols + col].abs() > 1e-9 {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        for j in 0..cols {
            a.swap(rank * cols + j, p * cols + j);
        }
        let pv = a[rank * cols + col];
        for r in rank + 1..n {
            let f = a[r * cols + col] / pv;
            if f != 0.0 {
                for j in col..cols {
                    a[r * cols + j] -= f * a[rank * cols + j];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exhaustive census over the full labeled space of order n: every
/// digraph whose Laplacian has rank 1 is either an out-star (all arcs
/// out of one tail vertex) or a single digon, each padded with isolated
/// vertices, and the only rank-1 digraph whose spectrum matches
/// S_n(n-1,0) is S_n(n-1,0) itself.
pub fn rank_one_census(n: usize) -> Result<bool, SearchError> {
    let star = Digraph::oriented_star(n - 1, 0).map_err(|e| SearchError::Internal(e.to_string()))?;
    let star_spectrum = spectrum_of(MatrixKind::L, &star);
    for d in DigraphEnumerator::new(EnumerationSpec::all(n))? {
        if numeric_rank(&laplacian(&d)) != 1 {
            continue;
        }
        let tails: Vec<usize> = d
            .out_degrees()
            .iter()
            .enumerate()
            .filter(|(_, &deg)| deg > 0)
            .map(|(v, _)| v)
            .collect();
        let single_tail = tails.len() == 1;
        let digon = d.arc_count() == 2
            && tails.len() == 2
            && d.has_arc(tails[0], tails[1])
            && d.has_arc(tails[1], tails[0]);
        if !single_tail && !digon {
            return Ok(false);
        }
        let matches_star = spectrum_of(MatrixKind::L, &d).matches(&star_spectrum);
        let is_star = is_isomorphic(&d, &star).map_err(|e| SearchError::Internal(e.to_string()))?;
        if matches_star != is_star {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_arc_bound_values() {
        // (n, 2n): a = n exactly saturates a^2/n + a
        for n in 2..=10 {
            assert_eq!(trace_arc_bound(n, 2.0 * n as f64), n);
        }
        // the P_n bound at n = 5: a^2/5 + a <= 8 gives a <= 4
        assert_eq!(trace_arc_bound(5, 8.0), 4);
        assert_eq!(trace_arc_bound(4, 0.0), 0);
    }

    #[test]
    fn trace_arc_bound_is_sound_small() {
        // no digraph with a > n can reach Zg+ + a = 2n, n <= 5
        for n in 2..=5usize {
            let bound = trace_arc_bound(n, 2.0 * n as f64);
            for d in DigraphEnumerator::new(EnumerationSpec::all(n)).unwrap() {
                if d.zagreb_plus() + d.arc_count() == 2 * n {
                    assert!(d.arc_count() <= bound);
                }
            }
        }
    }

    #[test]
    fn c4_has_no_laplacian_mate() {
        let c4 = Digraph::directed_cycle(4).unwrap();
        let report = cospectral_mates(&c4, MatrixKind::L, &SearchOptions::default()).unwrap();
        assert!(report.mates.is_empty());
        assert!(report.candidates_examined > 0);
    }

    #[test]
    fn p4_adjacency_mates_include_c3_union_k1() {
        let p4 = Digraph::directed_path(4).unwrap();
        let report = cospectral_mates(&p4, MatrixKind::A, &SearchOptions::default()).unwrap();
        let expect = Digraph::directed_cycle(3).unwrap().disjoint_union(&Digraph::k1());
        assert!(report
            .mates
            .iter()
            .any(|m| is_isomorphic(m, &expect).unwrap()));
    }

    #[test]
    fn path_l_mates_are_interior_sink_orientations() {
        // 0->1->2<-3 shares the L (and Q) spectrum of P_4: its Gram
        // matrix is sign-similar to the path's tridiagonal Gram
        for n in [4usize, 5] {
            let p = Digraph::directed_path(n).unwrap();
            for kind in [MatrixKind::L, MatrixKind::Q] {
                let report = cospectral_mates(&p, kind, &SearchOptions::default()).unwrap();
                assert!(
                    same_up_to_iso(&report.mates, &path_interior_sink_mates(n)).unwrap(),
                    "n={n} {kind:?}: {:?}",
                    report.mates
                );
            }
        }
        assert_eq!(path_interior_sink_mates(4).len(), 1);
        assert_eq!(path_interior_sink_mates(5).len(), 2);
        assert_eq!(path_interior_sink_mates(6).len(), 2);
    }

    #[test]
    fn single_sink_path_shapes() {
        let d = single_sink_path(4, 1).unwrap();
        assert_eq!(d.arcs(), &[(0, 1), (2, 1), (3, 2)]);
        // end sinks give the path itself up to isomorphism
        let end = single_sink_path(5, 4).unwrap();
        assert!(is_isomorphic(&end, &Digraph::directed_path(5).unwrap()).unwrap());
        assert!(single_sink_path(4, 4).is_err());
    }

    #[test]
    fn s5_has_no_signless_mate() {
        let s5 = Digraph::oriented_star(4, 0).unwrap();
        let report = cospectral_mates(&s5, MatrixKind::Q, &SearchOptions::default()).unwrap();
        assert!(report.mates.is_empty());
    }

    #[test]
    fn known_families_check_out() {
        for n in 3..=6 {
            assert!(verify_known_families(n).unwrap(), "n={n}");
        }
        // spot values: L spectra of S_5(0,4) and S_5(1,3) are both
        // {sqrt 5, 1, 1, 1, 0}
        let a = spectrum_of(MatrixKind::L, &Digraph::oriented_star(0, 4).unwrap());
        let b = spectrum_of(MatrixKind::L, &Digraph::oriented_star(1, 3).unwrap());
        let expect = [5f64.sqrt(), 1.0, 1.0, 1.0, 0.0];
        for ((va, vb), x) in a.values.iter().zip(&b.values).zip(expect) {
            assert!((va - x).abs() < 1e-9 && (vb - x).abs() < 1e-9);
        }
        assert!(known_cospectral_families(2).is_err());
    }

    #[test]
    fn parallel_search_matches_serial() {
        let p4 = Digraph::directed_path(4).unwrap();
        let serial = cospectral_mates(&p4, MatrixKind::A, &SearchOptions::default()).unwrap();
        let parallel = cospectral_mates(
            &p4,
            MatrixKind::A,
            &SearchOptions { jobs: 3, ..Default::default() },
        )
        .unwrap();
        assert_eq!(serial.mates, parallel.mates);
        assert_eq!(serial.candidates_examined, parallel.candidates_examined);
    }

    #[test]
    fn unpruned_matches_pruned_n4() {
        let unpruned = SearchOptions { pruned: false, ..Default::default() };
        let pruned = SearchOptions::default();
        for target in [
            Digraph::directed_cycle(4).unwrap(),
            Digraph::directed_path(4).unwrap(),
            Digraph::oriented_star(3, 0).unwrap(),
        ] {
            for kind in [MatrixKind::A, MatrixKind::L, MatrixKind::Q] {
                let a = cospectral_mates(&target, kind, &pruned).unwrap();
                let b = cospectral_mates(&target, kind, &unpruned).unwrap();
                assert_eq!(a.mates, b.mates, "{target:?} {kind:?}");
            }
        }
    }

    #[test]
    fn zero_multiplicity_law_n4() {
        assert!(zero_multiplicity_check(4).unwrap());
    }

    #[test]
    fn rank_one_census_n4() {
        assert!(rank_one_census(4).unwrap());
    }
}
