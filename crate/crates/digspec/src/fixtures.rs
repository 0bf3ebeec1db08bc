//! Frozen fixture digraphs and shifted matrices used by the
//! determination arguments, with their reported leading singular values.
//!
//! Arc lists are transcribed from the source figures with vertices
//! 0-indexed (figure vertex v_k maps to k-1). T4 and T6 are the same
//! digraph drawn in two figures; both names are kept.

use crate::digraph::Digraph;
use crate::eigen::{singular_values, MatrixKind};
use crate::matrix::{laplacian, Matrix};

#[derive(Debug, Clone)]
pub struct DigraphFixture {
    pub name: &'static str,
    pub digraph: Digraph,
    /// Reported sigma_1 of the fixture's Laplacian.
    pub reported_sigma1: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone)]
pub struct MatrixFixture {
    pub name: &'static str,
    pub matrix: Matrix,
    pub reported_sigma1: f64,
    pub tolerance: f64,
    /// Set when the printed value is known to disagree with the
    /// fixture's own definition; the check is then flagged, not failed.
    pub known_discrepancy: Option<&'static str>,
}

const SQRT5: f64 = 2.23606797749978969;

fn dig(n: usize, arcs: &[(usize, usize)]) -> Digraph {
    Digraph::new(n, arcs).expect("fixture arcs are valid")
}

/// Oriented trees T1..T7 and unicyclic digraphs U1..U4.
pub fn digraph_fixtures() -> Vec<DigraphFixture> {
    let fx = |name, n, arcs: &[(usize, usize)], sigma1, tolerance| DigraphFixture {
        name,
        digraph: dig(n, arcs),
        reported_sigma1: sigma1,
        tolerance,
    };
    vec![
        fx("T1", 4, &[(3, 0), (0, 1), (0, 2)], 2.61, 0.005),
        fx("T2", 4, &[(0, 1), (0, 2), (2, 3)], 2.49, 0.005),
        fx("T3", 4, &[(0, 1), (0, 2), (3, 2)], 2.49, 0.005),
        fx("T4", 5, &[(0, 1), (1, 2), (2, 3), (4, 2)], 2.0421, 0.0005),
        fx("T5", 5, &[(0, 1), (1, 2), (3, 1), (4, 1)], SQRT5, 1e-8),
        fx("T6", 5, &[(0, 1), (1, 2), (2, 3), (4, 2)], 2.0421, 0.0005),
        fx("T7", 5, &[(1, 0), (2, 1), (3, 2), (4, 2)], 2.0421, 0.0005),
        fx("U1", 4, &[(0, 1), (1, 2), (2, 3), (3, 1)], 2.0, 0.0005),
        fx("U2", 5, &[(0, 2), (1, 2), (2, 3), (3, 4), (4, 2)], 2.2361, 0.0005),
        fx("U3", 5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)], 2.042, 0.0005),
        fx("U4", 5, &[(0, 1), (1, 2), (2, 3), (3, 1), (4, 3)], 2.0743, 0.0005),
    ]
}

fn fixture_digraph(name: &str) -> Digraph {
    digraph_fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .expect("known fixture name")
        .digraph
}

/// The shifted matrices M1..M10: fixture-tree Laplacians plus a diagonal,
/// modeling principal submatrices of larger tree Laplacians.
pub fn matrix_fixtures() -> Vec<MatrixFixture> {
    let shifted = |name, tree: &str, diag: &[f64], sigma1, tolerance| MatrixFixture {
        name,
        matrix: laplacian(&fixture_digraph(tree)).add_diagonal(diag),
        reported_sigma1: sigma1,
        tolerance,
        known_discrepancy: None,
    };
    vec![
        MatrixFixture {
            // the printed 3.44 contradicts M1's own definition: the
            // largest Gram eigenvalue is the top root of
            // t^3 - 14 t^2 + 25 t - 11, giving sigma_1 = 3.4629; the
            // surrounding bound only needs sigma_1 > 2, which holds
            known_discrepancy: Some("printed 3.44, definition gives 3.4629"),
            ..shifted("M1", "T1", &[1., 1., 0., 0.], 3.44, 0.005)
        },
        shifted("M2", "T1", &[1., 0., 0., 0.], 3.45, 0.005),
        shifted("M3", "T1", &[0., 1., 0., 0.], 2.64, 0.005),
        shifted("M4", "T2", &[0., 1., 0., 1.], 2.53, 0.005),
        shifted("M5", "T2", &[0., 1., 0., 0.], 2.53, 0.005),
        shifted("M6", "T2", &[0., 0., 0., 1.], 2.49, 0.005),
        shifted("M7", "T3", &[0., 1., 1., 0.], 2.58, 0.005),
        shifted("M8", "T3", &[0., 1., 0., 0.], 2.53, 0.005),
        shifted("M9", "T3", &[0., 0., 1., 0.], 2.55, 0.005),
        shifted("M10", "T7", &[1., 0., 0., 0., 0.], 2.0491, 0.0005),
    ]
}

/// The reported L spectrum of U1.
pub const U1_SPECTRUM: [f64; 4] = [2.0, 1.7321, 1.0, 0.0];

/// Printed figures are sometimes truncated rather than rounded (T2 and
/// T3 have sigma_1 = sqrt(4 + sqrt 5) = 2.4972, printed as 2.49), so a
/// computed value also matches when cutting it to the printed digits
/// reproduces the report exactly.
pub fn printed_match(computed: f64, reported: f64, tolerance: f64) -> bool {
    if (computed - reported).abs() <= tolerance {
        return true;
    }
    let scale = 0.5 / tolerance;
    ((computed * scale).floor() - reported * scale).abs() < 1e-6
}

#[derive(Debug, Clone)]
pub struct FixtureCheck {
    pub name: String,
    pub computed: f64,
    pub reported: f64,
    pub diff: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Explanation when a mismatch is a known defect in the reported
    /// value rather than a computation failure.
    pub note: Option<&'static str>,
}

/// Computes sigma_1 for every fixture and compares against the reported
/// value; the final row compares the full L spectrum of U1.
pub fn verify_fixture_norms() -> Vec<FixtureCheck> {
    let mut checks = Vec::new();
    for f in digraph_fixtures() {
        let sigma1 = singular_values(&laplacian(&f.digraph), MatrixKind::L)
            .expect("fixture spectrum")
            .sigma1();
        let diff = (sigma1 - f.reported_sigma1).abs();
        checks.push(FixtureCheck {
            name: format!("sigma1 L({})", f.name),
            computed: sigma1,
            reported: f.reported_sigma1,
            diff,
            tolerance: f.tolerance,
            pass: printed_match(sigma1, f.reported_sigma1, f.tolerance),
            note: None,
        });
    }
    for f in matrix_fixtures() {
        let sigma1 = singular_values(&f.matrix, MatrixKind::Raw)
            .expect("fixture spectrum")
            .sigma1();
        let diff = (sigma1 - f.reported_sigma1).abs();
        checks.push(FixtureCheck {
            name: format!("sigma1 {}", f.name),
            computed: sigma1,
            reported: f.reported_sigma1,
            diff,
            tolerance: f.tolerance,
            pass: printed_match(sigma1, f.reported_sigma1, f.tolerance)
                || f.known_discrepancy.is_some(),
            note: f.known_discrepancy,
        });
    }
    let u1 =singular_values(&laplacian(&fixture_digraph("U1")), MatrixKind::L)
        .expect("fixture spectrum");
    let worst = u1
        .values
        .iter()
        .zip(U1_SPECTRUM)
        .fold(0.0f64, |m, (v, x)| m.max((v - x).abs()));
    checks.push(FixtureCheck {
        name: "spectrum L(U1)".into(),
        computed: worst,
        reported: 0.0,
        diff: worst,
        tolerance: 0.0005,
        pass: worst <= 0.0005,
        note: None,
    });
    checks
}
