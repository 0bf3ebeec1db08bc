//! Closed-form spectra, trace norms and identities for the directed
//! cycle, directed path and oriented stars.

use std::f64::consts::PI;

use crate::digraph::DigraphError;
use crate::eigen::{MatrixKind, SingularSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaFamily {
    CycleL,
    PathL,
    CycleQ,
    PathQ,
    Star,
}

impl FormulaFamily {
    pub fn label(&self) -> &'static str {
        match self {
            FormulaFamily::CycleL => "cycle-L",
            FormulaFamily::PathL => "path-L",
            FormulaFamily::CycleQ => "cycle-Q",
            FormulaFamily::PathQ => "path-Q",
            FormulaFamily::Star => "star",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FormulaResult {
    pub family: FormulaFamily,
    pub n: usize,
    pub params: Option<(usize, usize)>,
    pub spectrum: SingularSpectrum,
    pub trace_norm: f64,
}

/// sin with the argument reduced to [0, pi/2] by symmetry, for accuracy
/// at large n.
fn sin_reduced(x: f64) -> f64 {
    // callers pass x in [0, pi)
    if x > PI / 2.0 {
        (PI - x).sin()
    } else {
        x.sin()
    }
}

fn spectrum(kind: MatrixKind, values: Vec<f64>) -> SingularSpectrum {
    SingularSpectrum::new(kind, values)
}

/// Singular values 2 sin(pi j / n) and trace norm 2 cot(pi / 2n) of the
/// directed cycle's Laplacian.
pub fn laplacian_cycle_formula(n: usize) -> Result<FormulaResult, DigraphError> {
    if n < 2 {
        return Err(DigraphError::InvalidOrder);
    }
    let values = (0..n)
        .map(|j| 2.0 * sin_reduced(PI * j as f64 / n as f64))
        .collect();
    Ok(FormulaResult {
        family: FormulaFamily::CycleL,
        n,
        params: None,
        spectrum: spectrum(MatrixKind::L, values),
        trace_norm: 2.0 / (PI / (2.0 * n as f64)).tan(),
    })
}

/// Singular values 2 sin(pi j / 2n) and trace norm cot(pi / 4n) - 1 of
/// the directed path's Laplacian.
pub fn laplacian_path_formula(n: usize) -> Result<FormulaResult, DigraphError> {
    if n < 2 {
        return Err(DigraphError::InvalidOrder);
    }
    let values = (0..n)
        .map(|j| 2.0 * sin_reduced(PI * j as f64 / (2.0 * n as f64)))
        .collect();
    Ok(FormulaResult {
        family: FormulaFamily::PathL,
        n,
        params: None,
        spectrum: spectrum(MatrixKind::L, values),
        trace_norm: 1.0 / (PI / (4.0 * n as f64)).tan() - 1.0,
    })
}

/// Singular values 2 |cos(pi j / n)| of the directed cycle's signless
/// Laplacian; the trace norm is 2 cot(pi / 2n) for even n and
/// 2 csc(pi / 2n) for odd n.
pub fn signless_cycle_formula(n: usize) -> Result<FormulaResult, DigraphError> {
    if n < 2 {
        return Err(DigraphError::InvalidOrder);
    }
    let values = (0..n)
        .map(|j| 2.0 * (PI * j as f64 / n as f64).cos().abs())
        .collect();
    let half = PI / (2.0 * n as f64);
    let trace_norm = if n % 2 == 0 {
        2.0 / half.tan()
    } else {
        2.0 / half.sin()
    };
    Ok(FormulaResult {
        family: FormulaFamily::CycleQ,
        n,
        params: None,
        spectrum: spectrum(MatrixKind::Q, values),
        trace_norm,
    })
}

/// The signless Laplacian of the path shares the Laplacian's singular
/// values (the path is bipartite).
pub fn signless_path_formula(n: usize) -> Result<FormulaResult, DigraphError> {
    let l = laplacian_path_formula(n)?;
    Ok(FormulaResult {
        family: FormulaFamily::PathQ,
        n,
        params: l.params,
        spectrum: SingularSpectrum::new(MatrixKind::Q, l.spectrum.values),
        trace_norm: l.trace_norm,
    })
}

/// L (and Q) singular values of the oriented star S_n(x, y).
///
/// For y >= 1 the spectrum is x zeros, y-1 ones and the square roots of
/// the two roots of t^2 - (x + x^2 + y + 1) t + (x + x^2 + xy). The
/// returned trace norm is the sum of the full spectrum, which includes
/// the smaller-root term whenever it is nonzero.
/// For y = 0 the spectrum is n-1 zeros and sqrt((n-1)^2 + (n-1)).
pub fn star_formula(x: usize, y: usize) -> Result<FormulaResult, DigraphError> {
    if x + y == 0 {
        return Err(DigraphError::InvalidOrder);
    }
    let n = x + y + 1;
    let values = if y == 0 {
        let m = (n - 1) as f64;
        let mut v = vec![0.0; n - 1];
        v.push((m * m + m).sqrt());
        v
    } else {
        let (r1, r2) = star_quadratic_roots(x, y);
        let mut v = vec![0.0; x];
        v.extend(std::iter::repeat(1.0).take(y - 1));
        v.push(r1.sqrt());
        v.push(r2.max(0.0).sqrt());
        v
    };
    let spectrum = spectrum(MatrixKind::L, values);
    let trace_norm = spectrum.trace_norm();
    Ok(FormulaResult {
        family: FormulaFamily::Star,
        n,
        params: Some((x, y)),
        spectrum,
        trace_norm,
    })
}

/// The two roots of the star quadratic, larger first, solved in the
/// cancellation-safe form (r1 = (b + sqrt(disc)) / 2, r2 = c / r1).
pub fn star_quadratic_roots(x: usize, y: usize) -> (f64, f64) {
    let xf = x as f64;
    let yf = y as f64;
    let b = xf + xf * xf + yf + 1.0;
    let c = xf + xf * xf + xf * yf;
    let disc = (b * b - 4.0 * c).max(0.0);
    let r1 = (b + disc.sqrt()) / 2.0;
    let r2 = if c == 0.0 { 0.0 } else { c / r1 };
    (r1, r2)
}

/// Gap the star trace-norm display drops: the square root of the smaller
/// quadratic root. Nonzero exactly when x >= 1 and y >= 1.
pub fn star_printed_trace_norm_gap(x: usize, y: usize) -> f64 {
    if y == 0 {
        return 0.0;
    }
    star_quadratic_roots(x, y).1.sqrt()
}

/// ||L(C_n)||* - ||L(P_n)||* = 1 - tan(pi / 4n).
pub fn relation_l(n: usize) -> Result<f64, DigraphError> {
    if n < 2 {
        return Err(DigraphError::InvalidOrder);
    }
    Ok(1.0 - (PI / (4.0 * n as f64)).tan())
}

/// ||Q(C_n)||* - ||Q(P_n)||* = 1 + tan(pi / 4n) for odd n. For even n
/// the Q and L trace norms coincide, so the gap is 1 - tan(pi / 4n).
pub fn relation_q(n: usize) -> Result<f64, DigraphError> {
    if n < 2 {
        return Err(DigraphError::InvalidOrder);
    }
    let t = (PI / (4.0 * n as f64)).tan();
    Ok(if n % 2 == 0 { 1.0 - t } else { 1.0 + t })
}

/// ||Q(C_n)||* - ||L(C_n)||*: 0 for even n, 2 tan(pi / 4n) for odd n.
pub fn lq_cycle_gap(n: usize) -> Result<f64, DigraphError> {
    if n < 2 {
        return Err(DigraphError::InvalidOrder);
    }
    Ok(if n % 2 == 0 {
        0.0
    } else {
        2.0 * (PI / (4.0 * n as f64)).tan()
    })
}

/// Residuals of the two sine-sum identities:
/// |sum sin^2(j pi / n) - n/2| and |sum sin^2(j pi / 2n) - (n-1)/2|.
pub fn sine_identities(n: usize) -> (f64, f64) {
    let nf = n as f64;
    let s1: f64 = (0..n)
        .map(|j| sin_reduced(PI * j as f64 / nf).powi(2))
        .sum();
    let s2: f64 = (0..n)
        .map(|j| sin_reduced(PI * j as f64 / (2.0 * nf)).powi(2))
        .sum();
    ((s1 - nf / 2.0).abs(), (s2 - (nf - 1.0) / 2.0).abs())
}

/// sigma_1 of L(C_n): 2 for even n, 2 cos(pi / 2n) for odd n.
pub fn spectral_norm_l_cycle(n: usize) -> Result<f64, DigraphError> {
    if n < 2 {
        return Err(DigraphError::InvalidOrder);
    }
    Ok(if n % 2 == 0 {
        2.0
    } else {
        2.0 * (PI / (2.0 * n as f64)).cos()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjacencyFamily {
    Cycle,
    Path,
    Star,
}

/// Adjacency singular values: [1^n] for the cycle, [1^(n-1), 0] for the
/// path, [sqrt x, sqrt y, 0^(n-2)] for the star (params = (x, y)).
pub fn adjacency_formula(
    family: AdjacencyFamily,
    n: usize,
    params: Option<(usize, usize)>,
) -> Result<SingularSpectrum, DigraphError> {
    let values = match family {
        AdjacencyFamily::Cycle => {
            if n < 2 {
                return Err(DigraphError::InvalidOrder);
            }
            vec![1.0; n]
        }
        AdjacencyFamily::Path => {
            if n < 1 {
                return Err(DigraphError::InvalidOrder);
            }
            let mut v = vec![1.0; n - 1];
            v.push(0.0);
            v
        }
        AdjacencyFamily::Star => {
            let (x, y) = params.ok_or(DigraphError::InvalidOrder)?;
            if x + y == 0 || x + y + 1 != n {
                return Err(DigraphError::InvalidOrder);
            }
            let mut v = vec![0.0; n - 2];
            v.push((x as f64).sqrt());
            v.push((y as f64).sqrt());
            v
        }
    };
    Ok(SingularSpectrum::new(MatrixKind::A, values))
}
