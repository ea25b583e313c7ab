//! Empirical convergence studies on `f = exp`.

use crate::differentiation::derivative;
use crate::error::Result;
use crate::quadrature::integrate_panel;
use crate::samples::{SampleSet, Scheme};

/// Step ladders used by the built-in studies.
pub const DERIVATIVE_STEPS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];
pub const QUADRATURE_STEPS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

/// Default evaluation point; off-node for every built-in geometry.
pub const DEFAULT_POINT: f64 = 0.3;

/// Least-squares slope of `ln(error)` against `ln(h)`.
pub fn least_squares_order(hs: &[f64], errors: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = hs.iter().zip(errors).map(|(h, e)| (h.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    pub h: f64,
    pub error: f64,
    /// Order between this row and the previous one; `None` on the first row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Study {
    pub rows: Vec<StudyRow>,
    /// Least-squares order over all rows.
    pub fitted_order: f64,
}

impl Study {
    fn from_errors(hs: &[f64], errors: Vec<f64>) -> Study {
        let rows = hs
            .iter()
            .zip(&errors)
            .enumerate()
            .map(|(i, (&h, &error))| StudyRow {
                h,
                error,
                order: (i > 0).then(|| (errors[i - 1] / error).ln() / (hs[i - 1] / h).ln()),
            })
            .collect();
        Study {
            rows,
            fitted_order: least_squares_order(hs, &errors),
        }
    }
}

/// Five nodes `x + (j - 1.7) h`: `x` sits 0.3 h to the right of the
/// middle node.
pub fn derivative_stencil(x: f64, h: f64) -> Vec<f64> {
    (0..5).map(|j| x + (j as f64 - 1.7) * h).collect()
}

/// Four nodes at `x ± h/4`, `x ± 3h/4`, spread across the panel `[x, x + h]`.
pub fn quadrature_stencil(x: f64, h: f64) -> Vec<f64> {
    [-0.75, -0.25, 0.25, 0.75].iter().map(|c| x + c * h).collect()
}

fn sampled(nodes: Vec<f64>) -> Result<SampleSet> {
    let values = nodes.iter().map(|u| u.exp()).collect();
    SampleSet::new(nodes, values)
}

/// Error of the order-`t` derivative of `exp` at `x` over the given steps.
pub fn derivative_study(x: f64, t: usize, steps: &[f64], scheme: Scheme) -> Result<Study> {
    let errors = steps
        .iter()
        .map(|&h| {
            let set = sampled(derivative_stencil(x, h))?;
            Ok((derivative(&set, x, t, scheme)? - x.exp()).abs())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Study::from_errors(steps, errors))
}

/// Error of the single-panel integral of `exp` over `[x, x + h]`.
pub fn quadrature_study(x: f64, steps: &[f64], scheme: Scheme) -> Result<Study> {
    let errors = steps
        .iter()
        .map(|&h| {
            let set = sampled(quadrature_stencil(x, h))?;
            let exact = x.exp() * h.exp_m1();
            Ok((integrate_panel(&set, x, h, scheme)? - exact).abs())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Study::from_errors(steps, errors))
}
