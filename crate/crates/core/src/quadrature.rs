//! Taylor-based panel integration `∫_x^{x+h} f` from the weighted
//! sequences `Ñ^(k)` and step weights `γ_k`, plus a composite rule.
//!
//! Substituting the derivative formula into the truncated Taylor series
//! and regrouping by `Ñ^(k)` gives
//!
//! ```text
//! γ_k = h^(k+1)/(k+1) + a_1 h^(k+2)/(k+2) + .. + a_{n-k} h^(n+1)/(n+1)
//! ```
//!
//! The rule integrates the degree `<= n` interpolant exactly.

use crate::differentiation::weight_sequences;
use crate::error::{Error, Result};
use crate::samples::{SampleSet, Scheme};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureWeights {
    pub h: f64,
    pub gammas: Vec<f64>,
    pub a: Vec<f64>,
}

/// `γ_0..γ_n` for step `h` from `a_0..a_n`.
pub fn gamma_coefficients(a: &[f64], h: f64, n: usize) -> Result<QuadratureWeights> {
    if a.len() != n + 1 {
        return Err(Error::InsufficientDepth {
            k_max: a.len().saturating_sub(1),
            order: n,
        });
    }
    if a[0] != 1.0 {
        return Err(Error::BadCoefficients(a[0]));
    }
    if h == 0.0 || !h.is_finite() {
        return Err(Error::ZeroStep);
    }

    // h_pow[p] = h^p, p = 0..=n+1
    let mut h_pow = Vec::with_capacity(n + 2);
    h_pow.push(1.0);
    for p in 1..=n + 1 {
        h_pow.push(h_pow[p - 1] * h);
    }

    let gammas = (0..=n)
        .map(|k| {
            let mut acc = 0.0;
            for (m, &am) in a.iter().enumerate().take(n - k + 1) {
                let p = k + m + 1;
                acc += am * h_pow[p] / p as f64;
            }
            acc
        })
        .collect();

    Ok(QuadratureWeights {
        h,
        gammas,
        a: a.to_vec(),
    })
}

/// `∫_x^{x+h} f` over one panel using the full stencil.
pub fn integrate_panel(set: &SampleSet, x: f64, h: f64, scheme: Scheme) -> Result<f64> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::ZeroStep);
    }
    let n = set.degree();
    let ws = weight_sequences(set, x, n, scheme)?.with_a_coefficients(n)?;
    let weights = gamma_coefficients(&ws.a, h, n)?;
    let mut acc = 0.0;
    for (w, g) in ws.weighted.iter().zip(&weights.gammas) {
        acc += w * g;
    }
    Ok(acc)
}

/// `∫_lo^hi f` over `panels` equal panels, each anchored at its left end.
///
/// Nodes that coincide with a panel's left endpoint are dropped for that
/// panel only.
pub fn integrate_composite(set: &SampleSet, lo: f64, hi: f64, panels: usize, scheme: Scheme) -> Result<f64> {
    if panels == 0 {
        return Err(Error::NoPanels);
    }
    if lo == hi || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::ZeroStep);
    }
    if lo > hi {
        return integrate_composite(set, hi, lo, panels, scheme).map(|v| -v);
    }

    let width = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let left = lo + p as f64 * width;
        total += panel_with_dropping(set, left, width, scheme)?;
    }
    Ok(total)
}

fn panel_with_dropping(set: &SampleSet, x: f64, h: f64, scheme: Scheme) -> Result<f64> {
    let mut reduced;
    let mut current = set;
    while let Some(j) = current.colliding_node(x) {
        reduced = current.without_node(j)?;
        current = &reduced;
    }
    integrate_panel(current, x, h, scheme)
}
