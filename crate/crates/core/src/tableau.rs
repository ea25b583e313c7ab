//! Two-row determinant recursion shared by interpolation, the divided
//! difference polynomials and the inverse-power weight sequences.
//!
//! Given base values `b_j` attached to nodes `x_j`, both schemes return the
//! value at `x` of the unique polynomial of degree `<= m` through
//! `(x_j, b_j)`. They differ only in which sub-interpolants get combined.

use crate::error::{Error, Result};
use crate::samples::{collision_radius, Scheme};

/// Whether the intermediate levels are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trace {
    Keep,
    Discard,
}

/// Triangular record of one iterated evaluation.
///
/// `levels[0]` holds the base values and `levels[m]` the single final value;
/// level `s` always has `m + 1 - s` entries.
///
/// * Neville: `levels[s][j]` is the interpolant over `x_j..x_{j+s}`.
/// * Aitken: `levels[s][k]` is the interpolant over `x_0..x_{s-1}` plus the
///   free node `x_{s+k}`; entry `0` of each level is therefore the
///   interpolant over the prefix `x_0..x_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tableau {
    pub eval_point: f64,
    pub nodes: Vec<f64>,
    pub levels: Vec<Vec<f64>>,
    pub scheme: Scheme,
}

impl Tableau {
    pub fn value(&self) -> f64 {
        self.levels.last().map(|l| l[0]).unwrap_or(f64::NAN)
    }
}

/// Result of a tableau run.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub trace: Option<Tableau>,
}

/// Runs the selected scheme.
pub fn evaluate(scheme: Scheme, nodes: &[f64], base: &[f64], x: f64) -> Result<f64> {
    run(scheme, nodes, base, x, Trace::Discard).map(|e| e.value)
}

/// Runs the selected scheme, keeping every level.
pub fn trace(scheme: Scheme, nodes: &[f64], base: &[f64], x: f64) -> Result<Tableau> {
    let eval = run(scheme, nodes, base, x, Trace::Keep)?;
    Ok(eval.trace.expect("trace requested"))
}

pub fn run(scheme: Scheme, nodes: &[f64], base: &[f64], x: f64, keep: Trace) -> Result<Evaluation> {
    match scheme {
        Scheme::Neville => neville_evaluate(nodes, base, x, keep),
        Scheme::Aitken => aitken_evaluate(nodes, base, x, keep),
    }
}

fn check_inputs(nodes: &[f64], base: &[f64]) -> Result<()> {
    if nodes.len() != base.len() {
        return Err(Error::LengthMismatch {
            nodes: nodes.len(),
            values: base.len(),
        });
    }
    if nodes.is_empty() {
        return Err(Error::Empty);
    }
    Ok(())
}

fn min_separation(nodes: &[f64]) -> f64 {
    let lo = nodes.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = nodes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    collision_radius(hi - lo)
}

/// Neville's scheme:
/// `V[j..j+i] = (V[j..j+i-1] (x_{j+i} - x) - V[j+1..j+i] (x_j - x)) / (x_{j+i} - x_j)`.
pub fn neville_evaluate(nodes: &[f64], base: &[f64], x: f64, keep: Trace) -> Result<Evaluation> {
    check_inputs(nodes, base)?;
    let m = nodes.len() - 1;
    let radius = min_separation(nodes);

    let mut levels = Vec::new();
    let mut cur = base.to_vec();
    for i in 1..=m {
        let mut next = Vec::with_capacity(m + 1 - i);
        for j in 0..=m - i {
            let (lo, hi) = (nodes[j], nodes[j + i]);
            let denom = hi - lo;
            if denom.abs() <= radius {
                return Err(Error::DegenerateNodes { first: j, second: j + i });
            }
            next.push((cur[j] * (hi - x) - cur[j + 1] * (lo - x)) / denom);
        }
        if keep == Trace::Keep {
            levels.push(std::mem::replace(&mut cur, next));
        } else {
            cur = next;
        }
    }
    let value = cur[0];
    let trace = (keep == Trace::Keep).then(|| {
        levels.push(cur);
        Tableau {
            eval_point: x,
            nodes: nodes.to_vec(),
            levels,
            scheme: Scheme::Neville,
        }
    });
    Ok(Evaluation { value, trace })
}

/// Aitken's scheme:
/// `V[0..i, j] = (V[0..i] (x_j - x) - V[0..i-1, j] (x_i - x)) / (x_j - x_i)`
/// for `j = i+1..m`.
pub fn aitken_evaluate(nodes: &[f64], base: &[f64], x: f64, keep: Trace) -> Result<Evaluation> {
    check_inputs(nodes, base)?;
    let m = nodes.len() - 1;
    let radius = min_separation(nodes);

    let mut levels = Vec::new();
    // cur[k] is the entry for free node x_{i+k}
    let mut cur = base.to_vec();
    for i in 0..m {
        let pivot = cur[0];
        let xi = nodes[i];
        let mut next = Vec::with_capacity(m - i);
        for j in i + 1..=m {
            let xj = nodes[j];
            let denom = xj - xi;
            if denom.abs() <= radius {
                return Err(Error::DegenerateNodes { first: i, second: j });
            }
            next.push((pivot * (xj - x) - cur[j - i] * (xi - x)) / denom);
        }
        if keep == Trace::Keep {
            levels.push(std::mem::replace(&mut cur, next));
        } else {
            cur = next;
        }
    }
    let value = cur[0];
    let trace = (keep == Trace::Keep).then(|| {
        levels.push(cur);
        Tableau {
            eval_point: x,
            nodes: nodes.to_vec(),
            levels,
            scheme: Scheme::Aitken,
        }
    });
    Ok(Evaluation { value, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMES: [Scheme; 2] = [Scheme::Neville, Scheme::Aitken];

    #[test]
    fn single_node_is_base_value() {
        for s in SCHEMES {
            assert_eq!(evaluate(s, &[5.0], &[7.0], -3.0).unwrap(), 7.0);
            let t = trace(s, &[5.0], &[7.0], 12.0).unwrap();
            assert_eq!(t.levels, vec![vec![7.0]]);
        }
    }

    #[test]
    fn constant_reproduction() {
        for s in SCHEMES {
            let v = evaluate(s, &[1.0, 2.0, 3.0], &[4.5; 3], 0.7).unwrap();
            assert!((v - 4.5).abs() < 1e-14);
        }
    }

    #[test]
    fn linear_through_two_points() {
        // interpolant of {(1,1),(2,1/2)} is 3/2 - u/2
        for s in SCHEMES {
            assert_eq!(evaluate(s, &[1.0, 2.0], &[1.0, 0.5], 0.0).unwrap(), 1.5);
        }
    }

    #[test]
    fn reciprocal_through_three_points() {
        // exact rational interpolant of 1/u at {1,2,3}, evaluated at 0, is 11/6
        for s in SCHEMES {
            let v = evaluate(s, &[1.0, 2.0, 3.0], &[1.0, 0.5, 1.0 / 3.0], 0.0).unwrap();
            assert!((v - 11.0 / 6.0).abs() <= 1e-15 * 2.0, "{s}: {v}");
        }
    }

    #[test]
    fn trace_shape_and_final_value() {
        let nodes = [0.0, 1.0, 3.0, 4.0, 7.0];
        let base = [1.0, -2.0, 0.5, 3.0, 2.0];
        for s in SCHEMES {
            let t = trace(s, &nodes, &base, 2.2).unwrap();
            let lens: Vec<_> = t.levels.iter().map(Vec::len).collect();
            assert_eq!(lens, vec![5, 4, 3, 2, 1]);
            assert_eq!(t.levels[0], base.to_vec());
            assert_eq!(t.value(), evaluate(s, &nodes, &base, 2.2).unwrap());
            assert_eq!(t.scheme, s);
        }
    }

    #[test]
    fn neville_intermediates_are_window_interpolants() {
        // u^2 on 0,1,3: window {1,3} linear interpolant at x=2 is 5
        let t = trace(Scheme::Neville, &[0.0, 1.0, 3.0], &[0.0, 1.0, 9.0], 2.0).unwrap();
        assert_eq!(t.levels[1], vec![2.0, 5.0]);
        assert_eq!(t.levels[2], vec![4.0]);
    }

    #[test]
    fn aitken_intermediates_use_prefix() {
        // u^2 on 0,1,3 at x=2: V[0,1] = 2, V[0,3] = 6
        let t = trace(Scheme::Aitken, &[0.0, 1.0, 3.0], &[0.0, 1.0, 9.0], 2.0).unwrap();
        assert_eq!(t.levels[1], vec![2.0, 6.0]);
        assert_eq!(t.levels[2], vec![4.0]);
    }

    #[test]
    fn degenerate_nodes_reported() {
        for s in SCHEMES {
            let err = evaluate(s, &[1.0, 1.0], &[0.0, 1.0], 0.0).unwrap_err();
            assert_eq!(err, Error::DegenerateNodes { first: 0, second: 1 });
        }
    }

    #[test]
    fn bad_shapes() {
        assert_eq!(
            evaluate(Scheme::Neville, &[1.0], &[], 0.0).unwrap_err(),
            Error::LengthMismatch { nodes: 1, values: 0 }
        );
        assert_eq!(evaluate(Scheme::Aitken, &[], &[], 0.0).unwrap_err(), Error::Empty);
    }
}
