//! Validated scattered samples `(x_j, f_j)`.
//!
//! Node order is kept exactly as supplied. The iterated tableaux are
//! defined over index order, so sorting would change every intermediate
//! entry even though final values would not move.

use crate::error::{Error, Result};

/// Relative separation below which two abscissae are treated as equal.
pub const SEPARATION_EPS: f64 = 1e-12;

/// Interpolation scheme used by the iterated tableaux.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    /// Contiguous windows `x_j..x_{j+i}`.
    #[default]
    Neville,
    /// Fixed prefix `x_0..x_i` plus one free node.
    Aitken,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Neville => "neville",
            Scheme::Aitken => "aitken",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "neville" => Ok(Scheme::Neville),
            "aitken" => Ok(Scheme::Aitken),
            other => Err(format!("unknown scheme '{other}' (expected neville or aitken)")),
        }
    }
}

/// Collision radius for a node span.
pub(crate) fn collision_radius(span: f64) -> f64 {
    SEPARATION_EPS * span.max(1.0)
}

/// Immutable set of `n + 1` distinct nodes with their ordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl SampleSet {
    /// Validates and wraps the samples.
    ///
    /// Fails on length mismatch, empty input, non-finite entries (nodes are
    /// checked before values) or any pair of nodes closer than
    /// `SEPARATION_EPS * max(1, span)`.
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::LengthMismatch {
                nodes: nodes.len(),
                values: values.len(),
            });
        }
        if nodes.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = nodes.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }

        let radius = collision_radius(span_of(&nodes));
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if (nodes[i] - nodes[j]).abs() <= radius {
                    return Err(Error::DuplicateNode { first: i, second: j });
                }
            }
        }
        Ok(SampleSet { nodes, values })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of samples, `n + 1`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false; a valid set holds at least one sample.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Polynomial degree bound `n` of the stencil.
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `max node - min node`.
    pub fn span(&self) -> f64 {
        span_of(&self.nodes)
    }

    /// Node whose distance to `x` is within the collision radius, if any.
    /// The nearest such node wins.
    pub fn colliding_node(&self, x: f64) -> Option<usize> {
        let radius = collision_radius(self.span());
        self.nodes
            .iter()
            .enumerate()
            .map(|(j, &xj)| (j, (xj - x).abs()))
            .filter(|&(_, d)| d <= radius)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(j, _)| j)
    }

    /// Guards evaluation points that must avoid the nodes (the inverse
    /// power bases are singular there). A no-op when `need_distinct` is
    /// false.
    pub fn check_eval_point(&self, x: f64, need_distinct: bool) -> Result<()> {
        if !need_distinct {
            return Ok(());
        }
        match self.colliding_node(x) {
            Some(node) => Err(Error::EvalPointCollision { node }),
            None => Ok(()),
        }
    }

    /// Copy of the set with node `index` removed.
    pub fn without_node(&self, index: usize) -> Result<SampleSet> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                n: self.degree(),
            });
        }
        if self.len() == 1 {
            return Err(Error::EmptyStencil);
        }
        let mut nodes = self.nodes.clone();
        let mut values = self.values.clone();
        nodes.remove(index);
        values.remove(index);
        SampleSet::new(nodes, values)
    }
}

fn span_of(nodes: &[f64]) -> f64 {
    let (lo, hi) = nodes
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if lo.is_finite() {
        hi - lo
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_formed_input() {
        let set = SampleSet::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 4.0]).unwrap();
        assert_eq!(set.degree(), 2);
        assert_eq!(set.nodes(), &[0.0, 1.0, 2.0]);
        assert_eq!(set.values(), &[0.0, 1.0, 4.0]);
    }

    #[test]
    fn exact_duplicate_rejected() {
        let err = SampleSet::new(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap_err();
        assert_eq!(err, Error::DuplicateNode { first: 0, second: 1 });
    }

    #[test]
    fn near_duplicate_rejected_relative_to_span() {
        let err = SampleSet::new(vec![0.0, 1e6, 1e6 + 1e-7], vec![0.0; 3]).unwrap_err();
        assert_eq!(err, Error::DuplicateNode { first: 1, second: 2 });
        assert!(SampleSet::new(vec![0.0, 1e-11], vec![0.0; 2]).is_ok());
    }

    #[test]
    fn arity_mismatch() {
        let err = SampleSet::new(vec![0.0, 1.0], vec![1.0]).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { nodes: 2, values: 1 });
    }

    #[test]
    fn empty_and_non_finite() {
        assert_eq!(SampleSet::new(vec![], vec![]).unwrap_err(), Error::Empty);
        assert_eq!(
            SampleSet::new(vec![0.0, f64::NAN], vec![1.0, 2.0]).unwrap_err(),
            Error::NonFinite { index: 1 }
        );
        assert_eq!(
            SampleSet::new(vec![0.0, 1.0], vec![f64::INFINITY, 2.0]).unwrap_err(),
            Error::NonFinite { index: 0 }
        );
    }

    #[test]
    fn input_order_preserved() {
        let set = SampleSet::new(vec![2.0, 0.0, 1.0], vec![4.0, 0.0, 1.0]).unwrap();
        assert_eq!(set.nodes(), &[2.0, 0.0, 1.0]);
    }

    #[test]
    fn eval_point_guard() {
        let set = SampleSet::new(vec![1.0, 2.0], vec![0.0, 0.0]).unwrap();
        assert!(set.check_eval_point(0.0, true).is_ok());
        assert_eq!(
            set.check_eval_point(1.0, true).unwrap_err(),
            Error::EvalPointCollision { node: 0 }
        );
        assert!(set.check_eval_point(1.0, false).is_ok());
    }

    #[test]
    fn dropping_nodes() {
        let set = SampleSet::new(vec![1.0, 2.0], vec![3.0, 4.0]).unwrap();
        let one = set.without_node(0).unwrap();
        assert_eq!(one.nodes(), &[2.0]);
        assert_eq!(one.without_node(0).unwrap_err(), Error::EmptyStencil);
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("Aitken".parse::<Scheme>().unwrap(), Scheme::Aitken);
        assert!("lagrange".parse::<Scheme>().is_err());
    }
}
