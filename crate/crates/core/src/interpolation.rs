//! Hybrid interpolation: a Newton prefix of length `r` followed by the
//! iterated remainder `D_{r..n}[x] * (x - x_0)..(x - x_{r-1})`.
//!
//! `r = n` is Newton's forward formula; `r = 0` is plain Neville/Aitken.
//! Every `r` yields the same degree `<= n` interpolant.

use crate::divided_difference::{dd_polynomial_evaluate, newton_coefficients};
use crate::error::{Error, Result};
use crate::samples::{SampleSet, Scheme};

/// Default prefix length (pure iterated interpolation).
pub const DEFAULT_R: usize = 0;

#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationRequest<'a> {
    set: &'a SampleSet,
    x: f64,
    r: usize,
    scheme: Scheme,
}

impl<'a> InterpolationRequest<'a> {
    pub fn new(set: &'a SampleSet, x: f64, r: usize, scheme: Scheme) -> Result<Self> {
        if r > set.degree() {
            return Err(Error::IndexOutOfRange {
                index: r,
                n: set.degree(),
            });
        }
        Ok(InterpolationRequest { set, x, r, scheme })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
}

pub fn interpolate(req: &InterpolationRequest<'_>) -> Result<f64> {
    let set = req.set;
    let x = req.x;
    if let Some(j) = set.colliding_node(x) {
        return Ok(set.values()[j]);
    }

    let nodes = set.nodes();
    let mut sum = 0.0;
    let mut product = 1.0;
    if req.r > 0 {
        let newton = newton_coefficients(set);
        for (c, xi) in newton.coeffs.iter().zip(nodes).take(req.r) {
            sum += c * product;
            product *= x - xi;
        }
    }
    let remainder = dd_polynomial_evaluate(set, req.r, x, req.scheme)?;
    Ok(sum + remainder * product)
}

/// Interpolated value at `x` for every prefix length `r = 0..n`.
pub fn interpolate_all_r(set: &SampleSet, x: f64, scheme: Scheme) -> Result<Vec<f64>> {
    (0..=set.degree())
        .map(|r| interpolate(&InterpolationRequest::new(set, x, r, scheme)?))
        .collect()
}
