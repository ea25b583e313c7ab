//! Newton divided differences and the iterated divided-difference
//! polynomials `D_{r..n}[x]` (Neville) / `d_{r..n}[x]` (Aitken).
//!
//! `D_{r..n}[x]` interpolates the values `f[x_j, x_0, .., x_{r-1}]`,
//! `j = r..n`, at the nodes `x_r..x_n` and evaluates at `x`. It stands in
//! for `f[x, x_0, .., x_{r-1}]` and is exact when `f` is a polynomial of
//! degree `<= n`.

use crate::error::{Error, Result};
use crate::samples::{SampleSet, Scheme};
use crate::tableau::{self, Tableau};

/// Newton-form coefficients `f[x_0..x_i]`, `i = 0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonCoefficients {
    pub coeffs: Vec<f64>,
}

impl NewtonCoefficients {
    /// Evaluates the Newton form at `x` by nested multiplication.
    pub fn evaluate(&self, nodes: &[f64], x: f64) -> f64 {
        self.coeffs
            .iter()
            .zip(nodes)
            .rev()
            .fold(0.0, |acc, (&c, &xi)| acc * (x - xi) + c)
    }
}

/// Standard in-place divided-difference table.
pub fn newton_coefficients(set: &SampleSet) -> NewtonCoefficients {
    NewtonCoefficients {
        coeffs: newton_table(set.nodes(), set.values()),
    }
}

fn newton_table(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    let mut c = values.to_vec();
    let n = c.len();
    for order in 1..n {
        for i in (order..n).rev() {
            c[i] = (c[i] - c[i - 1]) / (nodes[i] - nodes[i - order]);
        }
    }
    c
}

/// Highest-order divided difference over the listed points.
fn top_divided_difference(nodes: &[f64], values: &[f64]) -> f64 {
    *newton_table(nodes, values).last().expect("non-empty")
}

/// Base values `f[x_0, .., x_{r-1}, x_j]` for `j = r..n`, each computed
/// from scratch on its own `r + 1` points.
pub fn dd_base_values(set: &SampleSet, r: usize) -> Result<Vec<f64>> {
    let n = set.degree();
    if r > n {
        return Err(Error::IndexOutOfRange { index: r, n });
    }
    let (xs, fs) = (set.nodes(), set.values());
    let mut px = xs[..r].to_vec();
    let mut pf = fs[..r].to_vec();
    px.push(0.0);
    pf.push(0.0);
    Ok((r..=n)
        .map(|j| {
            px[r] = xs[j];
            pf[r] = fs[j];
            top_divided_difference(&px, &pf)
        })
        .collect())
}

/// `D_{r..n}[x]` or `d_{r..n}[x]` depending on `scheme`.
pub fn dd_polynomial_evaluate(set: &SampleSet, r: usize, x: f64, scheme: Scheme) -> Result<f64> {
    let base = dd_base_values(set, r)?;
    tableau::evaluate(scheme, &set.nodes()[r..], &base, x)
}

/// Two-part divided-difference table.
///
/// `part1[s - 1]` is the order-`s` column `f[x_0..x_{s-1}, x_j]`,
/// `j = s..n`. `part2` is the iterated tableau over `x_r..x_n` whose base
/// is the last column of `part1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewDdTable {
    pub r: usize,
    pub eval_point: f64,
    pub scheme: Scheme,
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    pub part1: Vec<Vec<f64>>,
    pub part2: Tableau,
}

impl NewDdTable {
    pub fn value(&self) -> f64 {
        self.part2.value()
    }
}

/// Default prefix length for table rendering.
pub const DEFAULT_TABLE_R: usize = 3;

pub fn render_new_dd_table(set: &SampleSet, r: usize, x: f64, scheme: Scheme) -> Result<NewDdTable> {
    let n = set.degree();
    if r == 0 || r > n {
        return Err(Error::IndexOutOfRange { index: r, n });
    }
    let (xs, fs) = (set.nodes(), set.values());

    // column s from column s-1: f[x_0..x_{s-1}, x_j]
    //   = (f[x_0..x_{s-2}, x_j] - f[x_0..x_{s-1}]) / (x_j - x_{s-1})
    let mut part1: Vec<Vec<f64>> = Vec::with_capacity(r);
    let mut prev: Vec<f64> = fs.to_vec();
    let mut prev_start = 0;
    for s in 1..=r {
        let pivot = prev[s - 1 - prev_start];
        let col: Vec<f64> = (s..=n)
            .map(|j| (prev[j - prev_start] - pivot) / (xs[j] - xs[s - 1]))
            .collect();
        part1.push(col.clone());
        prev = col;
        prev_start = s;
    }

    let base = part1.last().expect("r >= 1").clone();
    let part2 = tableau::trace(scheme, &xs[r..], &base, x)?;
    Ok(NewDdTable {
        r,
        eval_point: x,
        scheme,
        nodes: xs.to_vec(),
        values: fs.to_vec(),
        part1,
        part2,
    })
}
