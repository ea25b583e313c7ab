#![allow(dead_code)]

use iterkit::oracle::{self, Rational, RationalPoly};
use iterkit::SampleSet;
use rand::seq::SliceRandom;
use rand::Rng;

/// Polynomial data on distinct integer nodes with a dyadic, off-node
/// evaluation point. Every quantity is exact in binary64 and in the oracle.
#[derive(Debug, Clone)]
pub struct PolyCase {
    pub nodes: Vec<i64>,
    pub coeffs: Vec<i64>,
    pub x: f64,
}

impl PolyCase {
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn poly(&self) -> RationalPoly {
        RationalPoly::from_integers(&self.coeffs)
    }

    pub fn set(&self) -> SampleSet {
        let p = self.poly();
        let xs: Vec<f64> = self.nodes.iter().map(|&v| v as f64).collect();
        let fs: Vec<f64> = self
            .nodes
            .iter()
            .map(|&v| oracle::to_f64(&p.value(&oracle::int(v))))
            .collect();
        SampleSet::new(xs, fs).unwrap()
    }

    pub fn x_exact(&self) -> Rational {
        oracle::rational(self.x)
    }

    pub fn span(&self) -> f64 {
        let lo = *self.nodes.iter().min().unwrap();
        let hi = *self.nodes.iter().max().unwrap();
        (hi - lo) as f64
    }

    /// Minimum distance from `x` to the nodes, relative to the span.
    pub fn off_node(&self, x: f64) -> bool {
        let gap = 0.05 * self.span().max(1.0);
        self.nodes.iter().all(|&v| (v as f64 - x).abs() >= gap)
    }
}

/// Degree `d <= n <= max_n`, integer nodes in [-5, 5], coefficients in
/// [-10, 10], `x = k / 16` in [-5, 5] at least `0.05 max(1, span)` from
/// every node.
pub fn random_case<R: Rng>(rng: &mut R, max_n: usize) -> PolyCase {
    let n = rng.gen_range(0..=max_n);
    let mut pool: Vec<i64> = (-5..=5).collect();
    pool.shuffle(rng);
    let nodes: Vec<i64> = pool[..=n].to_vec();
    let d = rng.gen_range(0..=n);
    let coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-10..=10)).collect();
    let mut case = PolyCase { nodes, coeffs, x: 0.0 };
    loop {
        let x = rng.gen_range(-80..=80) as f64 / 16.0;
        if case.off_node(x) {
            case.x = x;
            return case;
        }
    }
}

pub fn close(value: f64, reference: f64, tol: f64) -> bool {
    (value - reference).abs() <= tol * (1.0 + reference.abs())
}

pub fn rel_diff(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / (1.0 + reference.abs())
}
