//! Arbitrary-order derivatives at an off-node point.
//!
//! For each power `k` two tableaux run over all nodes: one with base
//! `(x_j - x)^-k` giving `N_k(x)`, one with base `f(x_j) (x_j - x)^-k`
//! giving `Ñ^(k)[x]`. With `c_m = f^(m)(x) / m!` these satisfy
//!
//! ```text
//! Ñ^(k) = c_k + c_{k-1} N_1 + .. + c_0 N_k
//! ```
//!
//! exactly for polynomial data of degree `<= n`. Inverting that triangular
//! convolution with `a_0 = 1, a_k = -(a_0 N_k + .. + a_{k-1} N_1)` gives
//! `f^(t)(x) / t! = a_0 Ñ^(t) + a_1 Ñ^(t-1) + .. + a_t Ñ^(0)`.
//!
//! Points very close to a node produce huge inverse powers. Only exact
//! collisions (within the separation radius) are rejected; conditioning
//! beyond that is the caller's concern.

use crate::error::{Error, Result};
use crate::samples::{SampleSet, Scheme};
use crate::tableau;

/// Sequences `N_k`, `Ñ^(k)` (`A_k`, `Ã^(k)` under Aitken) and the
/// `a`-coefficients built from them.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeWorkspace {
    pub x: f64,
    pub scheme: Scheme,
    /// `N_k(x)`, `k = 0..=k_max`; `inverse_powers[0] = 1`.
    pub inverse_powers: Vec<f64>,
    /// `Ñ^(k)[x]`, `k = 0..=k_max`.
    pub weighted: Vec<f64>,
    /// `a_0..a_t`, empty until [`DerivativeWorkspace::with_a_coefficients`].
    pub a: Vec<f64>,
}

impl DerivativeWorkspace {
    pub fn k_max(&self) -> usize {
        self.inverse_powers.len() - 1
    }

    /// Fills `a_0..a_t` by the triangular recursion, ascending in `k`.
    pub fn with_a_coefficients(mut self, t: usize) -> Result<Self> {
        if self.k_max() < t {
            return Err(Error::InsufficientDepth {
                k_max: self.k_max(),
                order: t,
            });
        }
        let n = &self.inverse_powers;
        let mut a = Vec::with_capacity(t + 1);
        a.push(1.0);
        for k in 1..=t {
            let mut acc = 0.0;
            for j in 0..k {
                acc += a[j] * n[k - j];
            }
            a.push(-acc);
        }
        self.a = a;
        Ok(self)
    }

    /// `f^(t)(x) / t!` from the filled coefficients.
    fn scaled_derivative(&self, t: usize) -> f64 {
        let mut acc = 0.0;
        for j in 0..=t {
            acc += self.a[j] * self.weighted[t - j];
        }
        acc
    }
}

/// Runs the `2 (k_max + 1)` tableaux at `x`.
pub fn weight_sequences(set: &SampleSet, x: f64, k_max: usize, scheme: Scheme) -> Result<DerivativeWorkspace> {
    set.check_eval_point(x, true)?;
    let nodes = set.nodes();
    let values = set.values();

    let recip: Vec<f64> = nodes.iter().map(|&xj| 1.0 / (xj - x)).collect();
    let mut power = vec![1.0; nodes.len()];

    let mut inverse_powers = Vec::with_capacity(k_max + 1);
    let mut weighted = Vec::with_capacity(k_max + 1);
    inverse_powers.push(1.0);
    weighted.push(tableau::evaluate(scheme, nodes, values, x)?);

    let mut base_w = vec![0.0; nodes.len()];
    for k in 1..=k_max {
        for (j, p) in power.iter_mut().enumerate() {
            *p *= recip[j];
            base_w[j] = values[j] * *p;
            if !p.is_finite() || !base_w[j].is_finite() {
                return Err(Error::Overflow { power: k, node: j });
            }
        }
        inverse_powers.push(tableau::evaluate(scheme, nodes, &power, x)?);
        weighted.push(tableau::evaluate(scheme, nodes, &base_w, x)?);
    }

    Ok(DerivativeWorkspace {
        x,
        scheme,
        inverse_powers,
        weighted,
        a: Vec::new(),
    })
}

/// Whether `t > n` is accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    #[default]
    WithinStencil,
    AllowBeyondStencil,
}

fn factorial(t: usize) -> f64 {
    (1..=t).fold(1.0, |acc, k| acc * k as f64)
}

/// `t`-th derivative estimate at `x` from the whole stencil.
pub fn derivative(set: &SampleSet, x: f64, t: usize, scheme: Scheme) -> Result<f64> {
    derivative_with_policy(set, x, t, scheme, OrderPolicy::WithinStencil)
}

pub fn derivative_with_policy(
    set: &SampleSet,
    x: f64,
    t: usize,
    scheme: Scheme,
    policy: OrderPolicy,
) -> Result<f64> {
    if t > set.degree() && policy == OrderPolicy::WithinStencil {
        return Err(Error::OrderExceedsStencil {
            order: t,
            n: set.degree(),
        });
    }
    let ws = weight_sequences(set, x, t, scheme)?.with_a_coefficients(t)?;
    Ok(factorial(t) * ws.scaled_derivative(t))
}

/// Derivatives of orders `0..=t_max` from one shared workspace.
pub fn derivative_all_orders(set: &SampleSet, x: f64, t_max: usize, scheme: Scheme) -> Result<Vec<f64>> {
    if t_max > set.degree() {
        return Err(Error::OrderExceedsStencil {
            order: t_max,
            n: set.degree(),
        });
    }
    let ws = weight_sequences(set, x, t_max, scheme)?.with_a_coefficients(t_max)?;
    Ok((0..=t_max)
        .map(|t| factorial(t) * ws.scaled_derivative(t))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpolation::{interpolate, InterpolationRequest};

    const SCHEMES: [Scheme; 2] = [Scheme::Neville, Scheme::Aitken];

    fn set(xs: &[f64], f: impl Fn(f64) -> f64) -> SampleSet {
        SampleSet::new(xs.to_vec(), xs.iter().map(|&x| f(x)).collect()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn zeroth_sequence_is_one() {
        for s in SCHEMES {
            let ws = weight_sequences(&set(&[0.3, 1.1, 2.9], f64::sin), 5.0, 2, s).unwrap();
            assert_eq!(ws.inverse_powers[0], 1.0);
        }
    }

    #[test]
    fn first_and_second_inverse_powers() {
        for s in SCHEMES {
            let ws = weight_sequences(&set(&[1.0, 2.0, 3.0], |_| 0.0), 0.0, 2, s).unwrap();
            assert!(close(ws.inverse_powers[1], 11.0 / 6.0, 1e-15));
            // 85/36 from the exact-rational interpolant of 1/u^2 at {1,2,3}
            assert!(close(ws.inverse_powers[2], 85.0 / 36.0, 1e-15));
            let ws = weight_sequences(&set(&[1.0, 2.0], |_| 0.0), 0.0, 2, s).unwrap();
            assert_eq!(ws.inverse_powers[2], 1.75);
        }
    }

    #[test]
    fn weighted_zero_matches_interpolation() {
        let data = set(&[0.2, 1.4, 2.1, 3.7], f64::exp);
        for s in SCHEMES {
            let ws = weight_sequences(&data, 0.9, 1, s).unwrap();
            let req = InterpolationRequest::new(&data, 0.9, 0, s).unwrap();
            assert_eq!(ws.weighted[0].to_bits(), interpolate(&req).unwrap().to_bits());
        }
    }

    #[test]
    fn a_coefficients_recursion() {
        let ws = weight_sequences(&set(&[1.0, 2.0], |_| 0.0), 0.0, 1, Scheme::Neville).unwrap();
        assert_eq!(ws.clone().with_a_coefficients(0).unwrap().a, vec![1.0]);
        assert_eq!(ws.with_a_coefficients(1).unwrap().a, vec![1.0, -1.5]);

        let ws = weight_sequences(&set(&[1.0, 2.0, 3.0], |_| 0.0), 0.0, 2, Scheme::Neville)
            .unwrap()
            .with_a_coefficients(2)
            .unwrap();
        assert!(close(ws.a[1], -11.0 / 6.0, 1e-15));
        assert!(close(ws.a[2], 1.0, 1e-14));
        for k in 1..=2 {
            let s: f64 = (0..k).map(|j| ws.a[j] * ws.inverse_powers[k - j]).sum();
            assert!((ws.a[k] + s).abs() <= 1e-12);
        }
    }

    #[test]
    fn insufficient_depth() {
        let ws = weight_sequences(&set(&[1.0, 2.0], |_| 0.0), 0.0, 1, Scheme::Aitken).unwrap();
        assert_eq!(
            ws.with_a_coefficients(2).unwrap_err(),
            Error::InsufficientDepth { k_max: 1, order: 2 }
        );
    }

    #[test]
    fn worked_derivatives() {
        for s in SCHEMES {
            assert_eq!(derivative(&set(&[1.0, 2.0], |u| u), 0.0, 1, s).unwrap(), 1.0);
            let d2 = derivative(&set(&[1.0, 2.0, 3.0], |u| u * u), 0.0, 2, s).unwrap();
            assert!(close(d2, 2.0, 1e-14), "{d2}");
        }
    }

    #[test]
    fn all_orders() {
        for s in SCHEMES {
            let d = derivative_all_orders(&set(&[1.0, 2.0, 3.0], |u| u * u), 0.0, 2, s).unwrap();
            assert!(d[0].abs() < 1e-14 && d[1].abs() < 1e-14 && close(d[2], 2.0, 1e-14), "{d:?}");
            let d = derivative_all_orders(&set(&[1.0, 2.5], |_| 4.0), 0.0, 1, s).unwrap();
            assert!(close(d[0], 4.0, 1e-15) && d[1].abs() < 1e-14);

            let data = set(&[0.0, 0.4, 1.1, 1.5, 2.3], f64::cos);
            let all = derivative_all_orders(&data, 0.7, 4, s).unwrap();
            for (t, &v) in all.iter().enumerate() {
                assert_eq!(v, derivative(&data, 0.7, t, s).unwrap());
            }
            let req = InterpolationRequest::new(&data, 0.7, 0, s).unwrap();
            assert_eq!(all[0], interpolate(&req).unwrap());
        }
    }

    #[test]
    fn order_policy() {
        let data = set(&[1.0, 2.0], |u| u);
        assert_eq!(
            derivative(&data, 0.0, 2, Scheme::Neville).unwrap_err(),
            Error::OrderExceedsStencil { order: 2, n: 1 }
        );
        let v = derivative_with_policy(&data, 0.0, 2, Scheme::Neville, OrderPolicy::AllowBeyondStencil)
            .unwrap();
        assert!(v.abs() < 1e-13);
    }

    #[test]
    fn collision_and_overflow() {
        let data = set(&[1.0, 2.0], |u| u);
        assert_eq!(
            derivative(&data, 1.0, 1, Scheme::Neville).unwrap_err(),
            Error::EvalPointCollision { node: 0 }
        );
        let data = set(&[0.0, 1.0], |_| 1e300);
        let err = weight_sequences(&data, 1e-11, 3, Scheme::Neville).unwrap_err();
        assert!(matches!(err, Error::Overflow { node: 0, .. }), "{err:?}");
    }

    #[test]
    fn measured_order_tracks_stencil_size() {
        // 5 equispaced nodes, x between nodes 1 and 2; error ~ h^(n+1-t)
        let x0 = 0.3;
        for t in [1usize, 2] {
            let hs = [0.2, 0.1, 0.05, 0.025];
            let errs: Vec<f64> = hs
                .iter()
                .map(|&h| {
                    let xs: Vec<f64> = (0..5).map(|j| x0 + (j as f64 - 1.7) * h).collect();
                    let d = derivative(&set(&xs, f64::exp), x0, t, Scheme::Neville).unwrap();
                    (d - x0.exp()).abs()
                })
                .collect();
            let order = crate::convergence::least_squares_order(&hs, &errs);
            assert!(order >= (5 - t) as f64 - 0.5, "t={t}: {order}");
        }
    }
}
