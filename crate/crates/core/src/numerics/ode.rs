//! Adaptive embedded Runge-Kutta integration for scalar initial value
//! problems (Dormand-Prince 5(4) pair), with cubic Hermite dense output.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct OdeConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on |h|; keeps the Hermite interpolation error negligible.
    pub max_step: f64,
    pub max_steps: u32,
}

impl Default for OdeConfig {
    fn default() -> Self {
        OdeConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_step: 1e-3,
            max_steps: 2_000_000,
        }
    }
}

/// Why the integration stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    ReachedEnd,
    /// Step size collapsed (e.g. the right side became singular).
    StepUnderflow,
}

/// A solved scalar trajectory: accepted nodes with derivatives, queryable by
/// monotone cubic Hermite interpolation.
#[derive(Clone, Debug)]
pub struct Trajectory {
    /// Accepted (s, z, z') triples in integration order.
    pub nodes: Vec<(f64, f64, f64)>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn start(&self) -> f64 {
        self.nodes.first().map(|n| n.0).unwrap_or(f64::NAN)
    }

    pub fn end(&self) -> f64 {
        self.nodes.last().map(|n| n.0).unwrap_or(f64::NAN)
    }

    /// Interpolated value at `s`, which must lie between the first and last
    /// node (in integration direction).
    pub fn value(&self, s: f64) -> Result<f64> {
        let n = self.nodes.len();
        if n == 0 {
            return Err(Error::NoSolution("empty trajectory".into()));
        }
        let forward = self.nodes[n - 1].0 >= self.nodes[0].0;
        let inside = if forward {
            self.nodes[0].0 <= s && s <= self.nodes[n - 1].0
        } else {
            self.nodes[n - 1].0 <= s && s <= self.nodes[0].0
        };
        if !inside {
            return Err(Error::NoSolution(format!(
                "query s = {s} lies outside the integrated range [{}, {}]",
                self.start(),
                self.end()
            )));
        }
        // binary search for the bracketing step
        let mut lo = 0usize;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let cmp = if forward {
                self.nodes[mid].0 <= s
            } else {
                self.nodes[mid].0 >= s
            };
            if cmp {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (s0, z0, d0) = self.nodes[lo];
        let (s1, z1, d1) = self.nodes[hi];
        let h = s1 - s0;
        if h == 0.0 {
            return Ok(z0);
        }
        let u = (s - s0) / h;
        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        Ok(h00 * z0 + h10 * h * d0 + h01 * z1 + h11 * h * d1)
    }
}

// Dormand-Prince 5(4) Butcher tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate `z' = f(s, z)` from `(s0, z0)` to `s_end` (either direction).
pub fn solve_scalar_ivp<F: Fn(f64, f64) -> f64>(
    f: F,
    s0: f64,
    z0: f64,
    s_end: f64,
    cfg: &OdeConfig,
) -> Result<Trajectory> {
    let dir = (s_end - s0).signum();
    if dir == 0.0 {
        return Ok(Trajectory {
            nodes: vec![(s0, z0, f(s0, z0))],
            termination: Termination::ReachedEnd,
        });
    }
    let mut s = s0;
    let mut z = z0;
    let mut k0 = f(s, z);
    let mut h = dir * cfg.max_step.min((s_end - s0).abs());
    let mut nodes = vec![(s, z, k0)];
    let mut n_steps = 0u32;

    while (s_end - s) * dir > 0.0 {
        if n_steps >= cfg.max_steps {
            return Err(Error::NoConvergence {
                a: s0,
                b: s_end,
                err_est: f64::NAN,
                subdivisions: n_steps,
            });
        }
        n_steps += 1;
        if (s + h - s_end) * dir > 0.0 {
            h = s_end - s;
        }
        if h.abs() < 1e-14 * s.abs().max(1.0) {
            return Ok(Trajectory {
                nodes,
                termination: Termination::StepUnderflow,
            });
        }

        let mut k = [k0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let mut failed = false;
        for i in 0..6 {
            let mut zi = z;
            for (j, kj) in k.iter().enumerate().take(i + 1) {
                zi += h * A[i][j] * kj;
            }
            let ci = A[i].iter().take(i + 1).sum::<f64>();
            let ki = f(s + ci * h, zi);
            if !ki.is_finite() {
                failed = true;
                break;
            }
            k[i + 1] = ki;
        }
        if failed {
            h *= 0.25;
            continue;
        }

        let mut z5 = z;
        let mut z4 = z;
        for i in 0..7 {
            z5 += h * B5[i] * k[i];
            z4 += h * B4[i] * k[i];
        }
        let sc = cfg.abs_tol + cfg.rel_tol * z.abs().max(z5.abs());
        let err = ((z5 - z4) / sc).abs();

        if err <= 1.0 && z5.is_finite() {
            s += h;
            z = z5;
            k0 = f(s, z);
            if !k0.is_finite() {
                return Ok(Trajectory {
                    nodes,
                    termination: Termination::StepUnderflow,
                });
            }
            nodes.push((s, z, k0));
            let grow = (0.9 * err.powf(-0.2)).min(5.0);
            h = (h * grow).clamp(-cfg.max_step, cfg.max_step);
            if h == 0.0 {
                h = dir * cfg.max_step;
            }
        } else {
            let shrink = (0.9 * err.powf(-0.2)).max(0.1);
            h *= shrink;
        }
    }

    Ok(Trajectory {
        nodes,
        termination: Termination::ReachedEnd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let t = solve_scalar_ivp(|_, z| -z, 0.0, 1.0, 2.0, &OdeConfig::default()).unwrap();
        assert_eq!(t.termination, Termination::ReachedEnd);
        for s in [0.3, 1.1, 1.9] {
            assert!((t.value(s).unwrap() - (-s).exp()).abs() < 1e-9);
        }
    }

    #[test]
    fn backward_integration() {
        // z' = z integrated from s=1 (z=e) back to 0 should give z(0)=1
        let t = solve_scalar_ivp(|_, z| z, 1.0, 1.0f64.exp(), 0.0, &OdeConfig::default()).unwrap();
        assert!((t.value(0.0).unwrap() - 1.0).abs() < 1e-9);
        assert!((t.value(0.5).unwrap() - 0.5f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn out_of_range_query_errors() {
        let t = solve_scalar_ivp(|_, z| -z, 0.0, 1.0, 1.0, &OdeConfig::default()).unwrap();
        assert!(t.value(1.5).is_err());
    }
}
