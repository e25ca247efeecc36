//! Nelder-Mead simplex search in two dimensions.

use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub struct NelderMead {
    /// Stop once every vertex lies within this distance (per coordinate) of the best.
    pub xatol: f64,
    /// ...and every vertex value lies within this of the best value.
    pub fatol: f64,
    pub max_iterations: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self { xatol: 1e-7, fatol: 1e-13, max_iterations: 4000 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Minimum {
    pub x: [f64; 2],
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    // a + t (b - a)
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

impl NelderMead {
    /// Minimizes `f` from `x0`, with the initial simplex spanned by `step` along each axis.
    pub fn minimize<F>(&self, mut f: F, x0: [f64; 2], step: [f64; 2]) -> Result<Minimum>
    where
        F: FnMut([f64; 2]) -> Result<f64>,
    {
        let mut evaluations = 0;
        let mut eval = |x: [f64; 2]| -> Result<f64> {
            evaluations += 1;
            f(x)
        };
        let mut simplex = [x0, [x0[0] + step[0], x0[1]], [x0[0], x0[1] + step[1]]];
        let mut values = [eval(simplex[0])?, eval(simplex[1])?, eval(simplex[2])?];
        let mut converged = false;

        for _ in 0..self.max_iterations {
            // order best..worst; stable so ties keep earlier vertices first
            let mut order = [0, 1, 2];
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.map(|i| simplex[i]);
            values = order.map(|i| values[i]);

            let spread_x = simplex[1..].iter().fold(0.0f64, |m, v| {
                m.max((v[0] - simplex[0][0]).abs()).max((v[1] - simplex[0][1]).abs())
            });
            let spread_f = (values[2] - values[0]).abs().max((values[1] - values[0]).abs());
            if spread_x <= self.xatol && spread_f <= self.fatol {
                converged = true;
                break;
            }

            let centroid = lerp(simplex[0], simplex[1], 0.5);
            let reflected = lerp(centroid, simplex[2], -REFLECT);
            let fr = eval(reflected)?;
            if fr < values[0] {
                let expanded = lerp(centroid, simplex[2], -EXPAND);
                let fe = eval(expanded)?;
                if fe < fr {
                    simplex[2] = expanded;
                    values[2] = fe;
                } else {
                    simplex[2] = reflected;
                    values[2] = fr;
                }
                continue;
            }
            if fr < values[1] {
                simplex[2] = reflected;
                values[2] = fr;
                continue;
            }
            let (contracted, fc) = if fr < values[2] {
                let c = lerp(centroid, reflected, CONTRACT);
                (c, eval(c)?)
            } else {
                let c = lerp(centroid, simplex[2], CONTRACT);
                (c, eval(c)?)
            };
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
                continue;
            }
            for i in 1..3 {
                simplex[i] = lerp(simplex[0], simplex[i], SHRINK);
                values[i] = eval(simplex[i])?;
            }
        }

        let best = (0..3).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
        Ok(Minimum { x: simplex[best], value: values[best], evaluations, converged })
    }
}
