//! Numerical search for faithful real realizations.
//!
//! The search minimises
//!
//! ```text
//! sum over contexts, pairs i<j:   (u_i . u_j)^2
//!   + sum over all atom pairs:    max(0, |u_i . u_j| - cos(theta_min))^2
//! ```
//!
//! over unit vectors `u_i` by Riemannian gradient descent on the product of
//! spheres with Armijo backtracking, from independent random starts. A
//! failed search is not a proof of non-realizability.

use serde::Serialize;

use super::RealizationError;
use crate::logic::OrthoLogic;
use crate::{Execution, RandomSource};

/// Residual below which a configuration counts as orthogonal.
pub const FOUND_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub dim: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Smallest admissible angle between rays of distinct atoms, radians.
    pub min_angle: f64,
    pub max_iterations: usize,
    pub execution: Execution,
}

impl SearchConfig {
    pub fn new(dim: usize, restarts: usize, seed: u64) -> Self {
        SearchConfig {
            dim,
            restarts,
            seed,
            min_angle: 1f64.to_radians(),
            max_iterations: 4000,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizationResult {
    /// `residual < FOUND_RESIDUAL` and `min_pair_angle > min_angle`.
    pub found: bool,
    /// Largest `|u_i . u_j|` over pairs sharing a context.
    pub residual: f64,
    /// Smallest angle between the lines of distinct atoms, radians in
    /// `[0, pi/2]`.
    pub min_pair_angle: f64,
    pub penalty: f64,
    /// Restart that produced this result.
    pub restart: usize,
    /// One unit vector per atom.
    pub vectors: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Objective {
    context_pairs: Vec<(usize, usize)>,
    cos_min: f64,
}

impl Objective {
    fn new(logic: &OrthoLogic, min_angle: f64) -> Self {
        let mut context_pairs: Vec<(usize, usize)> = logic
            .contexts()
            .iter()
            .flat_map(|ctx| {
                ctx.iter()
                    .enumerate()
                    .flat_map(move |(k, &a)| ctx[k + 1..].iter().map(move |&b| (a.min(b), a.max(b))))
            })
            .collect();
        context_pairs.sort_unstable();
        context_pairs.dedup();
        Objective {
            context_pairs,
            cos_min: min_angle.cos(),
        }
    }

    fn value(&self, u: &[Vec<f64>]) -> f64 {
        let mut f: f64 = self
            .context_pairs
            .iter()
            .map(|&(i, j)| dot(&u[i], &u[j]).powi(2))
            .sum();
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                let h = dot(&u[i], &u[j]).abs() - self.cos_min;
                if h > 0.0 {
                    f += h * h;
                }
            }
        }
        f
    }

    /// Euclidean gradient projected onto the tangent spaces.
    fn gradient(&self, u: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let dim = u[0].len();
        let mut g = vec![vec![0.0; dim]; u.len()];
        let add = |g: &mut Vec<Vec<f64>>, i: usize, j: usize, w: f64| {
            for k in 0..dim {
                g[i][k] += w * u[j][k];
                g[j][k] += w * u[i][k];
            }
        };
        for &(i, j) in &self.context_pairs {
            add(&mut g, i, j, 2.0 * dot(&u[i], &u[j]));
        }
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                let c = dot(&u[i], &u[j]);
                let h = c.abs() - self.cos_min;
                if h > 0.0 {
                    add(&mut g, i, j, 2.0 * h * c.signum());
                }
            }
        }
        for (gi, ui) in g.iter_mut().zip(u) {
            let radial = dot(gi, ui);
            for (x, y) in gi.iter_mut().zip(ui) {
                *x -= radial * y;
            }
        }
        g
    }
}

fn normalize(v: &mut [f64]) {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// The search objective for explicit vectors (normalised internally).
pub fn penalty(logic: &OrthoLogic, vectors: &[Vec<f64>], min_angle: f64) -> f64 {
    let mut u = vectors.to_vec();
    u.iter_mut().for_each(|v| normalize(v));
    Objective::new(logic, min_angle).value(&u)
}

fn random_unit(dim: usize, rng: &mut RandomSource) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| 2.0 * rng.uniform() - 1.0).collect();
        let n2 = dot(&v, &v);
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn descend(obj: &Objective, mut u: Vec<Vec<f64>>, max_iterations: usize) -> (Vec<Vec<f64>>, f64) {
    let mut f = obj.value(&u);
    let mut step = 0.1;
    for _ in 0..max_iterations {
        if f < 1e-24 {
            break;
        }
        let g = obj.gradient(&u);
        let gnorm2: f64 = g.iter().map(|gi| dot(gi, gi)).sum();
        if gnorm2 < 1e-30 {
            break;
        }
        let mut accepted = false;
        while step > 1e-12 {
            let trial: Vec<Vec<f64>> = u
                .iter()
                .zip(&g)
                .map(|(ui, gi)| {
                    let mut v: Vec<f64> = ui.iter().zip(gi).map(|(a, b)| a - step * b).collect();
                    normalize(&mut v);
                    v
                })
                .collect();
            let ft = obj.value(&trial);
            if ft <= f - 1e-4 * step * gnorm2 {
                u = trial;
                f = ft;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (u, f)
}

fn summarize(obj: &Objective, u: Vec<Vec<f64>>, f: f64, restart: usize, min_angle: f64) -> RealizationResult {
    let residual = obj
        .context_pairs
        .iter()
        .map(|&(i, j)| dot(&u[i], &u[j]).abs())
        .fold(0.0, f64::max);
    let mut min_pair_angle = std::f64::consts::FRAC_PI_2;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let angle = dot(&u[i], &u[j]).abs().min(1.0).acos();
            min_pair_angle = min_pair_angle.min(angle);
        }
    }
    RealizationResult {
        found: residual < FOUND_RESIDUAL && min_pair_angle > min_angle,
        residual,
        min_pair_angle,
        penalty: f,
        restart,
        vectors: u,
    }
}

/// Runs `config.restarts` seeded local descents and returns the best one
/// (lowest penalty, ties to the lowest restart index).
pub fn search_realization(
    logic: &OrthoLogic,
    config: &SearchConfig,
) -> Result<RealizationResult, RealizationError> {
    let arity = logic.max_arity();
    if config.dim < arity {
        return Err(RealizationError::DimensionTooSmall {
            dim: config.dim,
            arity,
        });
    }
    let obj = Objective::new(logic, config.min_angle);
    let root = RandomSource::new(config.seed);
    let restarts = config.restarts.max(1);
    let results = config.execution.map_indices(restarts, |r| {
        let mut rng = root.split(r as u64);
        let start = (0..logic.atom_count())
            .map(|_| random_unit(config.dim, &mut rng))
            .collect();
        let (u, f) = descend(&obj, start, config.max_iterations);
        summarize(&obj, u, f, r, config.min_angle)
    });
    Ok(results
        .into_iter()
        .reduce(|best, r| if r.penalty < best.penalty { r } else { best })
        .expect("at least one restart"))
}
