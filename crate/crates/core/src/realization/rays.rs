use std::fmt;

use serde::{Deserialize, Serialize};

use super::RealizationError;
use crate::logic::OrthoLogic;

/// A ray through the origin given by exact integer components. Rays are
/// projective: nonzero multiples describe the same ray.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Ray(Vec<i64>);

impl TryFrom<Vec<i64>> for Ray {
    type Error = RealizationError;

    fn try_from(components: Vec<i64>) -> Result<Self, Self::Error> {
        Ray::new(components)
    }
}

impl From<Ray> for Vec<i64> {
    fn from(r: Ray) -> Self {
        r.0
    }
}

/// Component magnitudes are capped so that exact products fit in `i128`.
const MAX_COMPONENT: i64 = 1 << 30;

impl Ray {
    pub fn new(components: Vec<i64>) -> Result<Self, RealizationError> {
        if components.len() < 2 {
            return Err(RealizationError::RayDimension(components.len()));
        }
        if components.iter().all(|&c| c == 0) {
            return Err(RealizationError::ZeroRay);
        }
        if components.iter().any(|c| c.abs() > MAX_COMPONENT) {
            return Err(RealizationError::ComponentTooLarge);
        }
        Ok(Ray(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn dot(&self, other: &Ray) -> i128 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    pub fn norm_squared(&self) -> i128 {
        self.dot(self)
    }

    pub fn is_orthogonal(&self, other: &Ray) -> bool {
        self.dot(other) == 0
    }

    /// Exact test for spanning the same line (Cauchy-Schwarz equality).
    pub fn is_parallel(&self, other: &Ray) -> bool {
        let d = self.dot(other);
        // Overflowing products fall back to comparing reduced representatives.
        match (d.checked_mul(d), self.norm_squared().checked_mul(other.norm_squared())) {
            (Some(lhs), Some(rhs)) => lhs == rhs,
            _ => self.sign_normalized().reduced() == other.sign_normalized().reduced(),
        }
    }

    /// The representative whose first nonzero component is positive.
    pub fn sign_normalized(&self) -> Ray {
        let first = self.0.iter().find(|&&c| c != 0).copied().unwrap_or(1);
        if first < 0 {
            Ray(self.0.iter().map(|c| -c).collect())
        } else {
            self.clone()
        }
    }

    fn reduced(&self) -> Vec<i64> {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let g = self.0.iter().fold(0, |acc, &c| gcd(acc, c)).max(1);
        self.0.iter().map(|c| c / g).collect()
    }

    /// Unit vector along the ray.
    pub fn to_unit(&self) -> Vec<f64> {
        let n = (self.norm_squared() as f64).sqrt();
        self.0.iter().map(|&c| c as f64 / n).collect()
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses a list of integer tuples, e.g. `[[1,0,0],[0,1,1]]`.
pub fn rays_from_components(components: &[Vec<i64>]) -> Result<Vec<Ray>, RealizationError> {
    components.iter().cloned().map(Ray::new).collect()
}

fn check_dims(rays: &[Ray]) -> Result<usize, RealizationError> {
    let dim = rays.first().map_or(0, Ray::dim);
    if let Some(i) = rays.iter().position(|r| r.dim() != dim) {
        return Err(RealizationError::MixedDimensions {
            index: i,
            expected: dim,
            found: rays[i].dim(),
        });
    }
    Ok(dim)
}

/// Derives the contexts of a ray set: every maximal family of mutually
/// orthogonal rays that has exactly `arity` members. Contexts are returned
/// with sorted atom ids, in lexicographic order.
pub fn contexts_from_rays(rays: &[Ray], arity: usize) -> Result<OrthoLogic, RealizationError> {
    let dim = check_dims(rays)?;
    if arity < 2 || arity > dim {
        return Err(RealizationError::BadArity { arity, dim });
    }
    let n = rays.len();
    for i in 0..n {
        for j in i + 1..n {
            if rays[i].is_parallel(&rays[j]) {
                return Err(RealizationError::ParallelRays { first: i, second: j });
            }
        }
    }
    let adjacency: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && rays[i].is_orthogonal(&rays[j])).collect())
        .collect();
    let mut cliques = Vec::new();
    bron_kerbosch(
        &adjacency,
        &mut Vec::new(),
        (0..n).collect(),
        Vec::new(),
        &mut cliques,
    );
    let mut contexts: Vec<Vec<usize>> = cliques.into_iter().filter(|c| c.len() == arity).collect();
    for c in &mut contexts {
        c.sort_unstable();
    }
    contexts.sort();
    OrthoLogic::new(n, contexts).map_err(RealizationError::Logic)
}

/// Maximal cliques with Tomita pivoting.
fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
        .expect("p is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in candidates {
        r.push(v);
        let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Outcome of [`check_realization`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub ok: bool,
    /// `(context, atom, atom)` pairs that should be orthogonal but are not.
    pub non_orthogonal: Vec<(usize, usize, usize)>,
    /// Pairs of distinct atoms carried by (nearly) the same ray.
    pub parallel: Vec<(usize, usize)>,
}

/// Checks that `rays` realize `logic` faithfully: rays in a common context
/// are orthogonal and rays of distinct atoms are not parallel.
///
/// `tol` is an angle in radians. With `tol == 0` the check is exact integer
/// arithmetic; otherwise orthogonality allows `|angle - 90°| <= tol` and
/// parallelism is declared for angles `<= tol`.
pub fn check_realization(
    logic: &OrthoLogic,
    rays: &[Ray],
    tol: f64,
) -> Result<RealizationReport, RealizationError> {
    if rays.len() != logic.atom_count() {
        return Err(RealizationError::RayCount {
            expected: logic.atom_count(),
            found: rays.len(),
        });
    }
    check_dims(rays)?;
    let units: Vec<Vec<f64>> = rays.iter().map(Ray::to_unit).collect();
    let abs_cos = |i: usize, j: usize| -> f64 {
        units[i]
            .iter()
            .zip(&units[j])
            .map(|(a, b)| a * b)
            .sum::<f64>()
            .abs()
    };
    let orthogonal = |i: usize, j: usize| {
        if tol == 0.0 {
            rays[i].is_orthogonal(&rays[j])
        } else {
            abs_cos(i, j) <= tol.sin()
        }
    };
    let parallel = |i: usize, j: usize| {
        if tol == 0.0 {
            rays[i].is_parallel(&rays[j])
        } else {
            abs_cos(i, j) >= tol.cos()
        }
    };

    let mut non_orthogonal = Vec::new();
    for (ci, ctx) in logic.contexts().iter().enumerate() {
        for (k, &a) in ctx.iter().enumerate() {
            for &b in &ctx[k + 1..] {
                if !orthogonal(a, b) {
                    non_orthogonal.push((ci, a, b));
                }
            }
        }
    }
    let n = rays.len();
    let mut par = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if parallel(i, j) {
                par.push((i, j));
            }
        }
    }
    Ok(RealizationReport {
        ok: non_orthogonal.is_empty() && par.is_empty(),
        non_orthogonal,
        parallel: par,
    })
}
