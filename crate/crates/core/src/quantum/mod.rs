//! A small finite-dimensional quantum simulator: pure states, projective
//! measurements in orthonormal bases, the two-qubit singlet and spin-3/2
//! rotations.

mod rng;

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use thiserror::Error;

pub use rng::RandomSource;

use crate::realization::Ray;

/// Tolerance for normalization and orthogonality of states and bases.
pub const STATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantumError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state has squared norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("basis vectors {first} and {second} are not orthogonal (|<a|b>| = {overlap})")]
    NotOrthogonal {
        first: usize,
        second: usize,
        overlap: f64,
    },
    #[error("a basis of a {dim}-dimensional space needs {dim} vectors, found {found}")]
    BasisSize { dim: usize, found: usize },
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Accepts amplitudes whose squared norm is 1 within [`STATE_TOLERANCE`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, QuantumError> {
        let norm2 = norm_squared(&amplitudes);
        if (norm2 - 1.0).abs() > STATE_TOLERANCE {
            return Err(QuantumError::NotNormalized(norm2));
        }
        Ok(PureState { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self, QuantumError> {
        let norm = norm_squared(&amplitudes).sqrt();
        if norm == 0.0 {
            return Err(QuantumError::ZeroVector);
        }
        Ok(PureState {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn from_real(components: &[f64]) -> Result<Self, QuantumError> {
        PureState::normalized(components.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn from_ray(ray: &Ray) -> Self {
        PureState::from_real(&ray.to_unit()).expect("rays are nonzero")
    }

    /// The computational basis vector `|k>` of a `dim`-dimensional space.
    pub fn basis_vector(dim: usize, k: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        PureState { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        PureState { amplitudes }
    }
}

fn norm_squared(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum()
}

/// An orthonormal basis; outcome `k` corresponds to vector `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: Vec<PureState>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<PureState>) -> Result<Self, QuantumError> {
        let dim = vectors.first().map_or(0, PureState::dim);
        if vectors.len() != dim || dim == 0 {
            return Err(QuantumError::BasisSize {
                dim,
                found: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(QuantumError::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        for i in 0..dim {
            for j in i + 1..dim {
                let overlap = vectors[i].inner(&vectors[j]).norm();
                if overlap > STATE_TOLERANCE {
                    return Err(QuantumError::NotOrthogonal {
                        first: i,
                        second: j,
                        overlap,
                    });
                }
            }
        }
        Ok(MeasurementBasis { vectors })
    }

    /// The basis spanned by mutually orthogonal integer rays.
    pub fn from_rays(rays: &[Ray]) -> Result<Self, QuantumError> {
        MeasurementBasis::new(rays.iter().map(PureState::from_ray).collect())
    }

    pub fn computational(dim: usize) -> Self {
        MeasurementBasis {
            vectors: (0..dim).map(|k| PureState::basis_vector(dim, k)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, k: usize) -> &PureState {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[PureState] {
        &self.vectors
    }
}

/// Born-rule outcome probabilities `|<b_k|psi>|^2`.
pub fn born_probabilities(
    state: &PureState,
    basis: &MeasurementBasis,
) -> Result<Vec<f64>, QuantumError> {
    if state.dim() != basis.dim() {
        return Err(QuantumError::DimensionMismatch {
            expected: basis.dim(),
            found: state.dim(),
        });
    }
    Ok(basis
        .vectors
        .iter()
        .map(|b| b.inner(state).norm_sqr())
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub outcome: usize,
    /// The basis vector of the outcome.
    pub post_state: PureState,
}

/// Projective measurement: samples an outcome from the Born probabilities
/// and collapses onto the corresponding basis vector.
pub fn measure(
    state: &PureState,
    basis: &MeasurementBasis,
    rng: &mut RandomSource,
) -> Result<Measurement, QuantumError> {
    let probs = born_probabilities(state, basis)?;
    let outcome = rng.categorical(&probs);
    Ok(Measurement {
        outcome,
        post_state: basis.vectors[outcome].clone(),
    })
}

/// Spin-1/2 eigenbasis along the direction at `angle` in the x-z plane:
/// vector 0 is the +1 outcome, vector 1 the -1 outcome.
pub fn spin_half_basis(angle: f64) -> MeasurementBasis {
    let (s, c) = (angle / 2.0).sin_cos();
    MeasurementBasis {
        vectors: vec![
            PureState::from_real(&[c, s]).expect("unit vector"),
            PureState::from_real(&[-s, c]).expect("unit vector"),
        ],
    }
}

/// The two-qubit singlet `(|01> - |10>)/sqrt 2`.
pub fn singlet() -> PureState {
    PureState::from_real(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0]).expect("unit vector")
}

/// Correlation of the singlet for coplanar spin measurements at the given
/// angles: `-cos(angle_a - angle_b)`.
pub fn singlet_correlation(angle_a: f64, angle_b: f64) -> f64 {
    -(angle_a - angle_b).cos()
}

/// Samples one singlet pair measured at `angle_a` (first particle) and
/// `angle_b` (second), returning the two `±1` outcomes.
pub fn sample_singlet_pair(angle_a: f64, angle_b: f64, rng: &mut RandomSource) -> (i8, i8) {
    let (ba, bb) = (spin_half_basis(angle_a), spin_half_basis(angle_b));
    let product = MeasurementBasis {
        vectors: ba
            .vectors
            .iter()
            .flat_map(|a| bb.vectors.iter().map(move |b| a.tensor(b)))
            .collect(),
    };
    let probs = born_probabilities(&singlet(), &product).expect("both are 4-dimensional");
    let k = rng.categorical(&probs);
    let sign = |bit: usize| if bit == 0 { 1 } else { -1 };
    (sign(k / 2), sign(k % 2))
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Wigner small-d matrix `d^j_{m'm}(theta)` of a rotation about the y axis,
/// for spin `j = two_j / 2`. Rows and columns run over `m = j, j-1, .., -j`.
pub fn wigner_small_d(two_j: u32, theta: f64) -> Vec<Vec<f64>> {
    let n = two_j as usize + 1;
    let tj = two_j as i64;
    let (s, c) = (theta / 2.0).sin_cos();
    // Work with doubled magnetic numbers; j+m etc. are then (tj + tm) / 2.
    let half = |x: i64| x / 2;
    let mut d = vec![vec![0.0; n]; n];
    for (row, d_row) in d.iter_mut().enumerate() {
        let tmp = tj - 2 * row as i64; // 2m'
        for (col, entry) in d_row.iter_mut().enumerate() {
            let tm = tj - 2 * col as i64; // 2m
            let (jpm, jmm) = (half(tj + tm), half(tj - tm));
            let (jpmp, jmmp) = (half(tj + tmp), half(tj - tmp));
            let prefactor = (factorial(jpm) * factorial(jmm) * factorial(jpmp) * factorial(jmmp)).sqrt();
            let mut sum = 0.0;
            let shift = half(tmp - tm); // m' - m
            for k in 0..=tj {
                let a = jpm - k;
                let b = jmmp - k;
                let e = k + shift;
                if a < 0 || b < 0 || e < 0 {
                    continue;
                }
                let sign = if e % 2 == 0 { 1.0 } else { -1.0 };
                let denom = factorial(a) * factorial(k) * factorial(b) * factorial(e);
                let cos_pow = (tj - 2 * k - shift) as i32;
                let sin_pow = (2 * k + shift) as i32;
                sum += sign * c.powi(cos_pow) * s.powi(sin_pow) / denom;
            }
            *entry = prefactor * sum;
        }
    }
    d
}

/// Eigenbasis of the spin-3/2 component along an axis tilted by `theta`
/// from the quantization axis, outcomes ordered `m = +3/2, +1/2, -1/2, -3/2`.
pub fn spin32_basis(theta: f64) -> MeasurementBasis {
    let d = wigner_small_d(3, theta);
    let vectors = (0..4)
        .map(|col| {
            let column: Vec<f64> = (0..4).map(|row| d[row][col]).collect();
            PureState::from_real(&column).expect("rotation columns are unit vectors")
        })
        .collect();
    MeasurementBasis { vectors }
}

/// Outcome probabilities for `m = +3/2, +1/2, -1/2, -3/2` when the `+3/2`
/// eigenstate is measured along an axis tilted by `theta`.
pub fn spin32_rotation_probs(theta: f64) -> [f64; 4] {
    let probs = born_probabilities(&PureState::basis_vector(4, 0), &spin32_basis(theta))
        .expect("both are 4-dimensional");
    [probs[0], probs[1], probs[2], probs[3]]
}
