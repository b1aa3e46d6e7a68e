//! Independent reference computations for the integration tests. None of
//! these call into the library's numerical code.

#![allow(dead_code)]

/// `exp(-i theta J_y)` for spin 3/2, basis order `m = 3/2, 1/2, -1/2, -3/2`.
///
/// `-i J_y = (J_- - J_+) / 2` is real and antisymmetric, so the exponential
/// is a real orthogonal matrix, computed by scaling and squaring a Taylor
/// series.
pub fn expm_spin32_jy(theta: f64) -> [[f64; 4]; 4] {
    let j = 1.5f64;
    let ms = [1.5, 0.5, -0.5, -1.5];
    let mut jp = [[0.0; 4]; 4];
    for col in 1..4 {
        // J_+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>
        let m = ms[col];
        jp[col - 1][col] = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
    }
    let mut a = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            // J_- is the transpose of J_+.
            a[r][c] = theta * (jp[c][r] - jp[r][c]) / 2.0;
        }
    }
    let squarings = 10;
    let scale = 2f64.powi(-squarings);
    for row in a.iter_mut() {
        row.iter_mut().for_each(|x| *x *= scale);
    }
    let mut result = identity();
    let mut term = identity();
    for k in 1..30 {
        term = matmul(&term, &a);
        for row in term.iter_mut() {
            row.iter_mut().for_each(|x| *x /= k as f64);
        }
        for r in 0..4 {
            for c in 0..4 {
                result[r][c] += term[r][c];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

fn identity() -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    (0..4).for_each(|i| m[i][i] = 1.0);
    m
}

fn matmul(x: &[[f64; 4]; 4], y: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = (0..4).map(|k| x[r][k] * y[k][c]).sum();
        }
    }
    out
}

/// Probabilities of `m = 3/2 .. -3/2` for the rotated `m = +3/2` state.
pub fn spin32_oracle(theta: f64) -> [f64; 4] {
    let u = expm_spin32_jy(theta);
    [0, 1, 2, 3].map(|r| u[r][0] * u[r][0])
}

/// `|<u|v>|^2 / (|u|^2 |v|^2)` for real vectors.
pub fn born_weight(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum();
    let nv: f64 = v.iter().map(|a| a * a).sum();
    dot * dot / (nu * nv)
}

/// Expected QBER and eavesdropper agreement of BB84 with intercept-resend,
/// conditioned on sifting. `fixed = None` means Eve's basis is random.
pub fn bb84_intercept_oracle(fixed: Option<usize>) -> (f64, f64) {
    let bases: [[[f64; 2]; 2]; 2] = [[[1.0, 0.0], [0.0, 1.0]], [[1.0, 1.0], [1.0, -1.0]]];
    let eve_bases: Vec<(usize, f64)> = match fixed {
        Some(e) => vec![(e, 1.0)],
        None => vec![(0, 0.5), (1, 0.5)],
    };
    let (mut err, mut agree, mut total) = (0.0, 0.0, 0.0);
    for (a, basis) in bases.iter().enumerate() {
        for (s, sent) in basis.iter().enumerate() {
            for &(e, pe) in &eve_bases {
                for (o, eve_vec) in bases[e].iter().enumerate() {
                    let p_eve = born_weight(eve_vec, sent);
                    // Bob measures in Alice's basis (sifted rounds only).
                    for (r, bob_vec) in bases[a].iter().enumerate() {
                        let p = 0.25 * pe * p_eve * born_weight(bob_vec, eve_vec);
                        total += p;
                        if r != s {
                            err += p;
                        }
                        if o == s {
                            agree += p;
                        }
                    }
                }
            }
        }
    }
    (err / total, agree / total)
}

/// Sift rate and conditional mismatch rate of the Kochen-Specker protocol,
/// summed exhaustively over Alice's basis, sent atom, (Eve's basis and
/// outcome,) Bob's basis and outcome with Born weights from the rays.
///
/// Keep rule: same context, or Bob's outcome atom is the atom Alice sent.
pub fn ks_oracle(
    rays: &[Vec<i64>],
    contexts: &[Vec<usize>],
    family: &[usize],
    intercept_random: bool,
) -> (f64, f64) {
    let f = family.len() as f64;
    let unit = |a: usize| -> Vec<f64> { rays[a].iter().map(|&x| x as f64).collect() };
    // Distribution of the state reaching Bob given the sent atom, as
    // (probability, ray) pairs.
    let arriving = |sent: usize| -> Vec<(f64, Vec<f64>)> {
        if !intercept_random {
            return vec![(1.0, unit(sent))];
        }
        family
            .iter()
            .flat_map(|&e| contexts[e].iter().copied())
            .map(|atom| (born_weight(&unit(atom), &unit(sent)) / f, unit(atom)))
            .collect()
    };
    let (mut kept, mut mismatched) = (0.0, 0.0);
    for &ca in family {
        let arity = contexts[ca].len() as f64;
        for (pos_a, &sent) in contexts[ca].iter().enumerate() {
            let incoming = arriving(sent);
            for &cb in family {
                for (pos_b, &out) in contexts[cb].iter().enumerate() {
                    let p_out: f64 = incoming
                        .iter()
                        .map(|(p, v)| p * born_weight(&unit(out), v))
                        .sum();
                    let p = p_out / (f * arity * f);
                    if ca == cb {
                        kept += p;
                        if pos_a != pos_b {
                            mismatched += p;
                        }
                    } else if out == sent {
                        kept += p;
                    }
                }
            }
        }
    }
    (kept, mismatched / kept)
}

/// Counts two-valued states by trying every assignment.
pub fn brute_force_state_count(atoms: usize, contexts: &[Vec<usize>]) -> usize {
    (0u64..1 << atoms)
        .filter(|bits| {
            contexts
                .iter()
                .all(|c| c.iter().filter(|&&a| bits >> a & 1 == 1).count() == 1)
        })
        .count()
}

/// Reference numbering of the 14 two-valued states of fig3a by their
/// true atoms (one-based).
pub const FIG3A_STATES: [&[usize]; 14] = [
    &[1, 5],
    &[1, 6],
    &[2, 7],
    &[2, 5, 8],
    &[2, 5, 9],
    &[2, 6, 8],
    &[2, 6, 9],
    &[3, 7],
    &[3, 5, 8],
    &[3, 5, 9],
    &[3, 6, 8],
    &[3, 6, 9],
    &[4, 8],
    &[4, 9],
];

/// The three partitions of the 14 states, one per context.
pub const FIG3A_PARTITIONS: [&[&[usize]]; 3] = [
    &[&[1, 2], &[3, 4, 5, 6, 7], &[8, 9, 10, 11, 12], &[13, 14]],
    &[&[1, 4, 5, 9, 10], &[2, 6, 7, 11, 12], &[3, 8], &[13, 14]],
    &[&[1, 2], &[3, 8], &[4, 6, 9, 11, 13], &[5, 7, 10, 12, 14]],
];

pub const FIG3A_BALLS: [&str; 14] = [
    "000", "010", "121", "102", "103", "112", "113", "221", "202", "203", "212", "213", "332",
    "333",
];

/// The four two-valued states of the triangle, numbered as printed.
pub const TRIANGLE_STATES: [&[usize]; 4] = [&[1, 4], &[3, 6], &[2, 5], &[2, 4, 6]];

pub const TRIANGLE_PARTITIONS: [&[&[usize]]; 3] = [
    &[&[1], &[2], &[3, 4]],
    &[&[1, 4], &[2], &[3]],
    &[&[1], &[2, 4], &[3]],
];

pub const TRIANGLE_BALLS: [&str; 4] = ["012", "201", "120", "111"];

pub const FIG3B_BALLS: [&str; 5] = ["00", "11", "12", "21", "22"];
