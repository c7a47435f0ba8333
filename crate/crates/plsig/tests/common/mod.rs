//! Independent numeric oracles and random generators shared by the
//! integration suites. Everything here deliberately avoids the exact
//! algebraic code paths it is used to check.

use num::ToPrimitive;
use plsig::linalg::RatVec;
use plsig::plpath::PlWord;
use plsig::rat::rat_int;
use plsig::tensor::TruncatedTensor;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Dense truncated tensor over f64, indexed by words of length ≤ level.
pub struct F64Tensor {
    pub dim: usize,
    pub level: usize,
    pub coeffs: Vec<f64>,
}

impl F64Tensor {
    pub fn one(dim: usize, level: usize) -> Self {
        let mut t = F64Tensor {
            dim,
            level,
            coeffs: vec![0.0; word_count(dim, level)],
        };
        t.coeffs[0] = 1.0;
        t
    }

    fn index(&self, word: &[usize]) -> usize {
        // offset of length block + mixed-radix rank
        let mut offset = 0;
        let mut block = 1;
        for _ in 0..word.len() {
            offset += block;
            block *= self.dim;
        }
        let mut rank = 0;
        for &l in word {
            rank = rank * self.dim + l;
        }
        offset + rank
    }

    /// `self ⊗ v` truncated: the right-hand side of the signature ODE.
    fn derivative(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.coeffs.len()];
        let mut words = vec![Vec::new()];
        for len in 0..self.level {
            let mut next = Vec::new();
            for w in &words {
                let base = self.coeffs[self.index(w)];
                if base != 0.0 {
                    for (i, vi) in v.iter().enumerate() {
                        let mut w2 = w.clone();
                        w2.push(i);
                        out[self.index(&w2)] += base * vi;
                        next.push(w2);
                    }
                } else {
                    for i in 0..self.dim {
                        let mut w2 = w.clone();
                        w2.push(i);
                        next.push(w2);
                    }
                }
            }
            let _ = len;
            words = next;
        }
        out
    }
}

fn word_count(dim: usize, level: usize) -> usize {
    let mut total = 0;
    let mut block = 1;
    for _ in 0..=level {
        total += block;
        block *= dim;
    }
    total
}

/// RK4 integration of the truncated signature ODE `S' = S ⊗ x'(t)` along a
/// piecewise linear path, one unit of time per letter.
pub fn rk4_path_signature(w: &PlWord, level: usize, step: f64) -> F64Tensor {
    let dim = w.dim();
    let mut state = F64Tensor::one(dim, level);
    for letter in w.letters() {
        let v: Vec<f64> = letter.iter().map(|c| c.to_f64().unwrap()).collect();
        let steps = (1.0 / step).round() as usize;
        let h = 1.0 / steps as f64;
        for _ in 0..steps {
            let k1 = state.derivative(&v);
            let s2: Vec<f64> = state
                .coeffs
                .iter()
                .zip(&k1)
                .map(|(s, k)| s + 0.5 * h * k)
                .collect();
            let k2 = F64Tensor {
                dim,
                level,
                coeffs: s2,
            }
            .derivative(&v);
            let s3: Vec<f64> = state
                .coeffs
                .iter()
                .zip(&k2)
                .map(|(s, k)| s + 0.5 * h * k)
                .collect();
            let k3 = F64Tensor {
                dim,
                level,
                coeffs: s3,
            }
            .derivative(&v);
            let s4: Vec<f64> = state
                .coeffs
                .iter()
                .zip(&k3)
                .map(|(s, k)| s + h * k)
                .collect();
            let k4 = F64Tensor {
                dim,
                level,
                coeffs: s4,
            }
            .derivative(&v);
            for (i, s) in state.coeffs.iter_mut().enumerate() {
                *s += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
    }
    state
}

/// Maximum absolute deviation between an exact tensor and an f64 tensor.
pub fn max_deviation(exact: &TruncatedTensor, numeric: &F64Tensor) -> f64 {
    let mut max = 0.0f64;
    // walk every word of the dense tensor
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..=numeric.level {
        for w in &words {
            let wu8: Vec<u8> = w.iter().map(|&i| i as u8).collect();
            let e = exact.coeff(&wu8).to_f64().unwrap();
            let n = numeric.coeffs[numeric.index(w)];
            max = max.max((e - n).abs());
        }
        let mut next = Vec::new();
        for w in &words {
            for i in 0..numeric.dim {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        words = next;
        if words.first().map(Vec::len).unwrap_or(0) > numeric.level {
            break;
        }
    }
    max
}

/// Numeric `∫_t z^α dz_i ∧ dz_j` by uniform subdivision and the centroid
/// rule (exact for affine integrands per cell up to roundoff; higher degrees
/// converge with the subdivision).
pub fn quadrature_triangle_integral(
    t: &plsig::geom::Triangle,
    alpha: &[u32],
    i: usize,
    j: usize,
    depth: u32,
) -> f64 {
    let p0: Vec<f64> = t.p0.iter().map(|c| c.to_f64().unwrap()).collect();
    let p1: Vec<f64> = t.p1.iter().map(|c| c.to_f64().unwrap()).collect();
    let p2: Vec<f64> = t.p2.iter().map(|c| c.to_f64().unwrap()).collect();
    let e1: Vec<f64> = p1.iter().zip(&p0).map(|(a, b)| a - b).collect();
    let e2: Vec<f64> = p2.iter().zip(&p0).map(|(a, b)| a - b).collect();
    let jac = e1[i] * e2[j] - e1[j] * e2[i];
    if jac == 0.0 {
        return 0.0;
    }
    // integrate Π z_k^{α_k} over the standard simplex by subdivision
    let n = 1usize << depth; // n² cells of two orientations
    let h = 1.0 / n as f64;
    let mut acc = 0.0;
    let eval = |s: f64, u: f64| -> f64 {
        let mut prod = 1.0;
        for (k, &a) in alpha.iter().enumerate() {
            if a > 0 {
                let z = p0[k] + s * e1[k] + u * e2[k];
                prod *= z.powi(a as i32);
            }
        }
        prod
    };
    for a in 0..n {
        for b in 0..(n - a) {
            let (s0, u0) = (a as f64 * h, b as f64 * h);
            // lower cell centroid
            acc += eval(s0 + h / 3.0, u0 + h / 3.0) * h * h / 2.0;
            // upper cell, when inside the simplex
            if a + b < n - 1 {
                acc += eval(s0 + 2.0 * h / 3.0, u0 + 2.0 * h / 3.0) * h * h / 2.0;
            }
        }
    }
    acc * jac
}

pub fn random_rat_vec(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> RatVec {
    RatVec((0..dim).map(|_| rat_int(rng.gen_range(-bound..=bound))).collect())
}

pub fn random_word(rng: &mut ChaCha8Rng, dim: usize, max_len: usize, bound: i64) -> PlWord {
    let len = rng.gen_range(0..=max_len);
    PlWord::new(
        dim,
        (0..len).map(|_| random_rat_vec(rng, dim, bound)).collect(),
    )
    .expect("consistent dims")
}

pub fn random_kite_word(rng: &mut ChaCha8Rng, dim: usize, max_kites: usize) -> plsig::KiteWord {
    use plsig::plpath::triangle_loop;
    let n = rng.gen_range(0..=max_kites);
    let mut kites = Vec::new();
    while kites.len() < n {
        let a = random_rat_vec(rng, dim, 2);
        let b = random_rat_vec(rng, dim, 2);
        let lw = triangle_loop(&a, &b);
        if lw.reduce().is_empty() || !lw.is_planar_loop() {
            continue;
        }
        let tail_len = rng.gen_range(0..=2);
        let tail = PlWord::new(
            dim,
            (0..tail_len).map(|_| random_rat_vec(rng, dim, 2)).collect(),
        )
        .expect("dims");
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        kites.push(plsig::Kite::signed(tail, lw, sign).expect("valid kite"));
    }
    plsig::KiteWord::new(dim, kites).expect("dims")
}
