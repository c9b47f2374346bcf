//! Slow reference models built straight from the definitions: dense GF(2)
//! matrices, exhaustive enumeration and polynomial long division. Nothing
//! here shares code with the decoder crate.

/// Dense matrix over GF(2), `m[row][col]`.
pub type Matrix = Vec<Vec<u8>>;

pub fn reverse_bits(i: usize, n: u32) -> usize {
    let mut out = 0;
    for b in 0..n {
        out |= ((i >> b) & 1) << (n - 1 - b);
    }
    out
}

pub fn identity(size: usize) -> Matrix {
    (0..size).map(|r| (0..size).map(|c| u8::from(r == c)).collect()).collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![0u8; ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] & b[k][l];
                }
            }
        }
    }
    out
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    (0..a.len())
        .map(|r| {
            (0..b[0].len())
                .map(|c| (0..inner).fold(0u8, |acc, k| acc ^ (a[r][k] & b[k][c])))
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[u8]) -> Vec<u8> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0u8, |acc, (&g, &x)| acc ^ (g & x)))
        .collect()
}

/// `B_n` with `(B u)_v = u_{rev(v)}`.
pub fn bit_reversal_matrix(n: u32) -> Matrix {
    let size = 1usize << n;
    (0..size)
        .map(|r| (0..size).map(|c| u8::from(c == reverse_bits(r, n))).collect())
        .collect()
}

/// `G_n = F^{(x)n} B_n` with `F = [[1, 1], [0, 1]]`; codewords are `x = G_n u`.
pub fn generator_matrix(n: u32) -> Matrix {
    let f: Matrix = vec![vec![1, 1], vec![0, 1]];
    let mut k = identity(1);
    for _ in 0..n {
        k = kron(&k, &f);
    }
    mat_mul(&k, &bit_reversal_matrix(n))
}

pub fn dense_encode(n: u32, u: &[u8]) -> Vec<u8> {
    mat_vec(&generator_matrix(n), u)
}

/// `ln(1 + e^x)` without overflow.
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// Reference `f-`: `ln((e^{a+b} + 1) / (e^a + e^b))` evaluated in the log domain.
pub fn f_minus_reference(a: f64, b: f64) -> f64 {
    log_sum_exp(&[a + b, 0.0]) - log_sum_exp(&[a, b])
}

/// `ln Pr(X = x | y)` for a uniform input bit whose channel LLR is `llr`.
pub fn bit_log_posterior(llr: f64, x: u8) -> f64 {
    let s = if x == 0 { 1.0 } else { -1.0 };
    -softplus(-s * llr)
}

pub fn codeword_log_posterior(llrs: &[f64], x: &[u8]) -> f64 {
    llrs.iter().zip(x).map(|(&l, &b)| bit_log_posterior(l, b)).sum()
}

/// `-ln Pr(U_0..U_i = prefix | y)` for `U` uniform on `{0,1}^N`, summing
/// over every completion of the prefix.
pub fn prefix_metric(g: &Matrix, llrs: &[f64], prefix: &[u8]) -> f64 {
    let size = llrs.len();
    let free = size - prefix.len();
    let mut u = prefix.to_vec();
    u.resize(size, 0);
    let terms: Vec<f64> = (0..1usize << free)
        .map(|tail| {
            for b in 0..free {
                u[prefix.len() + b] = ((tail >> b) & 1) as u8;
            }
            codeword_log_posterior(llrs, &mat_vec(g, &u))
        })
        .collect();
    -log_sum_exp(&terms)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlResult {
    /// Bits at the information positions, in index order.
    pub info_bits: Vec<u8>,
    pub log_posterior: f64,
    /// The best codeword beats the runner-up by more than rounding.
    pub unique: bool,
}

/// Exhaustive maximum-likelihood decoding. `frozen_u` supplies the values
/// at frozen positions; information positions are enumerated.
pub fn ml_decode(g: &Matrix, llrs: &[f64], info_set: &[usize], frozen_u: &[u8]) -> MlResult {
    let k = info_set.len();
    let mut u = frozen_u.to_vec();
    let (mut best, mut second, mut arg) = (f64::NEG_INFINITY, f64::NEG_INFINITY, 0usize);
    for word in 0..1usize << k {
        for (b, &pos) in info_set.iter().enumerate() {
            u[pos] = ((word >> b) & 1) as u8;
        }
        let lp = codeword_log_posterior(llrs, &mat_vec(g, &u));
        if lp > best {
            second = best;
            best = lp;
            arg = word;
        } else if lp > second {
            second = lp;
        }
    }
    MlResult {
        info_bits: (0..k).map(|b| ((arg >> b) & 1) as u8).collect(),
        log_posterior: best,
        unique: best - second > 1e-9 * best.abs().max(1.0),
    }
}

/// Indices of the `l` smallest entries in ascending order; ties keep index order.
pub fn smallest_indices<T: PartialOrd>(v: &[T], l: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).expect("comparable"));
    idx.truncate(l);
    idx
}

/// Generator polynomials, highest degree first.
pub const CRC4_POLY: &[u8] = &[1, 0, 0, 1, 1];
pub const CRC8_POLY: &[u8] = &[1, 1, 1, 0, 1, 0, 1, 0, 1];
pub const CRC16_POLY: &[u8] = &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1];

/// Remainder of `m(x) x^r` modulo `g(x)` by long division; `message` and
/// the result are highest degree first.
pub fn poly_remainder(message: &[u8], generator: &[u8]) -> Vec<u8> {
    let r = generator.len() - 1;
    let mut work = message.to_vec();
    work.resize(message.len() + r, 0);
    for i in 0..message.len() {
        if work[i] == 1 {
            for (j, &g) in generator.iter().enumerate() {
                work[i + j] ^= g;
            }
        }
    }
    work.split_off(message.len())
}
