//! Polar transform `x = F^{⊗n} B_n u` over GF(2).
//!
//! `F = [[1, 1], [0, 1]]` acts on column vectors, so for `n = 1` the codeword
//! is `(u0 ^ u1, u1)`. `B_n` is the bit-reversal permutation.

use crate::codebook::PolarCode;
use crate::error::{Error, Result};

/// Reverses the low `n` bits of `i`.
#[inline]
pub fn reverse_bits(i: usize, n: u32) -> usize {
    if n == 0 {
        0
    } else {
        i.reverse_bits() >> (usize::BITS - n)
    }
}

/// Returns `w` with `w[i] = v[reverse_n(i)]`.
pub fn bit_reverse_permutation<T: Copy>(n: u32, v: &[T]) -> Result<Vec<T>> {
    let len = 1usize << n;
    if v.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            actual: v.len(),
        });
    }
    Ok((0..len).map(|i| v[reverse_bits(i, n)]).collect())
}

/// In-place bit-reversal permutation; `v.len()` must be a power of two.
pub fn bit_reverse_in_place<T>(v: &mut [T]) {
    let len = v.len();
    debug_assert!(len.is_power_of_two());
    let n = len.trailing_zeros();
    for i in 0..len {
        let j = reverse_bits(i, n);
        if i < j {
            v.swap(i, j);
        }
    }
}

/// Applies `F^{⊗n}` in place with `n` butterfly passes.
pub fn kronecker_transform_in_place(v: &mut [u8]) {
    let len = v.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in v.chunks_exact_mut(2 * half) {
            let (upper, lower) = block.split_at_mut(half);
            for (a, b) in upper.iter_mut().zip(lower.iter()) {
                *a ^= *b;
            }
        }
        half *= 2;
    }
}

/// Computes `x = G_n u` for a full-length input vector `u`.
pub fn polar_transform(u: &[u8]) -> Result<Vec<u8>> {
    if !u.len().is_power_of_two() {
        return Err(Error::InvalidCode(format!(
            "transform length {} is not a power of two",
            u.len()
        )));
    }
    let mut x = u.to_vec();
    bit_reverse_in_place(&mut x);
    kronecker_transform_in_place(&mut x);
    Ok(x)
}

/// Places `info_bits` on the information set and frozen values elsewhere.
pub fn assemble_input(code: &PolarCode, info_bits: &[u8]) -> Result<Vec<u8>> {
    if info_bits.len() != code.k() {
        return Err(Error::LengthMismatch {
            expected: code.k(),
            actual: info_bits.len(),
        });
    }
    let mut u = code.frozen_vector();
    for (&pos, &bit) in code.info_set().iter().zip(info_bits) {
        u[pos] = bit & 1;
    }
    Ok(u)
}

/// Encodes `K` information bits into an `N`-bit codeword.
pub fn encode(code: &PolarCode, info_bits: &[u8]) -> Result<Vec<u8>> {
    let u = assemble_input(code, info_bits)?;
    polar_transform(&u)
}
