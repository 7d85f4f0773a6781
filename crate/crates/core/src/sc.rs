//! Bit-serial successive-cancellation decoding.
//!
//! The decoder walks the natural-order butterfly depth first. A block of
//! length `2^t` with input LLRs `L` is split into two halves: the first half
//! sees `f(L[j], L[j + h])`, the second half sees `g(L[j], L[j + h], a[j])`
//! where `a` is the re-encoded first half.

use crate::code::CodeSpec;
use crate::error::{Error, Result};

/// Sign with `sign(0) = +1`.
#[inline]
pub fn sign(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Min-sum check-node update: `sign(a) sign(b) min(|a|, |b|)`.
#[inline]
pub fn f_node(a: f64, b: f64) -> f64 {
    sign(a) * sign(b) * a.abs().min(b.abs())
}

/// Variable-node update with partial sum: `a (-1)^u_sum + b`.
#[inline]
pub fn g_node(a: f64, b: f64, u_sum: u8) -> f64 {
    let a = if u_sum & 1 == 0 { a } else { -a };
    a + b
}

/// Frozen positions decide 0; otherwise 0 for `llr >= 0`, 1 for `llr < 0`.
#[inline]
pub fn hard_decision(llr: f64, index: usize, spec: &CodeSpec) -> u8 {
    if spec.is_frozen(index) {
        0
    } else {
        u8::from(llr < 0.0)
    }
}

/// The two node computations an SC pass needs. Implementations may route
/// them through different datapaths or count activations.
pub trait ScKernel {
    fn f(&mut self, a: f64, b: f64) -> f64;
    fn g(&mut self, a: f64, b: f64, u_sum: u8) -> f64;
}

/// [`f_node`] and [`g_node`] directly.
#[derive(Debug, Default, Clone, Copy)]
pub struct MinSumKernel;

impl ScKernel for MinSumKernel {
    #[inline]
    fn f(&mut self, a: f64, b: f64) -> f64 {
        f_node(a, b)
    }

    #[inline]
    fn g(&mut self, a: f64, b: f64, u_sum: u8) -> f64 {
        g_node(a, b, u_sum)
    }
}

/// Reusable SC decoder holding O(n) scratch memory.
///
/// `llr` holds one level per block size: level `t` lives at
/// `llr[2^t .. 2^(t+1)]` and level `m` carries the input frame.
#[derive(Debug, Clone)]
pub struct ScDecoder {
    llr: Vec<f64>,
    partial_sums: Vec<u8>,
}

impl ScDecoder {
    pub fn new(spec: &CodeSpec) -> Self {
        Self {
            llr: vec![0.0; 2 * spec.n()],
            partial_sums: vec![0; spec.n()],
        }
    }

    /// Decodes a frame into the full `u` vector.
    pub fn decode(&mut self, llrs: &[f64], spec: &CodeSpec) -> Result<Vec<u8>> {
        self.decode_with(&mut MinSumKernel, llrs, spec)
    }

    pub fn decode_with<K: ScKernel>(
        &mut self,
        kernel: &mut K,
        llrs: &[f64],
        spec: &CodeSpec,
    ) -> Result<Vec<u8>> {
        let n = spec.n();
        if llrs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: llrs.len(),
            });
        }
        if self.llr.len() != 2 * n {
            *self = Self::new(spec);
        }
        self.llr[n..].copy_from_slice(llrs);
        let mut u = vec![0u8; n];
        decode_block(
            kernel,
            spec.frozen(),
            &mut u,
            &mut self.llr,
            &mut self.partial_sums,
            spec.m(),
        );
        Ok(u)
    }
}

/// `llr` has length `2^(t+1)` with this block's input at `[2^t ..]`;
/// on return `partial_sums` holds the re-encoded block.
fn decode_block<K: ScKernel>(
    kernel: &mut K,
    frozen: &[bool],
    u: &mut [u8],
    llr: &mut [f64],
    partial_sums: &mut [u8],
    t: usize,
) {
    if t == 0 {
        let bit = if frozen[0] { 0 } else { u8::from(llr[1] < 0.0) };
        u[0] = bit;
        partial_sums[0] = bit;
        return;
    }
    let h = 1usize << (t - 1);
    let (lower, input) = llr.split_at_mut(1 << t);
    let (frozen_a, frozen_b) = frozen.split_at(h);
    let (u_a, u_b) = u.split_at_mut(h);
    let (ps_a, ps_b) = partial_sums.split_at_mut(h);

    for j in 0..h {
        lower[h + j] = kernel.f(input[j], input[j + h]);
    }
    decode_block(kernel, frozen_a, u_a, lower, ps_a, t - 1);

    for j in 0..h {
        lower[h + j] = kernel.g(input[j], input[j + h], ps_a[j]);
    }
    decode_block(kernel, frozen_b, u_b, lower, ps_b, t - 1);

    for (a, b) in ps_a.iter_mut().zip(ps_b.iter()) {
        *a ^= *b;
    }
}

/// One-shot SC decode returning the full `u` vector.
pub fn sc_decode(llrs: &[f64], spec: &CodeSpec) -> Result<Vec<u8>> {
    ScDecoder::new(spec).decode(llrs, spec)
}
