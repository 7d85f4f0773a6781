//! Code description, frozen-set construction and the polar transform.
//!
//! The generator matrix is `G = F^{⊗m}` with `F = [[1, 0], [1, 1]]` in natural
//! index order (no bit-reversal permutation). The same ordering is used by the
//! SC schedule and the BP factor graph, so `u[i]` means the same thing in all
//! three places.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Default initial Bhattacharyya value used for construction.
pub const DEFAULT_Z0: f64 = 0.5;

/// A polar code: block length, information length and frozen positions.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    n: usize,
    k: usize,
    m: usize,
    frozen: Vec<bool>,
    design_param: f64,
}

impl CodeSpec {
    /// Builds a code from an explicit frozen mask (`true` = frozen).
    pub fn from_frozen_mask(frozen: Vec<bool>, design_param: f64) -> Result<Self> {
        let n = frozen.len();
        if !n.is_power_of_two() {
            return Err(Error::InvalidBlockLength(n));
        }
        let k = frozen.iter().filter(|f| !**f).count();
        if k == 0 {
            return Err(Error::InvalidInfoLength { n, k });
        }
        Ok(Self {
            n,
            k,
            m: n.trailing_zeros() as usize,
            frozen,
            design_param,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `log2(n)`, the number of butterfly stages.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn is_frozen(&self, index: usize) -> bool {
        self.frozen[index]
    }

    pub fn design_param(&self) -> f64 {
        self.design_param
    }

    /// Indices of the information positions in ascending order.
    pub fn info_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.frozen
            .iter()
            .enumerate()
            .filter(|(_, f)| !**f)
            .map(|(i, _)| i)
    }

    /// Serializes to the frozen-mask text format: a line `"n k"` followed by
    /// `n` characters `0`/`1` (`1` = frozen) and a trailing newline.
    pub fn to_mask_string(&self) -> String {
        let mut out = String::with_capacity(self.n + 16);
        let _ = writeln!(out, "{} {}", self.n, self.k);
        out.extend(self.frozen.iter().map(|&f| if f { '1' } else { '0' }));
        out.push('\n');
        out
    }

    pub fn from_mask_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::MaskFormat("missing header line".into()))?;
        let mut fields = header.split_whitespace();
        let mut parse = |name: &str| -> Result<usize> {
            fields
                .next()
                .ok_or_else(|| Error::MaskFormat(format!("missing {name} in header")))?
                .parse()
                .map_err(|_| Error::MaskFormat(format!("bad {name} in header")))
        };
        let n = parse("n")?;
        let k = parse("k")?;
        let body = lines
            .next()
            .ok_or_else(|| Error::MaskFormat("missing mask line".into()))?
            .trim_end();
        if body.len() != n {
            return Err(Error::MaskFormat(format!(
                "mask has {} characters, header says {n}",
                body.len()
            )));
        }
        let frozen = body
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::MaskFormat(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = Self::from_frozen_mask(frozen, f64::NAN)?;
        if spec.k != k {
            return Err(Error::MaskFormat(format!(
                "mask has {} free positions, header says {k}",
                spec.k
            )));
        }
        Ok(spec)
    }

    pub fn read_mask_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_mask_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_mask_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_mask_string())?;
        Ok(())
    }
}

/// Bhattacharyya parameters of the `n` synthesized bit-channels, starting from
/// a channel with parameter `z0`. Index `i` follows the natural-order
/// convention: the most significant bit of `i` selects the first split.
pub fn bhattacharyya_profile(n: usize, z0: f64) -> Vec<f64> {
    let mut z = vec![z0];
    while z.len() < n {
        z = z.iter().flat_map(|&v| [2.0 * v - v * v, v * v]).collect();
    }
    z
}

/// Constructs an `(n, k)` polar code by freezing the `n - k` least reliable
/// bit-channels. Equal parameters freeze the lower index first.
pub fn construct_frozen_set(n: usize, k: usize, z0: f64) -> Result<CodeSpec> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidBlockLength(n));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidInfoLength { n, k });
    }
    if !(z0 > 0.0 && z0 < 1.0) {
        return Err(Error::InvalidDesignParam(z0));
    }
    let z = bhattacharyya_profile(n, z0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| z[b].total_cmp(&z[a]).then(a.cmp(&b)));
    let mut frozen = vec![false; n];
    for &i in &order[..n - k] {
        frozen[i] = true;
    }
    Ok(CodeSpec {
        n,
        k,
        m: n.trailing_zeros() as usize,
        frozen,
        design_param: z0,
    })
}

/// Applies `x = uG` in place with the butterfly recursion.
///
/// `G` is an involution over GF(2), so this also inverts itself.
pub fn polar_transform_in_place(bits: &mut [u8]) {
    let n = bits.len();
    let mut half = 1;
    while half < n {
        for block in bits.chunks_exact_mut(2 * half) {
            let (upper, lower) = block.split_at_mut(half);
            for (a, b) in upper.iter_mut().zip(lower.iter()) {
                *a ^= *b;
            }
        }
        half *= 2;
    }
}

fn check_bits(bits: &[u8]) -> Result<()> {
    match bits.iter().position(|&b| b > 1) {
        Some(index) => Err(Error::NonBinaryValue {
            index,
            value: bits[index],
        }),
        None => Ok(()),
    }
}

/// Encodes a full `u` vector (zeros at frozen positions) into `x = uG`.
pub fn encode(u: &[u8], spec: &CodeSpec) -> Result<Vec<u8>> {
    if u.len() != spec.n {
        return Err(Error::LengthMismatch {
            expected: spec.n,
            got: u.len(),
        });
    }
    check_bits(u)?;
    if let Some(i) = (0..spec.n).find(|&i| spec.frozen[i] && u[i] != 0) {
        return Err(Error::NonZeroFrozenBit(i));
    }
    let mut x = u.to_vec();
    polar_transform_in_place(&mut x);
    Ok(x)
}

/// Places `k` information bits at the free positions, in ascending index
/// order, and zeros everywhere else.
pub fn insert_info_bits(info: &[u8], spec: &CodeSpec) -> Result<Vec<u8>> {
    if info.len() != spec.k {
        return Err(Error::LengthMismatch {
            expected: spec.k,
            got: info.len(),
        });
    }
    check_bits(info)?;
    let mut u = vec![0u8; spec.n];
    for (pos, &bit) in spec.info_positions().zip(info) {
        u[pos] = bit;
    }
    Ok(u)
}

/// Reads the information bits back out of a full `u` vector.
pub fn extract_info_bits(u: &[u8], spec: &CodeSpec) -> Result<Vec<u8>> {
    if u.len() != spec.n {
        return Err(Error::LengthMismatch {
            expected: spec.n,
            got: u.len(),
        });
    }
    Ok(spec.info_positions().map(|i| u[i]).collect())
}
