//! BPSK over AWGN and channel LLR computation.
//!
//! Polarity is `0 -> +1`, `1 -> -1`, so a positive LLR always favours bit 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Operating point of the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub ebn0_db: f64,
    pub rate: f64,
    /// Noise variance per real dimension.
    pub sigma2: f64,
}

impl ChannelParams {
    /// Derives the noise variance `1 / (2 R Eb/N0)` for unit-energy BPSK.
    pub fn from_ebn0(ebn0_db: f64, rate: f64) -> Result<Self> {
        let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0));
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::InvalidVariance(sigma2));
        }
        Ok(Self {
            ebn0_db,
            rate,
            sigma2,
        })
    }
}

pub fn modulate_bpsk(x: &[u8]) -> Vec<f64> {
    x.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect()
}

/// Adds i.i.d. zero-mean Gaussian noise of variance `sigma2` drawn from `rng`.
pub fn add_awgn_with<R: Rng + ?Sized>(
    symbols: &[f64],
    sigma2: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if sigma2.is_nan() || sigma2 <= 0.0 {
        return Err(Error::InvalidVariance(sigma2));
    }
    let sigma = sigma2.sqrt();
    Ok(symbols
        .iter()
        .map(|&s| s + sigma * rng.sample::<f64, _>(StandardNormal))
        .collect())
}

/// Seeded variant of [`add_awgn_with`]; the same seed always gives the same
/// noise realization.
pub fn add_awgn(symbols: &[f64], sigma2: f64, seed: u64) -> Result<Vec<f64>> {
    add_awgn_with(symbols, sigma2, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `llr_i = 2 y_i / sigma2`.
pub fn llr_from_observation(y: &[f64], sigma2: f64) -> Result<Vec<f64>> {
    if sigma2.is_nan() || sigma2 <= 0.0 {
        return Err(Error::InvalidVariance(sigma2));
    }
    let scale = 2.0 / sigma2;
    Ok(y.iter().map(|&v| scale * v).collect())
}
