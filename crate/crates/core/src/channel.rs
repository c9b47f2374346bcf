//! BPSK over AWGN, channel LLRs and the uniform LLR quantizer.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Binary-input AWGN channel parametrised by `E_b/N_0` and code rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AwgnChannel {
    ebn0_db: f64,
    rate: f64,
    sigma2: f64,
}

impl AwgnChannel {
    /// `sigma^2 = 1 / (2 R 10^(Eb/N0 / 10))` for unit-energy BPSK symbols.
    pub fn new(ebn0_db: f64, rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidValue(format!("code rate {rate} not in (0, 1]")));
        }
        if !ebn0_db.is_finite() {
            return Err(Error::InvalidValue(format!("Eb/N0 {ebn0_db} dB is not finite")));
        }
        let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0));
        Self::from_noise_variance(sigma2).map(|ch| Self { ebn0_db, rate, ..ch })
    }

    /// Channel with an explicit noise variance (Eb/N0 reported as NaN).
    pub fn from_noise_variance(sigma2: f64) -> Result<Self> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::InvalidValue(format!("noise variance {sigma2} must be positive")));
        }
        Ok(Self {
            ebn0_db: f64::NAN,
            rate: f64::NAN,
            sigma2,
        })
    }

    pub fn ebn0_db(&self) -> f64 {
        self.ebn0_db
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// `y_i = (1 - 2 x_i) + z_i`, `z_i ~ N(0, sigma^2)`.
    pub fn transmit<R: Rng + ?Sized>(&self, x: &[u8], rng: &mut R) -> Vec<f64> {
        let mut y = Vec::with_capacity(x.len());
        self.transmit_into(x, rng, &mut y);
        y
    }

    pub fn transmit_into<R: Rng + ?Sized>(&self, x: &[u8], rng: &mut R, y: &mut Vec<f64>) {
        let noise = Normal::new(0.0, self.sigma2.sqrt()).expect("positive variance");
        y.clear();
        y.extend(
            x.iter()
                .map(|&b| 1.0 - 2.0 * f64::from(b & 1) + noise.sample(rng)),
        );
    }

    /// `ln W(y|0)/W(y|1) = 2y / sigma^2`.
    pub fn channel_llrs(&self, y: &[f64]) -> Vec<f64> {
        let scale = 2.0 / self.sigma2;
        y.iter().map(|&v| scale * v).collect()
    }
}

/// Largest magnitude representable by a `q`-bit symmetric signed word.
#[inline]
pub fn saturation_limit(q: u32) -> i32 {
    (1i32 << (q - 1)) - 1
}

/// Uniform quantizer with step 1: round half away from zero, then saturate
/// to `±(2^(q-1) - 1)`.
pub fn quantize(llr: f64, q: u32) -> Result<i32> {
    if !(2..=31).contains(&q) {
        return Err(Error::InvalidValue(format!("quantizer width {q} not in 2..=31")));
    }
    if llr.is_nan() {
        return Err(Error::InvalidValue("cannot quantize NaN".into()));
    }
    let limit = f64::from(saturation_limit(q));
    // f64::round rounds half away from zero
    Ok(llr.round().clamp(-limit, limit) as i32)
}

/// Channel-LLR quantizer with an optional pre-scaling factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantizer {
    pub bits: u32,
    pub scale: f64,
}

impl Quantizer {
    pub fn new(bits: u32) -> Self {
        Self { bits, scale: 1.0 }
    }

    pub fn with_scale(bits: u32, scale: f64) -> Self {
        Self { bits, scale }
    }

    pub fn quantize_all(&self, llrs: &[f64]) -> Result<Vec<i32>> {
        llrs.iter().map(|&l| quantize(l * self.scale, self.bits)).collect()
    }
}
