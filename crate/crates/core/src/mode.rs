//! Runtime selection of arithmetic and decoder type.

use std::fmt;
use std::str::FromStr;

use crate::codebook::PolarCode;
use crate::crc::CrcScheme;
use crate::error::{Error, Result};
use crate::sc_core::{Exact, Fixed, LlrArithmetic, MinSum};
use crate::sc_decoder::ScDecoder;
use crate::scl_decoder::{SclConfig, SclDecoder};
use crate::sorter::SorterKind;

/// Number representation of a decoder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecoderMode {
    /// Floating point, exact `f-` and exact metric.
    Exact,
    /// Floating-point min-sum with the approximate metric.
    MinSum,
    /// `llr_bits`-bit LLRs, `metric_bits`-bit metrics.
    Fixed {
        llr_bits: u32,
        metric_bits: u32,
        llr_scale: f64,
    },
}

impl FromStr for DecoderMode {
    type Err = Error;

    /// Accepts `exact`, `minsum` (or `minsum-float`) and `fixed:Q=6,M=8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "exact" => return Ok(Self::Exact),
            "minsum" | "minsum-float" => return Ok(Self::MinSum),
            _ => {}
        }
        let rest = s
            .strip_prefix("fixed")
            .ok_or_else(|| Error::InvalidValue(format!("unknown mode '{s}'")))?;
        let (mut q, mut m) = (6u32, 8u32);
        let params = rest.strip_prefix(':').unwrap_or(rest);
        for kv in params.split(',').filter(|t| !t.is_empty()) {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidValue(format!("expected KEY=VALUE in '{kv}'")))?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|e| Error::InvalidValue(format!("'{kv}': {e}")))?;
            match key.trim() {
                "Q" | "q" => q = value,
                "M" | "m" => m = value,
                other => return Err(Error::InvalidValue(format!("unknown fixed-point key '{other}'"))),
            }
        }
        Fixed::new(q, m)?;
        Ok(Self::Fixed {
            llr_bits: q,
            metric_bits: m,
            llr_scale: 1.0,
        })
    }
}

impl fmt::Display for DecoderMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => f.write_str("exact"),
            Self::MinSum => f.write_str("minsum"),
            Self::Fixed {
                llr_bits,
                metric_bits,
                ..
            } => write!(f, "fixed:Q={llr_bits},M={metric_bits}"),
        }
    }
}

impl DecoderMode {
    pub fn with_llr_scale(self, scale: f64) -> Self {
        match self {
            Self::Fixed {
                llr_bits,
                metric_bits,
                ..
            } => Self::Fixed {
                llr_bits,
                metric_bits,
                llr_scale: scale,
            },
            other => other,
        }
    }
}

/// Which decoding algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Sc,
    Scl {
        list_size: usize,
        sorter: SorterKind,
        crc: Option<CrcScheme>,
    },
}

/// Result of one decode through the object-safe interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    /// Estimated data bits (CRC bits removed).
    pub data_bits: Vec<u8>,
    pub crc_fallback: bool,
}

pub trait Decoder: Send {
    fn decode(&mut self, channel_llrs: &[f64]) -> Result<Decoded>;
}

impl<A: LlrArithmetic> Decoder for ScDecoder<A> {
    fn decode(&mut self, channel_llrs: &[f64]) -> Result<Decoded> {
        Ok(Decoded {
            data_bits: ScDecoder::decode(self, channel_llrs)?,
            crc_fallback: false,
        })
    }
}

impl<A: LlrArithmetic> Decoder for SclDecoder<A> {
    fn decode(&mut self, channel_llrs: &[f64]) -> Result<Decoded> {
        let out = SclDecoder::decode(self, channel_llrs)?;
        Ok(Decoded {
            data_bits: out.info_bits,
            crc_fallback: out.crc_fallback,
        })
    }
}

fn boxed<A: LlrArithmetic + 'static>(
    code: PolarCode,
    arith: A,
    kind: DecoderKind,
) -> Result<Box<dyn Decoder>>
where
    A::Llr: 'static,
    A::Metric: 'static,
{
    Ok(match kind {
        DecoderKind::Sc => Box::new(ScDecoder::new(code, arith)),
        DecoderKind::Scl {
            list_size,
            sorter,
            crc,
        } => Box::new(SclDecoder::new(
            code,
            arith,
            SclConfig {
                list_size,
                sorter,
                crc,
            },
        )?),
    })
}

/// Builds a decoder for `code` with the requested algorithm and arithmetic.
pub fn build_decoder(code: PolarCode, mode: DecoderMode, kind: DecoderKind) -> Result<Box<dyn Decoder>> {
    match mode {
        DecoderMode::Exact => boxed(code, Exact, kind),
        DecoderMode::MinSum => boxed(code, MinSum, kind),
        DecoderMode::Fixed {
            llr_bits,
            metric_bits,
            llr_scale,
        } => boxed(code, Fixed::with_scale(llr_bits, metric_bits, llr_scale)?, kind),
    }
}
