//! Bit-serial CRC registers.
//!
//! Convention: zero initial state, MSB first, no reflection, no final XOR.
//! The register computes `m(x) · x^r mod g(x)` directly, so no flush bits are
//! needed after the message.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A CRC generator polynomial of degree `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrcScheme {
    width: u32,
    /// Coefficients of `g(x) - x^r`, bit `j` holding the `x^j` coefficient.
    taps: u32,
}

impl CrcScheme {
    /// `x^4 + x + 1`
    pub const CRC4: CrcScheme = CrcScheme { width: 4, taps: 0x3 };
    /// `x^8 + x^7 + x^6 + x^4 + x^2 + 1`
    pub const CRC8: CrcScheme = CrcScheme { width: 8, taps: 0xD5 };
    /// `x^16 + x^15 + x^2 + 1`
    pub const CRC16: CrcScheme = CrcScheme { width: 16, taps: 0x8005 };

    /// Builds a scheme from its degree and the low-order taps. The constant
    /// term must be present.
    pub fn new(width: u32, taps: u32) -> Result<Self, Error> {
        if width == 0 || width > 31 {
            return Err(Error::InvalidValue(format!("CRC width {width} out of range")));
        }
        if taps >> width != 0 || taps & 1 == 0 {
            return Err(Error::InvalidValue(format!(
                "taps {taps:#x} invalid for a degree-{width} generator"
            )));
        }
        Ok(Self { width, taps })
    }

    /// Number of check bits `r`.
    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn taps(&self) -> u32 {
        self.taps
    }

    /// Full generator including the leading `x^r` term.
    pub fn generator(&self) -> u64 {
        (1u64 << self.width) | self.taps as u64
    }

    fn mask(&self) -> u32 {
        (1u32 << self.width) - 1
    }

    pub fn name(&self) -> Option<&'static str> {
        match *self {
            Self::CRC4 => Some("crc4"),
            Self::CRC8 => Some("crc8"),
            Self::CRC16 => Some("crc16"),
            _ => None,
        }
    }
}

impl FromStr for CrcScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "crc4" => Ok(Self::CRC4),
            "crc8" => Ok(Self::CRC8),
            "crc16" => Ok(Self::CRC16),
            other => Err(Error::InvalidValue(format!(
                "unknown CRC scheme '{other}' (expected crc4, crc8 or crc16)"
            ))),
        }
    }
}

impl fmt::Display for CrcScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(name) => f.write_str(name),
            None => write!(f, "crc{}:{:#x}", self.width, self.taps),
        }
    }
}

/// An `r`-bit division register. Copyable, one per decoding path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrcRegister {
    scheme: CrcScheme,
    state: u32,
}

impl CrcRegister {
    pub fn new(scheme: CrcScheme) -> Self {
        Self { scheme, state: 0 }
    }

    pub fn scheme(&self) -> CrcScheme {
        self.scheme
    }

    pub fn state(&self) -> u32 {
        self.state
    }

    pub fn reset(&mut self) {
        self.state = 0;
    }

    /// One LFSR step: feedback is the input bit XOR the register MSB.
    #[inline]
    pub fn update(&mut self, bit: u8) {
        let msb = (self.state >> (self.scheme.width - 1)) & 1;
        let feedback = msb ^ (bit as u32 & 1);
        self.state = (self.state << 1) & self.scheme.mask();
        if feedback == 1 {
            self.state ^= self.scheme.taps;
        }
    }

    /// Returns the updated register, leaving `self` untouched.
    pub fn updated(mut self, bit: u8) -> Self {
        self.update(bit);
        self
    }

    pub fn feed(&mut self, bits: &[u8]) {
        for &b in bits {
            self.update(b);
        }
    }

    /// State as `r` bits, MSB first.
    pub fn bits(&self) -> Vec<u8> {
        let r = self.scheme.width;
        (0..r).rev().map(|j| ((self.state >> j) & 1) as u8).collect()
    }
}

/// Remainder of `m(x) · x^r` divided by `g(x)`, MSB first.
pub fn crc_remainder(message: &[u8], scheme: CrcScheme) -> Vec<u8> {
    let mut reg = CrcRegister::new(scheme);
    reg.feed(message);
    reg.bits()
}

/// `true` when `word` (message followed by `r` check bits) divides evenly.
pub fn crc_check(word: &[u8], scheme: CrcScheme) -> bool {
    let mut reg = CrcRegister::new(scheme);
    reg.feed(word);
    reg.state() == 0
}
