//! Plain successive cancellation decoding.

use crate::codebook::PolarCode;
use crate::error::{Error, Result};
use crate::sc_core::{load_root, LlrArithmetic, ScState};

/// Reusable SC decoder; working memory is allocated once per code.
#[derive(Debug, Clone)]
pub struct ScDecoder<A: LlrArithmetic> {
    code: PolarCode,
    arith: A,
    state: ScState<A::Llr>,
    root: Vec<A::Llr>,
    frozen: Vec<u8>,
    u_hat: Vec<u8>,
}

impl<A: LlrArithmetic> ScDecoder<A> {
    pub fn new(code: PolarCode, arith: A) -> Self {
        let n = code.n();
        let len = code.len();
        let frozen = code.frozen_vector();
        Self {
            code,
            arith,
            state: ScState::new(n),
            root: Vec::with_capacity(len),
            frozen,
            u_hat: vec![0; len],
        }
    }

    pub fn code(&self) -> &PolarCode {
        &self.code
    }

    /// Decodes channel LLRs (`ln W(y|0)/W(y|1)`, channel order) and returns
    /// the `K` information bits.
    pub fn decode(&mut self, channel_llrs: &[f64]) -> Result<Vec<u8>> {
        if channel_llrs.len() != self.code.len() {
            return Err(Error::LengthMismatch {
                expected: self.code.len(),
                actual: channel_llrs.len(),
            });
        }
        load_root(&self.arith, channel_llrs, &mut self.root)?;
        self.run();
        Ok(self.info_bits())
    }

    fn run(&mut self) {
        self.state.reset();
        for i in 0..self.frozen.len() {
            let lambda = self.state.decision_llr_unchecked(&self.arith, &self.root, i);
            let u = if self.code.is_info(i) {
                self.arith.decide(lambda)
            } else {
                self.frozen[i]
            };
            self.u_hat[i] = u;
            self.state.commit_unchecked(i, u);
        }
    }

    /// Full decided input vector `u_hat` from the last decode.
    pub fn decided_input(&self) -> &[u8] {
        &self.u_hat
    }

    /// Re-encoded codeword from the last decode.
    pub fn codeword_estimate(&self) -> Option<Vec<u8>> {
        self.state.codeword_estimate()
    }

    fn info_bits(&self) -> Vec<u8> {
        self.code.info_set().iter().map(|&i| self.u_hat[i]).collect()
    }
}

/// One-shot SC decode.
pub fn sc_decode<A: LlrArithmetic>(code: &PolarCode, channel_llrs: &[f64], arith: A) -> Result<Vec<u8>> {
    ScDecoder::new(code.clone(), arith).decode(channel_llrs)
}
