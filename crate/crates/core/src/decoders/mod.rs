//! Syndrome conversion and classical decoding.
//!
//! A measured syndrome is the vector `s_i = alt(g_i, e)` over F_p, one entry per
//! symplectic generator. [`convert_syndrome`] turns it into the classical
//! syndrome `<g_i^{p^m}, e>` over GF(p^{2m}), which any [`SyndromeDecoder`] for
//! the check code `(C^{p^m})^⊥` can then decode.

mod bch;
mod quantum;
mod table;

pub use bch::{punctured_decode, BchDecoder, PuncturedDecoder, Rebased};
pub use quantum::{
    convert_syndrome, convert_syndrome_general, convert_syndrome_m1, DecoderKind, QuantumDecode, QuantumDecoder,
    Syndrome,
};
pub use table::{block_from_index, next_combination, CosetLeaderTable, SymplecticTable, DEFAULT_TABLE_BOUND};

use crate::field::Elem;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    /// The estimate reproduces the syndrome.
    Unique,
    /// The decoder recognised that it could not decode.
    FailureDetected,
}

impl DecodeStatus {
    pub fn label(self) -> &'static str {
        match self {
            DecodeStatus::Unique => "unique",
            DecodeStatus::FailureDetected => "failure-detected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub estimate: Vec<Elem>,
    pub status: DecodeStatus,
}

impl DecodeResult {
    pub fn unique(estimate: Vec<Elem>) -> Self {
        DecodeResult { estimate, status: DecodeStatus::Unique }
    }

    pub fn failure(n: usize) -> Self {
        DecodeResult { estimate: vec![Elem::ZERO; n], status: DecodeStatus::FailureDetected }
    }

    pub fn is_unique(&self) -> bool {
        self.status == DecodeStatus::Unique
    }
}

/// A decoder for a classical code given by check rows `H`: it takes `H e` and
/// returns an estimate of `e`.
pub trait SyndromeDecoder: Send + Sync {
    /// Code length.
    fn len(&self) -> usize;

    fn decode(&self, syndrome: &[Elem]) -> Result<DecodeResult>;
}
