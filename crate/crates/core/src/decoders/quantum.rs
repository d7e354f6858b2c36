//! From measured syndromes to symplectic error estimates.

use std::sync::Arc;

use super::{BchDecoder, CosetLeaderTable, DecodeResult, DecodeStatus, PuncturedDecoder, Rebased, SymplecticTable, SyndromeDecoder};
use crate::field::{Elem, Field};
use crate::stabilizer::{ClassicalOrigin, StabilizerCode};
use crate::symplectic::{SymplecticMap, SymplecticVector};
use crate::{Error, Result};

/// A measured syndrome and, once converted, its classical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    /// `alt(g_i, e)` for every generator, in generator order.
    pub raw: Vec<Elem>,
    /// `<g_i^{p^m}, e>` for every classical check row.
    pub classical: Option<Vec<Elem>>,
}

fn origin_of(code: &StabilizerCode) -> Result<&ClassicalOrigin> {
    code.origin()
        .ok_or_else(|| Error::IncompatibleDecoder("the code was not built from a classical code".into()))
}

fn check_raw_len(raw: &[Elem], code: &StabilizerCode) -> Result<()> {
    if raw.len() != code.generators().len() {
        return Err(Error::DimensionMismatch { expected: code.generators().len(), got: raw.len() });
    }
    Ok(())
}

/// `m = 1`: from the pair `(s_{2i-1}, s_{2i})` measured against
/// `φ^{-1}(g_i)` and `φ^{-1}(ω g_i)`,
/// `<g_i^p, e> = (ω^2 - ω^{2p}) (ω s_{2i-1} - s_{2i}) / (ω^p - ω)`.
pub fn convert_syndrome_m1(raw: &[Elem], code: &StabilizerCode) -> Result<Vec<Elem>> {
    let origin = origin_of(code)?;
    let SymplecticMap::Phi(phi) = &origin.map else {
        return Err(Error::IncompatibleDecoder("the code uses the normal-basis map".into()));
    };
    check_raw_len(raw, code)?;
    let f = phi.field();
    let w = phi.omega();
    let wp = f.frobenius(w, 1);
    let factor = f.div(phi.form_scale(), f.sub(wp, w)).expect("ω and ω^p are independent");
    Ok(raw
        .chunks(2)
        .map(|s| f.mul(factor, f.sub(f.mul(w, s[0]), s[1])))
        .collect())
}

/// Any `m`, generators `Φ(α_1 g_i), ..., Φ(α_{2m} g_i)`: the block of `2m`
/// measured values determines `<g_i^{p^m}, e> = -sum_j s_j β_j`. The sign
/// comes from measuring `alt(generator, error)`; the opposite order gives
/// `sum_j s_j β_j`.
pub fn convert_syndrome_general(raw: &[Elem], code: &StabilizerCode) -> Result<Vec<Elem>> {
    let origin = origin_of(code)?;
    let dual = origin
        .dual_basis
        .as_ref()
        .ok_or_else(|| Error::IncompatibleDecoder("the code uses φ, not the normal-basis map".into()))?;
    check_raw_len(raw, code)?;
    let f = origin.field();
    Ok(raw.chunks(origin.block_size()).map(|block| f.neg(dual.p2m_inv(block))).collect())
}

/// Dispatches on the map the code was built with.
pub fn convert_syndrome(raw: &[Elem], code: &StabilizerCode) -> Result<Vec<Elem>> {
    match &origin_of(code)?.map {
        SymplecticMap::Phi(_) => convert_syndrome_m1(raw, code),
        SymplecticMap::BigPhi(_) => convert_syndrome_general(raw, code),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DecoderKind {
    /// Coset-leader table (classical when possible, symplectic otherwise).
    #[default]
    Table,
    /// Berlekamp–Massey through the BCH bound, via the parent for punctured codes.
    Bm,
}

impl DecoderKind {
    pub fn label(self) -> &'static str {
        match self {
            DecoderKind::Table => "table",
            DecoderKind::Bm => "bm",
        }
    }
}

enum Engine {
    Classical(Box<dyn SyndromeDecoder>),
    Symplectic(SymplecticTable),
}

/// Outcome of decoding one measured syndrome.
#[derive(Clone, Debug)]
pub struct QuantumDecode {
    pub syndrome: Syndrome,
    /// The classical decoder output, when a classical decoder was used.
    pub classical: Option<DecodeResult>,
    pub estimate: SymplecticVector,
    pub status: DecodeStatus,
}

/// A decoder bound to one stabilizer code.
pub struct QuantumDecoder {
    code: StabilizerCode,
    kind: DecoderKind,
    engine: Engine,
}

impl QuantumDecoder {
    pub fn new(code: &StabilizerCode, kind: DecoderKind, table_bound: u128) -> Result<QuantumDecoder> {
        let engine = match (code.origin(), kind) {
            (None, DecoderKind::Table) => Engine::Symplectic(SymplecticTable::new(
                code.p(),
                code.m(),
                code.n(),
                code.generators(),
                table_bound,
            )?),
            (None, DecoderKind::Bm) => {
                return Err(Error::IncompatibleDecoder(
                    "Berlekamp–Massey decoding needs a code built from a classical code".into(),
                ))
            }
            (Some(origin), DecoderKind::Table) => {
                Engine::Classical(Box::new(CosetLeaderTable::new(origin.field(), &origin.check_rows, table_bound)?))
            }
            (Some(origin), DecoderKind::Bm) => Engine::Classical(bm_engine(origin)?),
        };
        Ok(QuantumDecoder { code: code.clone(), kind, engine })
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn kind(&self) -> DecoderKind {
        self.kind
    }

    pub fn decode(&self, raw: &[Elem]) -> Result<QuantumDecode> {
        check_raw_len(raw, &self.code)?;
        let code = &self.code;
        match &self.engine {
            Engine::Symplectic(table) => {
                let (estimate, status) = match table.decode(raw) {
                    Some(e) => (e, DecodeStatus::Unique),
                    None => (SymplecticVector::zero(code.p(), code.m(), code.n()), DecodeStatus::FailureDetected),
                };
                Ok(QuantumDecode { syndrome: Syndrome { raw: raw.to_vec(), classical: None }, classical: None, estimate, status })
            }
            Engine::Classical(decoder) => {
                let origin = code.origin().expect("classical engine implies an origin");
                let classical = convert_syndrome(raw, code)?;
                let result = decoder.decode(&classical)?;
                let estimate = origin.map.to_symplectic(&result.estimate);
                Ok(QuantumDecode {
                    syndrome: Syndrome { raw: raw.to_vec(), classical: Some(classical) },
                    status: result.status,
                    classical: Some(result),
                    estimate,
                })
            }
        }
    }
}

fn bm_engine(origin: &ClassicalOrigin) -> Result<Box<dyn SyndromeDecoder>> {
    let field: &Arc<Field> = origin.field();
    match &origin.punctured_from {
        Some(parent) => {
            let parent_check = parent.code.hermitian_dual()?;
            let decoder = PuncturedDecoder::new(&parent_check, parent.position)?;
            let to = decoder.expansion().child_checks.clone();
            Ok(Box::new(Rebased::new(field, &origin.check_rows, &to, decoder)?))
        }
        None => Ok(Box::new(BchDecoder::new(field, &origin.check_rows)?)),
    }
}
