//! The error-correction cycle in the symplectic picture: sample an error,
//! measure its syndrome, decode, and classify the residual `ê - e`.
//!
//! Trial `i` draws its randomness from a ChaCha8 stream keyed by `(seed, i)`,
//! so reports do not depend on how trials are spread over threads.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decoders::{block_from_index, next_combination, DecodeStatus, QuantumDecode, QuantumDecoder};
use crate::exec::{fold_chunks, Execution};
use crate::field::Elem;
use crate::format::format_digits;
use crate::stabilizer::StabilizerCode;
use crate::symplectic::SymplecticVector;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Channel {
    /// Exactly `t` affected qudits, chosen uniformly, each with a uniform
    /// nonzero local block.
    FixedWeight(usize),
    /// Each qudit independently affected with the given probability.
    Iid(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    pub channel: Channel,
    pub seed: u64,
}

impl ChannelSpec {
    pub fn fixed_weight(t: usize, seed: u64) -> Self {
        ChannelSpec { channel: Channel::FixedWeight(t), seed }
    }

    pub fn iid(rate: f64, seed: u64) -> Self {
        ChannelSpec { channel: Channel::Iid(rate), seed }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.channel {
            Channel::FixedWeight(t) if t > n => Err(Error::InvalidArgument(format!("weight {t} exceeds n = {n}"))),
            Channel::Iid(r) if !(0.0..=1.0).contains(&r) => {
                Err(Error::InvalidArgument(format!("rate {r} is not a probability")))
            }
            _ => Ok(()),
        }
    }

    fn label(&self) -> String {
        match self.channel {
            Channel::FixedWeight(t) => format!("fixed-weight-uniform t={t}"),
            Channel::Iid(r) => format!("iid rate={r}"),
        }
    }
}

/// The random stream used by trial `index`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn local_alphabet(p: u32, m: usize) -> u32 {
    p.pow(2 * m as u32)
}

/// The error of trial `index`.
pub fn sample_error(spec: &ChannelSpec, p: u32, m: usize, n: usize, index: u64) -> Result<SymplecticVector> {
    spec.validate(n)?;
    let mut rng = trial_rng(spec.seed, index);
    let local = local_alphabet(p, m);
    let mut e = SymplecticVector::zero(p, m, n);
    match spec.channel {
        Channel::FixedWeight(t) => {
            for pos in sample(&mut rng, n, t) {
                let v = rng.random_range(1..local);
                e.set_block(pos, &block_from_index(p, m, v));
            }
        }
        Channel::Iid(rate) => {
            for pos in 0..n {
                if rng.random_bool(rate) {
                    let v = rng.random_range(1..local);
                    e.set_block(pos, &block_from_index(p, m, v));
                }
            }
        }
    }
    Ok(e)
}

/// `s_i = alt(g_i, e)`.
pub fn measure(e: &SymplecticVector, code: &StabilizerCode) -> Vec<Elem> {
    code.measure(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Residual {
    /// `ê = e`.
    Exact,
    /// `ê - e` is a nonzero stabilizer.
    Degenerate,
    /// The decoder reported failure.
    Detected,
    /// `ê - e` commutes with every generator but is not a stabilizer.
    Logical,
}

impl Residual {
    pub fn label(self) -> &'static str {
        match self {
            Residual::Exact => "exact",
            Residual::Degenerate => "degenerate",
            Residual::Detected => "detected-failure",
            Residual::Logical => "logical-error",
        }
    }

    pub fn is_success(self) -> bool {
        matches!(self, Residual::Exact | Residual::Degenerate)
    }
}

pub fn classify(code: &StabilizerCode, e: &SymplecticVector, outcome: &QuantumDecode) -> Residual {
    if outcome.status == DecodeStatus::FailureDetected {
        return Residual::Detected;
    }
    let r = outcome.estimate.sub(e);
    if r.is_zero() {
        return Residual::Exact;
    }
    assert!(
        code.measure(&r).iter().all(|s| s.is_zero()),
        "decoder returned an estimate with a different syndrome"
    );
    if code.contains(&r) {
        Residual::Degenerate
    } else {
        Residual::Logical
    }
}

/// One decoded error, printable as `key=value` lines.
#[derive(Clone, Debug)]
pub struct Transcript {
    pub error: SymplecticVector,
    pub outcome: QuantumDecode,
    pub residual: Residual,
}

pub fn transcript(decoder: &QuantumDecoder, e: &SymplecticVector) -> Result<Transcript> {
    let code = decoder.code();
    let outcome = decoder.decode(&code.measure(e))?;
    let residual = classify(code, e, &outcome);
    Ok(Transcript { error: e.clone(), outcome, residual })
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.error.p();
        writeln!(f, "error={}", self.error)?;
        writeln!(f, "raw_syndrome={}", format_digits(&self.outcome.syndrome.raw, p))?;
        if let (Some(classical), Some(result)) = (&self.outcome.syndrome.classical, &self.outcome.classical) {
            let q = p.pow(2 * self.error.m() as u32);
            writeln!(f, "classical_syndrome={}", format_digits(classical, q))?;
            writeln!(f, "classical_estimate={}", format_digits(&result.estimate, q))?;
        }
        writeln!(f, "estimate={}", self.outcome.estimate)?;
        writeln!(f, "status={}", self.outcome.status.label())?;
        writeln!(f, "residual={}", self.residual.label())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrialCounts {
    pub trials: u64,
    pub exact: u64,
    pub degenerate: u64,
    pub detected_failures: u64,
    pub logical_errors: u64,
}

impl TrialCounts {
    pub fn successes(&self) -> u64 {
        self.exact + self.degenerate
    }

    fn record(mut self, r: Residual) -> Self {
        self.trials += 1;
        match r {
            Residual::Exact => self.exact += 1,
            Residual::Degenerate => self.degenerate += 1,
            Residual::Detected => self.detected_failures += 1,
            Residual::Logical => self.logical_errors += 1,
        }
        self
    }

    fn merge(self, o: Self) -> Self {
        TrialCounts {
            trials: self.trials + o.trials,
            exact: self.exact + o.exact,
            degenerate: self.degenerate + o.degenerate,
            detected_failures: self.detected_failures + o.detected_failures,
            logical_errors: self.logical_errors + o.logical_errors,
        }
    }
}

/// Aggregate outcome of a simulation. The text form omits the wall time so
/// that identical runs print identical reports.
#[derive(Clone, Debug)]
pub struct TrialReport {
    pub code: String,
    pub decoder: String,
    pub channel: String,
    pub seed: Option<u64>,
    pub counts: TrialCounts,
    pub elapsed: Duration,
}

impl TrialReport {
    pub fn success_rate(&self) -> Option<f64> {
        (self.counts.trials > 0).then(|| self.counts.successes() as f64 / self.counts.trials as f64)
    }

    /// One machine-readable line.
    pub fn summary(&self) -> String {
        let c = &self.counts;
        format!(
            "SUMMARY trials={} successes={} exact={} degenerate={} detected={} logical={}",
            c.trials,
            c.successes(),
            c.exact,
            c.degenerate,
            c.detected_failures,
            c.logical_errors
        )
    }
}

impl fmt::Display for TrialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.counts;
        writeln!(f, "code: {}", self.code)?;
        writeln!(f, "decoder: {}", self.decoder)?;
        writeln!(f, "channel: {} (channel law is a convention, not part of the construction)", self.channel)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {seed}")?;
        }
        writeln!(f, "trials: {}", c.trials)?;
        writeln!(f, "successes: {}", c.successes())?;
        writeln!(f, "  exact: {}", c.exact)?;
        writeln!(f, "  degenerate: {}", c.degenerate)?;
        writeln!(f, "detected_failures: {}", c.detected_failures)?;
        writeln!(f, "logical_errors: {}", c.logical_errors)?;
        match self.success_rate() {
            Some(r) => writeln!(f, "success_rate: {r:.6}")?,
            None => writeln!(f, "success_rate: n/a")?,
        }
        writeln!(f, "{}", self.summary())
    }
}

fn decode_one(decoder: &QuantumDecoder, e: &SymplecticVector) -> Residual {
    match decoder.decode(&decoder.code().measure(e)) {
        Ok(outcome) => classify(decoder.code(), e, &outcome),
        Err(err) => {
            log::warn!("decoder error counted as a detected failure: {err}");
            Residual::Detected
        }
    }
}

/// Samples `trials` errors from `spec` and decodes each.
pub fn run_trials(decoder: &QuantumDecoder, spec: &ChannelSpec, trials: u64, exec: Execution) -> Result<TrialReport> {
    let code = decoder.code();
    spec.validate(code.n())?;
    let start = Instant::now();
    let counts = fold_chunks(
        exec,
        0..trials,
        TrialCounts::default,
        |acc, range| {
            range.fold(acc, |acc, i| {
                let e = sample_error(spec, code.p(), code.m(), code.n(), i).expect("validated spec");
                acc.record(decode_one(decoder, &e))
            })
        },
        TrialCounts::merge,
    );
    Ok(TrialReport {
        code: code.parameters(),
        decoder: decoder.kind().label().into(),
        channel: spec.label(),
        seed: Some(spec.seed),
        counts,
        elapsed: start.elapsed(),
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Decodes every error of symplectic weight exactly `weight`.
pub fn run_exhaustive(decoder: &QuantumDecoder, weight: usize, exec: Execution, bound: u128) -> Result<TrialReport> {
    let code = decoder.code();
    let (p, m, n) = (code.p(), code.m(), code.n());
    if weight > n {
        return Err(Error::InvalidArgument(format!("weight {weight} exceeds n = {n}")));
    }
    let local = local_alphabet(p, m) as u128;
    let per_support = (local - 1).checked_pow(weight as u32).unwrap_or(u128::MAX);
    let total = binomial(n, weight).saturating_mul(per_support);
    if total > bound || total > u64::MAX as u128 {
        return Err(Error::EnumerationBound { count: total, bound });
    }
    let mut supports = Vec::new();
    let mut c: Vec<usize> = (0..weight).collect();
    loop {
        supports.push(c.clone());
        if !next_combination(&mut c, n) {
            break;
        }
    }
    let start = Instant::now();
    let per_support = per_support as u64;
    let counts = fold_chunks(
        exec,
        0..total as u64,
        TrialCounts::default,
        |acc, range| {
            range.fold(acc, |acc, i| {
                let support = &supports[(i / per_support) as usize];
                let mut rest = i % per_support;
                let mut e = SymplecticVector::zero(p, m, n);
                for &pos in support {
                    let v = (rest % (local as u64 - 1)) as u32 + 1;
                    rest /= local as u64 - 1;
                    e.set_block(pos, &block_from_index(p, m, v));
                }
                acc.record(decode_one(decoder, &e))
            })
        },
        TrialCounts::merge,
    );
    Ok(TrialReport {
        code: code.parameters(),
        decoder: decoder.kind().label().into(),
        channel: format!("exhaustive weight={weight}"),
        seed: None,
        counts,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weight_samples_are_zero() {
        let spec = ChannelSpec::fixed_weight(0, 3);
        assert!(sample_error(&spec, 2, 1, 5, 0).unwrap().is_zero());
    }

    #[test]
    fn full_weight_touches_every_qudit() {
        let spec = ChannelSpec::fixed_weight(4, 11);
        for i in 0..20 {
            assert_eq!(sample_error(&spec, 3, 1, 4, i).unwrap().weight(), 4);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let spec = ChannelSpec::iid(0.3, 99);
        let a: Vec<_> = (0..10).map(|i| sample_error(&spec, 2, 2, 4, i).unwrap()).collect();
        let b: Vec<_> = (0..10).map(|i| sample_error(&spec, 2, 2, 4, i).unwrap()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(ChannelSpec::fixed_weight(6, 0).validate(5).is_err());
        assert!(ChannelSpec::iid(1.5, 0).validate(5).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(14, 0), 1);
        assert_eq!(binomial(15, 15), 1);
    }
}
