mod common;

use std::sync::Arc;

use common::{direct_syndrome, errors_up_to_weight, f16_four, five_qubit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use qstab::classical::{CyclicCode, LinearCode};
use qstab::decoders::{
    convert_syndrome, convert_syndrome_general, convert_syndrome_m1, BchDecoder, CosetLeaderTable, DecodeStatus,
    DecoderKind, PuncturedDecoder, QuantumDecoder, SyndromeDecoder, DEFAULT_TABLE_BOUND,
};
use qstab::stabilizer::{BuildOptions, Representation, StabilizerCode};
use qstab::symplectic::{hamming_weight, SymplecticVector};
use qstab::{Elem, Error, Execution, Field};

/// `ω a + ω^p b` coordinate by coordinate.
fn phi_by_hand(f: &Field, e: &SymplecticVector) -> Vec<Elem> {
    let w = f.primitive();
    let wp = f.frobenius(w, 1);
    e.a().iter().zip(e.b()).map(|(&a, &b)| f.add(f.mul(w, a), f.mul(wp, b))).collect()
}

fn random_vec(rng: &mut ChaCha8Rng, q: u32, n: usize) -> Vec<Elem> {
    (0..n).map(|_| Elem(rng.random_range(0..q))).collect()
}

/// A random vector with exactly `t` nonzero entries.
fn random_error(rng: &mut ChaCha8Rng, q: u32, n: usize, t: usize) -> Vec<Elem> {
    let mut e = vec![Elem::ZERO; n];
    for pos in rand::seq::index::sample(rng, n, t) {
        e[pos] = Elem(rng.random_range(1..q));
    }
    e
}

#[test]
fn m1_conversion_matches_the_direct_inner_product() {
    let code = five_qubit();
    let f = code.origin().unwrap().field().clone();
    let errors = errors_up_to_weight(2, 1, 5, 2);
    assert_eq!(errors.len(), 1 + 15 + 90);
    for e in errors {
        let c = phi_by_hand(&f, &e);
        let converted = convert_syndrome_m1(&code.measure(&e), &code).unwrap();
        assert_eq!(converted, direct_syndrome(&code, &c), "error {e}");
    }
}

#[test]
fn general_conversion_matches_the_direct_inner_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let forced = BuildOptions { representation: Representation::NormalBasis, ..BuildOptions::default() };
    let qutrit = &qstab::stabilizer::search_codes(3, 1, 4, 2, &Default::default()).unwrap()[0];
    let qutrit_big_phi = StabilizerCode::from_classical_code(&qutrit.origin().unwrap().code, &forced).unwrap();
    for code in [f16_four(), qutrit_big_phi] {
        let origin = code.origin().unwrap();
        let q = origin.field().order();
        for _ in 0..500 {
            let c = random_vec(&mut rng, q, code.n());
            let e = origin.map.to_symplectic(&c);
            let converted = convert_syndrome_general(&code.measure(&e), &code).unwrap();
            assert_eq!(converted, direct_syndrome(&code, &c));
        }
    }
}

#[test]
fn both_m1_maps_convert_to_the_same_classical_syndrome() {
    let code = five_qubit();
    let origin = code.origin().unwrap();
    let opts = BuildOptions { representation: Representation::NormalBasis, ..BuildOptions::default() };
    let forced = StabilizerCode::from_classical_code(&origin.code, &opts).unwrap();
    let forced_origin = forced.origin().unwrap();
    for c in common::all_vectors(4, 5) {
        let via_phi = convert_syndrome(&code.measure(&origin.map.to_symplectic(&c)), &code).unwrap();
        let via_big_phi = convert_syndrome(&forced.measure(&forced_origin.map.to_symplectic(&c)), &forced).unwrap();
        assert_eq!(via_phi, via_big_phi);
        assert_eq!(via_phi, direct_syndrome(&code, &c));
    }
}

#[test]
fn conversion_is_linear() {
    let code = f16_four();
    let p = code.p();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = code.origin().unwrap().field().clone();
    for _ in 0..200 {
        let s1: Vec<Elem> = (0..code.generators().len()).map(|_| Elem(rng.random_range(0..p))).collect();
        let s2: Vec<Elem> = (0..code.generators().len()).map(|_| Elem(rng.random_range(0..p))).collect();
        let sum: Vec<Elem> = s1.iter().zip(&s2).map(|(a, b)| Elem((a.0 + b.0) % p)).collect();
        let lhs = convert_syndrome(&sum, &code).unwrap();
        let rhs: Vec<Elem> = convert_syndrome(&s1, &code)
            .unwrap()
            .iter()
            .zip(convert_syndrome(&s2, &code).unwrap())
            .map(|(&a, b)| f.add(a, b))
            .collect();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn wrong_syndrome_length_is_rejected() {
    let code = five_qubit();
    assert!(matches!(convert_syndrome(&[Elem(0); 3], &code), Err(Error::DimensionMismatch { .. })));
    let dec = QuantumDecoder::new(&code, DecoderKind::Table, DEFAULT_TABLE_BOUND).unwrap();
    assert!(dec.decode(&[Elem(0); 5]).is_err());
}

#[test]
fn tables_recover_every_correctable_error() {
    for code in [five_qubit(), f16_four()] {
        let dec = QuantumDecoder::new(&code, DecoderKind::Table, DEFAULT_TABLE_BOUND).unwrap();
        let t = (code.distance().value() - 1) / 2;
        for e in errors_up_to_weight(code.p(), code.m(), code.n(), t) {
            let out = dec.decode(&code.measure(&e)).unwrap();
            assert_eq!(out.status, DecodeStatus::Unique);
            assert_eq!(out.estimate, e, "{}", code.parameters());
        }
    }
}

#[test]
fn bm_needs_a_classical_origin() {
    let gens: Vec<SymplecticVector> = five_qubit().generators().to_vec();
    let code = StabilizerCode::from_symplectic_basis(gens, 2, 1, 5, 1 << 20, Execution::Sequential).unwrap();
    assert!(matches!(QuantumDecoder::new(&code, DecoderKind::Bm, DEFAULT_TABLE_BOUND), Err(Error::IncompatibleDecoder(_))));
    let table = QuantumDecoder::new(&code, DecoderKind::Table, DEFAULT_TABLE_BOUND).unwrap();
    for e in errors_up_to_weight(2, 1, 5, 1) {
        assert_eq!(table.decode(&code.measure(&e)).unwrap().estimate, e);
    }
}

/// Every error with `2t + 1 <= δ` on `checks`, decoded by BM and by the table.
fn bm_agrees_with_table_exhaustively(field: &Arc<Field>, code: &LinearCode) {
    let checks = code.parity_check();
    let bm = BchDecoder::new(field, &checks).unwrap();
    let table = CosetLeaderTable::new(field, &checks, DEFAULT_TABLE_BOUND).unwrap();
    let t = (bm.designed_distance() - 1) / 2;
    let n = code.len();
    let mut checked = 0;
    for e in common::all_vectors(field.order(), n) {
        if hamming_weight(&e) > t {
            continue;
        }
        let s = bm.syndrome(&e);
        let got = bm.decode(&s).unwrap();
        assert!(got.is_unique());
        assert_eq!(got.estimate, e);
        assert_eq!(table.decode(&s).unwrap().estimate, e);
        checked += 1;
    }
    assert!(checked > n);
}

#[test]
fn bm_on_short_quaternary_codes() {
    let f = Field::new(2, 2).unwrap();
    let five = five_qubit().origin().unwrap().check_code();
    bm_agrees_with_table_exhaustively(&f, &five);
    let seven = CyclicCode::from_roots(&f, 7, &[0, 1]).unwrap();
    bm_agrees_with_table_exhaustively(&f, seven.code());
    let seven_b = CyclicCode::from_roots(&f, 7, &[1]).unwrap();
    bm_agrees_with_table_exhaustively(&f, seven_b.code());
}

#[test]
fn bm_with_errors_and_erasures_on_length_15() {
    let f = Field::new(2, 2).unwrap();
    let code = CyclicCode::from_roots(&f, 15, &[1, 2, 3, 4]).unwrap();
    let checks = code.code().parity_check();
    let bm = BchDecoder::new(&f, &checks).unwrap();
    let budget = bm.designed_distance() - 1;
    assert_eq!(budget, 4);
    let table = CosetLeaderTable::with_max_weight(&f, &checks, DEFAULT_TABLE_BOUND, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for trial in 0..1000 {
        let t = trial % 3;
        let f_max = budget - 2 * t;
        let erasures_n = rng.random_range(0..=f_max);
        let e = random_error(&mut rng, 4, 15, t);
        let s = bm.syndrome(&e);
        if erasures_n == 0 {
            assert_eq!(bm.decode(&s).unwrap().estimate, e);
            assert_eq!(table.decode(&s).unwrap().estimate, e);
        } else {
            // erasures may or may not carry an error value
            let support: Vec<usize> = (0..15).filter(|&i| !e[i].is_zero()).collect();
            let mut erasures: Vec<usize> = rand::seq::index::sample(&mut rng, 15, erasures_n).into_vec();
            erasures.retain(|i| !support.contains(i));
            let mut e2 = e.clone();
            for &i in &erasures {
                e2[i] = Elem(rng.random_range(0..4));
            }
            let got = bm.decode_with_erasures(&bm.syndrome(&e2), &erasures).unwrap();
            assert_eq!(got.estimate, e2, "t={t} erasures={erasures:?}");
        }
    }
}

#[test]
fn bm_reports_failures_beyond_its_radius() {
    let f = Field::new(2, 2).unwrap();
    let code = CyclicCode::from_roots(&f, 15, &[1, 2, 3, 4]).unwrap();
    let bm = BchDecoder::new(&f, &code.code().parity_check()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut detected = 0;
    for _ in 0..300 {
        let e = random_error(&mut rng, 4, 15, 4);
        let r = bm.decode(&bm.syndrome(&e)).unwrap();
        match r.status {
            DecodeStatus::FailureDetected => detected += 1,
            // a unique answer must at least reproduce the syndrome
            DecodeStatus::Unique => assert_eq!(bm.syndrome(&r.estimate), bm.syndrome(&e)),
        }
    }
    assert!(detected > 0);
}

#[test]
fn punctured_decoding_matches_the_child_table() {
    let f = Field::new(2, 2).unwrap();
    let parent = CyclicCode::from_roots(&f, 15, &[1, 2, 3, 4]).unwrap();
    let dec = PuncturedDecoder::new(parent.code(), 0).unwrap();
    let exp = dec.expansion();
    assert!(exp.verify(&f));
    let table = CosetLeaderTable::new(&f, &exp.child_checks, DEFAULT_TABLE_BOUND).unwrap();
    for pos in 0..14 {
        for v in 1..4 {
            let mut e = vec![Elem::ZERO; 14];
            e[pos] = Elem(v);
            let s = exp.child_checks.apply(&e, &f);
            let got = dec.decode(&s).unwrap();
            assert_eq!(got.estimate, table.decode(&s).unwrap().estimate);
            assert_eq!(got.estimate, e);
        }
    }
}

#[test]
fn quantum_bm_decoding_roundtrips() {
    let f = Field::new(2, 2).unwrap();
    let parent = CyclicCode::from_roots(&f, 15, &[0, 1, 2, 3, 5, 10]).unwrap();
    let opts = BuildOptions::default();
    let shortened = StabilizerCode::from_shortened(parent.code(), 0, &opts).unwrap();
    for code in [five_qubit(), shortened] {
        let dec = QuantumDecoder::new(&code, DecoderKind::Bm, DEFAULT_TABLE_BOUND).unwrap();
        for e in errors_up_to_weight(2, 1, code.n(), 1) {
            let out = dec.decode(&code.measure(&e)).unwrap();
            assert_eq!(out.estimate, e, "{}", code.parameters());
            let classical = out.classical.unwrap();
            assert_eq!(classical.status, DecodeStatus::Unique);
            assert_eq!(out.syndrome.classical.unwrap(), code.origin().unwrap().classical_syndrome(&classical.estimate));
        }
    }
}
