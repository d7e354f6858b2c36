mod common;

use common::{f16_four, five_qubit};
use qstab::classical::{CyclicCode, LinearCode};
use qstab::stabilizer::{search_codes, BuildOptions, Distance, Representation, SearchOptions, StabilizerCode};
use qstab::symplectic::SymplecticVector;
use qstab::{Error, Execution, Field};

const BOUND: u128 = 1 << 24;

fn five_qubit_generators() -> Vec<SymplecticVector> {
    ["10010|01100", "01001|00110", "10100|00011", "01010|10001"]
        .iter()
        .map(|s| SymplecticVector::parse(s, 2, 1, 5).unwrap())
        .collect()
}

#[test]
fn five_qubit_code_from_its_generators() {
    let code = StabilizerCode::from_symplectic_basis(five_qubit_generators(), 2, 1, 5, BOUND, Execution::Parallel).unwrap();
    assert_eq!((code.n(), code.k()), (5, 1));
    assert_eq!(code.distance(), Distance::Exact(3));
    assert!(code.origin().is_none());
    assert_eq!(code.parameters(), "[[5,1,3]]_2 (d exact)");
}

#[test]
fn non_commuting_generators_are_named() {
    let mut gens = five_qubit_generators();
    gens[2] = SymplecticVector::parse("10000|00000", 2, 1, 5).unwrap();
    // X on the first qubit meets a Z only in generator 4
    let err = StabilizerCode::from_symplectic_basis(gens, 2, 1, 5, BOUND, Execution::Sequential).unwrap_err();
    assert_eq!(err, Error::NonCommuting(3, 4, 1));
}

#[test]
fn dependent_generators_are_rejected() {
    let mut gens = five_qubit_generators();
    gens[3] = gens[0].add(&gens[1]);
    let err = StabilizerCode::from_symplectic_basis(gens, 2, 1, 5, BOUND, Execution::Sequential).unwrap_err();
    assert_eq!(err, Error::Dependent);
}

#[test]
fn classical_and_symplectic_distances_agree() {
    for code in [five_qubit(), f16_four()] {
        let d = code.symplectic_distance(BOUND, Execution::Parallel).unwrap();
        assert_eq!(code.distance(), Distance::Exact(d), "{}", code.parameters());
        for g in code.generators() {
            assert!(code.measure(g).iter().all(|s| s.is_zero()));
        }
    }
    assert_eq!(five_qubit().parameters(), "[[5,1,3]]_2 (d exact)");
    assert_eq!(f16_four().parameters(), "[[4,0,3]]_2^2 (d exact)");
}

#[test]
fn the_two_m1_representations_give_the_same_code_parameters() {
    let f = Field::new(2, 2).unwrap();
    let rows = [common::elems(&[1, 2, 2, 1, 0]), common::elems(&[0, 1, 2, 2, 1])];
    let c = LinearCode::from_rows(&f, 5, &rows).unwrap();
    let opts = BuildOptions { representation: Representation::NormalBasis, ..BuildOptions::default() };
    let via_big_phi = StabilizerCode::from_classical_code(&c, &opts).unwrap();
    assert_eq!(via_big_phi.parameters(), "[[5,1,3]]_2 (d exact)");
    assert!(via_big_phi.origin().unwrap().dual_basis.is_some());
    assert_eq!(via_big_phi.symplectic_distance(BOUND, Execution::Sequential).unwrap(), 3);
}

#[test]
fn stabilizer_is_contained_in_its_symplectic_dual() {
    let code = five_qubit();
    let dual = code.symplectic_dual();
    assert_eq!(dual.rows(), 2 * code.n() - code.generators().len());
    for g in code.generators() {
        assert!(code.contains(g));
        assert!(dual.row_space_contains(g.as_slice(), code.prime_field()));
    }
}

#[test]
fn not_self_orthogonal_rows_are_named() {
    let f = Field::new(2, 2).unwrap();
    let c = LinearCode::from_rows(&f, 3, &[common::elems(&[1, 1, 0]), common::elems(&[1, 0, 0])]).unwrap();
    let err = StabilizerCode::from_classical_code(&c, &BuildOptions::default()).unwrap_err();
    assert!(matches!(err, Error::NotSelfOrthogonal(1, 2) | Error::NotSelfOrthogonal(1, 1) | Error::NotSelfOrthogonal(2, 2)), "{err}");
}

#[test]
fn trivial_code_has_k_equal_n() {
    let f = Field::new(2, 2).unwrap();
    let code = StabilizerCode::from_classical_code(&LinearCode::zero(&f, 4), &BuildOptions::default()).unwrap();
    assert_eq!((code.n(), code.k(), code.distance().value()), (4, 4, 1));
}

#[test]
fn shortened_bch_code_gives_a_punctured_check_code() {
    let f = Field::new(2, 2).unwrap();
    let parent = CyclicCode::from_roots(&f, 15, &[0, 1, 2, 3, 5, 10]).unwrap();
    let opts = BuildOptions::default();
    let whole = StabilizerCode::from_classical_code(parent.code(), &opts).unwrap();
    assert_eq!((whole.n(), whole.k(), whole.distance().value()), (15, 3, 5));
    let short = StabilizerCode::from_shortened(parent.code(), 0, &opts).unwrap();
    assert_eq!((short.n(), short.k(), short.distance().value()), (14, 4, 4));
    let origin = short.origin().unwrap();
    let pf = origin.punctured_from.as_ref().unwrap();
    assert_eq!(pf.position, 0);
    // the check code of the shortened code is the punctured parent check code
    let (punctured, _) = qstab::classical::puncture(&parent.code().hermitian_dual().unwrap(), 0).unwrap();
    assert_eq!(punctured.generator(), origin.check_code().generator());
}

#[test]
fn distance_falls_back_to_the_bch_bound() {
    let f = Field::new(2, 2).unwrap();
    let parent = CyclicCode::from_roots(&f, 15, &[0, 1, 2, 3, 5, 10]).unwrap();
    let opts = BuildOptions { enum_bound: 1000, ..BuildOptions::default() };
    let code = StabilizerCode::from_classical_code(parent.code(), &opts).unwrap();
    assert_eq!(code.distance(), Distance::BchLowerBound(5));
    assert_eq!(code.parameters(), "[[15,3,5]]_2 (d bch-lower-bound)");
}

#[test]
fn search_finds_the_five_qubit_code() {
    let found = search_codes(2, 1, 5, 1, &SearchOptions::default()).unwrap();
    assert!(!found.is_empty());
    assert_eq!(found[0].distance(), Distance::Exact(3));
    assert!(found.windows(2).all(|w| w[0].distance().value() >= w[1].distance().value()));
    assert!(search_codes(2, 1, 5, 1, &SearchOptions { budget: 0, ..SearchOptions::default() }).unwrap().is_empty());
}

#[test]
fn search_over_qutrits_and_gf16() {
    let q3 = search_codes(3, 1, 4, 2, &SearchOptions::default()).unwrap();
    assert!(q3.iter().any(|c| c.distance() == Distance::Exact(2)));
    let q16 = search_codes(2, 2, 4, 0, &SearchOptions::default()).unwrap();
    assert!(q16.iter().any(|c| c.distance().value() == 3));
    for c in q3.iter().chain(&q16) {
        let origin = c.origin().unwrap();
        assert!(origin.code.is_hermitian_self_orthogonal());
    }
}

#[test]
fn search_is_deterministic_for_a_seed() {
    let opts = SearchOptions { seed: 7, budget: 50, ..SearchOptions::default() };
    let a: Vec<String> = search_codes(3, 1, 5, 1, &opts).unwrap().iter().map(|c| c.parameters()).collect();
    let b: Vec<String> = search_codes(3, 1, 5, 1, &opts).unwrap().iter().map(|c| c.parameters()).collect();
    assert_eq!(a, b);
}
