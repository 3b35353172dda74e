//! Comparison against committed record files.
//!
//! The files under tests/data were produced by an independent
//! implementation (exact rational arithmetic in another language) and pin
//! three series slot by slot.  A regression in the generating-function
//! backend, the enumeration oracle, or the record format shows up here.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use partition_stats::genfun::{self, first_mismatch, Backend, CoeffSeries};
use partition_stats::oracle::oracle_stat;
use partition_stats::{Ensemble, EnsembleSpec, Mode, PrimeTable, Restriction, Weight};

fn load(name: &str, spec: EnsembleSpec) -> CoeffSeries {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name);
    let file = File::open(path).expect("fixture present");
    CoeffSeries::read_records(spec, BufReader::new(file)).expect("well-formed fixture")
}

fn individual(ensemble: Ensemble, weight: Weight) -> EnsembleSpec {
    EnsembleSpec::new(ensemble, Mode::Individual, Restriction::All, weight)
}

#[test]
fn supernorm_size_series_matches_the_fixture() {
    let table = PrimeTable::build(10_000).unwrap();
    let spec = individual(Ensemble::Size, Weight::Supernorm);
    let fixture = load("w_hat_size_20.txt", spec);
    let computed = genfun::series(&table, &spec, 20, Backend::Exact).unwrap();
    assert_eq!(fixture.nmax(), computed.nmax());
    assert_eq!(first_mismatch(&fixture, &computed), None);
}

#[test]
fn supernorm_perimeter_series_matches_the_fixture() {
    let table = PrimeTable::build(10_000).unwrap();
    let spec = individual(Ensemble::Perimeter, Weight::Supernorm);
    let fixture = load("w_hat_per_14.txt", spec);
    let computed = genfun::series(&table, &spec, 14, Backend::Exact).unwrap();
    assert_eq!(fixture.nmax(), computed.nmax());
    assert_eq!(first_mismatch(&fixture, &computed), None);
}

#[test]
fn norm_size_series_matches_the_fixture() {
    let table = PrimeTable::build(10_000).unwrap();
    let spec = individual(Ensemble::Size, Weight::Norm);
    let fixture = load("w_norm_size_20.txt", spec);
    let computed = genfun::series(&table, &spec, 20, Backend::Exact).unwrap();
    assert_eq!(fixture.nmax(), computed.nmax());
    assert_eq!(first_mismatch(&fixture, &computed), None);
}

#[test]
fn enumeration_oracle_agrees_with_fixture_spots() {
    let table = PrimeTable::build(10_000).unwrap();

    let spec = individual(Ensemble::Size, Weight::Supernorm);
    let fixture = load("w_hat_size_20.txt", spec);
    for n in [5, 14, 20] {
        let direct = oracle_stat(&table, &spec, n).unwrap();
        assert_eq!(fixture.exact_value(n), Some(&direct), "size slot {n}");
    }

    let spec = individual(Ensemble::Perimeter, Weight::Supernorm);
    let fixture = load("w_hat_per_14.txt", spec);
    for n in [3, 9, 14] {
        let direct = oracle_stat(&table, &spec, n).unwrap();
        assert_eq!(fixture.exact_value(n), Some(&direct), "perimeter slot {n}");
    }
}
