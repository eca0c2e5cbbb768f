//! Regression fixtures for every benchmark family.

mod common;

use common::fixtures::FIXTURES;
use mfsurrogate::benchmarks::{BenchmarkSpec, eval_bifidelity, eval_trifidelity};
use mfsurrogate::FidelityLevel;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}

#[test]
fn every_fixture_matches_oracle() {
    for &(name, dim, level, x, expected) in FIXTURES {
        let spec = BenchmarkSpec::lookup(name, Some(dim)).unwrap();
        let got = if spec.levels() == 2 {
            eval_bifidelity(&spec, level, x)
        } else {
            eval_trifidelity(&spec, level, x)
        }
        .unwrap();
        assert!(close(got, expected), "{name} {level} {x:?}: got {got}, oracle {expected}");
    }
}

#[test]
fn at_least_three_points_per_family() {
    for id in mfsurrogate::benchmarks::BenchmarkId::ALL {
        let n = FIXTURES.iter().filter(|f| f.0 == id.as_str() && f.2 == FidelityLevel::Hf).count();
        assert!(n >= 3, "{id} has {n} HF fixtures");
    }
}

#[test]
fn hand_derived_values() {
    let f2 = BenchmarkSpec::lookup("forrester2f", None).unwrap();
    assert!(close(f2.evaluate(FidelityLevel::Lf, &[1.0 / 3.0]).unwrap(), -20.0 / 3.0));
    let f3 = BenchmarkSpec::lookup("forrester3f", None).unwrap();
    assert!(close(f3.evaluate(FidelityLevel::Mf, &[0.5]).unwrap(), 0.75 * 2.0f64.sin() - 2.0));
}
