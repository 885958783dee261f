use std::time::Instant;

use lukas_core::fuzz::InferenceFuzzer;
use lukas_core::semantics::{Budget, Frame, TabularOracle};
use lukas_core::transforms::symmetry_transform;
use lukas_core::{check_inference, DeductiveSystem, Mode, Statement};

fn run(ds: &DeductiveSystem, oracle: &TabularOracle, seed: u64, cases: usize) {
    let mut fz = InferenceFuzzer::new(ds, seed);
    for case in 0..cases {
        let n = 1 + case % 3;
        let inf = fz.symmetry_instance(oracle, n, 6).unwrap();
        check_inference(ds, &inf).unwrap();
        let start = Instant::now();
        let sym = symmetry_transform(&inf, ds, oracle).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert!(start.elapsed().as_secs_f64() < 2.0);
        let b = inf.conclusion().unwrap().body.clone();
        assert_eq!(sym.inference.hypotheses, vec![Statement::reject(b)]);
        let concl = check_inference(ds, &sym.inference).unwrap();
        assert_eq!(concl, Statement::reject(inf.hypotheses[sym.index - 1].body.clone()));
    }
}

#[test]
fn classical_instances() {
    let oracle = TabularOracle::new(vec![Frame::point(Mode::Int)], Budget::new(8, 6)).unwrap();
    run(&DeductiveSystem::base(Mode::Int), &oracle, 1, 100);
}

#[test]
fn three_chain_instances() {
    let oracle = TabularOracle::new(vec![Frame::chain(3)], Budget::new(8, 6)).unwrap();
    run(&DeductiveSystem::base(Mode::Int), &oracle, 2, 100);
}

#[test]
fn reflexive_point_instances() {
    let oracle = TabularOracle::new(vec![Frame::reflexive_point(Mode::K4)], Budget::new(8, 6)).unwrap();
    run(&DeductiveSystem::base(Mode::K4), &oracle, 3, 100);
}
