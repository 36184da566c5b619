use permrat::derivation::derive_n3;
use permrat::exec::Exec;
use permrat::fields::make_field;
use permrat::search::{
    brute_collision_set, count_g1_n3, count_intersection_n3, forward_check_n3, variety_witness, Derived,
    ProblemInstance, SearchError, VarietyScanner, DEFAULT_BUDGET,
};

fn instance(p: u64, n: usize) -> ProblemInstance {
    let cfg = make_field(p, n).unwrap();
    ProblemInstance::new(cfg.clone(), cfg.one()).unwrap()
}

#[test]
fn every_variety_point_gives_a_brute_collision() {
    let sys = derive_n3().unwrap();
    let inst = instance(7, 3);
    let scanner = VarietyScanner::new(&inst, Derived::N3(&sys)).unwrap();
    let set = brute_collision_set(&inst, DEFAULT_BUDGET, &Exec::sequential()).unwrap();
    let cfg = &inst.cfg;
    let mut points = 0;
    for i in 1..cfg.size().unwrap() {
        let y = cfg.element_at(i);
        if scanner.qualifies(&y) {
            let w = scanner.reconstruct(&y).unwrap();
            assert!(set.contains(&(cfg.index(&w.x), i)));
            points += 1;
        }
    }
    assert!(points > 0);
}

#[test]
fn forward_direction_holds() {
    let sys = derive_n3().unwrap();
    let f = forward_check_n3(&instance(5, 3), &sys, &Exec::sequential()).unwrap();
    assert!(f.holds(), "{f:?}");
    assert!(f.solutions > 0);
}

#[test]
fn witness_json_has_coordinates() {
    let sys = derive_n3().unwrap();
    let inst = instance(11, 3);
    let w = variety_witness(&inst, Derived::N3(&sys), DEFAULT_BUDGET, &Exec::sequential()).unwrap();
    let v = serde_json::to_value(w.record(&inst)).unwrap();
    assert_eq!(v["method"], "variety");
    assert_eq!(v["valid"], true);
    assert_eq!(v["x"].as_array().unwrap().len(), 3);
    assert_eq!(v["modulus"].as_array().unwrap().len(), 4);
}

#[test]
fn variety_path_rejects_unsupported_instances() {
    let sys = derive_n3().unwrap();
    let inst = instance(3, 4);
    assert!(matches!(VarietyScanner::new(&inst, Derived::N3(&sys)), Err(SearchError::NotApplicable(_))));
    let cfg = make_field(2, 3).unwrap();
    let inst = ProblemInstance::new(cfg.clone(), cfg.one()).unwrap();
    assert!(matches!(VarietyScanner::new(&inst, Derived::N3(&sys)), Err(SearchError::NotApplicable(_))));
}

#[test]
fn counts_respect_bounds() {
    let sys = derive_n3().unwrap();
    let inst = instance(11, 3);
    let exec = Exec::sequential();
    let both = count_intersection_n3(&inst, &sys, DEFAULT_BUDGET, &exec).unwrap();
    let g1 = count_g1_n3(&inst, &sys, DEFAULT_BUDGET, &exec).unwrap();
    assert_eq!(both.within_bound(), Some(true));
    assert!(both.count <= g1.count);
}
