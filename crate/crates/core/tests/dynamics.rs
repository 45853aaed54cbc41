use chainscope_core::builtin;
use chainscope_core::dynamics::{
    germ_hausdorff_probe, lqa_probe, non_hausdorff_probe, topological_freeness_probe, FreenessVerdict, LqaOptions,
};
use chainscope_core::Error;

#[test]
fn odometer_moves_points() {
    let sys = builtin("odometer").unwrap().unwrap();
    let a = sys.parse_word("a").unwrap();
    for (x, y) in [("0001110.(0)", "1001110.(0)"), ("11001.(1)", "00101.(1)"), (".(1)", ".(0)")] {
        let img = sys.act_on_boundary(&a, &sys.parse_point(x).unwrap()).unwrap();
        assert_eq!(img, sys.parse_point(y).unwrap(), "a({x})");
    }
}

#[test]
fn pink_generator_is_non_hausdorff() {
    let sys = builtin("pink:2,3").unwrap().unwrap();
    let g = sys.parse_word("a3").unwrap();
    let x = sys.parse_point(".(1)").unwrap();
    let w = non_hausdorff_probe(&sys, &g, &x, 6, 8).unwrap();
    assert!(w.succeeded());
    assert_eq!(w.levels.len(), 7);
    assert!(w.verify(&sys).unwrap());
    let germ = germ_hausdorff_probe(&sys, &g, &x, 6).unwrap();
    assert!(!germ.trivial_germ);
    assert!(!germ.accumulating.is_empty());
}

#[test]
fn probe_needs_a_fixed_point() {
    let sys = builtin("pink:2,3").unwrap().unwrap();
    let g = sys.parse_word("a1").unwrap();
    let x = sys.parse_point(".(1)").unwrap();
    assert!(matches!(non_hausdorff_probe(&sys, &g, &x, 4, 4), Err(Error::Precondition(_))));
}

#[test]
fn lqa_violations_verify() {
    let opts = LqaOptions {
        word_len: 3,
        max_outer: 4,
        max_inner: 6,
        max_results: 50,
    };
    let sys = builtin("pink:2,3").unwrap().unwrap();
    let r = lqa_probe(&sys, opts).unwrap();
    assert!(r.violation_count > 0);
    for v in &r.violations {
        assert!(v.verify(&sys).unwrap());
    }
    let odo = builtin("odometer").unwrap().unwrap();
    assert_eq!(lqa_probe(&odo, opts).unwrap().violation_count, 0);
}

#[test]
fn freeness_separates_the_coe_pair() {
    let g = builtin("coe-pair-G").unwrap().unwrap();
    let h = builtin("coe-pair-H").unwrap().unwrap();
    let rg = topological_freeness_probe(&g, 4, 6).unwrap();
    assert_eq!(rg.verdict, FreenessVerdict::WitnessedNotFree);
    assert!(rg.witnesses.iter().any(|w| w.word == "a2"));
    let rh = topological_freeness_probe(&h, 4, 6).unwrap();
    assert_eq!(rh.verdict, FreenessVerdict::ConsistentWithFree);
    assert!(rh.witnesses.is_empty());
}
