//! Algebraic laws checked on randomly generated systems and groups.

use std::sync::Arc;

use chainscope_core::automaton::{GroupWord, Letter};
use chainscope_core::chains::{analyze, build_chain};
use chainscope_core::quotients::{closure, group_image, level_image, Bsgs, Perm, PermGroup};
use chainscope_core::tree::{level_vertices, Degree};
use chainscope_core::{builtin, AutomatonSystem, BoundaryPoint, Vertex};
use num_bigint::BigUint;
use proptest::prelude::*;

/// A random system of degree 2 or 3 whose sections are single letters or `e`.
fn system() -> impl Strategy<Value = AutomatonSystem> {
    (2usize..=3, 1usize..=3)
        .prop_flat_map(|(d, k)| {
            let gen = (
                Just((0..d).collect::<Vec<usize>>()).prop_shuffle(),
                prop::collection::vec(prop::option::of((0..k, any::<bool>())), d),
            );
            (Just(d), prop::collection::vec(gen, k))
        })
        .prop_map(|(d, gens)| {
            let mut text = format!("degree = {d}\n");
            for (i, (perm, secs)) in gens.iter().enumerate() {
                let perm: Vec<String> = perm.iter().map(|p| p.to_string()).collect();
                let secs: Vec<String> = secs
                    .iter()
                    .map(|s| match s {
                        None => "e".to_string(),
                        Some((g, true)) => format!("g{g}^-1"),
                        Some((g, false)) => format!("g{g}"),
                    })
                    .collect();
                text.push_str(&format!("gen g{i} = [{}] ({})\n", perm.join(","), secs.join(", ")));
            }
            AutomatonSystem::parse(&text).expect("generated system parses")
        })
}

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
        .prop_map(|ls| GroupWord::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn system_with_words() -> impl Strategy<Value = (AutomatonSystem, GroupWord, GroupWord, Vec<u8>)> {
    system().prop_flat_map(|sys| {
        let k = sys.generator_count();
        let d = sys.degree().get() as u8;
        (
            Just(sys),
            word(k, 6),
            word(k, 6),
            prop::collection::vec(0..d, 0..=5),
        )
    })
}

fn perm_group() -> impl Strategy<Value = (usize, Vec<Perm>)> {
    (2usize..=7).prop_flat_map(|n| {
        let perm = Just((0..n as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap());
        (Just(n), prop::collection::vec(perm, 0..=3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn word_action_is_a_homomorphism((sys, u, v, w) in system_with_words()) {
        let vx = Vertex::new(w, sys.degree()).unwrap();
        let uv = u.mul(&v);
        prop_assert_eq!(sys.act_on_vertex(&uv, &vx), sys.act_on_vertex(&u, &sys.act_on_vertex(&v, &vx)));
        let n = 3;
        let lhs = level_image(&sys, &uv, n).unwrap();
        let rhs = level_image(&sys, &u, n).unwrap().compose(&level_image(&sys, &v, n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverses_undo((sys, u, _v, w) in system_with_words()) {
        let vx = Vertex::new(w, sys.degree()).unwrap();
        prop_assert_eq!(sys.act_on_vertex(&u.inverse(), &sys.act_on_vertex(&u, &vx)), vx);
        let p = level_image(&sys, &u, 3).unwrap().perm;
        prop_assert_eq!(level_image(&sys, &u.inverse(), 3).unwrap().perm, p.inverse());
    }

    #[test]
    fn sections_multiply((sys, u, v, w) in system_with_words()) {
        let vx = Vertex::new(w, sys.degree()).unwrap();
        let whole = sys.section(&u.mul(&v), &vx);
        let split = sys.section(&u, &sys.act_on_vertex(&v, &vx)).mul(&sys.section(&v, &vx));
        prop_assert_eq!(sys.word_perm(&whole, 3).unwrap(), sys.word_perm(&split, 3).unwrap());
        if let Ok(trivial) = sys.is_identity(&whole.inverse().mul(&split)) {
            prop_assert!(trivial);
        }
    }

    #[test]
    fn bsgs_order_matches_closure((n, gens) in perm_group()) {
        let b = Bsgs::build(n, &gens, &[]);
        let all = closure(&gens, n, 100_000).unwrap();
        prop_assert_eq!(b.order(), BigUint::from(all.len()));
        for g in &all {
            prop_assert!(b.contains(g));
        }
    }

    #[test]
    fn orbit_stabilizer_on_levels(sys in system(), level in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let q = group_image(&sys, level).unwrap();
        let vs = level_vertices(sys.degree(), level, 1 << 10).unwrap();
        let v = pick.get(&vs);
        let orbit = q.orbit(v.index(sys.degree())).len();
        let stab = q.point_stabilizer(v).unwrap();
        prop_assert_eq!(q.order(), BigUint::from(orbit) * stab.order());
    }

    #[test]
    fn projection_is_a_homomorphism((sys, u, v, _w) in system_with_words(), m in 0usize..=3) {
        let d = sys.degree();
        let pu = level_image(&sys, &u, 4).unwrap();
        let pv = level_image(&sys, &v, 4).unwrap();
        prop_assert_eq!(pu.compose(&pv).project(d, m), pu.project(d, m).compose(&pv.project(d, m)));
        prop_assert_eq!(pu.project(d, m), level_image(&sys, &u, m).unwrap());
        let q4 = group_image(&sys, 4).unwrap();
        prop_assert!(q4.project(m).unwrap().same_group(&group_image(&sys, m).unwrap()).unwrap());
    }
}

fn transitive_builtin() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["odometer", "coe-pair", "pink:2,3", "pink2s:2", "pink:3,5"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `K_l ⊆ K_{l+1}`, `Z_l ⊆ Z_{l+1}` and `Z_l ⊆ K_l` at random basepoints.
    #[test]
    fn chain_inclusions(name in transitive_builtin(), pre in prop::collection::vec(0u8..2, 0..4),
                        per in prop::collection::vec(0u8..2, 1..3), n in 0usize..=4) {
        let sys = Arc::new(builtin(name).unwrap().unwrap());
        let x = BoundaryPoint::new(pre, per).unwrap();
        let chain = build_chain(sys, x, n + 2).unwrap();
        let a = analyze(&chain, n, n + 2, 1).unwrap();
        for l in 0..=n {
            let row = &a.table[l];
            prop_assert_eq!(row.order_q(), BigUint::from(row.vertices) * row.order_d());
            if l < n {
                prop_assert!(a.k[l].is_subgroup_of(&a.k[l + 1]).unwrap());
            }
            if let Some(z) = a.z[l].group() {
                prop_assert!(z.is_subgroup_of(&a.k[l]).unwrap());
                if let Some(next) = a.z.get(l + 1).and_then(|e| e.group()) {
                    prop_assert!(z.is_subgroup_of(next).unwrap());
                }
            }
        }
        prop_assert!(a.discriminant.group.is_subgroup_of(&a.table[n].d).unwrap());
    }
}

#[test]
fn level_groups_are_tree_automorphism_groups() {
    let sys = builtin("pink2s:2").unwrap().unwrap();
    let q = group_image(&sys, 4).unwrap();
    for g in q.generators() {
        assert!(g.is_tree_automorphism(Degree::BINARY, 4));
    }
    let trivial = PermGroup::trivial(Degree::BINARY, 3);
    assert_eq!(trivial.order(), BigUint::from(1u32));
}
