use std::collections::HashMap;
use std::sync::Arc;

use chainscope_core::chains::{analyze, build_chain, classify, ChainReport, Evidence, GroupStore};
use chainscope_core::quotients::BsgsData;
use chainscope_core::{builtin, Error};
use num_bigint::BigUint;
use parking_lot::Mutex;

fn chain(name: &str, x: &str, depth: usize) -> chainscope_core::chains::GroupChain {
    let sys = Arc::new(builtin(name).unwrap().unwrap());
    let x = sys.parse_point(x).unwrap();
    build_chain(sys, x, depth).unwrap()
}

#[test]
fn odometer_chain_is_trivial_and_stable() {
    for n in 1..=6 {
        let c = chain("odometer", ".(0)", n + 2);
        let a = analyze(&c, n, n + 2, 2).unwrap();
        for row in &a.table {
            assert_eq!(row.order_q(), BigUint::from(1u64 << row.level));
            assert!(row.d.is_trivial());
        }
        assert!(a.k.iter().all(|g| g.is_trivial()));
        assert!(a.z.iter().all(|z| z.group().unwrap().is_trivial()));
        let v = classify(&a);
        assert_eq!(v.stable.evidence, Evidence::ConsistentWith);
        assert_eq!(v.wild.evidence, Evidence::WitnessedAgainst);
    }
}

#[test]
fn pink_growth_is_certified() {
    let c = chain("pink2s:2", "11.(0)", 7);
    let a = analyze(&c, 5, 7, 2).unwrap();
    let v = classify(&a);
    assert_eq!(v.wild.evidence, Evidence::Witnessed);
    assert!(v.data.longest_certified_run >= 3);
    for cert in a.certificates.iter().flatten() {
        assert!(cert.verify(&c, 5, &a.k).unwrap());
    }
    for h in a.heights.iter().filter(|h| ["a2", "a3", "a4"].contains(&h.word.as_str())) {
        assert!(h.in_discriminant);
        assert!(h.height.unwrap() <= 2, "{} at height {:?}", h.word, h.height);
    }
}

#[test]
fn pink_centralizer_gap() {
    let c = chain("pink:2,3", ".(1)", 6);
    let a = analyze(&c, 5, 6, 2).unwrap();
    let gap = (0..=5).any(|l| a.z[l].order().is_some_and(|z| z < a.k[l].order()));
    assert!(gap);
    assert_eq!(classify(&a).dynamically_wild.evidence, Evidence::Witnessed);
}

#[test]
fn intransitive_system_is_rejected() {
    let sys = chainscope_core::AutomatonSystem::parse("degree = 2\ngen b = [0,1] (b, e)\n").unwrap();
    let x = sys.parse_point(".(0)").unwrap();
    assert!(matches!(build_chain(Arc::new(sys), x, 3), Err(Error::NotMinimal { level: 1 })));
}

#[derive(Default)]
struct MemStore {
    map: Mutex<HashMap<String, BsgsData>>,
    hits: Mutex<usize>,
}

impl GroupStore for MemStore {
    fn load(&self, key: &str) -> Option<BsgsData> {
        let got = self.map.lock().get(key).cloned();
        if got.is_some() {
            *self.hits.lock() += 1;
        }
        got
    }

    fn store(&self, key: &str, data: &BsgsData) {
        self.map.lock().insert(key.to_string(), data.clone());
    }
}

#[test]
fn cached_groups_reproduce_the_report() {
    let store = Arc::new(MemStore::default());
    let run = || {
        let c = chain("pink:2,3", ".(1)", 6).with_store(store.clone());
        let a = analyze(&c, 4, 6, 2).unwrap();
        ChainReport::new(&c, &a).unwrap().to_json()
    };
    let first = run();
    assert!(!store.map.lock().is_empty());
    assert_eq!(*store.hits.lock(), 0);
    let second = run();
    assert!(*store.hits.lock() > 0);
    assert_eq!(first, second);
    assert_eq!(first, {
        let c = chain("pink:2,3", ".(1)", 6);
        ChainReport::new(&c, &analyze(&c, 4, 6, 2).unwrap()).unwrap().to_json()
    });
}

/// Oracle for the order of `a2*a4` in `pink2s:2`: the permutation of level
/// `n` is read off vertex by vertex and powered until it is the identity.
fn brute_order(sys: &chainscope_core::AutomatonSystem, word: &str, n: usize) -> u64 {
    use chainscope_core::tree::level_vertices;
    let w = sys.parse_word(word).unwrap();
    let vs = level_vertices(sys.degree(), n, 1 << 12).unwrap();
    let image: Vec<usize> = vs
        .iter()
        .map(|v| vs.iter().position(|u| *u == sys.act_on_vertex(&w, v)).unwrap())
        .collect();
    let mut cur = image.clone();
    let mut k = 1;
    while cur.iter().enumerate().any(|(i, &j)| i != j) {
        cur = cur.iter().map(|&j| image[j]).collect();
        k += 1;
    }
    k
}

#[test]
fn a2_a4_order_doubles_every_two_levels() {
    let sys = builtin("pink2s:2").unwrap().unwrap();
    let orders: Vec<u64> = (1..=10).map(|n| brute_order(&sys, "a2*a4", n)).collect();
    // a2*a4 = (a1*a3, e) and (a1*a3)^2 has conjugates of a2*a4 as sections
    assert_eq!(orders[..2], [1, 2]);
    for i in 2..orders.len() {
        assert_eq!(orders[i], 2 * orders[i - 2]);
    }
    for (n, &o) in (1..=10).zip(&orders) {
        let w = sys.parse_word("a2*a4").unwrap();
        let img = chainscope_core::quotients::level_image(&sys, &w, n).unwrap();
        assert_eq!(img.order(), BigUint::from(o));
    }
}
