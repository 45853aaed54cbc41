//! Plain-text renderings of the JSON reports.

use std::fmt::Write;

use chainscope_core::chains::{ChainReport, Evidence, KernelReport, Verdict};
use chainscope_core::dynamics::{CoeWitness, FreenessReport, GermReport, LqaReport, NonHausdorffWitness};

fn evidence(v: &Verdict) -> String {
    let e = match v.evidence {
        Evidence::Witnessed => "witnessed",
        Evidence::ConsistentWith => "consistent-with",
        Evidence::WitnessedAgainst => "witnessed-against",
        Evidence::Undecided => "undecided",
    };
    format!("{e} at depth {}", v.depth)
}

pub fn chain(r: &ChainReport) -> String {
    let mut s = String::new();
    writeln!(s, "system {}  basepoint {}  depth {}", r.system_hash, r.basepoint, r.depth).unwrap();
    writeln!(s, "{:>3} {:>24} {:>24} {:>24} {:>24}  flags", "l", "|Q|", "|D|", "|K|", "|Z|").unwrap();
    for row in &r.levels {
        writeln!(
            s,
            "{:>3} {:>24} {:>24} {:>24} {:>24}  {}",
            row.l,
            row.order_q,
            row.order_d,
            row.order_k,
            row.order_z,
            row.flags.join(",")
        )
        .unwrap();
    }
    let d = &r.discriminant;
    writeln!(
        s,
        "discriminant at level {}: orders {} (lookahead {}, {})",
        d.level,
        d.orders.join(" > "),
        d.lookahead,
        if d.stabilized { "stabilized" } else { "not stabilized" }
    )
    .unwrap();
    let v = &r.verdicts;
    for (name, verdict) in [
        ("stable", &v.stable),
        ("algebraically stable", &v.algebraically_stable),
        ("wild", &v.wild),
        ("wild of finite type", &v.wild_finite_type),
        ("wild of flat type", &v.wild_flat_type),
        ("dynamically wild", &v.dynamically_wild),
    ] {
        writeln!(s, "{name}: {}", evidence(verdict)).unwrap();
    }
    for w in &r.witnesses {
        writeln!(s, "K_{} < K_{}: {}", w.step, w.step + 1, w.word).unwrap();
    }
    for h in &r.heights {
        let height = h.height.map_or("-".to_string(), |l| l.to_string());
        writeln!(s, "height {}: {height}", h.word).unwrap();
    }
    for u in &r.undecided {
        writeln!(s, "undecided: {u}").unwrap();
    }
    s
}

pub fn coe(w: &CoeWitness) -> String {
    let mut s = String::new();
    let show = |a: &Option<String>| a.clone().unwrap_or_else(|| "?".into());
    for a in &w.alpha {
        writeln!(s, "alpha({}, {}) = {}", a.generator, a.block, show(&a.word)).unwrap();
    }
    for b in &w.beta {
        writeln!(s, "beta({}, {}) = {}", b.generator, b.block, show(&b.word)).unwrap();
    }
    for c in &w.non_injectivity {
        writeln!(s, "on {}: {{{}}} -> {}", c.block, c.sources.join(", "), c.target).unwrap();
    }
    writeln!(s, "partition preserved: {}", w.partition_preserved).unwrap();
    writeln!(s, "complete: {}", w.complete).unwrap();
    s
}

pub fn nonhausdorff(w: &NonHausdorffWitness) -> String {
    let mut s = String::new();
    for l in &w.levels {
        writeln!(s, "l={} U={} W={} fixed {}", l.level, l.u, l.w, l.fixed_point).unwrap();
    }
    match &w.failure {
        Some(f) => writeln!(s, "failed at level {}: {}", f.level, f.reason).unwrap(),
        None => writeln!(s, "{} is non-Hausdorff at {} to depth {}", w.word, w.basepoint, w.depth).unwrap(),
    }
    s
}

pub fn lqa(r: &LqaReport) -> String {
    let mut s = String::new();
    for v in &r.violations {
        writeln!(s, "{}: identity on {}, not on {}", v.word, v.inner, v.outer).unwrap();
    }
    writeln!(s, "{} violations among {} words", r.violation_count, r.words_checked).unwrap();
    s
}

pub fn freeness(r: &FreenessReport) -> String {
    let mut s = String::new();
    for f in &r.witnesses {
        let cs: Vec<String> = f.cylinders.iter().map(|c| c.to_string()).collect();
        writeln!(s, "{}: identity on {}", f.word, cs.join(" ")).unwrap();
    }
    let verdict = if r.witnesses.is_empty() {
        "consistent with topologically free"
    } else {
        "not topologically free (witnessed)"
    };
    writeln!(s, "{verdict}; {} words, depth {}", r.words_checked, r.depth).unwrap();
    s
}

pub fn germ(r: &GermReport) -> String {
    let mut s = String::new();
    match r.trivial_at {
        Some(l) => writeln!(s, "{} has trivial germ at {} (identity on level {l})", r.word, r.basepoint).unwrap(),
        None => {
            writeln!(s, "{} has nontrivial germ at {} to depth {}", r.word, r.basepoint, r.depth).unwrap();
            for c in &r.accumulating {
                writeln!(s, "  identity on {c}").unwrap();
            }
        }
    }
    s
}

pub fn kernel(r: &KernelReport) -> String {
    format!(
        "fixers: {}\ntrivial: {}\nrational points: {}\n",
        r.fixers.join(" "),
        r.trivial_actors.join(" "),
        r.rational_points.join(" ")
    )
}
