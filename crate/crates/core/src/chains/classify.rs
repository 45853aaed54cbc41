//! Depth-qualified evidence for the stable / wild classification.
//!
//! Boundedness of a chain is a statement about every level, so "stable" is
//! at best consistent with the data at depth `n`. Wildness, on the other
//! hand, is witnessed by strict growth paired with exact certificates.

use serde::Serialize;

use super::report::ChainAnalysis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    Witnessed,
    ConsistentWith,
    WitnessedAgainst,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub evidence: Evidence,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictData {
    /// Trailing window of levels used for the constancy checks.
    pub window: usize,
    /// Steps `l` with a certified strict inclusion `K_l ⊊ K_{l+1}`.
    pub certified_steps: Vec<usize>,
    /// Longest run of consecutive certified steps.
    pub longest_certified_run: usize,
    pub first_strict_growth: Option<usize>,
    /// First level with `Z_l ⊊ K_l`.
    pub gap_level: Option<usize>,
    /// Whether `|K_l|` agrees between truncations `n - 1` and `n` for all
    /// `l < n`; absent when `n = 0`.
    pub k_stable_across_depths: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationVerdict {
    pub depth: usize,
    pub stable: Verdict,
    pub algebraically_stable: Verdict,
    pub wild: Verdict,
    pub wild_finite_type: Verdict,
    pub wild_flat_type: Verdict,
    pub dynamically_wild: Verdict,
    pub data: VerdictData,
}

pub fn classify(a: &ChainAnalysis) -> ClassificationVerdict {
    let n = a.depth;
    let k_orders: Vec<_> = a.k.iter().map(|g| g.order()).collect();
    let z_orders: Vec<_> = a.z.iter().map(|e| e.order()).collect();
    let certified_steps: Vec<usize> = a
        .certificates
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_some())
        .map(|(l, _)| l)
        .collect();
    let mut longest = 0;
    let mut run = 0;
    for c in &a.certificates {
        run = if c.is_some() { run + 1 } else { 0 };
        longest = longest.max(run);
    }
    let first_strict_growth = k_orders.windows(2).position(|w| w[0] < w[1]);
    let gap_level = (0..=n).find(|&l| z_orders[l].as_ref().is_some_and(|z| *z < k_orders[l]));
    let k_stable_across_depths = a
        .k_previous
        .as_ref()
        .map(|prev| prev.iter().zip(&k_orders).all(|(p, c)| p == c));
    let window = n.min(3);
    let data = VerdictData {
        window,
        certified_steps,
        longest_certified_run: longest,
        first_strict_growth,
        gap_level,
        k_stable_across_depths,
    };
    let v = |evidence| Verdict { evidence, depth: n };
    if n == 0 {
        let u = v(Evidence::Undecided);
        return ClassificationVerdict {
            depth: n,
            stable: u,
            algebraically_stable: u,
            wild: u,
            wild_finite_type: u,
            wild_flat_type: u,
            dynamically_wild: u,
            data,
        };
    }

    let trivial = a.k[n].is_trivial();
    let wild = if trivial {
        Evidence::WitnessedAgainst
    } else if longest >= window {
        Evidence::Witnessed
    } else {
        Evidence::Undecided
    };
    let tail = n - window..=n;
    let k_flat_tail = tail.clone().all(|l| k_orders[l] == k_orders[n]);
    let stable = if wild == Evidence::Witnessed {
        Evidence::WitnessedAgainst
    } else if k_flat_tail {
        Evidence::ConsistentWith
    } else {
        Evidence::Undecided
    };
    let z_flat_tail = tail.clone().all(|l| z_orders[l].is_some() && z_orders[l] == z_orders[n]);
    let algebraically_stable = if z_flat_tail {
        Evidence::ConsistentWith
    } else {
        Evidence::Undecided
    };
    let not_wild = wild == Evidence::WitnessedAgainst;
    let wild_finite_type = if not_wild {
        Evidence::WitnessedAgainst
    } else if wild == Evidence::Witnessed && k_stable_across_depths == Some(true) {
        Evidence::ConsistentWith
    } else {
        Evidence::Undecided
    };
    let all_z_equal_k = (0..=n).all(|l| z_orders[l].as_ref() == Some(&k_orders[l]));
    let (dynamically_wild, wild_flat_type) = if not_wild {
        (Evidence::WitnessedAgainst, Evidence::WitnessedAgainst)
    } else if wild == Evidence::Witnessed && gap_level.is_some() {
        (Evidence::Witnessed, Evidence::WitnessedAgainst)
    } else if wild == Evidence::Witnessed && all_z_equal_k {
        (Evidence::Undecided, Evidence::ConsistentWith)
    } else {
        (Evidence::Undecided, Evidence::Undecided)
    };
    ClassificationVerdict {
        depth: n,
        stable: v(stable),
        algebraically_stable: v(algebraically_stable),
        wild: v(wild),
        wild_finite_type: v(wild_finite_type),
        wild_flat_type: v(wild_flat_type),
        dynamically_wild: v(dynamically_wild),
        data,
    }
}
