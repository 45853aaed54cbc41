use num_bigint::BigUint;
use serde::Serialize;

use crate::automaton::GroupWord;
use crate::error::Result;
use crate::quotients::PermGroup;

use super::discriminant::DiscriminantSummary;
use super::subchains::check_inclusions;
use super::{
    centralizer_subchain, classify, discriminant_approx, growth_certificates, heights, quotient_table,
    stabilizer_subchain, ClassificationVerdict, DiscriminantApprox, GroupChain, GrowthCertificate, Height,
    QuotientLevel, ZEntry,
};

/// Everything computed for a chain at truncation depth `n`.
#[derive(Debug, Clone)]
pub struct ChainAnalysis {
    pub depth: usize,
    pub table: Vec<QuotientLevel>,
    pub discriminant: DiscriminantApprox,
    pub k: Vec<PermGroup>,
    pub z: Vec<ZEntry>,
    /// `|K_l|` computed at truncation `n - 1` from the same lookahead.
    pub k_previous: Option<Vec<BigUint>>,
    pub certificates: Vec<Option<GrowthCertificate>>,
    pub heights: Vec<Height>,
}

/// Runs the quotient table, discriminant approximation, both subchains and
/// the growth certificate search at depth `n`, looking ahead to level
/// `lookahead` (at most the chain depth).
pub fn analyze(chain: &GroupChain, n: usize, lookahead: usize, seed_len: usize) -> Result<ChainAnalysis> {
    let table = quotient_table(chain, n)?;
    let discriminant = discriminant_approx(chain, n, lookahead)?;
    let k = stabilizer_subchain(chain, &discriminant)?;
    let z = centralizer_subchain(chain, &discriminant)?;
    check_inclusions(&k, &z)?;
    let k_previous = if n == 0 {
        None
    } else {
        let coarser = DiscriminantApprox {
            level: n - 1,
            lookahead: discriminant.lookahead,
            group: discriminant.group.project(n - 1)?,
            stabilized: discriminant.stabilized,
            orders: Vec::new(),
        };
        Some(stabilizer_subchain(chain, &coarser)?.iter().map(|g| g.order()).collect())
    };
    let certificates = growth_certificates(chain, n, &k, seed_len)?;
    let sys = chain.system();
    let probes: Vec<GroupWord> = (0..sys.generator_count()).map(GroupWord::generator).collect();
    let heights = heights(chain, &discriminant, &k, &probes)?;
    Ok(ChainAnalysis {
        depth: n,
        table,
        discriminant,
        k,
        z,
        k_previous,
        certificates,
        heights,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub l: usize,
    #[serde(rename = "orderQ")]
    pub order_q: String,
    #[serde(rename = "orderD")]
    pub order_d: String,
    #[serde(rename = "orderK")]
    pub order_k: String,
    #[serde(rename = "orderZ")]
    pub order_z: String,
    pub flags: Vec<String>,
}

/// Serializable summary of a chain analysis. Group orders are decimal
/// strings since they outgrow 64 bits quickly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub system_hash: String,
    pub basepoint: String,
    pub depth: usize,
    pub levels: Vec<LevelRow>,
    pub discriminant: DiscriminantSummary,
    pub verdicts: ClassificationVerdict,
    pub witnesses: Vec<GrowthCertificate>,
    pub heights: Vec<Height>,
    pub undecided: Vec<String>,
}

impl ChainReport {
    pub fn new(chain: &GroupChain, a: &ChainAnalysis) -> Result<Self> {
        let verdicts = classify(a);
        let mut undecided = Vec::new();
        let mut levels = Vec::with_capacity(a.depth + 1);
        for l in 0..=a.depth {
            let mut flags = Vec::new();
            let ok = a.k[l].order();
            if l > 0 && a.k[l - 1].order() < ok {
                flags.push("k-strict".to_string());
            }
            if l > 0 && a.certificates[l - 1].is_some() {
                flags.push("certified".to_string());
            }
            let order_z = match &a.z[l] {
                ZEntry::Group(g) => {
                    let oz = g.order();
                    if oz < ok {
                        flags.push("z-gap".to_string());
                    }
                    oz.to_string()
                }
                ZEntry::Undecided(why) => {
                    flags.push("z-undecided".to_string());
                    undecided.push(format!("Z at level {l}: {why}"));
                    "undecided".to_string()
                }
            };
            levels.push(LevelRow {
                l,
                order_q: a.table[l].order_q().to_string(),
                order_d: a.table[l].order_d().to_string(),
                order_k: ok.to_string(),
                order_z,
                flags,
            });
        }
        let mut witnesses = Vec::new();
        for c in a.certificates.iter().flatten() {
            // certificates are checked once during the search and again here
            assert!(c.verify(chain, a.depth, &a.k)?, "certificate failed re-verification");
            witnesses.push(c.clone());
        }
        Ok(ChainReport {
            system_hash: chain.system().hash().to_string(),
            basepoint: chain.basepoint().to_string(),
            depth: a.depth,
            levels,
            discriminant: a.discriminant.summary(),
            verdicts,
            witnesses,
            heights: a.heights.clone(),
            undecided,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
