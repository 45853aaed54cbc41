use serde::Serialize;

use crate::automaton::{AutomatonSystem, GroupWord};
use crate::error::{Error, Result};
use crate::tree::{BoundaryPoint, Cylinder, Vertex};

use super::identity_cylinders;

/// Certified data at one level of the basepoint path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NhLevel {
    pub level: usize,
    pub u: Cylinder,
    /// Section at the root of `U`; decided to be nontrivial.
    pub u_section: String,
    pub w: Cylinder,
    /// The word maps the root of `W` to itself and its section there is `e`.
    pub w_section: String,
    pub fixed_point: BoundaryPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NhFailure {
    pub level: usize,
    pub reason: String,
}

/// A witness that `word` is a non-Hausdorff element at `basepoint`: it is
/// not the identity on any `U_l`, yet each `U_l` contains a cylinder `W_l`
/// away from the basepoint on which it is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NonHausdorffWitness {
    pub word: String,
    pub basepoint: BoundaryPoint,
    pub depth: usize,
    pub levels: Vec<NhLevel>,
    /// First level where the search failed, if any.
    pub failure: Option<NhFailure>,
    #[serde(skip)]
    element: GroupWord,
}

impl NonHausdorffWitness {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none() && self.levels.len() == self.depth + 1
    }

    /// Re-decides every certificate from scratch.
    pub fn verify(&self, sys: &AutomatonSystem) -> Result<bool> {
        if !sys.fixes_boundary_point(&self.element, &self.basepoint)? {
            return Ok(false);
        }
        for rec in &self.levels {
            let ok = rec.u == self.basepoint.cylinder(rec.level)
                && !sys.is_identity_on_cylinder(&self.element, &rec.u)?
                && rec.u.contains_cylinder(&rec.w)
                && !rec.w.contains(&self.basepoint)
                && sys.act_on_vertex(&self.element, &rec.w.root) == rec.w.root
                && sys.is_identity_on_cylinder(&self.element, &rec.w)?
                && rec.w.contains(&rec.fixed_point)
                && sys.fixes_boundary_point(&self.element, &rec.fixed_point)?;
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn require_fixed(sys: &AutomatonSystem, g: &GroupWord, x: &BoundaryPoint) -> Result<()> {
    x.validate(sys.degree())?;
    if !sys.fixes_boundary_point(g, x)? {
        return Err(Error::Precondition(format!(
            "`{}` does not fix {x}",
            sys.format_word(g)
        )));
    }
    Ok(())
}

/// Shallowest, then lexicographically least, cylinder strictly below the
/// level-`l` prefix of `x`, not containing `x`, within `budget` further
/// levels, on which `g` is the identity.
fn side_cylinder(sys: &AutomatonSystem, g: &GroupWord, x: &BoundaryPoint, l: usize, budget: usize) -> Result<Option<Vertex>> {
    let mut found: Vec<Vertex> = identity_cylinders(sys, g, &x.prefix(l), l + budget)?
        .into_iter()
        .filter(|v| *v != x.prefix(v.level()))
        .collect();
    found.sort_by(|a, b| a.level().cmp(&b.level()).then_with(|| a.letters().cmp(b.letters())));
    Ok(found.into_iter().next())
}

/// Builds per-level certificates for `g` at `x` for `l = 0..=depth`. Each
/// sub-cylinder is searched at most `budget` levels below `U_l`.
pub fn non_hausdorff_probe(
    sys: &AutomatonSystem,
    g: &GroupWord,
    x: &BoundaryPoint,
    depth: usize,
    budget: usize,
) -> Result<NonHausdorffWitness> {
    require_fixed(sys, g, x)?;
    let mut levels = Vec::new();
    let mut failure = None;
    for l in 0..=depth {
        let u = x.cylinder(l);
        if sys.is_identity_on_cylinder(g, &u)? {
            failure = Some(NhFailure {
                level: l,
                reason: format!("identity on {u}"),
            });
            break;
        }
        let Some(w) = side_cylinder(sys, g, x, l, budget)? else {
            failure = Some(NhFailure {
                level: l,
                reason: format!("no identity cylinder within {budget} levels below {u}"),
            });
            break;
        };
        let fixed_point = BoundaryPoint::new(w.letters().to_vec(), vec![0])?;
        levels.push(NhLevel {
            level: l,
            u_section: sys.format_word(&sys.section(g, &u.root)),
            u,
            w_section: sys.format_word(&sys.section(g, &w)),
            w: Cylinder::new(w),
            fixed_point,
        });
    }
    let witness = NonHausdorffWitness {
        word: sys.format_word(g),
        basepoint: x.clone(),
        depth,
        levels,
        failure,
        element: g.clone(),
    };
    assert!(witness.verify(sys)?, "non-Hausdorff certificate failed re-verification");
    Ok(witness)
}

/// Germ of a fixing element at its fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GermReport {
    pub word: String,
    pub basepoint: BoundaryPoint,
    pub depth: usize,
    /// Whether the word is the identity on some `U_l` with `l <= depth`.
    pub trivial_germ: bool,
    pub trivial_at: Option<usize>,
    /// Identity cylinders `W_l ⊂ U_l` away from the basepoint, one per level
    /// while they exist; a full list alongside a nontrivial germ is the
    /// non-Hausdorff configuration.
    pub accumulating: Vec<Cylinder>,
}

pub fn germ_hausdorff_probe(sys: &AutomatonSystem, g: &GroupWord, x: &BoundaryPoint, depth: usize) -> Result<GermReport> {
    require_fixed(sys, g, x)?;
    let mut trivial_at = None;
    let mut accumulating = Vec::new();
    for l in 0..=depth {
        if sys.is_identity_on_cylinder(g, &x.cylinder(l))? {
            trivial_at = Some(l);
            break;
        }
    }
    if trivial_at.is_none() {
        for l in 0..=depth {
            match side_cylinder(sys, g, x, l, depth)? {
                Some(w) => accumulating.push(Cylinder::new(w)),
                None => break,
            }
        }
    }
    Ok(GermReport {
        word: sys.format_word(g),
        basepoint: x.clone(),
        depth,
        trivial_germ: trivial_at.is_some(),
        trivial_at,
        accumulating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;

    #[test]
    fn pink_a3_is_non_hausdorff() {
        let sys = builtin("pink:2,3").unwrap().unwrap();
        let a3 = sys.parse_word("a3").unwrap();
        let x = sys.parse_point(".(1)").unwrap();
        let w = non_hausdorff_probe(&sys, &a3, &x, 6, 4).unwrap();
        assert!(w.succeeded(), "{:?}", w.failure);
        assert_eq!(w.levels[0].w.to_string(), "01T");
        assert_eq!(w.levels[3].w.to_string(), "11101T");
    }

    #[test]
    fn odometer_fails_precondition() {
        let sys = builtin("odometer").unwrap().unwrap();
        let a = sys.parse_word("a").unwrap();
        let x = sys.parse_point(".(1)").unwrap();
        assert!(matches!(non_hausdorff_probe(&sys, &a, &x, 3, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn identity_fails_at_root() {
        let sys = builtin("pink:2,3").unwrap().unwrap();
        let x = sys.parse_point(".(1)").unwrap();
        let w = non_hausdorff_probe(&sys, &GroupWord::identity(), &x, 3, 3).unwrap();
        assert_eq!(w.failure.unwrap().level, 0);
    }

    #[test]
    fn germs() {
        let coe = builtin("coe-pair").unwrap().unwrap();
        let x = coe.parse_point(".(1)").unwrap();
        let r = germ_hausdorff_probe(&coe, &coe.parse_word("a2").unwrap(), &x, 5).unwrap();
        assert_eq!(r.trivial_at, Some(1));
        let r = germ_hausdorff_probe(&coe, &GroupWord::identity(), &x, 5).unwrap();
        assert_eq!(r.trivial_at, Some(0));

        let pink = builtin("pink:2,3").unwrap().unwrap();
        let x = pink.parse_point(".(1)").unwrap();
        let r = germ_hausdorff_probe(&pink, &pink.parse_word("a3").unwrap(), &x, 6).unwrap();
        assert!(!r.trivial_germ);
        assert_eq!(r.accumulating.len(), 7);
    }
}
