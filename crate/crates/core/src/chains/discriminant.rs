use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotients::{Bsgs, Perm, PermGroup};

use super::GroupChain;

/// The images `π_{m→n}(D_m)` for `m = n, n+1, …`, with the last one kept.
#[derive(Debug, Clone)]
pub struct DiscriminantApprox {
    pub level: usize,
    /// Largest `m` whose image was computed.
    pub lookahead: usize,
    pub group: PermGroup,
    /// Whether the last two computed images coincided.
    pub stabilized: bool,
    /// Orders of the images for `m = level..=lookahead`.
    pub orders: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscriminantSummary {
    pub level: usize,
    pub lookahead: usize,
    pub stabilized: bool,
    pub orders: Vec<String>,
}

impl DiscriminantApprox {
    pub fn summary(&self) -> DiscriminantSummary {
        DiscriminantSummary {
            level: self.level,
            lookahead: self.lookahead,
            stabilized: self.stabilized,
            orders: self.orders.iter().map(|o| o.to_string()).collect(),
        }
    }
}

/// Computes the descending images of the point stabilizers `D_m` on level
/// `n`, stopping once two consecutive images agree or at `max_lookahead`.
pub fn discriminant_approx(chain: &GroupChain, n: usize, max_lookahead: usize) -> Result<DiscriminantApprox> {
    if n > max_lookahead || max_lookahead > chain.depth() {
        return Err(Error::Invalid(format!(
            "discriminant needs n <= lookahead <= depth, got {n}, {max_lookahead}, {}",
            chain.depth()
        )));
    }
    let degree = chain.system().degree();
    let points = degree.pow(n).expect("level within chain depth");
    let mut orders = Vec::new();
    let mut current: Option<Bsgs> = None;
    let mut stabilized = false;
    let mut last = n;
    for m in n..=max_lookahead {
        let key = chain.store_key(&format!("D{m}to{n}"), m);
        let b = chain.cached_bsgs(&key, points, || projected_stabilizer(chain, m, n))?;
        let order = b.order();
        if let Some(prev) = &current {
            assert!(
                b.level_generators(0).iter().all(|g| prev.contains(g)),
                "discriminant images must descend"
            );
        }
        last = m;
        let same = orders.last() == Some(&order);
        orders.push(order);
        current = Some(b);
        if same {
            stabilized = true;
            break;
        }
    }
    let b = current.expect("at least one level computed");
    Ok(DiscriminantApprox {
        level: n,
        lookahead: last,
        group: PermGroup::from_bsgs(degree, n, b),
        stabilized,
        orders,
    })
}

/// `π_{m→n}` of the stabilizer of `x_m` in `Q_m`, generated by projected
/// Schreier generators of the orbit of `x_m`.
fn projected_stabilizer(chain: &GroupChain, m: usize, n: usize) -> Result<Bsgs> {
    let sys = chain.system();
    let degree = sys.degree();
    let perms = sys.letter_perms(m)?;
    let gens: Vec<&Perm> = perms.iter().step_by(2).collect();
    let small = degree.pow(n).expect("n <= m");
    let projected: Vec<Perm> = gens.iter().map(|g| g.project(degree, m, n)).collect();
    let big = degree.pow(m).expect("level within cap");
    let start = chain.point(m);

    let mut bsgs = Bsgs::build(small, &[], &[]);
    // transversal[p] projects an element mapping x_m to p
    let mut transversal: Vec<Option<Perm>> = vec![None; big];
    transversal[start] = Some(Perm::identity(small));
    let mut queue = vec![start];
    let mut k = 0;
    while k < queue.len() {
        let beta = queue[k];
        k += 1;
        let t_beta = transversal[beta].clone().expect("queued points have transversals");
        for (s, g) in gens.iter().enumerate() {
            let gamma = g.apply(beta);
            let st = projected[s].compose(&t_beta);
            match &transversal[gamma] {
                None => {
                    transversal[gamma] = Some(st);
                    queue.push(gamma);
                }
                Some(t_gamma) => {
                    let schreier = t_gamma.inverse().compose(&st);
                    if !schreier.is_identity() {
                        bsgs.extend(&schreier);
                    }
                }
            }
        }
    }
    Ok(bsgs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;
    use crate::chains::{build_chain, quotient_table};
    use crate::quotients::closure;
    use std::sync::Arc;

    fn chain(name: &str, x: &str, depth: usize) -> GroupChain {
        let sys = Arc::new(builtin(name).unwrap().unwrap());
        let x = sys.parse_point(x).unwrap();
        build_chain(sys, x, depth).unwrap()
    }

    #[test]
    fn odometer_trivial_and_stabilized() {
        let c = chain("odometer", ".(1)", 6);
        for n in 0..=4 {
            let d = discriminant_approx(&c, n, 6).unwrap();
            assert!(d.group.is_trivial());
            assert!(d.stabilized);
        }
    }

    #[test]
    fn level_zero_is_trivial() {
        let c = chain("pink2s:2", "11.(0)", 3);
        let d = discriminant_approx(&c, 0, 3).unwrap();
        assert_eq!(d.group.order(), 1u32.into());
    }

    /// Oracle: enumerate `D_m` by closure and project every element.
    #[test]
    fn pink_images_match_enumeration() {
        let c = chain("pink2s:2", "11.(0)", 6);
        let table = quotient_table(&c, 6).unwrap();
        let d = discriminant_approx(&c, 2, 4).unwrap();
        let degree = c.system().degree();
        for (i, order) in d.orders.iter().enumerate() {
            let m = 2 + i;
            let row = &table[m];
            let xm = c.point(m);
            let elems = closure(row.q.generators(), row.vertices, 1 << 20).unwrap();
            let images: std::collections::HashSet<Perm> = elems
                .iter()
                .filter(|g| g.apply(xm) == xm)
                .map(|g| g.project(degree, m, 2))
                .collect();
            assert_eq!(*order, BigUint::from(images.len()), "m = {m}");
        }
        let all = closure(d.group.generators(), 4, 1 << 10).unwrap();
        assert_eq!(d.group.order(), BigUint::from(all.len()));
    }
}
