//! Monoid presentations from cones and finite-index sublattice congruences:
//! brute-force Hilbert bases and binomial relations among the generators.

use crate::error::{LogtcError, Result};
use crate::lattice::{dot, scale, Cone, LatticeVector};
use std::collections::BTreeMap;

/// A congruence n . m ≡ 0 (mod modulus) cutting out a finite-index sublattice.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub modulus: i64,
    pub functional: LatticeVector,
}

impl Congruence {
    pub fn holds(&self, m: &[i64]) -> bool {
        dot(&self.functional, m).rem_euclid(self.modulus) == 0
    }
}

/// A binomial relation among generators: prod g_i^{lhs_i} = prod g_i^{rhs_i},
/// with disjoint supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialRelation {
    pub lhs: Vec<(usize, u32)>,
    pub rhs: Vec<(usize, u32)>,
}

pub struct MonoidPresentation {
    pub generators: Vec<LatticeVector>,
    pub relations: Vec<BinomialRelation>,
    /// Box bound used for the Hilbert-basis search, for the post-hoc
    /// generation check.
    pub search_box: Vec<i64>,
}

/// Hilbert basis of cone ∩ sublattice by brute-force search over the integer
/// box spanned by the sum of the primitive generators scaled by the
/// sublattice index, plus the binomial relations among generator sums up to
/// total degree 2 * index.
pub fn monoid_presentation(
    cone: &Cone,
    congruences: &[Congruence],
) -> Result<MonoidPresentation> {
    if !cone.is_pointed() || cone.dim == 0 {
        return Err(LogtcError::NotPointed);
    }
    let index: i64 = congruences.iter().map(|c| c.modulus).product::<i64>().max(1);
    let rank = cone.rank;
    // box bound: componentwise absolute sum of index-scaled generators
    let mut bound = vec![0i64; rank];
    for g in &cone.generators {
        let s = scale(g, index);
        for i in 0..rank {
            bound[i] += s[i].abs();
        }
    }
    let in_sublattice = |m: &[i64]| congruences.iter().all(|c| c.holds(m));

    // enumerate cone ∩ sublattice points in [-bound, bound]^rank
    let points = enumerate_box(cone, &bound, 1, &in_sublattice);
    // a wider membership set for the reducibility subtraction test
    let wide: std::collections::BTreeSet<LatticeVector> =
        enumerate_box(cone, &bound, 2, &in_sublattice)
            .into_iter()
            .collect();

    // irreducible elements: not a sum of two nonzero monoid points
    let mut generators: Vec<LatticeVector> = Vec::new();
    for p in &points {
        let reducible = wide.iter().any(|q| {
            if q == p {
                return false;
            }
            let r: LatticeVector = p.iter().zip(q).map(|(a, b)| a - b).collect();
            !r.iter().all(|&x| x == 0) && wide.contains(&r)
        });
        if !reducible {
            generators.push(p.clone());
        }
    }
    generators.sort();

    // post-hoc generation invariant: every point in the box is an
    // N-combination of the generators
    let descent: LatticeVector = {
        // a functional strictly positive on the cone minus the origin
        let mut f = vec![0i64; rank];
        for facet in &cone.facets {
            for i in 0..rank {
                f[i] += facet[i];
            }
        }
        f
    };
    for p in &points {
        if !generated_by(p, &generators, cone, &descent) {
            return Err(LogtcError::FanSheafError(format!(
                "Hilbert search box too small: {:?} not generated",
                p
            )));
        }
    }

    let relations = binomial_relations(&generators, 2 * index);
    Ok(MonoidPresentation {
        generators,
        relations,
        search_box: bound,
    })
}

fn enumerate_box(
    cone: &Cone,
    bound: &[i64],
    factor: i64,
    in_sublattice: &dyn Fn(&[i64]) -> bool,
) -> Vec<LatticeVector> {
    let rank = bound.len();
    let lo: Vec<i64> = bound.iter().map(|b| -b * factor).collect();
    let hi: Vec<i64> = bound.iter().map(|b| b * factor).collect();
    let mut points = Vec::new();
    let mut cursor = lo.clone();
    'outer: loop {
        let p = cursor.clone();
        if !p.iter().all(|&x| x == 0) && cone.contains(&p) && in_sublattice(&p) {
            points.push(p);
        }
        for i in 0..rank {
            cursor[i] += 1;
            if cursor[i] <= hi[i] {
                continue 'outer;
            }
            cursor[i] = lo[i];
        }
        break;
    }
    points.sort_by_key(|p| (p.iter().map(|x| x.abs()).sum::<i64>(), p.clone()));
    points
}

/// Depth-first subtraction search; `descent` is a functional strictly
/// positive on the pointed cone away from the origin, which bounds the
/// recursion depth.
fn generated_by(p: &[i64], gens: &[LatticeVector], cone: &Cone, descent: &[i64]) -> bool {
    if p.iter().all(|&x| x == 0) {
        return true;
    }
    for g in gens {
        let r: Vec<i64> = p.iter().zip(g).map(|(a, b)| a - b).collect();
        if !cone.contains(&r) {
            continue;
        }
        if dot(descent, &r) >= dot(descent, p) {
            continue;
        }
        if generated_by(&r, gens, cone, descent) {
            return true;
        }
    }
    false
}

/// Binomial relations among generator sums up to the given ambient total
/// degree, reduced to disjoint supports and minimal exponent vectors.
fn binomial_relations(gens: &[LatticeVector], max_degree: i64) -> Vec<BinomialRelation> {
    let k = gens.len();
    // enumerate exponent vectors with bounded ambient degree of the value
    let mut by_value: BTreeMap<LatticeVector, Vec<Vec<u32>>> = BTreeMap::new();
    let mut stack: Vec<(usize, Vec<u32>, LatticeVector)> = vec![(
        0,
        vec![0; k],
        vec![0; gens.first().map(|g| g.len()).unwrap_or(0)],
    )];
    while let Some((i, exps, val)) = stack.pop() {
        let deg: i64 = val.iter().map(|x| x.abs()).sum();
        if deg <= max_degree && exps.iter().any(|&e| e > 0) {
            by_value.entry(val.clone()).or_default().push(exps.clone());
        }
        if i >= k || deg > max_degree {
            continue;
        }
        // either move on, or bump generator i
        stack.push((i + 1, exps.clone(), val.clone()));
        let mut bumped = exps;
        bumped[i] += 1;
        let new_val: LatticeVector = val.iter().zip(&gens[i]).map(|(a, b)| a + b).collect();
        stack.push((i, bumped, new_val));
    }

    let mut seen: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for exps in by_value.values() {
        for a in exps {
            for b in exps {
                if a >= b {
                    continue;
                }
                // cancel common support
                let mut lhs = vec![0u32; k];
                let mut rhs = vec![0u32; k];
                for i in 0..k {
                    if a[i] >= b[i] {
                        lhs[i] = a[i] - b[i];
                    } else {
                        rhs[i] = b[i] - a[i];
                    }
                }
                if lhs.iter().all(|&x| x == 0) {
                    continue;
                }
                // canonical side order: more distinct generators first,
                // ties by lex order
                let support = |v: &Vec<u32>| v.iter().filter(|&&x| x > 0).count();
                let key = if (support(&lhs), &rhs) >= (support(&rhs), &lhs) {
                    (lhs.clone(), rhs)
                } else {
                    (rhs, lhs)
                };
                if !seen.contains(&key) {
                    seen.push(key);
                }
            }
        }
    }
    // drop relations implied by a componentwise smaller one
    let minimal: Vec<(Vec<u32>, Vec<u32>)> = seen
        .iter()
        .filter(|(l, r)| {
            !seen.iter().any(|(l2, r2)| {
                (l2, r2) != (l, r)
                    && l2.iter().zip(l.iter()).all(|(a, b)| a <= b)
                    && r2.iter().zip(r.iter()).all(|(a, b)| a <= b)
            })
        })
        .cloned()
        .collect();
    let mut out: Vec<BinomialRelation> = minimal
        .into_iter()
        .map(|(l, r)| BinomialRelation {
            lhs: l
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect(),
            rhs: r
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect(),
        })
        .collect();
    out.sort_by_key(|r| (r.lhs.clone(), r.rhs.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadrant() -> Cone {
        Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    fn diag_congruence(r: i64) -> Congruence {
        Congruence {
            modulus: r,
            functional: vec![1, -1],
        }
    }

    #[test]
    fn presentation_r3() {
        let p = monoid_presentation(&quadrant(), &[diag_congruence(3)]).unwrap();
        assert_eq!(
            p.generators,
            vec![vec![0, 3], vec![1, 1], vec![3, 0]]
        );
        // x y = t^3 with generator order [ (0,3), (1,1), (3,0) ]
        assert_eq!(p.relations.len(), 1);
        let r = &p.relations[0];
        assert_eq!(r.lhs, vec![(0, 1), (2, 1)]);
        assert_eq!(r.rhs, vec![(1, 3)]);
    }

    #[test]
    fn presentation_r1_is_free() {
        let p = monoid_presentation(&quadrant(), &[]).unwrap();
        assert_eq!(p.generators, vec![vec![0, 1], vec![1, 0]]);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn presentation_r2() {
        let p = monoid_presentation(&quadrant(), &[diag_congruence(2)]).unwrap();
        assert_eq!(
            p.generators,
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(p.relations.len(), 1);
        let r = &p.relations[0];
        assert_eq!(r.lhs, vec![(0, 1), (2, 1)]);
        assert_eq!(r.rhs, vec![(1, 2)]);
    }

    #[test]
    fn rejects_non_pointed() {
        let half = Cone::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            monoid_presentation(&half, &[]),
            Err(LogtcError::NotPointed)
        ));
    }
}
