//! Independent mathematical verifiers: exactness of the chain complex
//! resolving the relative ghost sheaf, checked stalkwise through Smith
//! normal form, and a seeded property fuzzer for the telescoping joint
//! identity over random smooth complete rank-2 fans.

use crate::error::{LogtcError, Result};
use crate::intmat::{smith_normal_form, solve_integer, IntMat};
use crate::lattice::{
    add, cyclic_ray_order, dot, is_smooth, neg, primitive_normal, saturated_span_basis, scale,
    Cone, Fan, LatticeVector,
};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A chain complex of free abelian groups with labeled chain bases.
/// terms[0] is the ambient lattice M; terms[k] for k >= 1 has one summand
/// of rank dim(tau_0) per strict chain tau_0 < ... < tau_{k-1} of nonzero
/// faces of the stalk cone. maps[k] is the matrix of d_{k+1}: C_{k+1} -> C_k.
pub struct ChainComplex {
    pub term_labels: Vec<Vec<String>>,
    pub term_ranks: Vec<usize>,
    pub maps: Vec<IntMat>,
}

impl ChainComplex {
    /// d_{k} ∘ d_{k+1} = 0 for all k.
    pub fn is_complex(&self) -> bool {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return false;
            }
        }
        true
    }
}

/// A lattice basis of the saturated span of a cone.
fn span_basis(rank: usize, cone: &Cone) -> Vec<LatticeVector> {
    if cone.dim == 0 {
        return vec![];
    }
    saturated_span_basis(rank, &cone.generators)
}

/// The stalk complex of the ghost-sheaf resolution at a point of the
/// stratum of `p_cone`: chains of nonzero faces of p_cone, bottom-group
/// summands, alternating face maps (dropping the bottom cone includes its
/// span into the next one).
pub fn ghost_resolution_complex(f: &Fan, p_cone: &Cone) -> Result<ChainComplex> {
    if !f.contains_cone(p_cone) {
        return Err(LogtcError::ConeNotInFan(format!("{:?}", p_cone.generators)));
    }
    let rank = f.rank;
    // nonzero faces of p_cone, in fan order
    let faces: Vec<&Cone> = f
        .cones
        .iter()
        .filter(|c| c.dim > 0 && p_cone.has_face(c))
        .collect();
    // strict chains, by length
    let mut chains: Vec<Vec<Vec<usize>>> = if faces.is_empty() {
        Vec::new()
    } else {
        vec![faces.iter().enumerate().map(|(i, _)| vec![i]).collect()]
    };
    while !chains.is_empty() {
        let last = chains.last().unwrap();
        let mut next = Vec::new();
        for chain in last {
            let top = *chain.last().unwrap();
            for (j, c) in faces.iter().enumerate() {
                if j != top && c.has_face(faces[top]) && c.dim > faces[top].dim {
                    let mut longer = chain.clone();
                    longer.push(j);
                    next.push(longer);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        chains.push(next);
    }

    let bases: Vec<Vec<LatticeVector>> = faces.iter().map(|c| span_basis(rank, c)).collect();

    let mut term_labels = vec![vec!["M".to_string()]];
    let mut term_ranks = vec![rank];
    let mut offsets_per_term: Vec<Vec<usize>> = Vec::new();
    for level in &chains {
        let mut labels = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0usize;
        for chain in level {
            offsets.push(total);
            total += bases[chain[0]].len();
            labels.push(
                chain
                    .iter()
                    .map(|&i| format!("{:?}", faces[i].generators))
                    .collect::<Vec<_>>()
                    .join(" < "),
            );
        }
        offsets_per_term.push(offsets);
        term_labels.push(labels);
        term_ranks.push(total);
    }

    let mut maps = Vec::new();
    // d_1: sum of span inclusions into M
    if !chains.is_empty() {
        let mut m = IntMat::zero(rank, term_ranks[1]);
        for (ci, chain) in chains[0].iter().enumerate() {
            let off = offsets_per_term[0][ci];
            for (bi, v) in bases[chain[0]].iter().enumerate() {
                for r in 0..rank {
                    m[(r, off + bi)] = BigInt::from(v[r]);
                }
            }
        }
        maps.push(m);
    }
    // d_{k+1} for k >= 1: alternating face maps
    for k in 1..chains.len() {
        let src = &chains[k];
        let dst = &chains[k - 1];
        let mut m = IntMat::zero(term_ranks[k], term_ranks[k + 1]);
        for (ci, chain) in src.iter().enumerate() {
            let src_off = offsets_per_term[k][ci];
            let bottom = chain[0];
            for drop in 0..chain.len() {
                let mut shorter = chain.clone();
                shorter.remove(drop);
                let di = dst
                    .iter()
                    .position(|c| *c == shorter)
                    .expect("face chain present");
                let dst_off = offsets_per_term[k - 1][di];
                let sign = if drop % 2 == 0 { 1i64 } else { -1i64 };
                if drop == 0 {
                    // include span(bottom) into span(new bottom)
                    let new_bottom = shorter[0];
                    for (bi, v) in bases[bottom].iter().enumerate() {
                        let coords = express_in_basis(v, &bases[new_bottom])?;
                        for (r, c) in coords.iter().enumerate() {
                            m[(dst_off + r, src_off + bi)] += c * BigInt::from(sign);
                        }
                    }
                } else {
                    for bi in 0..bases[bottom].len() {
                        m[(dst_off + bi, src_off + bi)] += BigInt::from(sign);
                    }
                }
            }
        }
        maps.push(m);
    }
    Ok(ChainComplex {
        term_labels,
        term_ranks,
        maps,
    })
}

fn express_in_basis(v: &[i64], basis: &[LatticeVector]) -> Result<Vec<BigInt>> {
    let rank = v.len();
    let mut m = IntMat::zero(rank, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for i in 0..rank {
            m[(i, j)] = BigInt::from(b[i]);
        }
    }
    let rhs: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    solve_integer(&m, &rhs).ok_or_else(|| {
        LogtcError::FanSheafError("saturated span inclusion is not integral".into())
    })
}

/// Homology of the complex: (free rank, torsion divisors) per degree,
/// computed exactly through Smith normal form. Degree 0 reports the
/// cokernel of d_1.
pub fn homology(c: &ChainComplex) -> Result<Vec<(usize, Vec<BigInt>)>> {
    if !c.is_complex() {
        return Err(LogtcError::NotAComplex("d ∘ d != 0".into()));
    }
    let n = c.term_ranks.len();
    let snfs: Vec<_> = c.maps.iter().map(smith_normal_form).collect();
    let mut out = Vec::new();
    for k in 0..n {
        let rank_in = if k < c.maps.len() { snfs[k].rank } else { 0 };
        let rank_out = if k == 0 { 0 } else { snfs[k - 1].rank };
        let free = c.term_ranks[k] - rank_out - rank_in;
        let torsion: Vec<BigInt> = if k < c.maps.len() {
            snfs[k]
                .divisors()
                .into_iter()
                .filter(|d| !d.is_one())
                .collect()
        } else {
            vec![]
        };
        out.push((free, torsion));
    }
    Ok(out)
}

/// Exactness of the stalk resolution: H_k = 0 for all k >= 1 and the
/// cokernel of the augmentation is the saturated quotient M / <p_cone>.
pub fn check_ghost_resolution(f: &Fan, p_cone: &Cone) -> Result<bool> {
    let c = ghost_resolution_complex(f, p_cone)?;
    if !c.is_complex() {
        return Ok(false);
    }
    let h = homology(&c)?;
    for (k, (free, torsion)) in h.iter().enumerate() {
        if k == 0 {
            // coker d_1 must be free of rank = rank - dim(p_cone)
            if *free != f.rank - p_cone.dim || !torsion.is_empty() {
                return Ok(false);
            }
        } else if *free != 0 || !torsion.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A continuous piecewise linear homomorphism into Z^k over a smooth
/// complete rank-2 fan: one value per ray, glued linearly over the maximal
/// cones.
#[derive(Clone, Debug)]
pub struct PLHom {
    pub fan: Fan,
    /// Values in cyclic ray order.
    pub values: Vec<Vec<i64>>,
    pub k: usize,
}

impl PLHom {
    pub fn new(fan: Fan, values_by_ray: Vec<(LatticeVector, Vec<i64>)>, k: usize) -> Result<Self> {
        if !is_smooth(&fan)? {
            return Err(LogtcError::NotSmooth);
        }
        let order = cyclic_ray_order(&fan)?;
        let mut values = Vec::new();
        for ray in &order {
            let v = values_by_ray
                .iter()
                .find(|(r, _)| r == ray)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| LogtcError::FanSheafError(format!("no value for ray {:?}", ray)))?;
            if v.len() != k {
                return Err(LogtcError::RankMismatch {
                    expected: k,
                    got: v.len(),
                });
            }
            values.push(v);
        }
        Ok(PLHom { fan, values, k })
    }

    /// mu_{sigma_i}(w) for the cone spanned by rays i, i+1: express w in
    /// the ray basis (integral by smoothness) and combine the values.
    fn eval(&self, order: &[LatticeVector], i: usize, w: &[i64]) -> Vec<i64> {
        let n = order.len();
        let (r1, r2) = (&order[i], &order[(i + 1) % n]);
        let det = crate::lattice::cross2(r1, r2);
        debug_assert!(det.abs() == 1);
        // w = a r1 + b r2
        let a = crate::lattice::cross2(w, r2) / det;
        let b = crate::lattice::cross2(r1, w) / det;
        let t1 = &self.values[i];
        let t2 = &self.values[(i + 1) % n];
        (0..self.k).map(|j| a * t1[j] + b * t2[j]).collect()
    }
}

/// One telescope trial: with v_i at pairing 1 with d_i (shifted by
/// `shift` times the ray generator), compute a_i = mu_{i-1}(-v_i) +
/// mu_i(v_i) and return the residuals sum_i d_i(e_j) a_i for j = 1, 2.
pub fn joint_lemma_trial(h: &PLHom, shift: &[i64]) -> Result<[Vec<i64>; 2]> {
    let order = cyclic_ray_order(&h.fan)?;
    let n = order.len();
    if shift.len() != n {
        return Err(LogtcError::RankMismatch {
            expected: n,
            got: shift.len(),
        });
    }
    let mut normals = Vec::new();
    for i in 0..n {
        normals.push(primitive_normal(&h.fan, &order[i], &order[(i + 1) % n])?);
    }
    // v_i = generator of rho_{i+1} (pairing 1 by smoothness) + shift * rho_i
    let mut vs = Vec::new();
    for i in 0..n {
        let v = add(&order[(i + 1) % n], &scale(&order[i], shift[i]));
        if dot(&normals[i], &v) != 1 {
            return Err(LogtcError::NotSmooth);
        }
        vs.push(v);
    }
    let mut residuals = [vec![0i64; h.k], vec![0i64; h.k]];
    for (j, e) in [vec![1i64, 0], vec![0i64, 1]].iter().enumerate() {
        for i in 0..n {
            let di_e = dot(&normals[i], e);
            if di_e == 0 {
                continue;
            }
            let prev = (i + n - 1) % n;
            let a_i: Vec<i64> = h
                .eval(&order, prev, &neg(&vs[i]))
                .iter()
                .zip(h.eval(&order, i, &vs[i]))
                .map(|(x, y)| x + y)
                .collect();
            for t in 0..h.k {
                residuals[j][t] += di_e * a_i[t];
            }
        }
    }
    Ok(residuals)
}

#[derive(Clone, Debug)]
pub struct FuzzTrial {
    pub index: u64,
    pub rays: usize,
    pub pass: bool,
    pub residuals: [Vec<i64>; 2],
}

#[derive(Clone, Debug)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: Vec<FuzzTrial>,
    pub pass: bool,
}

/// Seeded fuzzing of the telescope identity: random smooth complete rank-2
/// fans by iterated stellar subdivision of the cross fan, random values in
/// Z^k bounded by 10^6, plus invariance of the residual under a random
/// shift of every v_i along its own ray.
pub fn fuzz_joint_lemma(seed: u64, trials: u64, max_rays: usize, k: usize) -> Result<FuzzReport> {
    if trials == 0 {
        return Err(LogtcError::Usage("trials must be >= 1".into()));
    }
    if max_rays < 4 {
        return Err(LogtcError::Usage("max_rays must be >= 4".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut all_pass = true;
    for index in 0..trials {
        let mut rays: Vec<LatticeVector> =
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]];
        let target = rng.gen_range(4..=max_rays);
        while rays.len() < target {
            let i = rng.gen_range(0..rays.len());
            let next = (i + 1) % rays.len();
            let new = add(&rays[i], &rays[next]);
            rays.insert(i + 1, new);
        }
        let fan = crate::lattice::fans::from_rays_complete(&rays)?;
        let values: Vec<(LatticeVector, Vec<i64>)> = fan
            .rays()
            .into_iter()
            .map(|r| {
                let v: Vec<i64> = (0..k).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
                (r, v)
            })
            .collect();
        let h = PLHom::new(fan, values, k)?;
        let n = h.values.len();
        let zero_shift = vec![0i64; n];
        let res0 = joint_lemma_trial(&h, &zero_shift)?;
        let random_shift: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let res1 = joint_lemma_trial(&h, &random_shift)?;
        let pass = res0.iter().all(|r| r.iter().all(|&x| x == 0))
            && res1.iter().all(|r| r.iter().all(|&x| x == 0))
            && res0 == res1;
        if !pass {
            all_pass = false;
        }
        out.push(FuzzTrial {
            index,
            rays: n,
            pass,
            residuals: res0,
        });
    }
    Ok(FuzzReport {
        seed,
        trials: out,
        pass: all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fans;

    #[test]
    fn two_term_complex_homology() {
        // 0 -> Z --2--> Z -> 0: H_0 = Z/2, H_1 = 0
        let c = ChainComplex {
            term_labels: vec![vec!["a".into()], vec!["b".into()]],
            term_ranks: vec![1, 1],
            maps: vec![IntMat::from_rows(&[vec![2]])],
        };
        let h = homology(&c).unwrap();
        assert_eq!(h[0].0, 0);
        assert_eq!(h[0].1, vec![BigInt::from(2)]);
        assert_eq!(h[1], (0, vec![]));
    }

    #[test]
    fn zero_maps_give_full_homology() {
        let c = ChainComplex {
            term_labels: vec![vec!["a".into()], vec!["b".into()]],
            term_ranks: vec![1, 1],
            maps: vec![IntMat::zero(1, 1)],
        };
        let h = homology(&c).unwrap();
        assert_eq!(h[0], (1, vec![]));
        assert_eq!(h[1], (1, vec![]));
    }

    #[test]
    fn ghost_stalks_of_p2_vertex_fan() {
        // the xyz = 0 local model: rays (1,0),(0,1),(-1,-1)
        let fan = fans::p2();
        for cone in fan.cones.clone() {
            assert!(
                check_ghost_resolution(&fan, &cone).unwrap(),
                "stalk at {:?}",
                cone.generators
            );
        }
    }

    #[test]
    fn ghost_stalk_at_zero_cone_is_trivial() {
        let fan = fans::p2();
        let zero = Cone::zero(2);
        let c = ghost_resolution_complex(&fan, &zero).unwrap();
        // no nonzero faces: the complex is 0 -> M with cokernel M itself
        assert_eq!(c.term_ranks, vec![2]);
        assert!(check_ghost_resolution(&fan, &zero).unwrap());
    }

    #[test]
    fn ghost_stalk_at_ray() {
        let fan = fans::p2();
        let ray = Cone::new(2, vec![vec![1, 0]]).unwrap();
        let c = ghost_resolution_complex(&fan, &ray).unwrap();
        assert_eq!(c.term_ranks, vec![2, 1]);
        assert!(check_ghost_resolution(&fan, &ray).unwrap());
    }

    #[test]
    fn corrupted_delta_fails_exactness() {
        let fan = fans::p2();
        let max = Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let mut c = ghost_resolution_complex(&fan, &max).unwrap();
        assert!(c.is_complex());
        // flip one sign in d_2
        let m = &mut c.maps[1];
        'find: for i in 0..m.rows {
            for j in 0..m.cols {
                if !m[(i, j)].is_zero() {
                    let v = -m[(i, j)].clone();
                    m[(i, j)] = v;
                    break 'find;
                }
            }
        }
        let ok = if !c.is_complex() {
            false
        } else {
            homology(&c)
                .map(|h| h.iter().skip(1).all(|(f, t)| *f == 0 && t.is_empty()))
                .unwrap_or(false)
        };
        assert!(!ok);
    }

    #[test]
    fn chain_counts_match_combinatorics() {
        // simplicial 2-cone: nonzero faces = 2 rays + itself; chains of two
        // cones = ray < cone, two of them
        let fan = fans::p2();
        let max = Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let c = ghost_resolution_complex(&fan, &max).unwrap();
        assert_eq!(c.term_labels[1].len(), 3);
        assert_eq!(c.term_labels[2].len(), 2);
        assert_eq!(c.maps.len(), 2);
    }

    #[test]
    fn telescope_on_p2_with_linear_values() {
        // values of a single linear map L: residual must vanish
        let fan = fans::p2();
        let l = |v: &LatticeVector| vec![3 * v[0] - v[1], v[0] + 2 * v[1], -v[0]];
        let values: Vec<(LatticeVector, Vec<i64>)> =
            fan.rays().into_iter().map(|r| (r.clone(), l(&r))).collect();
        let h = PLHom::new(fan, values, 3).unwrap();
        let res = joint_lemma_trial(&h, &[0, 0, 0]).unwrap();
        assert!(res.iter().all(|r| r.iter().all(|&x| x == 0)));
    }

    #[test]
    fn telescope_on_p2_with_basis_values() {
        let fan = fans::p2();
        let rays = fan.rays();
        let values: Vec<(LatticeVector, Vec<i64>)> = rays
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = vec![0i64; 3];
                v[i] = 1;
                (r.clone(), v)
            })
            .collect();
        let h = PLHom::new(fan, values, 3).unwrap();
        let res = joint_lemma_trial(&h, &[0, 0, 0]).unwrap();
        assert!(res.iter().all(|r| r.iter().all(|&x| x == 0)), "{:?}", res);
    }

    #[test]
    fn four_ray_hand_telescope() {
        let fan = fans::from_rays_complete(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]])
            .unwrap();
        let values = vec![
            (vec![1, 0], vec![5]),
            (vec![0, 1], vec![-3]),
            (vec![-1, 0], vec![7]),
            (vec![0, -1], vec![2]),
        ];
        let h = PLHom::new(fan, values, 1).unwrap();
        let res = joint_lemma_trial(&h, &[0, 0, 0, 0]).unwrap();
        assert_eq!(res, [vec![0], vec![0]]);
    }

    #[test]
    fn fuzz_small_run_passes() {
        let report = fuzz_joint_lemma(0, 100, 12, 3).unwrap();
        assert!(report.pass);
        assert_eq!(report.trials.len(), 100);
    }

    #[test]
    fn fuzz_rejects_zero_trials() {
        assert!(matches!(
            fuzz_joint_lemma(0, 0, 12, 3),
            Err(LogtcError::Usage(_))
        ));
    }

    #[test]
    fn ghost_stalks_of_all_catalog_fans() {
        use crate::catalog::*;
        for space in [
            two_components_space(2).unwrap(),
            a1_surface_space(),
            dp4_space().unwrap(),
            a1_threefold_space().unwrap(),
        ] {
            for s in &space.strata {
                for cone in s.fan.cones.clone() {
                    assert!(
                        check_ghost_resolution(&s.fan, &cone).unwrap(),
                        "stalk at {:?} of {}",
                        cone.generators,
                        s.id
                    );
                }
            }
        }
    }
}
