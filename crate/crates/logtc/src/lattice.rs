//! Exact lattice and fan calculus: cones with cross-validated generator and
//! facet descriptions, quotient fans, completeness decisions, and the cyclic
//! ray order with primitive normals in rank 2.
//!
//! No floating point anywhere: angles are compared by half-plane sector and
//! integer cross products, duals are enumerated by brute force (valid for
//! rank <= 4 and <= 12 generators, which covers everything here).
//!
//! Cones need not be pointed. Complete rank-2 fans with exactly two
//! (antipodal) rays have half-plane maximal cones; for these the strict
//! common-face condition degenerates and validation only requires
//! intersections to be unions of fan members.

use crate::error::{LogtcError, Result};
use crate::intmat::{kernel_basis, smith_normal_form, IntMat};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::BTreeSet;

pub type LatticeVector = Vec<i64>;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> LatticeVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> LatticeVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> LatticeVector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[i64], c: i64) -> LatticeVector {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Divide by the gcd of the entries, preserving direction.
pub fn primitive(v: &[i64]) -> Result<LatticeVector> {
    if is_zero(v) {
        return Err(LogtcError::ZeroVector);
    }
    let g = v.iter().fold(0i64, |acc, &x| gcd(acc, x));
    Ok(v.iter().map(|x| x / g).collect())
}

/// Cross product in rank 2.
pub fn cross2(a: &[i64], b: &[i64]) -> i64 {
    debug_assert!(a.len() == 2 && b.len() == 2);
    a[0] * b[1] - a[1] * b[0]
}

/// Counterclockwise angular comparison of nonzero rank-2 vectors, exact.
/// Sorts by half-turn sector (angles [0, pi) before [pi, 2 pi)), then by
/// cross product within a sector. Reference direction is the positive x-axis.
pub fn ccw_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    fn sector(v: &[i64]) -> u8 {
        if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
            0
        } else {
            1
        }
    }
    let (sa, sb) = (sector(a), sector(b));
    if sa != sb {
        return sa.cmp(&sb);
    }
    // within an open half-plane, a precedes b iff cross(a, b) > 0
    cross2(a, b).cmp(&0).reverse()
}

fn small(b: &BigInt) -> i64 {
    b.to_i64().expect("lattice coordinate overflow")
}

fn row_matrix(vs: &[LatticeVector]) -> IntMat {
    IntMat::from_rows(&vs.to_vec())
}

/// A rational polyhedral cone with a cross-validated double description:
/// generators on one side, {x : facets.x >= 0, span_equations.x = 0} on the
/// other.
#[derive(Clone, Debug)]
pub struct Cone {
    pub rank: usize,
    /// Primitive, deduplicated, sorted generators.
    pub generators: Vec<LatticeVector>,
    pub dim: usize,
    /// Supporting inequalities; primitive normals, sorted.
    pub facets: Vec<LatticeVector>,
    /// Equations cutting out the linear span; primitive, sorted.
    pub span_equations: Vec<LatticeVector>,
}

impl Cone {
    pub fn new(rank: usize, generators: Vec<LatticeVector>) -> Result<Cone> {
        for g in &generators {
            if g.len() != rank {
                return Err(LogtcError::RankMismatch {
                    expected: rank,
                    got: g.len(),
                });
            }
        }
        let mut gens: Vec<LatticeVector> = Vec::new();
        for g in &generators {
            if !is_zero(g) {
                let p = primitive(g)?;
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        gens.sort();
        let dim = if gens.is_empty() {
            0
        } else {
            smith_normal_form(&row_matrix(&gens)).rank
        };
        let span_equations = span_annihilator(rank, &gens);
        let facets = enumerate_facets(rank, &gens, dim);
        let c = Cone {
            rank,
            generators: gens,
            dim,
            facets,
            span_equations,
        };
        c.cross_validate()?;
        Ok(c)
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::new(rank, vec![]).expect("zero cone")
    }

    fn cross_validate(&self) -> Result<()> {
        for g in &self.generators {
            if self.facets.iter().any(|n| dot(n, g) < 0)
                || self.span_equations.iter().any(|n| dot(n, g) != 0)
            {
                return Err(LogtcError::FanSheafError(format!(
                    "generator {:?} violates its own cone inequalities",
                    g
                )));
            }
        }
        Ok(())
    }

    /// Membership by the inequality description.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.span_equations.iter().all(|n| dot(n, v) == 0)
            && self.facets.iter().all(|n| dot(n, v) >= 0)
    }

    pub fn is_pointed(&self) -> bool {
        self.generators.iter().all(|g| !self.contains(&neg(g)))
    }

    /// Set-level equality of cones in the same lattice.
    pub fn same_cone(&self, other: &Cone) -> bool {
        self.rank == other.rank
            && self.dim == other.dim
            && self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    /// Does `face` arise as self ∩ n^⊥ for a set of supporting normals n?
    pub fn has_face(&self, face: &Cone) -> bool {
        if !face.generators.iter().all(|g| self.contains(g)) {
            return false;
        }
        if face.dim == self.dim {
            return self.same_cone(face);
        }
        let cut: Vec<&LatticeVector> = self
            .facets
            .iter()
            .filter(|n| face.generators.iter().all(|g| dot(n, g) == 0))
            .collect();
        let kept: Vec<LatticeVector> = self
            .generators
            .iter()
            .filter(|g| cut.iter().all(|n| dot(n, g) == 0))
            .cloned()
            .collect();
        match Cone::new(self.rank, kept) {
            Ok(c) => c.same_cone(face),
            Err(_) => false,
        }
    }

    /// All faces, including self. The zero cone appears iff it is a face
    /// (always for pointed cones, never for cones with lineality).
    pub fn faces(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        let nf = self.facets.len();
        assert!(nf <= 20, "facet count exceeds brute-force budget");
        for mask in 0..(1u32 << nf) {
            let cut: Vec<&LatticeVector> = (0..nf)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &self.facets[i])
                .collect();
            let kept: Vec<LatticeVector> = self
                .generators
                .iter()
                .filter(|g| cut.iter().all(|n| dot(n, g) == 0))
                .cloned()
                .collect();
            let Ok(c) = Cone::new(self.rank, kept) else {
                continue;
            };
            if self.has_face(&c) && !out.iter().any(|x| x.same_cone(&c)) {
                out.push(c);
            }
        }
        out
    }

    /// Intersection with another cone in the same lattice, by brute-force
    /// ray enumeration over the combined constraint system.
    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.rank, other.rank);
        let r = self.rank;
        if r == 0 {
            return Cone::zero(0);
        }
        let mut equations: Vec<LatticeVector> = Vec::new();
        let mut halves: Vec<LatticeVector> = Vec::new();
        equations.extend(self.span_equations.iter().cloned());
        equations.extend(other.span_equations.iter().cloned());
        halves.extend(self.facets.iter().cloned());
        halves.extend(other.facets.iter().cloned());
        let ok = |v: &[i64]| -> bool {
            equations.iter().all(|n| dot(n, v) == 0) && halves.iter().all(|n| dot(n, v) >= 0)
        };
        let all_normals: Vec<LatticeVector> =
            equations.iter().chain(halves.iter()).cloned().collect();
        let mut gens: BTreeSet<LatticeVector> = BTreeSet::new();
        let idx: Vec<usize> = (0..all_normals.len()).collect();
        for subset in subsets_upto(&idx, r - 1) {
            let rows: Vec<LatticeVector> = subset.iter().map(|&i| all_normals[i].clone()).collect();
            let mat = if rows.is_empty() {
                IntMat::zero(0, r)
            } else {
                row_matrix(&rows)
            };
            for col in kernel_basis(&mat) {
                let v: LatticeVector = col.iter().map(small).collect();
                if is_zero(&v) {
                    continue;
                }
                let p = primitive(&v).unwrap();
                if ok(&p) {
                    gens.insert(p.clone());
                }
                let n = neg(&p);
                if ok(&n) {
                    gens.insert(n);
                }
            }
        }
        Cone::new(self.rank, gens.into_iter().collect()).expect("intersection cone")
    }
}

fn subsets_upto(items: &[usize], max_size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 1..=max_size.min(items.len()) {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, vec![])];
        while let Some((start, cur)) = stack.pop() {
            if cur.len() == k {
                out.push(cur);
                continue;
            }
            for i in start..items.len() {
                let mut next = cur.clone();
                next.push(items[i]);
                stack.push((i + 1, next));
            }
        }
    }
    out
}

/// A lattice basis of the saturated span of the given vectors: the kernel
/// of the annihilator functionals.
pub fn saturated_span_basis(rank: usize, gens: &[LatticeVector]) -> Vec<LatticeVector> {
    let ann = span_annihilator(rank, gens);
    let mat = if ann.is_empty() {
        IntMat::zero(0, rank)
    } else {
        row_matrix(&ann)
    };
    kernel_basis(&mat)
        .into_iter()
        .map(|col| col.iter().map(small).collect())
        .collect()
}

/// Primitive basis of the functionals vanishing on the span of `gens`.
fn span_annihilator(rank: usize, gens: &[LatticeVector]) -> Vec<LatticeVector> {
    if gens.is_empty() {
        return (0..rank)
            .map(|i| {
                let mut e = vec![0i64; rank];
                e[i] = 1;
                e
            })
            .collect();
    }
    let mut eqs: Vec<LatticeVector> = kernel_basis(&row_matrix(gens))
        .into_iter()
        .map(|col| primitive(&col.iter().map(small).collect::<Vec<_>>()).unwrap())
        .collect();
    eqs.sort();
    eqs
}

/// Brute-force facet enumeration: primitive normals supporting the cone and
/// vanishing on a (dim-1)-dimensional set of generators.
fn enumerate_facets(rank: usize, gens: &[LatticeVector], dim: usize) -> Vec<LatticeVector> {
    if dim == 0 {
        return vec![];
    }
    let mut candidates: BTreeSet<LatticeVector> = BTreeSet::new();
    let idx: Vec<usize> = (0..gens.len()).collect();
    for subset in subsets_upto(&idx, rank.saturating_sub(1)) {
        let rows: Vec<LatticeVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        let mat = if rows.is_empty() {
            IntMat::zero(0, rank)
        } else {
            row_matrix(&rows)
        };
        for col in kernel_basis(&mat) {
            let v: LatticeVector = col.iter().map(small).collect();
            if is_zero(&v) {
                continue;
            }
            for cand in [primitive(&v).unwrap(), primitive(&neg(&v)).unwrap()] {
                if gens.iter().all(|g| dot(&cand, g) == 0) {
                    continue; // annihilates the span: an equation, not a facet
                }
                if gens.iter().all(|g| dot(&cand, g) >= 0) {
                    candidates.insert(cand);
                }
            }
        }
    }
    // keep one normal per genuine facet: zero set of generators spans dim-1
    let mut by_support: std::collections::BTreeMap<Vec<bool>, LatticeVector> = Default::default();
    for n in candidates {
        let support: Vec<bool> = gens.iter().map(|g| dot(&n, g) == 0).collect();
        let zero_gens: Vec<LatticeVector> = gens
            .iter()
            .zip(&support)
            .filter(|(_, &z)| z)
            .map(|(g, _)| g.clone())
            .collect();
        let zdim = if zero_gens.is_empty() {
            0
        } else {
            smith_normal_form(&row_matrix(&zero_gens)).rank
        };
        if zdim != dim - 1 {
            continue;
        }
        by_support.entry(support).or_insert(n);
    }
    let mut facets: Vec<LatticeVector> = by_support.into_values().collect();
    facets.sort();
    facets
}

/// A rational polyhedral fan: a face-closed list of cones whose pairwise
/// intersections are common faces (relaxed to union-of-members when a
/// half-plane cone is involved).
#[derive(Clone, Debug)]
pub struct Fan {
    pub rank: usize,
    pub cones: Vec<Cone>,
}

impl Fan {
    pub fn new(rank: usize, seed_cones: Vec<Cone>) -> Result<Fan> {
        let mut cones: Vec<Cone> = Vec::new();
        fn push(c: Cone, cones: &mut Vec<Cone>) {
            if !cones.iter().any(|x| x.same_cone(&c)) {
                cones.push(c);
            }
        }
        push(Cone::zero(rank), &mut cones);
        for c in seed_cones {
            if c.rank != rank {
                return Err(LogtcError::RankMismatch {
                    expected: rank,
                    got: c.rank,
                });
            }
            for f in c.faces() {
                push(f, &mut cones);
            }
            push(c, &mut cones);
        }
        cones.sort_by(|a, b| (a.dim, &a.generators).cmp(&(b.dim, &b.generators)));
        let fan = Fan { rank, cones };
        fan.validate()?;
        Ok(fan)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.cones.len() {
            for j in (i + 1)..self.cones.len() {
                let (a, b) = (&self.cones[i], &self.cones[j]);
                if a.same_cone(b) {
                    return Err(LogtcError::FanSheafError("duplicate cones".into()));
                }
                let int = a.intersect(b);
                if a.has_face(&int) && b.has_face(&int) {
                    if !self.cones.iter().any(|c| c.same_cone(&int)) {
                        return Err(LogtcError::FanSheafError(
                            "intersection cone missing from fan".into(),
                        ));
                    }
                    continue;
                }
                // degenerate half-plane fans: accept unions of members
                let degenerate_ok = (!a.is_pointed() || !b.is_pointed())
                    && int.generators.iter().all(|g| {
                        self.cones
                            .iter()
                            .any(|c| c.contains(g) && a.contains_cone(c) && b.contains_cone(c))
                    });
                if !degenerate_ok {
                    return Err(LogtcError::FanSheafError(format!(
                        "cones {} and {} do not meet along a common face",
                        i, j
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero_fan() -> Fan {
        Fan {
            rank: 0,
            cones: vec![Cone::zero(0)],
        }
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.iter().position(|x| x.same_cone(c))
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.index_of(c).is_some()
    }

    /// Primitive generators of the one-dimensional pointed cones of the fan.
    pub fn rays(&self) -> Vec<LatticeVector> {
        self.cones
            .iter()
            .filter(|c| c.dim == 1 && c.is_pointed())
            .map(|c| c.generators[0].clone())
            .collect()
    }

    /// Cones not contained in any larger cone of the fan.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self.cones.iter().any(|d| {
                    !d.same_cone(c) && c.generators.iter().all(|g| d.contains(g)) && d.dim >= c.dim
                })
            })
            .collect()
    }

    pub fn supports(&self, v: &[i64]) -> bool {
        self.cones.iter().any(|c| c.contains(v))
    }

    pub fn minimal_cone_containing(&self, v: &[i64]) -> Option<&Cone> {
        self.cones
            .iter()
            .filter(|c| c.contains(v))
            .min_by_key(|c| c.dim)
    }
}

impl Cone {
    fn contains_cone(&self, other: &Cone) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }
}

/// Saturated quotient data for M -> M/<t>.
pub struct LatticeQuotient {
    /// Projection matrix, (rank - d) x rank; rows are functionals.
    pub projection: Vec<LatticeVector>,
    pub quotient_rank: usize,
}

/// Projection M -> M/<t>_sat as an integer matrix whose rows form a basis of
/// the functionals vanishing on t. Saturation comes from Smith normal form
/// inside the kernel computation.
pub fn lattice_quotient(rank: usize, span: &[LatticeVector]) -> LatticeQuotient {
    if span.is_empty() || span.iter().all(|v| is_zero(v)) {
        return LatticeQuotient {
            projection: (0..rank)
                .map(|i| {
                    let mut e = vec![0i64; rank];
                    e[i] = 1;
                    e
                })
                .collect(),
            quotient_rank: rank,
        };
    }
    let mut t = IntMat::zero(span.len(), rank);
    for (i, g) in span.iter().enumerate() {
        for (j, &x) in g.iter().enumerate() {
            t[(i, j)] = BigInt::from(x);
        }
    }
    let basis = kernel_basis(&t);
    let projection: Vec<LatticeVector> = basis
        .iter()
        .map(|col| col.iter().map(small).collect())
        .collect();
    LatticeQuotient {
        quotient_rank: projection.len(),
        projection,
    }
}

pub fn apply_projection(proj: &[LatticeVector], v: &[i64]) -> LatticeVector {
    proj.iter().map(|row| dot(row, v)).collect()
}

/// Quotient fan Σ/t: images of the cones of Σ that contain t, in the
/// saturated quotient lattice. Returns the fan and the projection matrix.
pub fn quotient_fan(f: &Fan, t: &Cone) -> Result<(Fan, Vec<LatticeVector>)> {
    if !f.contains_cone(t) {
        return Err(LogtcError::ConeNotInFan(format!("{:?}", t.generators)));
    }
    let q = lattice_quotient(f.rank, &t.generators);
    let mut cones = Vec::new();
    for c in &f.cones {
        if !c.has_face(t) {
            continue;
        }
        let gens: Vec<LatticeVector> = c
            .generators
            .iter()
            .map(|g| apply_projection(&q.projection, g))
            .filter(|g| !is_zero(g))
            .collect();
        cones.push(Cone::new(q.quotient_rank, gens)?);
    }
    let fan = Fan::new(q.quotient_rank, cones)?;
    Ok((fan, q.projection))
}

/// Decide completeness. Exact for rank <= 2; for rank 3 a necessary
/// condition (facet pairing plus dual-graph connectedness) is checked and
/// the level is reported as "facet-pairing".
pub fn is_complete(f: &Fan) -> Result<(bool, &'static str)> {
    match f.rank {
        0 => Ok((true, "exact")),
        1 => {
            let rays = f.rays();
            Ok((rays.contains(&vec![1]) && rays.contains(&vec![-1]), "exact"))
        }
        2 => Ok((rank2_complete(f)?, "exact")),
        3 => {
            let maxes: Vec<&Cone> = f.maximal_cones();
            if maxes.is_empty() || maxes.iter().any(|c| c.dim != 3) {
                return Ok((false, "facet-pairing"));
            }
            let mut adj = vec![BTreeSet::new(); maxes.len()];
            for (i, c) in maxes.iter().enumerate() {
                for face in c.faces().into_iter().filter(|x| x.dim == 2) {
                    let sharers: Vec<usize> = maxes
                        .iter()
                        .enumerate()
                        .filter(|(j, d)| *j != i && d.has_face(&face))
                        .map(|(j, _)| j)
                        .collect();
                    if sharers.len() != 1 {
                        return Ok((false, "facet-pairing"));
                    }
                    adj[i].insert(sharers[0]);
                }
            }
            let mut seen = vec![false; maxes.len()];
            let mut stack = vec![0usize];
            while let Some(i) = stack.pop() {
                if seen[i] {
                    continue;
                }
                seen[i] = true;
                stack.extend(adj[i].iter().copied());
            }
            Ok((seen.iter().all(|&s| s), "facet-pairing"))
        }
        r => Err(LogtcError::RankUnsupported(r)),
    }
}

fn rank2_complete(f: &Fan) -> Result<bool> {
    let mut rays = f.rays();
    if rays.len() < 2 {
        return Ok(false);
    }
    rays.sort_by(|a, b| ccw_cmp(a, b));
    let n = rays.len();
    let maxes = f.maximal_cones();
    let two_cones: Vec<&&Cone> = maxes.iter().filter(|c| c.dim == 2).collect();
    if two_cones.len() != n {
        return Ok(false);
    }
    let mut used: Vec<usize> = Vec::new();
    for i in 0..n {
        let a = &rays[i];
        let b = &rays[(i + 1) % n];
        let expected: Cone = if cross2(a, b) > 0 {
            Cone::new(2, vec![a.clone(), b.clone()])?
        } else if *b == neg(a) {
            // antipodal pair: the CCW half-plane from a to b
            let mid = vec![-a[1], a[0]];
            Cone::new(2, vec![a.clone(), b.clone(), mid])?
        } else {
            return Ok(false); // CCW gap of more than a half turn
        };
        let Some(pos) = two_cones.iter().position(|c| c.same_cone(&expected)) else {
            return Ok(false);
        };
        if used.contains(&pos) {
            return Ok(false);
        }
        used.push(pos);
    }
    Ok(used.len() == n)
}

/// Rays of a complete rank-2 fan in counterclockwise order, starting from
/// the lexicographically smallest primitive generator.
pub fn cyclic_ray_order(f: &Fan) -> Result<Vec<LatticeVector>> {
    if f.rank != 2 || !is_complete(f)?.0 {
        return Err(LogtcError::NotCompleteRank2);
    }
    let mut rays = f.rays();
    rays.sort_by(|a, b| ccw_cmp(a, b));
    let start = rays
        .iter()
        .enumerate()
        .min_by_key(|(_, r)| (*r).clone())
        .map(|(i, _)| i)
        .unwrap();
    rays.rotate_left(start);
    Ok(rays)
}

/// The primitive normal d to ray_i with <d, ray_i> = 0 and <d, ray_next> > 0.
/// The rays must be consecutive in the cyclic order.
pub fn primitive_normal(f: &Fan, ray_i: &[i64], ray_next: &[i64]) -> Result<LatticeVector> {
    let order = cyclic_ray_order(f)?;
    let n = order.len();
    let pos = order
        .iter()
        .position(|r| r == ray_i)
        .ok_or_else(|| LogtcError::ConeNotInFan(format!("{:?}", ray_i)))?;
    if order[(pos + 1) % n] != ray_next {
        return Err(LogtcError::NonAdjacentRays(
            format!("{:?}", ray_i),
            format!("{:?}", ray_next),
        ));
    }
    let d = primitive(&[-ray_i[1], ray_i[0]])?;
    if dot(&d, ray_next) > 0 {
        Ok(d)
    } else {
        Ok(neg(&d))
    }
}

/// True iff every maximal cone of a complete rank-2 fan is unimodular.
pub fn is_smooth(f: &Fan) -> Result<bool> {
    if f.rank != 2 || !is_complete(f)?.0 {
        return Err(LogtcError::NotCompleteRank2);
    }
    let order = cyclic_ray_order(f)?;
    let n = order.len();
    Ok((0..n).all(|i| cross2(&order[i], &order[(i + 1) % n]).abs() == 1))
}

/// Builders shared by the catalog and the tests.
pub mod fans {
    use super::*;

    /// The complete fan of the projective plane: rays (1,0), (0,1), (-1,-1).
    pub fn p2() -> Fan {
        from_rays_complete(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap()
    }

    /// Complete rank-1 fan with rays ±1.
    pub fn line() -> Fan {
        Fan::new(
            1,
            vec![
                Cone::new(1, vec![vec![1]]).unwrap(),
                Cone::new(1, vec![vec![-1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    /// Complete rank-2 fan spanned by consecutive rays in CCW order.
    /// With exactly two antipodal rays this builds the half-plane fan.
    pub fn from_rays_complete(rays: &[LatticeVector]) -> Result<Fan> {
        let mut sorted = rays.to_vec();
        sorted.sort_by(|a, b| ccw_cmp(a, b));
        let n = sorted.len();
        let mut cones = Vec::new();
        for i in 0..n {
            let a = sorted[i].clone();
            let b = sorted[(i + 1) % n].clone();
            if n == 2 && b == neg(&a) {
                let mid = vec![-a[1], a[0]];
                cones.push(Cone::new(2, vec![a.clone(), b.clone(), mid])?);
                cones.push(Cone::new(2, vec![a])?);
                cones.push(Cone::new(2, vec![b])?);
            } else {
                cones.push(Cone::new(2, vec![a, b])?);
            }
        }
        Fan::new(2, cones)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&[2, -4]).unwrap(), vec![1, -2]);
        assert_eq!(primitive(&[1, 1]).unwrap(), vec![1, 1]);
        assert_eq!(primitive(&[0, -6, 3]).unwrap(), vec![0, -2, 1]);
        assert!(matches!(primitive(&[0, 0]), Err(LogtcError::ZeroVector)));
    }

    #[test]
    fn cone_cross_validation_on_box() {
        let c = Cone::new(2, vec![vec![1, 0], vec![1, 2]]).unwrap();
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let inside = c.contains(&[x, y]);
                // nonnegative rational combination of (1,0),(1,2)
                let comb = y >= 0 && 2 * x - y >= 0;
                assert_eq!(inside, comb, "({}, {})", x, y);
            }
        }
    }

    #[test]
    fn quotient_of_p2_by_ray_is_complete_line() {
        let f = fans::p2();
        let ray = Cone::new(2, vec![vec![1, 0]]).unwrap();
        let (q, proj) = quotient_fan(&f, &ray).unwrap();
        assert_eq!(q.rank, 1);
        let mut rays = q.rays();
        rays.sort();
        assert_eq!(rays, vec![vec![-1], vec![1]]);
        assert!(is_complete(&q).unwrap().0);
        assert_eq!(apply_projection(&proj, &[1, 0]), vec![0]);
    }

    #[test]
    fn quotient_by_zero_cone_is_identity() {
        let f = fans::p2();
        let (q, _) = quotient_fan(&f, &Cone::zero(2)).unwrap();
        assert_eq!(q.rank, 2);
        assert_eq!(q.cones.len(), f.cones.len());
    }

    #[test]
    fn quotient_by_maximal_cone_is_zero_fan() {
        let f = fans::p2();
        let max = Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let (q, _) = quotient_fan(&f, &max).unwrap();
        assert_eq!(q.rank, 0);
        assert_eq!(q.cones.len(), 1);
    }

    #[test]
    fn quotients_of_complete_fans_are_complete() {
        for fan in [
            fans::p2(),
            fans::from_rays_complete(&[vec![0, 1], vec![-1, -1], vec![1, -1]]).unwrap(),
            fans::from_rays_complete(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap(),
        ] {
            for cone in fan.cones.clone() {
                let (q, _) = quotient_fan(&fan, &cone).unwrap();
                if q.rank <= 2 {
                    assert!(is_complete(&q).unwrap().0, "quotient by {:?}", cone.generators);
                }
            }
        }
    }

    #[test]
    fn completeness_decisions() {
        assert!(is_complete(&fans::p2()).unwrap().0);
        let quadrant =
            Fan::new(2, vec![Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap()]).unwrap();
        assert!(!is_complete(&quadrant).unwrap().0);
        let two_rays = Fan::new(
            2,
            vec![
                Cone::new(2, vec![vec![1, 0]]).unwrap(),
                Cone::new(2, vec![vec![0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(!is_complete(&two_rays).unwrap().0);
    }

    #[test]
    fn cyclic_order_examples() {
        let dp = fans::from_rays_complete(&[vec![0, 1], vec![-1, -1], vec![1, -1]]).unwrap();
        assert_eq!(
            cyclic_ray_order(&dp).unwrap(),
            vec![vec![-1, -1], vec![1, -1], vec![0, 1]]
        );
        assert_eq!(
            cyclic_ray_order(&fans::p2()).unwrap(),
            vec![vec![-1, -1], vec![1, 0], vec![0, 1]]
        );
    }

    #[test]
    fn half_plane_fan_cyclic_order() {
        let f = fans::from_rays_complete(&[vec![1, 0], vec![-1, 0]]).unwrap();
        assert_eq!(f.rays().len(), 2);
        assert!(is_complete(&f).unwrap().0);
        assert_eq!(cyclic_ray_order(&f).unwrap(), vec![vec![-1, 0], vec![1, 0]]);
    }

    #[test]
    fn primitive_normals_at_del_pezzo_vertex() {
        let dp = fans::from_rays_complete(&[vec![0, 1], vec![-1, -1], vec![1, -1]]).unwrap();
        assert_eq!(primitive_normal(&dp, &[0, 1], &[-1, -1]).unwrap(), vec![-1, 0]);
        assert_eq!(primitive_normal(&dp, &[-1, -1], &[1, -1]).unwrap(), vec![1, -1]);
        assert_eq!(primitive_normal(&dp, &[1, -1], &[0, 1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn normal_properties_hold() {
        let f = fans::p2();
        let order = cyclic_ray_order(&f).unwrap();
        let n = order.len();
        for i in 0..n {
            let d = primitive_normal(&f, &order[i], &order[(i + 1) % n]).unwrap();
            assert_eq!(dot(&d, &order[i]), 0);
            assert!(dot(&d, &order[(i + 1) % n]) > 0);
            assert_eq!(d.iter().fold(0, |a, &x| gcd(a, x)), 1);
        }
        assert!(matches!(
            primitive_normal(&f, &order[0], &order[2]),
            Err(LogtcError::NonAdjacentRays(_, _))
        ));
    }

    #[test]
    fn smoothness_examples() {
        assert!(is_smooth(&fans::p2()).unwrap());
        let f =
            fans::from_rays_complete(&[vec![1, 0], vec![1, 2], vec![-1, 0], vec![0, -1]]).unwrap();
        assert!(!is_smooth(&f).unwrap());
        let pm =
            fans::from_rays_complete(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap();
        assert!(is_smooth(&pm).unwrap());
    }

    #[test]
    fn cyclic_order_is_permutation_spanning_maximal_cones() {
        for fan in [
            fans::p2(),
            fans::from_rays_complete(&[vec![0, 1], vec![-1, -1], vec![1, -1]]).unwrap(),
            fans::from_rays_complete(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap(),
        ] {
            let order = cyclic_ray_order(&fan).unwrap();
            let mut sorted = order.clone();
            sorted.sort();
            let mut rays = fan.rays();
            rays.sort();
            assert_eq!(sorted, rays);
            let n = order.len();
            let mut seen = Vec::new();
            for i in 0..n {
                let sector =
                    Cone::new(2, vec![order[i].clone(), order[(i + 1) % n].clone()]).unwrap();
                let idx = fan.index_of(&sector).expect("consecutive rays span a cone");
                assert!(!seen.contains(&idx));
                seen.push(idx);
            }
            assert_eq!(seen.len(), fan.maximal_cones().len());
        }
    }
}
