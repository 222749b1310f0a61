//! The stratified-space model: a poset of strata carrying fans, generization
//! identifications between them, and the divisor system mapping monomials to
//! effective boundary divisors on component closures.
//!
//! The supported inputs are toric-model spaces: every stratum closure is a
//! toric variety with torus-invariant boundary divisors named by the deeper
//! strata, and the divisor system is linear in the monomial with integral
//! functionals. Viability is an input-format guarantee in this class: the
//! named divisors are global on the component closures.

use crate::error::{LogtcError, Result};
use crate::lattice::{
    apply_projection, cross2, dot, is_complete, neg, primitive, quotient_fan, sub, Cone, Fan,
    LatticeVector,
};
use crate::monoid::{monoid_presentation, BinomialRelation};
use crate::plf::MomentComplex;
use crate::poly::{LaurentPolynomial, Rat};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct Stratum {
    pub id: String,
    pub codim: usize,
    pub fan: Fan,
    pub chart_vars: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Generization {
    pub lower: String,
    pub upper: String,
    /// Ray indices in the lower stratum's fan spanning the upper's cone.
    pub cone_rays: Vec<usize>,
    /// Projection M_lower -> M_upper (rows are functionals).
    pub projection: Vec<LatticeVector>,
}

#[derive(Clone, Debug)]
pub struct DivisorMapEntry {
    pub m: LatticeVector,
    pub divisor: Vec<(String, i64)>,
}

#[derive(Clone, Debug)]
pub struct DivisorData {
    pub component: String,
    pub stratum: String,
    pub map: Vec<DivisorMapEntry>,
}

/// Optional local-model annotation: a monoid presentation attached to a
/// stratum (used by the two-components catalog to carry the parameter r).
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub stratum: String,
    pub index: i64,
    pub generators: Vec<LatticeVector>,
    pub relations: Vec<BinomialRelation>,
    pub relation_text: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct GtcSpace {
    pub dimension: usize,
    pub strata: Vec<Stratum>,
    /// All strict order pairs (lower, upper), transitively closed.
    pub poset: Vec<(String, String)>,
    pub generization: Vec<Generization>,
    pub divisor_data: Vec<DivisorData>,
    pub local_models: Vec<LocalModel>,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, witness: Option<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            pass,
            witness,
        });
    }
}

impl GtcSpace {
    pub fn stratum(&self, id: &str) -> Result<&Stratum> {
        self.strata
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| LogtcError::NoSuchStratum(id.to_string()))
    }

    pub fn leq(&self, lower: &str, upper: &str) -> bool {
        lower == upper
            || self
                .poset
                .iter()
                .any(|(l, u)| l == lower && u == upper)
    }

    pub fn components(&self) -> Vec<&Stratum> {
        self.strata.iter().filter(|s| s.codim == 0).collect()
    }

    pub fn walls(&self) -> Vec<&Stratum> {
        self.strata.iter().filter(|s| s.codim == 1).collect()
    }

    pub fn joints(&self) -> Vec<&Stratum> {
        self.strata.iter().filter(|s| s.codim == 2).collect()
    }

    /// Strata above s (inclusive): the open star of s.
    pub fn open_star(&self, id: &str) -> Result<Vec<&Stratum>> {
        self.stratum(id)?;
        Ok(self
            .strata
            .iter()
            .filter(|t| self.leq(id, &t.id))
            .collect())
    }

    /// Components adjacent to a wall, sorted by id.
    pub fn wall_components(&self, wall: &str) -> Result<Vec<&Stratum>> {
        let w = self.stratum(wall)?;
        if w.codim != 1 {
            return Err(LogtcError::NoSuchStratum(format!("{} is not a wall", wall)));
        }
        let mut out: Vec<&Stratum> = self
            .strata
            .iter()
            .filter(|s| s.codim == 0 && self.leq(wall, &s.id))
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(out)
    }

    /// Walls above a joint, i.e. the walls whose closures contain it.
    pub fn joint_walls(&self, joint: &str) -> Result<Vec<&Stratum>> {
        let j = self.stratum(joint)?;
        if j.codim != 2 {
            return Err(LogtcError::NoSuchStratum(format!("{} is not a joint", joint)));
        }
        Ok(self
            .strata
            .iter()
            .filter(|s| s.codim == 1 && self.leq(joint, &s.id))
            .collect())
    }

    /// Joints below a wall.
    pub fn wall_joints(&self, wall: &str) -> Result<Vec<&Stratum>> {
        self.stratum(wall)?;
        Ok(self
            .strata
            .iter()
            .filter(|s| s.codim == 2 && self.leq(&s.id, wall))
            .collect())
    }

    pub fn generization_entry(&self, lower: &str, upper: &str) -> Option<&Generization> {
        self.generization
            .iter()
            .find(|g| g.lower == lower && g.upper == upper)
    }

    /// The cone of Σ_lower corresponding to the stratum `upper`.
    pub fn cone_of(&self, lower: &str, upper: &str) -> Result<Cone> {
        let low = self.stratum(lower)?;
        if lower == upper {
            return Ok(Cone::zero(low.fan.rank));
        }
        let entry = self.generization_entry(lower, upper).ok_or_else(|| {
            LogtcError::FanSheafError(format!("no generization entry {} -> {}", lower, upper))
        })?;
        let rays = low.fan.rays();
        let gens: Vec<LatticeVector> = entry
            .cone_rays
            .iter()
            .map(|&i| {
                rays.get(i).cloned().ok_or_else(|| {
                    LogtcError::FanSheafError(format!(
                        "generization {} -> {} references ray {} of a fan with {} rays",
                        lower,
                        upper,
                        i,
                        rays.len()
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Cone::new(low.fan.rank, gens)
    }

    /// The stratum id a cone of Σ_lower corresponds to under i_lower.
    pub fn stratum_of_cone(&self, lower: &str, cone: &Cone) -> Result<String> {
        let low = self.stratum(lower)?;
        if cone.dim == 0 {
            return Ok(lower.to_string());
        }
        for g in &self.generization {
            if g.lower != lower {
                continue;
            }
            let c = self.cone_of(lower, &g.upper)?;
            if c.same_cone(cone) {
                return Ok(g.upper.clone());
            }
        }
        Err(LogtcError::FanSheafError(format!(
            "no stratum assigned to cone {:?} of {}",
            cone.generators, low.id
        )))
    }

    /// The linear functionals of the divisor system mu_{component, stratum}:
    /// divisor name -> row, reconstructed from the stored samples.
    pub fn mu_functionals(
        &self,
        component: &str,
        stratum: &str,
    ) -> Result<BTreeMap<String, Vec<Rat>>> {
        let s = self.stratum(stratum)?;
        let data = self
            .divisor_data
            .iter()
            .find(|d| d.component == component && d.stratum == stratum)
            .ok_or_else(|| {
                LogtcError::FanSheafError(format!(
                    "no divisor data for component {} at stratum {}",
                    component, stratum
                ))
            })?;
        let rank = s.fan.rank;
        let names: BTreeSet<String> = data
            .map
            .iter()
            .flat_map(|e| e.divisor.iter().map(|(n, _)| n.clone()))
            .collect();
        let samples: Vec<&DivisorMapEntry> = data.map.iter().collect();
        let mat = crate::intmat::IntMat::from_rows(
            &samples.iter().map(|e| e.m.clone()).collect::<Vec<_>>(),
        );
        let mut out = BTreeMap::new();
        for name in names {
            let rhs: Vec<num_bigint::BigInt> = samples
                .iter()
                .map(|e| {
                    num_bigint::BigInt::from(
                        e.divisor
                            .iter()
                            .find(|(n, _)| n == &name)
                            .map(|(_, m)| *m)
                            .unwrap_or(0),
                    )
                })
                .collect();
            let row = crate::intmat::solve_rational(&mat, &rhs).ok_or_else(|| {
                LogtcError::FanSheafError(format!(
                    "divisor system for {} at {} is not additive on {}",
                    component, stratum, name
                ))
            })?;
            // verify the solve against every sample (solve_rational only
            // guarantees consistency, we want exact agreement)
            for (e, want) in samples.iter().zip(&rhs) {
                let got: Rat = e
                    .m
                    .iter()
                    .zip(&row)
                    .map(|(x, r)| Rat::from(num_bigint::BigInt::from(*x)) * r)
                    .sum();
                if got != Rat::from(want.clone()) {
                    return Err(LogtcError::FanSheafError(format!(
                        "divisor system sample mismatch for {} at {} on {}",
                        component, stratum, name
                    )));
                }
            }
            out.insert(name, row.iter().take(rank).cloned().collect());
        }
        Ok(out)
    }

    /// The divisor mu(m) on the component near `stratum`, as a formal sum of
    /// named divisors; errors when m is outside the component's cone.
    pub fn divisor_of_monomial(
        &self,
        component: &str,
        stratum: &str,
        m: &[i64],
    ) -> Result<Vec<(String, Rat)>> {
        let cone = self.cone_of(stratum, component)?;
        if !cone.contains(m) {
            return Err(LogtcError::NotInCone(format!("{:?}", m)));
        }
        self.divisor_of_monomial_linear(component, stratum, m)
    }

    /// Linear extension of mu to all of M_stratum (possibly non-effective).
    pub fn divisor_of_monomial_linear(
        &self,
        component: &str,
        stratum: &str,
        m: &[i64],
    ) -> Result<Vec<(String, Rat)>> {
        let functionals = self.mu_functionals(component, stratum)?;
        let mut out = Vec::new();
        for (name, row) in functionals {
            let c: Rat = m
                .iter()
                .zip(&row)
                .map(|(x, r)| Rat::from(num_bigint::BigInt::from(*x)) * r)
                .sum();
            if !c.is_zero() {
                out.push((name, c));
            }
        }
        Ok(out)
    }

    /// Full cross-validation; failures become report entries with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.check_poset(&mut report);
        self.check_fans(&mut report);
        self.check_generization(&mut report);
        self.check_triples(&mut report);
        self.check_divisor_system(&mut report);
        self.check_mdc(&mut report);
        self.check_wall_commutativity(&mut report);
        self.check_viability_bookkeeping(&mut report);
        report
    }

    fn check_poset(&self, report: &mut ValidationReport) {
        let mut pass = true;
        let mut witness = None;
        for (l, u) in &self.poset {
            let (sl, su) = match (self.stratum(l), self.stratum(u)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => {
                    pass = false;
                    witness = Some(format!("unknown stratum in pair ({}, {})", l, u));
                    break;
                }
            };
            if sl.codim <= su.codim {
                pass = false;
                witness = Some(format!("codim does not drop along {} < {}", l, u));
                break;
            }
            // transitivity
            for (l2, u2) in &self.poset {
                if l2 == u && !self.leq(l, u2) {
                    pass = false;
                    witness = Some(format!("poset not transitively closed at {} < {} < {}", l, u, u2));
                }
            }
        }
        report.push("poset-order", pass, witness);
        let mut rank_ok = true;
        let mut rank_witness = None;
        for s in &self.strata {
            if s.fan.rank != s.codim {
                rank_ok = false;
                rank_witness = Some(format!("stratum {}: fan rank {} != codim {}", s.id, s.fan.rank, s.codim));
            }
        }
        report.push("fan-rank-equals-codim", rank_ok, rank_witness);
    }

    fn check_fans(&self, report: &mut ValidationReport) {
        let mut pass = true;
        let mut witness = None;
        for s in &self.strata {
            match is_complete(&s.fan) {
                Ok((true, _)) => {}
                Ok((false, level)) => {
                    pass = false;
                    witness = Some(format!("fan at {} incomplete ({} check)", s.id, level));
                }
                Err(e) => {
                    pass = false;
                    witness = Some(format!("fan at {}: {}", s.id, e));
                }
            }
        }
        report.push("fan-sheaf-complete", pass, witness);
    }

    /// Condition (c1): each generization identifies the quotient fan with
    /// the upper fan, compatibly with the stratum assignment.
    fn check_generization(&self, report: &mut ValidationReport) {
        let mut pass = true;
        let mut witness = None;
        'outer: for (l, u) in &self.poset {
            let (low, up) = (self.stratum(l).unwrap(), self.stratum(u).unwrap());
            let Some(entry) = self.generization_entry(l, u) else {
                pass = false;
                witness = Some(format!("missing generization entry {} -> {}", l, u));
                break;
            };
            let cone = match self.cone_of(l, u) {
                Ok(c) => c,
                Err(e) => {
                    pass = false;
                    witness = Some(format!("{} -> {}: {}", l, u, e));
                    break;
                }
            };
            if !low.fan.contains_cone(&cone) {
                pass = false;
                witness = Some(format!("{} -> {}: cone not in fan", l, u));
                break;
            }
            // the stored projection must kill exactly the cone span and map
            // every cone containing it onto a cone of the upper fan,
            // bijectively and compatibly with the assignments
            for g in &cone.generators {
                if !crate::lattice::is_zero(&apply_projection(&entry.projection, g)) {
                    pass = false;
                    witness = Some(format!("{} -> {}: projection does not kill the cone", l, u));
                    break 'outer;
                }
            }
            let mut image_indices = BTreeSet::new();
            for c in &low.fan.cones {
                if !c.has_face(&cone) {
                    continue;
                }
                let gens: Vec<LatticeVector> = c
                    .generators
                    .iter()
                    .map(|g| apply_projection(&entry.projection, g))
                    .filter(|g| !crate::lattice::is_zero(g))
                    .collect();
                let img = match Cone::new(up.fan.rank, gens) {
                    Ok(c) => c,
                    Err(e) => {
                        pass = false;
                        witness = Some(format!("{} -> {}: image cone invalid: {}", l, u, e));
                        break 'outer;
                    }
                };
                let Some(idx) = up.fan.index_of(&img) else {
                    pass = false;
                    witness = Some(format!(
                        "{} -> {}: image of {:?} is not a cone of the upper fan",
                        l, u, c.generators
                    ));
                    break 'outer;
                };
                image_indices.insert(idx);
                // assignment commutation: i_low(c) == i_up(img)
                let from_low = self.stratum_of_cone(l, c);
                let from_up = self.stratum_of_cone(u, &img);
                match (from_low, from_up) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => {
                        pass = false;
                        witness = Some(format!(
                            "(c1) failure at {} -> {} on cone {:?}: {:?} vs {:?}",
                            l, u, c.generators, a, b
                        ));
                        break 'outer;
                    }
                }
            }
            if image_indices.len() != up.fan.cones.len() {
                pass = false;
                witness = Some(format!(
                    "{} -> {}: quotient fan is not identified bijectively ({} of {} cones hit)",
                    l,
                    u,
                    image_indices.len(),
                    up.fan.cones.len()
                ));
                break;
            }
            // cross-check against the intrinsic quotient fan
            if let Ok((qf, _)) = quotient_fan(&low.fan, &cone) {
                if qf.cones.len() != up.fan.cones.len() {
                    pass = false;
                    witness = Some(format!("{} -> {}: quotient fan size mismatch", l, u));
                    break;
                }
            }
        }
        report.push("generization-c1", pass, witness);
    }

    /// Commutation of generization over chains a < b < c.
    fn check_triples(&self, report: &mut ValidationReport) {
        let mut pass = true;
        let mut witness = None;
        'outer: for (a, b) in &self.poset {
            for (b2, c) in &self.poset {
                if b2 != b {
                    continue;
                }
                let (Some(eab), Some(ebc), Some(eac)) = (
                    self.generization_entry(a, b),
                    self.generization_entry(b, c),
                    self.generization_entry(a, c),
                ) else {
                    pass = false;
                    witness = Some(format!("missing entry along chain {} < {} < {}", a, b, c));
                    break 'outer;
                };
                // composed projection equals the direct one
                let rank_a = self.stratum(a).unwrap().fan.rank;
                for i in 0..rank_a {
                    let mut e = vec![0i64; rank_a];
                    e[i] = 1;
                    let via_b = apply_projection(&ebc.projection, &apply_projection(&eab.projection, &e));
                    let direct = apply_projection(&eac.projection, &e);
                    if via_b != direct {
                        pass = false;
                        witness = Some(format!(
                            "projection does not commute along {} < {} < {}",
                            a, b, c
                        ));
                        break 'outer;
                    }
                }
                // the cone of c in Σ_a must surject onto the cone of c in Σ_b
                let cone_ac = self.cone_of(a, c).unwrap();
                let cone_bc = self.cone_of(b, c).unwrap();
                let img: Vec<LatticeVector> = cone_ac
                    .generators
                    .iter()
                    .map(|g| apply_projection(&eab.projection, g))
                    .filter(|g| !crate::lattice::is_zero(g))
                    .collect();
                let img_cone = Cone::new(cone_bc.rank, img).unwrap();
                if !img_cone.same_cone(&cone_bc) {
                    pass = false;
                    witness = Some(format!(
                        "cone of {} in {} does not project to its cone in {}",
                        c, a, b
                    ));
                    break 'outer;
                }
            }
        }
        report.push("generization-triples", pass, witness);
    }

    /// Injectivity and effectivity of the divisor system on each cone.
    fn check_divisor_system(&self, report: &mut ValidationReport) {
        let mut pass = true;
        let mut witness = None;
        'outer: for d in &self.divisor_data {
            let functionals = match self.mu_functionals(&d.component, &d.stratum) {
                Ok(f) => f,
                Err(e) => {
                    pass = false;
                    witness = Some(e.to_string());
                    break;
                }
            };
            let cone = match self.cone_of(&d.stratum, &d.component) {
                Ok(c) => c,
                Err(e) => {
                    pass = false;
                    witness = Some(e.to_string());
                    break;
                }
            };
            // effectivity on the stored generators
            for e in &d.map {
                if !cone.contains(&e.m) {
                    pass = false;
                    witness = Some(format!(
                        "divisor sample {:?} for {} at {} lies outside the component cone",
                        e.m, d.component, d.stratum
                    ));
                    break 'outer;
                }
                if e.divisor.iter().any(|(_, mult)| *mult < 0) {
                    pass = false;
                    witness = Some(format!(
                        "non-effective divisor sample {:?} for {} at {}",
                        e.m, d.component, d.stratum
                    ));
                    break 'outer;
                }
            }
            // injectivity: the functional rows must have full rank on the span
            if cone.dim > 0 {
                let rows: Vec<Vec<Rat>> = functionals.values().cloned().collect();
                let rank = rat_rank(&rows);
                if rank < cone.dim {
                    pass = false;
                    witness = Some(format!(
                        "divisor system for {} at {} is not injective (rank {} < {})",
                        d.component, d.stratum, rank, cone.dim
                    ));
                    break;
                }
            }
        }
        report.push("divisor-system-injective-effective", pass, witness);
    }

    /// Monomial divisor compatibility along chains: the wall-level
    /// functional agrees with the joint-level one through the projection.
    fn check_mdc(&self, report: &mut ValidationReport) {
        let mut pass = true;
        let mut witness = None;
        'outer: for low in &self.strata {
            for high in &self.strata {
                if low.id == high.id || !self.leq(&low.id, &high.id) || high.codim == 0 {
                    continue;
                }
                for comp in self.components() {
                    if !self.leq(&high.id, &comp.id) {
                        continue;
                    }
                    let (Ok(f_low), Ok(f_high)) = (
                        self.mu_functionals(&comp.id, &low.id),
                        self.mu_functionals(&comp.id, &high.id),
                    ) else {
                        continue;
                    };
                    let Some(entry) = self.generization_entry(&low.id, &high.id) else {
                        continue;
                    };
                    for (name, row_high) in &f_high {
                        let Some(row_low) = f_low.get(name) else {
                            pass = false;
                            witness = Some(format!(
                                "divisor {} known at {} but not at {} on {}",
                                name, high.id, low.id, comp.id
                            ));
                            break 'outer;
                        };
                        // row_low must equal row_high composed with the projection
                        for i in 0..low.fan.rank {
                            let mut e = vec![0i64; low.fan.rank];
                            e[i] = 1;
                            let pe = apply_projection(&entry.projection, &e);
                            let high_val: Rat = pe
                                .iter()
                                .zip(row_high)
                                .map(|(x, r)| Rat::from(num_bigint::BigInt::from(*x)) * r)
                                .sum();
                            if high_val != row_low[i] {
                                pass = false;
                                witness = Some(format!(
                                    "(MDC) failure: divisor {} on {} differs between {} and {}",
                                    name, comp.id, low.id, high.id
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        report.push("monomial-divisor-compatibility", pass, witness);
    }

    /// For every wall and m in the span of its ray at each joint, the two
    /// adjacent components' divisors restrict to the same class on the wall.
    fn check_wall_commutativity(&self, report: &mut ValidationReport) {
        let mut pass = true;
        let mut witness = None;
        'outer: for wall in self.walls() {
            let comps = match self.wall_components(&wall.id) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if comps.len() != 2 {
                pass = false;
                witness = Some(format!(
                    "wall {} has {} adjacent components",
                    wall.id,
                    comps.len()
                ));
                break;
            }
            for joint in self.wall_joints(&wall.id).unwrap_or_default() {
                let ray = match self.cone_of(&joint.id, &wall.id) {
                    Ok(c) => c,
                    Err(e) => {
                        pass = false;
                        witness = Some(e.to_string());
                        break 'outer;
                    }
                };
                if ray.dim != 1 {
                    continue;
                }
                let m = ray.generators[0].clone();
                for mm in [m.clone(), neg(&m)] {
                    let mut restrictions = Vec::new();
                    for comp in &comps {
                        match restrict_divisor_to_wall(self, &comp.id, &joint.id, &wall.id, &mm) {
                            Ok(r) => restrictions.push(r),
                            Err(e) => {
                                pass = false;
                                witness = Some(format!(
                                    "restriction failed on wall {} joint {}: {}",
                                    wall.id, joint.id, e
                                ));
                                break 'outer;
                            }
                        }
                    }
                    if restrictions[0] != restrictions[1] {
                        pass = false;
                        witness = Some(format!(
                            "wall {} joint {}: components disagree on m = {:?}: {:?} vs {:?}",
                            wall.id, joint.id, mm, restrictions[0], restrictions[1]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        report.push("wall-restriction-commutes", pass, witness);
    }

    fn check_viability_bookkeeping(&self, report: &mut ValidationReport) {
        let mut pass = true;
        let mut witness = None;
        for d in &self.divisor_data {
            for e in &d.map {
                for (name, _) in &e.divisor {
                    let known = self.strata.iter().any(|s| s.id == *name)
                        && self.leq(name, &d.component);
                    if !known {
                        pass = false;
                        witness = Some(format!(
                            "divisor name {} on {} is not a registered stratum of the component closure",
                            name, d.component
                        ));
                    }
                }
            }
        }
        report.push("viability-named-global-divisors", pass, witness);
    }
}

fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..cols {
                    let t = &f * &m[rank][j];
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Restriction of the divisor mu_{component}(m) (a divisor near the joint on
/// the component) to the wall, with Q-intersection multiplicities: the wall's
/// own coefficient becomes the normal-class part, every other wall
/// contributes its joint point weighted by 1/|det| of the two rays.
pub fn restrict_divisor_to_wall(
    space: &GtcSpace,
    component: &str,
    joint: &str,
    wall: &str,
    m: &[i64],
) -> Result<WallRestriction> {
    let divisor = space.divisor_of_monomial_linear(component, joint, m)?;
    let ray_wall = space.cone_of(joint, wall)?;
    if ray_wall.dim != 1 {
        return Err(LogtcError::BadJointFan(joint.to_string()));
    }
    let rw = &ray_wall.generators[0];
    let mut normal_part = Rat::zero();
    let mut point_part = Rat::zero();
    for (name, mult) in divisor {
        if name == wall {
            normal_part += mult;
            continue;
        }
        let other = space.cone_of(joint, &name)?;
        if other.dim != 1 {
            return Err(LogtcError::FanSheafError(format!(
                "divisor {} is not a wall at joint {}",
                name, joint
            )));
        }
        let det = cross2(&other.generators[0], rw).abs();
        if det == 0 {
            return Err(LogtcError::FanSheafError(format!(
                "rays of {} and {} are parallel at {}",
                name, wall, joint
            )));
        }
        point_part += mult * Rat::new(1.into(), det.into());
    }
    Ok(WallRestriction {
        normal_part,
        point_part,
    })
}

/// Restriction of a component divisor to a wall: a multiple of the wall's
/// normal class plus a rational multiple of the joint point.
#[derive(Clone, Debug, PartialEq)]
pub struct WallRestriction {
    pub normal_part: Rat,
    pub point_part: Rat,
}

/// Build a GtcSpace from a pure 2-dimensional moment complex: faces become
/// components, interior edges walls, interior vertices joints. Fans are read
/// from edge directions, divisor data from the primitive inward normals.
pub fn from_moment_complex(complex: &MomentComplex) -> Result<GtcSpace> {
    let interior_edges = complex.interior_edges();
    let interior_vertices = complex.interior_vertices();

    let wall_id = |e: &crate::plf::EdgeKey| format!("E{}-{}", e.0, e.1);
    let joint_id = |v: usize| format!("V{}", v);

    let mut strata = Vec::new();
    let mut poset = Vec::new();
    let mut generization = Vec::new();
    let mut divisor_data: Vec<DivisorData> = Vec::new();

    for (id, _) in &complex.faces {
        strata.push(Stratum {
            id: id.clone(),
            codim: 0,
            fan: Fan::zero_fan(),
            chart_vars: vec![],
        });
    }

    // walls: rank-1 fan with rays ±1; +1 corresponds to the first face of
    // the sorted adjacent pair, via the primitive normal positive on it
    for (e, faces) in &interior_edges {
        let id = wall_id(e);
        let dir = sub(&complex.vertices[e.1], &complex.vertices[e.0]);
        let dirp = primitive(&dir)?;
        strata.push(Stratum {
            id: id.clone(),
            codim: 1,
            fan: crate::lattice::fans::line(),
            chart_vars: vec![format!("t{}_{}", e.0, e.1)],
        });
        let mut face_pair = faces.to_vec();
        face_pair.sort_by_key(|&fi| complex.faces[fi].0.clone());
        for (k, &fi) in face_pair.iter().enumerate() {
            let comp_id = complex.faces[fi].0.clone();
            poset.push((id.clone(), comp_id.clone()));
            // ray index in fans::line(): rays() sorted order is [-1], [1]
            let ray_index = if k == 0 { 1 } else { 0 };
            generization.push(Generization {
                lower: id.clone(),
                upper: comp_id.clone(),
                cone_rays: vec![ray_index],
                projection: vec![],
            });
            // wall-level divisor data: the side generator maps to 1 * wall
            let side_gen = if k == 0 { vec![1] } else { vec![-1] };
            divisor_data.push(DivisorData {
                component: comp_id,
                stratum: id.clone(),
                map: vec![DivisorMapEntry {
                    m: side_gen,
                    divisor: vec![(id.clone(), 1)],
                }],
            });
        }
        // orientation data is implicit: the normal positive on the first
        // face defines the identification of +1 with it
        let _ = dirp;
    }

    // joints
    for &v in &interior_vertices {
        let id = joint_id(v);
        // incident interior edges and their direction rays
        let mut rays: Vec<(crate::plf::EdgeKey, LatticeVector)> = Vec::new();
        for (e, _) in &interior_edges {
            if e.0 == v || e.1 == v {
                let other = if e.0 == v { e.1 } else { e.0 };
                let dir = primitive(&sub(&complex.vertices[other], &complex.vertices[v]))?;
                rays.push((*e, dir));
            }
        }
        // maximal cones: faces at the vertex spanned by their two edges
        let mut cones = Vec::new();
        let mut cone_to_face: Vec<(Cone, String)> = Vec::new();
        for (fid, loop_) in &complex.faces {
            let Some(pos) = loop_.iter().position(|&vi| vi == v) else {
                continue;
            };
            let n = loop_.len();
            let prev = loop_[(pos + n - 1) % n];
            let next = loop_[(pos + 1) % n];
            let d1 = primitive(&sub(&complex.vertices[prev], &complex.vertices[v]))?;
            let d2 = primitive(&sub(&complex.vertices[next], &complex.vertices[v]))?;
            let cone = Cone::new(2, vec![d1, d2])?;
            cones.push(cone.clone());
            cone_to_face.push((cone, fid.clone()));
        }
        let fan = Fan::new(2, cones)?;
        strata.push(Stratum {
            id: id.clone(),
            codim: 2,
            fan: fan.clone(),
            chart_vars: vec![],
        });
        let fan_rays = fan.rays();

        // joint < wall and joint < component relations
        for (e, dir) in &rays {
            let wid = wall_id(e);
            poset.push((id.clone(), wid.clone()));
            let ray_index = fan_rays
                .iter()
                .position(|r| r == dir)
                .ok_or_else(|| LogtcError::FanSheafError("missing joint ray".into()))?;
            // projection M_joint -> M_wall killing the ray, signed so that
            // the wall's +1 side matches the first face of the sorted pair
            let faces = interior_edges
                .iter()
                .find(|(ee, _)| ee == e)
                .map(|(_, fs)| *fs)
                .unwrap();
            let mut face_pair = faces.to_vec();
            face_pair.sort_by_key(|&fi| complex.faces[fi].0.clone());
            let mut proj = vec![-dir[1], dir[0]];
            // evaluate on the interior direction of the first face's cone
            let first_face = &complex.faces[face_pair[0]].0;
            let interior: LatticeVector = cone_to_face
                .iter()
                .find(|(_, f)| f == first_face)
                .map(|(c, _)| {
                    let mut sum = vec![0i64; 2];
                    for g in &c.generators {
                        sum = crate::lattice::add(&sum, g);
                    }
                    sum
                })
                .ok_or_else(|| LogtcError::FanSheafError("face not at joint".into()))?;
            if dot(&proj, &interior) < 0 {
                proj = neg(&proj);
            }
            generization.push(Generization {
                lower: id.clone(),
                upper: wid,
                cone_rays: vec![ray_index],
                projection: vec![proj],
            });
        }
        for (cone, fid) in &cone_to_face {
            poset.push((id.clone(), fid.clone()));
            let cone_ray_indices: Vec<usize> = fan_rays
                .iter()
                .enumerate()
                .filter(|(_, r)| cone.contains(r))
                .map(|(i, _)| i)
                .collect();
            generization.push(Generization {
                lower: id.clone(),
                upper: fid.clone(),
                cone_rays: cone_ray_indices,
                projection: vec![],
            });
            // joint-level divisor data for this component: the facet
            // functionals pair monomials with the walls through the joint
            let mut entries = Vec::new();
            let hilbert = monoid_presentation(cone, &[])?;
            for m in &hilbert.generators {
                let mut div = Vec::new();
                for facet in &cone.facets {
                    // the wall of this facet: the ray it vanishes on
                    let ray = cone
                        .generators
                        .iter()
                        .find(|g| dot(facet, g) == 0)
                        .ok_or_else(|| LogtcError::FanSheafError("dangling facet".into()))?;
                    let edge = rays
                        .iter()
                        .find(|(_, d)| d == ray)
                        .map(|(e, _)| wall_id(e))
                        .ok_or_else(|| {
                            LogtcError::FanSheafError(format!(
                                "edge for ray {:?} missing at {}",
                                ray, id
                            ))
                        })?;
                    let mult = dot(facet, m);
                    if mult != 0 {
                        div.push((edge, mult));
                    }
                }
                div.sort();
                entries.push(DivisorMapEntry {
                    m: m.clone(),
                    divisor: div,
                });
            }
            divisor_data.push(DivisorData {
                component: fid.clone(),
                stratum: id.clone(),
                map: entries,
            });
        }
    }

    // transitive closure of the poset
    let mut closed: BTreeSet<(String, String)> = poset.iter().cloned().collect();
    loop {
        let mut added = false;
        let pairs: Vec<(String, String)> = closed.iter().cloned().collect();
        for (a, b) in &pairs {
            for (b2, c) in &pairs {
                if b == b2 && !closed.contains(&(a.clone(), c.clone())) {
                    closed.insert((a.clone(), c.clone()));
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    // generization entries for the composite pairs (joint < component were
    // already added; wall < component too; nothing else arises in 2d)
    let dimension = 2;
    let poset: Vec<(String, String)> = closed.into_iter().collect();
    let space = GtcSpace {
        dimension,
        strata,
        poset,
        generization,
        divisor_data,
        local_models: vec![],
    };
    Ok(space)
}

/// Rename strata ids and chart variables; used to give catalog spaces their
/// published names.
pub fn rename(space: &mut GtcSpace, ids: &BTreeMap<String, String>, vars: &BTreeMap<String, String>) {
    let fix = |s: &mut String, table: &BTreeMap<String, String>| {
        if let Some(n) = table.get(s) {
            *s = n.clone();
        }
    };
    for s in &mut space.strata {
        fix(&mut s.id, ids);
        for v in &mut s.chart_vars {
            fix(v, vars);
        }
    }
    for (a, b) in &mut space.poset {
        fix(a, ids);
        fix(b, ids);
    }
    for g in &mut space.generization {
        fix(&mut g.lower, ids);
        fix(&mut g.upper, ids);
    }
    for d in &mut space.divisor_data {
        fix(&mut d.component, ids);
        fix(&mut d.stratum, ids);
        for e in &mut d.map {
            for (n, _) in &mut e.divisor {
                fix(n, ids);
            }
        }
    }
    for l in &mut space.local_models {
        fix(&mut l.stratum, ids);
    }
}

/// An assignment of a wall function to every wall: the candidate section.
#[derive(Clone, Debug, PartialEq)]
pub struct LSSection {
    pub walls: BTreeMap<String, LaurentPolynomial>,
}

impl LSSection {
    pub fn new(walls: BTreeMap<String, LaurentPolynomial>) -> Self {
        LSSection { walls }
    }

    pub fn wall(&self, id: &str) -> Result<&LaurentPolynomial> {
        self.walls
            .get(id)
            .ok_or_else(|| LogtcError::NoSuchStratum(format!("no wall function for {}", id)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plf::del_pezzo_complex;

    fn dp_space() -> GtcSpace {
        from_moment_complex(&del_pezzo_complex()).unwrap()
    }

    #[test]
    fn del_pezzo_space_has_seven_strata() {
        let s = dp_space();
        assert_eq!(s.strata.len(), 7);
        assert_eq!(s.components().len(), 3);
        assert_eq!(s.walls().len(), 3);
        assert_eq!(s.joints().len(), 1);
    }

    #[test]
    fn del_pezzo_joint_fan_rays() {
        let s = dp_space();
        let joint = s.joints()[0].id.clone();
        let mut rays = s.stratum(&joint).unwrap().fan.rays();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, -1], vec![0, 1], vec![1, -1]]);
    }

    #[test]
    fn del_pezzo_space_validates() {
        let s = dp_space();
        let report = s.validate();
        for c in &report.checks {
            assert!(c.pass, "{}: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn open_star_examples() {
        let s = dp_space();
        let joint = s.joints()[0].id.clone();
        assert_eq!(s.open_star(&joint).unwrap().len(), 7);
        let comp = s.components()[0].id.clone();
        assert_eq!(s.open_star(&comp).unwrap().len(), 1);
        let wall = s.walls()[0].id.clone();
        assert_eq!(s.open_star(&wall).unwrap().len(), 3);
        assert!(s.open_star("nope").is_err());
    }

    #[test]
    fn mutated_generization_fails_c1() {
        let mut s = dp_space();
        // compose one joint -> wall projection with the sign automorphism
        let g = s
            .generization
            .iter_mut()
            .find(|g| s.strata.iter().any(|x| x.id == g.lower && x.codim == 2) && !g.projection.is_empty())
            .unwrap();
        g.projection = g.projection.iter().map(|row| crate::lattice::neg(row)).collect();
        let report = s.validate();
        let c1 = report.checks.iter().find(|c| c.name == "generization-c1").unwrap();
        assert!(!c1.pass);
        assert!(c1.witness.is_some());
    }

    #[test]
    fn mutated_divisor_data_fails_consistency() {
        let mut s = dp_space();
        // alter one wall-level divisor multiplicity
        let d = s
            .divisor_data
            .iter_mut()
            .find(|d| d.map.len() == 1)
            .unwrap();
        d.map[0].divisor[0].1 = 2;
        let report = s.validate();
        assert!(!report.all_pass());
    }

    #[test]
    fn divisor_of_monomial_examples() {
        let s = dp_space();
        let joint = s.joints()[0].id.clone();
        // X1 is the bottom face with cone <(-1,-1),(1,-1)> at the joint
        let div = s.divisor_of_monomial("X1", &joint, &[0, -1]).unwrap();
        // z^(0,-1) is the w-monomial: divisor rho_x + rho_y
        assert_eq!(div.len(), 2);
        for (_, mult) in &div {
            assert_eq!(*mult, Rat::from(num_bigint::BigInt::from(1)));
        }
        assert!(s.divisor_of_monomial("X1", &joint, &[0, 1]).is_err());
        let zero = s.divisor_of_monomial("X1", &joint, &[0, 0]).unwrap();
        assert!(zero.is_empty());
        // spec example: m = (0,1) at the central vertex pairs with the
        // inward normals of the X1 polygon corner
        let lin = s.divisor_of_monomial_linear("X1", &joint, &[0, 1]).unwrap();
        assert_eq!(lin.len(), 2);
        for (_, mult) in &lin {
            assert_eq!(*mult, Rat::from(num_bigint::BigInt::from(-1)));
        }
    }

    #[test]
    fn wall_restriction_agrees_between_components() {
        let s = dp_space();
        let joint = s.joints()[0].id.clone();
        for wall in s.walls() {
            let ray = s.cone_of(&joint, &wall.id).unwrap();
            let m = ray.generators[0].clone();
            let comps = s.wall_components(&wall.id).unwrap();
            let a = restrict_divisor_to_wall(&s, &comps[0].id, &joint, &wall.id, &m).unwrap();
            let b = restrict_divisor_to_wall(&s, &comps[1].id, &joint, &wall.id, &m).unwrap();
            assert_eq!(a, b, "wall {}", wall.id);
        }
    }

    #[test]
    fn two_triangle_complex_becomes_two_components_one_wall() {
        let c = MomentComplex::new(
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![
                ("A".to_string(), vec![0, 1, 2]),
                ("B".to_string(), vec![1, 3, 2]),
            ],
        )
        .unwrap();
        let s = from_moment_complex(&c).unwrap();
        assert_eq!(s.components().len(), 2);
        assert_eq!(s.walls().len(), 1);
        assert_eq!(s.joints().len(), 0);
        assert!(s.validate().all_pass());
    }
}
