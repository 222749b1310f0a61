//! Log resolutions at the divisor level: blow-up events centered on the
//! vanishing loci of wall functions, strict transforms of sections, total
//! transforms of bundle classes, and post-resolution verification.
//!
//! Sections transform strictly (the center's defining factors are divided
//! out, with the divided restriction recorded as a per-joint frame
//! correction); bundle classes transform by pullback minus the total
//! transform of the center. A blow-up inside one component also modifies
//! the other walls of that component wherever the center crosses a shared
//! joint: the wall is blown at that point once (reused from either side)
//! and every divisor through the point picks up the exceptional restriction
//! with its local multiplicity.

use crate::error::{LogtcError, Result};
use crate::factor::factor_wall_polynomial;
use crate::gtc::{GtcSpace, LSSection};
use crate::ls::{
    check_ls_section, factor_name, singular_locus, wall_bundle, DivisorClass, JointCorrections,
    SectionClass, SectionReport,
};
use crate::poly::{restrict_to_vars, LaurentPolynomial, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct BlowUpEvent {
    pub component: String,
    pub wall: String,
    /// Irreducible center pieces with multiplicities, as polynomials on the
    /// wall chart.
    pub center_factors: Vec<(LaurentPolynomial, i64)>,
    pub exceptional: String,
}

impl BlowUpEvent {
    pub fn center_class(&self, wall: &str) -> DivisorClass {
        let mut c = DivisorClass::new(wall);
        for (f, m) in &self.center_factors {
            c.insert(&factor_name(f), Rat::from(num_bigint::BigInt::from(*m)));
        }
        c
    }
}

#[derive(Clone, Debug, Default)]
pub struct ResolutionPlan {
    pub events: Vec<BlowUpEvent>,
}

/// A point of a wall surface that has been blown up as a side effect:
/// located on a joint at a root of the restricted center.
#[derive(Clone, Debug)]
pub struct BlownPoint {
    pub joint: String,
    /// Coordinates on the joint chart.
    pub root: Vec<Rat>,
    /// Name of the exceptional restriction on this wall.
    pub xi: String,
}

/// The full mutable state of a resolution in progress.
#[derive(Clone, Debug)]
pub struct ResolutionState {
    pub space: GtcSpace,
    pub section: LSSection,
    pub bundles: BTreeMap<String, DivisorClass>,
    pub vanishing: BTreeMap<String, DivisorClass>,
    pub original_bundles: BTreeMap<String, DivisorClass>,
    pub original_vanishing: BTreeMap<String, DivisorClass>,
    pub blown: BTreeMap<String, Vec<BlownPoint>>,
    pub corrections: JointCorrections,
    pub side_overrides: BTreeMap<String, String>,
    /// Factor polynomials divided out so far, per wall, so that f* expansion
    /// can recover them from their display names.
    pub original_factors: BTreeMap<String, Vec<LaurentPolynomial>>,
    exceptional_counter: usize,
    xi_counters: BTreeMap<String, usize>,
}

impl ResolutionState {
    pub fn new(space: GtcSpace, section: LSSection) -> Result<Self> {
        let mut bundles = BTreeMap::new();
        for w in space.walls() {
            bundles.insert(w.id.clone(), wall_bundle(&space, &w.id)?);
        }
        let loci = singular_locus(&space, &section)?;
        let vanishing: BTreeMap<String, DivisorClass> =
            loci.into_iter().map(|(w, (c, _))| (w, c)).collect();
        Ok(ResolutionState {
            original_bundles: bundles.clone(),
            original_vanishing: vanishing.clone(),
            space,
            section,
            bundles,
            vanishing,
            blown: BTreeMap::new(),
            corrections: JointCorrections::default(),
            side_overrides: BTreeMap::new(),
            original_factors: BTreeMap::new(),
            exceptional_counter: 0,
            xi_counters: BTreeMap::new(),
        })
    }

    pub fn with_side_overrides(mut self, overrides: BTreeMap<String, String>) -> Self {
        self.side_overrides = overrides;
        self
    }

    fn fresh_exceptional(&mut self) -> String {
        self.exceptional_counter += 1;
        format!("E{}", self.exceptional_counter)
    }

    fn fresh_xi(&mut self, wall: &str) -> String {
        let c = self.xi_counters.entry(wall.to_string()).or_insert(0);
        *c += 1;
        if *c == 1 {
            "Xi".to_string()
        } else {
            format!("Xi{}", c)
        }
    }

    /// The wall-chart coordinates of a joint point: shared joint variables
    /// take the root values, the remaining chart variables are zero.
    fn wall_point(&self, wall: &str, joint: &str, root: &[Rat]) -> Result<Vec<Rat>> {
        let w = self.space.stratum(wall)?;
        let j = self.space.stratum(joint)?;
        let mut point = Vec::new();
        for v in &w.chart_vars {
            match j.chart_vars.iter().position(|jv| jv == v) {
                Some(k) => point.push(root[k].clone()),
                None => point.push(Rat::zero()),
            }
        }
        Ok(point)
    }

    /// Total transform of a class on the wall through the wall's blown
    /// points: every entry picks up its local multiplicity times the
    /// exceptional restriction.
    pub fn total_transform(&self, wall: &str, class: &DivisorClass) -> Result<DivisorClass> {
        let mut out = class.clone();
        if let Some(points) = self.blown.get(wall) {
            for q in points {
                let mut extra = Rat::zero();
                for (name, mult) in &class.entries {
                    let m = self.entry_multiplicity_with_factors(wall, name, q)?;
                    extra += mult * Rat::from(num_bigint::BigInt::from(m));
                }
                out.insert(&q.xi, extra);
            }
        }
        Ok(out)
    }

    /// Like entry_multiplicity but resolving factor names through both the
    /// current section and the recorded originals.
    fn entry_multiplicity_with_factors(
        &self,
        wall: &str,
        name: &str,
        q: &BlownPoint,
    ) -> Result<i64> {
        if let Some(text) = name.strip_prefix("V(") {
            let poly_text = &text[..text.len() - 1];
            if let Some(f) = self.factor_by_text(wall, poly_text)? {
                let point = self.wall_point(wall, &q.joint, &q.root)?;
                return f.multiplicity_at(&point).map(|m| m.max(0));
            }
            return Ok(0);
        }
        if name == q.joint {
            return Ok(1);
        }
        Ok(0)
    }

    fn factor_by_text(&self, wall: &str, text: &str) -> Result<Option<LaurentPolynomial>> {
        let w = self.space.stratum(wall)?;
        // reparse the factor from its display: only forms produced by our
        // factorization appear (integral linear combinations of monomials),
        // so match against factors of the original and current sections
        let mut cands: Vec<LaurentPolynomial> = Vec::new();
        if let Ok(fac) = factor_wall_polynomial(self.section.wall(wall)?) {
            cands.extend(fac.factors.into_iter().map(|(f, _)| f));
        }
        for v in &w.chart_vars {
            cands.push(LaurentPolynomial::var(w.chart_vars.clone(), v));
        }
        if let Some(orig) = self.original_factors.get(wall) {
            cands.extend(orig.clone());
        }
        Ok(cands.into_iter().find(|f| format!("{}", f) == text))
    }

}

/// Plan and apply the full resolution: repeatedly pick the next blow-up
/// event (side component by lexicographic rule with overrides; order by
/// component id, then center point multiplicity at joints, then wall id),
/// apply it, and stop when every wall function is a unit.
pub fn resolve(state: &mut ResolutionState) -> Result<ResolutionPlan> {
    let mut plan = ResolutionPlan::default();
    loop {
        let Some(event) = next_event(state)? else {
            break;
        };
        apply_blowup(state, &event)?;
        plan.events.push(event);
        if plan.events.len() > 64 {
            return Err(LogtcError::FanSheafError(
                "resolution did not terminate".into(),
            ));
        }
    }
    Ok(plan)
}

fn next_event(state: &mut ResolutionState) -> Result<Option<BlowUpEvent>> {
    let mut candidates = Vec::new();
    for wall in state.space.walls() {
        let f = state.section.wall(&wall.id)?;
        let fac = factor_wall_polynomial(f)?;
        if fac.is_empty() {
            continue;
        }
        let comps = state.space.wall_components(&wall.id)?;
        let side = state
            .side_overrides
            .get(&wall.id)
            .cloned()
            .unwrap_or_else(|| comps.last().unwrap().id.clone());
        // the maximal multiplicity of the center at shared joints orders
        // singular centers after the smooth ones whose blow-ups separate them
        let mut max_mult = 0i64;
        let product = fac
            .factors
            .iter()
            .fold(LaurentPolynomial::one(f.vars.clone()), |acc, (g, m)| {
                acc.mul(&g.pow(*m as u32))
            });
        for joint in state.space.wall_joints(&wall.id)? {
            for root in restricted_roots(state, &wall.id, &joint.id, &product)? {
                let point = state.wall_point(&wall.id, &joint.id, &root)?;
                max_mult = max_mult.max(product.multiplicity_at(&point)?);
            }
        }
        candidates.push(( side.clone(), max_mult, wall.id.clone(), fac.factors));
    }
    if candidates.is_empty() {
        return Ok(None);
    }
    candidates.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));
    let (component, _max_mult, wall, mut factors) = candidates.swap_remove(0);

    // split tangled centers: distinct pieces meeting at an unblown point go
    // in one at a time, mirroring the two-stage threefold recipe
    if factors.len() > 1 {
        let mut tangled = false;
        'pairs: for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                if let Some(q) = common_unblown_point(state, &wall, &factors[i].0, &factors[j].0)? {
                    let _ = q;
                    tangled = true;
                    break 'pairs;
                }
            }
        }
        if tangled {
            factors.sort_by_key(|(f, _)| format!("{}", f));
            factors.truncate(1);
        }
    }
    let exceptional = state.fresh_exceptional();
    Ok(Some(BlowUpEvent {
        component,
        wall,
        center_factors: factors,
        exceptional,
    }))
}

/// Roots of the restriction of a polynomial to a joint chart, as
/// coordinate vectors on the joint chart. Rank-0 charts contribute the
/// empty root exactly when the restriction vanishes.
fn restricted_roots(
    state: &ResolutionState,
    wall: &str,
    joint: &str,
    p: &LaurentPolynomial,
) -> Result<Vec<Vec<Rat>>> {
    let j = state.space.stratum(joint)?;
    let restricted = restrict_to_vars(p, &j.chart_vars);
    if j.chart_vars.is_empty() {
        return Ok(if restricted.is_zero() { vec![vec![]] } else { vec![] });
    }
    if restricted.is_zero() {
        return Err(LogtcError::FactorizationUnsupported(format!(
            "center on {} contains the joint {}",
            wall, joint
        )));
    }
    if j.chart_vars.len() != 1 {
        return Err(LogtcError::FactorizationUnsupported(format!(
            "joint {} chart has rank > 1",
            joint
        )));
    }
    let fac = factor_wall_polynomial(&restricted)?;
    let mut roots = Vec::new();
    for (f, _) in &fac.factors {
        let coeffs: Vec<(i64, Rat)> = f
            .terms
            .iter()
            .map(|(e, c)| (e[0], c.as_rat().expect("numeric")))
            .collect();
        match coeffs.len() {
            1 => {
                if coeffs[0].0 > 0 {
                    roots.push(vec![Rat::zero()]);
                }
            }
            2 => {
                let (lo, hi) = (&coeffs[0], &coeffs[1]);
                if hi.0 - lo.0 == 1 {
                    roots.push(vec![-(&lo.1 / &hi.1)]);
                } else {
                    return Err(LogtcError::FactorizationUnsupported(format!(
                        "nonlinear meeting locus on joint {}",
                        joint
                    )));
                }
            }
            _ => {
                return Err(LogtcError::FactorizationUnsupported(format!(
                    "irrational meeting locus on joint {}",
                    joint
                )));
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// A point where two center pieces meet that has not yet been blown up on
/// this wall (so their strict transforms are not yet separated).
fn common_unblown_point(
    state: &ResolutionState,
    wall: &str,
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
) -> Result<Option<(String, Vec<Rat>)>> {
    for joint in state.space.wall_joints(wall)? {
        let rf = restricted_roots(state, wall, &joint.id, f)?;
        let rg = restricted_roots(state, wall, &joint.id, g)?;
        for r in rf {
            if rg.contains(&r) {
                let already = state
                    .blown
                    .get(wall)
                    .map(|ps| ps.iter().any(|p| p.joint == joint.id && p.root == r))
                    .unwrap_or(false);
                if !already {
                    return Ok(Some((joint.id.clone(), r)));
                }
            }
        }
    }
    Ok(None)
}

/// Apply one blow-up event: transform the event's wall (bundle, vanishing
/// divisor, section, joint corrections) and side-affect the other walls of
/// the component where the center crosses shared joints.
pub fn apply_blowup(state: &mut ResolutionState, event: &BlowUpEvent) -> Result<()> {
    let wall = event.wall.clone();
    // the center must sit inside the current vanishing divisor
    let current = state.vanishing.get(&wall).cloned().unwrap_or_else(|| DivisorClass::new(&wall));
    for (f, m) in &event.center_factors {
        let have = current
            .entries
            .get(&factor_name(f))
            .cloned()
            .unwrap_or_else(Rat::zero);
        if have < Rat::from(num_bigint::BigInt::from(*m)) {
            return Err(LogtcError::CenterNotInSection(wall.clone()));
        }
    }
    // remember original factor polynomials for later f* expansion
    state
        .original_factors
        .entry(wall.clone())
        .or_default()
        .extend(event.center_factors.iter().map(|(f, _)| f.clone()));

    // total transform of the center through the wall's blown points
    let center = event.center_class(&wall);
    let total_center = state.total_transform(&wall, &center)?;

    let bundle = state.bundles.get(&wall).cloned().unwrap_or_else(|| DivisorClass::new(&wall));
    state
        .bundles
        .insert(wall.clone(), bundle.sub_class(&total_center));
    let vanishing = state.vanishing.get(&wall).cloned().unwrap();
    let new_vanishing = vanishing.sub_class(&total_center);
    if !new_vanishing.is_effective() {
        return Err(LogtcError::CenterNotInSection(wall.clone()));
    }
    state.vanishing.insert(wall.clone(), new_vanishing);

    // strict transform of the section: divide out the center factors,
    // recording the divided restriction at every joint as a correction
    let mut divisor_poly = LaurentPolynomial::one(state.section.wall(&wall)?.vars.clone());
    for (f, m) in &event.center_factors {
        divisor_poly = divisor_poly.mul(&f.pow(*m as u32));
    }
    let divided = state.section.wall(&wall)?.div_exact(&divisor_poly)?;
    state.section.walls.insert(wall.clone(), divided);
    for joint in state.space.wall_joints(&wall)?.iter().map(|j| j.id.clone()) {
        let gamma = restrict_to_vars(&divisor_poly, &state.space.stratum(&joint)?.chart_vars);
        if gamma.is_zero() {
            return Err(LogtcError::FactorizationUnsupported(format!(
                "center restriction vanishes identically on joint {}",
                joint
            )));
        }
        state.corrections.multiply(&wall, &joint, &gamma);
    }

    // side effects on the other walls of the blown component
    let dim = state.space.dimension;
    let component_walls: Vec<String> = state
        .space
        .walls()
        .iter()
        .filter(|w| w.id != wall && state.space.leq(&w.id, &event.component))
        .map(|w| w.id.clone())
        .collect();
    for other in component_walls {
        // shared joints of the two walls
        let shared: Vec<String> = state
            .space
            .wall_joints(&wall)?
            .iter()
            .filter(|j| state.space.leq(&j.id, &other))
            .map(|j| j.id.clone())
            .collect();
        for joint in shared {
            for (f, _) in &event.center_factors {
                for root in restricted_roots(state, &wall, &joint, f)? {
                    if dim < 3 {
                        // blowing a curve at a point is an isomorphism
                        continue;
                    }
                    let already = state
                        .blown
                        .get(&other)
                        .map(|ps| ps.iter().any(|p| p.joint == joint && p.root == root))
                        .unwrap_or(false);
                    if already {
                        continue;
                    }
                    let xi = state.fresh_xi(&other);
                    let q = BlownPoint {
                        joint: joint.clone(),
                        root: root.clone(),
                        xi: xi.clone(),
                    };
                    // rewrite the other wall's bundle and vanishing divisor
                    // through the point blow-up
                    let b = state.bundles.get(&other).cloned().unwrap();
                    let v = state.vanishing.get(&other).cloned().unwrap();
                    let mut b2 = b.clone();
                    let mut v2 = v.clone();
                    let mut bx = Rat::zero();
                    for (name, mult) in &b.entries {
                        let m = state.entry_multiplicity_with_factors(&other, name, &q)?;
                        bx += mult * Rat::from(num_bigint::BigInt::from(m));
                    }
                    b2.insert(&xi, bx);
                    let mut vx = Rat::zero();
                    for (name, mult) in &v.entries {
                        let m = state.entry_multiplicity_with_factors(&other, name, &q)?;
                        vx += mult * Rat::from(num_bigint::BigInt::from(m));
                    }
                    v2.insert(&xi, vx);
                    state.bundles.insert(other.clone(), b2);
                    state.vanishing.insert(other.clone(), v2);
                    state.blown.entry(other.clone()).or_default().push(q);
                }
            }
        }
    }
    Ok(())
}

/// Per-wall verification of the blow-up transform identity:
/// new class = f*(old class - old vanishing divisor), entrywise, with f*
/// the total transform through the wall's final blown points.
pub struct TransformIdentity {
    pub wall: String,
    pub holds: bool,
    pub lhs: DivisorClass,
    pub rhs: DivisorClass,
    pub pullback_relations: Vec<String>,
}

pub fn verify_transform_identity(state: &ResolutionState) -> Result<Vec<TransformIdentity>> {
    let mut out = Vec::new();
    for w in state.space.walls() {
        let old = state.original_bundles[&w.id].clone();
        let z = state.original_vanishing[&w.id].clone();
        let twisted = old.sub_class(&z);
        let rhs = state.total_transform(&w.id, &twisted)?;
        let lhs = state.bundles[&w.id].clone();
        let mut relations = Vec::new();
        if let Some(points) = state.blown.get(&w.id) {
            if !points.is_empty() && !z.is_zero() {
                let fz = state.total_transform(&w.id, &z)?;
                relations.push(format!("f*({}) = {}", z, fz));
            }
        }
        out.push(TransformIdentity {
            wall: w.id.clone(),
            holds: lhs == rhs,
            lhs,
            rhs,
            pullback_relations: relations,
        });
    }
    Ok(out)
}

/// True iff the transformed section is a nowhere-vanishing section: all
/// joints pass (with the accumulated frame corrections) and every wall
/// function is a unit.
pub fn verify_log_smooth(state: &ResolutionState) -> Result<(bool, SectionReport)> {
    let report = check_ls_section(&state.space, &state.section, Some(&state.corrections))?;
    let smooth = report.class == SectionClass::LsTimes
        && state.vanishing.values().all(|v| v.is_zero());
    Ok((smooth, report))
}

#[derive(Serialize, Deserialize)]
struct PlanEventDoc {
    component: String,
    wall: String,
    center: Vec<CenterDoc>,
    exceptional: String,
}

#[derive(Serialize, Deserialize)]
struct CenterDoc {
    factor: String,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct PlanDoc {
    schema: String,
    events: Vec<PlanEventDoc>,
}

pub fn serialize_plan(plan: &ResolutionPlan) -> Result<String> {
    let doc = PlanDoc {
        schema: crate::json::PLAN_SCHEMA.to_string(),
        events: plan
            .events
            .iter()
            .map(|e| PlanEventDoc {
                component: e.component.clone(),
                wall: e.wall.clone(),
                center: e
                    .center_factors
                    .iter()
                    .map(|(f, m)| CenterDoc {
                        factor: format!("{}", f),
                        mult: *m,
                    })
                    .collect(),
                exceptional: e.exceptional.clone(),
            })
            .collect(),
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn a1_surface_resolution_single_event() {
        let space = a1_surface_space();
        let section = a1_surface_section(&space);
        let mut state = ResolutionState::new(space, section).unwrap();
        let plan = resolve(&mut state).unwrap();
        assert_eq!(plan.events.len(), 1);
        assert_eq!(plan.events[0].component, "X2");
        assert_eq!(plan.events[0].wall, "S");
        // new section is 1, vanishing divisor empty
        assert!(state.section.wall("S").unwrap().is_one());
        assert!(state.vanishing["S"].is_zero());
        // new class = f*(old(-Z)): pullback is trivial here
        let ids = verify_transform_identity(&state).unwrap();
        assert!(ids.iter().all(|t| t.holds));
        let (smooth, _) = verify_log_smooth(&state).unwrap();
        assert!(smooth);
    }

    #[test]
    fn a1_threefold_resolution_three_stages() {
        let space = a1_threefold_space().unwrap();
        let section = a1_threefold_section(&space).unwrap();
        let mut state = ResolutionState::new(space, section).unwrap();
        let plan = resolve(&mut state).unwrap();
        let summary: Vec<(String, String)> = plan
            .events
            .iter()
            .map(|e| (e.wall.clone(), e.component.clone()))
            .collect();
        assert_eq!(
            summary,
            vec![
                ("S3".to_string(), "X2".to_string()),
                ("S2".to_string(), "X3".to_string()),
                ("S1".to_string(), "X3".to_string()),
            ]
        );
        // the third event blows both strict pieces at once
        assert_eq!(plan.events[2].center_factors.len(), 2);
        // wall S1 was blown at one point, shared by both side effects
        assert_eq!(state.blown["S1"].len(), 1);
        let xi = state.blown["S1"][0].xi.clone();
        // f*(Z1) = Z+ + Z- + 2 Xi
        let z1 = state.original_vanishing["S1"].clone();
        let fz1 = state.total_transform("S1", &z1).unwrap();
        assert_eq!(fz1.entries[&xi], crate::poly::rat_int(2));
        assert_eq!(fz1.entries.len(), 3);
        // transform identity on every wall, and log smoothness
        let ids = verify_transform_identity(&state).unwrap();
        for t in &ids {
            assert!(t.holds, "wall {}: {} vs {}", t.wall, t.lhs, t.rhs);
        }
        let (smooth, report) = verify_log_smooth(&state).unwrap();
        assert!(smooth, "{:?}", report.class);
    }

    #[test]
    fn dp4_resolution_matches_recipe_and_is_log_smooth() {
        let space = dp4_space().unwrap();
        let section = dp4_numeric_section(&space, 0).unwrap();
        let mut state = ResolutionState::new(space, section).unwrap();
        let plan = resolve(&mut state).unwrap();
        let summary: Vec<(String, String)> = plan
            .events
            .iter()
            .map(|e| (e.wall.clone(), e.component.clone()))
            .collect();
        assert_eq!(
            summary,
            vec![
                ("rho-y".to_string(), "X2".to_string()),
                ("rho-x".to_string(), "X3".to_string()),
                ("rho-z".to_string(), "X3".to_string()),
            ]
        );
        let ids = verify_transform_identity(&state).unwrap();
        assert!(ids.iter().all(|t| t.holds));
        let (smooth, report) = verify_log_smooth(&state).unwrap();
        assert!(smooth, "{:?} {:?}", report.class, report.joints.iter().map(|j| (&j.joint, j.pass)).collect::<Vec<_>>());
    }

    #[test]
    fn already_smooth_input_yields_empty_plan() {
        let space = dp4_space().unwrap();
        let section = all_ones_section(&space);
        let mut state = ResolutionState::new(space, section).unwrap();
        let plan = resolve(&mut state).unwrap();
        assert!(plan.events.is_empty());
        let (smooth, _) = verify_log_smooth(&state).unwrap();
        assert!(smooth);
    }

    #[test]
    fn empty_center_is_identity() {
        let space = a1_surface_space();
        let section = all_ones_section(&space);
        let mut state = ResolutionState::new(space.clone(), section).unwrap();
        let before = state.bundles.clone();
        let event = BlowUpEvent {
            component: "X2".into(),
            wall: "S".into(),
            center_factors: vec![],
            exceptional: "E1".into(),
        };
        apply_blowup(&mut state, &event).unwrap();
        assert_eq!(state.bundles, before);
    }

    #[test]
    fn center_not_in_section_rejected() {
        let space = a1_surface_space();
        let section = all_ones_section(&space);
        let mut state = ResolutionState::new(space.clone(), section).unwrap();
        let vars = space.stratum("S").unwrap().chart_vars.clone();
        let event = BlowUpEvent {
            component: "X2".into(),
            wall: "S".into(),
            center_factors: vec![(LaurentPolynomial::var(vars, "u"), 1)],
            exceptional: "E1".into(),
        };
        assert!(matches!(
            apply_blowup(&mut state, &event),
            Err(LogtcError::CenterNotInSection(_))
        ));
    }

    #[test]
    fn side_override_changes_component() {
        let space = a1_surface_space();
        let section = a1_surface_section(&space);
        let mut state = ResolutionState::new(space, section)
            .unwrap()
            .with_side_overrides(BTreeMap::from([("S".to_string(), "X1".to_string())]));
        let plan = resolve(&mut state).unwrap();
        assert_eq!(plan.events[0].component, "X1");
        let (smooth, _) = verify_log_smooth(&state).unwrap();
        assert!(smooth);
    }

    #[test]
    fn vanishing_coherence_at_each_step() {
        // vanishing(new) = vanishing(old) - applied centers, always effective
        let space = a1_threefold_space().unwrap();
        let section = a1_threefold_section(&space).unwrap();
        let mut state = ResolutionState::new(space, section).unwrap();
        loop {
            for v in state.vanishing.values() {
                assert!(v.is_effective());
            }
            let Some(e) = super::next_event(&mut state).unwrap() else {
                break;
            };
            apply_blowup(&mut state, &e).unwrap();
        }
    }
}
