//! Wall bundles, the joint compatibility condition, section classification,
//! singular loci, and chart-transition synthesis.
//!
//! In the toric-trivialized input class every wall bundle carries a
//! distinguished monomial frame and the joint isomorphism is the identity on
//! frames, so the joint condition is the literal product identity
//! prod_i f_i^{<e, d_i>} = 1 among the restrictions of the wall functions to
//! the joint. Residuals are kept as exact fractions of polynomials and
//! compared by cross-multiplication, never by evaluation.

use crate::error::{LogtcError, Result};
use crate::factor::{factor_wall_polynomial, FactoredDivisor};
use crate::gtc::{restrict_divisor_to_wall, GtcSpace, LSSection};
use crate::lattice::{
    add, cyclic_ray_order, dot, is_complete, neg, primitive_normal, scale, Cone, Fan,
    LatticeVector,
};
use crate::poly::{restrict_to_vars, LaurentPolynomial, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A formal divisor class on a stratum: named divisors with exact rational
/// multiplicities (Q-coefficients arise from restrictions across singular
/// charts; all reported catalog classes are integral).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DivisorClass {
    pub stratum: String,
    pub entries: BTreeMap<String, Rat>,
}

impl DivisorClass {
    pub fn new(stratum: &str) -> Self {
        DivisorClass {
            stratum: stratum.to_string(),
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, name: &str, mult: Rat) {
        if mult.is_zero() {
            return;
        }
        let e = self.entries.entry(name.to_string()).or_insert_with(Rat::zero);
        *e += mult;
        if e.is_zero() {
            self.entries.remove(name);
        }
    }

    pub fn add_class(&self, other: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        for (n, m) in &other.entries {
            out.insert(n, m.clone());
        }
        out
    }

    pub fn sub_class(&self, other: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        for (n, m) in &other.entries {
            out.insert(n, -m.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Rat) -> DivisorClass {
        let mut out = DivisorClass::new(&self.stratum);
        for (n, m) in &self.entries {
            out.insert(n, m * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|m| *m >= Rat::zero())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(n, m)| {
                if m.is_one() {
                    n.clone()
                } else {
                    format!("{}*{}", crate::poly::format_rat(m), n)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn normal_class_name(component: &str) -> String {
    format!("N({})", component)
}

pub fn factor_name(f: &LaurentPolynomial) -> String {
    format!("V({})", f)
}

/// The wall bundle as a divisor class on the wall: the two normal classes
/// plus a joint-point contribution per joint, computed from the divisor
/// system at a lattice point at integral affine distance one from the wall.
/// Internally recomputed with shifted and swapped choices, which must agree.
pub fn wall_bundle(space: &GtcSpace, wall: &str) -> Result<DivisorClass> {
    let comps = space.wall_components(wall)?;
    if comps.len() != 2 {
        return Err(LogtcError::FanSheafError(format!(
            "wall {} does not have exactly two adjacent components",
            wall
        )));
    }
    let (c0, c1) = (comps[0].id.clone(), comps[1].id.clone());
    let mut class = DivisorClass::new(wall);
    class.insert(&normal_class_name(&c0), Rat::one());
    class.insert(&normal_class_name(&c1), Rat::one());
    for joint in space.wall_joints(wall)? {
        let contributions = [
            joint_contribution(space, &joint.id, wall, &c0, &c1, 0)?,
            joint_contribution(space, &joint.id, wall, &c0, &c1, 1)?,
            joint_contribution(space, &joint.id, wall, &c0, &c1, 2)?,
            joint_contribution(space, &joint.id, wall, &c1, &c0, 0)?,
        ];
        for w in contributions.windows(2) {
            if w[0] != w[1] {
                return Err(LogtcError::FanSheafError(format!(
                    "wall bundle choice-invariance fails on {} at {}: {} vs {}",
                    wall,
                    joint.id,
                    crate::poly::format_rat(&w[0]),
                    crate::poly::format_rat(&w[1])
                )));
            }
        }
        class.insert(&joint.id, contributions[0].clone());
    }
    Ok(class)
}

/// The joint-local coefficient of the wall bundle: point parts of the two
/// restricted divisors mu_sigma(v), mu_sigma'(-v) with v at distance 1 + a
/// shift multiple of the wall ray.
fn joint_contribution(
    space: &GtcSpace,
    joint: &str,
    wall: &str,
    side: &str,
    other: &str,
    shift: i64,
) -> Result<Rat> {
    let ray_cone = space.cone_of(joint, wall)?;
    if ray_cone.dim != 1 {
        return Err(LogtcError::BadJointFan(joint.to_string()));
    }
    let ray = ray_cone.generators[0].clone();
    let side_cone = space.cone_of(joint, side)?;
    let v0 = distance_one_vector(&side_cone, &ray, wall)?;
    let v = add(&v0, &scale(&ray, shift));
    let a = restrict_divisor_to_wall(space, side, joint, wall, &v)?;
    let b = restrict_divisor_to_wall(space, other, joint, wall, &neg(&v))?;
    if !a.normal_part.is_one() || !b.normal_part.is_one() {
        return Err(LogtcError::FanSheafError(format!(
            "wall coefficient of the distance-1 divisor is not 1 on {} at {}",
            wall, joint
        )));
    }
    Ok(a.point_part + b.point_part)
}

/// A lattice point of `cone` at integral affine distance 1 from the facet
/// ray (pairing 1 with the primitive normal vanishing on the ray and
/// nonnegative on the cone).
fn distance_one_vector(cone: &Cone, ray: &[i64], wall: &str) -> Result<LatticeVector> {
    if ray.len() != 2 {
        return Err(LogtcError::BadJointFan(wall.to_string()));
    }
    let mut d = vec![-ray[1], ray[0]];
    let interior = cone
        .generators
        .iter()
        .fold(vec![0i64; 2], |acc, g| add(&acc, g));
    if dot(&d, &interior) < 0 {
        d = neg(&d);
    }
    // particular solution of <d, v> = 1 by extended gcd on the two entries
    let (g, x, y) = ext_gcd(d[0], d[1]);
    if g.abs() != 1 {
        return Err(LogtcError::NonRestrictableChoice(wall.to_string()));
    }
    let base = vec![x * g.signum(), y * g.signum()];
    for k in 0..=64i64 {
        for cand in [add(&base, &scale(ray, k)), add(&base, &scale(ray, -k))] {
            if cone.contains(&cand) && dot(&d, &cand) == 1 {
                return Ok(cand);
            }
        }
    }
    Err(LogtcError::NonRestrictableChoice(wall.to_string()))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Frame corrections accumulated by resolutions: a multiplier on the joint
/// chart per (wall, joint), restoring the invariant restricted values after
/// wall functions have been divided by blow-up center factors.
#[derive(Clone, Debug, Default)]
pub struct JointCorrections {
    pub multipliers: BTreeMap<(String, String), LaurentPolynomial>,
}

impl JointCorrections {
    pub fn get(&self, wall: &str, joint: &str) -> Option<&LaurentPolynomial> {
        self.multipliers.get(&(wall.to_string(), joint.to_string()))
    }

    pub fn multiply(&mut self, wall: &str, joint: &str, by: &LaurentPolynomial) {
        let key = (wall.to_string(), joint.to_string());
        match self.multipliers.get_mut(&key) {
            Some(m) => *m = m.mul(by),
            None => {
                self.multipliers.insert(key, by.clone());
            }
        }
    }
}

/// The cyclic frame of a joint: walls in counterclockwise ray order with
/// their primitive normals d_i (vanishing on ray i, positive on ray i+1).
pub fn joint_frame(space: &GtcSpace, joint: &str) -> Result<Vec<(String, LatticeVector)>> {
    let j = space.stratum(joint)?;
    if j.fan.rank != 2 || !is_complete(&j.fan)?.0 {
        return Err(LogtcError::BadJointFan(joint.to_string()));
    }
    let order = cyclic_ray_order(&j.fan)?;
    let n = order.len();
    let mut out = Vec::new();
    for i in 0..n {
        let d = primitive_normal(&j.fan, &order[i], &order[(i + 1) % n])?;
        let ray_cone = Cone::new(2, vec![order[i].clone()])?;
        let wall = space.stratum_of_cone(joint, &ray_cone)?;
        out.push((wall, d));
    }
    Ok(out)
}

/// Per-joint verdict: the cyclic wall order, the normals, and the two
/// residual fractions (one per basis vector of the joint lattice).
#[derive(Clone, Debug)]
pub struct JointReport {
    pub joint: String,
    pub walls: Vec<String>,
    pub normals: Vec<LatticeVector>,
    pub residuals: Vec<(LaurentPolynomial, LaurentPolynomial)>,
    pub pass: bool,
}

/// Restriction of a wall function to a joint: keep the monomials supported
/// on the joint chart variables (which must be a subset of the wall's), and
/// apply any frame correction.
pub fn restrict_section_to_joint(
    space: &GtcSpace,
    section: &LSSection,
    corrections: Option<&JointCorrections>,
    wall: &str,
    joint: &str,
) -> Result<LaurentPolynomial> {
    let j = space.stratum(joint)?;
    let w = space.stratum(wall)?;
    for v in &j.chart_vars {
        if !w.chart_vars.contains(v) {
            return Err(LogtcError::FanSheafError(format!(
                "joint chart variable {} is not a wall chart variable of {}",
                v, wall
            )));
        }
    }
    let f = section.wall(wall)?;
    let mut restricted = restrict_to_vars(f, &j.chart_vars);
    if let Some(c) = corrections.and_then(|c| c.get(wall, joint)) {
        restricted = restricted.mul(c);
    }
    Ok(restricted)
}

/// Reduce a fraction of polynomials: equal sides collapse to 1/1;
/// single-term pairs are reduced by their common unit factor; a multi-term
/// side dividing the other exactly collapses it. Negative symbol exponents
/// are never introduced.
pub fn reduce_fraction(
    num: &LaurentPolynomial,
    den: &LaurentPolynomial,
) -> (LaurentPolynomial, LaurentPolynomial) {
    let one = || LaurentPolynomial::one(num.vars.clone());
    if num == den && !num.is_zero() {
        return (one(), one());
    }
    if let (Some((en, cn)), Some((ed, cd))) = (num.as_single_term(), den.as_single_term()) {
        if let (Some((mn, rn)), Some((md, rd))) = (cn.as_unit(), cd.as_unit()) {
            // common unit: per-variable and per-symbol minimum exponents,
            // denominator made monic
            let ce: crate::lattice::LatticeVector =
                en.iter().zip(&ed).map(|(a, b)| *a.min(b)).collect();
            let mut common_syms = crate::poly::SymMonomial::one();
            for (name, &e1) in &mn.0 {
                if let Some(&e2) = md.0.get(name) {
                    let m = e1.min(e2);
                    if m != 0 {
                        common_syms = common_syms.mul(&crate::poly::SymMonomial(
                            std::collections::BTreeMap::from([(name.clone(), m)]),
                        ));
                    }
                }
            }
            let csi = common_syms.inv();
            let nn = LaurentPolynomial::monomial(
                num.vars.clone(),
                en.iter().zip(&ce).map(|(a, b)| a - b).collect(),
                crate::poly::Coeff(std::collections::BTreeMap::from([(
                    mn.mul(&csi),
                    rn / &rd,
                )])),
            );
            let dd = LaurentPolynomial::monomial(
                num.vars.clone(),
                ed.iter().zip(&ce).map(|(a, b)| a - b).collect(),
                crate::poly::Coeff(std::collections::BTreeMap::from([(
                    md.mul(&csi),
                    Rat::one(),
                )])),
            );
            return (nn, dd);
        }
    }
    if den.terms.len() > 1 {
        if let Ok(q) = num.div_exact(den) {
            return (q, one());
        }
    }
    if num.terms.len() > 1 {
        if let Ok(q) = den.div_exact(num) {
            return (one(), q);
        }
    }
    (num.clone(), den.clone())
}

/// The joint compatibility condition at one joint: for each basis vector e
/// of the joint lattice, the product of restricted wall functions to powers
/// <e, d_i> must equal one.
pub fn joint_check(
    space: &GtcSpace,
    section: &LSSection,
    joint: &str,
    corrections: Option<&JointCorrections>,
) -> Result<JointReport> {
    let frame = joint_frame(space, joint)?;
    let jvars = space.stratum(joint)?.chart_vars.clone();
    let mut restricted = Vec::new();
    for (wall, _) in &frame {
        let r = restrict_section_to_joint(space, section, corrections, wall, joint)?;
        if r.is_zero() {
            return Err(LogtcError::SectionVanishesOnJoint {
                wall: wall.clone(),
                joint: joint.to_string(),
            });
        }
        restricted.push(r);
    }
    let mut residuals = Vec::new();
    let mut pass = true;
    for basis_index in 0..2 {
        let mut e = vec![0i64; 2];
        e[basis_index] = 1;
        let mut num = LaurentPolynomial::one(jvars.clone());
        let mut den = LaurentPolynomial::one(jvars.clone());
        for ((_, d), r) in frame.iter().zip(&restricted) {
            let p = dot(d, &e);
            if p > 0 {
                num = num.mul(&r.pow(p as u32));
            } else if p < 0 {
                den = den.mul(&r.pow((-p) as u32));
            }
        }
        if num != den {
            pass = false;
        }
        residuals.push(reduce_fraction(&num, &den));
    }
    Ok(JointReport {
        joint: joint.to_string(),
        walls: frame.iter().map(|(w, _)| w.clone()).collect(),
        normals: frame.iter().map(|(_, d)| d.clone()).collect(),
        residuals,
        pass,
    })
}

/// Vanishing status of a wall function.
#[derive(Clone, Debug)]
pub enum WallStatus {
    /// Empty vanishing divisor: a nonzero constant on the chart.
    Unit,
    /// A computed vanishing divisor with its total degree.
    Singular(DivisorClass, i64),
    /// Cannot be decided (symbolic multi-term coefficients or unsupported
    /// factorization).
    Undecided(String),
}

/// The vanishing divisor of each wall function, as named irreducible
/// factors with multiplicities.
pub fn singular_locus(
    space: &GtcSpace,
    section: &LSSection,
) -> Result<BTreeMap<String, (DivisorClass, FactoredDivisor)>> {
    let mut out = BTreeMap::new();
    for wall in space.walls() {
        let f = section.wall(&wall.id)?;
        let fac = factor_wall_polynomial(f)?;
        let mut class = DivisorClass::new(&wall.id);
        for (factor, mult) in &fac.factors {
            class.insert(&factor_name(factor), Rat::from(num_bigint::BigInt::from(*mult)));
        }
        out.insert(wall.id.clone(), (class, fac));
    }
    Ok(out)
}

fn wall_status(poly: &LaurentPolynomial) -> WallStatus {
    match factor_wall_polynomial(poly) {
        Ok(fac) if fac.is_empty() => WallStatus::Unit,
        Ok(fac) => {
            let mut class = DivisorClass::new("");
            for (factor, mult) in &fac.factors {
                class.insert(&factor_name(factor), Rat::from(num_bigint::BigInt::from(*mult)));
            }
            let deg = fac.total_degree();
            WallStatus::Singular(class, deg)
        }
        Err(_) => {
            // symbolic: a single term with zero exponent is a unit; a single
            // term with a nonzero exponent vanishes on coordinate divisors
            if let Some((exp, c)) = poly.as_single_term() {
                if !c.is_zero() && exp.iter().all(|&x| x == 0) {
                    return WallStatus::Unit;
                }
                if !c.is_zero() {
                    let mut class = DivisorClass::new("");
                    let mut deg = 0i64;
                    for (i, &e) in exp.iter().enumerate() {
                        if e > 0 {
                            let v = LaurentPolynomial::var(poly.vars.clone(), &poly.vars[i]);
                            class.insert(&factor_name(&v), Rat::from(num_bigint::BigInt::from(e)));
                            deg += e;
                        }
                    }
                    if class.is_zero() {
                        return WallStatus::Unit;
                    }
                    return WallStatus::Singular(class, deg);
                }
            }
            WallStatus::Undecided("undecided at boundary (symbolic coefficients)".into())
        }
    }
}

/// How a candidate section classifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionClass {
    /// Nowhere vanishing and all joints pass.
    LsTimes,
    /// All joints pass but the section vanishes somewhere.
    LsSingular,
    /// A joint condition fails outright.
    NotASection,
    /// Symbolic coefficients: the joint conditions hold exactly on the
    /// listed constraints.
    Conditional(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct SectionReport {
    pub joints: Vec<JointReport>,
    pub joint_errors: Vec<(String, String)>,
    pub walls: Vec<(String, WallStatus)>,
    pub class: SectionClass,
}

/// Aggregate joint checks and per-wall vanishing into a classification.
pub fn check_ls_section(
    space: &GtcSpace,
    section: &LSSection,
    corrections: Option<&JointCorrections>,
) -> Result<SectionReport> {
    // every wall must carry a function
    for w in space.walls() {
        section.wall(&w.id)?;
    }
    let mut joints = Vec::new();
    let mut joint_errors = Vec::new();
    for j in space.joints() {
        match joint_check(space, section, &j.id, corrections) {
            Ok(r) => joints.push(r),
            Err(e) => joint_errors.push((j.id.clone(), e.to_string())),
        }
    }
    let mut walls = Vec::new();
    for w in space.walls() {
        walls.push((w.id.clone(), wall_status(section.wall(&w.id)?)));
    }

    let symbolic = section.walls.values().any(|p| p.terms.values().any(|c| c.is_symbolic()));
    let joints_pass = joints.iter().all(|j| j.pass) && joint_errors.is_empty();
    let any_singular = walls
        .iter()
        .any(|(_, s)| matches!(s, WallStatus::Singular(_, _)));
    let any_undecided = walls
        .iter()
        .any(|(_, s)| matches!(s, WallStatus::Undecided(_)));

    let class = if joints_pass {
        if any_singular || any_undecided {
            SectionClass::LsSingular
        } else {
            SectionClass::LsTimes
        }
    } else if symbolic && joint_errors.is_empty() {
        match extract_constraints(&joints) {
            Some(cs) => SectionClass::Conditional(cs),
            None => SectionClass::NotASection,
        }
    } else {
        SectionClass::NotASection
    };
    Ok(SectionReport {
        joints,
        joint_errors,
        walls,
        class,
    })
}

/// Turn failing single-term symbolic residuals into a triangular system of
/// constraints, e.g. [a0 = b0, c0 = a0^2] for the reducible quartic.
pub fn extract_constraints(joints: &[JointReport]) -> Option<Vec<String>> {
    use crate::poly::{Coeff, SymMonomial};
    // substitution map symbol -> (monomial, rational) meaning sym := r * mono
    let mut subst: BTreeMap<String, (SymMonomial, Rat)> = BTreeMap::new();

    fn apply(m: &SymMonomial, subst: &BTreeMap<String, (SymMonomial, Rat)>) -> (SymMonomial, Rat) {
        let mut out = SymMonomial::one();
        let mut scale = Rat::one();
        for (name, &e) in &m.0 {
            if let Some((mono, r)) = subst.get(name) {
                out = out.mul(&mono.pow(e));
                let mut p = Rat::one();
                if e >= 0 {
                    for _ in 0..e {
                        p *= r;
                    }
                } else {
                    for _ in 0..(-e) {
                        p /= r;
                    }
                }
                scale *= p;
            } else {
                out = out.mul(&SymMonomial(BTreeMap::from([(name.clone(), e)])));
            }
        }
        (out, scale)
    }

    for j in joints {
        if j.pass {
            continue;
        }
        for (num, den) in &j.residuals {
            if num == den {
                continue;
            }
            let (ne, nc) = num.as_single_term()?;
            let (de, dc) = den.as_single_term()?;
            if ne != de {
                return None; // constraint not purely among coefficients
            }
            let nu = nc.as_unit()?;
            let du = dc.as_unit()?;
            // residual nu/du = 1: mono := nu.mono / du.mono, r := nu.r / du.r
            let raw = nu.0.mul(&du.0.inv());
            let rawr = nu.1 / du.1;
            let (mono, extra) = apply(&raw, &subst);
            let r = rawr * extra;
            if mono.is_one() {
                if r.is_one() {
                    continue;
                }
                return None; // inconsistent numeric identity
            }
            // eliminate the lexicographically largest exponent-±1 symbol
            let (name, &e) = mono.0.iter().rev().find(|(_, &e)| e.abs() == 1)?;
            let name = name.clone();
            let rest = mono.mul(&SymMonomial(BTreeMap::from([(name.clone(), -e)])));
            // sym^e * rest * r = 1  =>  sym = (rest * r)^(-1/e)
            let (sub_mono, sub_r) = if e == 1 {
                (rest.inv(), r.recip())
            } else {
                (rest, r)
            };
            subst.insert(name, (sub_mono, sub_r));
        }
    }
    // normalize: substitute later equations into earlier right-hand sides
    let keys: Vec<String> = subst.keys().cloned().collect();
    let mut stable = false;
    while !stable {
        stable = true;
        for k in &keys {
            let (m, r) = subst[k].clone();
            let view: BTreeMap<String, (SymMonomial, Rat)> = subst
                .iter()
                .filter(|(other, _)| *other != k)
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect();
            let (m2, extra) = apply(&m, &view);
            if m2 != m {
                subst.insert(k.clone(), (m2, r * extra));
                stable = false;
            }
        }
    }
    let mut out = Vec::new();
    for (sym, (mono, r)) in subst {
        let rhs = Coeff(BTreeMap::from([(mono.clone(), r.clone())]));
        // single-symbol equalities read best alphabetically
        if r.is_one() && mono.0.len() == 1 && mono.0.values().all(|&e| e == 1) {
            let other = mono.0.keys().next().unwrap().clone();
            let (a, b) = if sym < other { (sym, other) } else { (other, sym) };
            out.push(format!("{} = {}", a, b));
        } else {
            out.push(format!("{} = {}", sym, rhs));
        }
    }
    out.sort();
    Some(out)
}

/// Chart transition data from propagating a trivial frame counterclockwise
/// around a joint: crossing wall i multiplies the frame of z^m by
/// f_i^{<d_i, m>}. Wrap-around consistency holds iff the joint condition
/// does.
#[derive(Clone, Debug)]
pub struct ChartTransitions {
    pub rays: Vec<LatticeVector>,
    pub normals: Vec<LatticeVector>,
    /// Per maximal cone, per basis vector: the formal exponent of each wall
    /// function in the accumulated frame.
    pub cone_frames: Vec<[Vec<i64>; 2]>,
    /// Wrap-around exponents per basis vector.
    pub residual_exponents: [Vec<i64>; 2],
    /// Evaluated wrap-around residuals, as reduced fractions.
    pub residuals: Vec<(LaurentPolynomial, LaurentPolynomial)>,
    pub consistent: bool,
}

/// Synthesize per-maximal-cone transition data from restricted wall
/// functions indexed by the rays of a complete rank-2 fan.
pub fn synthesize_transitions(
    fan: &Fan,
    values: &BTreeMap<LatticeVector, LaurentPolynomial>,
) -> Result<ChartTransitions> {
    if fan.rank != 2 || !is_complete(fan)?.0 {
        return Err(LogtcError::NotCompleteRank2);
    }
    let rays = cyclic_ray_order(fan)?;
    let n = rays.len();
    let mut normals = Vec::new();
    let mut fs = Vec::new();
    for i in 0..n {
        normals.push(primitive_normal(fan, &rays[i], &rays[(i + 1) % n])?);
        let f = values.get(&rays[i]).ok_or_else(|| {
            LogtcError::FanSheafError(format!("no wall function for ray {:?}", rays[i]))
        })?;
        if f.is_zero() {
            return Err(LogtcError::SectionVanishesOnJoint {
                wall: format!("{:?}", rays[i]),
                joint: "local".into(),
            });
        }
        fs.push(f.clone());
    }
    // frames: sigma_1 is trivial; crossing rho_{i+1} into sigma_{i+1}
    // multiplies the frame of z^m by f_{i+1}^{<d_{i+1}, m>}
    let mut cone_frames = Vec::new();
    let mut current = [vec![0i64; n], vec![0i64; n]];
    cone_frames.push(current.clone());
    for i in 1..n {
        for (b, e) in [(0usize, vec![1, 0]), (1usize, vec![0, 1])] {
            current[b][i] += dot(&normals[i], &e);
        }
        cone_frames.push(current.clone());
    }
    // wrap: crossing rho_1 closes the loop; total exponent of f_i is d_i(e)
    let mut residual_exponents = [vec![0i64; n], vec![0i64; n]];
    for (b, e) in [(0usize, vec![1, 0]), (1usize, vec![0, 1])] {
        for i in 0..n {
            residual_exponents[b][i] = dot(&normals[i], &e);
        }
    }
    let vars = fs[0].vars.clone();
    let mut residuals = Vec::new();
    let mut consistent = true;
    for exps in &residual_exponents {
        let mut num = LaurentPolynomial::one(vars.clone());
        let mut den = LaurentPolynomial::one(vars.clone());
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                num = num.mul(&fs[i].pow(e as u32));
            } else if e < 0 {
                den = den.mul(&fs[i].pow((-e) as u32));
            }
        }
        if num != den {
            consistent = false;
        }
        residuals.push(reduce_fraction(&num, &den));
    }
    Ok(ChartTransitions {
        rays,
        normals,
        cone_frames,
        residual_exponents,
        residuals,
        consistent,
    })
}

/// The strict form: wrap-around mismatch is an error.
pub fn synthesize_local_charts(
    fan: &Fan,
    values: &BTreeMap<LatticeVector, LaurentPolynomial>,
) -> Result<ChartTransitions> {
    let t = synthesize_transitions(fan, values)?;
    if !t.consistent {
        return Err(LogtcError::InconsistentSection(format!(
            "residual {} / {}",
            t.residuals[0].0, t.residuals[0].1
        )));
    }
    Ok(t)
}

/// Certificate for the class-level joint identity: for each basis vector e,
/// the sum over walls of d_i(e) times the wall bundle restricts trivially to
/// the joint. Verified through the telescoping decomposition: per chart the
/// total monomial is a difference of ray-span vectors, and the ray-span
/// divisors transfer across the wall with equal restrictions.
pub fn verify_joint_class_identity(space: &GtcSpace, joint: &str) -> Result<bool> {
    let frame = joint_frame(space, joint)?;
    let n = frame.len();
    let j = space.stratum(joint)?;
    let order = cyclic_ray_order(&j.fan)?;
    // v_i at distance 1 inside sigma_i = <rho_i, rho_{i+1}>
    let mut vs = Vec::new();
    for i in 0..n {
        let sigma = Cone::new(2, vec![order[i].clone(), order[(i + 1) % n].clone()])?;
        let comp = space.stratum_of_cone(joint, &sigma)?;
        let side_cone = space.cone_of(joint, &comp)?;
        vs.push((
            comp,
            distance_one_vector(&side_cone, &order[i], &frame[i].0)?,
        ));
    }
    for e in [vec![1i64, 0], vec![0i64, 1]] {
        // r_i = e - d_i(e) v_i must lie in the span of rho_i
        let mut rs = Vec::new();
        for i in 0..n {
            let di_e = dot(&frame[i].1, &e);
            let r = crate::lattice::sub(&e, &scale(&vs[i].1, di_e));
            let ray = &order[i];
            // integrality: r is an integer multiple of the primitive ray
            let k = if ray[0] != 0 { r[0] / ray[0] } else { r[1] / ray[1] };
            if scale(ray, k) != r {
                return Ok(false);
            }
            rs.push(r);
        }
        // per chart sigma_i the total exponent telescopes
        for i in 0..n {
            let di_e = dot(&frame[i].1, &e);
            let dnext_e = dot(&frame[(i + 1) % n].1, &e);
            let total = crate::lattice::sub(&scale(&vs[i].1, di_e), &scale(&vs[(i + 1) % n].1, dnext_e));
            let expect = crate::lattice::sub(&rs[(i + 1) % n], &rs[i]);
            if total != expect {
                return Ok(false);
            }
        }
        // transfer: the ray-span divisors restrict equally from both sides
        for i in 0..n {
            let wall = &frame[i].0;
            let comps = space.wall_components(wall)?;
            let a = restrict_divisor_to_wall(space, &comps[0].id, joint, wall, &rs[i])?;
            let b = restrict_divisor_to_wall(space, &comps[1].id, joint, wall, &rs[i])?;
            if a != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::poly::{rat_int, Coeff};

    fn r(n: i64) -> Rat {
        Rat::from(num_bigint::BigInt::from(n))
    }

    #[test]
    fn two_components_wall_bundle_is_product_of_normals() {
        for rr in [1, 2, 3] {
            let s = two_components_space(rr).unwrap();
            let class = wall_bundle(&s, "D").unwrap();
            let mut expect = DivisorClass::new("D");
            expect.insert("N(Y1)", r(1));
            expect.insert("N(Y2)", r(1));
            assert_eq!(class, expect, "r = {}", rr);
        }
    }

    #[test]
    fn a1_surface_wall_bundle_trivial_normals() {
        let s = a1_surface_space();
        let class = wall_bundle(&s, "S").unwrap();
        let mut expect = DivisorClass::new("S");
        expect.insert("N(X1)", r(1));
        expect.insert("N(X2)", r(1));
        assert_eq!(class, expect);
    }

    #[test]
    fn a1_threefold_wall_bundles() {
        let s = a1_threefold_space().unwrap();
        let class = wall_bundle(&s, "S1").unwrap();
        let mut expect = DivisorClass::new("S1");
        expect.insert("N(X2)", r(1));
        expect.insert("N(X3)", r(1));
        expect.insert("u-axis", r(2));
        assert_eq!(class, expect);
        // the transverse slice through the other two walls is the A1 cone,
        // where the two rulings meet with multiplicity 1/2
        for wall in ["S2", "S3"] {
            let c = wall_bundle(&s, wall).unwrap();
            assert_eq!(c.entries["u-axis"], Rat::new(1.into(), 2.into()), "{}", wall);
        }
    }

    #[test]
    fn dp4_wall_bundles_match_degrees() {
        let s = dp4_space().unwrap();
        // z-wall: both P^2 normals plus twice the joint; degree 4
        let cz = wall_bundle(&s, "rho-z").unwrap();
        assert_eq!(cz.entries["origin"], r(2));
        assert_eq!(cz.entries[&normal_class_name("X2")], r(1));
        assert_eq!(cz.entries[&normal_class_name("X3")], r(1));
        // x-wall: the quadric-cone side is only Q-Cartier; the joint
        // coefficient is 1/2 and the honest degree is 2
        let cx = wall_bundle(&s, "rho-x").unwrap();
        assert_eq!(cx.entries["origin"], Rat::new(1.into(), 2.into()));
        let cy = wall_bundle(&s, "rho-y").unwrap();
        assert_eq!(cy.entries["origin"], Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn dp4_joint_frame_matches_normals() {
        let s = dp4_space().unwrap();
        let frame = joint_frame(&s, "origin").unwrap();
        assert_eq!(
            frame,
            vec![
                ("rho-x".to_string(), vec![1, -1]),
                ("rho-y".to_string(), vec![1, 1]),
                ("rho-z".to_string(), vec![-1, 0]),
            ]
        );
        // the threefold joint carries the same combinatorial frame
        let t = a1_threefold_space().unwrap();
        let tf = joint_frame(&t, "u-axis").unwrap();
        assert_eq!(
            tf.iter().map(|(_, d)| d.clone()).collect::<Vec<_>>(),
            vec![vec![1, -1], vec![1, 1], vec![-1, 0]]
        );
        assert_eq!(
            tf.iter().map(|(w, _)| w.clone()).collect::<Vec<_>>(),
            vec!["S2", "S3", "S1"]
        );
    }

    #[test]
    fn four_ray_joint_normals_pattern() {
        // ±e1, ±e2 joint: normals are the rotated duals
        let fan = crate::lattice::fans::from_rays_complete(&[
            vec![1, 0],
            vec![0, 1],
            vec![-1, 0],
            vec![0, -1],
        ])
        .unwrap();
        let order = crate::lattice::cyclic_ray_order(&fan).unwrap();
        let n = order.len();
        for i in 0..n {
            let d = crate::lattice::primitive_normal(&fan, &order[i], &order[(i + 1) % n]).unwrap();
            assert_eq!(dot(&d, &order[i]), 0);
            assert!(dot(&d, &order[(i + 1) % n]) > 0);
        }
    }

    #[test]
    fn dp4_symbolic_joint_condition_gives_constraints() {
        let s = dp4_space().unwrap();
        let sec = dp4_symbolic_section(&s).unwrap();
        let report = joint_check(&s, &sec, "origin", None).unwrap();
        assert!(!report.pass);
        let full = check_ls_section(&s, &sec, None).unwrap();
        match &full.class {
            SectionClass::Conditional(cs) => {
                assert_eq!(cs, &vec!["a0 = b0".to_string(), "c0 = a0^2".to_string()]);
            }
            other => panic!("expected constraints, got {:?}", other),
        }
    }

    #[test]
    fn dp4_numeric_compliant_passes_and_counts_eight_points() {
        let s = dp4_space().unwrap();
        let sec = dp4_numeric_section(&s, 0).unwrap();
        let report = joint_check(&s, &sec, "origin", None).unwrap();
        assert!(report.pass);
        let loci = singular_locus(&s, &sec).unwrap();
        let total: i64 = loci.values().map(|(_, f)| f.total_degree()).sum();
        assert_eq!(total, 8);
        assert_eq!(loci["rho-x"].1.total_degree(), 2);
        assert_eq!(loci["rho-y"].1.total_degree(), 2);
        assert_eq!(loci["rho-z"].1.total_degree(), 4);
        let full = check_ls_section(&s, &sec, None).unwrap();
        assert_eq!(full.class, SectionClass::LsSingular);
    }

    #[test]
    fn dp4_noncompliant_numeric_fails() {
        let s = dp4_space().unwrap();
        let mut sec = dp4_numeric_section(&s, 0).unwrap();
        // set c0 = 2 while a0 = b0 = 1
        let f = sec.walls.get_mut("rho-z").unwrap();
        f.terms.insert(vec![0], Coeff::from_rat(rat_int(2)));
        let report = joint_check(&s, &sec, "origin", None).unwrap();
        assert!(!report.pass);
        let full = check_ls_section(&s, &sec, None).unwrap();
        assert_eq!(full.class, SectionClass::NotASection);
    }

    #[test]
    fn threefold_special_section_passes() {
        let s = a1_threefold_space().unwrap();
        let sec = a1_threefold_section(&s).unwrap();
        let report = joint_check(&s, &sec, "u-axis", None).unwrap();
        assert!(report.pass, "residuals: {:?}", report.residuals);
        let loci = singular_locus(&s, &sec).unwrap();
        assert_eq!(loci["S1"].1.factors.len(), 2);
        assert_eq!(loci["S2"].1.total_degree(), 1);
    }

    #[test]
    fn all_ones_sections_are_ls_times() {
        for space in [
            two_components_space(2).unwrap(),
            a1_surface_space(),
            dp4_space().unwrap(),
            a1_threefold_space().unwrap(),
        ] {
            let sec = all_ones_section(&space);
            let report = check_ls_section(&space, &sec, None).unwrap();
            assert_eq!(report.class, SectionClass::LsTimes);
        }
    }

    #[test]
    fn a1_surface_section_is_singular_at_origin() {
        let s = a1_surface_space();
        let sec = a1_surface_section(&s);
        let report = check_ls_section(&s, &sec, None).unwrap();
        assert_eq!(report.class, SectionClass::LsSingular);
        let loci = singular_locus(&s, &sec).unwrap();
        assert_eq!(loci["S"].1.total_degree(), 1);
    }

    #[test]
    fn synthesis_consistency_matches_joint_check() {
        let s = dp4_space().unwrap();
        let joint = "origin";
        let fan = s.stratum(joint).unwrap().fan.clone();
        // compliant numeric section: consistent
        let sec = dp4_numeric_section(&s, 0).unwrap();
        let frame = joint_frame(&s, joint).unwrap();
        let order = crate::lattice::cyclic_ray_order(&fan).unwrap();
        let values: BTreeMap<LatticeVector, LaurentPolynomial> = order
            .iter()
            .zip(&frame)
            .map(|(ray, (wall, _))| {
                (
                    ray.clone(),
                    restrict_section_to_joint(&s, &sec, None, wall, joint).unwrap(),
                )
            })
            .collect();
        let t = synthesize_transitions(&fan, &values).unwrap();
        assert!(t.consistent);
        assert!(synthesize_local_charts(&fan, &values).is_ok());
        // free symbols: inconsistent, residual c0^-1 a0 b0
        let sym = dp4_symbolic_section(&s).unwrap();
        let values: BTreeMap<LatticeVector, LaurentPolynomial> = order
            .iter()
            .zip(&frame)
            .map(|(ray, (wall, _))| {
                (
                    ray.clone(),
                    restrict_section_to_joint(&s, &sym, None, wall, joint).unwrap(),
                )
            })
            .collect();
        let t = synthesize_transitions(&fan, &values).unwrap();
        assert!(!t.consistent);
        assert!(matches!(
            synthesize_local_charts(&fan, &values),
            Err(LogtcError::InconsistentSection(_))
        ));
        let (num, den) = &t.residuals[0];
        assert_eq!(format!("{}", num), "a0*b0");
        assert_eq!(format!("{}", den), "c0");
    }

    #[test]
    fn joint_class_identity_on_catalog_joints() {
        let s = dp4_space().unwrap();
        assert!(verify_joint_class_identity(&s, "origin").unwrap());
        let t = a1_threefold_space().unwrap();
        assert!(verify_joint_class_identity(&t, "u-axis").unwrap());
    }

    #[test]
    fn vanishing_restriction_is_an_error() {
        let s = dp4_space().unwrap();
        let mut sec = dp4_numeric_section(&s, 0).unwrap();
        // kill the constant term on the x-wall: restriction to the joint is 0
        let f = sec.walls.get_mut("rho-x").unwrap();
        f.terms.remove(&vec![0]);
        assert!(matches!(
            joint_check(&s, &sec, "origin", None),
            Err(LogtcError::SectionVanishesOnJoint { .. })
        ));
    }
}
