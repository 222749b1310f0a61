//! Monoid algebra over exact rationals: Laurent polynomials with optionally
//! symbolic coefficients, Stanley-Reisner elements with the fan-support
//! multiplication rule, and face restriction.
//!
//! Coefficients live in the Laurent polynomial ring Q[a^±1, b^±1, ...] over
//! named symbols. Addition and multiplication are closed; division is
//! supported by single-term coefficients (units), which is all the joint
//! condition ever needs.

use crate::error::{LogtcError, Result};
use crate::lattice::{Cone, Fan, LatticeVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parse "p/q" or "p".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rat::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rat::from(p))
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A monomial in named symbols with integer exponents, e.g. a0^2 * c0^-1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymMonomial(pub BTreeMap<String, i64>);

impl SymMonomial {
    pub fn one() -> Self {
        SymMonomial(BTreeMap::new())
    }

    pub fn symbol(name: &str) -> Self {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), 1);
        SymMonomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &SymMonomial) -> SymMonomial {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            let e = out.entry(k.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                out.remove(k);
            }
        }
        SymMonomial(out)
    }

    pub fn inv(&self) -> SymMonomial {
        SymMonomial(self.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
    }

    pub fn pow(&self, n: i64) -> SymMonomial {
        SymMonomial(self.0.iter().map(|(k, v)| (k.clone(), v * n)).collect())
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| if *v == 1 { k.clone() } else { format!("{}^{}", k, v) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// An exact coefficient: a Q-linear combination of symbol monomials.
/// Purely rational coefficients are the combinations supported on the
/// trivial monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Coeff(pub BTreeMap<SymMonomial, Rat>);

impl Coeff {
    pub fn zero() -> Self {
        Coeff(BTreeMap::new())
    }

    pub fn one() -> Self {
        Coeff::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut m = BTreeMap::new();
        if !r.is_zero() {
            m.insert(SymMonomial::one(), r);
        }
        Coeff(m)
    }

    pub fn from_symbol(name: &str) -> Self {
        let mut m = BTreeMap::new();
        m.insert(SymMonomial::symbol(name), Rat::one());
        Coeff(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1
            && self
                .0
                .get(&SymMonomial::one())
                .map(|r| r.is_one())
                .unwrap_or(false)
    }

    /// The rational value, if the coefficient carries no symbols.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.0.is_empty() {
            return Some(Rat::zero());
        }
        if self.0.len() == 1 {
            if let Some(r) = self.0.get(&SymMonomial::one()) {
                return Some(r.clone());
            }
        }
        None
    }

    pub fn is_symbolic(&self) -> bool {
        self.0.keys().any(|m| !m.is_one())
    }

    /// Single-term coefficients are the units of the coefficient ring.
    pub fn as_unit(&self) -> Option<(SymMonomial, Rat)> {
        if self.0.len() == 1 {
            let (m, r) = self.0.iter().next().unwrap();
            Some((m.clone(), r.clone()))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        let mut out = self.0.clone();
        for (m, r) in &other.0 {
            let e = out.entry(m.clone()).or_insert_with(Rat::zero);
            *e += r;
            if e.is_zero() {
                out.remove(m);
            }
        }
        Coeff(out)
    }

    pub fn neg(&self) -> Coeff {
        Coeff(self.0.iter().map(|(m, r)| (m.clone(), -r.clone())).collect())
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        let mut out: BTreeMap<SymMonomial, Rat> = BTreeMap::new();
        for (m1, r1) in &self.0 {
            for (m2, r2) in &other.0 {
                let m = m1.mul(m2);
                let e = out.entry(m.clone()).or_insert_with(Rat::zero);
                *e += r1 * r2;
                if e.is_zero() {
                    out.remove(&m);
                }
            }
        }
        Coeff(out)
    }

    /// Divide by a unit (single-term) coefficient.
    pub fn div_unit(&self, unit: &Coeff) -> Result<Coeff> {
        let (m, r) = unit
            .as_unit()
            .ok_or_else(|| LogtcError::DivisionError("divisor is not a unit".into()))?;
        if r.is_zero() {
            return Err(LogtcError::DivisionError("division by zero".into()));
        }
        let minv = m.inv();
        Ok(Coeff(
            self.0
                .iter()
                .map(|(mm, rr)| (mm.mul(&minv), rr / &r))
                .collect(),
        ))
    }

    /// Exact quotient self / other, when other divides self with a unit
    /// cofactor times a polynomial; only needed for rational division in
    /// practice. Falls back to unit division.
    pub fn div_exact(&self, other: &Coeff) -> Result<Coeff> {
        if let Some((_, _)) = other.as_unit() {
            return self.div_unit(other);
        }
        Err(LogtcError::DivisionError(
            "composite symbolic divisor".into(),
        ))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, r) in &self.0 {
            let sign = if r.is_negative() { "-" } else if first { "" } else { "+" };
            let abs = r.abs();
            let body = if m.is_one() {
                format_rat(&abs)
            } else if abs.is_one() {
                format!("{}", m)
            } else {
                format!("{}*{}", format_rat(&abs), m)
            };
            if first {
                write!(f, "{}{}", sign, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if sign.is_empty() { "+" } else { sign }, body)?;
            }
        }
        Ok(())
    }
}

/// Exact Laurent polynomial on a named character lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    /// Ordered variable names; the exponent vectors index into these.
    pub vars: Vec<String>,
    /// Terms in canonical (lex on exponent) order; no zero coefficients.
    pub terms: BTreeMap<LatticeVector, Coeff>,
}

impl LaurentPolynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        LaurentPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: Coeff) -> Self {
        let mut p = LaurentPolynomial::zero(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, Coeff::one())
    }

    /// The monomial c * x^exp.
    pub fn monomial(vars: Vec<String>, exp: LatticeVector, c: Coeff) -> Self {
        assert_eq!(vars.len(), exp.len());
        let mut p = LaurentPolynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn var(vars: Vec<String>, name: &str) -> Self {
        let i = vars.iter().position(|v| v == name).expect("unknown variable");
        let mut exp = vec![0; vars.len()];
        exp[i] = 1;
        Self::monomial(vars, exp, Coeff::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.vars.len()])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn insert_term(&mut self, exp: LatticeVector, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp.clone()).or_insert_with(Coeff::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = LaurentPolynomial::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: LatticeVector = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPolynomial::one(self.vars.clone());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// A single-term polynomial is a unit on the torus chart.
    pub fn as_single_term(&self) -> Option<(LatticeVector, Coeff)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((e.clone(), c.clone()))
        } else {
            None
        }
    }

    /// Monomial content: the componentwise minimum exponent vector.
    fn monomial_content(&self) -> LatticeVector {
        let n = self.vars.len();
        let mut min = vec![i64::MAX; n];
        for e in self.terms.keys() {
            for i in 0..n {
                min[i] = min[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            vec![0; n]
        } else {
            min
        }
    }

    fn shift_exponents(&self, by: &[i64]) -> Self {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact division in the Laurent ring: self = q * divisor, error when a
    /// remainder is forced. Monomial contents are units and factored out
    /// first; the residual polynomial division uses lex order with a
    /// componentwise divisibility check, which terminates.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        assert_eq!(self.vars, divisor.vars);
        if divisor.is_zero() {
            return Err(LogtcError::DivisionError("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let ca = self.monomial_content();
        let cb = divisor.monomial_content();
        let p = self.shift_exponents(&ca.iter().map(|x| -x).collect::<Vec<_>>());
        let d = divisor.shift_exponents(&cb.iter().map(|x| -x).collect::<Vec<_>>());
        let (lead_exp, lead_coeff) = d
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        if lead_coeff.as_unit().is_none() {
            return Err(LogtcError::DivisionError(
                "leading coefficient is not a unit".into(),
            ));
        }
        let mut rem = p;
        let mut q = LaurentPolynomial::zero(self.vars.clone());
        while !rem.is_zero() {
            let (re, rc) = rem
                .terms
                .iter()
                .next_back()
                .map(|(e, c)| (e.clone(), c.clone()))
                .unwrap();
            let qe: LatticeVector = re.iter().zip(&lead_exp).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return Err(LogtcError::DivisionError(format!(
                    "{} does not divide {}",
                    divisor, self
                )));
            }
            let qc = rc.div_unit(&lead_coeff)?;
            let t = LaurentPolynomial::monomial(self.vars.clone(), qe, qc);
            q = q.add(&t);
            rem = rem.sub(&t.mul(&d));
        }
        let shift: LatticeVector = ca.iter().zip(&cb).map(|(a, b)| a - b).collect();
        Ok(q.shift_exponents(&shift))
    }

    /// Total degree of a term (sum of positive exponents minus negatives).
    pub fn max_total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// Substitute variable values, shifting a chart; used for multiplicity
    /// computations at a point: x_i -> x_i + a_i (requires nonnegative
    /// exponents).
    pub fn shift(&self, offsets: &[Rat]) -> Result<Self> {
        assert_eq!(offsets.len(), self.vars.len());
        let mut out = LaurentPolynomial::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e.iter().any(|&x| x < 0) {
                return Err(LogtcError::DivisionError(
                    "shift requires a polynomial (no negative exponents)".into(),
                ));
            }
            // expand prod_i (x_i + a_i)^{e_i}
            let mut expanded =
                LaurentPolynomial::constant(self.vars.clone(), c.clone());
            for (i, &ei) in e.iter().enumerate() {
                let mut base = LaurentPolynomial::zero(self.vars.clone());
                let mut unit = vec![0; self.vars.len()];
                unit[i] = 1;
                base.insert_term(unit, Coeff::one());
                base.insert_term(vec![0; self.vars.len()], Coeff::from_rat(offsets[i].clone()));
                expanded = expanded.mul(&base.pow(ei as u32));
            }
            out = out.add(&expanded);
        }
        Ok(out)
    }

    /// Multiplicity of the vanishing locus at the point given by offsets:
    /// the minimal total degree after recentering the chart there.
    pub fn multiplicity_at(&self, point: &[Rat]) -> Result<i64> {
        let shifted = self.shift(point)?;
        Ok(shifted
            .terms
            .keys()
            .map(|e| e.iter().sum::<i64>())
            .min()
            .unwrap_or(i64::MAX))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            let needs_parens = c.0.len() > 1;
            let cs = format!("{}", c);
            let piece = if mono.is_empty() {
                if needs_parens {
                    format!("({})", cs)
                } else {
                    cs
                }
            } else if c.is_one() {
                mono.join("*")
            } else if needs_parens {
                format!("({})*{}", cs, mono.join("*"))
            } else {
                format!("{}*{}", cs, mono.join("*"))
            };
            parts.push(piece);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Restriction to the closed stratum of `face` inside the toric chart
/// `chart`: the sub-sum of terms with exponents in the saturated span of
/// `face`.
pub fn face_restrict(
    p: &LaurentPolynomial,
    face: &Cone,
    chart: &Cone,
) -> Result<LaurentPolynomial> {
    if !chart.has_face(face) {
        return Err(LogtcError::NotAFace(format!("{:?}", face.generators)));
    }
    let mut out = LaurentPolynomial::zero(p.vars.clone());
    for (e, c) in &p.terms {
        if face.span_equations.iter().all(|n| crate::lattice::dot(n, e) == 0) {
            out.insert_term(e.clone(), c.clone());
        }
    }
    Ok(out)
}

/// Restriction by named variables: keep terms supported on `keep`, and
/// express them on the smaller chart. This is face_restrict for the
/// coordinate face spanned by the kept variables.
pub fn restrict_to_vars(p: &LaurentPolynomial, keep: &[String]) -> LaurentPolynomial {
    let kept_idx: Vec<usize> = keep
        .iter()
        .map(|k| p.vars.iter().position(|v| v == k).expect("missing variable"))
        .collect();
    let dropped: Vec<usize> = (0..p.vars.len()).filter(|i| !kept_idx.contains(i)).collect();
    let mut out = LaurentPolynomial::zero(keep.to_vec());
    for (e, c) in &p.terms {
        if dropped.iter().all(|&i| e[i] == 0) {
            let ne: LatticeVector = kept_idx.iter().map(|&i| e[i]).collect();
            out.insert_term(ne, c.clone());
        }
    }
    out
}

/// An element of the Stanley-Reisner module of a fan: exponents must lie in
/// the fan support, coefficients are plain rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct SRElement {
    pub rank: usize,
    pub terms: BTreeMap<LatticeVector, Rat>,
}

impl SRElement {
    pub fn zero(rank: usize) -> Self {
        SRElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(f: &Fan, exp: LatticeVector, c: Rat) -> Result<Self> {
        if !f.supports(&exp) {
            return Err(LogtcError::MonomialUnsupported(format!("{:?}", exp)));
        }
        let mut s = SRElement::zero(f.rank);
        if !c.is_zero() {
            s.terms.insert(exp, c);
        }
        Ok(s)
    }

    pub fn one(f: &Fan) -> Self {
        SRElement::monomial(f, vec![0; f.rank], Rat::one()).expect("unit monomial")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, exp: LatticeVector, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &SRElement) -> SRElement {
        assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

/// z^{m1} * z^{m2} in the Stanley-Reisner ring: z^{m1+m2} when one cone
/// contains both exponents, zero otherwise.
pub fn sr_multiply(f: &Fan, m1: &[i64], m2: &[i64]) -> Result<SRElement> {
    if !f.supports(m1) {
        return Err(LogtcError::MonomialUnsupported(format!("{:?}", m1)));
    }
    if !f.supports(m2) {
        return Err(LogtcError::MonomialUnsupported(format!("{:?}", m2)));
    }
    let joint = f.cones.iter().any(|c| c.contains(m1) && c.contains(m2));
    if joint {
        let sum: LatticeVector = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
        SRElement::monomial(f, sum, Rat::one())
    } else {
        Ok(SRElement::zero(f.rank))
    }
}

/// Bilinear extension of sr_multiply.
pub fn sr_product(f: &Fan, a: &SRElement, b: &SRElement) -> Result<SRElement> {
    if a.rank != f.rank || b.rank != f.rank {
        return Err(LogtcError::FanMismatch);
    }
    let mut out = SRElement::zero(f.rank);
    for (e1, c1) in &a.terms {
        for (e2, c2) in &b.terms {
            let m = sr_multiply(f, e1, e2)?;
            for (e, unit) in m.terms {
                debug_assert!(unit.is_one());
                out.insert(e, c1 * c2);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fans;

    fn vars1() -> Vec<String> {
        vec!["x".to_string()]
    }

    #[test]
    fn sr_multiply_kills_separated_monomials() {
        let f = fans::line();
        let p = sr_multiply(&f, &[1], &[-1]).unwrap();
        assert!(p.is_zero());
        let q = sr_multiply(&f, &[1], &[2]).unwrap();
        assert_eq!(q.terms.len(), 1);
        assert!(q.terms.contains_key(&vec![3]));
    }

    #[test]
    fn sr_multiply_on_quadrant() {
        let quadrant = Fan::new(
            2,
            vec![Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap()],
        )
        .unwrap();
        let p = sr_multiply(&quadrant, &[1, 0], &[0, 1]).unwrap();
        assert!(p.terms.contains_key(&vec![1, 1]));
    }

    #[test]
    fn sr_multiply_at_del_pezzo_vertex() {
        let dp = fans::from_rays_complete(&[vec![0, 1], vec![-1, -1], vec![1, -1]]).unwrap();
        // the x- and z-directions share the cone spanned by them, so the
        // product survives (x*z is nonzero on the third component)
        let p = sr_multiply(&dp, &[-1, -1], &[0, 1]).unwrap();
        assert_eq!(p.terms.len(), 1);
        assert!(p.terms.contains_key(&vec![-1, 0]));
        // the z- and w-directions share no cone: this is the relation zw = 0
        let q = sr_multiply(&dp, &[0, 1], &[0, -1]).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn sr_square_of_sum_kills_mixed_term() {
        let f = fans::line();
        let mut a = SRElement::zero(1);
        a.insert(vec![1], Rat::one());
        a.insert(vec![-1], Rat::one());
        let sq = sr_product(&f, &a, &a).unwrap();
        let mut expect = SRElement::zero(1);
        expect.insert(vec![2], Rat::one());
        expect.insert(vec![-2], Rat::one());
        assert_eq!(sq, expect);
    }

    #[test]
    fn sr_unit_and_zero_laws() {
        let f = fans::line();
        let mut a = SRElement::zero(1);
        a.insert(vec![1], rat(3, 2));
        a.insert(vec![0], rat(-1, 1));
        let one = SRElement::one(&f);
        assert_eq!(sr_product(&f, &a, &one).unwrap(), a);
        let zero = SRElement::zero(1);
        assert!(sr_product(&f, &zero, &a).unwrap().is_zero());
    }

    #[test]
    fn sr_commutative_associative_small_box() {
        // exhaustive on monomials with |exponent| <= 2 over the line fan
        let f = fans::line();
        let monos: Vec<i64> = vec![-2, -1, 0, 1, 2];
        for &a in &monos {
            for &b in &monos {
                let ab = sr_multiply(&f, &[a], &[b]).unwrap();
                let ba = sr_multiply(&f, &[b], &[a]).unwrap();
                assert_eq!(ab, ba);
                for &c in &monos {
                    let e1 = sr_product(&f, &ab, &SRElement::monomial(&f, vec![c], Rat::one()).unwrap()).unwrap();
                    let bc = sr_multiply(&f, &[b], &[c]).unwrap();
                    let e2 = sr_product(&f, &SRElement::monomial(&f, vec![a], Rat::one()).unwrap(), &bc).unwrap();
                    assert_eq!(e1, e2, "associativity at {} {} {}", a, b, c);
                }
            }
        }
    }

    #[test]
    fn face_restrict_constant_term() {
        // a0 + a1 x + a2 x^2 restricted to the origin face
        let mut p = LaurentPolynomial::zero(vars1());
        p.insert_term(vec![0], Coeff::from_symbol("a0"));
        p.insert_term(vec![1], Coeff::from_symbol("a1"));
        p.insert_term(vec![2], Coeff::from_symbol("a2"));
        let chart = Cone::new(1, vec![vec![1]]).unwrap();
        let origin = Cone::zero(1);
        let r = face_restrict(&p, &origin, &chart).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[&vec![0]], Coeff::from_symbol("a0"));
    }

    #[test]
    fn face_restrict_u_axis() {
        // u^2 - z^2 on the (z, u) chart restricted to the u-axis
        let vars = vec!["z".to_string(), "u".to_string()];
        let mut p = LaurentPolynomial::zero(vars.clone());
        p.insert_term(vec![0, 2], Coeff::one());
        p.insert_term(vec![2, 0], Coeff::from_rat(rat_int(-1)));
        let chart = Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let u_axis = Cone::new(2, vec![vec![0, 1]]).unwrap();
        let r = face_restrict(&p, &u_axis, &chart).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert!(r.terms.contains_key(&vec![0, 2]));
        // and a constant restricts to itself
        let c = LaurentPolynomial::constant(vars, Coeff::from_rat(rat(5, 3)));
        let rc = face_restrict(&c, &u_axis, &chart).unwrap();
        assert_eq!(rc, c);
    }

    #[test]
    fn face_restrict_rejects_non_face() {
        let p = LaurentPolynomial::one(vec!["z".into(), "u".into()]);
        let chart = Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let diag = Cone::new(2, vec![vec![1, 1]]).unwrap();
        assert!(matches!(
            face_restrict(&p, &diag, &chart),
            Err(LogtcError::NotAFace(_))
        ));
    }

    #[test]
    fn face_restrict_is_multiplicative_on_chart_support() {
        // restrict(p*q) = restrict(p)*restrict(q) for polys supported on the chart cone
        let vars = vec!["z".to_string(), "u".to_string()];
        let chart = Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let face = Cone::new(2, vec![vec![0, 1]]).unwrap();
        let mut ps = Vec::new();
        for (a, b, c) in [(1i64, 0i64, 2i64), (0, 1, 3), (2, 2, 1)] {
            let mut p = LaurentPolynomial::zero(vars.clone());
            p.insert_term(vec![0, 0], Coeff::from_rat(rat_int(c)));
            p.insert_term(vec![a, b], Coeff::one());
            ps.push(p);
        }
        for p in &ps {
            for q in &ps {
                let lhs = face_restrict(&p.mul(q), &face, &chart).unwrap();
                let rhs = face_restrict(p, &face, &chart)
                    .unwrap()
                    .mul(&face_restrict(q, &face, &chart).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn exact_division() {
        let vars = vec!["z".to_string(), "u".to_string()];
        let mut uminus = LaurentPolynomial::zero(vars.clone());
        uminus.insert_term(vec![0, 1], Coeff::one());
        uminus.insert_term(vec![1, 0], Coeff::from_rat(rat_int(-1)));
        let mut uplus = LaurentPolynomial::zero(vars.clone());
        uplus.insert_term(vec![0, 1], Coeff::one());
        uplus.insert_term(vec![1, 0], Coeff::one());
        let prod = uminus.mul(&uplus);
        let q = prod.div_exact(&uminus).unwrap();
        assert_eq!(q, uplus);
        // monomials are units in the Laurent ring
        let mut z = LaurentPolynomial::zero(vars.clone());
        z.insert_term(vec![1, 0], Coeff::one());
        let by_mono = prod.div_exact(&z).unwrap();
        assert_eq!(by_mono.mul(&z), prod);
        // a genuine non-divisor leaves a remainder
        let mut nd = LaurentPolynomial::zero(vars.clone());
        nd.insert_term(vec![0, 1], Coeff::one());
        nd.insert_term(vec![0, 0], Coeff::one());
        assert!(prod.div_exact(&nd).is_err());
    }

    #[test]
    fn multiplicity_at_points() {
        // u^2 - z^2 has multiplicity 2 at the origin, 1 on branch points
        let vars = vec!["z".to_string(), "u".to_string()];
        let mut p = LaurentPolynomial::zero(vars.clone());
        p.insert_term(vec![0, 2], Coeff::one());
        p.insert_term(vec![2, 0], Coeff::from_rat(rat_int(-1)));
        assert_eq!(p.multiplicity_at(&[Rat::zero(), Rat::zero()]).unwrap(), 2);
        assert_eq!(p.multiplicity_at(&[Rat::one(), Rat::one()]).unwrap(), 1);
        assert_eq!(p.multiplicity_at(&[rat_int(2), Rat::one()]).unwrap(), 0);
        let mut um = LaurentPolynomial::zero(vars);
        um.insert_term(vec![0, 1], Coeff::one());
        um.insert_term(vec![1, 0], Coeff::from_rat(rat_int(-1)));
        assert_eq!(um.multiplicity_at(&[Rat::zero(), Rat::zero()]).unwrap(), 1);
    }

    #[test]
    fn symbolic_coefficients_compose() {
        let a0 = Coeff::from_symbol("a0");
        let b0 = Coeff::from_symbol("b0");
        let prod = a0.mul(&b0);
        assert!(prod.is_symbolic());
        let quotient = prod.div_unit(&Coeff::from_symbol("b0")).unwrap();
        assert_eq!(quotient, a0);
        let sum = a0.add(&b0);
        assert!(sum.as_unit().is_none());
        assert_eq!(format!("{}", prod), "a0*b0");
    }
}
