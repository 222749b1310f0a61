//! Exact factorization of wall polynomials over Q, as far as the vanishing
//! divisor needs: monomial content, rational roots, squarefree splitting,
//! Kronecker search for small-degree factors (total degree <= 8), and
//! products of linear forms on two-variable charts.

use crate::error::{LogtcError, Result};
use crate::poly::{Coeff, LaurentPolynomial, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A factored vanishing divisor: irreducible (or atomic) factors with
/// multiplicities. The unit part (constant times monomial) is dropped except
/// for coordinate factors coming from the monomial content, which vanish on
/// the chart and are kept as factors.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredDivisor {
    pub factors: Vec<(LaurentPolynomial, i64)>,
}

impl FactoredDivisor {
    pub fn total_degree(&self) -> i64 {
        self.factors
            .iter()
            .map(|(f, m)| f.max_total_degree() * m)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Factor a wall polynomial into its vanishing divisor. Supported inputs:
/// rational coefficients, univariate up to degree 8, or a product of linear
/// forms on a two-variable chart.
pub fn factor_wall_polynomial(p: &LaurentPolynomial) -> Result<FactoredDivisor> {
    if p.is_zero() {
        return Err(LogtcError::FactorizationUnsupported(
            "zero polynomial".into(),
        ));
    }
    if p.terms.values().any(|c| c.is_symbolic()) {
        return Err(LogtcError::FactorizationUnsupported(
            "symbolic coefficients".into(),
        ));
    }
    let mut factors: Vec<(LaurentPolynomial, i64)> = Vec::new();
    // monomial content: coordinate hyperplane factors
    let nvars = p.vars.len();
    let mut content = vec![i64::MAX; nvars];
    for e in p.terms.keys() {
        for i in 0..nvars {
            content[i] = content[i].min(e[i]);
        }
    }
    let mut body = p.clone();
    for (i, &c) in content.iter().enumerate() {
        if c != 0 {
            let mut shift = vec![0i64; nvars];
            shift[i] = -c;
            body = shift_poly(&body, &shift);
            if c > 0 {
                factors.push((LaurentPolynomial::var(p.vars.clone(), &p.vars[i]), c));
            }
            // negative content is a unit twist, not a vanishing factor
        }
    }
    // constant remainder: done
    if body.terms.len() == 1 {
        sort_factors(&mut factors);
        return Ok(FactoredDivisor { factors });
    }
    let active: Vec<usize> = (0..nvars)
        .filter(|&i| body.terms.keys().any(|e| e[i] != 0))
        .collect();
    match active.len() {
        1 => {
            let uni = factor_univariate(&body, active[0])?;
            factors.extend(uni);
            sort_factors(&mut factors);
            Ok(FactoredDivisor { factors })
        }
        2 => {
            let lin = factor_linear_forms(&body, active[0], active[1])?;
            factors.extend(lin);
            sort_factors(&mut factors);
            Ok(FactoredDivisor { factors })
        }
        n => Err(LogtcError::FactorizationUnsupported(format!(
            "polynomial in {} variables",
            n
        ))),
    }
}

fn sort_factors(factors: &mut [(LaurentPolynomial, i64)]) {
    factors.sort_by_key(|(f, _)| format!("{}", f));
}

fn shift_poly(p: &LaurentPolynomial, by: &[i64]) -> LaurentPolynomial {
    LaurentPolynomial {
        vars: p.vars.clone(),
        terms: p
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
            .collect(),
    }
}

/// Coefficients of a polynomial in one active variable, ascending, as exact
/// rationals.
fn univariate_coeffs(p: &LaurentPolynomial, var: usize) -> Vec<Rat> {
    let deg = p.terms.keys().map(|e| e[var]).max().unwrap_or(0);
    let mut out = vec![Rat::zero(); (deg + 1) as usize];
    for (e, c) in &p.terms {
        out[e[var] as usize] = c.as_rat().expect("numeric coefficient");
    }
    out
}

fn from_univariate(vars: &[String], var: usize, coeffs: &[BigInt]) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero(vars.to_vec());
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let mut e = vec![0i64; vars.len()];
            e[var] = k as i64;
            p.insert_term(e, Coeff::from_rat(Rat::from(c.clone())));
        }
    }
    p
}

/// Clear denominators and divide by the integer content; positive leading
/// coefficient.
fn integral_primitive(coeffs: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in &mut ints {
            *c /= &g;
        }
    }
    if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in &mut ints {
            *c = -c.clone();
        }
    }
    ints
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

const DIVISOR_BUDGET: usize = 4096;

/// All divisors of |n| (positive and negative), with a budget.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Err(LogtcError::FactorizationUnsupported(
            "divisor enumeration of zero".into(),
        ));
    }
    // prime factorization by trial division with a bailout
    let mut prime_powers: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    let bailout = BigInt::from(1_000_000u64);
    while &d * &d <= m {
        if d > bailout {
            return Err(LogtcError::FactorizationUnsupported(
                "coefficient too large to factor".into(),
            ));
        }
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            e += 1;
            m /= &d;
        }
        if e > 0 {
            prime_powers.push((d.clone(), e));
        }
        d += 1;
    }
    if !m.is_one() {
        prime_powers.push((m, 1));
    }
    let mut divs: Vec<BigInt> = vec![BigInt::one()];
    for (p, e) in prime_powers {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &p;
                next.push(acc.clone());
            }
        }
        if next.len() > DIVISOR_BUDGET {
            return Err(LogtcError::FactorizationUnsupported(
                "too many divisors".into(),
            ));
        }
        divs = next;
    }
    let mut all: Vec<BigInt> = divs.iter().map(|d| -d.clone()).collect();
    all.extend(divs);
    all.sort();
    all.dedup();
    Ok(all)
}

/// Univariate exact gcd (monic output).
fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    fn trim(v: &mut Vec<Rat>) {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let db = b.len() - 1;
        let lead = b[db].clone();
        while a.len() > db && !a.is_empty() {
            let da = a.len() - 1;
            if da < db {
                break;
            }
            let f = &a[da] / &lead;
            for i in 0..=db {
                let t = &f * &b[i];
                a[da - db + i] -= t;
            }
            trim(&mut a);
            if a.len() <= db {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    trim(&mut a);
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

fn derivative(coeffs: &[Rat]) -> Vec<Rat> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from(BigInt::from(i as i64)))
        .collect()
}

fn div_univariate(a: &[Rat], b: &[Rat]) -> Option<Vec<Rat>> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if lead.is_zero() {
        return None;
    }
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db)];
    while rem.len() > db {
        let da = rem.len() - 1;
        let f = &rem[da] / &lead;
        q[da - db] = f.clone();
        for i in 0..=db {
            let t = &f * &b[i];
            rem[da - db + i] -= t;
        }
        while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    if rem.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Factor a univariate polynomial (in the active variable) into irreducible
/// factors over Q with multiplicities. Degree must be <= 8.
fn factor_univariate(
    p: &LaurentPolynomial,
    var: usize,
) -> Result<Vec<(LaurentPolynomial, i64)>> {
    let coeffs = univariate_coeffs(p, var);
    let deg = coeffs.len() as i64 - 1;
    if deg > 8 {
        return Err(LogtcError::FactorizationUnsupported(format!(
            "degree {} exceeds 8",
            deg
        )));
    }
    let mut out: Vec<(Vec<BigInt>, i64)> = Vec::new();
    let mut rest = integral_primitive(&coeffs);

    // rational roots p/q: p | constant term, q | leading coefficient
    'roots: loop {
        if rest.len() <= 1 {
            break;
        }
        let c0 = rest[0].clone();
        if c0.is_zero() {
            // handled by monomial content upstream; defensive split
            let shifted: Vec<BigInt> = rest[1..].to_vec();
            out.push((vec![BigInt::zero(), BigInt::one()], 1));
            rest = shifted;
            continue;
        }
        let lead = rest.last().unwrap().clone();
        for pnum in divisors(&c0)? {
            for pden in divisors(&lead)? {
                if pden.is_negative() {
                    continue;
                }
                let root = Rat::new(pnum.clone(), pden.clone());
                let val: Rat = rest
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        Rat::from(c.clone())
                            * pow_rat(&root, i as u32)
                    })
                    .sum();
                if val.is_zero() {
                    // factor q x - p
                    let lin = vec![-root.numer().clone(), root.denom().clone()];
                    let rat_rest: Vec<Rat> =
                        rest.iter().map(|c| Rat::from(c.clone())).collect();
                    let rat_lin: Vec<Rat> = lin.iter().map(|c| Rat::from(c.clone())).collect();
                    let q = div_univariate(&rat_rest, &rat_lin)
                        .expect("root division");
                    if let Some(e) = out.iter_mut().find(|(f, _)| *f == lin) {
                        e.1 += 1;
                    } else {
                        out.push((lin, 1));
                    }
                    rest = integral_primitive(&q);
                    continue 'roots;
                }
            }
        }
        break;
    }

    if rest.len() > 1 {
        // squarefree decomposition of the root-free part
        let rat_rest: Vec<Rat> = rest.iter().map(|c| Rat::from(c.clone())).collect();
        for (part, mult) in squarefree_parts(&rat_rest) {
            for f in kronecker_irreducible(&integral_primitive(&part))? {
                if let Some(e) = out.iter_mut().find(|(g, _)| *g == f) {
                    e.1 += mult;
                } else {
                    out.push((f, mult));
                }
            }
        }
    }

    Ok(out
        .into_iter()
        .map(|(f, m)| (from_univariate(&p.vars, var, &f), m))
        .collect())
}

fn pow_rat(r: &Rat, n: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..n {
        out *= r;
    }
    out
}

/// Yun-style squarefree split: returns (squarefree factor, multiplicity).
fn squarefree_parts(f: &[Rat]) -> Vec<(Vec<Rat>, i64)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut mult = 1i64;
    loop {
        if f.len() <= 1 {
            break;
        }
        let g = poly_gcd(&f, &derivative(&f));
        if g.len() <= 1 {
            out.push((f.clone(), mult));
            break;
        }
        let sqfree_all = div_univariate(&f, &g).expect("gcd divides");
        // sqfree_all contains each irreducible factor once; peel those that
        // do not divide g (multiplicity exactly `mult` here)
        let keep = poly_gcd(&sqfree_all, &g);
        let this_level = if keep.len() <= 1 {
            sqfree_all.clone()
        } else {
            div_univariate(&sqfree_all, &keep).expect("gcd divides")
        };
        if this_level.len() > 1 {
            out.push((this_level, mult));
        }
        f = g;
        mult += 1;
    }
    out
}

/// Split a squarefree integral polynomial into irreducible factors by
/// Kronecker interpolation (factors of degree <= deg/2 searched first).
fn kronecker_irreducible(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let deg = f.len() as i64 - 1;
    if deg <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    // degree 2 and 3: no rational roots remain, hence irreducible
    if deg <= 3 {
        return Ok(vec![f.to_vec()]);
    }
    for k in 2..=(deg / 2) {
        // sample points 0, 1, -1, 2, -2, ...
        let pts: Vec<BigInt> = (0..=k)
            .map(|i| {
                let half = (i + 1) / 2;
                if i % 2 == 1 {
                    BigInt::from(half)
                } else {
                    BigInt::from(-half)
                }
            })
            .collect();
        let values: Vec<BigInt> = pts.iter().map(|x| eval_int(f, x)).collect();
        if values.iter().any(|v| v.is_zero()) {
            // a root slipped through; shouldn't happen after root extraction
            continue;
        }
        let divisor_lists: Vec<Vec<BigInt>> = values
            .iter()
            .map(divisors)
            .collect::<Result<_>>()?;
        let mut combo = vec![0usize; pts.len()];
        'combos: loop {
            let samples: Vec<(BigInt, Rat)> = pts
                .iter()
                .zip(&combo)
                .zip(&divisor_lists)
                .map(|((x, &ci), ds)| (x.clone(), Rat::from(ds[ci].clone())))
                .collect();
            if let Some(cand) = interpolate(&samples, k as usize) {
                let cand_int = integral_primitive(&cand);
                if cand_int.len() as i64 == k + 1 {
                    let fr: Vec<Rat> = f.iter().map(|c| Rat::from(c.clone())).collect();
                    let cr: Vec<Rat> = cand_int.iter().map(|c| Rat::from(c.clone())).collect();
                    if let Some(q) = div_univariate(&fr, &cr) {
                        let mut rest = kronecker_irreducible(&integral_primitive(&q))?;
                        let mut this = kronecker_irreducible(&cand_int)?;
                        this.append(&mut rest);
                        return Ok(this);
                    }
                }
            }
            // advance combo
            for i in 0..combo.len() {
                combo[i] += 1;
                if combo[i] < divisor_lists[i].len() {
                    continue 'combos;
                }
                combo[i] = 0;
            }
            break;
        }
    }
    Ok(vec![f.to_vec()])
}

/// Lagrange interpolation through (x_i, y_i); None if the result exceeds the
/// requested degree.
fn interpolate(samples: &[(BigInt, Rat)], degree: usize) -> Option<Vec<Rat>> {
    let n = samples.len();
    let mut coeffs = vec![Rat::zero(); n];
    for (i, (xi, yi)) in samples.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * Rat::from(xj.clone());
            }
            basis = next;
            denom *= Rat::from(xi - xj);
        }
        let scale = yi / denom;
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    if coeffs.len() > degree + 1 {
        None
    } else {
        Some(coeffs)
    }
}

/// Factor a two-variable polynomial into linear forms a v1 + b v2 + c, if
/// possible; leftover non-unit parts are unsupported.
fn factor_linear_forms(
    p: &LaurentPolynomial,
    v1: usize,
    v2: usize,
) -> Result<Vec<(LaurentPolynomial, i64)>> {
    let mut out: Vec<(LaurentPolynomial, i64)> = Vec::new();
    let mut rest = p.clone();
    let mut progress = true;
    while progress && rest.terms.len() > 1 {
        progress = false;
        'dirs: for a in -3i64..=3 {
            for b in 0i64..=3 {
                if (a, b) == (0, 0) || crate::lattice::gcd(a, b) != 1 {
                    continue;
                }
                if b == 0 && a < 0 {
                    continue;
                }
                for c in candidate_offsets(&rest, v1, v2, a, b)? {
                    let mut form = LaurentPolynomial::zero(p.vars.clone());
                    let mut e1 = vec![0i64; p.vars.len()];
                    e1[v1] = 1;
                    let mut e2 = vec![0i64; p.vars.len()];
                    e2[v2] = 1;
                    form.insert_term(e1, Coeff::from_rat(Rat::from(BigInt::from(a))));
                    form.insert_term(e2, Coeff::from_rat(Rat::from(BigInt::from(b))));
                    form.insert_term(vec![0i64; p.vars.len()], Coeff::from_rat(c.clone()));
                    if form.terms.len() < 2 {
                        continue;
                    }
                    if let Ok(q) = rest.div_exact(&form) {
                        if let Some(e) = out.iter_mut().find(|(g, _)| *g == form) {
                            e.1 += 1;
                        } else {
                            out.push((form, 1));
                        }
                        rest = q;
                        progress = true;
                        break 'dirs;
                    }
                }
            }
        }
    }
    if rest.terms.len() > 1 {
        return Err(LogtcError::FactorizationUnsupported(
            "not a product of linear forms".into(),
        ));
    }
    Ok(out)
}

/// Candidate constant offsets c for a linear factor a v1 + b v2 + c: the
/// rational roots of the restriction of p to a line transverse to the form.
fn candidate_offsets(
    p: &LaurentPolynomial,
    v1: usize,
    v2: usize,
    a: i64,
    b: i64,
) -> Result<Vec<Rat>> {
    // restrict to v2 = 0 (if b != 0 use v1 = 0 instead when degenerate):
    // a v1 + c = 0 at roots of p(v1, 0), so c = -a root
    let mut cands = vec![Rat::zero()];
    let line = |keep: usize, kill: usize| -> LaurentPolynomial {
        let mut q = LaurentPolynomial::zero(p.vars.clone());
        for (e, coeff) in &p.terms {
            if e[kill] == 0 {
                q.insert_term(e.clone(), coeff.clone());
            }
        }
        let _ = keep;
        q
    };
    if a != 0 {
        let q = line(v1, v2);
        if !q.is_zero() && q.terms.len() > 1 {
            for (f, _) in factor_univariate(&q, v1)? {
                if let Some(r) = linear_root(&f, v1) {
                    cands.push(-Rat::from(BigInt::from(a)) * r);
                }
            }
        }
    }
    if b != 0 {
        let q = line(v2, v1);
        if !q.is_zero() && q.terms.len() > 1 {
            for (f, _) in factor_univariate(&q, v2)? {
                if let Some(r) = linear_root(&f, v2) {
                    cands.push(-Rat::from(BigInt::from(b)) * r);
                }
            }
        }
    }
    cands.sort();
    cands.dedup();
    Ok(cands)
}

fn linear_root(f: &LaurentPolynomial, var: usize) -> Option<Rat> {
    let coeffs = univariate_coeffs(f, var);
    if coeffs.len() == 2 {
        Some(-(&coeffs[0] / &coeffs[1]))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn uni(vars: &[&str], coeffs: &[i64]) -> LaurentPolynomial {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut p = LaurentPolynomial::zero(vars);
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.insert_term(vec![k as i64], Coeff::from_rat(rat_int(c)));
            }
        }
        p
    }

    #[test]
    fn linear_coordinate_factor() {
        let p = uni(&["u"], &[0, 1]); // u
        let d = factor_wall_polynomial(&p).unwrap();
        assert_eq!(d.total_degree(), 1);
        assert_eq!(d.factors.len(), 1);
    }

    #[test]
    fn constant_has_empty_divisor() {
        let p = uni(&["u"], &[7]);
        let d = factor_wall_polynomial(&p).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn quadratic_with_rational_roots() {
        // (x - 1)(x - 2) = 2 - 3x + x^2
        let p = uni(&["x"], &[2, -3, 1]);
        let d = factor_wall_polynomial(&p).unwrap();
        assert_eq!(d.total_degree(), 2);
        assert_eq!(d.factors.len(), 2);
    }

    #[test]
    fn irreducible_quadratic() {
        let p = uni(&["x"], &[1, 1, 1]);
        let d = factor_wall_polynomial(&p).unwrap();
        assert_eq!(d.total_degree(), 2);
        assert_eq!(d.factors.len(), 1);
    }

    #[test]
    fn squarefree_multiplicities() {
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let p = uni(&["x"], &[2, -3, 0, 1]);
        let d = factor_wall_polynomial(&p).unwrap();
        assert_eq!(d.total_degree(), 3);
        let mults: Vec<i64> = d.factors.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
    }

    #[test]
    fn quartic_splitting_into_quadratics() {
        // (x^2 + 1)(x^2 + 2) = x^4 + 3x^2 + 2
        let p = uni(&["x"], &[2, 0, 3, 0, 1]);
        let d = factor_wall_polynomial(&p).unwrap();
        assert_eq!(d.total_degree(), 4);
        assert_eq!(d.factors.len(), 2);
        for (f, m) in &d.factors {
            assert_eq!(*m, 1);
            assert_eq!(f.max_total_degree(), 2);
        }
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // x^4 + x + 1 is irreducible over Q
        let p = uni(&["x"], &[1, 1, 0, 0, 1]);
        let d = factor_wall_polynomial(&p).unwrap();
        assert_eq!(d.total_degree(), 4);
        assert_eq!(d.factors.len(), 1);
    }

    #[test]
    fn difference_of_squares_on_surface_chart() {
        // u^2 - z^2 on (z, u)
        let vars: Vec<String> = vec!["z".into(), "u".into()];
        let mut p = LaurentPolynomial::zero(vars);
        p.insert_term(vec![0, 2], Coeff::one());
        p.insert_term(vec![2, 0], Coeff::from_rat(rat_int(-1)));
        let d = factor_wall_polynomial(&p).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.total_degree(), 2);
        for (f, m) in &d.factors {
            assert_eq!(*m, 1);
            assert_eq!(f.max_total_degree(), 1);
            assert_eq!(f.terms.len(), 2);
        }
    }

    #[test]
    fn degree_additivity_of_divisors() {
        let f = uni(&["x"], &[2, -3, 1]);
        let g = uni(&["x"], &[1, 1, 1]);
        let fg = f.mul(&g);
        let df = factor_wall_polynomial(&f).unwrap().total_degree();
        let dg = factor_wall_polynomial(&g).unwrap().total_degree();
        let dfg = factor_wall_polynomial(&fg).unwrap().total_degree();
        assert_eq!(dfg, df + dg);
    }

    #[test]
    fn symbolic_rejected() {
        let mut p = LaurentPolynomial::zero(vec!["x".into()]);
        p.insert_term(vec![0], Coeff::from_symbol("a0"));
        p.insert_term(vec![1], Coeff::one());
        assert!(matches!(
            factor_wall_polynomial(&p),
            Err(LogtcError::FactorizationUnsupported(_))
        ));
    }
}
