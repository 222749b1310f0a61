//! File formats: the "logtc-gtc/1" space documents, "logtc-section/1"
//! section documents, and "logtc-plan/1" resolution plans. Serialization is
//! canonical (sorted walls, lex term order, fixed field order) so that
//! parse -> serialize -> parse is the identity byte for byte.

use crate::error::{LogtcError, Result};
use crate::gtc::{
    DivisorData, DivisorMapEntry, Generization, GtcSpace, LSSection, LocalModel, Stratum,
};
use crate::lattice::{Cone, Fan, LatticeVector};
use crate::monoid::BinomialRelation;
use crate::poly::{format_rat, parse_rat, Coeff, LaurentPolynomial};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const GTC_SCHEMA: &str = "logtc-gtc/1";
pub const SECTION_SCHEMA: &str = "logtc-section/1";
pub const PLAN_SCHEMA: &str = "logtc-plan/1";

#[derive(Serialize, Deserialize)]
struct FanDoc {
    rank: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct StratumDoc {
    id: String,
    codim: usize,
    fan: FanDoc,
    chart_vars: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GenerizationDoc {
    lower: String,
    upper: String,
    cone: Vec<usize>,
    projection: Vec<LatticeVector>,
}

#[derive(Serialize, Deserialize)]
struct DivisorEntryDoc {
    m: LatticeVector,
    divisor: Vec<DivisorNameDoc>,
}

#[derive(Serialize, Deserialize)]
struct DivisorNameDoc {
    name: String,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct DivisorDataDoc {
    component: String,
    stratum: String,
    map: Vec<DivisorEntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct LocalModelDoc {
    stratum: String,
    index: i64,
    generators: Vec<LatticeVector>,
    relations: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GtcDoc {
    schema: String,
    dimension: usize,
    strata: Vec<StratumDoc>,
    poset: Vec<(String, String)>,
    generization: Vec<GenerizationDoc>,
    divisor_data: Vec<DivisorDataDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    local_models: Vec<LocalModelDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffDoc {
    Rational(String),
    Symbol { sym: String },
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    exp: LatticeVector,
    coeff: CoeffDoc,
}

#[derive(Serialize, Deserialize)]
struct WallPolyDoc {
    id: String,
    poly: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct SectionDoc {
    schema: String,
    walls: Vec<WallPolyDoc>,
}

fn fan_to_doc(f: &Fan) -> Result<FanDoc> {
    let rays = f.rays();
    let mut cones = Vec::new();
    for c in &f.cones {
        for g in &c.generators {
            if !rays.contains(g) && c.dim >= 1 && !c.is_pointed() {
                return Err(LogtcError::FanSheafError(
                    "fan with non-ray generators cannot be serialized".into(),
                ));
            }
        }
        let idx: Vec<usize> = rays
            .iter()
            .enumerate()
            .filter(|(_, r)| c.contains(r))
            .map(|(i, _)| i)
            .collect();
        cones.push(idx);
    }
    cones.sort();
    cones.dedup();
    Ok(FanDoc {
        rank: f.rank,
        rays,
        cones,
    })
}

fn fan_from_doc(doc: &FanDoc, path: &str) -> Result<Fan> {
    let mut cones = Vec::new();
    for (i, idx) in doc.cones.iter().enumerate() {
        let gens: Vec<LatticeVector> = idx
            .iter()
            .map(|&j| {
                doc.rays.get(j).cloned().ok_or_else(|| LogtcError::SchemaError {
                    path: format!("{}.cones[{}]", path, i),
                    msg: format!("ray index {} out of range", j),
                })
            })
            .collect::<Result<_>>()?;
        cones.push(Cone::new(doc.rank, gens).map_err(|e| LogtcError::SchemaError {
            path: format!("{}.cones[{}]", path, i),
            msg: e.to_string(),
        })?);
    }
    Fan::new(doc.rank, cones).map_err(|e| LogtcError::FanSheafError(e.to_string()))
}

pub fn serialize_gtc(space: &GtcSpace) -> Result<String> {
    let mut strata = Vec::new();
    for s in &space.strata {
        strata.push(StratumDoc {
            id: s.id.clone(),
            codim: s.codim,
            fan: fan_to_doc(&s.fan)?,
            chart_vars: s.chart_vars.clone(),
        });
    }
    let mut poset = space.poset.clone();
    poset.sort();
    let mut generization: Vec<GenerizationDoc> = space
        .generization
        .iter()
        .map(|g| GenerizationDoc {
            lower: g.lower.clone(),
            upper: g.upper.clone(),
            cone: g.cone_rays.clone(),
            projection: g.projection.clone(),
        })
        .collect();
    generization.sort_by(|a, b| (&a.lower, &a.upper).cmp(&(&b.lower, &b.upper)));
    let mut divisor_data: Vec<DivisorDataDoc> = space
        .divisor_data
        .iter()
        .map(|d| DivisorDataDoc {
            component: d.component.clone(),
            stratum: d.stratum.clone(),
            map: d
                .map
                .iter()
                .map(|e| DivisorEntryDoc {
                    m: e.m.clone(),
                    divisor: e
                        .divisor
                        .iter()
                        .map(|(name, mult)| DivisorNameDoc {
                            name: name.clone(),
                            mult: *mult,
                        })
                        .collect(),
                })
                .collect(),
        })
        .collect();
    divisor_data.sort_by(|a, b| (&a.component, &a.stratum).cmp(&(&b.component, &b.stratum)));
    let local_models = space
        .local_models
        .iter()
        .map(|l| LocalModelDoc {
            stratum: l.stratum.clone(),
            index: l.index,
            generators: l.generators.clone(),
            relations: l.relation_text.clone(),
        })
        .collect();
    let doc = GtcDoc {
        schema: GTC_SCHEMA.to_string(),
        dimension: space.dimension,
        strata,
        poset,
        generization,
        divisor_data,
        local_models,
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

pub fn parse_gtc(text: &str) -> Result<GtcSpace> {
    let doc: GtcDoc = serde_json::from_str(text).map_err(|e| LogtcError::SchemaError {
        path: format!("line {} column {}", e.line(), e.column()),
        msg: e.to_string(),
    })?;
    if doc.schema != GTC_SCHEMA {
        return Err(LogtcError::SchemaError {
            path: "schema".into(),
            msg: format!("expected {}, got {}", GTC_SCHEMA, doc.schema),
        });
    }
    let mut strata = Vec::new();
    for (i, s) in doc.strata.iter().enumerate() {
        let fan = fan_from_doc(&s.fan, &format!("strata[{}].fan", i))?;
        if fan.rank != s.codim {
            return Err(LogtcError::SchemaError {
                path: format!("strata[{}]", i),
                msg: format!("fan rank {} != codim {}", fan.rank, s.codim),
            });
        }
        strata.push(Stratum {
            id: s.id.clone(),
            codim: s.codim,
            fan,
            chart_vars: s.chart_vars.clone(),
        });
    }
    let generization = doc
        .generization
        .iter()
        .map(|g| Generization {
            lower: g.lower.clone(),
            upper: g.upper.clone(),
            cone_rays: g.cone.clone(),
            projection: g.projection.clone(),
        })
        .collect();
    let divisor_data = doc
        .divisor_data
        .iter()
        .map(|d| DivisorData {
            component: d.component.clone(),
            stratum: d.stratum.clone(),
            map: d
                .map
                .iter()
                .map(|e| DivisorMapEntry {
                    m: e.m.clone(),
                    divisor: e.divisor.iter().map(|n| (n.name.clone(), n.mult)).collect(),
                })
                .collect(),
        })
        .collect();
    let local_models = doc
        .local_models
        .iter()
        .map(|l| LocalModel {
            stratum: l.stratum.clone(),
            index: l.index,
            generators: l.generators.clone(),
            relations: Vec::new(),
            relation_text: l.relations.clone(),
        })
        .collect();
    let space = GtcSpace {
        dimension: doc.dimension,
        strata,
        poset: doc.poset,
        generization,
        divisor_data,
        local_models,
    };
    // structural sanity beyond the schema: ids resolve
    for (l, u) in &space.poset {
        space.stratum(l).map_err(|_| LogtcError::SchemaError {
            path: "poset".into(),
            msg: format!("unknown stratum {}", l),
        })?;
        space.stratum(u).map_err(|_| LogtcError::SchemaError {
            path: "poset".into(),
            msg: format!("unknown stratum {}", u),
        })?;
    }
    Ok(space)
}

fn coeff_to_doc(c: &Coeff) -> Result<CoeffDoc> {
    if let Some(r) = c.as_rat() {
        return Ok(CoeffDoc::Rational(format_rat(&r)));
    }
    if let Some((m, r)) = c.as_unit() {
        if num_traits::One::is_one(&r) && m.0.len() == 1 {
            let (name, &e) = m.0.iter().next().unwrap();
            if e == 1 {
                return Ok(CoeffDoc::Symbol { sym: name.clone() });
            }
        }
    }
    Err(LogtcError::UnsupportedCoefficient)
}

fn coeff_from_doc(doc: &CoeffDoc, path: &str) -> Result<Coeff> {
    match doc {
        CoeffDoc::Rational(s) => parse_rat(s)
            .map(Coeff::from_rat)
            .ok_or_else(|| LogtcError::SchemaError {
                path: path.to_string(),
                msg: format!("bad rational {:?}", s),
            }),
        CoeffDoc::Symbol { sym } => Ok(Coeff::from_symbol(sym)),
    }
}

pub fn serialize_section(section: &LSSection) -> Result<String> {
    let mut walls = Vec::new();
    for (id, poly) in &section.walls {
        let mut terms = Vec::new();
        for (exp, c) in &poly.terms {
            terms.push(TermDoc {
                exp: exp.clone(),
                coeff: coeff_to_doc(c)?,
            });
        }
        walls.push(WallPolyDoc {
            id: id.clone(),
            poly: terms,
        });
    }
    let doc = SectionDoc {
        schema: SECTION_SCHEMA.to_string(),
        walls,
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

/// Parse a section document against a space: wall ids must be walls of the
/// space and exponent vectors must match the wall chart rank.
pub fn parse_section(text: &str, space: &GtcSpace) -> Result<LSSection> {
    let doc: SectionDoc = serde_json::from_str(text).map_err(|e| LogtcError::SchemaError {
        path: format!("line {} column {}", e.line(), e.column()),
        msg: e.to_string(),
    })?;
    if doc.schema != SECTION_SCHEMA {
        return Err(LogtcError::SchemaError {
            path: "schema".into(),
            msg: format!("expected {}, got {}", SECTION_SCHEMA, doc.schema),
        });
    }
    let mut walls = BTreeMap::new();
    for (i, w) in doc.walls.iter().enumerate() {
        let stratum = space.stratum(&w.id).map_err(|_| LogtcError::SchemaError {
            path: format!("walls[{}].id", i),
            msg: format!("unknown wall {}", w.id),
        })?;
        if stratum.codim != 1 {
            return Err(LogtcError::SchemaError {
                path: format!("walls[{}].id", i),
                msg: format!("{} is not a wall", w.id),
            });
        }
        let mut poly = LaurentPolynomial::zero(stratum.chart_vars.clone());
        for (j, t) in w.poly.iter().enumerate() {
            if t.exp.len() != stratum.chart_vars.len() {
                return Err(LogtcError::SchemaError {
                    path: format!("walls[{}].poly[{}].exp", i, j),
                    msg: format!(
                        "expected {} exponents, got {}",
                        stratum.chart_vars.len(),
                        t.exp.len()
                    ),
                });
            }
            let c = coeff_from_doc(&t.coeff, &format!("walls[{}].poly[{}].coeff", i, j))?;
            poly.insert_term(t.exp.clone(), c);
        }
        if poly.is_zero() {
            return Err(LogtcError::SchemaError {
                path: format!("walls[{}]", i),
                msg: "wall polynomial is zero".into(),
            });
        }
        walls.insert(w.id.clone(), poly);
    }
    Ok(LSSection::new(walls))
}

/// Format a binomial relation over named generators, e.g. "x*y = t^3".
pub fn relation_text(rel: &BinomialRelation, names: &[String]) -> String {
    let side = |terms: &[(usize, u32)]| -> String {
        if terms.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = terms
            .iter()
            .map(|(i, e)| {
                if *e == 1 {
                    names[*i].clone()
                } else {
                    format!("{}^{}", names[*i], e)
                }
            })
            .collect();
        parts.sort();
        parts.join("*")
    };
    format!("{} = {}", side(&rel.lhs), side(&rel.rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtc::from_moment_complex;
    use crate::plf::del_pezzo_complex;

    #[test]
    fn gtc_roundtrip_is_identity() {
        let space = from_moment_complex(&del_pezzo_complex()).unwrap();
        let text = serialize_gtc(&space).unwrap();
        let back = parse_gtc(&text).unwrap();
        let text2 = serialize_gtc(&back).unwrap();
        assert_eq!(text, text2);
    }

    #[test]
    fn truncated_gtc_is_a_schema_error() {
        let space = from_moment_complex(&del_pezzo_complex()).unwrap();
        let text = serialize_gtc(&space).unwrap();
        let truncated = &text[..text.len() / 2];
        assert!(matches!(
            parse_gtc(truncated),
            Err(LogtcError::SchemaError { .. })
        ));
    }
}
