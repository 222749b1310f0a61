//! The built-in example catalog: the two-components space, the easiest
//! singular surface, the reducible quartic del Pezzo surface, and the
//! transverse A1 threefold, each with its standard candidate section.

use crate::error::Result;
use crate::gtc::{
    from_moment_complex, rename, DivisorData, DivisorMapEntry, Generization, GtcSpace, LSSection,
    LocalModel, Stratum,
};
use crate::json::relation_text;
use crate::lattice::{fans, Fan};
use crate::monoid::{monoid_presentation, Congruence};
use crate::plf::del_pezzo_complex;
use crate::poly::{rat, Coeff, LaurentPolynomial, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub const CATALOG_NAMES: [&str; 4] = ["two-components", "a1-surface", "dp4", "a1-threefold"];

/// Two smooth components glued along a divisor, with the r-th order local
/// model x y = t^r recorded as a monoid presentation.
pub fn two_components_space(r: i64) -> Result<GtcSpace> {
    let mut space = two_wall_space("Y1", "Y2", "D", "s", 2);
    let quadrant = crate::lattice::Cone::new(2, vec![vec![1, 0], vec![0, 1]])?;
    let congruences = if r > 1 {
        vec![Congruence {
            modulus: r,
            functional: vec![1, -1],
        }]
    } else {
        vec![]
    };
    let pres = monoid_presentation(&quadrant, &congruences)?;
    let names: Vec<String> = match pres.generators.len() {
        2 => vec!["y".into(), "x".into()],
        3 => vec!["y".into(), "t".into(), "x".into()],
        _ => (0..pres.generators.len()).map(|i| format!("g{}", i)).collect(),
    };
    // generator order is sorted lex: for r > 1 that is (0,r) < (1,1) < (r,0),
    // i.e. y, t, x; display relations with those names
    let relation_texts: Vec<String> = pres
        .relations
        .iter()
        .map(|rel| relation_text(rel, &names))
        .collect();
    space.local_models.push(LocalModel {
        stratum: "D".into(),
        index: r,
        generators: pres.generators.clone(),
        relations: pres.relations.clone(),
        relation_text: relation_texts,
    });
    Ok(space)
}

pub fn two_components_section(space: &GtcSpace) -> LSSection {
    let vars = space.stratum("D").unwrap().chart_vars.clone();
    let mut walls = BTreeMap::new();
    walls.insert("D".to_string(), LaurentPolynomial::one(vars));
    LSSection::new(walls)
}

/// The surface x y = 0 in affine three-space: two planes meeting along the
/// u-line, with the wall function u.
pub fn a1_surface_space() -> GtcSpace {
    two_wall_space("X1", "X2", "S", "u", 2)
}

pub fn a1_surface_section(space: &GtcSpace) -> LSSection {
    let vars = space.stratum("S").unwrap().chart_vars.clone();
    let mut walls = BTreeMap::new();
    walls.insert("S".to_string(), LaurentPolynomial::var(vars, "u"));
    LSSection::new(walls)
}

/// Common shape shared by the two joint-free catalog spaces: two components
/// and one wall.
fn two_wall_space(c1: &str, c2: &str, wall: &str, var: &str, dimension: usize) -> GtcSpace {
    let strata = vec![
        Stratum {
            id: c1.to_string(),
            codim: 0,
            fan: Fan::zero_fan(),
            chart_vars: vec![],
        },
        Stratum {
            id: c2.to_string(),
            codim: 0,
            fan: Fan::zero_fan(),
            chart_vars: vec![],
        },
        Stratum {
            id: wall.to_string(),
            codim: 1,
            fan: fans::line(),
            chart_vars: vec![var.to_string()],
        },
    ];
    let poset = vec![
        (wall.to_string(), c1.to_string()),
        (wall.to_string(), c2.to_string()),
    ];
    // rays() of the line fan lists [-1] first, [1] second
    let generization = vec![
        Generization {
            lower: wall.to_string(),
            upper: c1.to_string(),
            cone_rays: vec![1],
            projection: vec![],
        },
        Generization {
            lower: wall.to_string(),
            upper: c2.to_string(),
            cone_rays: vec![0],
            projection: vec![],
        },
    ];
    let divisor_data = vec![
        DivisorData {
            component: c1.to_string(),
            stratum: wall.to_string(),
            map: vec![DivisorMapEntry {
                m: vec![1],
                divisor: vec![(wall.to_string(), 1)],
            }],
        },
        DivisorData {
            component: c2.to_string(),
            stratum: wall.to_string(),
            map: vec![DivisorMapEntry {
                m: vec![-1],
                divisor: vec![(wall.to_string(), 1)],
            }],
        },
    ];
    GtcSpace {
        dimension,
        strata,
        poset,
        generization,
        divisor_data,
        local_models: vec![],
    }
}

/// The reducible quartic del Pezzo surface: three toric surfaces glued per
/// the moment polygonal complex, with walls named after their axes.
pub fn dp4_space() -> Result<GtcSpace> {
    let mut space = from_moment_complex(&del_pezzo_complex())?;
    let ids = BTreeMap::from([
        ("E0-4".to_string(), "rho-x".to_string()),
        ("E2-4".to_string(), "rho-y".to_string()),
        ("E3-4".to_string(), "rho-z".to_string()),
        ("V4".to_string(), "origin".to_string()),
    ]);
    let vars = BTreeMap::from([
        ("t0_4".to_string(), "x".to_string()),
        ("t2_4".to_string(), "y".to_string()),
        ("t3_4".to_string(), "z".to_string()),
    ]);
    rename(&mut space, &ids, &vars);
    Ok(space)
}

/// The symbolic del Pezzo section: quadratics on the x- and y-walls and a
/// quartic on the z-wall, with opaque coefficient symbols.
pub fn dp4_symbolic_section(space: &GtcSpace) -> Result<LSSection> {
    let mut walls = BTreeMap::new();
    for (wall, prefix, deg) in [("rho-x", "a", 2usize), ("rho-y", "b", 2), ("rho-z", "c", 4)] {
        let vars = space.stratum(wall)?.chart_vars.clone();
        let mut p = LaurentPolynomial::zero(vars);
        for k in 0..=deg {
            p.insert_term(vec![k as i64], Coeff::from_symbol(&format!("{}{}", prefix, k)));
        }
        walls.insert(wall.to_string(), p);
    }
    Ok(LSSection::new(walls))
}

/// A compliant numeric del Pezzo section: a0 = b0 = 1, c0 = 1, remaining
/// coefficients seeded small rationals with nonzero leading terms.
pub fn dp4_numeric_section(space: &GtcSpace, seed: u64) -> Result<LSSection> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Rat {
        let num = rng.gen_range(1..=9i64);
        let den = rng.gen_range(1..=4i64);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        rat(sign * num, den)
    };
    let mut walls = BTreeMap::new();
    for (wall, deg) in [("rho-x", 2usize), ("rho-y", 2), ("rho-z", 4)] {
        let vars = space.stratum(wall)?.chart_vars.clone();
        let mut p = LaurentPolynomial::zero(vars);
        for k in 0..=deg {
            let c = if k == 0 {
                Rat::from(num_bigint::BigInt::from(1))
            } else {
                draw(&mut rng)
            };
            p.insert_term(vec![k as i64], Coeff::from_rat(c));
        }
        walls.insert(wall.to_string(), p);
    }
    Ok(LSSection::new(walls))
}

/// The transverse A1 threefold: the product of the del Pezzo joint geometry
/// with the u-line. Components X1, X2, X3; wall surfaces S1 = (z, u),
/// S2 = (x, u), S3 = (y, u); joint the u-axis.
pub fn a1_threefold_space() -> Result<GtcSpace> {
    let joint_fan = fans::from_rays_complete(&[vec![-1, -1], vec![1, -1], vec![0, 1]])?;
    // rays() order is the fan's canonical cone order; recover indices
    let rays = joint_fan.rays();
    let idx = |v: &[i64]| rays.iter().position(|r| r == v).unwrap();
    let (rx, ry, rz) = (idx(&[-1, -1]), idx(&[1, -1]), idx(&[0, 1]));

    let mut strata = vec![];
    for c in ["X1", "X2", "X3"] {
        strata.push(Stratum {
            id: c.to_string(),
            codim: 0,
            fan: Fan::zero_fan(),
            chart_vars: vec![],
        });
    }
    for (wall, vars) in [("S1", ["z", "u"]), ("S2", ["x", "u"]), ("S3", ["y", "u"])] {
        strata.push(Stratum {
            id: wall.to_string(),
            codim: 1,
            fan: fans::line(),
            chart_vars: vars.iter().map(|s| s.to_string()).collect(),
        });
    }
    strata.push(Stratum {
        id: "u-axis".to_string(),
        codim: 2,
        fan: joint_fan,
        chart_vars: vec!["u".to_string()],
    });

    // walls: S1 between X2, X3 (+1 side X2); S2 between X1, X3 (+1 side X1);
    // S3 between X1, X2 (+1 side X1)
    let wall_sides = [
        ("S1", "X2", "X3"),
        ("S2", "X1", "X3"),
        ("S3", "X1", "X2"),
    ];
    let mut poset = vec![];
    let mut generization = vec![];
    let mut divisor_data = vec![];
    for (wall, plus, minus) in wall_sides {
        for (comp, ray_idx, gen) in [(plus, 1usize, 1i64), (minus, 0usize, -1i64)] {
            poset.push((wall.to_string(), comp.to_string()));
            generization.push(Generization {
                lower: wall.to_string(),
                upper: comp.to_string(),
                cone_rays: vec![ray_idx],
                projection: vec![],
            });
            divisor_data.push(DivisorData {
                component: comp.to_string(),
                stratum: wall.to_string(),
                map: vec![DivisorMapEntry {
                    m: vec![gen],
                    divisor: vec![(wall.to_string(), 1)],
                }],
            });
        }
    }

    // joint generization: rays to walls with projections signed toward the
    // wall's +1 side, 2-cones to components
    for (wall, ray, plus_cone) in [
        ("S1", rz, vec![vec![1, -1], vec![0, 1]]),
        ("S2", rx, vec![vec![-1, -1], vec![1, -1]]),
        ("S3", ry, vec![vec![-1, -1], vec![1, -1]]),
    ] {
        poset.push(("u-axis".to_string(), wall.to_string()));
        let rv = &rays[ray];
        let mut proj = vec![-rv[1], rv[0]];
        let interior = plus_cone
            .iter()
            .fold(vec![0i64, 0], |acc, g| crate::lattice::add(&acc, g));
        if crate::lattice::dot(&proj, &interior) < 0 {
            proj = crate::lattice::neg(&proj);
        }
        generization.push(Generization {
            lower: "u-axis".to_string(),
            upper: wall.to_string(),
            cone_rays: vec![ray],
            projection: vec![proj],
        });
    }
    for (comp, cone_rays) in [
        ("X1", vec![rx, ry]),
        ("X2", vec![ry, rz]),
        ("X3", vec![rz, rx]),
    ] {
        poset.push(("u-axis".to_string(), comp.to_string()));
        let mut cr = cone_rays;
        cr.sort();
        generization.push(Generization {
            lower: "u-axis".to_string(),
            upper: comp.to_string(),
            cone_rays: cr,
            projection: vec![],
        });
    }

    // joint-level divisor data: facet functionals paired with the walls
    for (comp, entries) in [
        (
            "X1",
            vec![
                (vec![-1, -1], vec![("S3", 2)]),
                (vec![0, -1], vec![("S2", 1), ("S3", 1)]),
                (vec![1, -1], vec![("S2", 2)]),
            ],
        ),
        (
            "X2",
            vec![
                (vec![0, 1], vec![("S3", 1)]),
                (vec![1, -1], vec![("S1", 1)]),
            ],
        ),
        (
            "X3",
            vec![
                (vec![-1, -1], vec![("S1", 1)]),
                (vec![0, 1], vec![("S2", 1)]),
            ],
        ),
    ] {
        divisor_data.push(DivisorData {
            component: comp.to_string(),
            stratum: "u-axis".to_string(),
            map: entries
                .into_iter()
                .map(|(m, divisor)| DivisorMapEntry {
                    m,
                    divisor: divisor
                        .into_iter()
                        .map(|(n, mult): (&str, i64)| (n.to_string(), mult))
                        .collect(),
                })
                .collect(),
        });
    }

    let space = GtcSpace {
        dimension: 3,
        strata,
        poset,
        generization,
        divisor_data,
        local_models: vec![],
    };
    Ok(space)
}

/// The very special section (u, u, u^2 - z^2) of the A1 threefold.
pub fn a1_threefold_section(space: &GtcSpace) -> Result<LSSection> {
    let mut walls = BTreeMap::new();
    // S1 chart (z, u): u^2 - z^2
    let v1 = space.stratum("S1")?.chart_vars.clone();
    let mut f1 = LaurentPolynomial::zero(v1);
    f1.insert_term(vec![0, 2], Coeff::one());
    f1.insert_term(vec![2, 0], Coeff::from_rat(rat(-1, 1)));
    walls.insert("S1".to_string(), f1);
    for wall in ["S2", "S3"] {
        let vars = space.stratum(wall)?.chart_vars.clone();
        walls.insert(wall.to_string(), LaurentPolynomial::var(vars, "u"));
    }
    Ok(LSSection::new(walls))
}

/// The all-ones section on any space.
pub fn all_ones_section(space: &GtcSpace) -> LSSection {
    let mut walls = BTreeMap::new();
    for w in space.walls() {
        walls.insert(w.id.clone(), LaurentPolynomial::one(w.chart_vars.clone()));
    }
    LSSection::new(walls)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_catalog_spaces_validate() {
        for (name, space) in [
            ("two-components", two_components_space(3).unwrap()),
            ("a1-surface", a1_surface_space()),
            ("dp4", dp4_space().unwrap()),
            ("a1-threefold", a1_threefold_space().unwrap()),
        ] {
            let report = space.validate();
            for c in &report.checks {
                assert!(c.pass, "{}: {} failed: {:?}", name, c.name, c.witness);
            }
        }
    }

    #[test]
    fn two_components_presentation_texts() {
        let s = two_components_space(3).unwrap();
        assert_eq!(s.local_models[0].relation_text, vec!["x*y = t^3"]);
        let s2 = two_components_space(2).unwrap();
        assert_eq!(s2.local_models[0].relation_text, vec!["x*y = t^2"]);
        let s1 = two_components_space(1).unwrap();
        assert!(s1.local_models[0].relation_text.is_empty());
    }

    #[test]
    fn dp4_strata_and_charts() {
        let s = dp4_space().unwrap();
        assert_eq!(s.strata.len(), 7);
        assert_eq!(s.stratum("rho-x").unwrap().chart_vars, vec!["x"]);
        assert_eq!(s.stratum("rho-z").unwrap().chart_vars, vec!["z"]);
        assert!(s.stratum("origin").unwrap().chart_vars.is_empty());
    }

    #[test]
    fn a1_threefold_validates_with_curve_joint() {
        let s = a1_threefold_space().unwrap();
        assert_eq!(s.joints().len(), 1);
        assert_eq!(s.stratum("u-axis").unwrap().chart_vars, vec!["u"]);
        assert!(s.validate().all_pass());
    }
}
