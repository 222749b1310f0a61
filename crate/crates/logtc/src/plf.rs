//! Integral polyhedral moment complexes in the plane, piecewise linear
//! functions on them, and kink computation across interior edges.

use crate::error::{LogtcError, Result};
use crate::lattice::{cross2, gcd, sub, LatticeVector};
use crate::poly::Rat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A pure 2-dimensional integral polyhedral complex.
#[derive(Clone, Debug)]
pub struct MomentComplex {
    pub vertices: Vec<LatticeVector>,
    /// Faces as CCW vertex-index loops, each with an id.
    pub faces: Vec<(String, Vec<usize>)>,
}

/// An (undirected) edge of the complex, as a sorted vertex-index pair.
pub type EdgeKey = (usize, usize);

impl MomentComplex {
    pub fn new(vertices: Vec<LatticeVector>, faces: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let c = MomentComplex { vertices, faces };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        for v in &self.vertices {
            if v.len() != 2 {
                return Err(LogtcError::NotAComplex("vertices must be planar".into()));
            }
        }
        for (id, loop_) in &self.faces {
            if loop_.len() < 3 {
                return Err(LogtcError::NotAComplex(format!("face {} is degenerate", id)));
            }
            // CCW orientation via the shoelace sum
            let mut area2 = 0i64;
            for i in 0..loop_.len() {
                let a = &self.vertices[loop_[i]];
                let b = &self.vertices[loop_[(i + 1) % loop_.len()]];
                area2 += cross2(a, b);
            }
            if area2 <= 0 {
                return Err(LogtcError::NotAComplex(format!(
                    "face {} is not counterclockwise",
                    id
                )));
            }
        }
        for (e, faces) in self.edge_faces() {
            if faces.len() > 2 {
                return Err(LogtcError::NotAComplex(format!(
                    "edge {:?} belongs to more than two faces",
                    e
                )));
            }
        }
        Ok(())
    }

    /// Edge -> indices of incident faces.
    pub fn edge_faces(&self) -> BTreeMap<EdgeKey, Vec<usize>> {
        let mut out: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
        for (fi, (_, loop_)) in self.faces.iter().enumerate() {
            for i in 0..loop_.len() {
                let a = loop_[i];
                let b = loop_[(i + 1) % loop_.len()];
                let key = (a.min(b), a.max(b));
                out.entry(key).or_default().push(fi);
            }
        }
        out
    }

    /// Edges lying on exactly two faces.
    pub fn interior_edges(&self) -> Vec<(EdgeKey, [usize; 2])> {
        self.edge_faces()
            .into_iter()
            .filter_map(|(e, fs)| {
                if fs.len() == 2 {
                    Some((e, [fs[0], fs[1]]))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Vertices all of whose incident edges are interior (their star closes up).
    pub fn interior_vertices(&self) -> Vec<usize> {
        let ef = self.edge_faces();
        let mut incident: BTreeMap<usize, Vec<&EdgeKey>> = BTreeMap::new();
        for e in ef.keys() {
            incident.entry(e.0).or_default().push(e);
            incident.entry(e.1).or_default().push(e);
        }
        incident
            .into_iter()
            .filter(|(_, edges)| edges.iter().all(|e| ef[*e].len() == 2))
            .map(|(v, _)| v)
            .collect()
    }
}

/// An affine function a x + b y + c with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Affine {
    pub fn eval(&self, p: &[i64]) -> Rat {
        &self.a * BigRational::from(BigInt::from(p[0]))
            + &self.b * BigRational::from(BigInt::from(p[1]))
            + &self.c
    }

    fn sub(&self, other: &Affine) -> Affine {
        Affine {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            c: &self.c - &other.c,
        }
    }
}

/// A piecewise linear function on a moment complex: an integer value per
/// vertex, with per-face affine representatives computed and validated on
/// construction.
#[derive(Clone, Debug)]
pub struct PLFunction {
    pub complex: MomentComplex,
    pub values: Vec<i64>,
    pub representatives: Vec<Affine>,
}

impl PLFunction {
    pub fn new(complex: MomentComplex, values: Vec<i64>) -> Result<Self> {
        if values.len() != complex.vertices.len() {
            return Err(LogtcError::NotAComplex(
                "one value per vertex required".into(),
            ));
        }
        let mut representatives = Vec::new();
        for (id, loop_) in &complex.faces {
            let rep = affine_through(
                &loop_
                    .iter()
                    .map(|&vi| (complex.vertices[vi].clone(), values[vi]))
                    .collect::<Vec<_>>(),
            )
            .ok_or_else(|| LogtcError::NotPiecewiseLinear(format!("face {}", id)))?;
            representatives.push(rep);
        }
        Ok(PLFunction {
            complex,
            values,
            representatives,
        })
    }
}

/// The affine function through the given (point, value) pairs, if one exists.
fn affine_through(samples: &[(LatticeVector, i64)]) -> Option<Affine> {
    // solve with the first three affinely independent samples, verify the rest
    let n = samples.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (p, q, r) = (&samples[i].0, &samples[j].0, &samples[k].0);
                let det = cross2(&sub(q, p), &sub(r, p));
                if det == 0 {
                    continue;
                }
                // solve a px + b py + c = v for the three samples
                let d = BigRational::from(BigInt::from(det));
                let (v0, v1, v2) = (
                    BigRational::from(BigInt::from(samples[i].1)),
                    BigRational::from(BigInt::from(samples[j].1)),
                    BigRational::from(BigInt::from(samples[k].1)),
                );
                let (dq, dr) = (sub(q, p), sub(r, p));
                let (w1, w2) = (&v1 - &v0, &v2 - &v0);
                let a = (&w1 * BigRational::from(BigInt::from(dr[1]))
                    - &w2 * BigRational::from(BigInt::from(dq[1])))
                    / &d;
                let b = (&w2 * BigRational::from(BigInt::from(dq[0]))
                    - &w1 * BigRational::from(BigInt::from(dr[0])))
                    / &d;
                let c = &v0
                    - &a * BigRational::from(BigInt::from(p[0]))
                    - &b * BigRational::from(BigInt::from(p[1]));
                let aff = Affine { a, b, c };
                if samples
                    .iter()
                    .all(|(pt, v)| aff.eval(pt) == BigRational::from(BigInt::from(*v)))
                {
                    return Some(aff);
                }
                return None;
            }
        }
    }
    None
}

/// The kink of a PL function across an interior edge: the integer κ with
/// n' - n = κ δ, where δ is the primitive integral affine function vanishing
/// on the edge and positive on the second face of the declared pair.
pub fn kink(pl: &PLFunction, edge: &EdgeKey) -> Result<i64> {
    let faces = pl
        .complex
        .interior_edges()
        .into_iter()
        .find(|(e, _)| e == edge)
        .map(|(_, fs)| fs)
        .ok_or_else(|| LogtcError::NotAComplex(format!("edge {:?} is not interior", edge)))?;
    let (p_idx, q_idx) = (faces[0], faces[1]);
    let n = &pl.representatives[p_idx];
    let n2 = &pl.representatives[q_idx];
    let diff = n2.sub(n);

    // primitive integral affine function vanishing on the edge
    let v0 = &pl.complex.vertices[edge.0];
    let v1 = &pl.complex.vertices[edge.1];
    let dir = sub(v1, v0);
    let g = gcd(dir[0], dir[1]);
    let normal = vec![-dir[1] / g, dir[0] / g];
    let mut delta = Affine {
        a: BigRational::from(BigInt::from(normal[0])),
        b: BigRational::from(BigInt::from(normal[1])),
        c: BigRational::from(BigInt::from(-(normal[0] * v0[0] + normal[1] * v0[1]))),
    };
    // orient positive on the second face: evaluate at its vertex centroid
    let loop2 = &pl.complex.faces[q_idx].1;
    let mut cx = BigRational::zero();
    let mut cy = BigRational::zero();
    for &vi in loop2 {
        cx += BigRational::from(BigInt::from(pl.complex.vertices[vi][0]));
        cy += BigRational::from(BigInt::from(pl.complex.vertices[vi][1]));
    }
    let m = BigRational::from(BigInt::from(loop2.len() as i64));
    let at_centroid = &delta.a * (cx / &m) + &delta.b * (cy / &m) + &delta.c;
    if at_centroid.is_negative() {
        delta = Affine {
            a: -delta.a,
            b: -delta.b,
            c: -delta.c,
        };
    } else if at_centroid.is_zero() {
        return Err(LogtcError::NotAComplex(format!(
            "face {} is degenerate along edge {:?}",
            pl.complex.faces[q_idx].0, edge
        )));
    }

    // diff must be an integer multiple of delta
    let kappa = for_ratio(&diff, &delta)
        .ok_or_else(|| LogtcError::NotPiecewiseLinear(format!("{:?}", edge)))?;
    if !kappa.denom().is_one() {
        return Err(LogtcError::NotPiecewiseLinear(format!("{:?}", edge)));
    }
    kappa
        .numer()
        .to_string()
        .parse()
        .map_err(|_| LogtcError::NotPiecewiseLinear(format!("{:?}", edge)))
}

fn for_ratio(diff: &Affine, delta: &Affine) -> Option<Rat> {
    let mut ratio: Option<Rat> = None;
    for (num, den) in [(&diff.a, &delta.a), (&diff.b, &delta.b), (&diff.c, &delta.c)] {
        if den.is_zero() {
            if !num.is_zero() {
                return None;
            }
            continue;
        }
        let r = num / den;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) => {
                if *prev != r {
                    return None;
                }
            }
        }
    }
    ratio.or_else(|| {
        if diff.a.is_zero() && diff.b.is_zero() && diff.c.is_zero() {
            Some(Rat::zero())
        } else {
            None
        }
    })
}

/// True iff every interior-edge kink is strictly positive.
pub fn is_strictly_convex(pl: &PLFunction) -> Result<bool> {
    for (edge, _) in pl.complex.interior_edges() {
        if kink(pl, &edge)? <= 0 {
            return Ok(false);
        }
    }
    Ok(!pl.complex.interior_edges().is_empty())
}

/// The Fig. 5 complex: three triangles around the interior vertex (0,0),
/// outer corners (-1,-1), (1,-1), (0,1), with (0,-1) subdividing the bottom
/// boundary edge of the first face.
pub fn del_pezzo_complex() -> MomentComplex {
    // vertex order: x, w, y, z, u
    let vertices = vec![
        vec![-1, -1],
        vec![0, -1],
        vec![1, -1],
        vec![0, 1],
        vec![0, 0],
    ];
    let faces = vec![
        ("X1".to_string(), vec![0, 1, 2, 4]),
        ("X2".to_string(), vec![2, 3, 4]),
        ("X3".to_string(), vec![0, 4, 3]),
    ];
    MomentComplex::new(vertices, faces).expect("del Pezzo complex")
}

/// The standard polarization of the Fig. 5 complex: 0 at u and z, 1 at
/// x, y, w.
pub fn del_pezzo_polarization() -> PLFunction {
    PLFunction::new(del_pezzo_complex(), vec![1, 1, 1, 0, 0]).expect("del Pezzo polarization")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp_edges() -> (EdgeKey, EdgeKey, EdgeKey) {
        // x-edge: u(4)-x(0); y-edge: u(4)-y(2); z-edge: u(4)-z(3)
        ((0, 4), (2, 4), (3, 4))
    }

    #[test]
    fn del_pezzo_kinks() {
        let pl = del_pezzo_polarization();
        let (ex, ey, ez) = dp_edges();
        assert_eq!(kink(&pl, &ex).unwrap(), 1);
        assert_eq!(kink(&pl, &ey).unwrap(), 1);
        assert_eq!(kink(&pl, &ez).unwrap(), 2);
        assert!(is_strictly_convex(&pl).unwrap());
    }

    #[test]
    fn affine_function_has_zero_kinks() {
        // phi(x, y) = x + 2y restricted to the vertices
        let c = del_pezzo_complex();
        let values: Vec<i64> = c.vertices.iter().map(|v| v[0] + 2 * v[1]).collect();
        let pl = PLFunction::new(c, values).unwrap();
        let (ex, ey, ez) = dp_edges();
        for e in [ex, ey, ez] {
            assert_eq!(kink(&pl, &e).unwrap(), 0);
        }
        assert!(!is_strictly_convex(&pl).unwrap());
    }

    #[test]
    fn kink_is_invariant_under_global_affine_shift() {
        let c = del_pezzo_complex();
        let base = vec![1, 1, 1, 0, 0];
        let shifted: Vec<i64> = c
            .vertices
            .iter()
            .zip(&base)
            .map(|(v, b)| b + 3 * v[0] - 2 * v[1] + 7)
            .collect();
        let p1 = PLFunction::new(c.clone(), base).unwrap();
        let p2 = PLFunction::new(c, shifted).unwrap();
        let (ex, ey, ez) = dp_edges();
        for e in [ex, ey, ez] {
            assert_eq!(kink(&p1, &e).unwrap(), kink(&p2, &e).unwrap());
        }
    }

    #[test]
    fn negative_kink_detected() {
        let c = del_pezzo_complex();
        // raising the interior vertex value bends the function concavely
        let pl = PLFunction::new(c, vec![1, 1, 1, 0, 1]).unwrap();
        let (_, _, ez) = dp_edges();
        assert!(kink(&pl, &ez).unwrap() < 0);
        assert!(!is_strictly_convex(&pl).unwrap());
    }

    #[test]
    fn single_square_has_no_interior() {
        let sq = MomentComplex::new(
            vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]],
            vec![("Q".to_string(), vec![0, 1, 2, 3])],
        )
        .unwrap();
        assert!(sq.interior_edges().is_empty());
        assert!(sq.interior_vertices().is_empty());
    }

    #[test]
    fn two_triangles_share_one_interior_edge() {
        let c = MomentComplex::new(
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![
                ("A".to_string(), vec![0, 1, 2]),
                ("B".to_string(), vec![1, 3, 2]),
            ],
        )
        .unwrap();
        assert_eq!(c.interior_edges().len(), 1);
        assert!(c.interior_vertices().is_empty());
    }

    #[test]
    fn del_pezzo_interior_cells() {
        let c = del_pezzo_complex();
        assert_eq!(c.interior_edges().len(), 3);
        assert_eq!(c.interior_vertices(), vec![4]);
    }
}
