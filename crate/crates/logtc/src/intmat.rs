//! Exact integer matrix routines: Smith normal form, kernels, and linear
//! solving over the integers and rationals.
//!
//! The SNF pivot rule is deterministic: smallest nonzero absolute value,
//! ties broken by (row, column) index. All arithmetic is arbitrary
//! precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * &self[(src, j)];
            self[(dst, j)] += t;
        }
    }

    fn add_col_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * &self[(i, src)];
            self[(i, dst)] += t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` with
/// `u`, `v` unimodular and `d` diagonal, `d[0] | d[1] | ...`.
pub struct Snf {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub rank: usize,
}

impl Snf {
    /// Nonzero diagonal entries (the elementary divisors), in order.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form with transforms. Deterministic.
pub fn smith_normal_form(a: &IntMat) -> Snf {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut k = 0usize;
    while k < n {
        // pivot: smallest nonzero |entry| in the trailing block, ties by index
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..d.rows {
            for j in k..d.cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d[(i, j)].abs() < d[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        // clear row and column k; restart if a reduction produced a smaller entry
        let mut clean = true;
        for i in (k + 1)..d.rows {
            if d[(i, k)].is_zero() {
                continue;
            }
            let q = -(&d[(i, k)] / &d[(k, k)]);
            d.add_row_mul(i, k, &q);
            u.add_row_mul(i, k, &q);
            if !d[(i, k)].is_zero() {
                clean = false;
            }
        }
        for j in (k + 1)..d.cols {
            if d[(k, j)].is_zero() {
                continue;
            }
            let q = -(&d[(k, j)] / &d[(k, k)]);
            d.add_col_mul(j, k, &q);
            v.add_col_mul(j, k, &q);
            if !d[(k, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue; // remainders left; repeat with a smaller pivot
        }
        // divisibility: d[k,k] must divide everything in the trailing block
        let mut fixed = true;
        'scan: for i in (k + 1)..d.rows {
            for j in (k + 1)..d.cols {
                if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                    // fold row i into row k to force a smaller pivot next pass
                    let one = BigInt::one();
                    d.add_row_mul(k, i, &one);
                    u.add_row_mul(k, i, &one);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[(k, k)].is_negative() {
            for j in 0..d.cols {
                let t = -d[(k, j)].clone();
                d[(k, j)] = t;
            }
            for j in 0..u.cols {
                let t = -u[(k, j)].clone();
                u[(k, j)] = t;
            }
        }
        k += 1;
    }
    let rank = (0..n).take_while(|&i| !d[(i, i)].is_zero()).count();
    Snf { d, u, v, rank }
}

/// A basis of the integer kernel ker(a) = { x : a x = 0 }, as columns.
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    // a = u^-1 d v^-1, so a x = 0 iff d (v^-1 x) = 0 iff v^-1 x supported on
    // zero columns of d; kernel basis = columns of v past the rank.
    (snf.rank..a.cols)
        .map(|j| (0..a.cols).map(|i| snf.v[(i, j)].clone()).collect())
        .collect()
}

/// Solve a x = b over the rationals; None if inconsistent.
pub fn solve_rational(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows, b.len());
    let r = a.rows;
    let c = a.cols;
    let mut m: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..c)
                .map(|j| BigRational::from(a[(i, j)].clone()))
                .chain(std::iter::once(BigRational::from(b[i].clone())))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..c {
        let Some(p) = (row..r).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=c {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == r {
            break;
        }
    }
    for i in row..r {
        if !m[i][c].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); c];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][c].clone();
    }
    Some(x)
}

/// Solve a x = b over the integers; None if no integral solution.
pub fn solve_integer(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    // a x = b  <=>  d y = u b with x = v y
    let ub: Vec<BigInt> = (0..a.rows)
        .map(|i| (0..a.rows).map(|j| &snf.u[(i, j)] * &b[j]).sum())
        .collect();
    let mut y = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        if i < snf.rank {
            let (q, r) = ub[i].div_rem(&snf.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    let x = (0..a.cols)
        .map(|i| (0..a.cols).map(|j| &snf.v[(i, j)] * &y[j]).sum())
        .collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn snf_diagonal_divisibility() {
        let a = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
        let divs = snf.divisors();
        for w in divs.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        // d1 = gcd of entries, d1*d2 = gcd of 2x2 minors, d1*d2*d3 = |det|
        assert_eq!(divs, vec![bi(2), bi(2), bi(156)]);
    }

    #[test]
    fn snf_of_single_entry() {
        let a = IntMat::from_rows(&[vec![2]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.divisors(), vec![bi(2)]);
    }

    #[test]
    fn kernel_of_projection() {
        let a = IntMat::from_rows(&[vec![1, 1, -1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[1] - &v[2]).is_zero());
        }
    }

    #[test]
    fn integer_solve_detects_divisibility() {
        let a = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert!(solve_integer(&a, &[bi(1), bi(3)]).is_none());
        let x = solve_integer(&a, &[bi(4), bi(9)]).unwrap();
        assert_eq!(x, vec![bi(2), bi(3)]);
    }
}
