use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Mat, Scalar};
use crate::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub matrix: Mat<Scalar>,
    /// Pivot column of each nonzero row, ascending.
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows, a basis of the row space.
    pub fn basis(&self) -> Mat<Scalar> {
        let idx: Vec<usize> = (0..self.rank()).collect();
        let cols: Vec<usize> = (0..self.matrix.cols()).collect();
        self.matrix.select(&idx, &cols)
    }
}

pub fn row_reduce(m: &Mat<Scalar>) -> RowEchelon {
    let mut a = m.clone().into_rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r][c..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowEchelon {
        matrix: Mat::from_rows(a, cols),
        pivots,
    }
}

/// Rank over the rationals.
///
/// Rows are scaled to integers and reduced by fraction-free (Bareiss)
/// elimination, so every intermediate value is an integer minor.
pub fn rank(m: &Mat<Scalar>) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.row_iter().map(integer_row).collect();
    let cols = m.cols();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == a.len() {
            break;
        }
        // smallest nonzero pivot keeps the minors short
        let Some(p) = (rank..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = core::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let lhs = if row[j].is_zero() {
                    BigInt::zero()
                } else {
                    pivot * &row[j]
                };
                let rhs = if f.is_zero() || pivot_row[j].is_zero() {
                    BigInt::zero()
                } else {
                    &f * &pivot_row[j]
                };
                let num = lhs - rhs;
                row[j] = if num.is_zero() { num } else { num / &prev };
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect()
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis(m: &Mat<Scalar>) -> Vec<Vec<Scalar>> {
    let ech = row_reduce(m);
    let cols = m.cols();
    let mut is_pivot = alloc::vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = alloc::vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.matrix[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Basis (in reduced echelon form) of `rowspace(a) ∩ rowspace(b)`.
pub fn intersect_rowspaces(a: &Mat<Scalar>, b: &Mat<Scalar>) -> Result<Mat<Scalar>> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: b.cols(),
        });
    }
    let ba = row_reduce(a).basis();
    let bb = row_reduce(b).basis();
    let ra = ba.rows();
    // x A = y B  <=>  [A; -B]^T (x, y) = 0
    let stacked = ba.stack(&bb.map(|x| -x.clone()));
    let mut rows = Vec::new();
    for v in kernel_basis(&stacked.transpose()) {
        let x = &v[..ra];
        let combo: Vec<Scalar> = (0..a.cols())
            .map(|c| {
                x.iter()
                    .enumerate()
                    .filter(|(_, xi)| !xi.is_zero())
                    .fold(Scalar::zero(), |acc, (i, xi)| acc + xi * &ba[(i, c)])
            })
            .collect();
        rows.push(combo);
    }
    Ok(row_reduce(&Mat::from_rows(rows, a.cols())).basis())
}

/// Coordinates with respect to a fixed list of independent rows, prepared
/// once and reused for many vectors.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Mat<Scalar>,
    cols: Vec<usize>,
    inv: Mat<Scalar>,
}

impl Coordinates {
    /// `None` when the rows are dependent.
    pub fn new(basis: Mat<Scalar>) -> Option<Self> {
        let cols = row_reduce(&basis).pivots;
        if cols.len() != basis.rows() {
            return None;
        }
        let all: Vec<usize> = (0..basis.rows()).collect();
        let inv = basis.select(&all, &cols).inverse()?;
        Some(Coordinates { basis, cols, inv })
    }

    pub fn basis(&self) -> &Mat<Scalar> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// `c` with `c · basis = v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.basis.cols());
        let k = self.dim();
        let c: Vec<Scalar> = (0..k)
            .map(|j| {
                self.cols
                    .iter()
                    .enumerate()
                    .filter(|(_, &col)| !v[col].is_zero())
                    .fold(Scalar::zero(), |acc, (i, &col)| {
                        acc + &v[col] * &self.inv[(i, j)]
                    })
            })
            .collect();
        (self.combine(&c) == v).then_some(c)
    }

    /// `c · basis`.
    pub fn combine(&self, c: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.basis.cols()];
        for (ci, row) in c.iter().zip(self.basis.row_iter()) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o += ci * x;
                }
            }
        }
        out
    }
}

/// Coefficients `c` with `c · rows = v`, if `v` lies in the row space.
pub fn solve_in_rowspace(rows: &Mat<Scalar>, v: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(rows.cols(), v.len());
    let n = rows.rows();
    // columns of the system are the given rows; last column is v
    let sys = Mat::from_fn(v.len(), n + 1, |r, c| {
        if c < n {
            rows[(c, r)].clone()
        } else {
            v[r].clone()
        }
    });
    let ech = row_reduce(&sys);
    if ech.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = alloc::vec![Scalar::zero(); n];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.matrix[(r, n)].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use alloc::vec;
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> Mat<Scalar> {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Mat::identity(3)), 3);
        assert_eq!(rank(&Mat::zeros(4, 4)), 0);
        assert_eq!(rank(&m(vec![vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(2)).is_empty());
        assert_eq!(kernel_basis(&Mat::zeros(2, 3)).len(), 3);
        let a = m(vec![vec![1, 1, 0]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn intersection_examples() {
        let i2 = Mat::identity(2);
        assert_eq!(intersect_rowspaces(&i2, &i2).unwrap().rows(), 2);
        let e1 = m(vec![vec![1, 0]]);
        let e2 = m(vec![vec![0, 1]]);
        assert_eq!(intersect_rowspaces(&e1, &e2).unwrap().rows(), 0);
        let diag = m(vec![vec![1, 1]]);
        let x = intersect_rowspaces(&i2, &diag).unwrap();
        assert_eq!(x, diag);
        assert!(intersect_rowspaces(&i2, &m(vec![vec![1, 0, 0]])).is_err());
    }

    #[test]
    fn rational_entries() {
        let half = Scalar::new(1.into(), 2.into());
        let a = Mat::from_rows(vec![vec![half.clone(), int(1)], vec![int(1), int(2)]], 2);
        assert_eq!(rank(&a), 1);
        let inv = Mat::from_rows(vec![vec![half, int(1)], vec![int(0), int(3)]], 2)
            .inverse()
            .unwrap();
        assert_eq!(inv[(0, 0)], int(2));
    }

    fn matrix_with_cols(c: usize) -> impl Strategy<Value = Mat<Scalar>> {
        (1usize..6).prop_flat_map(move |r| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                let mut it = v.into_iter();
                Mat::from_fn(r, c, |_, _| int(it.next().unwrap()))
            })
        })
    }

    fn small_matrix() -> impl Strategy<Value = Mat<Scalar>> {
        (1usize..6).prop_flat_map(matrix_with_cols)
    }

    fn matrix_pair() -> impl Strategy<Value = (Mat<Scalar>, Mat<Scalar>)> {
        (1usize..6).prop_flat_map(|c| (matrix_with_cols(c), matrix_with_cols(c)))
    }

    proptest! {
        #[test]
        fn rank_nullity(a in small_matrix()) {
            let k = kernel_basis(&a);
            prop_assert_eq!(rank(&a) + k.len(), a.cols());
            prop_assert_eq!(rank(&a), row_reduce(&a).rank());
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn intersection_lies_in_both((a, b) in matrix_pair()) {
            let x = intersect_rowspaces(&a, &b).unwrap();
            let expected = rank(&a) + rank(&b) - rank(&a.stack(&b));
            prop_assert_eq!(x.rows(), expected);
            for row in x.row_iter() {
                prop_assert!(solve_in_rowspace(&a, row).is_some());
                prop_assert!(solve_in_rowspace(&b, row).is_some());
            }
        }
    }
}
