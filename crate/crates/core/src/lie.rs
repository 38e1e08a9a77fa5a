//! Finite-dimensional Lie algebras given by structure constants, and
//! subspaces of them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::Zero;

use crate::exactlin::{intersect_rowspaces, kernel_basis, row_reduce, Coordinates, Mat, Scalar};
use crate::{Error, Result};

/// `[x_u, x_v] = Σ_w c_{uv}^w x_w`, stored sparsely per ordered pair.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<(usize, Scalar)>>,
    /// Commuting elements acting semisimply; may be empty. Used to cut the
    /// index computation down to a slice.
    torus: Vec<Vec<Scalar>>,
}

fn sparse(v: Vec<Scalar>) -> Vec<(usize, Scalar)> {
    v.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn axpy(out: &mut [Scalar], c: &Scalar, terms: &[(usize, Scalar)]) {
    for (w, x) in terms {
        out[*w] += c * x;
    }
}

impl LieAlgebra {
    /// Builds the table from `f(u, v) = [x_u, x_v]` for `u < v`; the rest is
    /// filled in by antisymmetry.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let dim = labels.len();
        let mut table = vec![Vec::new(); dim * dim];
        for u in 0..dim {
            for v in u + 1..dim {
                let b = f(u, v);
                assert_eq!(b.len(), dim, "bracket has the wrong length");
                let b = sparse(b);
                table[v * dim + u] = b.iter().map(|(w, c)| (*w, -c)).collect();
                table[u * dim + v] = b;
            }
        }
        LieAlgebra {
            name: name.into(),
            labels,
            table,
            torus: Vec::new(),
        }
    }

    /// The Lie algebra spanned by independent matrices under the commutator.
    pub fn from_matrices(
        name: impl Into<String>,
        labels: Vec<String>,
        mats: &[Mat<Scalar>],
    ) -> Result<Self> {
        assert_eq!(labels.len(), mats.len());
        let flat = |m: &Mat<Scalar>| -> Vec<Scalar> { m.row_iter().flatten().cloned().collect() };
        let width = mats.first().map_or(0, |m| m.rows() * m.cols());
        let basis = Mat::from_rows(mats.iter().map(flat).collect(), width);
        let coords = Coordinates::new(basis)
            .ok_or_else(|| Error::NotClosed("matrices are dependent".into()))?;
        let mut failure = None;
        let alg = LieAlgebra::from_fn(name, labels, |u, v| {
            let c = mats[u].commutator(&mats[v]);
            coords.coords(&flat(&c)).unwrap_or_else(|| {
                failure = Some((u, v));
                vec![Scalar::zero(); mats.len()]
            })
        });
        match failure {
            Some((u, v)) => Err(Error::NotClosed(format!(
                "[{}, {}] leaves the span",
                alg.labels[u], alg.labels[v]
            ))),
            None => Ok(alg),
        }
    }

    /// Rows of `rows` (coordinates over `self`) taken as the basis of a new
    /// algebra; fails unless the span is bracket-closed.
    pub fn subalgebra_from_rows(
        &self,
        name: impl Into<String>,
        labels: Vec<String>,
        rows: &Mat<Scalar>,
    ) -> Result<Self> {
        assert_eq!(labels.len(), rows.rows());
        let coords = Coordinates::new(rows.clone())
            .ok_or_else(|| Error::NotClosed("rows are dependent".into()))?;
        let mut failure = None;
        let alg = LieAlgebra::from_fn(name, labels, |u, v| {
            let b = self.bracket(rows.row(u), rows.row(v));
            coords.coords(&b).unwrap_or_else(|| {
                failure = Some((u, v));
                vec![Scalar::zero(); rows.rows()]
            })
        });
        match failure {
            Some((u, v)) => Err(Error::NotClosed(format!(
                "[{}, {}] leaves the span",
                alg.labels[u], alg.labels[v]
            ))),
            None => Ok(alg),
        }
    }

    /// Attaches commuting semisimple elements (coordinates over this basis).
    pub fn with_torus(mut self, torus: Vec<Vec<Scalar>>) -> Self {
        self.torus = torus;
        self
    }

    pub fn torus(&self) -> &[Vec<Scalar>] {
        &self.torus
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_basis(&self, u: usize, v: usize) -> &[(usize, Scalar)] {
        &self.table[u * self.dim() + v]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = vec![Scalar::zero(); dim];
        for (u, xu) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (v, yv) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &(xu * yv), self.bracket_basis(u, v));
            }
        }
        out
    }

    /// Matrix of `ad x` acting on coordinate columns: entry `(w, v)` is the
    /// `w`-coordinate of `[x, x_v]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Mat<Scalar> {
        let dim = self.dim();
        let mut m = Mat::zeros(dim, dim);
        for (u, xu) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for v in 0..dim {
                for (w, c) in self.bracket_basis(u, v) {
                    m[(*w, v)] += xu * c;
                }
            }
        }
        m
    }

    pub fn unit(&self, u: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[u] = Scalar::from_integer(1.into());
        v
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        let dim = self.dim();
        for u in 0..dim {
            for v in 0..dim {
                let mut sum = vec![Scalar::zero(); dim];
                axpy(
                    &mut sum,
                    &Scalar::from_integer(1.into()),
                    self.bracket_basis(u, v),
                );
                axpy(
                    &mut sum,
                    &Scalar::from_integer(1.into()),
                    self.bracket_basis(v, u),
                );
                if sum.iter().any(|c| !c.is_zero()) {
                    return Err(Error::NotClosed(format!(
                        "antisymmetry fails at ({u}, {v})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        let nested = |out: &mut Vec<Scalar>, a: usize, b: usize, c: usize| {
            // [[a, b], c]
            for (w, k) in self.bracket_basis(a, b) {
                axpy(out, k, self.bracket_basis(*w, c));
            }
        };
        for u in 0..dim {
            for v in u + 1..dim {
                for w in v + 1..dim {
                    let mut sum = vec![Scalar::zero(); dim];
                    nested(&mut sum, u, v, w);
                    nested(&mut sum, v, w, u);
                    nested(&mut sum, w, u, v);
                    if sum.iter().any(|c| !c.is_zero()) {
                        return Err(Error::NotClosed(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[u], self.labels[v], self.labels[w]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `{x : [x, s] = 0 for every row s}`.
    pub fn centralizer_of(&self, rows: &Mat<Scalar>) -> Subalgebra<'_> {
        let dim = self.dim();
        let blocks: Vec<Vec<Scalar>> = rows
            .row_iter()
            .flat_map(|s| self.ad_matrix(s).into_rows())
            .collect();
        let system = Mat::from_rows(blocks, dim);
        Subalgebra::span(self, &Mat::from_rows(kernel_basis(&system), dim))
    }

    /// `{x : [x, s] ∈ span(rows) for every row s}`.
    pub fn normalizer_of(&self, rows: &Mat<Scalar>) -> Subalgebra<'_> {
        let dim = self.dim();
        let ann = Mat::from_rows(kernel_basis(rows), dim);
        let mut blocks = Vec::new();
        for s in rows.row_iter() {
            blocks.extend(ann.mul(&self.ad_matrix(s)).into_rows());
        }
        let system = Mat::from_rows(blocks, dim);
        Subalgebra::span(self, &Mat::from_rows(kernel_basis(&system), dim))
    }

    pub fn center(&self) -> Subalgebra<'_> {
        self.centralizer_of(&Mat::identity(self.dim()))
    }

    /// One line `u v w value` per nonzero `c_{uv}^w` with `u < v`
    /// (0-based indices); the remaining constants follow by antisymmetry.
    pub fn export_structure(&self) -> String {
        let dim = self.dim();
        let mut out = String::new();
        for u in 0..dim {
            for v in u + 1..dim {
                for (w, c) in self.bracket_basis(u, v) {
                    let _ = writeln!(out, "{u} {v} {w} {c}");
                }
            }
        }
        out
    }
}

/// A subspace of a Lie algebra, stored as a reduced row echelon basis over
/// the parent's basis.
#[derive(Clone, Debug)]
pub struct Subalgebra<'a> {
    parent: &'a LieAlgebra,
    rows: Mat<Scalar>,
    pivots: Vec<usize>,
}

impl PartialEq for Subalgebra<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.parent, other.parent) && self.rows == other.rows
    }
}

impl<'a> Subalgebra<'a> {
    /// Span of the rows, with no closure check.
    pub fn span(parent: &'a LieAlgebra, rows: &Mat<Scalar>) -> Self {
        assert_eq!(rows.cols(), parent.dim());
        let ech = row_reduce(rows);
        Subalgebra {
            parent,
            rows: ech.basis(),
            pivots: ech.pivots,
        }
    }

    pub fn from_vectors(parent: &'a LieAlgebra, vectors: Vec<Vec<Scalar>>) -> Self {
        Subalgebra::span(parent, &Mat::from_rows(vectors, parent.dim()))
    }

    /// Span of the rows; fails unless bracket-closed.
    pub fn checked(parent: &'a LieAlgebra, rows: &Mat<Scalar>) -> Result<Self> {
        let s = Subalgebra::span(parent, rows);
        if !s.is_closed() {
            return Err(Error::NotClosed(format!(
                "subspace of {} is not bracket-closed",
                parent.name()
            )));
        }
        Ok(s)
    }

    pub fn whole(parent: &'a LieAlgebra) -> Self {
        Subalgebra::span(parent, &Mat::identity(parent.dim()))
    }

    pub fn parent(&self) -> &'a LieAlgebra {
        self.parent
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn rows(&self) -> &Mat<Scalar> {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Coordinates over the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (ci, row) in c.iter().zip(self.rows.row_iter()) {
            if ci.is_zero() {
                continue;
            }
            for (r, x) in rest.iter_mut().zip(row) {
                if !x.is_zero() {
                    *r -= ci * x;
                }
            }
        }
        rest.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &Subalgebra<'_>) -> bool {
        other.rows.row_iter().all(|r| self.contains(r))
    }

    pub fn is_closed(&self) -> bool {
        let k = self.dim();
        (0..k).all(|a| {
            (a + 1..k)
                .all(|b| self.contains(&self.parent.bracket(self.rows.row(a), self.rows.row(b))))
        })
    }

    /// Span of all `[x, y]` with `x` here and `y` in `other`.
    pub fn bracket_span(&self, other: &Subalgebra<'_>) -> Subalgebra<'a> {
        let mut vs = Vec::new();
        for x in self.rows.row_iter() {
            for y in other.rows.row_iter() {
                vs.push(self.parent.bracket(x, y));
            }
        }
        Subalgebra::from_vectors(self.parent, vs)
    }

    pub fn intersect(&self, other: &Subalgebra<'_>) -> Subalgebra<'a> {
        let rows = intersect_rowspaces(&self.rows, &other.rows).expect("same parent dimension");
        Subalgebra::span(self.parent, &rows)
    }

    pub fn sum(&self, other: &Subalgebra<'_>) -> Subalgebra<'a> {
        Subalgebra::span(self.parent, &self.rows.stack(&other.rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use alloc::string::ToString;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_fn("heis", labels(3), |u, v| {
            if (u, v) == (0, 1) {
                vec![int(0), int(0), int(1)]
            } else {
                vec![int(0); 3]
            }
        })
    }

    fn sl2() -> LieAlgebra {
        let m = |a: [i64; 4]| {
            Mat::from_rows(
                vec![vec![int(a[0]), int(a[1])], vec![int(a[2]), int(a[3])]],
                2,
            )
        };
        let mats = [m([0, 1, 0, 0]), m([1, 0, 0, -1]), m([0, 0, 1, 0])];
        LieAlgebra::from_matrices("sl2", vec!["e".into(), "h".into(), "f".into()], &mats).unwrap()
    }

    #[test]
    fn sl2_structure() {
        let g = sl2();
        g.check_antisymmetry().unwrap();
        g.check_jacobi().unwrap();
        // [e, f] = h, [h, e] = 2e
        assert_eq!(g.bracket_basis(0, 2), &[(1, int(1))]);
        assert_eq!(g.bracket_basis(1, 0), &[(0, int(2))]);
        assert!(g.center().is_zero());
        assert_eq!(g.export_structure().lines().count(), 3);
        assert!(g.export_structure().contains("0 2 1 1"));
    }

    #[test]
    fn heisenberg_center_and_normalizer() {
        let g = heisenberg();
        let z = g.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&g.unit(2)));
        let line = Mat::from_rows(vec![g.unit(0)], 3);
        assert_eq!(g.centralizer_of(&line).dim(), 2);
        assert_eq!(g.normalizer_of(&line).dim(), 2);
        let whole = Subalgebra::whole(&g);
        assert_eq!(whole.bracket_span(&whole), z);
    }

    #[test]
    fn matrices_must_close() {
        let m = |a: [i64; 4]| {
            Mat::from_rows(
                vec![vec![int(a[0]), int(a[1])], vec![int(a[2]), int(a[3])]],
                2,
            )
        };
        let err = LieAlgebra::from_matrices(
            "x",
            vec!["e".into(), "f".into()],
            &[m([0, 1, 0, 0]), m([0, 0, 1, 0])],
        );
        assert!(matches!(err, Err(Error::NotClosed(_))));
    }

    #[test]
    fn subalgebras() {
        let g = sl2();
        let borel =
            Subalgebra::checked(&g, &Mat::from_rows(vec![g.unit(0), g.unit(1)], 3)).unwrap();
        assert_eq!(borel.dim(), 2);
        assert!(Subalgebra::checked(&g, &Mat::from_rows(vec![g.unit(0), g.unit(2)], 3)).is_err());
        let b = g
            .subalgebra_from_rows("b", vec!["e".into(), "h".into()], borel.rows())
            .unwrap();
        b.check_jacobi().unwrap();
        assert_eq!(b.name(), "b");
        let nb = Subalgebra::span(&g, &Mat::from_rows(vec![g.unit(2), g.unit(1)], 3));
        assert_eq!(borel.intersect(&nb).dim(), 1);
        assert_eq!(borel.sum(&nb).dim(), 3);
        assert_eq!(borel.coords(&g.unit(1)).unwrap().len(), 2);
        assert!(!borel.contains(&g.unit(2)));
        assert_eq!(g.labels()[1].to_string(), "h");
    }
}
