//! Centralisers of nilpotent elements.
//!
//! `z_gl(e)` has the basis `ξ_i^{j,s}`, the map sending `w_i` to `e^s w_j`
//! and every other generator to zero. An element is stored as its table of
//! coefficients `c_i^{j,s}`; matrices are realised only when needed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactlin::{int, kernel_basis, Mat, Scalar};
use crate::jordan::{build_nilpotent, AlgebraKind, Model, Partition};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::{Error, Result};

/// `ξ_i^{j,s}` with 0-based block indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElt {
    pub i: usize,
    pub j: usize,
    pub s: usize,
}

impl BasisElt {
    pub fn new(i: usize, j: usize, s: usize) -> Self {
        BasisElt { i, j, s }
    }

    /// `max(0, d_j - d_i) <= s <= d_j`: below that, `e^{d_i+1}` would not
    /// kill the image of `w_i`; above it, `e^s w_j` vanishes.
    pub fn is_valid(&self, p: &Partition) -> bool {
        self.i < p.k()
            && self.j < p.k()
            && self.s <= p.d(self.j)
            && self.s + p.d(self.i) >= p.d(self.j)
    }

    pub fn matrix(&self, p: &Partition) -> Mat<Scalar> {
        let n = p.n();
        let mut m = Mat::zeros(n, n);
        for a in 0..=p.d(self.i) {
            if a + self.s <= p.d(self.j) {
                m[(p.position(self.j, a + self.s), p.position(self.i, a))] = Scalar::one();
            }
        }
        m
    }

    /// `x·y` as maps, where `x = self`; zero unless `y` lands in block `x.i`.
    pub fn compose(&self, y: &BasisElt, p: &Partition) -> Option<BasisElt> {
        let s = self.s + y.s;
        (y.j == self.i && s <= p.d(self.j)).then(|| BasisElt::new(y.i, self.j, s))
    }
}

impl fmt::Display for BasisElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi_{}^{{{},{}}}", self.i + 1, self.j + 1, self.s)
    }
}

/// All valid `ξ_i^{j,s}`, ordered by `(i, j, s)`.
pub fn gl_centralizer_basis(p: &Partition) -> Vec<BasisElt> {
    let k = p.k();
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let lo = p.d(j).saturating_sub(p.d(i));
            out.extend((lo..=p.d(j)).map(|s| BasisElt::new(i, j, s)));
        }
    }
    out
}

/// Dimension of the kernel of `x ↦ xe - ex` on all `n×n` matrices, by
/// plain elimination.
pub fn ad_kernel_dim(p: &Partition) -> usize {
    let n = p.n();
    let e = build_nilpotent(p);
    let mut cols = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let mut x = Mat::zeros(n, n);
            x[(r, c)] = Scalar::one();
            cols.push(
                x.commutator(&e)
                    .into_rows()
                    .into_iter()
                    .flatten()
                    .collect::<Vec<_>>(),
            );
        }
    }
    let m = Mat::from_rows(cols, n * n).transpose();
    kernel_basis(&m).len()
}

/// Coefficients `c_i^{j,s}` of an element of `z_gl(e)`; zero entries are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffTable(BTreeMap<BasisElt, Scalar>);

impl CoeffTable {
    pub fn new() -> Self {
        CoeffTable(BTreeMap::new())
    }

    pub fn single(x: BasisElt) -> Self {
        let mut t = CoeffTable::new();
        t.add(x, Scalar::one());
        t
    }

    pub fn get(&self, x: &BasisElt) -> Scalar {
        self.0.get(x).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&mut self, x: BasisElt, c: Scalar) {
        let entry = self.0.entry(x).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&x);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisElt, &Scalar)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &CoeffTable) -> CoeffTable {
        let mut out = self.clone();
        for (x, c) in other.iter() {
            out.add(*x, c.clone());
        }
        out
    }

    pub fn realize(&self, p: &Partition) -> Mat<Scalar> {
        let n = p.n();
        let mut m = Mat::zeros(n, n);
        for (x, c) in self.iter() {
            for a in 0..=p.d(x.i) {
                if a + x.s <= p.d(x.j) {
                    m[(p.position(x.j, a + x.s), p.position(x.i, a))] += c;
                }
            }
        }
        m
    }
}

impl FromIterator<(BasisElt, Scalar)> for CoeffTable {
    fn from_iter<I: IntoIterator<Item = (BasisElt, Scalar)>>(iter: I) -> Self {
        let mut t = CoeffTable::new();
        for (x, c) in iter {
            t.add(x, c);
        }
        t
    }
}

/// Reads off `c_i^{j,s}` from the images `φ(w_i)`.
pub fn coefficients(phi: &Mat<Scalar>, p: &Partition) -> Result<CoeffTable> {
    let e = crate::jordan::build_nilpotent(p);
    if phi.rows() != p.n() || phi.cols() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: phi.rows(),
        });
    }
    if !phi.commutator(&e).is_zero() {
        return Err(Error::NotInCentralizer);
    }
    let mut t = CoeffTable::new();
    for i in 0..p.k() {
        let col = p.offset(i);
        for j in 0..p.k() {
            for s in 0..=p.d(j) {
                let c = &phi[(p.position(j, s), col)];
                if !c.is_zero() {
                    t.add(BasisElt::new(i, j, s), c.clone());
                }
            }
        }
    }
    debug_assert_eq!(t.realize(p), *phi);
    Ok(t)
}

/// `[x, y] = xy - yx` computed from the composition rule
/// `ξ_t^{j,s} ξ_i^{t,b} = ξ_i^{j,s+b}`.
pub fn bracket(x: &CoeffTable, y: &CoeffTable, p: &Partition) -> CoeffTable {
    let mut out = CoeffTable::new();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let c = ca * cb;
            if let Some(ab) = a.compose(b, p) {
                out.add(ab, c.clone());
            }
            if let Some(ba) = b.compose(a, p) {
                out.add(ba, -c);
            }
        }
    }
    out
}

/// `z_gl(e)` with its basis, as a Lie algebra over that basis.
#[derive(Clone, Debug)]
pub struct GlCentralizer {
    pub partition: Partition,
    pub basis: Vec<BasisElt>,
    index: BTreeMap<BasisElt, usize>,
    pub algebra: LieAlgebra,
}

impl GlCentralizer {
    pub fn new(p: &Partition) -> Self {
        let basis = gl_centralizer_basis(p);
        let index: BTreeMap<BasisElt, usize> =
            basis.iter().enumerate().map(|(u, x)| (*x, u)).collect();
        let dim = basis.len();
        let labels = basis.iter().map(|x| format!("{x}")).collect();
        let algebra = LieAlgebra::from_fn("z_gl(e)", labels, |u, v| {
            let b = bracket(
                &CoeffTable::single(basis[u]),
                &CoeffTable::single(basis[v]),
                p,
            );
            let mut out = vec![Scalar::zero(); dim];
            for (x, c) in b.iter() {
                out[index[x]] = c.clone();
            }
            out
        });
        let torus = (0..p.k())
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim];
                v[index[&BasisElt::new(i, i, 0)]] = Scalar::one();
                v
            })
            .collect();
        GlCentralizer {
            partition: p.clone(),
            basis,
            index,
            algebra: algebra.with_torus(torus),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, x: &BasisElt) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn to_vector(&self, t: &CoeffTable) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (x, c) in t.iter() {
            v[self.index[x]] = c.clone();
        }
        v
    }

    pub fn to_table(&self, v: &[Scalar]) -> CoeffTable {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(u, c)| (self.basis[u], c.clone()))
            .collect()
    }

    /// Human-readable form of a coordinate vector, e.g. `xi_2^{1,4} - xi_1^{2,2}`.
    pub fn describe(&self, v: &[Scalar]) -> String {
        let mut out = String::new();
        for (u, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!("{}", self.basis[u]));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Coordinates of `e`, which is `Σ_i ξ_i^{i,1}` over blocks with `d_i >= 1`.
    pub fn e_vector(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for i in 0..self.partition.k() {
            if let Some(u) = self.index_of(&BasisElt::new(i, i, 1)) {
                v[u] = Scalar::one();
            }
        }
        v
    }
}

/// `z_gl(e) = z(e) ⊕ z_1` for the involution `σ(ξ) = -J ξ^T J^{-1}`.
#[derive(Clone, Debug)]
pub struct SigmaSplit {
    pub gl: GlCentralizer,
    /// `σ` on coordinates over the `ξ` basis; column `u` is `σ(ξ_u)`.
    pub sigma: Mat<Scalar>,
    /// Basis of `z(e)` over the `ξ` basis, one combination per row.
    pub z_rows: Mat<Scalar>,
    pub z1_rows: Mat<Scalar>,
    /// `z(e)` over the basis `z_rows`.
    pub z: LieAlgebra,
}

impl SigmaSplit {
    pub fn z1(&self) -> Subalgebra<'_> {
        Subalgebra::span(&self.gl.algebra, &self.z1_rows)
    }

    pub fn z_in_gl(&self) -> Subalgebra<'_> {
        Subalgebra::span(&self.gl.algebra, &self.z_rows)
    }

    /// Coordinates over `z_rows` of a vector of `z_gl(e)` lying in `z(e)`.
    pub fn restrict_vector(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        crate::exactlin::solve_in_rowspace(&self.z_rows, v)
    }

    /// Ambient vector of an element given over the `z(e)` basis.
    pub fn lift(&self, c: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.gl.dim()];
        for (ci, row) in c.iter().zip(self.z_rows.row_iter()) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += ci * x;
            }
        }
        out
    }

    /// Index of the `z(e)` basis element whose ambient support starts at `x`.
    pub fn z_index_led_by(&self, x: &BasisElt) -> Option<usize> {
        let u = self.gl.index_of(x)?;
        self.z_rows
            .row_iter()
            .position(|r| r.iter().position(|c| !c.is_zero()) == Some(u))
    }
}

fn sigma_matrix(model: &Model, gl: &GlCentralizer) -> Result<Mat<Scalar>> {
    let p = &model.partition;
    let dim = gl.dim();
    let mut cols = Vec::with_capacity(dim);
    for x in &gl.basis {
        let image = model.sigma(&x.matrix(p));
        let t = coefficients(&image, p)?;
        cols.push(gl.to_vector(&t));
    }
    Ok(Mat::from_rows(cols, dim).transpose())
}

/// Normalised `ξ_u ± σ(ξ_u)` for each `u`, skipping zero and repeated
/// vectors. The leading coefficient is scaled to 1.
fn eigen_combinations(sigma: &Mat<Scalar>, sign: i64) -> Mat<Scalar> {
    let dim = sigma.rows();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut span = Mat::zeros(0, dim);
    for u in 0..dim {
        let mut v: Vec<Scalar> = (0..dim).map(|w| &sigma[(w, u)] * int(sign)).collect();
        v[u] += Scalar::one();
        let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() else {
            continue;
        };
        let v: Vec<Scalar> = v.iter().map(|c| c / &lead).collect();
        if crate::exactlin::solve_in_rowspace(&span, &v).is_some() {
            continue;
        }
        rows.push(v);
        span = Mat::from_rows(rows.clone(), dim);
    }
    span
}

pub fn sigma_split(model: &Model) -> Result<SigmaSplit> {
    if model.kind == AlgebraKind::GeneralLinear {
        return Err(Error::WrongKind {
            expected: "sp or so",
            found: model.kind,
        });
    }
    let p = &model.partition;
    let gl = GlCentralizer::new(p);
    let sigma = sigma_matrix(model, &gl)?;
    let z_rows = eigen_combinations(&sigma, 1);
    let z1_rows = eigen_combinations(&sigma, -1);
    if z_rows.rows() + z1_rows.rows() != gl.dim() {
        return Err(Error::ModelInvariant(
            "sigma is not an involution on z_gl(e)".into(),
        ));
    }
    let labels = z_rows.row_iter().map(|r| gl.describe(r)).collect();
    let z = gl
        .algebra
        .subalgebra_from_rows(format!("z(e) in {}", model.kind), labels, &z_rows)?;
    let torus = z_torus(model, &gl, &sigma)
        .iter()
        .map(|v| crate::exactlin::solve_in_rowspace(&z_rows, v).expect("torus lies in z(e)"))
        .collect();
    Ok(SigmaSplit {
        z: z.with_torus(torus),
        gl,
        sigma,
        z_rows,
        z1_rows,
    })
}

/// Commuting semisimple elements of `z(e)`: `ξ_i^{i,0} - ξ_{i'}^{i',0}` on
/// paired blocks and the rotation mixing two self-paired blocks of equal size.
fn z_torus(model: &Model, gl: &GlCentralizer, sigma: &Mat<Scalar>) -> Vec<Vec<Scalar>> {
    let p = &model.partition;
    let k = p.k();
    let mut seeds = Vec::new();
    let mut i = 0;
    while i < k {
        let q = model.pairing.partner[i];
        if q != i {
            seeds.push(BasisElt::new(i, i, 0));
            i += 2;
        } else if i + 1 < k
            && model.pairing.partner[i + 1] == i + 1
            && p.sizes()[i + 1] == p.sizes()[i]
        {
            seeds.push(BasisElt::new(i, i + 1, 0));
            i += 2;
        } else {
            i += 1;
        }
    }
    seeds
        .into_iter()
        .filter_map(|x| {
            let u = gl.index_of(&x)?;
            let mut v: Vec<Scalar> = (0..gl.dim()).map(|w| sigma[(w, u)].clone()).collect();
            v[u] += Scalar::one();
            v.iter().any(|c| !c.is_zero()).then_some(v)
        })
        .collect()
}

/// A basis vector of `z(e)` for `so` together with its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedCombination {
    pub label: String,
    pub terms: Vec<(BasisElt, Scalar)>,
}

/// The `σ`-fixed combinations `ξ_i^{j,s} + ε ξ_{j*}^{i*,s'}` spanning `z(e)`
/// in the orthogonal case; the signs `ε` are read off from `σ`.
pub fn so_fixed_basis(model: &Model) -> Result<Vec<FixedCombination>> {
    if model.kind != AlgebraKind::Orthogonal {
        return Err(Error::WrongKind {
            expected: "so",
            found: model.kind,
        });
    }
    let split = sigma_split(model)?;
    Ok(split
        .z_rows
        .row_iter()
        .map(|r| FixedCombination {
            label: split.gl.describe(r),
            terms: split
                .gl
                .to_table(r)
                .iter()
                .map(|(x, c)| (*x, c.clone()))
                .collect(),
        })
        .collect())
}

/// Labels used for steps: the signed enumeration when the model has one,
/// otherwise the stored block order.
pub fn block_labels(model: &Model) -> Vec<i64> {
    match &model.signed_labels {
        Some(l) => l.clone(),
        None => (0..model.partition.k() as i64).collect(),
    }
}

/// Splits `φ` by step `label(j) - label(i)`.
pub fn step_decomposition(phi: &CoeffTable, labels: &[i64]) -> BTreeMap<i64, CoeffTable> {
    let mut out: BTreeMap<i64, CoeffTable> = BTreeMap::new();
    for (x, c) in phi.iter() {
        out.entry(labels[x.j] - labels[x.i])
            .or_default()
            .add(*x, c.clone());
    }
    out
}
