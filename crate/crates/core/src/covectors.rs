//! Distinguished covectors on centralisers and the facts they certify.
//!
//! Covectors are built over the `ξ` basis of `z_gl(e)` and restricted to
//! `z(e)` by evaluating on its basis.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::centralizer::{block_labels, BasisElt, GlCentralizer, SigmaSplit};
use crate::exactlin::{int, Mat, Scalar};
use crate::indexcalc::{
    restricted_form_kernel, restricted_form_kernel_basis, stabilizer, Covector,
};
use crate::jordan::{has_central_odd_block, AlgebraKind, Model, Partition};
use crate::lie::Subalgebra;
use crate::{Error, Result};

/// Weights `a_i`, one per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights(pub Vec<Scalar>);

impl Weights {
    /// `a_i = i` (1-based).
    pub fn default_gl(p: &Partition) -> Self {
        Weights((1..=p.k() as i64).map(int).collect())
    }

    /// `+i` on the first block of a pair and on self-paired blocks, `-i` on
    /// the second block of a pair, where `i` is the 1-based index of the
    /// first block.
    pub fn default_sp(model: &Model) -> Self {
        let partner = &model.pairing.partner;
        Weights(
            (0..partner.len())
                .map(|i| {
                    let q = partner[i];
                    if q < i {
                        int(-(q as i64 + 1))
                    } else {
                        int(i as i64 + 1)
                    }
                })
                .collect(),
        )
    }

    fn check_distinct_nonzero(&self, k: usize) -> Result<()> {
        if self.0.len() != k {
            return Err(Error::InvalidWeights(format!(
                "expected {k} weights, got {}",
                self.0.len()
            )));
        }
        if self.0.iter().any(Zero::is_zero) {
            return Err(Error::InvalidWeights("weights must be nonzero".into()));
        }
        for a in 0..k {
            for b in a + 1..k {
                if self.0[a] == self.0[b] {
                    return Err(Error::InvalidWeights(format!(
                        "weights {} and {} coincide",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn validate_gl(&self, p: &Partition) -> Result<()> {
        self.check_distinct_nonzero(p.k())
    }

    pub fn validate_sp(&self, model: &Model) -> Result<()> {
        self.check_distinct_nonzero(model.partition.k())?;
        for (i, &q) in model.pairing.partner.iter().enumerate() {
            if q != i && self.0[q] != -self.0[i].clone() {
                return Err(Error::InvalidWeights(format!(
                    "paired blocks {} and {} need opposite weights",
                    i + 1,
                    q + 1
                )));
            }
        }
        Ok(())
    }
}

fn covector_from(
    gl: &GlCentralizer,
    terms: impl IntoIterator<Item = (BasisElt, Scalar)>,
) -> Covector {
    let mut c = Covector::zero(gl.dim());
    for (x, v) in terms {
        let u = gl
            .index_of(&x)
            .expect("covector term is a valid basis element");
        c.coords[u] += v;
    }
    c
}

/// `α(φ) = Σ a_i c_i^{i,d_i}`.
pub fn alpha_gl(gl: &GlCentralizer, w: &Weights) -> Result<Covector> {
    let p = &gl.partition;
    w.validate_gl(p)?;
    Ok(covector_from(
        gl,
        (0..p.k()).map(|i| (BasisElt::new(i, i, p.d(i)), w.0[i].clone())),
    ))
}

/// Same formula on `z_gl(e)` for a symplectic model, with the weight rule
/// `a_{i'} = -a_i`.
pub fn alpha_sp(model: &Model, gl: &GlCentralizer, w: &Weights) -> Result<Covector> {
    if model.kind != AlgebraKind::Symplectic {
        return Err(Error::WrongKind {
            expected: "sp",
            found: model.kind,
        });
    }
    w.validate_sp(model)?;
    let p = &model.partition;
    Ok(covector_from(
        gl,
        (0..p.k()).map(|i| (BasisElt::new(i, i, p.d(i)), w.0[i].clone())),
    ))
}

/// Span of `ξ_i^{i,s}`, the maps preserving every block.
pub fn block_preserving_span<'a>(gl: &'a GlCentralizer) -> Subalgebra<'a> {
    let vs = gl
        .basis
        .iter()
        .enumerate()
        .filter(|(_, x)| x.i == x.j)
        .map(|(u, _)| gl.algebra.unit(u))
        .collect();
    Subalgebra::from_vectors(&gl.algebra, vs)
}

/// `z(e)_α̃` computed in `z(e)` and `z_gl(e)_α ∩ z(e)` computed in
/// `z_gl(e)` agree (both as subspaces of `z_gl(e)`).
pub fn stabilizer_restricts(split: &SigmaSplit, alpha: &Covector) -> Result<bool> {
    let restricted = alpha.restrict(&split.z_rows);
    let inner = stabilizer(&split.z, &restricted)?;
    let lifted: Vec<Vec<Scalar>> = inner.rows().row_iter().map(|r| split.lift(r)).collect();
    let lifted = Subalgebra::from_vectors(&split.gl.algebra, lifted);
    let outer = stabilizer(&split.gl.algebra, alpha)?.intersect(&split.z_in_gl());
    Ok(lifted == outer)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SoCase {
    /// One odd-dimensional block: `z(e)` is abelian of dimension `m`.
    RegularOdd,
    /// Two even-dimensional blocks of equal size.
    TwoEvenBlocks,
    /// The form is nondegenerate on the first `2p` blocks, `2p < k`.
    Case1 { p: usize },
    /// `d_1`, `d_k` even and all other `d_i` odd.
    Case2,
    /// `d_i` even only for `i = 1`.
    Case3,
}

impl SoCase {
    pub fn name(&self) -> String {
        match self {
            SoCase::RegularOdd => "regular-odd".into(),
            SoCase::TwoEvenBlocks => "two-even-blocks".into(),
            SoCase::Case1 { p } => format!("case1(p={p})"),
            SoCase::Case2 => "case2".into(),
            SoCase::Case3 => "case3".into(),
        }
    }
}

fn orthogonal_partners(p: &Partition) -> Vec<usize> {
    let mut partner: Vec<usize> = (0..p.k()).collect();
    let mut i = 0;
    while i < p.k() {
        if p.sizes()[i].is_multiple_of(2) {
            partner[i] = i + 1;
            partner[i + 1] = i;
            i += 2;
        } else {
            i += 1;
        }
    }
    partner
}

pub fn classify_so(p: &Partition) -> Result<SoCase> {
    if !crate::jordan::admissible(p, AlgebraKind::Orthogonal) {
        return Err(Error::Inadmissible {
            kind: AlgebraKind::Orthogonal,
            partition: p.to_string(),
            reason: "even parts need even multiplicity".into(),
        });
    }
    let k = p.k();
    if k == 1 {
        return Ok(SoCase::RegularOdd);
    }
    if k == 2 && p.sizes().iter().all(|s| s % 2 == 0) {
        return Ok(SoCase::TwoEvenBlocks);
    }
    let partner = orthogonal_partners(p);
    let case1 = (1..)
        .take_while(|q| 2 * q < k)
        .find(|&q| (0..2 * q).all(|i| partner[i] < 2 * q))
        .map(|q| SoCase::Case1 { p: q });
    let even_d = |i: usize| p.d(i).is_multiple_of(2);
    let case2 =
        (even_d(0) && even_d(k - 1) && (1..k - 1).all(|i| !even_d(i))).then_some(SoCase::Case2);
    let case3 = has_central_odd_block(p).then_some(SoCase::Case3);
    let found: Vec<SoCase> = [case1, case2, case3].into_iter().flatten().collect();
    match found.as_slice() {
        [c] => Ok(*c),
        _ => Err(Error::CaseMismatch(format!(
            "{} cases apply to {p}",
            found.len()
        ))),
    }
}

/// The functionals shown to vanish on `z_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingFunctional {
    /// `β_i = c_i^{i,d_i-1}` for a self-paired block with `d_i >= 1`.
    Beta(usize),
    /// `γ_{i,j} - γ_{j,i}` for self-paired `i`, `j`, where `γ_{i,j} = c_i^{j,d_j}`.
    GammaDiff(usize, usize),
    /// `γ_{t,t} + γ_{t*,t*}` for a paired block `t`.
    GammaSum(usize),
}

pub fn beta_gamma(
    model: &Model,
    gl: &GlCentralizer,
    which: VanishingFunctional,
) -> Result<Covector> {
    if model.kind != AlgebraKind::Orthogonal {
        return Err(Error::WrongKind {
            expected: "so",
            found: model.kind,
        });
    }
    let p = &model.partition;
    let partner = &model.pairing.partner;
    let k = p.k();
    let bad = |msg: String| Err(Error::IndexConstraint(msg));
    let one = Scalar::one;
    match which {
        VanishingFunctional::Beta(i) => {
            if i >= k || partner[i] != i || p.d(i) == 0 {
                return bad(format!(
                    "beta_{} needs a self-paired block with d >= 1",
                    i + 1
                ));
            }
            Ok(covector_from(
                gl,
                [(BasisElt::new(i, i, p.d(i) - 1), one())],
            ))
        }
        VanishingFunctional::GammaDiff(i, j) => {
            if i >= k || j >= k || partner[i] != i || partner[j] != j {
                return bad("gamma_{i,j} - gamma_{j,i} needs self-paired blocks".into());
            }
            let mut c = covector_from(gl, [(BasisElt::new(i, j, p.d(j)), one())]);
            let u = gl.index_of(&BasisElt::new(j, i, p.d(i))).expect("valid");
            c.coords[u] -= one();
            Ok(c)
        }
        VanishingFunctional::GammaSum(t) => {
            if t >= k || partner[t] == t {
                return bad("gamma_{t,t} + gamma_{t*,t*} needs a paired block".into());
            }
            let q = partner[t];
            Ok(covector_from(
                gl,
                [
                    (BasisElt::new(t, t, p.d(t)), one()),
                    (BasisElt::new(q, q, p.d(q)), one()),
                ],
            ))
        }
    }
}

/// Every functional of the vanishing lemma that makes sense for the model.
pub fn all_vanishing_functionals(model: &Model) -> Vec<VanishingFunctional> {
    let p = &model.partition;
    let partner = &model.pairing.partner;
    let mut out = Vec::new();
    let selfs: Vec<usize> = (0..p.k()).filter(|&i| partner[i] == i).collect();
    for &i in &selfs {
        if p.d(i) >= 1 {
            out.push(VanishingFunctional::Beta(i));
        }
        for &j in &selfs {
            if i != j {
                out.push(VanishingFunctional::GammaDiff(i, j));
            }
        }
    }
    out.extend(
        (0..p.k())
            .filter(|&t| partner[t] != t)
            .map(VanishingFunctional::GammaSum),
    );
    out
}

/// How the odd-dimensional blocks of the first `2p` are matched up in the
/// case (1) functional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddPairing {
    /// `(1st, 2nd), (3rd, 4th), ...`
    Consecutive,
    /// `(1st, last), (2nd, second to last), ...`
    Nested,
}

fn odd_pairs(blocks: &[usize], order: OddPairing) -> Vec<(usize, usize)> {
    let h = blocks.len() / 2;
    match order {
        OddPairing::Consecutive => blocks.chunks(2).map(|c| (c[0], c[1])).collect(),
        OddPairing::Nested => (0..h)
            .map(|a| (blocks[a], blocks[blocks.len() - 1 - a]))
            .collect(),
    }
}

pub fn case1_covector(
    model: &Model,
    gl: &GlCentralizer,
    half: usize,
    order: OddPairing,
) -> Covector {
    let p = &model.partition;
    let prefix = 0..2 * half;
    let odd: Vec<usize> = prefix.clone().filter(|&i| p.sizes()[i] % 2 == 1).collect();
    let mut terms = Vec::new();
    for (i, q) in odd_pairs(&odd, order) {
        terms.push((BasisElt::new(i, q, p.d(q)), Scalar::one()));
        terms.push((BasisElt::new(q, i, p.d(i)), -Scalar::one()));
    }
    for j in prefix.filter(|&j| p.sizes()[j].is_multiple_of(2)) {
        terms.push((BasisElt::new(j, j, p.d(j)), Scalar::one()));
    }
    covector_from(gl, terms)
}

pub fn case2_covector(model: &Model, gl: &GlCentralizer) -> Covector {
    let p = &model.partition;
    let k = p.k();
    let mut terms = Vec::new();
    if p.d(0) >= 1 {
        terms.push((BasisElt::new(0, 0, p.d(0) - 1), Scalar::one()));
    }
    for i in 1..k - 1 {
        terms.push((BasisElt::new(i, i, p.d(i)), Scalar::one()));
    }
    covector_from(gl, terms)
}

pub fn two_even_blocks_covector(model: &Model, gl: &GlCentralizer) -> Covector {
    let top = model.partition.d(0) - 1;
    covector_from(
        gl,
        [
            (BasisElt::new(0, 0, top), Scalar::one()),
            (BasisElt::new(1, 1, top), -Scalar::one()),
        ],
    )
}

/// `α(φ) = Σ_{i=-m+1}^{m} c_{i-1}^{i,d_i}` over the signed enumeration.
pub fn case3_covector(model: &Model, gl: &GlCentralizer) -> Result<Covector> {
    let labels = model
        .signed_labels
        .as_ref()
        .ok_or_else(|| Error::CaseMismatch("model has no signed enumeration".into()))?;
    let block_of: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(b, &l)| (l, b)).collect();
    let m = labels.iter().map(|l| l.abs()).max().unwrap_or(0);
    let p = &model.partition;
    let terms = (-m + 1..=m).map(|l| {
        let src = block_of[&(l - 1)];
        let dst = block_of[&l];
        (BasisElt::new(src, dst, p.d(dst)), Scalar::one())
    });
    Ok(covector_from(gl, terms))
}

/// The covector attached to each case, over `z_gl(e)`. Regular-odd uses the
/// zero covector since `z(e)` is abelian.
pub fn so_covector(model: &Model, gl: &GlCentralizer, case: SoCase) -> Result<Covector> {
    if classify_so(&model.partition)? != case {
        return Err(Error::CaseMismatch(format!(
            "{} is not {}",
            model.partition,
            case.name()
        )));
    }
    Ok(match case {
        SoCase::RegularOdd => Covector::zero(gl.dim()),
        SoCase::TwoEvenBlocks => two_even_blocks_covector(model, gl),
        SoCase::Case1 { p } => case1_covector(model, gl, p, OddPairing::Consecutive),
        SoCase::Case2 => case2_covector(model, gl),
        SoCase::Case3 => case3_covector(model, gl)?,
    })
}

/// `z(e) = h0 ⊕ h1` for the involution fixing the blocks on each side;
/// `side[i]` says which side block `i` is on. Both parts are returned as
/// coordinate rows over the `z(e)` basis.
pub fn tau_split(split: &SigmaSplit, side: &[bool]) -> Result<(Mat<Scalar>, Mat<Scalar>)> {
    let dim = split.z.dim();
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    for (u, row) in split.z_rows.row_iter().enumerate() {
        let t = split.gl.to_table(row);
        let same = t.iter().all(|(x, _)| side[x.i] == side[x.j]);
        let cross = t.iter().all(|(x, _)| side[x.i] != side[x.j]);
        let mut v = vec![Scalar::zero(); dim];
        v[u] = Scalar::one();
        match (same, cross) {
            (true, _) => h0.push(v),
            (_, true) => h1.push(v),
            _ => {
                return Err(Error::IncompatibleDecomposition(format!(
                    "{} mixes the two sides",
                    split.z.labels()[u]
                )))
            }
        }
    }
    Ok((Mat::from_rows(h0, dim), Mat::from_rows(h1, dim)))
}

/// Kernel of the restricted form of `γ` on `h1`, lifted to `z_gl(e)`.
pub fn split_form_kernel(
    split: &SigmaSplit,
    gamma: &Covector,
    side: &[bool],
) -> Result<Vec<Vec<Scalar>>> {
    let (h0, h1) = tau_split(split, side)?;
    let h0 = Subalgebra::span(&split.z, &h0);
    let h1 = Subalgebra::span(&split.z, &h1);
    let restricted = gamma.restrict(&split.z_rows);
    let kernel = restricted_form_kernel_basis(&restricted, &h0, &h1)?;
    Ok(kernel.iter().map(|c| split.lift(c)).collect())
}

/// Splits the first block off `z_gl(e)` and returns the kernel dimension of
/// the restricted form of the functional dual to `ξ_1^{1,d_1}`.
pub fn gl_first_block_kernel(gl: &GlCentralizer) -> Result<usize> {
    let g = &gl.algebra;
    let (mut h0, mut h1) = (Vec::new(), Vec::new());
    for (u, x) in gl.basis.iter().enumerate() {
        if (x.i == 0) == (x.j == 0) {
            h0.push(g.unit(u));
        } else {
            h1.push(g.unit(u));
        }
    }
    let top = BasisElt::new(0, 0, gl.partition.d(0));
    let gamma = Covector::new(g.unit(gl.index_of(&top).ok_or(Error::NotInCentralizer)?));
    let h0 = Subalgebra::from_vectors(g, h0);
    let h1 = Subalgebra::from_vectors(g, h1);
    restricted_form_kernel(&gamma, &h0, &h1)
}

/// Dimensions of the step components `Φ_l` of a stabiliser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub stabilizer_dim: usize,
    pub steps: BTreeMap<i64, usize>,
    /// `(name, holds)` for each bound.
    pub checks: Vec<(String, bool)>,
}

impl StepReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Splits the stabiliser of the case (3) covector by step and compares each
/// piece with its bound.
pub fn step_filtration_bounds(model: &Model, split: &SigmaSplit) -> Result<StepReport> {
    if classify_so(&model.partition)? != SoCase::Case3 {
        return Err(Error::CaseMismatch(format!(
            "{} is not case3",
            model.partition
        )));
    }
    let alpha = case3_covector(model, &split.gl)?;
    let restricted = alpha.restrict(&split.z_rows);
    let stab = stabilizer(&split.z, &restricted)?;
    let labels = block_labels(model);
    let dim = split.z.dim();
    let mut by_step: BTreeMap<i64, Vec<Vec<Scalar>>> = BTreeMap::new();
    for (u, row) in split.z_rows.row_iter().enumerate() {
        let t = split.gl.to_table(row);
        let steps: Vec<i64> = t.iter().map(|(x, _)| labels[x.j] - labels[x.i]).collect();
        if steps.iter().any(|&s| s != steps[0]) {
            return Err(Error::ModelInvariant(format!(
                "{} has no single step",
                split.z.labels()[u]
            )));
        }
        let mut v = vec![Scalar::zero(); dim];
        v[u] = Scalar::one();
        by_step.entry(steps[0]).or_default().push(v);
    }
    let mut steps = BTreeMap::new();
    for (l, vs) in by_step {
        let piece = Subalgebra::from_vectors(&split.z, vs).intersect(&stab);
        steps.insert(l, piece.dim());
    }
    let p = &model.partition;
    let block_of: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(b, &l)| (l, b)).collect();
    let m = labels.iter().map(|l| l.abs()).max().unwrap_or(0);
    let dim_at = |l: i64| steps.get(&l).copied().unwrap_or(0);
    let mut checks = Vec::new();
    checks.push((
        "alpha vanishes on z1".into(),
        alpha.vanishes_on(&split.z1_rows),
    ));
    checks.push((
        "positive steps vanish".into(),
        steps.iter().all(|(&l, &d)| l <= 0 || d == 0),
    ));
    checks.push((
        format!(
            "dim Phi_0 = {} <= d_0/2 = {}",
            dim_at(0),
            p.d(block_of[&0]) / 2
        ),
        2 * dim_at(0) <= p.d(block_of[&0]),
    ));
    for q in 1..=2 * m {
        let l = (q + 1) / 2;
        let d = p.d(block_of[&l]);
        checks.push((
            format!(
                "dim Phi_-{q} = {} <= (d_{l}+1)/2 = {}",
                dim_at(-q),
                d.div_ceil(2)
            ),
            2 * dim_at(-q) <= d + 1,
        ));
    }
    let total: usize = steps.values().sum();
    checks.push((
        format!("sum of Phi = {total} equals stabiliser dim {}", stab.dim()),
        total == stab.dim(),
    ));
    checks.push((
        format!("stabiliser dim {} = [n/2] = {}", stab.dim(), p.n() / 2),
        stab.dim() == p.n() / 2,
    ));
    Ok(StepReport {
        stabilizer_dim: stab.dim(),
        steps,
        checks,
    })
}

/// Facts established for one orthogonal partition by its case covector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoCaseReport {
    pub case: SoCase,
    /// Stabiliser dimension in `z(e)`, for the cases that produce one.
    pub stabilizer_dim: Option<usize>,
    /// Kernel dimension of the restricted form, for cases (1) and (2).
    pub kernel_dim: Option<usize>,
    pub steps: Option<StepReport>,
    pub checks: Vec<(String, bool)>,
}

impl SoCaseReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub fn verify_so_case(model: &Model, split: &SigmaSplit) -> Result<SoCaseReport> {
    let p = &model.partition;
    let case = classify_so(p)?;
    let gl = &split.gl;
    let mut checks: Vec<(String, bool)> = Vec::new();
    for f in all_vanishing_functionals(model) {
        let c = beta_gamma(model, gl, f)?;
        checks.push((
            format!("{f:?} vanishes on z1"),
            c.vanishes_on(&split.z1_rows),
        ));
    }
    let mut report = SoCaseReport {
        case,
        stabilizer_dim: None,
        kernel_dim: None,
        steps: None,
        checks: Vec::new(),
    };
    match case {
        SoCase::RegularOdd => {
            let m = p.n() / 2;
            checks.push((
                format!("z(e) abelian of dim {m}"),
                split.z.is_abelian() && split.z.dim() == m,
            ));
            let stab = stabilizer(&split.z, &Covector::zero(split.z.dim()))?;
            report.stabilizer_dim = Some(stab.dim());
        }
        SoCase::TwoEvenBlocks => {
            let alpha = two_even_blocks_covector(model, gl);
            let stab = stabilizer(&split.z, &alpha.restrict(&split.z_rows))?;
            let size = p.sizes()[0];
            checks.push((
                format!("stabiliser dim {} = 2d = {size}", stab.dim()),
                stab.dim() == size,
            ));
            let expected: Vec<Vec<Scalar>> = (0..size)
                .map(|s| {
                    let sign = if s % 2 == 0 { -1 } else { 1 };
                    let mut v = vec![Scalar::zero(); gl.dim()];
                    v[gl.index_of(&BasisElt::new(0, 0, s)).expect("valid")] = Scalar::one();
                    v[gl.index_of(&BasisElt::new(1, 1, s)).expect("valid")] = int(sign);
                    v
                })
                .collect();
            let lifted: Vec<Vec<Scalar>> = stab.rows().row_iter().map(|r| split.lift(r)).collect();
            let same = Subalgebra::from_vectors(&gl.algebra, lifted)
                == Subalgebra::from_vectors(&gl.algebra, expected);
            checks.push((
                "stabiliser basis xi_1^{1,s} + (-1)^{s+1} xi_2^{2,s}".into(),
                same,
            ));
            report.stabilizer_dim = Some(stab.dim());
        }
        SoCase::Case1 { p: half } => {
            let side: Vec<bool> = (0..p.k()).map(|i| i < 2 * half).collect();
            let mut dims = Vec::new();
            for order in [OddPairing::Consecutive, OddPairing::Nested] {
                let gamma = case1_covector(model, gl, half, order);
                checks.push((
                    format!("{order:?} gamma vanishes on z1"),
                    gamma.vanishes_on(&split.z1_rows),
                ));
                dims.push(split_form_kernel(split, &gamma, &side)?.len());
            }
            checks.push((
                format!("restricted form kernel {} = 0", dims[0]),
                dims[0] == 0,
            ));
            checks.push((
                "kernel independent of pairing order".into(),
                dims[0] == dims[1],
            ));
            report.kernel_dim = Some(dims[0]);
        }
        SoCase::Case2 => {
            let k = p.k();
            let side: Vec<bool> = (0..k).map(|i| i + 1 < k).collect();
            let gamma = case2_covector(model, gl);
            checks.push((
                "gamma vanishes on z1".into(),
                gamma.vanishes_on(&split.z1_rows),
            ));
            let kernel = split_form_kernel(split, &gamma, &side)?;
            checks.push((
                format!("restricted form kernel {} = 1", kernel.len()),
                kernel.len() == 1,
            ));
            if let [v] = kernel.as_slice() {
                let a = gl
                    .index_of(&BasisElt::new(k - 1, 0, p.d(0)))
                    .expect("valid");
                let b = gl
                    .index_of(&BasisElt::new(0, k - 1, p.d(k - 1)))
                    .expect("valid");
                let supported = v
                    .iter()
                    .enumerate()
                    .all(|(u, c)| c.is_zero() || u == a || u == b);
                checks.push((
                    "kernel spanned by xi_k^{1,d_1} +- xi_1^{k,d_k}".into(),
                    supported && !v[a].is_zero() && !v[b].is_zero(),
                ));
            }
            report.kernel_dim = Some(kernel.len());
        }
        SoCase::Case3 => {
            let steps = step_filtration_bounds(model, split)?;
            checks.extend(steps.checks.iter().cloned());
            report.stabilizer_dim = Some(steps.stabilizer_dim);
            let alpha = case3_covector(model, gl)?;
            checks.push((
                "z(e)_alpha = z_gl(e)_alpha ∩ z(e)".into(),
                stabilizer_restricts(split, &alpha)?,
            ));
            report.steps = Some(steps);
        }
    }
    report.checks = checks;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::sigma_split;
    use crate::jordan::{build_model, build_model_with_signs, FormSigns};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn so(s: &str) -> (Model, SigmaSplit) {
        let m = build_model(&part(s), AlgebraKind::Orthogonal).unwrap();
        let split = sigma_split(&m).unwrap();
        (m, split)
    }

    #[test]
    fn gl_first_block_pairing_is_nondegenerate() {
        for n in 1..=6 {
            for p in Partition::all(n) {
                assert_eq!(
                    gl_first_block_kernel(&GlCentralizer::new(&p)).unwrap(),
                    0,
                    "{p}"
                );
            }
        }
    }

    #[test]
    fn gl_alpha_examples() {
        let gl = GlCentralizer::new(&part("2,1"));
        let alpha = alpha_gl(&gl, &Weights(vec![int(1), int(2)])).unwrap();
        let stab = stabilizer(&gl.algebra, &alpha).unwrap();
        assert_eq!(stab.dim(), 3);
        assert_eq!(stab, block_preserving_span(&gl));

        let gl = GlCentralizer::new(&part("4"));
        let stab =
            stabilizer(&gl.algebra, &alpha_gl(&gl, &Weights(vec![int(1)])).unwrap()).unwrap();
        assert_eq!(stab.dim(), 4);

        let gl = GlCentralizer::new(&part("3,2,1"));
        let stab = stabilizer(
            &gl.algebra,
            &alpha_gl(&gl, &Weights::default_gl(&gl.partition)).unwrap(),
        )
        .unwrap();
        assert_eq!(stab.dim(), 6);

        assert!(alpha_gl(&gl, &Weights(vec![int(1), int(1), int(2)])).is_err());
        assert!(alpha_gl(&gl, &Weights(vec![int(0), int(1), int(2)])).is_err());
    }

    #[test]
    fn gl_stabilizer_ignores_weights() {
        let gl = GlCentralizer::new(&part("3,3,1"));
        let a = stabilizer(
            &gl.algebra,
            &alpha_gl(&gl, &Weights::default_gl(&gl.partition)).unwrap(),
        )
        .unwrap();
        let b = stabilizer(
            &gl.algebra,
            &alpha_gl(&gl, &Weights(vec![int(-7), int(5), int(2)])).unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sp_alpha_examples() {
        for (s, n) in [("2", 1), ("3,3", 3), ("2,2", 2), ("3,3,2", 4)] {
            let m = build_model(&part(s), AlgebraKind::Symplectic).unwrap();
            let split = sigma_split(&m).unwrap();
            let w = Weights::default_sp(&m);
            let alpha = alpha_sp(&m, &split.gl, &w).unwrap();
            assert!(alpha.vanishes_on(&split.z1_rows), "{s}");
            let stab = stabilizer(&split.z, &alpha.restrict(&split.z_rows)).unwrap();
            assert_eq!(stab.dim(), n, "{s}");
            assert!(stabilizer_restricts(&split, &alpha).unwrap());
        }
        let m = build_model(&part("3,3"), AlgebraKind::Symplectic).unwrap();
        let gl = GlCentralizer::new(&m.partition);
        assert!(alpha_sp(&m, &gl, &Weights(vec![int(1), int(2)])).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_so(&part("7")).unwrap(), SoCase::RegularOdd);
        assert_eq!(classify_so(&part("4,4")).unwrap(), SoCase::TwoEvenBlocks);
        assert_eq!(classify_so(&part("5,3")).unwrap(), SoCase::Case2);
        assert_eq!(classify_so(&part("5,4,4")).unwrap(), SoCase::Case3);
        assert_eq!(
            classify_so(&part("5,3,3,1,1")).unwrap(),
            SoCase::Case1 { p: 1 }
        );
        assert_eq!(classify_so(&part("2,2,1")).unwrap(), SoCase::Case1 { p: 1 });
        assert!(classify_so(&part("4,2")).is_err());
    }

    #[test]
    fn classification_is_exhaustive() {
        for n in 1..=12 {
            for p in Partition::all(n) {
                if crate::jordan::admissible(&p, AlgebraKind::Orthogonal) {
                    classify_so(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                }
            }
        }
    }

    #[test]
    fn vanishing_functionals_vanish() {
        for s in ["5,3", "4,4", "3,3,1", "4,4,3,1", "3,2,2"] {
            let (m, split) = so(s);
            for f in all_vanishing_functionals(&m) {
                assert!(
                    beta_gamma(&m, &split.gl, f)
                        .unwrap()
                        .vanishes_on(&split.z1_rows),
                    "{s} {f:?}"
                );
            }
        }
        let (m, split) = so("5,3");
        assert!(beta_gamma(&m, &split.gl, VanishingFunctional::GammaSum(0)).is_err());
    }

    #[test]
    fn case_examples() {
        let (m, split) = so("4,4");
        let r = verify_so_case(&m, &split).unwrap();
        assert_eq!(r.stabilizer_dim, Some(4));
        assert!(r.all_hold(), "{:?}", r.checks);

        let (m, split) = so("5,3");
        let r = verify_so_case(&m, &split).unwrap();
        assert_eq!(r.kernel_dim, Some(1));
        assert!(r.all_hold(), "{:?}", r.checks);

        let (m, split) = so("5,4,4");
        let r = verify_so_case(&m, &split).unwrap();
        assert!(r.stabilizer_dim.unwrap() <= 13 / 2);
        assert!(r.all_hold(), "{:?}", r.checks);

        let (m, split) = so("5,3,3,1,1");
        let r = verify_so_case(&m, &split).unwrap();
        assert_eq!(r.kernel_dim, Some(0));
        assert!(r.all_hold(), "{:?}", r.checks);

        let (m, split) = so("1,1");
        assert_eq!(verify_so_case(&m, &split).unwrap().kernel_dim, Some(1));
        let (m, split) = so("1");
        let r = verify_so_case(&m, &split).unwrap();
        assert_eq!(r.stabilizer_dim, Some(0));
        assert!(r.all_hold());
    }

    #[test]
    fn so_cases_hold_for_both_sign_choices() {
        for n in 1..=8 {
            for p in Partition::all(n) {
                for signs in [FormSigns::Standard, FormSigns::Flipped] {
                    let Ok(m) = build_model_with_signs(&p, AlgebraKind::Orthogonal, signs) else {
                        continue;
                    };
                    let split = sigma_split(&m).unwrap();
                    let r = verify_so_case(&m, &split).unwrap();
                    assert!(r.all_hold(), "{p} {signs:?}: {:?}", r.checks);
                }
            }
        }
    }

    #[test]
    fn case3_steps() {
        let (m, split) = so("3,2,2");
        let r = step_filtration_bounds(&m, &split).unwrap();
        assert!(r.all_hold(), "{:?}", r.checks);
        assert_eq!(r.stabilizer_dim, 3);
        assert_eq!(r.steps.values().sum::<usize>(), 3);
        let (m, split) = so("5,3");
        assert!(step_filtration_bounds(&m, &split).is_err());
        assert_eq!(SoCase::Case1 { p: 2 }.name(), "case1(p=2)");
        assert_eq!(m.partition.to_string(), "5,3");
    }
}
