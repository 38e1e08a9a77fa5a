//! Concrete matrix models: the nilpotent `e` of a given Jordan type and,
//! for `sp` and `so`, an invariant form `J` compatible with it.
//!
//! The basis of `V` is ordered block by block. Block `i` (0-based) owns the
//! vectors `e^s w_i`, `0 <= s <= d_i`, where `d_i + 1` is the block size.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::One;

use crate::exactlin::{int, rank, Mat, Scalar};
use crate::{Error, Result};

/// Jordan type of a nilpotent element: block sizes, weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts `sizes` into weakly decreasing order. Empty input and zero
    /// parts are rejected.
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(sizes))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// Dimension of `V`.
    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of Jordan blocks.
    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// `d_i = size_i - 1`.
    pub fn d(&self, i: usize) -> usize {
        self.0[i] - 1
    }

    /// Index in `V` of `e^0 w_i`.
    pub fn offset(&self, i: usize) -> usize {
        self.0[..i].iter().sum()
    }

    /// Position in `V` of `e^s w_i`.
    pub fn position(&self, i: usize, s: usize) -> usize {
        debug_assert!(s <= self.d(i));
        self.offset(i) + s
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.0.iter().filter(|&&s| s == size).count()
    }

    /// Every partition of `n`, in lexicographically descending order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for part in (1..=max.min(rest)).rev() {
                cur.push(part);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated positive integers, e.g. `5,3,3,1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut sizes = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let v: usize = tok
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("cannot parse part {tok:?}")))?;
            sizes.push(v);
        }
        Partition::new(sizes)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraKind {
    GeneralLinear,
    Symplectic,
    Orthogonal,
}

impl AlgebraKind {
    pub fn short_name(self) -> &'static str {
        match self {
            AlgebraKind::GeneralLinear => "gl",
            AlgebraKind::Symplectic => "sp",
            AlgebraKind::Orthogonal => "so",
        }
    }

    /// Rank of the ambient classical algebra acting on an `n`-dimensional
    /// space.
    pub fn rank_of_algebra(self, n: usize) -> usize {
        match self {
            AlgebraKind::GeneralLinear => n,
            AlgebraKind::Symplectic | AlgebraKind::Orthogonal => n / 2,
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(AlgebraKind::GeneralLinear),
            "sp" => Ok(AlgebraKind::Symplectic),
            "so" => Ok(AlgebraKind::Orthogonal),
            _ => Err(Error::InvalidPartition(format!(
                "unknown algebra kind {s:?}"
            ))),
        }
    }
}

/// Explains why `p` admits no compatible form of the given kind.
pub fn admissibility_violation(p: &Partition, kind: AlgebraKind) -> Option<String> {
    match kind {
        AlgebraKind::GeneralLinear => None,
        AlgebraKind::Symplectic => {
            if p.n() % 2 == 1 {
                return Some(format!("sp needs an even-dimensional space, n = {}", p.n()));
            }
            odd_multiplicity(p, |s| s % 2 == 1).map(|s| {
                format!("odd part {s} occurs an odd number of times; odd-dimensional blocks must pair up")
            })
        }
        AlgebraKind::Orthogonal => odd_multiplicity(p, |s| s % 2 == 0).map(|s| {
            format!(
                "even part {s} occurs an odd number of times; even-dimensional blocks must pair up"
            )
        }),
    }
}

fn odd_multiplicity(p: &Partition, parity: impl Fn(usize) -> bool) -> Option<usize> {
    let mut sizes = p.sizes().to_vec();
    sizes.dedup();
    sizes
        .into_iter()
        .find(|&s| parity(s) && p.multiplicity(s) % 2 == 1)
}

pub fn admissible(p: &Partition, kind: AlgebraKind) -> bool {
    admissibility_violation(p, kind).is_none()
}

/// Block-diagonal nilpotent matrix sending `e^s w_i` to `e^{s+1} w_i`.
pub fn build_nilpotent(p: &Partition) -> Mat<Scalar> {
    let n = p.n();
    let mut e = Mat::zeros(n, n);
    for i in 0..p.k() {
        for s in 0..p.d(i) {
            e[(p.position(i, s + 1), p.position(i, s))] = Scalar::one();
        }
    }
    e
}

/// Which blocks pair under the form and with which sign.
///
/// The form is `(e^a w_i, e^b w_partner(i)) = (-1)^a sign(i)` when
/// `a + b = d_i` and zero otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPairing {
    pub partner: Vec<usize>,
    pub sign: Vec<i8>,
}

impl BlockPairing {
    pub fn is_self_paired(&self, i: usize) -> bool {
        self.partner[i] == i
    }

    /// Value of `(e^a w_i, e^b w_j)`.
    pub fn form_value(&self, p: &Partition, i: usize, a: usize, j: usize, b: usize) -> i64 {
        if self.partner[i] != j || a + b != p.d(i) {
            return 0;
        }
        let s = i64::from(self.sign[i]);
        if a.is_multiple_of(2) {
            s
        } else {
            -s
        }
    }
}

/// Sign conventions for the generators. Any choice gives a valid model;
/// the second one exists so that results can be checked for independence
/// from the choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FormSigns {
    #[default]
    Standard,
    Flipped,
}

/// Matrix model of a nilpotent element in a classical Lie algebra.
#[derive(Clone, Debug)]
pub struct Model {
    pub kind: AlgebraKind,
    pub partition: Partition,
    pub e: Mat<Scalar>,
    /// Gram matrix of the invariant form; `None` for `gl`.
    pub form: Option<Mat<Scalar>>,
    form_inv: Option<Mat<Scalar>>,
    /// Label of each basis vector of `V`, `e^s w_i` with 1-based `i`.
    pub basis_labels: Vec<String>,
    /// Position in `V` of each generator `w_i`.
    pub generators: Vec<usize>,
    pub pairing: BlockPairing,
    /// Signed enumeration `-m..=m` of the blocks, present for orthogonal
    /// partitions whose only odd-dimensional block is the largest one.
    pub signed_labels: Option<Vec<i64>>,
}

/// Orthogonal partitions with `k > 1` whose unique odd-dimensional block is
/// the first (largest) one.
pub fn has_central_odd_block(p: &Partition) -> bool {
    p.k() > 1 && p.sizes()[0] % 2 == 1 && p.sizes()[1..].iter().all(|s| s % 2 == 0)
}

pub fn build_model(p: &Partition, kind: AlgebraKind) -> Result<Model> {
    build_model_with_signs(p, kind, FormSigns::Standard)
}

pub fn build_model_with_signs(p: &Partition, kind: AlgebraKind, signs: FormSigns) -> Result<Model> {
    if let Some(reason) = admissibility_violation(p, kind) {
        return Err(Error::Inadmissible {
            kind,
            partition: p.to_string(),
            reason,
        });
    }
    let k = p.k();
    let mut partner: Vec<usize> = (0..k).collect();
    let mut sign = vec![1i8; k];
    let paired_parity = match kind {
        AlgebraKind::Symplectic => Some(1),
        AlgebraKind::Orthogonal => Some(0),
        AlgebraKind::GeneralLinear => None,
    };
    if let Some(parity) = paired_parity {
        let mut i = 0;
        while i < k {
            let size = p.sizes()[i];
            if size % 2 == parity {
                // equal sizes are adjacent and occur an even number of times
                partner[i] = i + 1;
                partner[i + 1] = i;
                let first = if signs == FormSigns::Standard { 1 } else { -1 };
                sign[i] = first;
                sign[i + 1] = -first;
                i += 2;
            } else {
                if kind == AlgebraKind::Symplectic && signs == FormSigns::Flipped {
                    sign[i] = -1;
                }
                i += 1;
            }
        }
    }
    let pairing = BlockPairing { partner, sign };
    let mut model = Model {
        kind,
        partition: p.clone(),
        e: build_nilpotent(p),
        form: None,
        form_inv: None,
        basis_labels: (0..k)
            .flat_map(|i| (0..=p.d(i)).map(move |s| format!("e^{s}w_{}", i + 1)))
            .collect(),
        generators: (0..k).map(|i| p.offset(i)).collect(),
        pairing,
        signed_labels: None,
    };
    if kind == AlgebraKind::Orthogonal && has_central_odd_block(p) {
        let mut labels = vec![0i64; k];
        let mut t = 0;
        let mut i = 1;
        while i < k {
            t += 1;
            labels[i] = t;
            labels[i + 1] = -t;
            i += 2;
        }
        model.signed_labels = Some(labels);
        model.normalize_signed_pairs();
    }
    model.rebuild_form();
    Ok(model)
}

impl Model {
    pub fn n(&self) -> usize {
        self.partition.n()
    }

    fn rebuild_form(&mut self) {
        if self.kind == AlgebraKind::GeneralLinear {
            return;
        }
        let p = &self.partition;
        let n = p.n();
        let mut j = Mat::zeros(n, n);
        for i in 0..p.k() {
            let q = self.pairing.partner[i];
            for a in 0..=p.d(i) {
                let b = p.d(i) - a;
                let v = self.pairing.form_value(p, i, a, q, b);
                j[(p.position(i, a), p.position(q, b))] = int(v);
            }
        }
        self.form_inv = j.inverse();
        self.form = Some(j);
    }

    /// Rescales generators so that `(w_i, e^{d_i} w_{-i})` equals the sign of
    /// the label `i` for every paired block.
    fn normalize_signed_pairs(&mut self) {
        let Some(labels) = &self.signed_labels else {
            return;
        };
        for i in 0..self.partition.k() {
            let q = self.pairing.partner[i];
            if q == i || labels[i] < 0 {
                continue;
            }
            // replacing w_q by -w_q flips the sign on both sides of the pair
            if self.pairing.sign[i] < 0 {
                self.pairing.sign[i] = 1;
                self.pairing.sign[q] = -1;
            }
        }
    }

    /// `σ(ξ) = -J ξ^T J^{-1}`; fixed points preserve the form.
    ///
    /// Panics on a `gl` model.
    pub fn sigma(&self, x: &Mat<Scalar>) -> Mat<Scalar> {
        let j = self.form.as_ref().expect("sigma needs an invariant form");
        let jinv = self.form_inv.as_ref().expect("form is nondegenerate");
        j.mul(&x.transpose()).mul(jinv).scale(&int(-1))
    }

    /// Checks every structural property the model promises.
    pub fn check_invariants(&self) -> Result<()> {
        let p = &self.partition;
        let n = p.n();
        let fail = |msg: String| Err(Error::ModelInvariant(msg));
        // Jordan type from the rank sequence of powers of e
        let mut power = Mat::identity(n);
        for s in 0..=p.sizes()[0] {
            let expected: usize = p.sizes().iter().map(|&sz| sz.saturating_sub(s)).sum();
            if rank(&power) != expected {
                return fail(format!("rank(e^{s}) != {expected}"));
            }
            power = power.mul(&self.e);
        }
        let Some(j) = &self.form else {
            return Ok(());
        };
        let jt = j.transpose();
        let symmetric = match self.kind {
            AlgebraKind::Orthogonal => jt == *j,
            AlgebraKind::Symplectic => jt == j.scale(&int(-1)),
            AlgebraKind::GeneralLinear => unreachable!(),
        };
        if !symmetric {
            return fail("form has the wrong symmetry".into());
        }
        if rank(j) != n {
            return fail("form is degenerate".into());
        }
        if !self.e.transpose().mul(j).add(&j.mul(&self.e)).is_zero() {
            return fail("e does not preserve the form".into());
        }
        if self.sigma(&self.e) != self.e {
            return fail("sigma(e) != e".into());
        }
        for i in 0..p.k() {
            let q = self.pairing.partner[i];
            if p.sizes()[q] != p.sizes()[i] || self.pairing.partner[q] != i {
                return fail(format!(
                    "pairing of block {} is not an involution on equal sizes",
                    i + 1
                ));
            }
            let v = &j[(self.generators[q], p.position(i, p.d(i)))];
            let ok = match (self.kind, q == i) {
                (AlgebraKind::Orthogonal, true) => v.is_one(),
                _ => v.is_one() || *v == int(-1),
            };
            if !ok {
                return fail(format!("(w_{}*, e^d w_{}) = {v}", i + 1, i + 1));
            }
        }
        if let Some(labels) = &self.signed_labels {
            for i in 0..p.k() {
                let q = self.pairing.partner[i];
                let v = &j[(self.generators[i], p.position(q, p.d(q)))];
                let lhs = int(labels[i]) * v;
                if labels[i] != 0 && lhs != int(labels[i].abs()) {
                    return fail(format!("signed normalisation fails at label {}", labels[i]));
                }
                if labels[i] == 0 && !v.is_one() {
                    return fail("(w_0, e^d w_0) != 1".into());
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(part("3,5,1").sizes(), &[5, 3, 1]);
        assert!("".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("2,x".parse::<Partition>().is_err());
        assert_eq!(part("5,3,3,1").to_string(), "5,3,3,1");
    }

    #[test]
    fn enumeration_matches_partition_numbers() {
        // p(1..=8)
        let counts: Vec<usize> = (1..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22]);
        let four: Vec<String> = Partition::all(4).iter().map(ToString::to_string).collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn nilpotent_examples() {
        let e = build_nilpotent(&part("2"));
        assert_eq!(e[(1, 0)], int(1));
        assert_eq!(rank(&e), 1);
        assert!(build_nilpotent(&part("1,1")).is_zero());
        let e = build_nilpotent(&part("3,2"));
        assert_eq!(rank(&e), 3);
        assert!(!e.pow(2).is_zero());
        assert!(e.pow(3).is_zero());
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible(&part("3,3"), AlgebraKind::Symplectic));
        assert!(!admissible(&part("3"), AlgebraKind::Symplectic));
        assert!(admissible(&part("5,3"), AlgebraKind::Orthogonal));
        assert!(!admissible(&part("4,2"), AlgebraKind::Orthogonal));
        assert!(!admissible(&part("2,1"), AlgebraKind::Symplectic));
        assert!(admissible(&part("2,1"), AlgebraKind::GeneralLinear));
        let msg = admissibility_violation(&part("3,1"), AlgebraKind::Symplectic).unwrap();
        assert!(msg.contains("odd part 3"));
    }

    #[test]
    fn model_examples() {
        let m = build_model(&part("2"), AlgebraKind::Symplectic).unwrap();
        let j = m.form.as_ref().unwrap();
        assert_eq!(j.transpose(), j.scale(&int(-1)));
        m.check_invariants().unwrap();

        let m = build_model(&part("3"), AlgebraKind::Orthogonal).unwrap();
        assert_eq!(m.form.as_ref().unwrap()[(0, 2)], int(1));
        m.check_invariants().unwrap();

        let m = build_model(&part("3,3"), AlgebraKind::Symplectic).unwrap();
        assert_eq!(rank(m.form.as_ref().unwrap()), 6);
        assert_eq!(m.pairing.partner, [1, 0]);
        m.check_invariants().unwrap();

        assert!(matches!(
            build_model(&part("3"), AlgebraKind::Symplectic),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn every_small_model_is_valid_for_both_sign_choices() {
        for n in 1..=9 {
            for p in Partition::all(n) {
                for kind in [
                    AlgebraKind::GeneralLinear,
                    AlgebraKind::Symplectic,
                    AlgebraKind::Orthogonal,
                ] {
                    for signs in [FormSigns::Standard, FormSigns::Flipped] {
                        if let Ok(m) = build_model_with_signs(&p, kind, signs) {
                            m.check_invariants()
                                .unwrap_or_else(|e| panic!("{kind} {p} {signs:?}: {e}"));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn signed_enumeration() {
        let m = build_model_with_signs(
            &part("5,4,4,2,2"),
            AlgebraKind::Orthogonal,
            FormSigns::Flipped,
        )
        .unwrap();
        assert_eq!(m.signed_labels.as_deref(), Some(&[0, 1, -1, 2, -2][..]));
        m.check_invariants().unwrap();
        assert!(build_model(&part("5,3"), AlgebraKind::Orthogonal)
            .unwrap()
            .signed_labels
            .is_none());
    }
}
