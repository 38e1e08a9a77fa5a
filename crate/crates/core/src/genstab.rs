//! Generic stabilisers of coadjoint actions.
//!
//! A stabiliser `h = g_x` is generic exactly when `[h, g] ∩ h = 0`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::centralizer::{sigma_split, BasisElt, GlCentralizer, SigmaSplit};
use crate::covectors::block_preserving_span;
use crate::exactlin::{int, random_point, Mat, Scalar};
use crate::indexcalc::{index, stabilizer, Covector};
use crate::jordan::{build_model, AlgebraKind, Partition};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenStabReport {
    pub algebra: String,
    pub algebra_dim: usize,
    pub candidate_dim: usize,
    /// `dim span [h, g]`.
    pub bracket_dim: usize,
    pub criterion_holds: bool,
    /// A nonzero element of `[h, g] ∩ h`, over the basis of `g`.
    pub witness: Option<Vec<Scalar>>,
}

pub fn is_generic_stabilizer(g: &LieAlgebra, h: &Subalgebra<'_>) -> Result<GenStabReport> {
    if !h.is_closed() {
        return Err(Error::NotClosed("candidate is not a subalgebra".into()));
    }
    let brackets = h.bracket_span(&Subalgebra::whole(g));
    let meet = brackets.intersect(h);
    Ok(GenStabReport {
        algebra: g.name().into(),
        algebra_dim: g.dim(),
        candidate_dim: h.dim(),
        bracket_dim: brackets.dim(),
        criterion_holds: meet.is_zero(),
        witness: (!meet.is_zero()).then(|| meet.rows().row(0).to_vec()),
    })
}

/// `z_gl(e) = h ⊕ m` with `h` spanned by `ξ_i^{i,s}` and `m` by `ξ_i^{j,s}`,
/// `i ≠ j`.
pub fn hm_decomposition(gl: &GlCentralizer) -> (Subalgebra<'_>, Subalgebra<'_>) {
    let h = block_preserving_span(gl);
    let vs = gl
        .basis
        .iter()
        .enumerate()
        .filter(|(_, x)| x.i != x.j)
        .map(|(u, _)| gl.algebra.unit(u))
        .collect();
    (h, Subalgebra::from_vectors(&gl.algebra, vs))
}

/// `[ξ_i^{i,s}, ξ_j^{t,b}]` as predicted for the matrix commutator.
pub fn predicted_h_m_bracket(x: &BasisElt, y: &BasisElt, p: &Partition) -> Option<(BasisElt, i64)> {
    debug_assert!(x.i == x.j && y.i != y.j);
    let s = x.s + y.s;
    if y.i == x.i && s <= p.d(y.j) {
        Some((BasisElt::new(x.i, y.j, s), -1))
    } else if y.j == x.i && s <= p.d(x.i) {
        Some((BasisElt::new(y.i, x.i, s), 1))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HmReport {
    pub h_dim: usize,
    pub m_dim: usize,
    pub direct_sum: bool,
    pub h_m_inside_m: bool,
    pub table_matches: bool,
}

pub fn check_hm(gl: &GlCentralizer) -> HmReport {
    let (h, m) = hm_decomposition(gl);
    let p = &gl.partition;
    let mut table_matches = true;
    for (u, x) in gl.basis.iter().enumerate().filter(|(_, x)| x.i == x.j) {
        for (v, y) in gl.basis.iter().enumerate().filter(|(_, y)| y.i != y.j) {
            let mut want = vec![Scalar::zero(); gl.dim()];
            if let Some((z, sign)) = predicted_h_m_bracket(x, y, p) {
                want[gl.index_of(&z).expect("valid")] = int(sign);
            }
            let got = gl.algebra.bracket(&gl.algebra.unit(u), &gl.algebra.unit(v));
            table_matches &= got == want;
        }
    }
    HmReport {
        h_dim: h.dim(),
        m_dim: m.dim(),
        direct_sum: h.dim() + m.dim() == gl.dim() && h.intersect(&m).is_zero(),
        h_m_inside_m: m.contains_space(&h.bracket_span(&m)),
        table_matches,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusReport {
    pub t_dim: usize,
    pub h_dim: usize,
    pub centralizer_of_t_is_h: bool,
    pub h_self_normalizing: bool,
    /// `[ξ_i^{j,s}, Σ t_l ξ_l^{l,0}] = (t_i - t_j) ξ_i^{j,s}` on every generator.
    pub weights_ok: bool,
}

pub fn torus_and_normalizer(gl: &GlCentralizer) -> TorusReport {
    let p = &gl.partition;
    let g = &gl.algebra;
    let t_vecs: Vec<Vec<Scalar>> = (0..p.k())
        .map(|i| g.unit(gl.index_of(&BasisElt::new(i, i, 0)).expect("valid")))
        .collect();
    let t = Mat::from_rows(t_vecs.clone(), gl.dim());
    let (h, _) = hm_decomposition(gl);
    let c = g.centralizer_of(&t);
    let nh = g.normalizer_of(h.rows());
    let weights: Vec<i64> = (1..=p.k() as i64).map(|l| l * l + 1).collect();
    let mut torus = vec![Scalar::zero(); gl.dim()];
    for (l, v) in t_vecs.iter().enumerate() {
        for (o, x) in torus.iter_mut().zip(v) {
            *o += int(weights[l]) * x;
        }
    }
    let weights_ok = gl.basis.iter().enumerate().all(|(u, x)| {
        let got = g.bracket(&g.unit(u), &torus);
        let want: Vec<Scalar> = g
            .unit(u)
            .iter()
            .map(|c| c * int(weights[x.i] - weights[x.j]))
            .collect();
        got == want
    });
    TorusReport {
        t_dim: Subalgebra::span(g, &t).dim(),
        h_dim: h.dim(),
        centralizer_of_t_is_h: c == h,
        h_self_normalizing: nh == h,
        weights_ok,
    }
}

/// Outcome of sampling regular covectors and testing their stabilisers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingReport {
    pub seed: u64,
    pub samples: usize,
    /// Samples that reached a regular covector within the retry budget.
    pub regular: usize,
    pub draws: usize,
    pub criterion_passes: usize,
}

const MAX_DRAWS_PER_SAMPLE: usize = 20;

/// For each sample `i`, draws covectors from the stream seeded by
/// `seed + i` until one is regular (stabiliser dimension = index), then
/// tests the criterion on its stabiliser.
pub fn sample_regular_stabilizers(
    g: &LieAlgebra,
    ind: usize,
    samples: usize,
    seed: u64,
) -> Result<SamplingReport> {
    let mut report = SamplingReport {
        seed,
        samples,
        regular: 0,
        draws: 0,
        criterion_passes: 0,
    };
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        for _ in 0..MAX_DRAWS_PER_SAMPLE {
            report.draws += 1;
            let alpha = Covector::new(random_point(&mut rng, g.dim()));
            let stab = stabilizer(g, &alpha)?;
            if stab.dim() == ind {
                report.regular += 1;
                if is_generic_stabilizer(g, &stab)?.criterion_holds {
                    report.criterion_passes += 1;
                }
                break;
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub algebra: String,
    pub partition: String,
    pub experimental: bool,
    pub dim_z: usize,
    pub index: usize,
    pub center_dim: usize,
    pub phi2: String,
    pub phi3: String,
    pub phi2_bracket_dim: usize,
    pub phi2_centralizer_dim: usize,
    pub phi2_centralizer_normal: bool,
    pub phi2_centralizer_central: bool,
    pub criterion: GenStabReport,
    pub witness: Option<String>,
    pub witness_in_center: bool,
    pub sampling: SamplingReport,
    /// Exact facts, each compared with its expected value.
    pub checks: Vec<(String, bool)>,
}

impl CounterexampleReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn z_vector(split: &SigmaSplit, terms: &[(BasisElt, i64)]) -> Result<Vec<Scalar>> {
    let mut v = vec![Scalar::zero(); split.gl.dim()];
    for (x, c) in terms {
        v[split.gl.index_of(x).ok_or(Error::NotInCentralizer)?] = int(*c);
    }
    split.restrict_vector(&v).ok_or(Error::NotInCentralizer)
}

/// The orthogonal nilpotent with blocks `5, 3` (plus optional trivial
/// blocks). Block 1 is the 5-dimensional one, so `e^3 = ξ_1^{1,3}`,
/// `φ_3 = ξ_2^{1,4} - ξ_1^{2,2}` and `φ_2 = ξ_2^{1,3} + ξ_1^{2,1}`.
pub fn counterexample_report(
    p: &Partition,
    samples: usize,
    seed: u64,
) -> Result<CounterexampleReport> {
    let model = build_model(p, AlgebraKind::Orthogonal)?;
    if p.sizes().get(..2) != Some(&[5, 3][..]) {
        return Err(Error::CaseMismatch(format!(
            "{p} does not start with blocks 5, 3"
        )));
    }
    let experimental = p.sizes() != [5, 3];
    let split = sigma_split(&model)?;
    let z = &split.z;
    let e = split
        .restrict_vector(&split.gl.e_vector())
        .ok_or(Error::NotInCentralizer)?;
    let e3 = z_vector(&split, &[(BasisElt::new(0, 0, 3), 1)])?;
    let phi3 = z_vector(
        &split,
        &[(BasisElt::new(1, 0, 4), 1), (BasisElt::new(0, 1, 2), -1)],
    )?;
    let phi2 = z_vector(
        &split,
        &[(BasisElt::new(1, 0, 3), 1), (BasisElt::new(0, 1, 1), 1)],
    )?;
    let ind = index(z);
    let center = z.center();
    let span = |vs: &[&Vec<Scalar>]| {
        Subalgebra::from_vectors(z, vs.iter().map(|v| (*v).clone()).collect())
    };
    let phi2_line = span(&[&phi2]);
    let whole = Subalgebra::whole(z);
    let phi2_bracket = phi2_line.bracket_span(&whole);
    let f = z.centralizer_of(&Mat::from_rows(vec![phi2.clone()], z.dim()));
    let f_normal = f.contains_space(&f.bracket_span(&whole));
    let f_central = center.contains_space(&f);
    let criterion = is_generic_stabilizer(z, &f)?;
    let witness_in_center = criterion
        .witness
        .as_ref()
        .is_some_and(|w| center.contains(w));
    let witness = criterion
        .witness
        .as_ref()
        .map(|w| split.gl.describe(&split.lift(w)));
    let sampling = sample_regular_stabilizers(z, ind, samples, seed)?;

    let mut checks = Vec::new();
    if !experimental {
        checks.push((format!("dim z(e) = {} (expected 6)", z.dim()), z.dim() == 6));
        checks.push((format!("ind z(e) = {ind} (expected 4)"), ind == 4));
        checks.push((
            format!("center dim = {} (expected 3)", center.dim()),
            center.dim() == 3,
        ));
        checks.push((
            "center = span{e, e^3, phi_3}".into(),
            center == span(&[&e, &e3, &phi3]),
        ));
        checks.push((
            format!("dim [phi_2, z(e)] = {} (expected 2)", phi2_bracket.dim()),
            phi2_bracket.dim() == 2,
        ));
        checks.push((
            "[phi_2, z(e)] = span{e^3, phi_3}".into(),
            phi2_bracket == span(&[&e3, &phi3]),
        ));
        checks.push((
            "[phi_2, z(e)] inside the center".into(),
            center.contains_space(&phi2_bracket),
        ));
        checks.push((
            format!("dim z(e)_phi_2 = {} (expected 4)", f.dim()),
            f.dim() == 4,
        ));
        checks.push((
            "z(e)_phi_2 = span{e, e^3, phi_3, phi_2}".into(),
            f == span(&[&e, &e3, &phi3, &phi2]),
        ));
        checks.push(("z(e)_phi_2 is normal".into(), f_normal));
        checks.push(("z(e)_phi_2 is not central".into(), !f_central));
    }
    checks.push((
        "criterion fails for z(e)_phi_2".into(),
        !criterion.criterion_holds,
    ));
    checks.push(("witness lies in the center".into(), witness_in_center));

    Ok(CounterexampleReport {
        algebra: format!("so_{}", p.n()),
        partition: p.to_string(),
        experimental,
        dim_z: z.dim(),
        index: ind,
        center_dim: center.dim(),
        phi2: split.gl.describe(&split.lift(&phi2)),
        phi3: split.gl.describe(&split.lift(&phi3)),
        phi2_bracket_dim: phi2_bracket.dim(),
        phi2_centralizer_dim: f.dim(),
        phi2_centralizer_normal: f_normal,
        phi2_centralizer_central: f_central,
        criterion,
        witness,
        witness_in_center,
        sampling,
        checks,
    })
}

pub fn so8_counterexample(samples: usize, seed: u64) -> Result<CounterexampleReport> {
    counterexample_report(&Partition::new(vec![5, 3])?, samples, seed)
}

/// Same computation for `so_9` and blocks `5, 3, 1`; only the criterion
/// facts are checked.
pub fn so9_counterexample(samples: usize, seed: u64) -> Result<CounterexampleReport> {
    counterexample_report(&Partition::new(vec![5, 3, 1])?, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covectors::{alpha_gl, alpha_sp, Weights};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn gl_stabilizers_are_generic() {
        for s in ["3,2", "2,1", "3,3,1", "1,1,1"] {
            let gl = GlCentralizer::new(&part(s));
            let alpha = alpha_gl(&gl, &Weights::default_gl(&gl.partition)).unwrap();
            let h = stabilizer(&gl.algebra, &alpha).unwrap();
            let r = is_generic_stabilizer(&gl.algebra, &h).unwrap();
            assert!(r.criterion_holds, "{s}");
            assert!(r.witness.is_none());
        }
    }

    #[test]
    fn sp_stabilizer_is_generic() {
        let m = build_model(&part("3,3"), AlgebraKind::Symplectic).unwrap();
        let split = sigma_split(&m).unwrap();
        let alpha = alpha_sp(&m, &split.gl, &Weights::default_sp(&m)).unwrap();
        let h = stabilizer(&split.z, &alpha.restrict(&split.z_rows)).unwrap();
        assert!(is_generic_stabilizer(&split.z, &h).unwrap().criterion_holds);
    }

    #[test]
    fn non_subalgebra_is_rejected() {
        let gl = GlCentralizer::new(&part("1,1"));
        let g = &gl.algebra;
        // ξ_1^{2,0} and ξ_2^{1,0} do not close
        let h = Subalgebra::from_vectors(g, vec![g.unit(1), g.unit(2)]);
        assert!(matches!(
            is_generic_stabilizer(g, &h),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn hm_examples() {
        let r = check_hm(&GlCentralizer::new(&part("2,1")));
        assert_eq!((r.h_dim, r.m_dim), (3, 2));
        assert!(r.direct_sum && r.h_m_inside_m && r.table_matches);
        let r = check_hm(&GlCentralizer::new(&part("4")));
        assert_eq!(r.m_dim, 0);
        let gl = GlCentralizer::new(&part("1,1,1"));
        let (h, m) = hm_decomposition(&gl);
        assert_eq!((h.dim(), m.dim()), (3, 6));
        for n in 1..=6 {
            for p in Partition::all(n) {
                let r = check_hm(&GlCentralizer::new(&p));
                assert!(r.direct_sum && r.h_m_inside_m && r.table_matches, "{p}");
            }
        }
    }

    #[test]
    fn torus_examples() {
        let r = torus_and_normalizer(&GlCentralizer::new(&part("3,2")));
        assert_eq!(r.h_dim, 5);
        assert!(r.centralizer_of_t_is_h && r.h_self_normalizing && r.weights_ok);
        let r = torus_and_normalizer(&GlCentralizer::new(&part("4")));
        assert_eq!((r.t_dim, r.h_dim), (1, 4));
        assert!(r.h_self_normalizing);
        assert!(torus_and_normalizer(&GlCentralizer::new(&part("2,2"))).weights_ok);
    }

    #[test]
    fn witness_is_a_bracket_inside_h() {
        let m = build_model(&part("5,3"), AlgebraKind::Orthogonal).unwrap();
        let split = sigma_split(&m).unwrap();
        let z = &split.z;
        let phi2 = z_vector(
            &split,
            &[(BasisElt::new(1, 0, 3), 1), (BasisElt::new(0, 1, 1), 1)],
        )
        .unwrap();
        let f = z.centralizer_of(&Mat::from_rows(vec![phi2], z.dim()));
        let w = is_generic_stabilizer(z, &f).unwrap().witness.unwrap();
        assert!(w.iter().any(|c| !c.is_zero()));
        assert!(f.contains(&w));
        assert!(f.bracket_span(&Subalgebra::whole(z)).contains(&w));
    }

    #[test]
    fn generic_stabilizer_has_minimal_dimension() {
        let gl = GlCentralizer::new(&part("3,2"));
        let g = &gl.algebra;
        let alpha = alpha_gl(&gl, &Weights::default_gl(&gl.partition)).unwrap();
        let h = stabilizer(g, &alpha).unwrap();
        assert!(is_generic_stabilizer(g, &h).unwrap().criterion_holds);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dims: Vec<usize> = (0..20)
            .map(|_| {
                stabilizer(g, &Covector::new(random_point(&mut rng, g.dim())))
                    .unwrap()
                    .dim()
            })
            .collect();
        assert!(dims.iter().all(|&d| d >= h.dim()));
        assert!(dims.iter().filter(|&&d| d == h.dim()).count() > 10);
    }

    #[test]
    fn so8_facts() {
        let r = so8_counterexample(10, 7).unwrap();
        assert!(r.all_hold(), "{:?}", r.checks);
        assert_eq!(r.center_dim, 3);
        assert_eq!(r.phi2_centralizer_dim, 4);
        assert_eq!(r.phi3, "-xi_1^{2,2} + xi_2^{1,4}");
        assert_eq!(r.sampling.criterion_passes, 0);
        assert_eq!(r.sampling.regular, 10);
        assert_eq!(so8_counterexample(10, 7).unwrap(), r);
    }

    #[test]
    fn so9_variant_runs() {
        let r = so9_counterexample(5, 1).unwrap();
        assert!(r.experimental);
        assert_eq!(r.algebra, "so_9");
        assert_eq!(r.index, 4);
    }
}
