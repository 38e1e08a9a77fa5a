//! Index, stabilisers of covectors, and kernels of restricted 2-forms.
//!
//! The index is `dim g` minus the generic rank of the Kirillov matrix
//! `B_{uv} = Σ_w c_{uv}^w x_w`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{
    generic_rank, kernel_basis, random_point, rank, Coordinates, Mat, MultiPoly, Scalar,
};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::{Error, Result};

/// A linear functional, as its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covector {
    pub coords: Vec<Scalar>,
}

impl Covector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Covector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Covector::new(vec![Scalar::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        assert_eq!(v.len(), self.dim());
        self.coords
            .iter()
            .zip(v)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Values on the vectors given as rows, i.e. the restriction to their span
    /// written over that basis.
    pub fn restrict(&self, rows: &Mat<Scalar>) -> Covector {
        Covector::new(rows.row_iter().map(|r| self.eval(r)).collect())
    }

    pub fn vanishes_on(&self, rows: &Mat<Scalar>) -> bool {
        rows.row_iter().all(|r| self.eval(r).is_zero())
    }
}

pub fn kirillov_matrix(g: &LieAlgebra) -> Mat<MultiPoly> {
    let dim = g.dim();
    Mat::from_fn(dim, dim, |u, v| {
        let mut coeffs = vec![Scalar::zero(); dim];
        for (w, c) in g.bracket_basis(u, v) {
            coeffs[*w] = c.clone();
        }
        MultiPoly::linear(&coeffs)
    })
}

/// `B(α)_{uv} = α([x_u, x_v])`.
pub fn kirillov_at(g: &LieAlgebra, alpha: &Covector) -> Mat<Scalar> {
    let dim = g.dim();
    Mat::from_fn(dim, dim, |u, v| {
        g.bracket_basis(u, v)
            .iter()
            .fold(Scalar::zero(), |acc, (w, c)| acc + c * &alpha.coords[*w])
    })
}

/// How the generic rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    /// Elimination on the full Kirillov matrix.
    Full,
    /// Elimination on covectors supported on the torus centraliser `c`,
    /// certified at a sample point.
    Slice { slice_dim: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexResult {
    pub index: usize,
    pub generic_rank: usize,
    pub method: RankMethod,
}

const CERTIFICATE_SEED: u64 = 0x05ee_d0f5_110e;
const CERTIFICATE_TRIES: usize = 3;

/// Generic rank of the Kirillov matrix through a torus slice.
///
/// For commuting semisimple `t_1..t_r`, `g = c ⊕ m` with `c` their common
/// centraliser and `m` the sum of the images of their `ad`. Covectors
/// vanishing on `m` form a slice. If at one such covector `y0` the
/// stabiliser meets `m` trivially, the coadjoint orbit map from a
/// neighbourhood of `y0` in the slice is a submersion, so the slice meets
/// the open set of generic covectors and the generic rank over the slice
/// equals the generic rank over `g*`.
///
/// Every nonempty subset of the torus gives a valid slice; the smallest
/// certified one is used. Candidates are tried by increasing `dim c`, so
/// the first certificate wins.
fn slice_rank(g: &LieAlgebra) -> Option<(usize, usize)> {
    let torus = g.torus();
    if torus.is_empty() || torus.len() > 8 {
        return None;
    }
    let mut candidates: Vec<Candidate> = (1u32..(1 << torus.len()))
        .filter_map(|mask| {
            let subset: Vec<Vec<Scalar>> = (0..torus.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| torus[i].clone())
                .collect();
            Candidate::new(g, &subset)
        })
        .collect();
    candidates.sort_by_key(|c| c.cd);
    let slice = candidates
        .into_iter()
        .find(|c| c.certify(g))?
        .into_slice(g)?;
    let dim = g.dim();
    let poly = Mat::from_fn(dim, dim, |a, b| MultiPoly::linear(&slice.entry(a, b)));
    Some((generic_rank(&poly), slice.cd))
}

/// A decomposition `g = c ⊕ m` not yet certified.
struct Candidate {
    cd: usize,
    adapted: Coordinates,
}

impl Candidate {
    fn new(g: &LieAlgebra, torus: &[Vec<Scalar>]) -> Option<Candidate> {
        let dim = g.dim();
        let c = g.centralizer_of(&Mat::from_rows(torus.to_vec(), dim));
        let images: Vec<Vec<Scalar>> = torus
            .iter()
            .flat_map(|t| g.ad_matrix(t).transpose().into_rows())
            .collect();
        let m = Subalgebra::from_vectors(g, images);
        let cd = c.dim();
        if cd + m.dim() != dim || cd == dim {
            return None;
        }
        let adapted = Coordinates::new(c.rows().stack(m.rows()))?;
        Some(Candidate { cd, adapted })
    }

    /// At a random `y0` on `c`, extended by zero on `m`, the Kirillov
    /// matrix has full rank on the `m` directions.
    fn certify(&self, g: &LieAlgebra) -> bool {
        let dim = g.dim();
        let p = self.adapted.basis();
        let mut rng = ChaCha8Rng::seed_from_u64(CERTIFICATE_SEED);
        (0..CERTIFICATE_TRIES).any(|_| {
            let y0 = random_point(&mut rng, self.cd);
            let alpha = Covector::new(
                (0..dim)
                    .map(|v| {
                        let coords = self
                            .adapted
                            .coords(&g.unit(v))
                            .expect("adapted basis spans g");
                        coords[..self.cd]
                            .iter()
                            .zip(&y0)
                            .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
                    })
                    .collect(),
            );
            let b = kirillov_at(g, &alpha);
            let m_rows: Vec<Vec<Scalar>> = (self.cd..dim).map(|a| b.mul_vec(p.row(a))).collect();
            rank(&Mat::from_rows(m_rows, dim)) == dim - self.cd
        })
    }

    fn into_slice(self, g: &LieAlgebra) -> Option<Slice> {
        let dim = g.dim();
        let p = self.adapted.basis();
        let mut structure = vec![vec![Vec::<Scalar>::new(); dim]; dim];
        for a in 0..dim {
            for b in a + 1..dim {
                let coords = self.adapted.coords(&g.bracket(p.row(a), p.row(b)))?;
                structure[a][b] = coords[..self.cd].to_vec();
            }
        }
        Some(Slice {
            cd: self.cd,
            structure,
        })
    }
}

/// Kirillov matrix restricted to covectors supported on `c`, written in the
/// basis `c ⊕ m`; `structure[a][b]` holds the `c`-coordinates of `[p_a, p_b]`.
struct Slice {
    cd: usize,
    structure: Vec<Vec<Vec<Scalar>>>,
}

impl Slice {
    fn entry(&self, a: usize, b: usize) -> Vec<Scalar> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => self.structure[a][b].clone(),
            core::cmp::Ordering::Greater => self.structure[b][a].iter().map(|x| -x).collect(),
            core::cmp::Ordering::Equal => vec![Scalar::zero(); self.cd],
        }
    }
}

pub fn index_detailed(g: &LieAlgebra) -> IndexResult {
    let dim = g.dim();
    let (r, method) = match slice_rank(g) {
        Some((r, slice_dim)) => (r, RankMethod::Slice { slice_dim }),
        None => (generic_rank(&kirillov_matrix(g)), RankMethod::Full),
    };
    IndexResult {
        index: dim - r,
        generic_rank: r,
        method,
    }
}

/// `ind g = dim g - generic rank of the Kirillov matrix`.
pub fn index(g: &LieAlgebra) -> usize {
    index_detailed(g).index
}

/// Generic rank by elimination on the full Kirillov matrix, ignoring any
/// torus.
pub fn kirillov_generic_rank(g: &LieAlgebra) -> usize {
    generic_rank(&kirillov_matrix(g))
}

/// Largest rank of `B(α)` over `samples` random covectors.
pub fn sampled_max_rank<R: rand::Rng + ?Sized>(
    g: &LieAlgebra,
    rng: &mut R,
    samples: usize,
) -> usize {
    (0..samples)
        .map(|_| rank(&kirillov_at(g, &Covector::new(random_point(rng, g.dim())))))
        .max()
        .unwrap_or(0)
}

/// `g_α = {x : α([x, g]) = 0}`, checked to be a subalgebra.
pub fn stabilizer<'a>(g: &'a LieAlgebra, alpha: &Covector) -> Result<Subalgebra<'a>> {
    if alpha.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: alpha.dim(),
        });
    }
    let b = kirillov_at(g, alpha);
    let s = Subalgebra::span(g, &Mat::from_rows(kernel_basis(&b), g.dim()));
    if !s.is_closed() {
        return Err(Error::NotClosed("stabiliser is not bracket-closed".into()));
    }
    Ok(s)
}

/// Kernel of `γ̂(ξ, η) = γ([ξ, η])` on `h1 × h1`, as vectors of the parent.
///
/// `h0 ⊕ h1` must be graded: `[h0, h1] ⊆ h1`, `[h1, h1] ⊆ h0`, and `γ`
/// must vanish on `h1`.
pub fn restricted_form_kernel_basis(
    gamma: &Covector,
    h0: &Subalgebra<'_>,
    h1: &Subalgebra<'_>,
) -> Result<Vec<Vec<Scalar>>> {
    if !h1.contains_space(&h0.bracket_span(h1)) {
        return Err(Error::IncompatibleDecomposition(
            "[h0, h1] is not inside h1".into(),
        ));
    }
    if !h0.contains_space(&h1.bracket_span(h1)) {
        return Err(Error::IncompatibleDecomposition(
            "[h1, h1] is not inside h0".into(),
        ));
    }
    if !gamma.vanishes_on(h1.rows()) {
        return Err(Error::IncompatibleDecomposition(
            "γ does not vanish on h1".into(),
        ));
    }
    let g = h1.parent();
    let rows = h1.rows();
    let k = rows.rows();
    let form = Mat::from_fn(k, k, |a, b| {
        gamma.eval(&g.bracket(rows.row(a), rows.row(b)))
    });
    Ok(kernel_basis(&form)
        .into_iter()
        .map(|c| {
            let mut v = vec![Scalar::zero(); g.dim()];
            for (ci, r) in c.iter().zip(rows.row_iter()) {
                for (o, x) in v.iter_mut().zip(r) {
                    *o += ci * x;
                }
            }
            v
        })
        .collect())
}

pub fn restricted_form_kernel(
    gamma: &Covector,
    h0: &Subalgebra<'_>,
    h1: &Subalgebra<'_>,
) -> Result<usize> {
    restricted_form_kernel_basis(gamma, h0, h1).map(|v| v.len())
}

/// `ind sub >= ind g`.
pub fn vinberg_check(g: &LieAlgebra, sub: &LieAlgebra) -> bool {
    index(sub) >= index(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::{sigma_split, GlCentralizer};
    use crate::exactlin::int;
    use crate::jordan::{build_model, AlgebraKind, Partition};
    use alloc::format;
    use alloc::string::String;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn abelian_and_heisenberg() {
        let ab = LieAlgebra::from_fn("ab", labels(4), |_, _| vec![int(0); 4]);
        assert_eq!(index(&ab), 4);
        let heis = LieAlgebra::from_fn("heis", labels(3), |u, v| {
            if (u, v) == (0, 1) {
                vec![int(0), int(0), int(1)]
            } else {
                vec![int(0); 3]
            }
        });
        assert_eq!(index(&heis), 1);
        let b = kirillov_matrix(&heis);
        for u in 0..3 {
            for v in 0..3 {
                assert!((&b[(u, v)] + &b[(v, u)]).is_zero());
            }
        }
        let zero = stabilizer(&heis, &Covector::zero(3)).unwrap();
        assert_eq!(zero.dim(), 3);
    }

    #[test]
    fn gl_centralizer_indices() {
        for (s, n) in [
            ("2,1", 3),
            ("3,2", 5),
            ("3,2,1", 6),
            ("1,1,1", 3),
            ("2,2", 4),
        ] {
            let gl = GlCentralizer::new(&part(s));
            let r = index_detailed(&gl.algebra);
            assert_eq!(r.index, n, "{s}");
            assert!(matches!(r.method, RankMethod::Slice { .. }));
            assert_eq!(gl.dim() - kirillov_generic_rank(&gl.algebra), n, "{s}");
        }
    }

    #[test]
    fn index_agrees_with_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in ["3,2", "4,2,1", "2,2,1"] {
            let gl = GlCentralizer::new(&part(s));
            let r = index_detailed(&gl.algebra);
            assert_eq!(r.generic_rank, sampled_max_rank(&gl.algebra, &mut rng, 20));
        }
    }

    #[test]
    fn random_stabilizer_reaches_index() {
        let gl = GlCentralizer::new(&part("3,2"));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let dims: Vec<usize> = (0..20)
            .map(|_| {
                stabilizer(
                    &gl.algebra,
                    &Covector::new(random_point(&mut rng, gl.dim())),
                )
                .unwrap()
                .dim()
            })
            .collect();
        assert!(dims.iter().all(|&d| d >= 5));
        assert!(dims.contains(&5));
    }

    #[test]
    fn so_example_index() {
        let m = build_model(&part("5,3"), AlgebraKind::Orthogonal).unwrap();
        let s = sigma_split(&m).unwrap();
        assert_eq!(index(&s.z), 4);
        assert_eq!(s.z.dim() - kirillov_generic_rank(&s.z), 4);
    }

    #[test]
    fn vinberg_examples() {
        let gl = GlCentralizer::new(&part("3,1"));
        assert!(vinberg_check(&gl.algebra, &gl.algebra));
        for s in ["2,2", "4"] {
            let m = build_model(&part(s), AlgebraKind::Symplectic).unwrap();
            assert_eq!(index(&sigma_split(&m).unwrap().z), 2, "{s}");
        }
    }

    #[test]
    fn restricted_form_errors_and_zero_form() {
        let gl = GlCentralizer::new(&part("2,1"));
        let g = &gl.algebra;
        let whole = Subalgebra::whole(g);
        let zero = Subalgebra::span(g, &Mat::zeros(0, g.dim()));
        // h0 = g, h1 = 0 is graded; γ = 0 gives kernel dim h1 = 0
        assert_eq!(
            restricted_form_kernel(&Covector::zero(g.dim()), &whole, &zero).unwrap(),
            0
        );
        assert!(matches!(
            restricted_form_kernel(&Covector::zero(g.dim()), &zero, &whole),
            Err(Error::IncompatibleDecomposition(_))
        ));
    }
}
