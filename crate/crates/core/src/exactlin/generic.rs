use alloc::vec::Vec;

use rand::Rng;

use super::{random_point, rank, Mat, MultiPoly, Scalar};

/// Groups rows and columns into the connected components of the bipartite
/// graph of nonzero entries. Components without a nonzero entry are
/// dropped. Returns `(rows, cols)` per component, both ascending.
pub fn connected_blocks<T>(
    m: &Mat<T>,
    nonzero: impl Fn(&T) -> bool,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (r, c) = (m.rows(), m.cols());
    let mut parent: Vec<usize> = (0..r + c).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = alloc::vec![false; r + c];
    for i in 0..r {
        for j in 0..c {
            if nonzero(&m[(i, j)]) {
                touched[i] = true;
                touched[r + j] = true;
                let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for x in 0..r + c {
        if !touched[x] {
            continue;
        }
        let root = find(&mut parent, x);
        let pos = match blocks.iter().position(|b| b.0 == root) {
            Some(p) => p,
            None => {
                blocks.push((root, Vec::new(), Vec::new()));
                blocks.len() - 1
            }
        };
        if x < r {
            blocks[pos].1.push(x);
        } else {
            blocks[pos].2.push(x - r);
        }
    }
    blocks
        .into_iter()
        .map(|(_, rows, cols)| (rows, cols))
        .collect()
}

/// Rank over the field of rational functions in the entries' variables.
///
/// The matrix is split into independent blocks first; each block is
/// reduced by fraction-free elimination with full pivot search, always
/// pivoting on the entry with the fewest terms (then lowest degree). After
/// `k` steps every live entry is a `(k+1)`-minor of the block, so all
/// divisions are exact.
pub fn generic_rank(m: &Mat<MultiPoly>) -> usize {
    let r: usize = connected_blocks(m, |p| !p.is_zero())
        .into_iter()
        .map(|(rows, cols)| bareiss_rank(m.select(&rows, &cols)))
        .sum();
    #[cfg(debug_assertions)]
    debug_cross_check(m, r);
    r
}

#[cfg(debug_assertions)]
fn debug_cross_check(m: &Mat<MultiPoly>, symbolic: usize) {
    use rand::SeedableRng;
    let Some(nvars) = m.row_iter().flatten().map(MultiPoly::nvars).next() else {
        return;
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..2 {
        let p = random_point(&mut rng, nvars);
        let r = rank(&m.map(|e| e.eval(&p)));
        debug_assert!(
            r <= symbolic,
            "evaluated rank {r} exceeds symbolic rank {symbolic}"
        );
    }
}

fn bareiss_rank(mut a: Mat<MultiPoly>) -> usize {
    let (nr, nc) = (a.rows(), a.cols());
    if nr == 0 || nc == 0 {
        return 0;
    }
    let nvars = a[(0, 0)].nvars();
    let mut live_rows: Vec<usize> = (0..nr).collect();
    let mut live_cols: Vec<usize> = (0..nc).collect();
    let mut prev = MultiPoly::constant(nvars, Scalar::from_integer(1.into()));
    let mut rank = 0;
    loop {
        let mut best: Option<((usize, u32), usize, usize)> = None;
        for (ri, &i) in live_rows.iter().enumerate() {
            for (ci, &j) in live_cols.iter().enumerate() {
                let e = &a[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let key = (e.num_terms(), e.total_degree());
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, ri, ci));
                }
            }
        }
        let Some((_, ri, ci)) = best else {
            break;
        };
        let pr = live_rows.swap_remove(ri);
        let pc = live_cols.swap_remove(ci);
        let pivot = a[(pr, pc)].clone();
        for &i in &live_rows {
            let f = a[(i, pc)].clone();
            for &j in &live_cols {
                let g = &a[(pr, j)];
                let cur = &a[(i, j)];
                if cur.is_zero() && (f.is_zero() || g.is_zero()) {
                    continue;
                }
                let mut num = &pivot * cur;
                if !f.is_zero() && !g.is_zero() {
                    num = &num - &(&f * g);
                }
                a[(i, j)] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination: inexact division");
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Largest rank of `m` evaluated at `samples` random integer points.
pub fn max_sampled_rank<R: Rng + ?Sized>(m: &Mat<MultiPoly>, rng: &mut R, samples: usize) -> usize {
    let Some(nvars) = m.row_iter().flatten().map(MultiPoly::nvars).next() else {
        return 0;
    };
    (0..samples)
        .map(|_| {
            let p = random_point(rng, nvars);
            rank(&m.map(|e| e.eval(&p)))
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use alloc::vec;
    use rand::SeedableRng;

    fn heisenberg_kirillov() -> Mat<MultiPoly> {
        // basis e, f, z with [e, f] = z; variables (a_e, a_f, a_z)
        let z = MultiPoly::var(3, 2);
        let zero = MultiPoly::zero(3);
        Mat::from_rows(
            vec![
                vec![zero.clone(), z.clone(), zero.clone()],
                vec![-&z, zero.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), zero],
            ],
            3,
        )
    }

    #[test]
    fn small_examples() {
        let x = MultiPoly::var(1, 0);
        let zero = MultiPoly::zero(1);
        let skew = Mat::from_rows(vec![vec![zero.clone(), x.clone()], vec![-&x, zero]], 2);
        assert_eq!(generic_rank(&skew), 2);
        let same = Mat::from_rows(vec![vec![x.clone(), x.clone()], vec![x.clone(), x]], 2);
        assert_eq!(generic_rank(&same), 1);
    }

    #[test]
    fn heisenberg_matches_sampling_oracle() {
        let m = heisenberg_kirillov();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // oracle frozen from 50 random points
        assert_eq!(max_sampled_rank(&m, &mut rng, 50), 2);
        assert_eq!(generic_rank(&m), 2);
    }

    #[test]
    fn dense_symmetric_cancellation() {
        // rows are x, y, x + y times the same vector: rank 1 despite no zeros
        let v = [MultiPoly::var(2, 0), MultiPoly::var(2, 1)];
        let s = &v[0] + &v[1];
        let w = [
            &v[0] + &MultiPoly::constant(2, int(1)),
            v[1].clone(),
            s.clone(),
        ];
        let m = Mat::from_fn(3, 3, |r, c| {
            let k = [&v[0], &v[1], &s][r];
            k * &w[c]
        });
        assert_eq!(generic_rank(&m), 1);
    }

    #[test]
    fn blocks_are_independent() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let z = MultiPoly::zero(2);
        let m = Mat::from_rows(
            vec![
                vec![x.clone(), z.clone(), z.clone()],
                vec![z.clone(), y.clone(), y.clone()],
                vec![z.clone(), x.clone(), x],
            ],
            3,
        );
        let blocks = connected_blocks(&m, |p| !p.is_zero());
        assert_eq!(blocks.len(), 2);
        assert_eq!(generic_rank(&m), 2);
    }
}
