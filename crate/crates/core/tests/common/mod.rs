#![allow(dead_code)]

use nilext::cohomology::{cocycle_space, pairs};
use nilext::exactla::{rat, Rational};
use nilext::extensions::central_extend;
use nilext::liecore::LieAlgebra;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random nilpotent Lie algebra of the given dimension, grown from an
/// abelian algebra of dimension `start` by random central extensions.
pub fn random_law(seed: u64, start: usize, dim: usize) -> LieAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = LieAlgebra::abelian(start);
    while g.dim() < dim {
        let basis = cocycle_space(&g, &pairs(g.dim()));
        let mut c = nilext::cohomology::TwoCochain::zero(g.dim());
        for b in &basis {
            let a = rat(rng.gen_range(-2..=2));
            if a.is_zero() {
                continue;
            }
            for (&(i, j), x) in &b.coeffs {
                let v = c.get(i, j) + &a * x;
                c.set(i, j, v);
            }
        }
        g = central_extend(&g, &c).expect("cocycles extend");
    }
    g
}

/// Rank by plain Gaussian elimination on dense rational rows.
pub fn brute_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let v = &f * &rows[rank][k];
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// dim H² by brute force: all C(n,2) unknowns c_ij, one equation per triple
/// from the cocycle identity, minus the rank of the coboundaries θ∘[·,·].
pub fn brute_h2(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let unknown = |a: usize, b: usize| -> (usize, i32) {
        let (i, j, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        (i * n - i * (i + 1) / 2 + (j - i - 1), s)
    };
    let m = n * (n - 1) / 2;
    let mut z = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut row = vec![Rational::zero(); m];
                // c([x_i,x_j],x_k) + c([x_j,x_k],x_i) + c([x_k,x_i],x_j)
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (p, x) in g.bracket_basis(a, b) {
                        if *p == c {
                            continue;
                        }
                        let (u, s) = unknown(*p, c);
                        row[u] += x * rat(s as i64);
                    }
                }
                z.push(row);
            }
        }
    }
    let mut b = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for j in i + 1..n {
            for (p, x) in g.bracket_basis(i, j) {
                b[*p][unknown(i, j).0] += x;
            }
        }
    }
    let cocycles = m - if z.is_empty() { 0 } else { brute_rank(z) };
    cocycles - brute_rank(b)
}
