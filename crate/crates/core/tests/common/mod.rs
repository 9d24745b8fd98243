//! Test-only oracles and generators, independent of the library's own routes.
#![allow(dead_code)]

use groot::complex::IotaComplex;
use groot::{BrieskornTriple, GradedRoot};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pairwise coprime `a1 < a2 < a3`, all `>= 2`, with `a1 a2 a3 <= max_product`.
pub fn random_triple(rng: &mut ChaCha8Rng, max_product: u64) -> BrieskornTriple {
    loop {
        let a1_max = (max_product as f64).cbrt() as u64;
        let a1 = rng.gen_range(2..=a1_max.max(2));
        let a2_max = ((max_product / a1) as f64).sqrt() as u64;
        if a2_max <= a1 {
            continue;
        }
        let a2 = rng.gen_range(a1 + 1..=a2_max);
        let a3_max = max_product / (a1 * a2);
        if a3_max <= a2 {
            continue;
        }
        let a3 = rng.gen_range(a2 + 1..=a3_max);
        if a1.gcd(&a2) == 1 && a1.gcd(&a3) == 1 && a2.gcd(&a3) == 1 {
            return BrieskornTriple::new(a1, a2, a3).unwrap();
        }
    }
}

pub fn random_triples(seed: u64, count: usize, max_product: u64) -> Vec<BrieskornTriple> {
    let mut r = rng(seed);
    (0..count).map(|_| random_triple(&mut r, max_product)).collect()
}

/// Random symmetric zigzag with `k` leaves.
pub fn random_symmetric_root(rng: &mut ChaCha8Rng, k: usize) -> GradedRoot {
    let half = k / 2;
    let left: Vec<i64> = (0..half).map(|_| 2 * rng.gen_range(-5..=5)).collect();
    let mut leaves = left.clone();
    if k % 2 == 1 {
        leaves.push(2 * rng.gen_range(-5..=5));
    }
    leaves.extend(left.iter().rev());
    let n_angles = k - 1;
    let mut drops = vec![0i64; n_angles];
    for i in 0..n_angles {
        let mirror = n_angles - 1 - i;
        if mirror < i {
            drops[i] = drops[mirror];
        } else {
            drops[i] = rng.gen_range(1..=4);
        }
    }
    let angles = (0..n_angles)
        .map(|i| leaves[i].min(leaves[i + 1]) - 2 * drops[i])
        .collect();
    GradedRoot::new(None, leaves, angles).unwrap()
}

/// Leading principal minors of an integer matrix by fraction-free elimination.
pub fn leading_minors(q: &[Vec<i64>]) -> Vec<BigInt> {
    let n = q.len();
    let mut m: Vec<Vec<BigInt>> = q
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            // the remaining minors are not needed once one vanishes
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &pivot - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Sylvester: `(-1)^k D_k > 0` for every `k`.
pub fn negative_definite_by_minors(q: &[Vec<i64>]) -> bool {
    let minors = leading_minors(q);
    minors.len() == q.len()
        && minors.iter().enumerate().all(|(k, d)| {
            if k % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
}

/// Rank over Z/2 of a dense bit matrix.
fn rank_gf2(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len() * 64);
    for col in 0..width {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `F`-dimensions of `H_g(C/U^m)` for every grading `g` in `[lo, hi]`, by
/// plain linear algebra on the finite-dimensional truncated complex.
pub fn truncated_homology_dims(c: &IotaComplex, m: u32, lo: i64, hi: i64) -> Vec<(i64, usize)> {
    let gens = c.generators();
    // basis of degree g: pairs (generator, j) with gr - 2j = g, 0 <= j < m
    let basis = |g: i64| -> Vec<(usize, u32)> {
        gens.iter()
            .enumerate()
            .filter_map(|(i, x)| {
                let diff = x.grading - g;
                (diff >= 0 && diff % 2 == 0 && diff / 2 < i64::from(m)).then(|| (i, (diff / 2) as u32))
            })
            .collect()
    };
    let rank_of_d = |g: i64| -> usize {
        let src = basis(g);
        let dst = basis(g - 1);
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let words = dst.len().div_ceil(64);
        let rows: Vec<Vec<u64>> = src
            .iter()
            .map(|&(y, j)| {
                let mut row = vec![0u64; words];
                for t in &c.differential()[y] {
                    let power = j + t.power;
                    if power >= m {
                        continue;
                    }
                    let col = dst
                        .iter()
                        .position(|&(x, k)| x == t.target && k == power)
                        .expect("target lies in the degree below");
                    row[col / 64] ^= 1 << (col % 64);
                }
                row
            })
            .collect();
        rank_gf2(rows)
    };
    (lo..=hi)
        .map(|g| {
            let dim = basis(g).len();
            (g, dim - rank_of_d(g) - rank_of_d(g + 1))
        })
        .collect()
}

/// Truncation level and grading window used with [`truncated_homology_dims`].
pub fn truncation_window(c: &IotaComplex) -> (u32, i64, i64) {
    let max = c.generators().iter().map(|g| g.grading).max().unwrap();
    let min = c.generators().iter().map(|g| g.grading).min().unwrap();
    let m = ((max - min) / 2 + 2) as u32;
    (m, min - 2 * i64::from(m), max)
}
