#![allow(dead_code)]

use krebes_core::diagram::{applicable_moves, apply_reidemeister, corpus, LinkDiagram, MoveSpec};
use krebes_core::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Two-component links used alongside the knot corpus.
pub const LINKS: &[(&str, &str)] =
    &[("hopf", "X[1,4,2,3] X[3,2,4,1]"), ("torus_2_4", "X[5,1,6,4] X[1,7,2,6] X[7,3,8,2] X[3,5,4,8]")];

pub fn base_diagrams() -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> = corpus::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    out.extend(LINKS.iter().map(|(n, pd)| (n.to_string(), LinkDiagram::parse_pd(pd).unwrap())));
    out
}

fn laplace(rows: &[Vec<BigInt>]) -> BigInt {
    match rows.len() {
        0 => BigInt::one(),
        1 => rows[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &rows[0][j] * laplace(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with {
        s.push(n - 1);
    }
    with.extend(subsets(n - 1, k));
    with
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_(k-1)`,
/// where `D_k` is the gcd of all k-by-k minors.
pub fn divisor_oracle(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.to_rows();
    let (r, c) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                g = g.gcd(&laplace(&sub));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), r.min(c) - out.len()));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn determinant_oracle(m: &IntMatrix) -> BigInt {
    laplace(&m.to_rows())
}

pub fn random_matrix<R: Rng>(rng: &mut R) -> IntMatrix {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=4);
    let zeros = rng.gen_bool(0.3);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| if zeros && rng.gen_bool(0.5) { 0 } else { rng.gen_range(-9..=9) }).collect())
        .collect();
    IntMatrix::from_rows(&data).unwrap()
}

/// Checks `u * m * v == diag(d)` with unimodular `u`, `v` and `d` a
/// nonnegative divisibility chain with zeros last.
pub fn certificate_holds(m: &IntMatrix, d: &[BigInt], u: &IntMatrix, v: &IntMatrix) -> Result<(), String> {
    let prod = u.mul(m).map_err(|e| e.to_string())?.mul(v).map_err(|e| e.to_string())?;
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let want = if i == j && i < d.len() { d[i].clone() } else { BigInt::zero() };
            if *prod.get(i, j) != want {
                return Err(format!("u*m*v differs from diag(d) at ({i},{j})"));
            }
        }
    }
    for x in [u, v] {
        if determinant_oracle(x).abs() != BigInt::one() {
            return Err("transform is not unimodular".into());
        }
    }
    for w in d.windows(2) {
        if w[0].is_negative() || (!w[0].is_zero() && !(&w[1] % &w[0]).is_zero()) || (w[0].is_zero() && !w[1].is_zero())
        {
            return Err(format!("diagonal {d:?} is not a divisibility chain"));
        }
    }
    Ok(())
}

/// Applies `len` random applicable moves, preferring deletions once the
/// diagram passes `max_crossings`.
pub fn random_walk<R: Rng>(d: &LinkDiagram, rng: &mut R, len: usize, max_crossings: usize) -> LinkDiagram {
    let mut cur = d.clone();
    for _ in 0..len {
        let mut moves = applicable_moves(&cur);
        if cur.crossing_count() >= max_crossings {
            moves.retain(|m| !matches!(m, MoveSpec::R1Insert { .. } | MoveSpec::R2Insert { .. }));
        }
        if moves.is_empty() {
            break;
        }
        let mv = &moves[rng.gen_range(0..moves.len())];
        cur = apply_reidemeister(&cur, mv).unwrap_or_else(|e| panic!("{mv:?} listed as applicable but failed: {e}"));
    }
    cur
}
