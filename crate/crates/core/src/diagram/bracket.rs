//! Kauffman bracket by brute-force state sum, and the knot determinant as
//! `|V(-1)|`. This is the independent check on the Goeritz computation, so it
//! shares nothing with it beyond the parsed diagram.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use super::{LaurentPoly, LinkDiagram};
use crate::error::{Error, Result};

/// 2^24 states is the practical ceiling for the brute-force sum.
pub const DEFAULT_CROSSING_LIMIT: usize = 24;

// Edge indices must fit the fixed union-find buffer.
const HARD_LIMIT: usize = 31;

/// Kauffman bracket `<D>` in the variable `A`, normalized so that a single
/// crossingless circle is 1.
///
/// At `X[a,b,c,d]` the A-smoothing joins `a-b` and `c-d`, the B-smoothing
/// joins `a-d` and `b-c`.
pub fn kauffman_bracket(d: &LinkDiagram, crossing_limit: usize) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    let limit = crossing_limit.min(HARD_LIMIT);
    if n + d.unknots() > limit {
        return Err(Error::CrossingLimit { crossings: n + d.unknots(), limit });
    }
    let mut index = BTreeMap::new();
    for x in d.crossings() {
        for &l in x {
            let next = index.len();
            index.entry(l).or_insert(next);
        }
    }
    let idx = |l: u32| index[&l] as u8;
    let smoothings: Vec<[[u8; 2]; 4]> = d
        .crossings()
        .iter()
        .map(|&[a, b, c, e]| {
            let (a, b, c, e) = (idx(a), idx(b), idx(c), idx(e));
            [[a, b], [c, e], [a, e], [b, c]]
        })
        .collect();
    let edges = index.len();

    // hist[a_count * width + loops]; a state has at most `edges` loops.
    let width = edges + 2;
    let hist = (0u64..1u64 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; (n + 1) * width],
            |mut hist, state| {
                let mut parent = [0u8; 64];
                for (i, p) in parent.iter_mut().enumerate().take(edges) {
                    *p = i as u8;
                }
                for (i, s) in smoothings.iter().enumerate() {
                    let pick = if state >> i & 1 == 1 { 0 } else { 2 };
                    union(&mut parent, s[pick][0], s[pick][1]);
                    union(&mut parent, s[pick + 1][0], s[pick + 1][1]);
                }
                let loops = (0..edges).filter(|&i| find(&mut parent, i as u8) == i as u8).count();
                let a_count = state.count_ones() as usize;
                hist[a_count * width + loops.min(width - 1)] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; (n + 1) * width],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );

    let delta = LaurentPoly::from_terms(&[(2, -1), (-2, -1)]);
    let mut delta_pows = vec![LaurentPoly::one()];
    let max_loops = width - 1 + d.unknots();
    for k in 1..=max_loops {
        delta_pows.push(&delta_pows[k - 1] * &delta);
    }
    let mut out = LaurentPoly::zero();
    for a_count in 0..=n {
        for loops in 0..width {
            let count = hist[a_count * width + loops];
            if count == 0 {
                continue;
            }
            // Crossingless diagrams have no smoothed edges: zero loops here.
            let total_loops = loops + d.unknots();
            let exp = a_count as i64 - (n - a_count) as i64;
            let term = &LaurentPoly::monomial(BigInt::from(count), exp) * &delta_pows[total_loops - 1];
            out = &out + &term;
        }
    }
    Ok(out)
}

fn find(p: &mut [u8; 64], x: u8) -> u8 {
    let mut x = x;
    while p[x as usize] != x {
        p[x as usize] = p[p[x as usize] as usize];
        x = p[x as usize];
    }
    x
}

fn union(p: &mut [u8; 64], a: u8, b: u8) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra as usize] = rb;
    }
}

/// Jones polynomial of a knot in the variable `t`, from the writhe-normalized
/// bracket with `A = t^(-1/4)`.
pub fn jones_polynomial(d: &LinkDiagram, crossing_limit: usize) -> Result<LaurentPoly> {
    if !d.is_knot() {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let bracket = kauffman_bracket(d, crossing_limit)?;
    let w = d.total_writhe();
    // (-A^3)^(-w) = (-1)^w A^(-3w)
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = &LaurentPoly::monomial(sign, -3 * w) * &bracket;
    normalized.substitute_power(-1).divide_exponents(4).ok_or_else(|| Error::NotAKnot(d.component_count()))
}

/// Knot determinant `|V(-1)|` via the state sum.
pub fn bracket_determinant(d: &LinkDiagram, crossing_limit: usize) -> Result<BigInt> {
    Ok(jones_polynomial(d, crossing_limit)?.eval_at_minus_one().abs())
}
