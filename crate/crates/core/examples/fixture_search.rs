//! Searches small open arcs for tangles whose odd closures all have
//! determinant divisible by 3 while some even closure does not.
//!
//! Usage: `cargo run --release --example fixture_search -- [max_crossings]`

use krebes_core::branched::{krebes_odd_cover, surgery_h1};
use krebes_core::tangle::{
    odd_determinants_divisible, scan_closures, AnnulusTangle, CoverTorsion, Parity, ScanConfig, TangleJson,
};
use num_bigint::BigInt;
use num_traits::Zero;

fn matchings(items: &[u32]) -> Vec<Vec<(u32, u32)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 1..items.len() {
        let mut rest = items[1..].to_vec();
        rest.remove(k - 1);
        for mut m in matchings(&rest) {
            m.insert(0, (items[0], items[k]));
            out.push(m);
        }
    }
    out
}

/// Arcs with edges `1..=2n+1` in order; crossing `k` pairs passes `i` and
/// `j` (a pass goes from edge `p` to `p + 1`). Bit `2k` picks the under pass,
/// bit `2k + 1` the handedness.
fn arcs(n: u32) -> impl Iterator<Item = Vec<[u32; 4]>> {
    let passes: Vec<u32> = (1..=2 * n).collect();
    matchings(&passes).into_iter().filter(|m| m.iter().all(|&(i, j)| j != i + 1)).flat_map(move |m| {
        (0..1u32 << (2 * n)).map(move |bits| {
            m.iter()
                .enumerate()
                .map(|(k, &(i, j))| {
                    let (u, o) = if bits >> (2 * k) & 1 == 0 { (i, j) } else { (j, i) };
                    if bits >> (2 * k + 1) & 1 == 0 {
                        [u, o, u + 1, o + 1]
                    } else {
                        [u, o + 1, u + 1, o]
                    }
                })
                .collect()
        })
    })
}

fn main() {
    let max_n: u32 = std::env::args().nth(1).map_or(4, |a| a.parse().expect("crossing count"));
    let odd = surgery_h1(&krebes_odd_cover()).unwrap();
    let three = BigInt::from(3);
    for n in 1..=max_n {
        for crossings in arcs(n) {
            let endpoints = [1, 2 * n + 1];
            let Ok((outer, faces)) = AnnulusTangle::arc_faces(crossings.clone(), endpoints) else {
                continue;
            };
            for f in faces {
                let json =
                    TangleJson { crossings: crossings.clone(), endpoints, hole_face: f.key, outer_face: outer.clone() };
                let t = AnnulusTangle::new(json.clone()).unwrap();
                let cfg = ScanConfig {
                    max_passages: 2,
                    max_path: 3,
                    torsion: CoverTorsion { odd: Some(odd.clone()), even: None },
                    ..Default::default()
                };
                let r = scan_closures(&t, &cfg);
                let s = &r.summary;
                if s.odd == 0 || s.oracle_disagreements > 0 || !odd_determinants_divisible(&r, &three) {
                    continue;
                }
                let even_off = r
                    .records
                    .iter()
                    .filter(|x| x.parity == Parity::Even)
                    .filter_map(|x| x.determinant())
                    .any(|d| !(d % &three).is_zero());
                if even_off {
                    println!(
                        "{} odd={} even={} even_det_one={}",
                        serde_json::to_string(&json).unwrap(),
                        s.odd,
                        s.even,
                        s.even_det_one
                    );
                }
            }
        }
    }
}
