use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    close_tangle, closure_linking, obstruction_verdict, AnnulusTangle, ClosureSpec, Obstruction, Parity, Passage, Side,
};
use crate::branched::{divides, knot_determinant};
use crate::diagram::{bracket_determinant, DEFAULT_CROSSING_LIMIT};
use crate::intlinalg::{AbelianGroup, JsonInt};

/// Torsion of the double cover of the solid torus for each closure parity;
/// `None` means no torsion is known and nothing is excluded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverTorsion {
    pub odd: Option<AbelianGroup>,
    pub even: Option<AbelianGroup>,
}

impl CoverTorsion {
    pub fn for_parity(&self, p: Parity) -> AbelianGroup {
        let g = match p {
            Parity::Odd => &self.odd,
            Parity::Even => &self.even,
        };
        g.as_ref().map(AbelianGroup::torsion_subgroup).unwrap_or_else(AbelianGroup::trivial)
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub max_passages: usize,
    pub max_path: usize,
    pub crossing_limit: usize,
    pub torsion: CoverTorsion,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_passages: 2,
            max_path: 3,
            crossing_limit: DEFAULT_CROSSING_LIMIT,
            torsion: CoverTorsion::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureRecord {
    pub index: usize,
    pub spec: ClosureSpec,
    pub crossings: usize,
    pub lk_with_longitude: i64,
    pub parity: Parity,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub goeritz_det: Option<JsonInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bracket_det: Option<JsonInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub obstruction: Option<Obstruction>,
    /// Why the closure was not evaluated.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skipped: Option<String>,
}

impl ClosureRecord {
    pub fn determinant(&self) -> Option<&BigInt> {
        self.goeritz_det.as_ref().map(|d| &d.0)
    }

    pub fn oracles_agree(&self) -> bool {
        self.goeritz_det == self.bracket_det
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub closures: usize,
    pub evaluated: usize,
    pub odd: usize,
    pub even: usize,
    pub skipped: usize,
    /// Some closures were left out because they exceeded the crossing limit.
    pub truncated: bool,
    pub oracle_disagreements: usize,
    /// Evaluated closures whose determinant is 1.
    pub odd_det_one: usize,
    pub even_det_one: usize,
    /// A closure that exists yet is excluded by the torsion obstruction.
    pub contradiction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub records: Vec<ClosureRecord>,
    pub summary: ScanSummary,
}

impl ScanReport {
    /// One JSON object per closure, then the summary tagged `"record": "summary"`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let mut v = serde_json::to_value(r).expect("records serialize");
            v["record"] = "closure".into();
            out.push_str(&v.to_string());
            out.push('\n');
        }
        let mut v = serde_json::to_value(&self.summary).expect("summary serializes");
        v["record"] = "summary".into();
        out.push_str(&v.to_string());
        out.push('\n');
        out
    }
}

/// Simple face walks of at most `max_len` faces from any of `from` to `to`.
fn walks(t: &AnnulusTangle, from: &[usize], to: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(t: &AnnulusTangle, path: &mut Vec<usize>, to: usize, max_len: usize, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("nonempty");
        if last == to {
            out.push(path.clone());
            return;
        }
        if path.len() == max_len {
            return;
        }
        for g in 0..t.faces().len() {
            if !path.contains(&g) && t.adjacent(last, g) {
                path.push(g);
                extend(t, path, to, max_len, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &f in from {
        extend(t, &mut vec![f], to, max_len, &mut out);
    }
    out
}

/// Every closure spec within the bounds, in a fixed order: by passage count,
/// then lexicographically by passage choices.
pub fn enumerate_specs(t: &AnnulusTangle, max_passages: usize, max_path: usize) -> Vec<ClosureSpec> {
    if max_path == 0 {
        return vec![ClosureSpec::default()];
    }
    let sides: Vec<usize> = (0..t.faces().len()).filter(|&f| t.is_side(f)).collect();
    let key = |p: &[usize]| -> Vec<Vec<i64>> { p.iter().map(|&f| t.faces()[f].key.clone()).collect() };
    let mut inward = Vec::new();
    let mut outward = Vec::new();
    for p in walks(t, &sides, t.hole, max_path) {
        for side in [Side::Over, Side::Under] {
            let mut rev = p.clone();
            rev.reverse();
            inward.push(Passage { path: key(&p), side });
            outward.push(Passage { path: key(&rev), side });
        }
    }
    let mut specs = vec![ClosureSpec::default()];
    let mut layer = vec![Vec::<Passage>::new()];
    for count in 1..=max_passages {
        let choices = if count % 2 == 1 { &inward } else { &outward };
        layer = layer
            .iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
        if count % 2 == 0 {
            specs.extend(layer.iter().map(|p| ClosureSpec { passages: p.clone() }));
        }
    }
    specs
}

fn evaluate(t: &AnnulusTangle, index: usize, spec: ClosureSpec, cfg: &ScanConfig) -> ClosureRecord {
    let lk = closure_linking(t, &spec).unwrap_or(0);
    let parity = Parity::of(lk);
    let mut rec = ClosureRecord {
        index,
        spec,
        crossings: 0,
        lk_with_longitude: lk,
        parity,
        goeritz_det: None,
        bracket_det: None,
        obstruction: None,
        skipped: None,
    };
    let d = match close_tangle(t, &rec.spec) {
        Ok(d) => d,
        Err(e) => {
            rec.skipped = Some(e.to_string());
            return rec;
        }
    };
    rec.crossings = d.crossing_count();
    if rec.crossings > cfg.crossing_limit {
        rec.skipped = Some(format!("{} crossings exceed the limit of {}", rec.crossings, cfg.crossing_limit));
        return rec;
    }
    match (knot_determinant(&d), bracket_determinant(&d, cfg.crossing_limit)) {
        (Ok(g), Ok(b)) => {
            rec.obstruction = Some(obstruction_verdict(&cfg.torsion.for_parity(parity), &g));
            rec.goeritz_det = Some(JsonInt(g));
            rec.bracket_det = Some(JsonInt(b));
        }
        (Err(e), _) | (_, Err(e)) => rec.skipped = Some(e.to_string()),
    }
    rec
}

/// Closes the tangle in every way within the bounds and checks each closure
/// against the torsion obstruction. Closures are evaluated in parallel; the
/// report is in enumeration order.
pub fn scan_closures(t: &AnnulusTangle, cfg: &ScanConfig) -> ScanReport {
    let specs = enumerate_specs(t, cfg.max_passages, cfg.max_path);
    let records: Vec<ClosureRecord> = specs.into_par_iter().enumerate().map(|(i, s)| evaluate(t, i, s, cfg)).collect();
    let mut s = ScanSummary { closures: records.len(), ..Default::default() };
    let one = BigInt::from(1);
    for r in &records {
        if r.skipped.is_some() {
            s.skipped += 1;
            s.truncated = true;
            continue;
        }
        s.evaluated += 1;
        match r.parity {
            Parity::Odd => s.odd += 1,
            Parity::Even => s.even += 1,
        }
        if !r.oracles_agree() {
            s.oracle_disagreements += 1;
        }
        let det = r.determinant().expect("evaluated");
        if *det == one {
            match r.parity {
                Parity::Odd => s.odd_det_one += 1,
                Parity::Even => s.even_det_one += 1,
            }
        }
        if r.obstruction == Some(Obstruction::ExcludedByTorsion) {
            s.contradiction = true;
        }
    }
    ScanReport { records, summary: s }
}

/// Whether every evaluated odd closure has determinant divisible by `n`.
pub fn odd_determinants_divisible(report: &ScanReport, n: &BigInt) -> bool {
    report
        .records
        .iter()
        .filter(|r| r.parity == Parity::Odd)
        .filter_map(ClosureRecord::determinant)
        .all(|d| divides(n, d))
}
