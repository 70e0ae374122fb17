//! Exact integer linear algebra: Smith normal form with transform
//! certificates and the classification of finitely presented abelian groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<JsonInt>>", into = "Vec<Vec<JsonInt>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries do not fill a {rows}x{cols} matrix", entries.len())));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows of equal length. A matrix with zero rows
    /// needs its column count from elsewhere; see [`IntMatrix::zeros`].
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Submatrix with one row and one column removed.
    pub fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, entries }
    }

    /// Determinant by fraction-free (Bareiss) elimination. The 0x0 matrix has
    /// determinant 1.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of non-square {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * &self.entries[src * self.cols + j];
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * &self.entries[i * self.cols + src];
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.entries[idx] = -std::mem::take(&mut self.entries[idx]);
        }
    }
}

impl TryFrom<Vec<Vec<JsonInt>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<JsonInt>>) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<JsonInt>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows().into_iter().map(|r| r.into_iter().map(JsonInt).collect()).collect()
    }
}

/// Integer that serializes as a plain JSON number when it fits in 64 bits
/// and as a decimal string otherwise. Both forms are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                parse_decimal(v).map(JsonInt).ok_or_else(|| E::custom(format!("bad integer `{v}`")))
            }
        }
        d.deserialize_any(V)
    }
}

pub(crate) mod json_int {
    use super::JsonInt;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Ok(JsonInt::deserialize(d)?.0)
    }
}

pub(crate) mod json_ints {
    use super::JsonInt;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<JsonInt> = v.iter().cloned().map(JsonInt).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<JsonInt>::deserialize(d)?.into_iter().map(|x| x.0).collect())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

/// One row per line, entries separated by a single space.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the plain-text matrix format: one row per line, whitespace
/// separated signed decimal integers, `#` starts a comment, blank lines are
/// skipped.
impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    parse_decimal(tok).ok_or_else(|| Error::Parse(format!("line {}: bad integer `{tok}`", lineno + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        IntMatrix::from_rows(&rows).map_err(|e| match e {
            Error::Dimension(msg) => Error::Parse(format!("ragged matrix: {msg}")),
            other => other,
        })
    }
}

// BigInt's own parser accepts `_` separators and a leading `+` in places we
// do not want to.
fn parse_decimal(tok: &str) -> Option<BigInt> {
    let digits = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tok.parse().ok()
}

/// Smith normal form `u * m * v = diag(d)` with its unimodular certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    #[serde(with = "json_ints")]
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Computes the Smith normal form of a nonempty matrix.
///
/// Pivots are chosen by smallest nonzero absolute value, which keeps the
/// intermediate entries small. The diagonal comes out nonnegative with each
/// entry dividing the next and zeros last.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SnfResult> {
    if m.is_empty() {
        return Err(Error::Dimension(format!("Smith normal form of an empty {}x{} matrix", m.rows, m.cols)));
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    // Column operations are applied to v^T as row operations.
    let mut vt = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        vt.swap_rows(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &q);
                vt.add_row(j, t, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                vt.swap_rows(t, pj);
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let d = (0..rows.min(cols)).map(|i| a.get(i, i).clone()).collect();
    Ok(SnfResult { d, u, v: vt.transpose() })
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

// Smallest nonzero entry among row t and column t (the pivot included).
fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let cells = (t..a.rows).map(|i| (i, t)).chain((t + 1..a.cols).map(|j| (t, j)));
    cells
        .filter(|&(i, j)| !a.get(i, j).is_zero())
        .min_by(|&(i1, j1), &(i2, j2)| a.get(i1, j1).abs().cmp(&a.get(i2, j2).abs()))
        .expect("cross contains a nonzero entry after a nonzero remainder")
}

/// A finitely generated abelian group in invariant-factor form:
/// `Z^free_rank + Z/t1 + ... + Z/tk` with every `ti >= 2` dividing `t(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "json_ints")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonicalizes arbitrary cyclic orders (negatives, 1s, any order) into
    /// invariant factors. A zero order contributes a free summand.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut nontrivial: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                nontrivial.push(o);
            }
        }
        if nontrivial.is_empty() {
            return AbelianGroup::free(free);
        }
        let diag = IntMatrix {
            rows: nontrivial.len(),
            cols: nontrivial.len(),
            entries: {
                let n = nontrivial.len();
                let mut e = vec![BigInt::zero(); n * n];
                for (i, o) in nontrivial.into_iter().enumerate() {
                    e[i * n + i] = o;
                }
                e
            },
        };
        let snf = smith_normal_form(&diag).expect("nonempty diagonal");
        AbelianGroup { free_rank: free, torsion: snf.d.into_iter().filter(|x| !x.is_one()).collect() }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// The torsion subgroup T(G), as a group in its own right.
    pub fn torsion_subgroup(&self) -> AbelianGroup {
        AbelianGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| torsion_order(self))
    }
}

/// Renders as `Z^r + Z/d1 + Z/d2 ...`; the trivial group is `0`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The cokernel of `relations` acting on `Z^n_generators` (one relation per
/// row), in invariant-factor form.
pub fn cokernel_group(relations: &IntMatrix, n_generators: usize) -> Result<AbelianGroup> {
    if relations.rows > 0 && relations.cols != n_generators {
        return Err(Error::Dimension(format!(
            "relation matrix has {} columns but there are {n_generators} generators",
            relations.cols
        )));
    }
    if relations.rows == 0 || n_generators == 0 {
        return Ok(AbelianGroup::free(n_generators));
    }
    let snf = smith_normal_form(relations)?;
    let nonzero = snf.d.iter().filter(|x| !x.is_zero()).count();
    Ok(AbelianGroup {
        free_rank: n_generators - nonzero,
        torsion: snf.d.into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect(),
    })
}

/// Product of the torsion coefficients; 1 for a torsion-free group.
pub fn torsion_order(g: &AbelianGroup) -> BigInt {
    g.torsion.iter().fold(BigInt::one(), |acc, t| acc * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn diag_of(snf: &SnfResult, m: &IntMatrix) -> IntMatrix {
        snf.u.mul(m).unwrap().mul(&snf.v).unwrap()
    }

    // Determinant-divisor oracle: d_k = D_k / D_(k-1), where D_k is the gcd
    // of all k x k minors. Minors are evaluated by cofactor expansion, so
    // nothing here shares code with the elimination routines above.
    fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let sub: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * cofactor_det(&sub);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    fn divisor_oracle(m: &IntMatrix) -> Vec<BigInt> {
        let r = m.rows().min(m.cols());
        let mut dk = vec![BigInt::one()];
        for k in 1..=r {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<BigInt>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                    g = g.gcd(&cofactor_det(&sub));
                }
            }
            dk.push(g);
        }
        (1..=r).map(|k| if dk[k].is_zero() { BigInt::zero() } else { &dk[k] / &dk[k - 1] }).collect()
    }

    #[test]
    fn odd_cover_presentation_reduces_to_one_three() {
        let m = mat(&[&[1, 2, 0, 0], &[2, 1, 0, 0]]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.d, big(&[1, 3]));
        let g = cokernel_group(&m, 4).unwrap();
        assert_eq!(g, AbelianGroup { free_rank: 2, torsion: big(&[3]) });
        assert_eq!(torsion_order(&g), BigInt::from(3));
        assert_eq!(g.to_string(), "Z^2 + Z/3");
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zeros(2, 2);
        assert_eq!(smith_normal_form(&m).unwrap().d, big(&[0, 0]));
    }

    #[test]
    fn determinant_divisor_example() {
        let m = mat(&[&[2, 4], &[6, 8]]);
        let expected = divisor_oracle(&m);
        assert_eq!(expected, big(&[2, 4]));
        assert_eq!(smith_normal_form(&m).unwrap().d, expected);
    }

    #[test]
    fn empty_matrix_is_rejected() {
        assert!(matches!(smith_normal_form(&IntMatrix::zeros(0, 3)), Err(Error::Dimension(_))));
        assert!(matches!(smith_normal_form(&IntMatrix::zeros(2, 0)), Err(Error::Dimension(_))));
    }

    #[test]
    fn cokernel_edge_cases() {
        assert_eq!(cokernel_group(&IntMatrix::zeros(0, 3), 3).unwrap(), AbelianGroup::free(3));
        assert_eq!(cokernel_group(&mat(&[&[1]]), 1).unwrap(), AbelianGroup::trivial());
        assert!(matches!(cokernel_group(&mat(&[&[1, 2]]), 3), Err(Error::Dimension(_))));
    }

    #[test]
    fn torsion_orders() {
        assert_eq!(torsion_order(&AbelianGroup::free(5)), BigInt::one());
        let g = AbelianGroup { free_rank: 0, torsion: big(&[2, 6]) };
        assert_eq!(torsion_order(&g), BigInt::from(12));
    }

    #[test]
    fn canonical_from_cyclic_orders() {
        // Z/4 + Z/6 = Z/2 + Z/12
        let g = AbelianGroup::from_cyclic_orders(1, &big(&[4, 6, 1, -1, 0]));
        assert_eq!(g, AbelianGroup { free_rank: 2, torsion: big(&[2, 12]) });
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/12");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = mat(&[&[3, -1, 4, 1], &[5, 9, -2, 6], &[5, 3, 5, -8], &[9, 7, 9, 3]]);
        assert_eq!(m.determinant().unwrap(), cofactor_det(&m.to_rows()));
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
        let singular = mat(&[&[0, 1], &[0, 2]]);
        assert!(singular.determinant().unwrap().is_zero());
    }

    #[test]
    fn entries_beyond_machine_width() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = IntMatrix::from_rows(&[vec![huge.clone(), BigInt::from(7)], vec![BigInt::from(7), huge.clone() * 3]])
            .unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(diag_of(&snf, &m).get(1, 1), &snf.d[1]);
        assert_eq!(&snf.d[0] * &snf.d[1], m.determinant().unwrap().abs());
    }

    #[test]
    fn matrix_text_format() {
        let m: IntMatrix = "# relations\n1 2 0 0\n\n 2  1 0 0  # tau\n".parse().unwrap();
        assert_eq!(m, mat(&[&[1, 2, 0, 0], &[2, 1, 0, 0]]));
        assert!("1 2\n3".parse::<IntMatrix>().is_err());
        assert!("1 x".parse::<IntMatrix>().is_err());
        assert!("1_000".parse::<IntMatrix>().is_err());
        let back: IntMatrix = m.to_string().parse().unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn oracle_agrees_on_small_fixed_cases() {
        for rows in [
            vec![vec![0, 6, 0], vec![4, 0, 0], vec![0, 0, 10]],
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![1, 1], vec![1, 1], vec![0, 3]],
        ] {
            let m = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(smith_normal_form(&m).unwrap().d, divisor_oracle(&m), "{rows:?}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = IntMatrix> {
            (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                    IntMatrix::from_entries(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn snf_matches_divisor_oracle(m in small_matrix()) {
                prop_assert_eq!(smith_normal_form(&m).unwrap().d, divisor_oracle(&m));
            }

            #[test]
            fn cokernel_invariant_under_row_moves(
                m in small_matrix(),
                a in 0usize..5, b in 0usize..5, k in -4i64..=4,
            ) {
                let n = m.cols();
                let g = cokernel_group(&m, n).unwrap();
                let (a, b) = (a % m.rows(), b % m.rows());
                let mut moved = m.clone();
                moved.swap_rows(a, b);
                prop_assert_eq!(cokernel_group(&moved, n).unwrap(), g.clone());
                moved.negate_row(a);
                prop_assert_eq!(cokernel_group(&moved, n).unwrap(), g.clone());
                if a != b {
                    moved.add_row(a, b, &BigInt::from(k));
                    prop_assert_eq!(cokernel_group(&moved, n).unwrap(), g);
                }
            }
        }
    }
}
