//! First homology of double branched covers.
//!
//! For a knot the group comes from the Goeritz matrix of a checkerboard
//! coloring. For a tangle in a solid torus it comes from a surgery
//! presentation: a framed link in a handlebody, whose linking matrix relates
//! the meridians of the surgery curves and of the handlebody's core loops.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{checkerboard, faces, Color, Coloring, LinkDiagram};
use crate::error::{Error, Result};
use crate::intlinalg::{cokernel_group, AbelianGroup, IntMatrix};

/// Reduced Goeritz matrix of a knot diagram.
///
/// White regions are indexed in face order. A crossing whose white corners
/// are positions 1 and 3 (between slots 1,2 and 3,0) has `eta = +1`,
/// otherwise `eta = -1`. Each crossing joining distinct white regions `i`
/// and `j` adds `-eta` at `(i, j)` and `(j, i)`; the diagonal makes every
/// row sum to zero. A crossing whose two white corners lie in the same
/// region is a nugatory twist and contributes nothing. The row and column
/// of the unbounded face are then deleted.
pub fn goeritz_matrix(d: &LinkDiagram, c: &Coloring) -> Result<IntMatrix> {
    if !d.is_knot() {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let fm = faces(d)?;
    if c.color.len() != fm.len() || c.color[fm.unbounded] != Color::White {
        return Err(Error::Dimension("coloring does not match the diagram's faces".into()));
    }
    let white = c.white_faces();
    let mut index = vec![usize::MAX; fm.len()];
    for (i, &f) in white.iter().enumerate() {
        index[f] = i;
    }
    let k = white.len();
    let mut g = vec![vec![0i64; k]; k];
    for corners in &fm.corners {
        let (first, eta) = if c.color[corners[1]] == Color::White { (1, 1) } else { (0, -1) };
        let (a, b) = (index[corners[first]], index[corners[first + 2]]);
        if a == b {
            continue;
        }
        g[a][b] -= eta;
        g[b][a] -= eta;
        g[a][a] += eta;
        g[b][b] += eta;
    }
    let skip = index[fm.unbounded];
    let reduced: Vec<Vec<i64>> =
        (0..k).filter(|&i| i != skip).map(|i| (0..k).filter(|&j| j != skip).map(|j| g[i][j]).collect()).collect();
    if reduced.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    IntMatrix::from_rows(&reduced)
}

fn standard_goeritz(d: &LinkDiagram) -> Result<IntMatrix> {
    if !d.is_knot() {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let fm = faces(d)?;
    let coloring = checkerboard(d, &fm)?;
    goeritz_matrix(d, &coloring)
}

/// `|det|` of the reduced Goeritz matrix; 1 for the empty matrix.
pub fn knot_determinant(d: &LinkDiagram) -> Result<BigInt> {
    Ok(standard_goeritz(d)?.determinant()?.abs())
}

/// First homology of the double cover of the sphere branched over a knot.
pub fn double_cover_group(d: &LinkDiagram) -> Result<AbelianGroup> {
    let g = standard_goeritz(d)?;
    cokernel_group(&g, g.cols())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryCurve {
    pub label: String,
    pub framing: i64,
}

/// A framed link in a handlebody. The linking matrix has one row per
/// surgery curve and one column per surgery curve followed by one per free
/// generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawPresentation")]
pub struct SurgeryPresentation {
    pub surgery: Vec<SurgeryCurve>,
    pub free: Vec<String>,
    pub linking: IntMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    surgery: Vec<SurgeryCurve>,
    #[serde(default)]
    free: Vec<String>,
    linking: IntMatrix,
}

impl TryFrom<RawPresentation> for SurgeryPresentation {
    type Error = Error;

    fn try_from(r: RawPresentation) -> Result<Self> {
        SurgeryPresentation::new(r.surgery, r.free, r.linking)
    }
}

impl SurgeryPresentation {
    pub fn new(surgery: Vec<SurgeryCurve>, free: Vec<String>, linking: IntMatrix) -> Result<Self> {
        let (s, n) = (surgery.len(), surgery.len() + free.len());
        // An empty matrix has no columns to count, so only rows are checked.
        let shape_ok = linking.rows() == s && (s == 0 || linking.cols() == n);
        if !shape_ok {
            return Err(Error::Presentation(format!(
                "linking matrix is {}x{}, expected {s}x{n}",
                linking.rows(),
                linking.cols()
            )));
        }
        for (i, curve) in surgery.iter().enumerate() {
            if *linking.get(i, i) != BigInt::from(curve.framing) {
                return Err(Error::Presentation(format!(
                    "diagonal entry {i} is {} but `{}` has framing {}",
                    linking.get(i, i),
                    curve.label,
                    curve.framing
                )));
            }
            for (j, other) in surgery[..i].iter().enumerate() {
                if linking.get(i, j) != linking.get(j, i) {
                    return Err(Error::Presentation(format!(
                        "linking of `{}` and `{}` is not symmetric",
                        other.label, curve.label
                    )));
                }
            }
        }
        Ok(SurgeryPresentation { surgery, free, linking })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| match e.classify() {
            // Validation failures inside `try_from` surface as data errors.
            serde_json::error::Category::Data if e.to_string().starts_with("invalid surgery presentation: ") => {
                Error::Presentation(e.to_string()["invalid surgery presentation: ".len()..].to_string())
            }
            _ => Error::Parse(e.to_string()),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    pub fn generator_count(&self) -> usize {
        self.surgery.len() + self.free.len()
    }
}

/// `H_1` of the surgered handlebody: meridians of every generator, modulo
/// one relation per surgery curve.
pub fn surgery_h1(p: &SurgeryPresentation) -> Result<AbelianGroup> {
    cokernel_group(&p.linking, p.generator_count())
}

/// Which branched cover of the solid torus: `degree` sheets, with the
/// longitude sent to `longitude_image` in `Z/degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverIndex {
    degree: u32,
    longitude_image: u32,
}

impl CoverIndex {
    pub fn new(degree: u32, longitude_image: u32) -> Result<Self> {
        if degree < 2 || longitude_image >= degree {
            return Err(Error::Dimension(format!(
                "cover index ({degree}, {longitude_image}) needs degree >= 2 and 0 <= image < degree"
            )));
        }
        Ok(CoverIndex { degree, longitude_image })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn longitude_image(&self) -> u32 {
        self.longitude_image
    }

    /// Double covers are indexed by the parity of the closure.
    pub fn double_for_linking(lk: i64) -> Self {
        CoverIndex { degree: 2, longitude_image: lk.rem_euclid(2) as u32 }
    }
}

/// Surgery presentation of the double cover of the solid torus branched
/// over Krebes' tangle, with the longitude lifting to an odd class.
pub fn krebes_odd_cover() -> SurgeryPresentation {
    let curve = |label: &str| SurgeryCurve { label: label.into(), framing: 1 };
    SurgeryPresentation::new(
        vec![curve("sigma"), curve("tau")],
        vec!["alpha1".into(), "alpha2".into()],
        IntMatrix::from_rows(&[vec![1, 2, 0, 0], vec![2, 1, 0, 0]]).expect("2x4"),
    )
    .expect("fixture is valid")
}

/// The even cover's presentation. No numeric transcription is available,
/// so this has no data yet.
pub fn krebes_even_cover() -> Option<SurgeryPresentation> {
    None
}

/// The cover presentation for a given index, where one is bundled.
pub fn krebes_cover(index: CoverIndex) -> Option<SurgeryPresentation> {
    match (index.degree, index.longitude_image) {
        (2, 1) => Some(krebes_odd_cover()),
        (2, 0) => krebes_even_cover(),
        _ => None,
    }
}

/// Whether `a` divides `b`, with every integer dividing zero.
pub(crate) fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        return b.is_zero();
    }
    (b % a).is_zero()
}
