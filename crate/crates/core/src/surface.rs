//! Compact oriented surfaces, their first homology, and the intersection
//! pairing.
//!
//! Homology of a surface of genus `g` with `b` boundary components is
//! written in the ordered basis
//!
//! ```text
//! a1, b1, a2, b2, ..., ag, bg, d1, ..., d(b-1)
//! ```
//!
//! where `(aj, bj)` is a symplectic pair with `i(aj, bj) = +1` and the `dj`
//! are classes of boundary-parallel curves, which pair to zero with
//! everything.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub boundary: u32,
}

impl SurfaceSignature {
    pub const fn new(genus: u32, boundary: u32) -> Self {
        Self { genus, boundary }
    }

    /// The pair of pants.
    pub const fn pants() -> Self {
        Self::new(0, 3)
    }

    /// First Betti number `2g + max(b - 1, 0)`.
    pub fn b1(&self) -> usize {
        2 * self.genus as usize + self.boundary.saturating_sub(1) as usize
    }

    pub fn boundary_classes(&self) -> usize {
        self.boundary.saturating_sub(1) as usize
    }

    /// Whether the intersection pairing is non-degenerate.
    pub fn is_nondegenerate(&self) -> bool {
        self.boundary <= 1
    }

    pub(crate) fn check_same(&self, other: &SurfaceSignature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SurfaceMismatch {
                expected: *self,
                found: *other,
            })
        }
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus {} with {} boundary", self.genus, self.boundary)
    }
}

/// An integral first-homology class in the standard basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    surface: SurfaceSignature,
    coords: Vec<i64>,
}

/// One of the named basis directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    A(usize),
    B(usize),
    D(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::A(i) => write!(f, "a{i}"),
            BasisLabel::B(i) => write!(f, "b{i}"),
            BasisLabel::D(i) => write!(f, "d{i}"),
        }
    }
}

impl HomologyClass {
    pub fn new(surface: SurfaceSignature, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != surface.b1() {
            return Err(Error::DimensionMismatch {
                expected: surface.b1(),
                found: coords.len(),
            });
        }
        Ok(Self { surface, coords })
    }

    pub fn zero(surface: SurfaceSignature) -> Self {
        Self {
            surface,
            coords: vec![0; surface.b1()],
        }
    }

    /// Unit vector for a named basis class, or `None` if the index is out of
    /// range for this surface (indices are 1-based).
    pub fn basis(surface: SurfaceSignature, label: BasisLabel) -> Option<Self> {
        let idx = label_index(surface, label)?;
        let mut coords = vec![0; surface.b1()];
        coords[idx] = 1;
        Some(Self { surface, coords })
    }

    pub fn a(surface: SurfaceSignature, i: usize) -> Option<Self> {
        Self::basis(surface, BasisLabel::A(i))
    }

    pub fn b(surface: SurfaceSignature, i: usize) -> Option<Self> {
        Self::basis(surface, BasisLabel::B(i))
    }

    pub fn d(surface: SurfaceSignature, j: usize) -> Option<Self> {
        Self::basis(surface, BasisLabel::D(j))
    }

    pub fn surface(&self) -> SurfaceSignature {
        self.surface
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Self {
        Self {
            surface: self.surface,
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    /// The basis label if this class is exactly a unit basis vector.
    pub fn as_basis_label(&self) -> Option<BasisLabel> {
        let mut nonzero = self.coords.iter().enumerate().filter(|(_, &x)| x != 0);
        let (idx, &val) = nonzero.next()?;
        if val != 1 || nonzero.next().is_some() {
            return None;
        }
        Some(index_label(self.surface, idx))
    }
}

fn label_index(surface: SurfaceSignature, label: BasisLabel) -> Option<usize> {
    let g = surface.genus as usize;
    match label {
        BasisLabel::A(i) if (1..=g).contains(&i) => Some(2 * (i - 1)),
        BasisLabel::B(i) if (1..=g).contains(&i) => Some(2 * (i - 1) + 1),
        BasisLabel::D(j) if (1..=surface.boundary_classes()).contains(&j) => Some(2 * g + j - 1),
        _ => None,
    }
}

fn index_label(surface: SurfaceSignature, idx: usize) -> BasisLabel {
    let g = surface.genus as usize;
    if idx < 2 * g {
        if idx.is_multiple_of(2) {
            BasisLabel::A(idx / 2 + 1)
        } else {
            BasisLabel::B(idx / 2 + 1)
        }
    } else {
        BasisLabel::D(idx - 2 * g + 1)
    }
}

/// The intersection pairing as a matrix `J` with `i(x, y) = x^T J y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionForm {
    surface: SurfaceSignature,
    matrix: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn surface(&self) -> SurfaceSignature {
        self.surface
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == -self.matrix[j][i]))
    }
}

/// Block-diagonal form: one `[[0, 1], [-1, 0]]` block per handle, zeros on
/// the boundary-parallel classes.
pub fn standard_form(surface: SurfaceSignature) -> IntersectionForm {
    let n = surface.b1();
    let mut matrix = vec![vec![0; n]; n];
    for j in 0..surface.genus as usize {
        matrix[2 * j][2 * j + 1] = 1;
        matrix[2 * j + 1][2 * j] = -1;
    }
    IntersectionForm { surface, matrix }
}

/// Algebraic intersection number of two classes.
pub fn pair(x: &HomologyClass, y: &HomologyClass) -> Result<i64> {
    x.surface.check_same(&y.surface)?;
    Ok(pair_coords(x.surface.genus as usize, &x.coords, &y.coords))
}

/// Pairing on raw coordinates of a genus-`genus` surface. Boundary
/// coordinates do not contribute.
pub(crate) fn pair_coords<T>(genus: usize, x: &[T], y: &[T]) -> T
where
    T: Clone + std::ops::Mul<Output = T> + std::ops::Sub<Output = T> + num_traits::Zero,
{
    (0..genus).fold(T::zero(), |acc, j| {
        let (xa, xb) = (x[2 * j].clone(), x[2 * j + 1].clone());
        let (ya, yb) = (y[2 * j].clone(), y[2 * j + 1].clone());
        acc + (xa * yb - xb * ya)
    })
}
