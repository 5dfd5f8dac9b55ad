//! Twist-length obstruction for knot monodromies.
//!
//! If a monodromy of a genus-`g` fibre surface with one boundary component
//! is a product of twists about fewer than `2g` homology classes, the
//! classes span a proper subspace `V` and any nonzero `v` in `V^⊥` is fixed
//! by every such product. Then `1` is an eigenvalue of the action and
//! `Δ(1) = 0`, which no knot allows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::action::word_action;
use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::surface::{pair_coords, HomologyClass, SurfaceSignature};
use crate::word::TwistWord;

/// Witness that twists about `classes` cannot produce a knot monodromy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    pub surface: SurfaceSignature,
    /// Distinct classes, in order of first appearance.
    pub classes: Vec<HomologyClass>,
    #[serde(serialize_with = "serialize_rational_rows")]
    pub complement_basis: Vec<Vec<BigRational>>,
    /// Nonzero integral vector in the orthogonal complement.
    #[serde(serialize_with = "crate::rational::serialize_int_seq")]
    pub witness: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    Certificate(ObstructionCertificate),
    /// At least `2g` distinct classes: the bound says nothing.
    NotApplicable,
}

/// Row vector `f_c` with `f_c . x = i(x, c)`.
fn pairing_row(c: &HomologyClass) -> Vec<BigRational> {
    let s = c.surface();
    let genus = s.genus as usize;
    (0..s.b1())
        .map(|j| {
            let mut e = vec![0i64; s.b1()];
            e[j] = 1;
            BigRational::from_integer(pair_coords(genus, &e, c.coords()).into())
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns. Pivots are
/// taken at the lowest available column index.
pub(crate) fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row][..cols].to_vec();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Rank of the pairing constraints `x -> i(x, c)` for the given classes.
pub fn constraint_rank(classes: &[HomologyClass]) -> Result<usize> {
    let Some(first) = classes.first() else {
        return Ok(0);
    };
    let surface = first.surface();
    for c in classes {
        surface.check_same(&c.surface())?;
    }
    let mut m: Vec<Vec<BigRational>> = classes.iter().map(pairing_row).collect();
    Ok(rref(&mut m, surface.b1()).len())
}

/// Basis of `{x : i(x, c) = 0 for all c in classes}` on `surface`, one
/// vector per free column of the echelon form, in increasing column order.
pub fn orthogonal_complement(
    surface: SurfaceSignature,
    classes: &[HomologyClass],
) -> Result<Vec<Vec<BigRational>>> {
    for c in classes {
        surface.check_same(&c.surface())?;
    }
    let n = surface.b1();
    let mut m: Vec<Vec<BigRational>> = classes.iter().map(pairing_row).collect();
    let pivots = rref(&mut m, n);
    let free = (0..n).filter(|c| !pivots.contains(c));
    Ok(free
        .map(|f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][f].clone();
            }
            v
        })
        .collect())
}

/// Scale a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

fn distinct(classes: &[HomologyClass]) -> Vec<HomologyClass> {
    let mut out: Vec<HomologyClass> = Vec::new();
    for c in classes {
        if !out.contains(c) {
            out.push(c.clone());
        }
    }
    out
}

/// Certificate that twists about fewer than `2g` distinct classes never
/// give a knot monodromy on the genus-`g` surface with one boundary
/// component.
pub fn knot_monodromy_obstruction(g: u32, classes: &[HomologyClass]) -> Result<Obstruction> {
    let surface = SurfaceSignature::new(g, 1);
    for c in classes {
        let s = c.surface();
        if s.boundary != 1 {
            return Err(Error::BoundaryNotOne(s.boundary));
        }
        if s.genus != g {
            return Err(Error::GenusMismatch {
                expected: g,
                found: s.genus,
            });
        }
    }
    let classes = distinct(classes);
    if classes.len() >= 2 * g as usize {
        return Ok(Obstruction::NotApplicable);
    }
    let complement_basis = orthogonal_complement(surface, &classes)?;
    let witness = clear_denominators(
        complement_basis
            .first()
            .expect("fewer than 2g constraints on a rank-2g space leave a nonzero complement"),
    );
    Ok(Obstruction::Certificate(ObstructionCertificate {
        surface,
        classes,
        complement_basis,
        witness,
    }))
}

/// Lower bound `2g` on the twist length of a genus-`g` knot monodromy.
pub fn knot_twist_length_lower_bound(g: u32) -> u64 {
    2 * u64::from(g)
}

/// Outcome of checking a certificate against a concrete word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    pub witness_nonzero: bool,
    pub witness_orthogonal: bool,
    pub witness_fixed: bool,
    #[serde(serialize_with = "crate::rational::serialize_int")]
    pub det_id_minus_action: BigInt,
    #[serde(serialize_with = "crate::rational::serialize_int")]
    pub delta_one: BigInt,
}

impl CertificateChecks {
    pub fn passed(&self) -> bool {
        self.witness_nonzero
            && self.witness_orthogonal
            && self.witness_fixed
            && self.det_id_minus_action.is_zero()
            && self.delta_one.is_zero()
    }
}

impl ObstructionCertificate {
    /// Pairings of the witness against every listed class.
    pub fn witness_pairings(&self) -> Vec<BigInt> {
        let genus = self.surface.genus as usize;
        self.classes
            .iter()
            .map(|c| {
                let c: Vec<BigInt> = c.coords().iter().copied().map(BigInt::from).collect();
                pair_coords(genus, &self.witness, &c)
            })
            .collect()
    }

    pub fn check(&self, w: &TwistWord) -> Result<CertificateChecks> {
        self.surface.check_same(&w.surface())?;
        for letter in w.letters() {
            if !self.classes.contains(letter.curve()) {
                return Err(Error::ClassNotInCertificate(letter.curve().coords().to_vec()));
            }
        }
        let m = word_action(w)?;
        let image = m.apply(&self.witness);
        let n = m.dim();
        let id_minus: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let id = if i == j { BigInt::one() } else { BigInt::zero() };
                        id - m.entry(i, j)
                    })
                    .collect()
            })
            .collect();
        Ok(CertificateChecks {
            witness_nonzero: self.witness.iter().any(|x| !x.is_zero()),
            witness_orthogonal: self.witness_pairings().iter().all(Zero::is_zero),
            witness_fixed: image == self.witness,
            det_id_minus_action: crate::matrix::bareiss_determinant(id_minus),
            delta_one: m.characteristic_polynomial().eval(&BigInt::one()),
        })
    }
}

/// True iff the word fixes the witness and its characteristic polynomial
/// vanishes at 1. A `false` here means a bug, not a counterexample.
pub fn verify_certificate(cert: &ObstructionCertificate, w: &TwistWord) -> Result<bool> {
    let checks = cert.check(w)?;
    Ok(checks.witness_fixed && checks.delta_one.is_zero())
}

fn serialize_rational_rows<S: serde::Serializer>(
    rows: &[Vec<BigRational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect();
    rows.serialize(s)
}
