use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{HomologyClass, SurfaceSignature};

/// A power of a Dehn twist, recorded by the homology class of its curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwistLetter {
    curve: HomologyClass,
    exponent: i64,
}

impl TwistLetter {
    pub fn new(curve: HomologyClass, exponent: i64) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(Self { curve, exponent })
    }

    pub fn curve(&self) -> &HomologyClass {
        &self.curve
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn inverse(&self) -> Self {
        Self {
            curve: self.curve.clone(),
            exponent: -self.exponent,
        }
    }
}

/// A product of twists. The first letter acts first, so the word
/// `l1 l2 ... lk` has homological action `M_k ... M_2 M_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwistWord {
    surface: SurfaceSignature,
    letters: Vec<TwistLetter>,
}

impl TwistWord {
    pub fn empty(surface: SurfaceSignature) -> Self {
        Self {
            surface,
            letters: Vec::new(),
        }
    }

    pub fn new(surface: SurfaceSignature, letters: Vec<TwistLetter>) -> Result<Self> {
        for letter in &letters {
            surface.check_same(&letter.curve.surface())?;
        }
        Ok(Self { surface, letters })
    }

    /// Convenience constructor from `(class, exponent)` pairs.
    pub fn from_pairs<I>(surface: SurfaceSignature, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (HomologyClass, i64)>,
    {
        let letters = pairs
            .into_iter()
            .map(|(c, e)| TwistLetter::new(c, e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(surface, letters)
    }

    pub fn surface(&self) -> SurfaceSignature {
        self.surface
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: TwistLetter) -> Result<()> {
        self.surface.check_same(&letter.curve.surface())?;
        self.letters.push(letter);
        Ok(())
    }

    /// Concatenation: `self` acts first, then `other`.
    pub fn then(&self, other: &TwistWord) -> Result<Self> {
        self.surface.check_same(&other.surface)?;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(Self {
            surface: self.surface,
            letters,
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            surface: self.surface,
            letters: self.letters.iter().rev().map(TwistLetter::inverse).collect(),
        }
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Self {
            surface: self.surface,
            letters,
        }
    }
}
