use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lattice::{self, IVec};
use crate::error::{Error, Result};

/// One of the supported ambient groups.
///
/// `Z^n` when `flips` is empty; otherwise `Z^n ⋊ C2`, where the sign `-1`
/// negates exactly the coordinates set in `flips`. The full-flip case is the
/// usual `ZN_SEMIDIRECT_C2(n)`; partial masks arise as products such as
/// `Z^a × (Z^b ⋊ C2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Carrier {
    dim: usize,
    flips: u64,
}

impl Carrier {
    pub const MAX_DIM: usize = 64;

    pub fn zn(n: usize) -> Self {
        assert!((1..=Self::MAX_DIM).contains(&n), "dimension out of range");
        Carrier { dim: n, flips: 0 }
    }

    pub fn zn_semidirect_c2(n: usize) -> Self {
        assert!((1..=Self::MAX_DIM).contains(&n), "dimension out of range");
        let flips = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Carrier { dim: n, flips }
    }

    /// Semidirect carrier whose sign negates the listed coordinates.
    pub fn with_flips(n: usize, flipped: &[usize]) -> Result<Self> {
        if n == 0 || n > Self::MAX_DIM {
            return Err(Error::Invalid(format!("dimension {n} out of range")));
        }
        let mut flips = 0u64;
        for &i in flipped {
            if i >= n {
                return Err(Error::Invalid(format!("flip index {i} out of range")));
            }
            flips |= 1 << i;
        }
        Ok(Carrier { dim: n, flips })
    }

    /// `self × other` with coordinates concatenated. At most one factor may
    /// carry a sign.
    pub fn product(&self, other: &Carrier) -> Result<Carrier> {
        if self.has_sign() && other.has_sign() {
            return Err(Error::UnsupportedCarrier(
                "product of two semidirect carriers".into(),
            ));
        }
        let dim = self.dim + other.dim;
        if dim > Self::MAX_DIM {
            return Err(Error::UnsupportedCarrier("product dimension too large".into()));
        }
        Ok(Carrier { dim, flips: self.flips | (other.flips << self.dim) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_sign(&self) -> bool {
        self.flips != 0
    }

    pub fn is_abelian(&self) -> bool {
        !self.has_sign()
    }

    pub fn flipped(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.flips >> i & 1 == 1).collect()
    }

    /// The sign action on translations.
    pub fn act(&self, sign: Sign, v: &[BigInt]) -> IVec {
        match sign {
            Sign::Plus => v.to_vec(),
            Sign::Minus => self.reflect(v),
        }
    }

    pub(crate) fn reflect(&self, v: &[BigInt]) -> IVec {
        v.iter()
            .enumerate()
            .map(|(i, x)| if self.flips >> i & 1 == 1 { -x } else { x.clone() })
            .collect()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            carrier: *self,
            translation: vec![BigInt::zero(); self.dim],
            sign: Sign::Plus,
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.flips == 0 {
            write!(f, "Z^{}", self.dim)
        } else if self.flipped().len() == self.dim {
            write!(f, "Dinf^{}", self.dim)
        } else {
            write!(f, "Z^{} flips {:?}", self.dim, self.flipped())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// An element `(v, ε)`; `ε` is always `+1` on abelian carriers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    carrier: Carrier,
    translation: IVec,
    sign: Sign,
}

impl GroupElement {
    pub fn new(carrier: Carrier, translation: IVec, sign: Sign) -> Result<Self> {
        if translation.len() != carrier.dim {
            return Err(Error::DimensionMismatch { expected: carrier.dim, got: translation.len() });
        }
        if sign == Sign::Minus && !carrier.has_sign() {
            return Err(Error::Invalid("abelian carrier has no sign -1 elements".into()));
        }
        Ok(GroupElement { carrier, translation, sign })
    }

    pub(crate) fn raw(carrier: Carrier, translation: IVec, sign: Sign) -> Self {
        debug_assert_eq!(translation.len(), carrier.dim);
        GroupElement { carrier, translation, sign }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(carrier: Carrier, v: &[i64], sign: Sign) -> Result<Self> {
        Self::new(carrier, lattice::ivec(v), sign)
    }

    pub fn translation_of(carrier: Carrier, v: &[i64]) -> Self {
        Self::from_i64(carrier, v, Sign::Plus).expect("valid translation")
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn translation(&self) -> &[BigInt] {
        &self.translation
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.sign == Sign::Plus && lattice::is_zero(&self.translation)
    }

    /// `(v, ε)(w, δ) = (v + ε·w, εδ)`.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.carrier, other.carrier);
        let w = self.carrier.act(self.sign, &other.translation);
        GroupElement {
            carrier: self.carrier,
            translation: lattice::add(&self.translation, &w),
            sign: self.sign.mul(other.sign),
        }
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.carrier != other.carrier {
            return Err(Error::MixedCarriers);
        }
        Ok(self.mul(other))
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            carrier: self.carrier,
            translation: lattice::neg(&self.carrier.act(self.sign, &self.translation)),
            sign: self.sign,
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: &BigInt) -> GroupElement {
        let base = if n.is_negative() { self.inverse() } else { self.clone() };
        let n = n.abs();
        match base.sign {
            Sign::Plus => GroupElement {
                carrier: self.carrier,
                translation: base.translation.iter().map(|x| x * &n).collect(),
                sign: Sign::Plus,
            },
            Sign::Minus => {
                // (v,-)^2 = (v + σv, +)
                let square = base.mul(&base);
                let half: BigInt = &n / 2;
                let even = square.pow(&half);
                if (&n % 2u8).is_zero() {
                    even
                } else {
                    even.mul(&base)
                }
            }
        }
    }

    /// Max-norm of the translation part.
    pub fn norm(&self) -> BigInt {
        self.translation.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Sort key of the fixed enumeration order: max-norm, then
    /// lexicographic translation, then `+1` before `-1`.
    pub fn ball_key(&self) -> (BigInt, &[BigInt], Sign) {
        (self.norm(), &self.translation, self.sign)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.translation.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        if self.carrier.has_sign() {
            write!(f, ";{}", if self.sign == Sign::Plus { "+" } else { "-" })?;
        }
        write!(f, ")")
    }
}

/// Item of a word passed to [`eval_term`].
#[derive(Clone, Debug)]
pub enum WordItem {
    Element(GroupElement),
    /// Inverts the element that follows.
    Inv,
}

/// Evaluates a word of elements and inversion markers; the empty word is the
/// identity of `carrier`.
pub fn eval_term(carrier: Carrier, word: &[WordItem]) -> Result<GroupElement> {
    let mut acc = carrier.identity();
    let mut invert = false;
    for item in word {
        match item {
            WordItem::Inv => invert = !invert,
            WordItem::Element(g) => {
                if g.carrier != carrier {
                    return Err(Error::MixedCarriers);
                }
                let g = if invert { g.inverse() } else { g.clone() };
                acc = acc.mul(&g);
                invert = false;
            }
        }
    }
    Ok(acc)
}
