//! The Hecke algebra `H_n(z)` as a free `Z[z]`-module on the positive
//! permutation braids `ω_π`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly2, ZT};

/// A `Z[z]`-linear combination of positive permutation braids.
///
/// Coefficients are `LaurentPoly2` over `(z, T)` with no `T` and no negative
/// `z` exponents; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    coeffs: BTreeMap<Permutation, LaurentPoly2>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, coeffs: BTreeMap::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    /// The basis element `ω_π`.
    pub fn basis(pi: Permutation) -> Self {
        let n = pi.n();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(pi, LaurentPoly2::one(ZT));
        HeckeElement { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, pi: &Permutation) -> LaurentPoly2 {
        self.coeffs.get(pi).cloned().unwrap_or_else(|| LaurentPoly2::zero(ZT))
    }

    /// `(π, coefficient)` pairs in lexicographic order of `π`.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly2)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, pi: Permutation, c: &LaurentPoly2) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(pi.n(), self.n);
        match self.coeffs.get_mut(&pi) {
            Some(cur) => {
                cur.add_assign_ref(c);
                if cur.is_zero() {
                    self.coeffs.remove(&pi);
                }
            }
            None => {
                self.coeffs.insert(pi, c.clone());
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (pi, c) in &other.coeffs {
            out.add_term(pi.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&LaurentPoly2::constant(ZT, -1)))
    }

    /// Multiply every coefficient by a `Z[z]` scalar.
    pub fn scale(&self, k: &LaurentPoly2) -> Self {
        let mut out = Self::zero(self.n);
        for (pi, c) in &self.coeffs {
            out.add_term(pi.clone(), &(c * k));
        }
        out
    }

    /// Right multiplication by `σ_i^±1`, where `letter = ±i`.
    pub fn mul_gen(&self, letter: i32) -> Result<Self> {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(self.mul_gen_unchecked(i, letter > 0))
    }

    fn mul_gen_unchecked(&self, i: usize, positive: bool) -> Self {
        let z = LaurentPoly2::z_pow(1);
        let mut out = Self::zero(self.n);
        for (pi, c) in &self.coeffs {
            let next = pi.left_mul_simple(i);
            let shrinks = pi.has_left_descent(i);
            out.add_term(next, c);
            // ω_π σ_i = ω_{s_i π} + z ω_π when the length drops;
            // ω_π σ_i^{-1} = ω_{s_i π} - z ω_π when it grows.
            match (shrinks, positive) {
                (true, true) => out.add_term(pi.clone(), &(c * &z)),
                (false, false) => out.add_term(pi.clone(), &-(c * &z)),
                _ => {}
            }
        }
        out
    }

    /// Right multiplication by a whole braid word.
    pub fn mul_word(&self, w: &BraidWord) -> Result<Self> {
        if w.n() != self.n {
            return Err(Error::StrandMismatch(self.n, w.n()));
        }
        Ok(w.letters().iter().fold(self.clone(), |h, &l| {
            h.mul_gen_unchecked(l.unsigned_abs() as usize, l > 0)
        }))
    }

    pub fn from_braid(w: &BraidWord) -> Self {
        Self::unit(w.n()).mul_word(w).expect("strand counts agree")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (kappa, c) in &other.coeffs {
            let mut part = self.clone();
            for i in kappa.reduced_word() {
                part = part.mul_gen_unchecked(i, true);
            }
            for (pi, d) in &part.coeffs {
                out.add_term(pi.clone(), &(d * c));
            }
        }
        Ok(out)
    }

    /// The reversal anti-automorphism: `ω_π ↦ ω_{π^{-1}}`.
    pub fn star(&self) -> Self {
        HeckeElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(pi, c)| (pi.inverse(), c.clone())).collect(),
        }
    }
}

pub fn braid_to_hecke(w: &BraidWord) -> HeckeElement {
    HeckeElement::from_braid(w)
}

pub fn hecke_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    a.mul(b)
}

/// `ω_π`.
pub fn pos_perm_elt(pi: &Permutation) -> HeckeElement {
    HeckeElement::basis(pi.clone())
}

/// The image of the negative permutation braid `ν_π`.
pub fn neg_perm_elt(pi: &Permutation) -> HeckeElement {
    HeckeElement::from_braid(&BraidWord::permutation_braid(pi, false))
}

pub fn star_elt(h: &HeckeElement) -> HeckeElement {
    h.star()
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (pi, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*w{pi}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct JsonTerm<'a> {
    perm: &'a Permutation,
    coeff: &'a LaurentPoly2,
}

/// `[{"perm": [..], "coeff": <poly>}, ...]`, sorted by permutation.
impl Serialize for HeckeElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (perm, coeff) in &self.coeffs {
            seq.serialize_element(&JsonTerm { perm, coeff })?;
        }
        seq.end()
    }
}

/// Solve `h = Σ c_π ν_π` by back-substitution in decreasing length.
///
/// `ν_π = ω_π + (terms of smaller length)`, so the change of basis is
/// unitriangular. This is the linear-algebra route to the negative-basis
/// expansion, kept independent of the trace.
pub fn solve_in_neg_basis(h: &HeckeElement) -> BTreeMap<Permutation, LaurentPoly2> {
    let mut rest = h.clone();
    let mut out = BTreeMap::new();
    while let Some((pi, c)) = rest
        .coeffs
        .iter()
        .max_by(|(p, _), (q, _)| p.inversions().cmp(&q.inversions()).then_with(|| p.cmp(q)))
        .map(|(p, c)| (p.clone(), c.clone()))
    {
        let nu = neg_perm_elt(&pi).scale(&c);
        rest = rest.try_sub(&nu).expect("same strand count");
        out.insert(pi, c);
    }
    out
}
