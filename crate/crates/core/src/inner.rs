//! Left and right inner products on `H_n(z)`, Gram matrices, the
//! negative-basis expansion, and the MFW sharpness predicate.
//!
//! `⟨a, b⟩_L` is the lower extremal column of `a·b*`, `⟨a, b⟩_R` the upper
//! one. Writing `Tr(a·b*) = Σ_k T^k f_k(z)`, the closed form of the framed
//! Homfly polynomial gives the shortcuts `⟨a, b⟩_L = Tr|_{T=z}` and
//! `⟨a, b⟩_R = Tr|_{T=0}`; every evaluation computes both routes and asserts
//! that they agree.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::hecke::{neg_perm_elt, pos_perm_elt, HeckeElement};
use crate::poly::{LaurentPoly2, ZT};
use crate::trace::{extremal_column_of_framed, framed_homfly_of_trace, ocneanu_trace, Side};

/// Default bound on `n` for `n!`-sized computations.
pub const DEFAULT_MAX_N: usize = 6;

/// Reads `BRAIDFORMS_MAX_N`, falling back to [`DEFAULT_MAX_N`].
pub fn configured_max_n() -> usize {
    std::env::var("BRAIDFORMS_MAX_N")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

/// A value of an inner product: an element of `Z[z]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct InnerValue(LaurentPoly2);

impl InnerValue {
    fn new(p: LaurentPoly2) -> Self {
        debug_assert_eq!(p.vars(), ZT);
        assert!(
            p.terms().all(|(a, b, _)| a >= 0 && b == 0),
            "inner product value outside Z[z]: {p}"
        );
        InnerValue(p)
    }

    pub fn poly(&self) -> &LaurentPoly2 {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly2 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for InnerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Positive permutation braids `ω_π`.
    Pos,
    /// Negative permutation braids `ν_π`.
    Neg,
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos" | "omega" => Ok(Basis::Pos),
            "neg" | "nu" => Ok(Basis::Neg),
            _ => Err(Error::Parse(format!("basis must be pos|neg, got {s:?}"))),
        }
    }
}

impl Basis {
    pub fn element(self, pi: &Permutation) -> HeckeElement {
        match self {
            Basis::Pos => pos_perm_elt(pi),
            Basis::Neg => neg_perm_elt(pi),
        }
    }
}

/// `⟨a, b⟩` on the given side, bilinear over `Z[z]`.
pub fn inner(a: &HeckeElement, b: &HeckeElement, side: Side) -> Result<InnerValue> {
    let prod = a.mul(&b.star())?;
    let tr = ocneanu_trace(&prod);
    let shortcut = match side {
        Side::Left => tr.eval_t(Some(1)),
        Side::Right => tr.eval_t(None),
    };
    let extracted = extremal_column_of_framed(&framed_homfly_of_trace(&tr), side);
    assert_eq!(shortcut, extracted, "trace shortcut disagrees with coefficient extraction");
    Ok(InnerValue::new(shortcut))
}

pub fn inner_words(a: &BraidWord, b: &BraidWord, side: Side) -> Result<InnerValue> {
    if a.n() != b.n() {
        return Err(Error::StrandMismatch(a.n(), b.n()));
    }
    inner(&HeckeElement::from_braid(a), &HeckeElement::from_braid(b), side)
}

/// `M[π][κ] = ⟨e_π, e_κ⟩`, permutations in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gram {
    pub n: usize,
    pub basis: Basis,
    pub side: Side,
    pub perms: Vec<Permutation>,
    pub matrix: Vec<Vec<InnerValue>>,
}

impl Gram {
    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    /// Determinant over `Z[z]` by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> InnerValue {
        let mut m: Vec<Vec<LaurentPoly2>> =
            self.matrix.iter().map(|row| row.iter().map(|x| x.0.clone()).collect()).collect();
        let size = m.len();
        let mut sign = 1i64;
        let mut prev = LaurentPoly2::one(ZT);
        for k in 0..size {
            if m[k][k].is_zero() {
                match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return InnerValue::new(LaurentPoly2::zero(ZT)),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let det = if size == 0 { LaurentPoly2::one(ZT) } else { m[size - 1][size - 1].clone() };
        InnerValue::new(det.scale(&sign.into()))
    }
}

pub fn gram(n: usize, basis: Basis, side: Side) -> Result<Gram> {
    gram_with_limit(n, basis, side, configured_max_n())
}

pub fn gram_with_limit(n: usize, basis: Basis, side: Side, max_n: usize) -> Result<Gram> {
    if n > max_n {
        return Err(Error::BoundExceeded { n, max: max_n });
    }
    let perms = Permutation::all(n);
    let elements: Vec<HeckeElement> = perms.iter().map(|p| basis.element(p)).collect();
    let matrix = elements
        .par_iter()
        .map(|a| elements.iter().map(|b| inner(a, b, side)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Gram { n, basis, side, perms, matrix })
}

/// Coefficients `c_π = ⟨h, ν_π⟩_L` of `h = Σ c_π ν_π`; zero coefficients
/// are omitted.
pub fn expand_in_neg_basis(h: &HeckeElement) -> BTreeMap<Permutation, InnerValue> {
    Permutation::all(h.n())
        .into_par_iter()
        .map(|pi| {
            let c = inner(h, &neg_perm_elt(&pi), Side::Left).expect("same strand count");
            (pi, c)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

pub fn reconstruct_from_neg_basis(n: usize, coeffs: &BTreeMap<Permutation, InnerValue>) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero(n);
    for (pi, c) in coeffs {
        if pi.n() != n {
            return Err(Error::StrandMismatch(n, pi.n()));
        }
        out = out.try_add(&neg_perm_elt(pi).scale(c.poly()))?;
    }
    Ok(out)
}

/// Whether the MFW estimate on `side` is attained by `w`, i.e. the extremal
/// column is nonzero. Cross-checked against `⟨w, 1⟩ ≠ 0`.
pub fn mfw_sharp(w: &BraidWord, side: Side) -> bool {
    let h = HeckeElement::from_braid(w);
    let tr = ocneanu_trace(&h);
    let column = extremal_column_of_framed(&framed_homfly_of_trace(&tr), side);
    let with_unit = inner(&h, &HeckeElement::unit(w.n()), side).expect("same strand count");
    assert_eq!(
        column.is_zero(),
        with_unit.is_zero(),
        "sharpness and orthogonality to the unit disagree for {w}"
    );
    !column.is_zero()
}
