//! Sparse Laurent polynomials in two named variables with arbitrary-precision
//! integer coefficients.
//!
//! The same type carries `Z[z]` values (variables `(z, T)` with the `T`
//! exponent zero), trace values in `Z[z, T]`, and framed/oriented Homfly
//! polynomials in `Z[v^±1, z^±1]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    V,
    Z,
    T,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::V => "v",
            Var::Z => "z",
            Var::T => "T",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "v" => Some(Var::V),
            "z" => Some(Var::Z),
            "T" => Some(Var::T),
            _ => None,
        }
    }
}

/// Variables of `Z[z]` and `Z[z, T]` values.
pub const ZT: (Var, Var) = (Var::Z, Var::T);
/// Variables of Homfly polynomials.
pub const VZ: (Var, Var) = (Var::V, Var::Z);

/// A Laurent polynomial `Σ c·x^a·y^b` over the integers.
///
/// Terms are kept in a `BTreeMap` keyed by `(a, b)`; zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    vars: (Var, Var),
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero(vars: (Var, Var)) -> Self {
        LaurentPoly2 { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: (Var, Var)) -> Self {
        Self::monomial(vars, 0, 0, 1)
    }

    pub fn constant(vars: (Var, Var), c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, 0, 0, c)
    }

    pub fn monomial(vars: (Var, Var), a: i32, b: i32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(a, b, c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(
        vars: (Var, Var),
        terms: impl IntoIterator<Item = (i32, i32, C)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (a, b, c) in terms {
            p.add_term(a, b, c.into());
        }
        p
    }

    /// `z^k` as an element of `Z[z]`.
    pub fn z_pow(k: i32) -> Self {
        Self::monomial(ZT, k, 0, 1)
    }

    pub fn vars(&self) -> (Var, Var) {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: ascending first exponent, then second.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &BigInt)> + '_ {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, a: i32, b: i32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, a: i32, b: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn slot(&self, var: Var) -> Option<usize> {
        if self.vars.0 == var {
            Some(0)
        } else if self.vars.1 == var {
            Some(1)
        } else {
            None
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch(self.vars.0, self.vars.1, other.vars.0, other.vars.1))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// In-place `self += other`. Panics on a variable mismatch.
    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable mismatch in polynomial addition");
        for (&(a, b), c) in &other.terms {
            self.add_term(a, b, c.clone());
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.vars);
        }
        LaurentPoly2 {
            vars: self.vars,
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Multiply by the monomial `x^da · y^db`.
    pub fn shift(&self, da: i32, db: i32) -> Self {
        LaurentPoly2 {
            vars: self.vars,
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + da, b + db), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The coefficient of `var^k`, as a polynomial in the remaining variable
    /// (same variable pair, `var` exponent zero).
    pub fn coeff_of(&self, var: Var, k: i32) -> Result<Self> {
        let slot = self.slot(var).ok_or(Error::VarDropped(var))?;
        let mut out = Self::zero(self.vars);
        for (&(a, b), c) in &self.terms {
            match slot {
                0 if a == k => out.add_term(0, b, c.clone()),
                1 if b == k => out.add_term(a, 0, c.clone()),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Exponents of `var` that occur with a nonzero coefficient.
    pub fn exponents(&self, var: Var) -> Vec<i32> {
        let mut es: Vec<i32> = match self.slot(var) {
            Some(0) => self.terms.keys().map(|&(a, _)| a).collect(),
            Some(_) => self.terms.keys().map(|&(_, b)| b).collect(),
            None => vec![0],
        };
        es.sort_unstable();
        es.dedup();
        if self.is_zero() {
            es.clear();
        }
        es
    }

    pub fn min_exponent(&self, var: Var) -> Option<i32> {
        self.exponents(var).first().copied()
    }

    pub fn max_exponent(&self, var: Var) -> Option<i32> {
        self.exponents(var).last().copied()
    }

    /// Re-express over another variable pair. Every variable with a nonzero
    /// exponent must occur in `vars`.
    pub fn remap(&self, vars: (Var, Var)) -> Result<Self> {
        let place = |v: Var| -> Option<usize> {
            if vars.0 == v {
                Some(0)
            } else if vars.1 == v {
                Some(1)
            } else {
                None
            }
        };
        let mut out = Self::zero(vars);
        for (&(a, b), c) in &self.terms {
            let mut e = [0i32; 2];
            for (var, x) in [(self.vars.0, a), (self.vars.1, b)] {
                if x == 0 {
                    continue;
                }
                let i = place(var).ok_or(Error::VarDropped(var))?;
                e[i] += x;
            }
            out.add_term(e[0], e[1], c.clone());
        }
        Ok(out)
    }

    /// Exact division of univariate polynomials in the first variable
    /// (second exponent zero everywhere, no negative exponents). Returns
    /// `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || self.vars != divisor.vars {
            return None;
        }
        let univariate = |p: &Self| p.terms.keys().all(|&(a, b)| b == 0 && a >= 0);
        if !univariate(self) || !univariate(divisor) {
            return None;
        }
        let (&(dd, _), lead) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars);
        while let Some((&(rd, _), rc)) = rem.terms.iter().next_back() {
            if rd < dd {
                return None;
            }
            if !(rc % lead).is_zero() {
                return None;
            }
            let q = rc / lead;
            let step = Self::monomial(self.vars, rd - dd, 0, q);
            rem = &rem - &(&step * divisor);
            quot.add_assign_ref(&step);
        }
        Some(quot)
    }

    /// Parse the canonical text format, e.g. `2*v^2 + v^2*z^2 - v^4`.
    pub fn parse(text: &str, vars: (Var, Var)) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero(vars);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        chunks.push((neg, cur));

        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let mut coeff = BigInt::one();
            let mut exps = [0i32; 2];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {chunk:?}")));
                }
                if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    let c: BigInt = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                    coeff *= c;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((name, e)) => {
                        let e: i32 =
                            e.parse().map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                        (name, e)
                    }
                    None => (factor, 1),
                };
                let var = Var::from_name(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                if var == vars.0 {
                    exps[0] += exp;
                } else if var == vars.1 {
                    exps[1] += exp;
                } else {
                    return Err(Error::Parse(format!("variable {name:?} not in {vars:?}")));
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(exps[0], exps[1], coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (var, e) in [(self.vars.0, a), (self.vars.1, b)] {
                match e {
                    0 => {}
                    1 => factors.push(var.name().to_string()),
                    _ => factors.push(format!("{}^{}", var.name(), e)),
                }
            }
            let mag = c.abs();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: Self) -> LaurentPoly2 {
        self.try_add(rhs).expect("variable mismatch in polynomial addition")
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: Self) -> LaurentPoly2 {
        self.try_sub(rhs).expect("variable mismatch in polynomial subtraction")
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: Self) -> LaurentPoly2 {
        self.try_mul(rhs).expect("variable mismatch in polynomial multiplication")
    }
}

impl Add for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(mut self, rhs: Self) -> LaurentPoly2 {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: Self) -> LaurentPoly2 {
        &self - &rhs
    }
}

impl Mul for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: Self) -> LaurentPoly2 {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            vars: self.vars,
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        -&self
    }
}

// JSON: {"vars": ["v", "z"], "terms": [[a, b, c], ...]}. Coefficients that
// fit in an i64 are JSON numbers, larger ones decimal strings.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Int(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: [String; 2],
    terms: Vec<(i32, i32, JsonCoeff)>,
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                let c = match c.to_i64() {
                    Some(x) => JsonCoeff::Int(x),
                    None => JsonCoeff::Big(c.to_string()),
                };
                (a, b, c)
            })
            .collect();
        JsonPoly {
            vars: [self.vars.0.name().to_string(), self.vars.1.name().to_string()],
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonPoly::deserialize(deserializer)?;
        let var = |s: &str| Var::from_name(s).ok_or_else(|| D::Error::custom(format!("unknown variable {s:?}")));
        let vars = (var(&raw.vars[0])?, var(&raw.vars[1])?);
        let mut p = LaurentPoly2::zero(vars);
        for (a, b, c) in raw.terms {
            let c = match c {
                JsonCoeff::Int(x) => BigInt::from(x),
                JsonCoeff::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            p.add_term(a, b, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, vars: (Var, Var)) -> LaurentPoly2 {
        LaurentPoly2::parse(s, vars).unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((&p("z", ZT) + &p("-z", ZT)).is_zero());
        assert_eq!(&p("1 + z^2", ZT) + &p("z^2", ZT), p("1 + 2*z^2", ZT));
        let s = &p("v^-1", VZ) + &p("v", VZ);
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "v^-1 + v");
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("v^-1 - v", VZ) * &p("v", VZ), p("1 - v^2", VZ));
        assert!((&p("z", ZT) * &p("z^-1", ZT)).is_one());
        assert_eq!(&p("1 + z*T", ZT) * &LaurentPoly2::one(ZT), p("1 + z*T", ZT));
    }

    #[test]
    fn var_mismatch_is_an_error() {
        let a = p("z", ZT);
        let b = p("v", VZ);
        assert!(matches!(a.try_add(&b), Err(Error::VarMismatch(..))));
        assert!(matches!(a.try_mul(&b), Err(Error::VarMismatch(..))));
    }

    #[test]
    fn coeff_of_examples() {
        let h = p("v^-1 + v^-1*z^2", VZ);
        assert_eq!(h.coeff_of(Var::V, -1).unwrap(), p("1 + z^2", VZ));
        assert_eq!(p("z*T^2", ZT).coeff_of(Var::T, 2).unwrap(), p("z", ZT));
        assert!(LaurentPoly2::one(VZ).coeff_of(Var::V, 3).unwrap().is_zero());
    }

    #[test]
    fn render_format() {
        assert_eq!(p("2*v^2 + v^2*z^2 - v^4", VZ).to_string(), "2*v^2 + v^2*z^2 - v^4");
        assert_eq!(p("-v^4 + 2*v^2", VZ).to_string(), "2*v^2 - v^4");
        assert_eq!(p("-1", ZT).to_string(), "-1");
        assert_eq!(LaurentPoly2::zero(ZT).to_string(), "0");
        assert_eq!(p("v*z + v*z^-1 - v^3*z^-1", VZ).to_string(), "v*z^-1 + v*z - v^3*z^-1");
    }

    #[test]
    fn remap_to_other_pair() {
        let h = p("1 + 3*z^2", VZ);
        assert_eq!(h.remap(ZT).unwrap(), p("1 + 3*z^2", ZT));
        assert!(p("v", VZ).remap(ZT).is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("1 + z", ZT);
        let b = p("2 - z + z^3", ZT);
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
        assert!(p("z^2 + 1", ZT).div_exact(&p("z", ZT)).is_none());
    }

    #[test]
    fn big_coefficients_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let q = LaurentPoly2::monomial(VZ, -3, 2, big);
        let js = serde_json::to_string(&q).unwrap();
        let back: LaurentPoly2 = serde_json::from_str(&js).unwrap();
        assert_eq!(back, q);
        assert_eq!(
            serde_json::to_string(&p("1 - z^2", ZT)).unwrap(),
            r#"{"vars":["z","T"],"terms":[[0,0,1],[2,0,-1]]}"#
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly2> {
        prop::collection::vec((-3i32..4, -3i32..4, -5i64..6), 0..6)
            .prop_map(|ts| LaurentPoly2::from_terms(VZ, ts))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!(p.terms().all(|(_, _, c)| !c.is_zero()));
        }

        #[test]
        fn text_and_json_round_trip(p in arb_poly()) {
            prop_assert_eq!(LaurentPoly2::parse(&p.to_string(), VZ).unwrap(), p.clone());
            let js = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPoly2>(&js).unwrap(), p);
        }
    }
}
