//! Ocneanu's trace on `H_n(z)` and the framed / oriented Homfly polynomials
//! of braid closures.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::braid::{BraidWord, Permutation};
use crate::error::Result;
use crate::hecke::HeckeElement;
use crate::poly::{LaurentPoly2, Var, VZ, ZT};

/// Which extreme of the MFW window: lower (`v^{1-n}`, left) or upper
/// (`v^{n-1}`, right).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" | "lower" | "left" => Ok(Side::Left),
            "R" | "r" | "upper" | "right" => Ok(Side::Right),
            _ => Err(crate::Error::Parse(format!("side must be L|R|lower|upper, got {s:?}"))),
        }
    }
}

/// `Tr(h) ∈ Z[z, T]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracePoly {
    pub n: usize,
    pub value: LaurentPoly2,
}

impl TracePoly {
    /// `Σ_k T^k f_k(z)` evaluated at `T = t`, where `t` is a `Z[z]` value
    /// given as `z^t_exp` (so `T = z` is `Some(1)` and `T = 0` is `None`).
    pub fn eval_t(&self, t_exp: Option<i32>) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero(ZT);
        for (a, k, c) in self.value.terms() {
            match t_exp {
                Some(e) => out.add_term(a + e * k, 0, c.clone()),
                None if k == 0 => out.add_term(a, 0, c.clone()),
                None => {}
            }
        }
        out
    }
}

/// Framed Homfly polynomial `H_β(v, z)` on `n` strands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramedHomfly {
    pub n: usize,
    pub value: LaurentPoly2,
}

static FRAMED_CHECKS: AtomicU64 = AtomicU64::new(0);

/// Number of framed Homfly values whose MFW window and parity have been
/// asserted in this process.
pub fn framed_checks_performed() -> u64 {
    FRAMED_CHECKS.load(Ordering::Relaxed)
}

impl FramedHomfly {
    /// Panics if the value leaves the window `[1-n, n-1]` or has a
    /// `v`-exponent of the wrong parity; both are theorems, so a violation
    /// is a bug.
    fn new(n: usize, value: LaurentPoly2) -> Self {
        let h = FramedHomfly { n, value };
        assert!(mfw_window_check(&h), "MFW window violated on {n} strands: {}", h.value);
        assert!(parity_check(&h), "v-parity violated on {n} strands: {}", h.value);
        FRAMED_CHECKS.fetch_add(1, Ordering::Relaxed);
        h
    }

    /// Wrap an arbitrary value without the window assertion.
    pub fn unchecked(n: usize, value: LaurentPoly2) -> Self {
        FramedHomfly { n, value }
    }
}

type TraceCache = RwLock<HashMap<Permutation, LaurentPoly2>>;

fn cache() -> &'static TraceCache {
    static CACHE: OnceLock<TraceCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Tr(ω_π)`, memoized across the process.
///
/// With `j = π(n) < n`, `ω_π = ω_ρ·σ_{n-1}σ_{n-2}⋯σ_j` with `ρ ∈ S_{n-1}` and
/// lengths adding up, so the Markov property gives
/// `Tr(ω_π) = T·Tr(ω_ρ·σ_{n-2}⋯σ_j)` computed in `H_{n-1}`.
pub fn trace_of_basis(pi: &Permutation) -> LaurentPoly2 {
    if let Some(v) = cache().read().expect("trace cache poisoned").get(pi) {
        return v.clone();
    }
    let value = compute_trace_of_basis(pi);
    cache().write().expect("trace cache poisoned").entry(pi.clone()).or_insert_with(|| value.clone());
    value
}

fn compute_trace_of_basis(pi: &Permutation) -> LaurentPoly2 {
    let n = pi.n();
    if n <= 1 {
        return LaurentPoly2::one(ZT);
    }
    if let Some(rest) = pi.restrict() {
        return trace_of_basis(&rest);
    }
    let j = pi.apply(n);
    let rho = (j..n).fold(pi.clone(), |p, i| p.left_mul_simple(i));
    let rho = rho.restrict().expect("coset representative fixes n");
    let mut inner = HeckeElement::basis(rho);
    for i in (j..=n - 2).rev() {
        inner = inner.mul_gen(i as i32).expect("generator index below n-1");
    }
    trace_linear(&inner).shift(0, 1)
}

fn trace_linear(h: &HeckeElement) -> LaurentPoly2 {
    let mut out = LaurentPoly2::zero(ZT);
    for (pi, c) in h.iter() {
        out.add_assign_ref(&(c * &trace_of_basis(pi)));
    }
    out
}

pub fn ocneanu_trace(h: &HeckeElement) -> TracePoly {
    let value = trace_linear(h);
    debug_assert!(value.max_exponent(Var::T).unwrap_or(0) < h.n().max(1) as i32);
    TracePoly { n: h.n(), value }
}

/// `H = ((v^{-1} - v)/z)^{n-1} · Tr|_{T = z/(1 - v²)}`, evaluated termwise as
/// `Σ_k v^{1-n} (1 - v²)^{n-1-k} z^{k-n+1} f_k(z)` for `Tr = Σ_k T^k f_k`.
pub fn framed_homfly_of_trace(tr: &TracePoly) -> FramedHomfly {
    let n = tr.n.max(1) as i32;
    let one_minus_v2 = LaurentPoly2::from_terms(VZ, [(0, 0, 1), (2, 0, -1)]);
    let mut powers = vec![LaurentPoly2::one(VZ)];
    for k in 1..n as usize {
        let next = &powers[k - 1] * &one_minus_v2;
        powers.push(next);
    }
    let mut out = LaurentPoly2::zero(VZ);
    for (a, k, c) in tr.value.terms() {
        assert!(k < n, "trace has T-degree {k} on {n} strands");
        let factor = powers[(n - 1 - k) as usize].shift(1 - n, a + k - n + 1).scale(c);
        out.add_assign_ref(&factor);
    }
    FramedHomfly::new(tr.n.max(1), out)
}

pub fn framed_homfly_of(h: &HeckeElement) -> FramedHomfly {
    framed_homfly_of_trace(&ocneanu_trace(h))
}

pub fn framed_homfly(w: &BraidWord) -> FramedHomfly {
    framed_homfly_of(&HeckeElement::from_braid(w))
}

/// Oriented Homfly polynomial `P = v^{exponent sum} · H` of the closure.
pub fn homfly_p(w: &BraidWord) -> LaurentPoly2 {
    let h = framed_homfly(w);
    h.value.shift(w.exponent_sum() as i32, 0)
}

/// Lower: `z^{n-1}·[v^{1-n}]H`. Upper: `(-z)^{n-1}·[v^{n-1}]H`. Always in `Z[z]`.
pub fn extremal_column_of_framed(h: &FramedHomfly, side: Side) -> LaurentPoly2 {
    let n = h.n as i32;
    let (exp, sign) = match side {
        Side::Left => (1 - n, 1),
        Side::Right => (n - 1, if (n - 1) % 2 == 0 { 1 } else { -1 }),
    };
    let coeff = h.value.coeff_of(Var::V, exp).expect("v is a variable of H");
    let col = coeff
        .shift(0, n - 1)
        .scale(&sign.into())
        .remap(ZT)
        .expect("coefficient of a v-power has no v");
    assert!(
        col.min_exponent(Var::Z).is_none_or(|e| e >= 0),
        "extremal column left Z[z]: {col}"
    );
    col
}

pub fn extremal_column_of(h: &HeckeElement, side: Side) -> LaurentPoly2 {
    extremal_column_of_framed(&framed_homfly_of(h), side)
}

pub fn extremal_column(w: &BraidWord, side: Side) -> LaurentPoly2 {
    extremal_column_of(&HeckeElement::from_braid(w), side)
}

/// Every `v`-exponent lies in `[1-n, n-1]`.
pub fn mfw_window_check(h: &FramedHomfly) -> bool {
    let bound = h.n as i32 - 1;
    h.value.exponents(Var::V).into_iter().all(|e| -bound <= e && e <= bound)
}

/// Every `v`-exponent is congruent to `n-1` mod 2.
pub fn parity_check(h: &FramedHomfly) -> bool {
    let n = h.n as i32;
    h.value.exponents(Var::V).into_iter().all(|e| (e - (n - 1)).rem_euclid(2) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{braid_to_hecke, pos_perm_elt};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn word(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, n).unwrap()
    }

    fn zt(s: &str) -> LaurentPoly2 {
        LaurentPoly2::parse(s, ZT).unwrap()
    }

    fn vz(s: &str) -> LaurentPoly2 {
        LaurentPoly2::parse(s, VZ).unwrap()
    }

    fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
        let len = if n < 2 { 0 } else { rng.gen_range(0..=max_len) };
        let letters = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) { i } else { -i }
            })
            .collect();
        BraidWord::new(n, letters).unwrap()
    }

    fn tr(w: &BraidWord) -> LaurentPoly2 {
        ocneanu_trace(&braid_to_hecke(w)).value
    }

    #[test]
    fn trace_examples() {
        assert!(ocneanu_trace(&HeckeElement::unit(3)).value.is_one());
        assert_eq!(tr(&word("1", 2)), zt("T"));
        assert_eq!(tr(&word("1 1", 2)), zt("1 + z*T"));
        assert_eq!(tr(&word("1 2", 3)), zt("T^2"));
        assert_eq!(tr(&word("1 1 1", 2)), zt("z + T + z^2*T"));
    }

    #[test]
    fn framed_examples() {
        assert_eq!(framed_homfly(&word("1", 2)).value, vz("v^-1"));
        assert_eq!(framed_homfly(&BraidWord::empty(2)).value, vz("v^-1*z^-1 - v*z^-1"));
        assert!(framed_homfly(&BraidWord::empty(1)).value.is_one());
    }

    #[test]
    fn homfly_examples() {
        assert!(homfly_p(&word("1", 2)).is_one());
        assert_eq!(homfly_p(&word("1 1 1", 2)), vz("2*v^2 + v^2*z^2 - v^4"));
        assert!(homfly_p(&word("1 2", 3)).is_one());
        assert_eq!(homfly_p(&word("1 1", 2)), vz("v*z + v*z^-1 - v^3*z^-1"));
        // figure-eight knot, symmetric under v -> v^-1
        assert_eq!(homfly_p(&word("1 -2 1 -2", 3)), vz("v^-2 - 1 - z^2 + v^2"));
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_column(&word("1", 2), Side::Left), zt("z"));
        assert!(extremal_column(&word("-1", 2), Side::Left).is_zero());
        assert_eq!(extremal_column(&word("-1", 2), Side::Right), zt("-z"));
    }

    #[test]
    fn window_examples() {
        assert!(mfw_window_check(&FramedHomfly::unchecked(2, vz("v^-1"))));
        assert!(!mfw_window_check(&FramedHomfly::unchecked(2, vz("v^3"))));
        assert!(mfw_window_check(&framed_homfly(&word("1 1 1", 2))));
        assert!(!parity_check(&FramedHomfly::unchecked(2, vz("1"))));
    }

    #[test]
    fn shortcut_matches_extraction_on_basis() {
        for n in 1..=4 {
            for pi in Permutation::all(n) {
                let t = ocneanu_trace(&pos_perm_elt(&pi));
                let h = framed_homfly_of_trace(&t);
                assert_eq!(extremal_column_of_framed(&h, Side::Left), t.eval_t(Some(1)));
                assert_eq!(extremal_column_of_framed(&h, Side::Right), t.eval_t(None));
            }
        }
    }

    #[test]
    fn trace_is_central() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n = rng.gen_range(2..=4);
            let a = braid_to_hecke(&random_word(&mut rng, n, 6));
            let b = braid_to_hecke(&random_word(&mut rng, n, 6));
            assert_eq!(
                ocneanu_trace(&a.mul(&b).unwrap()),
                ocneanu_trace(&b.mul(&a).unwrap())
            );
            assert_eq!(ocneanu_trace(&a.star()), ocneanu_trace(&a));
        }
    }

    #[test]
    fn markov_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..60 {
            let n = rng.gen_range(2..=4);
            let x = random_word(&mut rng, n - 1, 5).embed(n).unwrap();
            let y = random_word(&mut rng, n - 1, 5).embed(n).unwrap();
            let with = x.concat(&BraidWord::new(n, vec![n as i32 - 1]).unwrap()).unwrap().concat(&y).unwrap();
            let without = x.concat(&y).unwrap();
            assert_eq!(tr(&with), tr(&without).shift(0, 1));
        }
    }

    #[test]
    fn homfly_is_a_closure_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let n = rng.gen_range(2..=4);
            let w = random_word(&mut rng, n, 6);
            let p = homfly_p(&w);
            assert_eq!(homfly_p(&w.stabilize(true)), p);
            assert_eq!(homfly_p(&w.stabilize(false)), p);
            let u = random_word(&mut rng, n, 4);
            let conj = u.concat(&w).unwrap().concat(&u.inverse()).unwrap();
            assert_eq!(homfly_p(&conj), p);
        }
    }

    #[test]
    fn window_and_parity_on_short_words() {
        for n in 2..=3usize {
            let letters: Vec<i32> = (1..n as i32).flat_map(|i| [i, -i]).collect();
            let mut frontier = vec![Vec::<i32>::new()];
            for _ in 0..=6 {
                let mut next = Vec::new();
                for w in &frontier {
                    let h = framed_homfly(&BraidWord::new(n, w.clone()).unwrap());
                    assert!(mfw_window_check(&h) && parity_check(&h));
                    for &l in &letters {
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
                frontier = next;
            }
        }
    }
}
