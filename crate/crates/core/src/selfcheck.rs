//! Theorem-reproduction suite shared by the `selfcheck` subcommand and the
//! acceptance tests. Every check is exact and deterministic given a seed.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{BraidWord, Permutation};
use crate::error::Error;
use crate::front::{
    closure_pos_braid, closure_two_perms, pos_braid_word, ruling_polynomial, validate_and_orient,
};
use crate::hecke::{neg_perm_elt, pos_perm_elt, HeckeElement};
use crate::inner::{expand_in_neg_basis, gram, inner, inner_words, reconstruct_from_neg_basis, Basis};
use crate::poly::{LaurentPoly2, Var, VZ, ZT};
use crate::skein::{braid_closure_pd, skein_homfly};
use crate::trace::{
    extremal_column, framed_checks_performed, framed_homfly, homfly_p, mfw_window_check, ocneanu_trace,
    parity_check, Side,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::Parse(format!("unknown level {s:?}, expected quick or full"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub elapsed_ms: u128,
    pub budget_ms: Option<u128>,
    pub detail: String,
}

impl CheckReport {
    pub fn within_budget(&self) -> bool {
        self.budget_ms.is_none_or(|b| self.elapsed_ms <= b)
    }
}

impl CheckReport {
    /// Elapsed time and budget, kept out of `Display` so reports render
    /// identically across runs.
    pub fn timing(&self) -> String {
        match self.budget_ms {
            Some(b) => format!("{} ms, budget {b} ms", self.elapsed_ms),
            None => format!("{} ms", self.elapsed_ms),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed && self.within_budget() { "PASS" } else { "FAIL" };
        write!(f, "{status} [{:>2}] {}: {} cases", self.id, self.name, self.cases)?;
        if !self.within_budget() {
            write!(f, " (over budget: {})", self.timing())?;
        }
        if !self.detail.is_empty() {
            write!(f, "; {}", self.detail)?;
        }
        Ok(())
    }
}

/// Outcome of a check body: number of cases and the first failure, if any.
struct Outcome {
    cases: usize,
    failure: Option<String>,
    note: String,
}

impl Outcome {
    fn new(cases: usize, failure: Option<String>) -> Self {
        Outcome { cases, failure, note: String::new() }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

fn run(id: u32, name: &'static str, budget: Option<Duration>, body: impl FnOnce() -> Outcome) -> CheckReport {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed_ms = start.elapsed().as_millis();
    let budget_ms = budget.map(|d| d.as_millis());
    match result {
        Ok(o) => {
            let detail = match &o.failure {
                Some(f) if o.note.is_empty() => format!("counterexample: {f}"),
                Some(f) => format!("{}; counterexample: {f}", o.note),
                None => o.note,
            };
            CheckReport { id, name, passed: o.failure.is_none(), cases: o.cases, elapsed_ms, budget_ms, detail }
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            CheckReport { id, name, passed: false, cases: 0, elapsed_ms, budget_ms, detail: format!("panicked: {msg}") }
        }
    }
}

fn rng_for(seed: u64, id: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(id) << 48))
}

/// First failing case in input order.
fn first_failure<T: Sync>(cases: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> Option<String> {
    cases.par_iter().find_map_first(f)
}

fn z_pow(k: i32) -> LaurentPoly2 {
    LaurentPoly2::monomial(ZT, k, 0, 1)
}

fn max_n(level: Level) -> usize {
    match level {
        Level::Quick => 3,
        Level::Full => 4,
    }
}

fn gram_identity(id: u32, name: &'static str, level: Level, basis: Basis, side: Side) -> CheckReport {
    run(id, name, Some(Duration::from_secs(60)), || {
        let mut cases = 0;
        for n in 2..=max_n(level) {
            let g = gram(n, basis, side).expect("n within bound");
            cases += g.matrix.len() * g.matrix.len();
            if !g.is_identity() {
                return Outcome::new(cases, Some(format!("Gram matrix for n = {n} is not the identity")));
            }
        }
        Outcome::new(cases, None).note(format!("n = 2..={}", max_n(level)))
    })
}

/// Check 1: `⟨ν_π, ν_κ⟩_L = δ_{πκ}`.
pub fn check_neg_orthonormality(level: Level) -> CheckReport {
    gram_identity(1, "negative permutation braids are orthonormal (left)", level, Basis::Neg, Side::Left)
}

/// Check 2: `⟨ω_π, ω_κ⟩_R = δ_{πκ}`.
pub fn check_pos_orthonormality(level: Level) -> CheckReport {
    gram_identity(2, "positive permutation braids are orthonormal (right)", level, Basis::Pos, Side::Right)
}

/// Check 3: `Σ_π ⟨β, ν_π⟩_L ν_π = β` in `H_n`.
pub fn check_expansion(level: Level, seed: u64) -> CheckReport {
    run(3, "expansion in the negative basis recovers the braid", None, || {
        let count = if level == Level::Full { 200 } else { 40 };
        let mut rng = rng_for(seed, 3);
        let words: Vec<BraidWord> = (0..count).map(|k| BraidWord::random(&mut rng, 3 + k % 2, 8, false)).collect();
        let failure = first_failure(&words, |w| {
            let h = HeckeElement::from_braid(w);
            let back = reconstruct_from_neg_basis(w.n(), &expand_in_neg_basis(&h)).expect("same n");
            (back != h).then(|| format!("{w} in B{}", w.n()))
        });
        Outcome::new(words.len(), failure).note("B3 and B4, length <= 8")
    })
}

/// Check 4: `⟨a,b⟩_L = ⟨b,a⟩_L = ⟨a^{-1}, b^{-1}⟩_R`. The report also counts
/// pairs satisfying the signed form `⟨a,b⟩_L = (-1)^{w(a)+w(b)} ⟨a^{-1}, b^{-1}⟩_R`.
pub fn check_symmetry(level: Level, seed: u64) -> CheckReport {
    run(4, "symmetry and left/right exchange by inversion", None, || {
        let count = if level == Level::Full { 200 } else { 40 };
        let mut rng = rng_for(seed, 4);
        let pairs: Vec<(BraidWord, BraidWord)> = (0..count)
            .map(|_| {
                let n = rng.gen_range(2..=4);
                (BraidWord::random(&mut rng, n, 6, false), BraidWord::random(&mut rng, n, 6, false))
            })
            .collect();
        // (symmetric, exact exchange, signed exchange)
        let results: Vec<(bool, bool, bool)> = pairs
            .par_iter()
            .map(|(a, b)| {
                let ab = inner_words(a, b, Side::Left).expect("same n");
                let ba = inner_words(b, a, Side::Left).expect("same n");
                let inv = inner_words(&a.inverse(), &b.inverse(), Side::Right).expect("same n");
                let odd = (a.exponent_sum() + b.exponent_sum()) % 2 != 0;
                let signed = if odd { -inv.poly().clone() } else { inv.poly().clone() };
                (ab == ba, ab == inv, *ab.poly() == signed)
            })
            .collect();
        let failure = pairs.iter().zip(&results).find(|(_, r)| !(r.0 && r.1)).map(|((a, b), r)| {
            let what = if r.0 { "⟨a,b⟩_L != ⟨a^-1,b^-1⟩_R" } else { "⟨a,b⟩_L != ⟨b,a⟩_L" };
            format!("{what} for a = {a}, b = {b} in B{}", a.n())
        });
        let tally = |f: fn(&(bool, bool, bool)) -> bool| results.iter().filter(|r| f(r)).count();
        let note = format!(
            "B2..B4, length <= 6; symmetric {}/{n}, exchange {}/{n}, signed exchange {}/{n}",
            tally(|r| r.0),
            tally(|r| r.1),
            tally(|r| r.2),
            n = pairs.len()
        );
        Outcome::new(pairs.len(), failure).note(note)
    })
}

/// Check 5: Window and parity of framed Homfly values. Every framed value built
/// anywhere in the process is checked on construction; this sweep adds an
/// explicit pass over a word list.
pub fn check_window_and_parity(level: Level, seed: u64) -> CheckReport {
    run(5, "MFW window and v-parity of framed Homfly", None, || {
        let (len2, len3, random4) = if level == Level::Full { (8, 6, 100) } else { (5, 4, 20) };
        let mut words = BraidWord::all_words(2, len2, false);
        words.extend(BraidWord::all_words(3, len3, false));
        let mut rng = rng_for(seed, 5);
        words.extend((0..random4).map(|_| BraidWord::random(&mut rng, 4, 8, false)));
        let failure = first_failure(&words, |w| {
            let h = framed_homfly(w);
            (!mfw_window_check(&h) || !parity_check(&h)).then(|| format!("{w} in B{}", w.n()))
        });
        let note = format!("{} framed values checked in this process", framed_checks_performed());
        Outcome::new(words.len(), failure).note(note)
    })
}

/// Check 6: Extremal column nonzero iff `⟨w, 1⟩ ≠ 0`, on both sides.
pub fn check_sharpness(level: Level, seed: u64) -> CheckReport {
    run(6, "MFW sharpness equals non-orthogonality to the unit", None, || {
        let count = if level == Level::Full { 100 } else { 30 };
        let mut rng = rng_for(seed, 6);
        let mut words = vec![BraidWord::new(2, vec![-1]).expect("valid")];
        words.extend((0..count).map(|_| {
            let n = rng.gen_range(2..=4);
            BraidWord::random(&mut rng, n, 8, false)
        }));
        let sharp = |w: &BraidWord, side| {
            let direct = !extremal_column(w, side).is_zero();
            let via_trace = !inner_words(w, &BraidWord::empty(w.n()), side).expect("same n").is_zero();
            (direct == via_trace).then_some(direct)
        };
        let mut failure = match (sharp(&words[0], Side::Left), sharp(&words[0], Side::Right)) {
            (Some(false), Some(true)) => None,
            other => Some(format!("σ1^-1 in B2 gave (lower, upper) = {other:?}")),
        };
        if failure.is_none() {
            failure = first_failure(&words, |w| {
                [Side::Left, Side::Right]
                    .into_iter()
                    .find(|&s| sharp(w, s).is_none())
                    .map(|s| format!("{w} in B{} on side {s}", w.n()))
            });
        }
        Outcome::new(words.len(), failure).note("B2..B4, both sides")
    })
}

/// Check 7: Trace route agrees with the skein oracle.
pub fn check_oracle(level: Level, seed: u64) -> CheckReport {
    run(7, "trace Homfly equals skein-relation Homfly", None, || {
        let trefoil = LaurentPoly2::parse("2*v^2 + v^2*z^2 - v^4", VZ).expect("literal");
        let hopf = LaurentPoly2::parse("v*z + v*z^-1 - v^3*z^-1", VZ).expect("literal");
        let (max_len, random4) = if level == Level::Full { (5, 100) } else { (3, 20) };
        let mut words = vec![];
        for n in 2..=3 {
            words.extend(BraidWord::all_words(n, max_len, false));
        }
        let mut rng = rng_for(seed, 7);
        words.extend((0..random4).map(|_| BraidWord::random(&mut rng, 4, 7, false)));
        let oracle = |w: &BraidWord| skein_homfly(&braid_closure_pd(w)).expect("within the crossing cap");
        let named = [("1 1 1", trefoil), ("1 1", hopf)];
        let mut failure = named.iter().find_map(|(s, want)| {
            let w = BraidWord::parse(s, 2).expect("literal");
            (homfly_p(&w) != *want || oracle(&w) != *want).then(|| format!("value of {s} in B2"))
        });
        if failure.is_none() {
            failure = first_failure(&words, |w| (homfly_p(w) != oracle(w)).then(|| format!("{w} in B{}", w.n())));
        }
        Outcome::new(words.len() + named.len(), failure)
            .note(format!("all words of length <= {max_len} in B2, B3; {random4} in B4"))
    })
}

/// Check 8: Markov stabilization and conjugation leave `P` unchanged.
pub fn check_markov_invariance(level: Level, seed: u64) -> CheckReport {
    run(8, "Homfly is invariant under Markov moves and conjugation", None, || {
        let count = if level == Level::Full { 50 } else { 10 };
        let mut rng = rng_for(seed, 8);
        let mut cases = Vec::new();
        for k in 0..count {
            let n = rng.gen_range(1..=3);
            let w = BraidWord::random(&mut rng, n, 6, false);
            cases.push((w.clone(), w.stabilize(k % 2 == 0)));
        }
        for _ in 0..count {
            let n = rng.gen_range(2..=4);
            let w = BraidWord::random(&mut rng, n, 6, false);
            let g = BraidWord::random(&mut rng, n, 4, false);
            let conj = g.concat(&w).and_then(|x| x.concat(&g.inverse())).expect("same n");
            cases.push((w, conj));
        }
        let failure = first_failure(&cases, |(a, b)| {
            (homfly_p(a) != homfly_p(b)).then(|| format!("{a} in B{} vs {b} in B{}", a.n(), b.n()))
        });
        Outcome::new(cases.len(), failure).note(format!("{count} stabilizations, {count} conjugations"))
    })
}

/// Check 9: Rulings and statistics of the two-permutation fronts.
pub fn check_two_perm_fronts(level: Level) -> CheckReport {
    run(9, "two-permutation fronts have rulings z^(1-n) delta", Some(Duration::from_secs(60)), || {
        let pairs: Vec<(Permutation, Permutation)> = (1..=max_n(level))
            .flat_map(|n| {
                let all = Permutation::all(n);
                all.iter().flat_map(|p| all.iter().map(move |k| (p.clone(), k.clone()))).collect::<Vec<_>>()
            })
            .collect();
        let failure = first_failure(&pairs, |(pi, kappa)| {
            let n = pi.n();
            let f = closure_two_perms(pi, kappa).expect("valid front");
            let st = validate_and_orient(&f).expect("valid front");
            let inv = (pi.inversions() + kappa.inversions()) as i64;
            let stats_ok = st.cusps == n
                && st.crossing_signs.iter().all(|&s| s < 0)
                && st.tb == -inv - n as i64;
            let want = if pi == kappa { z_pow(1 - n as i32) } else { LaurentPoly2::zero(ZT) };
            let r = ruling_polynomial(&f).expect("valid front").polynomial;
            (!stats_ok || r != want).then(|| format!("π = {pi}, κ = {kappa}: rulings {r}, tb {}", st.tb))
        });
        Outcome::new(pairs.len(), failure).note(format!("n = 1..={}", max_n(level)))
    })
}

/// Check 10: Positive-braid fronts: rulings give left inner products with the
/// negative basis and the Rutherford coefficient of `P`.
pub fn check_positive_fronts(level: Level) -> CheckReport {
    run(10, "positive-braid fronts: rulings give inner products", Some(Duration::from_secs(120)), || {
        let max_len = if level == Level::Full { 6 } else { 4 };
        let mut cases = Vec::new();
        for n in 2..=3 {
            for beta in BraidWord::all_words(n, max_len, true) {
                for pi in Permutation::all(n) {
                    cases.push((beta.clone(), pi));
                }
            }
        }
        let failure = first_failure(&cases, |(beta, pi)| {
            let n = beta.n();
            let f = closure_pos_braid(beta, pi).expect("positive braid");
            let tb = validate_and_orient(&f).expect("valid front").tb;
            let r = ruling_polynomial(&f).expect("valid front").polynomial;
            let ip = inner(&HeckeElement::from_braid(beta), &neg_perm_elt(pi), Side::Left).expect("same n");
            let p = homfly_p(&pos_braid_word(beta, pi).expect("same n"));
            let rutherford = p.coeff_of(Var::V, tb as i32 + 1).and_then(|c| c.remap(ZT)).expect("Z[z] coefficient");
            (r.shift(n as i32 - 1, 0) != *ip.poly() || r != rutherford)
                .then(|| format!("β = {beta} in B{n}, π = {pi}: rulings {r}, inner {ip}, Homfly coefficient {rutherford}"))
        });
        Outcome::new(cases.len(), failure).note(format!("positive words of length <= {max_len} in B2, B3"))
    })
}

/// Check 11: Ocneanu trace axioms.
pub fn check_trace_axioms(level: Level, seed: u64) -> CheckReport {
    run(11, "trace axioms", None, || {
        let top = max_n(level);
        let mut cases = 0;
        for n in 1..=top {
            if !ocneanu_trace(&HeckeElement::unit(n)).value.is_one() {
                return Outcome::new(cases, Some(format!("Tr(1) != 1 on {n} strands")));
            }
            cases += 1;
            let basis: Vec<HeckeElement> = Permutation::all(n).iter().map(pos_perm_elt).collect();
            // degree in T and the Markov property Tr(x σ_n) = T Tr(x)
            let failure = first_failure(&Permutation::all(n), |pi| {
                let tr = ocneanu_trace(&pos_perm_elt(pi)).value;
                if tr.max_exponent(Var::T).unwrap_or(0) > n as i32 - 1 {
                    return Some(format!("deg_T Tr(ω_{pi}) > {}", n - 1));
                }
                if n < top {
                    let w = BraidWord::permutation_braid(pi, true).embed(n).expect("same n").stabilize(true);
                    let lifted = ocneanu_trace(&HeckeElement::from_braid(&w)).value;
                    if lifted != tr.shift(0, 1) {
                        return Some(format!("Markov property fails for ω_{pi}"));
                    }
                }
                None
            });
            cases += basis.len();
            if failure.is_some() {
                return Outcome::new(cases, failure);
            }
            let pairs: Vec<(usize, usize)> =
                (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
            let failure = first_failure(&pairs, |&(i, j)| {
                let ab = ocneanu_trace(&basis[i].mul(&basis[j]).expect("same n")).value;
                let ba = ocneanu_trace(&basis[j].mul(&basis[i]).expect("same n")).value;
                (ab != ba).then(|| format!("Tr(ab) != Tr(ba) for basis pair ({i}, {j}) on {n} strands"))
            });
            cases += pairs.len();
            if failure.is_some() {
                return Outcome::new(cases, failure);
            }
        }
        let count = if level == Level::Full { 100 } else { 20 };
        let mut rng = rng_for(seed, 11);
        let pairs: Vec<(BraidWord, BraidWord)> = (0..count)
            .map(|_| {
                let n = rng.gen_range(2..=4);
                (BraidWord::random(&mut rng, n, 6, false), BraidWord::random(&mut rng, n, 6, false))
            })
            .collect();
        let failure = first_failure(&pairs, |(a, b)| {
            let ab = ocneanu_trace(&HeckeElement::from_braid(&a.concat(b).expect("same n"))).value;
            let ba = ocneanu_trace(&HeckeElement::from_braid(&b.concat(a).expect("same n"))).value;
            (ab != ba).then(|| format!("Tr(ab) != Tr(ba) for a = {a}, b = {b}"))
        });
        Outcome::new(cases + pairs.len(), failure).note(format!("exhaustive bases n <= {top}, {count} random pairs"))
    })
}

/// Every criterion in order. The window and parity check runs last so its
/// process-wide count covers everything the other checks computed.
pub fn run_all(level: Level, seed: u64) -> Vec<CheckReport> {
    let mut reports = vec![
        check_neg_orthonormality(level),
        check_pos_orthonormality(level),
        check_expansion(level, seed),
        check_symmetry(level, seed),
        check_sharpness(level, seed),
        check_oracle(level, seed),
        check_markov_invariance(level, seed),
        check_two_perm_fronts(level),
        check_positive_fronts(level),
        check_trace_axioms(level, seed),
    ];
    reports.push(check_window_and_parity(level, seed));
    reports.sort_by_key(|r| r.id);
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_parsing() {
        assert_eq!("quick".parse::<Level>().unwrap(), Level::Quick);
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("medium".parse::<Level>().is_err());
    }

    #[test]
    fn panics_become_failures() {
        let r = run(99, "boom", None, || panic!("kaput"));
        assert!(!r.passed);
        assert!(r.detail.contains("kaput"));
        assert!(r.to_string().starts_with("FAIL"));
    }

    #[test]
    fn quick_checks_pass() {
        for r in [check_neg_orthonormality(Level::Quick), check_two_perm_fronts(Level::Quick)] {
            assert!(r.passed, "{r}");
        }
    }
}
