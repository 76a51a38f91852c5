//! Homfly polynomials from the skein relation `v^{-1}P₊ − vP₋ = zP₀` on
//! planar diagrams of braid closures, reducing to descending diagrams.
//!
//! This module is an oracle for the trace-based computation and shares
//! nothing with it beyond polynomial arithmetic.

use std::collections::HashMap;

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly2, VZ};

pub const DEFAULT_CROSSING_CAP: usize = 16;

/// A crossing: its sign and its four edges in counterclockwise order,
/// starting from the incoming understrand. For a positive crossing the
/// overstrand runs from `edges[3]` to `edges[1]`, for a negative one from
/// `edges[1]` to `edges[3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PdCrossing {
    pub sign: i8,
    pub edges: [usize; 4],
}

impl PdCrossing {
    pub fn under_in(&self) -> usize {
        self.edges[0]
    }

    pub fn under_out(&self) -> usize {
        self.edges[2]
    }

    pub fn over_in(&self) -> usize {
        if self.sign > 0 { self.edges[3] } else { self.edges[1] }
    }

    pub fn over_out(&self) -> usize {
        if self.sign > 0 { self.edges[1] } else { self.edges[3] }
    }

    /// Exchange over and under.
    pub fn switched(&self) -> Self {
        let [a, b, c, d] = self.edges;
        let edges = if self.sign > 0 { [d, a, b, c] } else { [b, c, d, a] };
        PdCrossing { sign: -self.sign, edges }
    }

    fn reversed(&self) -> Self {
        let [a, b, c, d] = self.edges;
        PdCrossing { sign: self.sign, edges: [c, d, a, b] }
    }

    fn relabeled(&self, f: impl Fn(usize) -> usize) -> Self {
        PdCrossing { sign: self.sign, edges: self.edges.map(f) }
    }
}

/// An oriented link diagram: crossings plus a count of crossingless
/// circles. Every edge id occurs in exactly two crossing slots, once
/// incoming and once outgoing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarDiagram {
    crossings: Vec<PdCrossing>,
    free_loops: usize,
}

/// Where each edge ends: crossing index and whether it arrives as the
/// understrand.
struct Incidence {
    end: HashMap<usize, (usize, bool)>,
}

impl Incidence {
    fn new(crossings: &[PdCrossing]) -> Self {
        let mut end = HashMap::with_capacity(crossings.len() * 2);
        for (k, x) in crossings.iter().enumerate() {
            end.insert(x.under_in(), (k, true));
            end.insert(x.over_in(), (k, false));
        }
        Incidence { end }
    }

    fn next(&self, crossings: &[PdCrossing], e: usize) -> usize {
        let (k, under) = self.end[&e];
        if under { crossings[k].under_out() } else { crossings[k].over_out() }
    }
}

/// Edge sequences of all components with at least one crossing, each
/// starting at its smallest edge, ordered by that edge.
fn traverse(crossings: &[PdCrossing]) -> Vec<Vec<usize>> {
    let inc = Incidence::new(crossings);
    let mut edges: Vec<usize> = inc.end.keys().copied().collect();
    edges.sort_unstable();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for e0 in edges {
        if seen.contains(&e0) {
            continue;
        }
        let mut comp = Vec::new();
        let mut e = e0;
        loop {
            seen.insert(e);
            comp.push(e);
            e = inc.next(crossings, e);
            if e == e0 {
                break;
            }
        }
        out.push(comp);
    }
    out
}

impl PlanarDiagram {
    pub fn new(crossings: Vec<PdCrossing>, free_loops: usize) -> Result<Self> {
        let d = PlanarDiagram { crossings, free_loops };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let mut ins: HashMap<usize, usize> = HashMap::new();
        let mut outs: HashMap<usize, usize> = HashMap::new();
        for x in &self.crossings {
            if x.sign != 1 && x.sign != -1 {
                return Err(Error::Parse(format!("crossing sign {}", x.sign)));
            }
            *ins.entry(x.under_in()).or_default() += 1;
            *ins.entry(x.over_in()).or_default() += 1;
            *outs.entry(x.under_out()).or_default() += 1;
            *outs.entry(x.over_out()).or_default() += 1;
        }
        let ok = ins.len() == outs.len()
            && ins.iter().all(|(e, &c)| c == 1 && outs.get(e) == Some(&1));
        if ok {
            Ok(())
        } else {
            Err(Error::Parse("diagram is not 4-regular: every edge must enter and leave exactly once".into()))
        }
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Edge traversals of the components that meet a crossing.
    pub fn traversals(&self) -> Vec<Vec<usize>> {
        traverse(&self.crossings)
    }

    pub fn components(&self) -> usize {
        self.traversals().len() + self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    pub fn reverse_orientation(&self) -> Self {
        PlanarDiagram {
            crossings: self.crossings.iter().map(PdCrossing::reversed).collect(),
            free_loops: self.free_loops,
        }
    }
}

/// The standard closure diagram of a braid: strands run upward, positions
/// numbered left to right, one crossing per letter with the letter's sign.
pub fn braid_closure_pd(w: &BraidWord) -> PlanarDiagram {
    let n = w.n();
    let mut cur: Vec<usize> = (0..n).collect();
    let mut next_id = n;
    let mut crossings = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let (left_in, right_in) = (cur[i], cur[i + 1]);
        let (left_out, right_out) = (next_id, next_id + 1);
        next_id += 2;
        // left_in continues to right_out, right_in to left_out
        let edges = if l > 0 {
            [right_in, right_out, left_out, left_in]
        } else {
            [left_in, right_in, right_out, left_out]
        };
        crossings.push(PdCrossing { sign: if l > 0 { 1 } else { -1 }, edges });
        cur[i] = left_out;
        cur[i + 1] = right_out;
    }
    // close up: the top edge at position k is the bottom edge k
    let close: HashMap<usize, usize> = cur.iter().enumerate().filter(|(k, &e)| *k != e).map(|(k, &e)| (e, k)).collect();
    let crossings: Vec<PdCrossing> =
        crossings.iter().map(|x| x.relabeled(|e| close.get(&e).copied().unwrap_or(e))).collect();
    let touched: std::collections::HashSet<usize> = crossings.iter().flat_map(|x| x.edges).collect();
    let free_loops = (0..n).filter(|k| !touched.contains(k)).count();
    let crossings = canonicalize(crossings);
    PlanarDiagram::new(crossings, free_loops).expect("braid closures are 4-regular")
}

/// Relabel edges in traversal order and sort the crossing list.
fn canonicalize(crossings: Vec<PdCrossing>) -> Vec<PdCrossing> {
    let mut label = HashMap::new();
    for comp in traverse(&crossings) {
        for e in comp {
            let next = label.len();
            label.insert(e, next);
        }
    }
    let mut out: Vec<PdCrossing> = crossings.iter().map(|x| x.relabeled(|e| label[&e])).collect();
    out.sort_unstable();
    out
}

/// First crossing whose first visit is on the understrand, and the number
/// of such crossings.
fn first_violation(crossings: &[PdCrossing]) -> (Option<usize>, usize) {
    let inc = Incidence::new(crossings);
    let mut seen = vec![false; crossings.len()];
    let mut first = None;
    let mut count = 0;
    for comp in traverse(crossings) {
        for e in comp {
            let (k, under) = inc.end[&e];
            if !seen[k] {
                seen[k] = true;
                if under {
                    count += 1;
                    first.get_or_insert(k);
                }
            }
        }
    }
    (first, count)
}

/// Oriented smoothing at crossing `k`: returns the remaining crossings and
/// the number of circles that lost all their crossings.
fn smooth(crossings: &[PdCrossing], k: usize) -> (Vec<PdCrossing>, usize) {
    let x = crossings[k];
    let mut rest: Vec<PdCrossing> =
        crossings.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, c)| *c).collect();
    let mut rename: HashMap<usize, usize> = HashMap::new();
    let resolve = |rename: &HashMap<usize, usize>, mut e: usize| {
        while let Some(&f) = rename.get(&e) {
            e = f;
        }
        e
    };
    let mut loops = 0;
    for (e_in, e_out) in [(x.under_in(), x.over_out()), (x.over_in(), x.under_out())] {
        let (a, b) = (resolve(&rename, e_in), resolve(&rename, e_out));
        if a == b {
            loops += 1;
        } else {
            rename.insert(b, a);
        }
    }
    for c in rest.iter_mut() {
        *c = c.relabeled(|e| resolve(&rename, e));
    }
    (rest, loops)
}

struct Evaluator {
    delta: LaurentPoly2,
    memo: HashMap<Vec<PdCrossing>, LaurentPoly2>,
}

impl Evaluator {
    fn new() -> Self {
        // (v^{-1} - v) / z
        let delta = LaurentPoly2::from_terms(VZ, [(-1, -1, 1), (1, -1, -1)]);
        Evaluator { delta, memo: HashMap::new() }
    }

    /// `P` of a diagram with `crossings` plus `loops` extra circles.
    fn with_loops(&mut self, crossings: Vec<PdCrossing>, loops: usize) -> LaurentPoly2 {
        if crossings.is_empty() {
            assert!(loops > 0, "empty diagram");
            return self.delta.pow(loops as u32 - 1);
        }
        let p = self.eval(crossings);
        &self.delta.pow(loops as u32) * &p
    }

    fn eval(&mut self, crossings: Vec<PdCrossing>) -> LaurentPoly2 {
        let crossings = canonicalize(crossings);
        if let Some(p) = self.memo.get(&crossings) {
            return p.clone();
        }
        let (violation, count) = first_violation(&crossings);
        let result = match violation {
            None => {
                let c = traverse(&crossings).len();
                self.delta.pow(c as u32 - 1)
            }
            Some(k) => {
                let mut switched = crossings.clone();
                switched[k] = switched[k].switched();
                let (_, after) = first_violation(&switched);
                assert!(after < count, "switching did not reduce descending violations");
                let (smoothed, loops) = smooth(&crossings, k);
                assert!(smoothed.len() < crossings.len());

                let p_switched = self.eval(switched);
                let p_smoothed = self.with_loops(smoothed, loops);
                if crossings[k].sign > 0 {
                    // P₊ = v² P₋ + v z P₀
                    &p_switched.shift(2, 0) + &p_smoothed.shift(1, 1)
                } else {
                    // P₋ = v^{-2} P₊ − v^{-1} z P₀
                    &p_switched.shift(-2, 0) - &p_smoothed.shift(-1, 1)
                }
            }
        };
        self.memo.insert(crossings, result.clone());
        result
    }
}

pub fn skein_homfly(d: &PlanarDiagram) -> Result<LaurentPoly2> {
    skein_homfly_with_cap(d, DEFAULT_CROSSING_CAP)
}

pub fn skein_homfly_with_cap(d: &PlanarDiagram, cap: usize) -> Result<LaurentPoly2> {
    if d.crossing_count() > cap {
        return Err(Error::ResourceLimit { crossings: d.crossing_count(), cap });
    }
    if d.components() == 0 {
        return Err(Error::Parse("the empty diagram has no Homfly polynomial".into()));
    }
    Ok(Evaluator::new().with_loops(d.crossings.clone(), d.free_loops))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, n).unwrap()
    }

    fn vz(s: &str) -> LaurentPoly2 {
        LaurentPoly2::parse(s, VZ).unwrap()
    }

    fn oracle(s: &str, n: usize) -> LaurentPoly2 {
        skein_homfly(&braid_closure_pd(&word(s, n))).unwrap()
    }

    #[test]
    fn closure_examples() {
        let d = braid_closure_pd(&BraidWord::empty(2));
        assert_eq!((d.crossing_count(), d.components()), (0, 2));
        let d = braid_closure_pd(&word("1 1", 2));
        assert_eq!((d.crossing_count(), d.components()), (2, 2));
        let d = braid_closure_pd(&word("1 1 1", 2));
        assert_eq!((d.crossing_count(), d.components()), (3, 1));
        assert_eq!(braid_closure_pd(&word("1 -2 1", 3)).writhe(), 1);
    }

    #[test]
    fn components_follow_cycles() {
        for (w, n) in [("1 2", 3), ("1 1 2 2", 3), ("1 3", 4), ("2", 4), ("-1 2 -3 2", 4)] {
            let w = word(w, n);
            assert_eq!(braid_closure_pd(&w).components(), w.perm().cycle_count(), "{w}");
        }
    }

    #[test]
    fn skein_examples() {
        assert!(oracle("", 1).is_one());
        assert!(oracle("1", 2).is_one());
        assert!(oracle("-1", 2).is_one());
        assert!(oracle("1 2", 3).is_one());
        assert!(oracle("1 -2", 3).is_one());
        assert_eq!(oracle("1 1", 2), vz("v*z + v*z^-1 - v^3*z^-1"));
        assert_eq!(oracle("1 1 1", 2), vz("2*v^2 + v^2*z^2 - v^4"));
        assert_eq!(oracle("-1 -1 -1", 2), vz("2*v^-2 + v^-2*z^2 - v^-4"));
    }

    #[test]
    fn unlinks() {
        let delta = vz("v^-1*z^-1 - v*z^-1");
        for n in 1..=5 {
            assert_eq!(oracle("", n), delta.pow(n as u32 - 1));
        }
        assert_eq!(oracle("1 -1", 2), delta);
        assert_eq!(oracle("1 -1 2 -2", 3), delta.pow(2));
    }

    #[test]
    fn orientation_reversal_is_invisible() {
        for (w, n) in [("1 1", 2), ("1 1 1", 2), ("1 -2 1 -2", 3), ("1 1 2 -1 2 2", 3), ("1 2 3 1 -2", 4)] {
            let d = braid_closure_pd(&word(w, n));
            let r = d.reverse_orientation();
            assert_eq!(skein_homfly(&r).unwrap(), skein_homfly(&d).unwrap(), "{w}");
        }
    }

    #[test]
    fn switch_and_reverse_are_involutions() {
        let d = braid_closure_pd(&word("1 -2 1 2", 3));
        for x in d.crossings() {
            assert_eq!(x.switched().switched(), *x);
            assert_eq!(x.reversed().reversed(), *x);
            assert_eq!(x.switched().over_in(), x.under_in());
            assert_eq!(x.switched().under_out(), x.over_out());
        }
    }

    #[test]
    fn crossing_cap() {
        let w = BraidWord::new(2, vec![1; 17]).unwrap();
        assert!(matches!(
            skein_homfly(&braid_closure_pd(&w)),
            Err(Error::ResourceLimit { crossings: 17, cap: 16 })
        ));
        assert!(skein_homfly_with_cap(&braid_closure_pd(&w), 20).is_ok());
    }

    #[test]
    fn rejects_non_regular_diagrams() {
        let x = PdCrossing { sign: 1, edges: [0, 1, 2, 3] };
        assert!(PlanarDiagram::new(vec![x], 0).is_err());
        let kink = PdCrossing { sign: 1, edges: [0, 0, 1, 1] };
        assert!(PlanarDiagram::new(vec![kink], 0).is_ok());
        assert!(skein_homfly(&PlanarDiagram::new(vec![kink], 0).unwrap()).unwrap().is_one());
    }
}
