//! Legendrian front diagrams as event words, and their oriented rulings.
//!
//! A front is swept left to right. Live strands are numbered 1, 2, … from
//! top to bottom. `B{i}` is a left cusp inserting two strands at positions
//! `i, i+1`; `X{i}` is a crossing of the strands at `i, i+1`; `D{i}` is a
//! right cusp joining and removing them. At a crossing the strand moving
//! downward (lower slope) is the overstrand, so a crossing is positive
//! exactly when both strands run in the same horizontal direction.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly2, ZT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Birth(usize),
    Cross(usize),
    Death(usize),
}

impl Event {
    pub fn position(self) -> usize {
        match self {
            Event::Birth(i) | Event::Cross(i) | Event::Death(i) => i,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Birth(i) => write!(f, "B{i}"),
            Event::Cross(i) => write!(f, "X{i}"),
            Event::Death(i) => write!(f, "D{i}"),
        }
    }
}

impl FromStr for Event {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad front event {s:?}"));
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let i: usize = chars.as_str().parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match kind {
            'B' => Ok(Event::Birth(i)),
            'X' => Ok(Event::Cross(i)),
            'D' => Ok(Event::Death(i)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Event {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A front diagram. `orientation[k]`, when given, says whether component `k`
/// (numbered by first appearance) follows the default orientation: the lower
/// strand of its first left cusp runs rightward.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FrontDiagram {
    events: Vec<Event>,
    orientation: Option<Vec<bool>>,
}

impl FrontDiagram {
    pub fn new(events: Vec<Event>) -> Self {
        FrontDiagram { events, orientation: None }
    }

    pub fn with_orientation(events: Vec<Event>, orientation: Vec<bool>) -> Self {
        FrontDiagram { events, orientation: Some(orientation) }
    }

    /// Whitespace-separated `B{i}`, `X{i}`, `D{i}` tokens.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(text.split_whitespace().map(str::parse).collect::<Result<_>>()?))
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn orientation(&self) -> Option<&[bool]> {
        self.orientation.as_deref()
    }
}

impl fmt::Display for FrontDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.events.iter().join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontStats {
    /// Number of left cusps, equal to the number of right cusps.
    pub cusps: usize,
    pub writhe: i64,
    pub tb: i64,
    pub crossing_signs: Vec<i32>,
    pub components: usize,
}

/// Strand segments (cusp to cusp) with their directions and the live
/// segment list before every event.
struct Analysis {
    stats: FrontStats,
    /// +1 rightward, -1 leftward.
    direction: Vec<i32>,
    /// `live[k]` is the top-to-bottom segment list before event `k`.
    live: Vec<Vec<usize>>,
}

fn analyze(f: &FrontDiagram) -> Result<Analysis> {
    // partner[s] = [segment sharing s's left cusp, segment sharing its right cusp]
    let mut partner: Vec<[usize; 2]> = Vec::new();
    let mut births: Vec<(usize, usize)> = Vec::new();
    let mut crossings: Vec<(usize, usize)> = Vec::new();
    let mut live: Vec<usize> = Vec::new();
    let mut history = Vec::with_capacity(f.events.len());

    for (index, &event) in f.events.iter().enumerate() {
        history.push(live.clone());
        let m = live.len();
        let illegal = || Error::IllegalEvent { event: event.to_string(), index, live: m };
        match event {
            Event::Birth(i) => {
                if i == 0 || i > m + 1 {
                    return Err(illegal());
                }
                let (top, bottom) = (partner.len(), partner.len() + 1);
                partner.push([bottom, usize::MAX]);
                partner.push([top, usize::MAX]);
                live.insert(i - 1, bottom);
                live.insert(i - 1, top);
                births.push((top, bottom));
            }
            Event::Cross(i) => {
                if i == 0 || i + 1 > m {
                    return Err(illegal());
                }
                crossings.push((live[i - 1], live[i]));
                live.swap(i - 1, i);
            }
            Event::Death(i) => {
                if i == 0 || i + 1 > m {
                    return Err(illegal());
                }
                let (a, b) = (live[i - 1], live[i]);
                partner[a][1] = b;
                partner[b][1] = a;
                live.drain(i - 1..=i);
            }
        }
    }
    if !live.is_empty() {
        return Err(Error::NotClosed(live.len()));
    }

    let mut direction = vec![0i32; partner.len()];
    let mut components = 0;
    for &(_, bottom) in &births {
        if direction[bottom] != 0 {
            continue;
        }
        let default = match &f.orientation {
            Some(o) => *o.get(components).ok_or_else(|| {
                Error::Orientation(format!("no orientation given for component {components}"))
            })?,
            None => true,
        };
        components += 1;
        direction[bottom] = if default { 1 } else { -1 };
        let mut stack = vec![bottom];
        while let Some(s) = stack.pop() {
            // cusps reverse the horizontal direction
            for t in partner[s] {
                if direction[t] == 0 {
                    direction[t] = -direction[s];
                    stack.push(t);
                } else if direction[t] != -direction[s] {
                    return Err(Error::Orientation(format!("segments {s} and {t} meet at a cusp with equal directions")));
                }
            }
        }
    }
    if let Some(o) = &f.orientation {
        if o.len() != components {
            return Err(Error::Orientation(format!(
                "{} orientations given for {components} components",
                o.len()
            )));
        }
    }

    let crossing_signs: Vec<i32> = crossings.iter().map(|&(a, b)| direction[a] * direction[b]).collect();
    let writhe: i64 = crossing_signs.iter().map(|&s| s as i64).sum();
    let cusps = births.len();
    let stats = FrontStats { cusps, writhe, tb: writhe - cusps as i64, crossing_signs, components };
    Ok(Analysis { stats, direction, live: history })
}

/// Components, orientations, crossing signs, writhe and Thurston–Bennequin
/// number `tb = w - C`.
pub fn validate_and_orient(f: &FrontDiagram) -> Result<FrontStats> {
    Ok(analyze(f)?.stats)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ruling {
    /// Switched crossings, as indices into the sequence of `X` events.
    pub switches: Vec<usize>,
    pub theta: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RulingSet {
    pub rulings: Vec<Ruling>,
    /// `Σ z^{1-θ}` over all oriented rulings.
    pub polynomial: LaurentPoly2,
}

/// Enumerate oriented rulings by a left-to-right sweep.
///
/// The state is the pairing of live strands into eyes (a fixed-point-free
/// involution on positions). A right cusp needs its two strands paired with
/// each other. At a crossing the pairing is either carried across, or, for a
/// switch, left in place; switches need a positive crossing between two
/// different eyes whose vertical extents are disjoint or nested. Two strands
/// of one eye never cross each other.
pub fn ruling_polynomial(f: &FrontDiagram) -> Result<RulingSet> {
    let stats = validate_and_orient(f)?;
    let mut rulings = Vec::new();
    sweep(&f.events, &stats.crossing_signs, 0, 0, Vec::new(), &mut Vec::new(), &mut rulings);

    let cusps = stats.cusps as i64;
    let mut polynomial = LaurentPoly2::zero(ZT);
    let rulings: Vec<Ruling> = rulings
        .into_iter()
        .map(|switches| {
            assert!(switches.iter().all(|&c| stats.crossing_signs[c] > 0), "switch at a negative crossing");
            let theta = cusps - switches.len() as i64;
            polynomial.add_term((1 - theta) as i32, 0, 1.into());
            Ruling { switches, theta }
        })
        .collect();
    Ok(RulingSet { rulings, polynomial })
}

fn intervals_compatible(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    let disjoint = a1 < b0 || b1 < a0;
    let nested = (a0 < b0 && b1 < a1) || (b0 < a0 && a1 < b1);
    disjoint || nested
}

fn sweep(
    events: &[Event],
    signs: &[i32],
    k: usize,
    crossing: usize,
    mut pairing: Vec<usize>,
    switches: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(&event) = events.get(k) else {
        out.push(switches.clone());
        return;
    };
    match event {
        Event::Birth(i) => {
            let at = i - 1;
            for p in pairing.iter_mut() {
                if *p >= at {
                    *p += 2;
                }
            }
            pairing.insert(at, at);
            pairing.insert(at, at + 1);
            pairing[at + 1] = at;
            sweep(events, signs, k + 1, crossing, pairing, switches, out);
        }
        Event::Death(i) => {
            let at = i - 1;
            if pairing[at] != at + 1 {
                return;
            }
            pairing.drain(at..=at + 1);
            for p in pairing.iter_mut() {
                if *p > at + 1 {
                    *p -= 2;
                }
            }
            sweep(events, signs, k + 1, crossing, pairing, switches, out);
        }
        Event::Cross(i) => {
            let (a, b) = (i - 1, i);
            if pairing[a] == b {
                return;
            }
            if signs[crossing] > 0 && intervals_compatible((a, pairing[a]), (b, pairing[b])) {
                switches.push(crossing);
                sweep(events, signs, k + 1, crossing + 1, pairing.clone(), switches, out);
                switches.pop();
            }
            let (pa, pb) = (pairing[a], pairing[b]);
            pairing[pa] = b;
            pairing[pb] = a;
            pairing.swap(a, b);
            sweep(events, signs, k + 1, crossing + 1, pairing, switches, out);
        }
    }
}

/// The tangle `T_π` as events on `2n` live strands: uppers on positions
/// `1..n`, lowers on `n+1..2n`. It realizes the negative permutation braid
/// `ν_π` on the lower strands, with `inversions(π)` crossings, all between
/// an upper and a lower strand.
pub fn t_tangle_subword(pi: &Permutation) -> Vec<Event> {
    let n = pi.n();
    let mut out = Vec::with_capacity(n + pi.inversions());
    for c in (1..=n).rev() {
        let p = (1..=c).filter(|&e| pi.apply(e) <= pi.apply(c)).count();
        out.extend((p + 1..=c).rev().map(Event::Cross));
        out.push(Event::Death(p));
    }
    out
}

/// Reverse the sweep: events in reverse order, births and deaths swapped.
pub fn mirror(events: &[Event]) -> Vec<Event> {
    events
        .iter()
        .rev()
        .map(|&e| match e {
            Event::Birth(i) => Event::Death(i),
            Event::Death(i) => Event::Birth(i),
            Event::Cross(i) => Event::Cross(i),
        })
        .collect()
}

/// Front of the closure of `ν_π·ν_κ*`: the mirrored `T_κ` followed by `T_π`.
pub fn closure_two_perms(pi: &Permutation, kappa: &Permutation) -> Result<FrontDiagram> {
    if pi.n() != kappa.n() {
        return Err(Error::StrandMismatch(pi.n(), kappa.n()));
    }
    let mut events = mirror(&t_tangle_subword(kappa));
    events.extend(t_tangle_subword(pi));
    Ok(FrontDiagram::new(events))
}

/// Front of the closure of `β·ν_{π^{-1}}` for a positive braid `β`: `n`
/// nested left cusps, `σ_i ↦ X{2n-i}` (lower strands counted bottom-up), then
/// `T_{π^{-1}}`. It has only `2n` cusps.
pub fn closure_pos_braid(beta: &BraidWord, pi: &Permutation) -> Result<FrontDiagram> {
    if beta.n() != pi.n() {
        return Err(Error::StrandMismatch(beta.n(), pi.n()));
    }
    if let Some(&l) = beta.letters().iter().find(|&&l| l < 0) {
        return Err(Error::NegativeLetter(l));
    }
    let n = pi.n();
    let mut events: Vec<Event> = (1..=n).map(Event::Birth).collect();
    events.extend(beta.letters().iter().map(|&l| Event::Cross(2 * n - l as usize)));
    events.extend(t_tangle_subword(&pi.inverse()));
    Ok(FrontDiagram::new(events))
}

/// The braid word whose closure [`closure_two_perms`] draws.
pub fn two_perms_word(pi: &Permutation, kappa: &Permutation) -> Result<BraidWord> {
    BraidWord::permutation_braid(pi, false).concat(&BraidWord::permutation_braid(kappa, false).star())
}

/// The braid word whose closure [`closure_pos_braid`] draws.
pub fn pos_braid_word(beta: &BraidWord, pi: &Permutation) -> Result<BraidWord> {
    beta.concat(&BraidWord::permutation_braid(&pi.inverse(), false))
}

const COLUMN: f64 = 40.0;
const ROW: f64 = 24.0;
const MARGIN: f64 = 20.0;

/// Render a closed front as SVG: one column per event, cusps as horizontal
/// tangencies (`class="cusp"`), crossings with the downward-moving strand
/// drawn over (`class="crossing"`), and a direction chevron on every strand
/// leaving a left cusp.
pub fn render_svg(f: &FrontDiagram) -> Result<String> {
    let analysis = analyze(f)?;
    let max_live = analysis.live.iter().map(Vec::len).max().unwrap_or(0).max(2);
    let width = MARGIN * 2.0 + COLUMN * f.events.len() as f64;
    let height = MARGIN * 2.0 + ROW * (max_live as f64 - 1.0);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    if f.events.is_empty() {
        svg.push_str("</svg>\n");
        return Ok(svg);
    }
    let _ = writeln!(svg, r#"<g fill="none" stroke="black" stroke-width="1.5">"#);
    let y = |pos: usize| MARGIN + ROW * pos as f64;
    let line = |svg: &mut String, x0: f64, y0: f64, x1: f64, y1: f64| {
        let _ = writeln!(svg, r#"<path d="M{x0:.1},{y0:.1} L{x1:.1},{y1:.1}"/>"#);
    };

    for (k, &event) in f.events.iter().enumerate() {
        let x0 = MARGIN + COLUMN * k as f64;
        let x1 = x0 + COLUMN;
        let xm = x0 + COLUMN / 2.0;
        let before = &analysis.live[k];
        let at = event.position() - 1;
        match event {
            Event::Birth(_) => {
                for (p, _) in before.iter().enumerate() {
                    let q = if p >= at { p + 2 } else { p };
                    line(&mut svg, x0, y(p), x1, y(q));
                }
                let cy = (y(at) + y(at + 1)) / 2.0;
                let _ = writeln!(
                    svg,
                    r#"<path class="cusp" d="M{xm:.1},{cy:.1} Q{x1:.1},{cy:.1} {x1:.1},{:.1} M{xm:.1},{cy:.1} Q{x1:.1},{cy:.1} {x1:.1},{:.1}"/>"#,
                    y(at),
                    y(at + 1)
                );
                let top_dir = if k + 1 < analysis.live.len() {
                    analysis.direction[analysis.live[k + 1][at]]
                } else {
                    1
                };
                for (pos, dir) in [(at, top_dir), (at + 1, -top_dir)] {
                    let (tip, back) = if dir > 0 { (x1 - 2.0, x1 - 8.0) } else { (x1 - 8.0, x1 - 2.0) };
                    let _ = writeln!(
                        svg,
                        r#"<path class="arrow" d="M{back:.1},{:.1} L{tip:.1},{:.1} L{back:.1},{:.1}"/>"#,
                        y(pos) - 3.0,
                        y(pos),
                        y(pos) + 3.0
                    );
                }
            }
            Event::Death(_) => {
                for (p, _) in before.iter().enumerate() {
                    if p == at || p == at + 1 {
                        continue;
                    }
                    let q = if p > at + 1 { p - 2 } else { p };
                    line(&mut svg, x0, y(p), x1, y(q));
                }
                let cy = (y(at) + y(at + 1)) / 2.0;
                let _ = writeln!(
                    svg,
                    r#"<path class="cusp" d="M{x0:.1},{:.1} Q{x0:.1},{cy:.1} {xm:.1},{cy:.1} M{x0:.1},{:.1} Q{x0:.1},{cy:.1} {xm:.1},{cy:.1}"/>"#,
                    y(at),
                    y(at + 1)
                );
            }
            Event::Cross(_) => {
                for (p, _) in before.iter().enumerate() {
                    if p != at && p != at + 1 {
                        line(&mut svg, x0, y(p), x1, y(p));
                    }
                }
                // under: rising strand; over: the one moving down
                let _ = writeln!(svg, r#"<g class="crossing">"#);
                line(&mut svg, x0, y(at + 1), x1, y(at));
                let _ = writeln!(
                    svg,
                    r#"<path d="M{x0:.1},{:.1} L{x1:.1},{:.1}" stroke="white" stroke-width="6"/>"#,
                    y(at),
                    y(at + 1)
                );
                line(&mut svg, x0, y(at), x1, y(at + 1));
                let _ = writeln!(svg, "</g>");
            }
        }
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
