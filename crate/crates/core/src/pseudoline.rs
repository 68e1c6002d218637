//! Simple arrangements of pseudolines in `RP^2`, encoded as wiring
//! diagrams.
//!
//! Wires are numbered `1..=n` and start at their own level (level 1 is the
//! bottom). Each letter `k` of the word swaps the wires at levels `k` and
//! `k+1`; every pair swaps exactly once. The projective plane is recovered
//! by gluing the right end of the diagram to the left end with the levels
//! reversed.

use std::fmt;

use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{content_lines, ensure_generic, parse_usize, Configuration};
use crate::error::{OrchardError, Result};
use crate::exact::{binomial, binomial_is_odd, ratio, Rat};
use crate::relation::{partition_from_relation, OrchardPartition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WiringDiagram {
    n: usize,
    word: Vec<usize>,
}

/// One letter of the word, with the wires it swaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Lower of the two levels, 1-based.
    pub level: usize,
    /// Wire at `level` just before the crossing.
    pub lower: usize,
    /// Wire at `level + 1` just before the crossing.
    pub upper: usize,
}

impl WiringDiagram {
    pub fn new(n: usize, word: Vec<usize>) -> Result<Self> {
        let wd = WiringDiagram { n, word };
        wd.validate()?;
        Ok(wd)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Replays the word and checks that every pair of wires swaps exactly
    /// once.
    pub fn validate(&self) -> Result<()> {
        let expected = binomial(self.n as i64, 2) as usize;
        let mut order: Vec<usize> = (1..=self.n).collect();
        for (pos, &k) in self.word.iter().enumerate() {
            if k == 0 || k >= self.n {
                return Err(OrchardError::InvalidDiagram(format!(
                    "letter {} at position {} is not a level in 1..{}",
                    k,
                    pos + 1,
                    self.n
                )));
            }
            let (a, b) = (order[k - 1], order[k]);
            if a > b {
                return Err(OrchardError::InvalidDiagram(format!(
                    "wires {b} and {a} swap a second time at position {}",
                    pos + 1
                )));
            }
            order.swap(k - 1, k);
        }
        if self.word.len() != expected {
            return Err(OrchardError::InvalidDiagram(format!(
                "word has length {}, expected {expected}",
                self.word.len()
            )));
        }
        Ok(())
    }

    /// The crossings in word order.
    pub fn crossings(&self) -> Vec<Crossing> {
        let mut order: Vec<usize> = (1..=self.n).collect();
        self.word
            .iter()
            .map(|&k| {
                let c = Crossing {
                    level: k,
                    lower: order[k - 1],
                    upper: order[k],
                };
                order.swap(k - 1, k);
                c
            })
            .collect()
    }

    /// `levels[t][w-1]` is the level of wire `w` before letter `t`.
    fn levels(&self) -> Vec<Vec<usize>> {
        let mut level: Vec<usize> = (1..=self.n).collect();
        let mut order: Vec<usize> = (1..=self.n).collect();
        let mut out = Vec::with_capacity(self.word.len() + 1);
        out.push(level.clone());
        for &k in &self.word {
            let (a, b) = (order[k - 1], order[k]);
            order.swap(k - 1, k);
            level[a - 1] = k + 1;
            level[b - 1] = k;
            out.push(level.clone());
        }
        out
    }

    /// `wiring n` followed by the word on one or more lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| OrchardError::parse(1, "missing `wiring n` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 || fields[0] != "wiring" {
            return Err(OrchardError::parse(hl, "header must be `wiring n`"));
        }
        let n = parse_usize(fields[1], hl)?;
        let mut word = Vec::new();
        for (ln, line) in lines {
            for tok in line.split_whitespace() {
                word.push(parse_usize(tok, ln)?);
            }
        }
        WiringDiagram::new(n, word)
    }

    pub fn to_text(&self) -> String {
        format!("wiring {}\n{}\n", self.n, self.word.iter().join(" "))
    }

    fn check_wire(&self, w: usize) -> Result<()> {
        if w == 0 || w > self.n {
            return Err(OrchardError::LabelOutOfRange {
                label: w,
                n: self.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Swaps random adjacent pairs that have not crossed yet until every pair
/// has crossed. Not uniform over arrangements.
pub fn random_diagram(n: usize, rng: &mut impl Rng) -> WiringDiagram {
    let mut order: Vec<usize> = (1..=n).collect();
    let mut word = Vec::with_capacity(binomial(n as i64, 2) as usize);
    loop {
        let open: Vec<usize> = (1..n).filter(|&k| order[k - 1] < order[k]).collect();
        if open.is_empty() {
            break;
        }
        let k = open[rng.random_range(0..open.len())];
        order.swap(k - 1, k);
        word.push(k);
    }
    WiringDiagram { n, word }
}

pub fn random_diagram_seeded(n: usize, seed: u64) -> WiringDiagram {
    random_diagram(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Crossings of other pairs in each digon of a pair of wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DigonCounts {
    pub pair: (usize, usize),
    /// The digon made of the two regions between the wires.
    pub wedge: u64,
    /// The digon made of the regions above both and below both.
    pub band: u64,
}

/// Whether a crossing at `level` lies between wires `i` and `j`, given the
/// current levels.
fn in_wedge(levels: &[usize], level: usize, i: usize, j: usize) -> bool {
    (levels[i - 1] > level) != (levels[j - 1] > level)
}

fn digon_counts_with(
    levels: &[Vec<usize>],
    crossings: &[Crossing],
    i: usize,
    j: usize,
) -> DigonCounts {
    let mut wedge = 0;
    let mut band = 0;
    for (t, c) in crossings.iter().enumerate() {
        if [c.lower, c.upper].iter().any(|&w| w == i || w == j) {
            continue;
        }
        if in_wedge(&levels[t], c.level, i, j) {
            wedge += 1;
        } else {
            band += 1;
        }
    }
    DigonCounts {
        pair: (i.min(j), i.max(j)),
        wedge,
        band,
    }
}

pub fn digon_counts(wd: &WiringDiagram, i: usize, j: usize) -> Result<DigonCounts> {
    wd.check_wire(i)?;
    wd.check_wire(j)?;
    if i == j {
        return Err(OrchardError::RepeatedLabel(i));
    }
    Ok(digon_counts_with(&wd.levels(), &wd.crossings(), i, j))
}

/// Digon counts for all pairs `i < j`.
pub fn all_digon_counts(wd: &WiringDiagram) -> Vec<DigonCounts> {
    let levels = wd.levels();
    let crossings = wd.crossings();
    (1..=wd.n)
        .tuple_combinations()
        .map(|(i, j)| digon_counts_with(&levels, &crossings, i, j))
        .collect()
}

/// `C(n-2, 2)` is even: both digons of a pair have the same parity.
pub fn pseudoline_parity_even(n: usize) -> bool {
    !binomial_is_odd(n as i64 - 2, 2)
}

fn reference(n: usize) -> bool {
    binomial_is_odd(n as i64 - 3, 2)
}

/// The relation `L_i ~ L_j` iff a digon of the pair contains
/// `C(n-3, 2) (mod 2)` crossings. Requires `C(n-2, 2)` even.
pub fn pseudoline_partition(wd: &WiringDiagram) -> Result<OrchardPartition> {
    let n = wd.n;
    if !pseudoline_parity_even(n) {
        return Err(OrchardError::UnsupportedParity(format!(
            "C({}, 2) is odd for n = {n}; the arrangement has compatible orientations instead",
            n as i64 - 2
        )));
    }
    let odd = reference(n);
    let mut related = vec![vec![true; n]; n];
    for c in all_digon_counts(wd) {
        let (i, j) = c.pair;
        let r = (c.wedge % 2 == 1) == odd;
        related[i - 1][j - 1] = r;
        related[j - 1][i - 1] = r;
    }
    partition_from_relation(&related)
}

/// Direction of each wire: `true` is left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudolineOrientation {
    pub forward: Vec<bool>,
}

impl PseudolineOrientation {
    pub fn complement(&self) -> Self {
        PseudolineOrientation {
            forward: self.forward.iter().map(|b| !b).collect(),
        }
    }
}

/// The digon whose boundary is coherently oriented: the band when both
/// wires run the same way, the wedge otherwise.
fn coherent_count(c: &DigonCounts, same_direction: bool) -> u64 {
    if same_direction {
        c.band
    } else {
        c.wedge
    }
}

/// First pair at which `orientation` is not compatible, if any.
pub fn incompatible_pair(
    wd: &WiringDiagram,
    orientation: &PseudolineOrientation,
) -> Result<Option<(usize, usize)>> {
    if orientation.forward.len() != wd.n {
        return Err(OrchardError::DimensionMismatch {
            expected: wd.n,
            found: orientation.forward.len(),
        });
    }
    let odd = reference(wd.n);
    Ok(all_digon_counts(wd).into_iter().find_map(|c| {
        let (i, j) = c.pair;
        let same = orientation.forward[i - 1] == orientation.forward[j - 1];
        ((coherent_count(&c, same) % 2 == 1) != odd).then_some(c.pair)
    }))
}

pub fn is_compatible(wd: &WiringDiagram, orientation: &PseudolineOrientation) -> Result<bool> {
    Ok(incompatible_pair(wd, orientation)?.is_none())
}

/// The two compatible orientations, with wire 1 forward in the first.
/// Requires `C(n-2, 2)` odd.
pub fn pseudoline_orientation(wd: &WiringDiagram) -> Result<[PseudolineOrientation; 2]> {
    let n = wd.n;
    if pseudoline_parity_even(n) {
        return Err(OrchardError::UnsupportedParity(format!(
            "C({}, 2) is even for n = {n}; use the pseudoline partition instead",
            n as i64 - 2
        )));
    }
    let odd = reference(n);
    let mut forward = vec![true; n];
    let levels = wd.levels();
    let crossings = wd.crossings();
    for (j, f) in forward.iter_mut().enumerate().skip(1) {
        let c = digon_counts_with(&levels, &crossings, 1, j + 1);
        *f = (coherent_count(&c, true) % 2 == 1) == odd;
    }
    let o = PseudolineOrientation { forward };
    if let Some((i, j)) = incompatible_pair(wd, &o)? {
        return Err(OrchardError::Internal(format!(
            "orientation forced by wire 1 is incompatible at ({i}, {j})"
        )));
    }
    let c = o.complement();
    Ok([o, c])
}

/// Rewrites `(k, k±1, k)` at the 0-based `position` to `(k±1, k, k±1)`.
pub fn triangle_move(wd: &WiringDiagram, position: usize) -> Result<WiringDiagram> {
    let w = &wd.word;
    if position + 3 > w.len() {
        return Err(OrchardError::InvalidInput(format!(
            "no triangle at position {position}: word has length {}",
            w.len()
        )));
    }
    let (a, b, c) = (w[position], w[position + 1], w[position + 2]);
    if a != c || a.abs_diff(b) != 1 {
        return Err(OrchardError::InvalidInput(format!(
            "letters ({a}, {b}, {c}) at position {position} do not form a triangle"
        )));
    }
    let mut word = w.clone();
    word[position] = b;
    word[position + 1] = a;
    word[position + 2] = b;
    WiringDiagram::new(wd.n, word)
}

/// Positions where a triangle move applies.
pub fn triangle_positions(wd: &WiringDiagram) -> Vec<usize> {
    wd.word
        .windows(3)
        .enumerate()
        .filter(|(_, t)| t[0] == t[2] && t[0].abs_diff(t[1]) == 1)
        .map(|(p, _)| p)
        .collect()
}

/// The three wires exchanged by the triangle at `position`.
pub fn triangle_wires(wd: &WiringDiagram, position: usize) -> Result<[usize; 3]> {
    let c = wd.crossings();
    let (a, b) = (c.get(position), c.get(position + 1));
    match (a, b) {
        (Some(a), Some(b)) => {
            let mut ws: Vec<usize> = [a.lower, a.upper, b.lower, b.upper]
                .into_iter()
                .sorted()
                .dedup()
                .collect();
            ws.truncate(3);
            ws.try_into().map_err(|_| {
                OrchardError::InvalidInput(format!("no triangle at position {position}"))
            })
        }
        _ => Err(OrchardError::InvalidInput(format!(
            "no triangle at position {position}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    /// Smooth every crossing along the orientations.
    Respect,
    /// Smooth every crossing against the orientations.
    Oppose,
}

impl std::str::FromStr for Smoothing {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "respect" => Ok(Smoothing::Respect),
            "oppose" => Ok(Smoothing::Oppose),
            _ => Err(format!(
                "unknown smoothing `{s}`, expected respect or oppose"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub mode: Smoothing,
    pub curves: usize,
    /// Curves with a Moebius-band neighbourhood, i.e. nontrivial in homology.
    pub one_sided: usize,
    pub two_sided: usize,
    /// Number of segments in each curve, sorted.
    pub lengths: Vec<usize>,
}

/// Smooths every crossing and traces the resulting disjoint closed curves.
/// The total homology class is preserved, so the number of one-sided curves
/// has the parity of `n`.
pub fn desingularize(
    wd: &WiringDiagram,
    orientation: &PseudolineOrientation,
    mode: Smoothing,
) -> Result<CurveReport> {
    if let Some((i, j)) = incompatible_pair(wd, orientation)? {
        return Err(OrchardError::InvalidInput(format!(
            "orientation is not compatible at wires ({i}, {j})"
        )));
    }
    let n = wd.n;
    let cols = wd.word.len() + 1;
    // Segment (level l, column c) is node l-1 + n*c; a node has a left and a
    // right end. Ends are numbered 2*node (left) and 2*node+1 (right).
    let node = |l: usize, c: usize| (l - 1) + n * c;
    let total = n * cols;
    let mut partner = vec![usize::MAX; 2 * total];
    let mut link = |a: usize, b: usize| {
        partner[a] = b;
        partner[b] = a;
    };
    let crossings = wd.crossings();
    for c in 0..cols - 1 {
        let x = crossings[c];
        for l in 1..=n {
            if l != x.level && l != x.level + 1 {
                link(2 * node(l, c) + 1, 2 * node(l, c + 1));
            }
        }
        let same = orientation.forward[x.lower - 1] == orientation.forward[x.upper - 1];
        let horizontal = same == (mode == Smoothing::Respect);
        let (p, q) = (x.level, x.level + 1);
        if horizontal {
            link(2 * node(p, c) + 1, 2 * node(p, c + 1));
            link(2 * node(q, c) + 1, 2 * node(q, c + 1));
        } else {
            link(2 * node(p, c) + 1, 2 * node(q, c) + 1);
            link(2 * node(p, c + 1), 2 * node(q, c + 1));
        }
    }
    let last = cols - 1;
    let mut glue = vec![false; 2 * total];
    for l in 1..=n {
        let (a, b) = (2 * node(l, last) + 1, 2 * node(n + 1 - l, 0));
        link(a, b);
        glue[a] = true;
        glue[b] = true;
    }

    let mut seen = vec![false; total];
    let mut lengths = Vec::new();
    let mut one_sided = 0;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut glued = 0;
        let mut end = 2 * start;
        while !seen[end / 2] {
            seen[end / 2] = true;
            len += 1;
            let exit = end ^ 1;
            glued += glue[exit] as usize;
            end = partner[exit];
        }
        lengths.push(len);
        if glued % 2 == 1 {
            one_sided += 1;
        }
    }
    lengths.sort_unstable();
    Ok(CurveReport {
        mode,
        curves: lengths.len(),
        one_sided,
        two_sided: lengths.len() - one_sided,
        lengths,
    })
}

/// A wiring diagram of the lines dual to a planar configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualDiagram {
    pub diagram: WiringDiagram,
    /// `wire_to_point[w-1]` is the label of the point dual to wire `w`.
    pub wire_to_point: Vec<usize>,
    /// Shear `(a, b) -> (a + s b, b)` applied before dualizing.
    pub shear: Rat,
    /// Slope and intercept `(a, b)` of the line `y = a x - b` for each wire.
    pub lines: Vec<(Rat, Rat)>,
}

impl DualDiagram {
    pub fn point_of(&self, wire: usize) -> usize {
        self.wire_to_point[wire - 1]
    }

    /// The wire dual to point `label`.
    pub fn wire_of(&self, label: usize) -> usize {
        self.wire_to_point
            .iter()
            .position(|&p| p == label)
            .map(|w| w + 1)
            .expect("label in range")
    }

    /// Pulls a partition of wires back to point labels.
    pub fn to_points(&self, partition: &OrchardPartition) -> OrchardPartition {
        partition.relabel(&self.wire_to_point)
    }
}

/// Dualizes points `(a, b)` to lines `y = a x - b` and sweeps their
/// crossings from left to right. A seeded shear is applied first when two
/// points share their first coordinate, which would make the lines parallel.
pub fn dualize(cfg: &Configuration, seed: u64, retries: usize) -> Result<DualDiagram> {
    if cfg.dim() != 2 {
        return Err(OrchardError::DimensionMismatch {
            expected: 2,
            found: cfg.dim(),
        });
    }
    ensure_generic(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..retries.max(1) {
        let shear = if attempt == 0 {
            Rat::zero()
        } else {
            ratio(rng.random_range(-50..=50), rng.random_range(1..=50))
        };
        if let Some(d) = sweep(cfg, &shear) {
            return Ok(d);
        }
    }
    Err(OrchardError::RetriesExhausted {
        what: "shear giving distinct slopes".into(),
        retries,
    })
}

fn sweep(cfg: &Configuration, shear: &Rat) -> Option<DualDiagram> {
    let n = cfg.len();
    let lines: Vec<(Rat, Rat)> = cfg
        .points()
        .iter()
        .map(|p| (&p[0] + shear * &p[1], p[1].clone()))
        .collect();
    if !lines.iter().map(|l| &l.0).all_unique() {
        return None;
    }
    // Far left the lowest line has the largest slope.
    let by_slope: Vec<usize> = (0..n)
        .sorted_by(|&i, &j| lines[j].0.cmp(&lines[i].0))
        .collect();
    // Crossings sharing an abscissa involve disjoint pairs and commute;
    // they are taken bottom to top.
    let mut xs: Vec<(Rat, Rat, usize, usize)> = (0..n)
        .tuple_combinations()
        .map(|(i, j)| {
            let x = (&lines[i].1 - &lines[j].1) / (&lines[i].0 - &lines[j].0);
            let y = line_at(&lines[i], &x);
            (x, y, i, j)
        })
        .collect();
    xs.sort();
    let mut order = by_slope.clone();
    let mut word = Vec::with_capacity(xs.len());
    for (_, _, i, j) in xs {
        let pi = order.iter().position(|&k| k == i)?;
        let pj = order.iter().position(|&k| k == j)?;
        if pi.abs_diff(pj) != 1 {
            return None;
        }
        let lo = pi.min(pj);
        order.swap(lo, lo + 1);
        word.push(lo + 1);
    }
    let diagram = WiringDiagram::new(n, word).ok()?;
    Some(DualDiagram {
        diagram,
        wire_to_point: by_slope.iter().map(|i| i + 1).collect(),
        shear: shear.clone(),
        lines: by_slope.iter().map(|&i| lines[i].clone()).collect(),
    })
}

/// Evaluates the line `y = a x - b` at `x`.
pub fn line_at(line: &(Rat, Rat), x: &Rat) -> Rat {
    &line.0 * x - &line.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::random_generic;
    use crate::relation::{orchard_partition, separating_count, Method};

    #[test]
    fn validation() {
        assert!(WiringDiagram::new(3, vec![1, 2, 1]).is_ok());
        assert!(WiringDiagram::new(3, vec![1, 1, 2]).is_err());
        assert!(WiringDiagram::new(2, vec![1]).is_ok());
        assert!(WiringDiagram::new(3, vec![1, 2]).is_err());
        assert!(WiringDiagram::new(3, vec![1, 3, 1]).is_err());
        assert!(WiringDiagram::new(1, vec![]).is_ok());
    }

    #[test]
    fn digon_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [4, 5, 6] {
            let wd = random_diagram(n, &mut rng);
            wd.validate().unwrap();
            for c in all_digon_counts(&wd) {
                assert_eq!(c.wedge + c.band, binomial(n as i64 - 2, 2) as u64);
            }
        }
    }

    #[test]
    fn parity_gates() {
        let wd = random_diagram_seeded(5, 1);
        assert!(matches!(
            pseudoline_partition(&wd),
            Err(OrchardError::UnsupportedParity(_))
        ));
        let wd = random_diagram_seeded(6, 1);
        assert!(matches!(
            pseudoline_orientation(&wd),
            Err(OrchardError::UnsupportedParity(_))
        ));
        pseudoline_partition(&wd).unwrap();
    }

    #[test]
    fn orientations_are_complementary() {
        for seed in 0..5 {
            let wd = random_diagram_seeded(5, seed);
            let [a, b] = pseudoline_orientation(&wd).unwrap();
            assert!(a.forward[0]);
            assert_eq!(b, a.complement());
            assert!(is_compatible(&wd, &b).unwrap());
        }
    }

    #[test]
    fn triangle_move_is_an_involution() {
        let wd = WiringDiagram::new(3, vec![1, 2, 1]).unwrap();
        let moved = triangle_move(&wd, 0).unwrap();
        assert_eq!(moved.word(), &[2, 1, 2]);
        assert_eq!(triangle_move(&moved, 0).unwrap(), wd);
        assert!(triangle_move(&wd, 1).is_err());
        assert_eq!(triangle_wires(&wd, 0).unwrap(), [1, 2, 3]);
    }

    #[test]
    fn single_pseudoline_is_one_sided() {
        let wd = WiringDiagram::new(1, vec![]).unwrap();
        let o = PseudolineOrientation {
            forward: vec![true],
        };
        let r = desingularize(&wd, &o, Smoothing::Respect).unwrap();
        assert_eq!((r.curves, r.one_sided), (1, 1));
    }

    #[test]
    fn desingularization_parity() {
        for seed in 0..6 {
            let wd = random_diagram_seeded(5, seed);
            let [o, _] = pseudoline_orientation(&wd).unwrap();
            for mode in [Smoothing::Respect, Smoothing::Oppose] {
                let r = desingularize(&wd, &o, mode).unwrap();
                assert_eq!(r.one_sided % 2, 1, "{r:?}");
                assert_eq!(r.lengths.iter().sum::<usize>(), 5 * 11);
            }
        }
    }

    #[test]
    fn dual_digons_match_separating_counts() {
        let cfg = random_generic(6, 2, 12, 30).unwrap();
        let dual = dualize(&cfg, 0, 100).unwrap();
        for c in all_digon_counts(&dual.diagram) {
            let (p, q) = (dual.point_of(c.pair.0), dual.point_of(c.pair.1));
            assert_eq!(c.wedge, separating_count(&cfg, p, q).unwrap().count);
        }
        let wires = pseudoline_partition(&dual.diagram).unwrap();
        assert_eq!(
            dual.to_points(&wires),
            orchard_partition(&cfg, Method::AllPairs).unwrap()
        );
    }

    #[test]
    fn collinear_points_do_not_dualize() {
        let cfg = Configuration::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert!(matches!(
            dualize(&cfg, 0, 10),
            Err(OrchardError::NonGeneric { .. })
        ));
    }

    #[test]
    fn file_roundtrip() {
        let wd = WiringDiagram::parse("wiring 4\n1 2 1\n3 2 1\n").unwrap();
        assert_eq!(WiringDiagram::parse(&wd.to_text()).unwrap(), wd);
        assert!(WiringDiagram::parse("wiring 3\n1 1 2\n").is_err());
        assert!(WiringDiagram::parse("wires 3\n1 2 1\n").is_err());
    }
}
