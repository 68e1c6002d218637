//! Affine point configurations, genericity and chirotopes.
//!
//! Labels are 1-based everywhere in the public API: point `i` of a
//! configuration is `points()[i - 1]`.

use std::fmt;
use std::ops::Index;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{OrchardError, Result};
use crate::exact::{det_sign_rows, format_rat, parse_rat, rank, rat, Rat, Sign};

/// Retry budget for rejection sampling, per point.
pub const DEFAULT_RETRIES: usize = 1000;

/// Denominator exponent of the perturbation step `1/2^40`.
pub const PERTURBATION_BITS: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Rat>,
}

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn sub(&self, other: &Point) -> Vec<Rat> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect()
    }
}

impl Index<usize> for Point {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.coords[i]
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(format_rat))
    }
}

impl From<Vec<Rat>> for Point {
    fn from(coords: Vec<Rat>) -> Self {
        Point::new(coords)
    }
}

/// Ordered, labeled list of points in `R^d`. Order is part of identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    #[serde(rename = "d")]
    dim: usize,
    points: Vec<Point>,
}

impl Configuration {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(OrchardError::InvalidInput(
                "dimension must be positive".into(),
            ));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(OrchardError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(Configuration { dim, points })
    }

    pub fn from_ints(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Configuration::new(dim, points.iter().map(|p| Point::from_ints(p)).collect())
    }

    /// Points on the real line.
    pub fn on_line(xs: &[i64]) -> Self {
        Configuration {
            dim: 1,
            points: xs.iter().map(|&x| Point::from_ints(&[x])).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Point with 1-based label `label`.
    pub fn point(&self, label: usize) -> Result<&Point> {
        self.check_label(label)?;
        Ok(&self.points[label - 1])
    }

    pub(crate) fn check_label(&self, label: usize) -> Result<()> {
        if label == 0 || label > self.len() {
            return Err(OrchardError::LabelOutOfRange {
                label,
                n: self.len(),
            });
        }
        Ok(())
    }

    /// Subconfiguration on the given 1-based labels, in the given order.
    pub fn subconfiguration(&self, labels: &[usize]) -> Result<Configuration> {
        let points = labels
            .iter()
            .map(|&l| self.point(l).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(Configuration {
            dim: self.dim,
            points,
        })
    }

    pub fn with_point(&self, label: usize, p: Point) -> Result<Configuration> {
        self.check_label(label)?;
        if p.dim() != self.dim {
            return Err(OrchardError::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        let mut out = self.clone();
        out.points[label - 1] = p;
        Ok(out)
    }

    /// Image under `x -> A x + b`, with `A` given by rows.
    pub fn affine_image(&self, a: &[Vec<Rat>], b: &[Rat]) -> Result<Configuration> {
        let d_out = a.len();
        if b.len() != d_out || a.iter().any(|r| r.len() != self.dim) {
            return Err(OrchardError::DimensionMismatch {
                expected: self.dim,
                found: a.first().map_or(0, Vec::len),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                Point::new(
                    a.iter()
                        .zip(b)
                        .map(|(row, bi)| crate::exact::dot(row, p.coords()) + bi)
                        .collect(),
                )
            })
            .collect();
        Configuration::new(d_out, points)
    }

    /// Negates the first coordinate of every point.
    pub fn mirrored(&self) -> Configuration {
        let mut out = self.clone();
        for p in &mut out.points {
            p.coords[0] = -p.coords[0].clone();
        }
        out
    }

    /// Parses the plain text format: a `d n` header, then `n` lines of `d`
    /// rationals. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Configuration> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| OrchardError::parse(1, "missing `d n` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(OrchardError::parse(hl, "header must be `d n`"));
        }
        let dim = parse_usize(fields[0], hl)?;
        let n = parse_usize(fields[1], hl)?;
        let points = parse_rows(&mut lines, n, dim, hl)?;
        Configuration::new(dim, points.into_iter().map(Point::new).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dim, self.len());
        for p in &self.points {
            out.push_str(&p.coords.iter().map(format_rat).join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| {
        OrchardError::parse(line, format!("expected a non-negative integer, got `{s}`"))
    })
}

pub(crate) fn parse_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    n: usize,
    width: usize,
    header_line: usize,
) -> Result<Vec<Vec<Rat>>> {
    let mut rows = Vec::with_capacity(n);
    let mut last = header_line;
    for (ln, line) in lines.by_ref() {
        last = ln;
        let row = line
            .split_whitespace()
            .map(|t| parse_rat(t).map_err(|m| OrchardError::parse(ln, m)))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != width {
            return Err(OrchardError::parse(
                ln,
                format!("expected {width} coordinates, found {}", row.len()),
            ));
        }
        rows.push(row);
        if rows.len() == n {
            break;
        }
    }
    if rows.len() != n {
        return Err(OrchardError::parse(
            last,
            format!("expected {n} points, found {}", rows.len()),
        ));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(OrchardError::parse(
            ln,
            "trailing content after the last point",
        ));
    }
    Ok(rows)
}

/// Sign of `det(S - X)`: the determinant of the `d x d` matrix with rows
/// `s_1 - x, ..., s_d - x`.
pub fn det_sign(s: &[&Point], x: &Point) -> Result<Sign> {
    let d = x.dim();
    if s.len() != d {
        return Err(OrchardError::DimensionMismatch {
            expected: d,
            found: s.len(),
        });
    }
    if let Some(p) = s.iter().find(|p| p.dim() != d) {
        return Err(OrchardError::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }
    let rows: Vec<Vec<Rat>> = s.iter().map(|p| p.sub(x)).collect();
    det_sign_rows(&rows)
}

/// `det_sign` on 0-based indices into `cfg`.
pub(crate) fn det_sign_idx(cfg: &Configuration, s: &[usize], x: usize) -> Sign {
    let pts: Vec<&Point> = s.iter().map(|&i| &cfg.points[i]).collect();
    det_sign(&pts, &cfg.points[x]).expect("configuration points share a dimension")
}

/// First dependent subset of at most `d + 1` points, as 1-based labels.
pub fn degenerate_subset(cfg: &Configuration) -> Option<Vec<usize>> {
    let n = cfg.len();
    let d = cfg.dim();
    if n <= d + 1 {
        if n == 0 {
            return None;
        }
        let diffs: Vec<Vec<Rat>> = cfg.points[1..]
            .iter()
            .map(|p| p.sub(&cfg.points[0]))
            .collect();
        return (rank(&diffs) < n - 1).then(|| (1..=n).collect());
    }
    (0..n).combinations(d + 1).find_map(|t| {
        det_sign_idx(cfg, &t[1..], t[0])
            .is_zero()
            .then(|| t.iter().map(|i| i + 1).collect())
    })
}

/// Every subset of at most `d + 1` points is affinely independent.
pub fn is_generic(cfg: &Configuration) -> bool {
    degenerate_subset(cfg).is_none()
}

pub fn ensure_generic(cfg: &Configuration) -> Result<()> {
    match degenerate_subset(cfg) {
        None => Ok(()),
        Some(subset) => Err(OrchardError::NonGeneric { subset }),
    }
}

/// Orientation of every `(d+1)`-subset, keyed by sorted 1-based label tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chirotope {
    pub dim: usize,
    pub n: usize,
    pub entries: Vec<(Vec<usize>, Sign)>,
}

impl Chirotope {
    pub fn get(&self, tuple: &[usize]) -> Option<Sign> {
        self.entries
            .binary_search_by(|(t, _)| t.as_slice().cmp(tuple))
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        self.entries.iter().map(|(_, s)| *s)
    }

    /// Number of entries on which two chirotopes of equal shape differ.
    pub fn differences(&self, other: &Chirotope) -> Vec<Vec<usize>> {
        self.entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| a.1 != b.1)
            .map(|(a, _)| a.0.clone())
            .collect()
    }
}

/// Tuple `(i_0 < ... < i_d)` maps to `det_sign({P_i1..P_id}, P_i0)`.
pub fn chirotope(cfg: &Configuration) -> Result<Chirotope> {
    ensure_generic(cfg)?;
    Ok(chirotope_unchecked(cfg))
}

pub(crate) fn chirotope_unchecked(cfg: &Configuration) -> Chirotope {
    let d = cfg.dim();
    let entries = (0..cfg.len())
        .combinations(d + 1)
        .map(|t| {
            let s = det_sign_idx(cfg, &t[1..], t[0]);
            (t.iter().map(|i| i + 1).collect(), s)
        })
        .collect();
    Chirotope {
        dim: d,
        n: cfg.len(),
        entries,
    }
}

/// Compares orientations of corresponding simplices under `bijection`,
/// where `bijection[i - 1]` is the label in `b` matched with label `i` of `a`.
pub fn same_isomorphism_type(
    a: &Configuration,
    b: &Configuration,
    bijection: &[usize],
) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(OrchardError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if a.len() != b.len() || bijection.len() != a.len() {
        return Err(OrchardError::InvalidInput(format!(
            "sizes differ: {} vs {} points, bijection of length {}",
            a.len(),
            b.len(),
            bijection.len()
        )));
    }
    let mut seen = vec![false; b.len()];
    for &l in bijection {
        b.check_label(l)?;
        if std::mem::replace(&mut seen[l - 1], true) {
            return Err(OrchardError::RepeatedLabel(l));
        }
    }
    let ca = chirotope(a)?;
    ensure_generic(b)?;
    let d = a.dim();
    for (tuple, sa) in &ca.entries {
        let mapped: Vec<usize> = tuple.iter().map(|&l| bijection[l - 1] - 1).collect();
        let sb = det_sign_idx(b, &mapped[1..], mapped[0]);
        debug_assert_eq!(mapped.len(), d + 1);
        if *sa != sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Seeded generic configuration with integer coordinates in
/// `[-bound, bound]`. Points are drawn one at a time; a point that breaks
/// genericity is resampled, at most `retries` times per point.
pub fn random_generic_with_retries(
    n: usize,
    d: usize,
    seed: u64,
    bound: i64,
    retries: usize,
) -> Result<Configuration> {
    if n == 0 || d == 0 || bound < 0 {
        return Err(OrchardError::InvalidInput(
            "need n >= 1, d >= 1 and a non-negative bound".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cfg = Configuration {
        dim: d,
        points: Vec::with_capacity(n),
    };
    for _ in 0..n {
        let mut accepted = false;
        for _ in 0..=retries {
            let p = Point::new(
                (0..d)
                    .map(|_| rat(rng.random_range(-bound..=bound)))
                    .collect(),
            );
            cfg.points.push(p);
            if extends_generically(&cfg) {
                accepted = true;
                break;
            }
            cfg.points.pop();
        }
        if !accepted {
            return Err(OrchardError::RetriesExhausted {
                what: format!(
                    "generic point {} of {n} in R^{d} with bound {bound}",
                    cfg.len() + 1
                ),
                retries,
            });
        }
    }
    Ok(cfg)
}

pub fn random_generic(n: usize, d: usize, seed: u64, bound: i64) -> Result<Configuration> {
    random_generic_with_retries(n, d, seed, bound, DEFAULT_RETRIES)
}

/// Whether the last point keeps an otherwise generic configuration generic.
fn extends_generically(cfg: &Configuration) -> bool {
    let n = cfg.len();
    let d = cfg.dim();
    if n <= d + 1 {
        return degenerate_subset(cfg).is_none();
    }
    let last = n - 1;
    (0..last)
        .combinations(d)
        .all(|s| !det_sign_idx(cfg, &s, last).is_zero())
}

/// Moves every coordinate by `r / 2^40` with `r` a seeded integer in
/// `[-2^20, 2^20]`, then re-tests genericity. Results computed on the
/// perturbed configuration depend on the perturbation; only the generic
/// points of the input have a perturbation-independent relation.
pub fn perturb(cfg: &Configuration, seed: u64) -> Result<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = Rat::new(BigInt::one(), BigInt::one() << PERTURBATION_BITS);
    let points = cfg
        .points
        .iter()
        .map(|p| {
            Point::new(
                p.coords
                    .iter()
                    .map(|c| c + &eps * rat(rng.random_range(-(1i64 << 20)..=(1i64 << 20))))
                    .collect(),
            )
        })
        .collect();
    let out = Configuration {
        dim: cfg.dim,
        points,
    };
    ensure_generic(&out)?;
    Ok(out)
}

/// Points `(a, a^2, ..., a^d)` for the given parameters.
pub fn moment_curve(params: &[i64], d: usize) -> Configuration {
    let points = params
        .iter()
        .map(|&a| {
            let a = rat(a);
            let mut acc = Rat::one();
            Point::new(
                (0..d)
                    .map(|_| {
                        acc = &acc * &a;
                        acc.clone()
                    })
                    .collect(),
            )
        })
        .collect();
    Configuration { dim: d, points }
}

/// Vertices of an `m`-gon inscribed in the unit circle, close to regular.
///
/// Uses the rational parametrization `((1-t^2)/(1+t^2), 2t/(1+t^2))` with
/// `t ~ tan(theta/2)` rounded to a multiple of `1/1024`, so every vertex lies
/// exactly on the circle and the polygon is convex with no three collinear
/// vertices. The vertex at angle `pi` (even `m`) is placed at `(-1, 0)`.
pub fn regular_polygon(m: usize) -> Configuration {
    let points = (0..m)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            if 2 * k == m {
                return Point::from_ints(&[-1, 0]);
            }
            let t = Rat::new(
                BigInt::from(((theta / 2.0).tan() * 1024.0).round() as i64),
                BigInt::from(1024),
            );
            let t2 = &t * &t;
            let den = Rat::one() + &t2;
            Point::new(vec![(Rat::one() - &t2) / &den, (&t + &t) / &den])
        })
        .collect();
    Configuration { dim: 2, points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn square() -> Configuration {
        Configuration::from_ints(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap()
    }

    #[test]
    fn det_sign_examples() {
        let s = [&p(&[1, 0]), &p(&[0, 1])];
        assert_eq!(det_sign(&s, &p(&[0, 0])).unwrap(), Sign::Positive);
        assert_eq!(det_sign(&s, &p(&[1, 1])).unwrap(), Sign::Negative);
        let c = [&p(&[0, 0]), &p(&[2, 0])];
        assert_eq!(det_sign(&c, &p(&[1, 0])).unwrap(), Sign::Zero);
    }

    #[test]
    fn det_sign_dimension_errors() {
        assert!(det_sign(&[&p(&[1, 0])], &p(&[0, 0])).is_err());
        assert!(det_sign(&[&p(&[1, 0]), &p(&[1, 0, 0])], &p(&[0, 0])).is_err());
    }

    #[test]
    fn genericity_examples() {
        assert!(is_generic(&square()));
        let collinear = Configuration::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert!(!is_generic(&collinear));
        assert_eq!(degenerate_subset(&collinear), Some(vec![1, 2, 3]));
        let two = Configuration::from_ints(3, &[&[0, 0, 0], &[1, 2, 3]]).unwrap();
        assert!(is_generic(&two));
        let dup = Configuration::from_ints(3, &[&[1, 2, 3], &[1, 2, 3]]).unwrap();
        assert!(!is_generic(&dup));
    }

    #[test]
    fn degenerate_subset_names_offenders() {
        let cfg = Configuration::from_ints(2, &[&[0, 0], &[5, 1], &[1, 1], &[2, 2]]).unwrap();
        assert_eq!(degenerate_subset(&cfg), Some(vec![1, 3, 4]));
        match chirotope(&cfg) {
            Err(OrchardError::NonGeneric { subset }) => assert_eq!(subset, vec![1, 3, 4]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chirotope_examples() {
        let tri = Configuration::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let c = chirotope(&tri).unwrap();
        assert_eq!(c.entries, vec![(vec![1, 2, 3], Sign::Positive)]);

        let c = chirotope(&square()).unwrap();
        let tuples: Vec<_> = c.entries.iter().map(|e| e.0.clone()).collect();
        assert_eq!(
            tuples,
            vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]
        );
        assert!(c.signs().all(|s| s == Sign::Positive));
        assert_eq!(c.get(&[1, 3, 4]), Some(Sign::Positive));

        let m = chirotope(&square().mirrored()).unwrap();
        assert!(m.signs().all(|s| s == Sign::Negative));
    }

    #[test]
    fn isomorphism_examples() {
        let sq = square();
        let id = [1, 2, 3, 4];
        assert!(same_isomorphism_type(&sq, &sq, &id).unwrap());
        assert!(!same_isomorphism_type(&sq, &sq.mirrored(), &id).unwrap());
        let shifted = sq
            .affine_image(
                &[vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
                &[ratio(7, 3), rat(-5)],
            )
            .unwrap();
        assert!(same_isomorphism_type(&sq, &shifted, &id).unwrap());
        assert!(same_isomorphism_type(&sq, &sq, &[1, 2]).is_err());
        assert!(same_isomorphism_type(&sq, &sq, &[1, 1, 2, 3]).is_err());
    }

    #[test]
    fn random_generic_contract() {
        let a = random_generic(3, 2, 1, 10).unwrap();
        assert_eq!(a.len(), 3);
        assert!(is_generic(&a));
        assert_eq!(a, random_generic(3, 2, 1, 10).unwrap());
        let single = random_generic(1, 1, 99, 0).unwrap();
        assert_eq!(single.len(), 1);
        // Four points on the line with coordinates in {-1, 0, 1} cannot exist.
        assert!(matches!(
            random_generic_with_retries(4, 1, 0, 1, 50),
            Err(OrchardError::RetriesExhausted { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let text = "# comment\n2 3\n1/2 -4/2\n0 3 # trailing\n\n7 1/3\n";
        let cfg = Configuration::parse(text).unwrap();
        assert_eq!(cfg.to_text(), "2 3\n1/2 -2\n0 3\n7 1/3\n");
        assert_eq!(Configuration::parse(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Configuration::parse(""),
            Err(OrchardError::Parse { .. })
        ));
        assert!(matches!(
            Configuration::parse("2 2\n1 2\n3\n"),
            Err(OrchardError::Parse { line: 3, .. })
        ));
        assert!(Configuration::parse("2 2\n1 2\n").is_err());
        assert!(Configuration::parse("1 1\n1\n2\n").is_err());
        assert!(Configuration::parse("0 1\n\n").is_err());
    }

    #[test]
    fn perturbation_resolves_collinearity() {
        let collinear = Configuration::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        let q = perturb(&collinear, 3).unwrap();
        assert!(is_generic(&q));
        assert_eq!(q, perturb(&collinear, 3).unwrap());
    }

    #[test]
    fn polygon_is_generic_and_on_circle() {
        for m in 3..12 {
            let poly = regular_polygon(m);
            assert!(is_generic(&poly), "m = {m}");
            for pt in poly.points() {
                assert_eq!(&pt[0] * &pt[0] + &pt[1] * &pt[1], rat(1));
            }
            // convex position: consecutive triples turn the same way
            let c = chirotope(&poly).unwrap();
            for (t, s) in &c.entries {
                let _ = t;
                assert_eq!(*s, Sign::Positive);
            }
        }
    }
}
