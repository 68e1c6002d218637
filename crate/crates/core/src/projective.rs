//! Antipodal configurations on `S^d` and point sets in `RP^d`, given by
//! representative vectors in `R^{d+1}`, and their affine charts.

use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::config::{
    content_lines, parse_rows, parse_usize, Configuration, Point, DEFAULT_RETRIES,
};
use crate::error::{OrchardError, Result};
use crate::exact::{binomial_is_odd, det, det_sign_rows, dot, format_rat, rank, rat, Rat, Sign};
use crate::relation::{orchard_partition, reference_parity, Class, Method, OrchardPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Points of `RP^d`; each vector stands for its line.
    Projective,
    /// Antipodal pairs `+-v` on `S^d`.
    Sphere,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousConfiguration {
    dim: usize,
    mode: Mode,
    vectors: Vec<Vec<Rat>>,
}

impl HomogeneousConfiguration {
    pub fn new(dim: usize, mode: Mode, vectors: Vec<Vec<Rat>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != dim + 1 {
                return Err(OrchardError::DimensionMismatch {
                    expected: dim + 1,
                    found: v.len(),
                });
            }
        }
        Ok(HomogeneousConfiguration { dim, mode, vectors })
    }

    pub fn from_ints(dim: usize, mode: Mode, rows: &[&[i64]]) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        HomogeneousConfiguration::new(dim, mode, vectors)
    }

    /// Appends a last coordinate 1 to every point.
    pub fn homogenize(cfg: &Configuration, mode: Mode) -> Self {
        let vectors = cfg
            .points()
            .iter()
            .map(|p| p.coords().iter().cloned().chain([rat(1)]).collect())
            .collect();
        HomogeneousConfiguration {
            dim: cfg.dim(),
            mode,
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Rat>] {
        &self.vectors
    }

    /// Header `proj d n` or `sphere d n`, then `n` rows of `d+1` rationals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| OrchardError::parse(1, "missing `proj d n` or `sphere d n` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let mode = match fields.first().copied() {
            Some("proj") => Mode::Projective,
            Some("sphere") => Mode::Sphere,
            _ => {
                return Err(OrchardError::parse(
                    hl,
                    "header must start with `proj` or `sphere`",
                ))
            }
        };
        if fields.len() != 3 {
            return Err(OrchardError::parse(
                hl,
                "header must be `proj d n` or `sphere d n`",
            ));
        }
        let dim = parse_usize(fields[1], hl)?;
        let n = parse_usize(fields[2], hl)?;
        let vectors = parse_rows(&mut lines, n, dim + 1, hl)?;
        HomogeneousConfiguration::new(dim, mode, vectors)
    }

    pub fn to_text(&self) -> String {
        let tag = match self.mode {
            Mode::Projective => "proj",
            Mode::Sphere => "sphere",
        };
        let mut out = format!("{tag} {} {}\n", self.dim, self.len());
        for v in &self.vectors {
            out.push_str(&v.iter().map(format_rat).join(" "));
            out.push('\n');
        }
        out
    }

    /// 1-based labels of a linearly dependent subset of at most `d+1`
    /// vectors, if any.
    pub fn degenerate_subset(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let k = self.dim + 1;
        if n < k {
            return (rank(&self.vectors) < n).then(|| {
                (1..=n)
                    .find(|&m| rank(&self.vectors[..m]) < m)
                    .map(|m| (1..=m).collect())
                    .expect("a dependent prefix")
            });
        }
        (0..n).combinations(k).find_map(|s| {
            let rows: Vec<Vec<Rat>> = s.iter().map(|&i| self.vectors[i].clone()).collect();
            det_sign_rows(&rows)
                .expect("square")
                .is_zero()
                .then(|| s.iter().map(|i| i + 1).collect())
        })
    }

    pub fn is_generic(&self) -> bool {
        self.degenerate_subset().is_none()
    }

    pub fn ensure_generic(&self) -> Result<()> {
        match self.degenerate_subset() {
            Some(subset) => Err(OrchardError::NonGeneric { subset }),
            None => Ok(()),
        }
    }

    fn check_label(&self, label: usize) -> Result<()> {
        if label == 0 || label > self.len() {
            return Err(OrchardError::LabelOutOfRange {
                label,
                n: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for HomogeneousConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Random integer vectors in `[-bound, bound]^{d+1}` in linear general
/// position.
pub fn random_homogeneous(
    n: usize,
    d: usize,
    mode: Mode,
    seed: u64,
    bound: i64,
    retries: usize,
) -> Result<HomogeneousConfiguration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries {
        let vectors = (0..n)
            .map(|_| {
                (0..=d)
                    .map(|_| rat(rng.random_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        let h = HomogeneousConfiguration::new(d, mode, vectors)?;
        if h.is_generic() {
            return Ok(h);
        }
    }
    Err(OrchardError::RetriesExhausted {
        what: format!("generic {n} vectors in dimension {}", d + 1),
        retries,
    })
}

/// An affine chart: the complement of the hyperplane `l = 0`, identified
/// with `R^d` through `v -> v / l(v)` followed by dropping one coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub covector: Vec<Rat>,
}

impl Serialize for Chart {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.covector.iter().map(format_rat))
    }
}

impl Chart {
    pub fn new(covector: Vec<Rat>) -> Self {
        Chart { covector }
    }

    /// The chart `x_{d+1} != 0`.
    pub fn standard(d: usize) -> Self {
        let mut c = vec![rat(0); d + 1];
        c[d] = rat(1);
        Chart { covector: c }
    }

    pub fn eval(&self, v: &[Rat]) -> Rat {
        dot(&self.covector, v)
    }

    pub fn validate(&self, hcfg: &HomogeneousConfiguration) -> Result<()> {
        if self.covector.len() != hcfg.dim + 1 {
            return Err(OrchardError::DimensionMismatch {
                expected: hcfg.dim + 1,
                found: self.covector.len(),
            });
        }
        if self.covector.iter().all(Zero::is_zero) {
            return Err(OrchardError::InvalidChart("zero covector".into()));
        }
        if let Some(i) = hcfg.vectors.iter().position(|v| self.eval(v).is_zero()) {
            return Err(OrchardError::InvalidChart(format!(
                "point {} lies on the hyperplane at infinity",
                i + 1
            )));
        }
        Ok(())
    }

    /// Coordinate dropped when passing to `R^d`.
    fn dropped(&self) -> usize {
        self.covector
            .iter()
            .rposition(|x| !x.is_zero())
            .expect("nonzero covector")
    }
}

/// Random integer covector avoiding every point.
pub fn random_chart(
    hcfg: &HomogeneousConfiguration,
    rng: &mut impl Rng,
    retries: usize,
) -> Result<Chart> {
    for _ in 0..retries {
        let chart = Chart::new(
            (0..=hcfg.dim)
                .map(|_| rat(rng.random_range(-20..=20)))
                .collect(),
        );
        if chart.validate(hcfg).is_ok() {
            return Ok(chart);
        }
    }
    Err(OrchardError::RetriesExhausted {
        what: "chart avoiding all points".into(),
        retries,
    })
}

/// The first coordinate chart avoiding all points, counted from the last
/// coordinate, else a seeded random chart.
pub fn default_chart(hcfg: &HomogeneousConfiguration) -> Result<Chart> {
    for c in (0..=hcfg.dim).rev() {
        let mut cov = vec![rat(0); hcfg.dim + 1];
        cov[c] = rat(1);
        let chart = Chart::new(cov);
        if chart.validate(hcfg).is_ok() {
            return Ok(chart);
        }
    }
    random_chart(hcfg, &mut ChaCha8Rng::seed_from_u64(0), DEFAULT_RETRIES)
}

/// Affine coordinates of `v / l(v)`.
pub fn project_to_chart(hcfg: &HomogeneousConfiguration, chart: &Chart) -> Result<Configuration> {
    chart.validate(hcfg)?;
    hcfg.ensure_generic()?;
    let drop = chart.dropped();
    let points = hcfg
        .vectors
        .iter()
        .map(|v| {
            let l = chart.eval(v);
            Point::new(
                v.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != drop)
                    .map(|(_, x)| x / &l)
                    .collect(),
            )
        })
        .collect();
    Configuration::new(hcfg.dim, points)
}

/// `C(n-2, d)` is even: the relation on projective points is well defined.
pub fn projective_parity_even(n: usize, d: usize) -> bool {
    !binomial_is_odd(n as i64 - 2, d as i64)
}

fn gate_even(hcfg: &HomogeneousConfiguration) -> Result<()> {
    let (n, d) = (hcfg.len(), hcfg.dim);
    if projective_parity_even(n, d) {
        Ok(())
    } else {
        Err(OrchardError::UnsupportedParity(format!(
            "C({}, {d}) is odd for n = {n}; the projective relation needs it even. \
             In this case the immersed complete graph is homologically trivial instead (see `gamma`)",
            n as i64 - 2
        )))
    }
}

/// The Orchard partition of the projection to `chart`. Defined when
/// `C(n-2, d)` is even, and then independent of the chart.
pub fn projective_orchard(
    hcfg: &HomogeneousConfiguration,
    chart: &Chart,
) -> Result<OrchardPartition> {
    gate_even(hcfg)?;
    orchard_partition(&project_to_chart(hcfg, chart)?, Method::Anchor)
}

/// Partition of the `2n` points `+-P_i` of an antipodal configuration.
/// Labels are signed: `i` is `P_i`, `-i` is `-P_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedPartition {
    #[serde(rename = "classA")]
    pub class_a: Vec<i64>,
    #[serde(rename = "classB")]
    pub class_b: Vec<i64>,
}

impl SignedPartition {
    /// From the class of each `+P_i`, and whether `-P_i` joins it.
    fn build(plus: &[Class], antipodes_same: bool) -> Self {
        let flip = plus.first() == Some(&Class::B);
        let mut class_a = Vec::new();
        let mut class_b = Vec::new();
        for (i, &c) in plus.iter().enumerate() {
            let c = if flip { c.other() } else { c };
            let l = i as i64 + 1;
            let neg = if antipodes_same { c } else { c.other() };
            for (label, class) in [(l, c), (-l, neg)] {
                match class {
                    Class::A => class_a.push(label),
                    Class::B => class_b.push(label),
                }
            }
        }
        let key = |x: &i64| (x.abs(), *x < 0);
        class_a.sort_by_key(key);
        class_b.sort_by_key(key);
        SignedPartition { class_a, class_b }
    }

    pub fn class_of(&self, label: i64) -> Option<Class> {
        if self.class_a.contains(&label) {
            Some(Class::A)
        } else if self.class_b.contains(&label) {
            Some(Class::B)
        } else {
            None
        }
    }

    /// `Some(true)` when every `-P_i` is in the class of `P_i`,
    /// `Some(false)` when every one is in the other class.
    pub fn antipodes_same(&self) -> Option<bool> {
        let n = (self.class_a.len() + self.class_b.len()) as i64 / 2;
        let rel: Vec<bool> = (1..=n)
            .map(|i| self.class_of(i) == self.class_of(-i))
            .collect();
        match rel.iter().all_equal_value() {
            Ok(&v) => Some(v),
            Err(None) => Some(true),
            Err(Some(_)) => None,
        }
    }
}

/// The Orchard relation on `+-P_1, ..., +-P_n` computed in `chart`. When
/// `C(n-2, d)` is even each antipodal pair shares a class; when it is odd
/// they are always separated.
pub fn spherical_orchard(
    hcfg: &HomogeneousConfiguration,
    chart: &Chart,
) -> Result<SignedPartition> {
    if hcfg.mode != Mode::Sphere {
        return Err(OrchardError::InvalidInput(
            "spherical relation needs a `sphere` configuration".into(),
        ));
    }
    let (n, d) = (hcfg.len(), hcfg.dim);
    let affine = orchard_partition(&project_to_chart(hcfg, chart)?, Method::Anchor)?;
    if projective_parity_even(n, d) {
        let plus: Vec<Class> = (1..=n)
            .map(|i| affine.class_of(i).expect("label"))
            .collect();
        return Ok(SignedPartition::build(&plus, true));
    }
    // The point of each pair in the hemisphere l > 0 gets the affine class.
    let plus: Vec<Class> = (1..=n)
        .map(|i| {
            let c = affine.class_of(i).expect("label");
            if chart.eval(&hcfg.vectors[i - 1]).is_positive() {
                c
            } else {
                c.other()
            }
        })
        .collect();
    Ok(SignedPartition::build(&plus, false))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    /// The segment between the two points inside the chart.
    Bounded,
    /// The complementary arc through the hyperplane at infinity.
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaEdge {
    pub pair: (usize, usize),
    /// Spans of `d` other points meeting the bounded segment.
    pub bounded_count: u64,
    /// Spans meeting the other component, including at infinity.
    pub unbounded_count: u64,
    /// The component whose count is `C(n-3, d-1) (mod 2)`.
    pub chosen: Component,
    /// Homology class relative to the chart: 0 for the bounded segment.
    pub class: u8,
}

fn gate_odd(hcfg: &HomogeneousConfiguration) -> Result<()> {
    let (n, d) = (hcfg.len(), hcfg.dim);
    if projective_parity_even(n, d) {
        Err(OrchardError::UnsupportedParity(format!(
            "C({}, {d}) is even for n = {n}: both components of every line have the \
             same parity; use the projective partition instead",
            n as i64 - 2
        )))
    } else {
        Ok(())
    }
}

/// Edges of the immersed complete graph, each chosen as the component of
/// the line through two points met by `C(n-3, d-1) (mod 2)` spans of `d`
/// other points. Requires `C(n-2, d)` odd.
pub fn gamma_graph(hcfg: &HomogeneousConfiguration, chart: &Chart) -> Result<Vec<GammaEdge>> {
    gate_odd(hcfg)?;
    chart.validate(hcfg)?;
    hcfg.ensure_generic()?;
    let (n, d) = (hcfg.len(), hcfg.dim);
    let odd = reference_parity(n, d);
    let v = &hcfg.vectors;
    let mut edges = Vec::new();
    for (i, j) in (0..n).tuple_combinations() {
        let (li, lj) = (chart.eval(&v[i]), chart.eval(&v[j]));
        let mut bounded = 0u64;
        let mut unbounded = 0u64;
        for s in (0..n).filter(|&k| k != i && k != j).combinations(d) {
            // f vanishes on span(S); restricted to the chart along
            // p + t (q - p) it is affine in t.
            let f = |x: &[Rat]| {
                let rows: Vec<Vec<Rat>> = std::iter::once(x.to_vec())
                    .chain(s.iter().map(|&k| v[k].clone()))
                    .collect();
                det(&rows).expect("square")
            };
            let fp = f(&v[i]) / &li;
            let fq = f(&v[j]) / &lj;
            let diff = &fp - &fq;
            let inside = !diff.is_zero() && {
                let t0 = fp / diff;
                t0 > Rat::zero() && t0 < rat(1)
            };
            if inside {
                bounded += 1;
            } else {
                unbounded += 1;
            }
        }
        let chosen = if (bounded % 2 == 1) == odd {
            Component::Bounded
        } else {
            Component::Unbounded
        };
        edges.push(GammaEdge {
            pair: (i + 1, j + 1),
            bounded_count: bounded,
            unbounded_count: unbounded,
            chosen,
            class: (chosen == Component::Unbounded) as u8,
        });
    }
    Ok(edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    pub pass: bool,
    pub triangles_checked: usize,
    /// A triangle with odd total class, if any.
    pub witness: Option<(usize, usize, usize)>,
    pub edges: Vec<GammaEdge>,
}

/// Checks that every triangle of the graph has even total class. Triangles
/// generate the cycle space of a complete graph.
pub fn verify_homological_triviality(
    hcfg: &HomogeneousConfiguration,
    chart: &Chart,
) -> Result<TrivialityReport> {
    let edges = gamma_graph(hcfg, chart)?;
    let n = hcfg.len();
    let class = |i: usize, j: usize| -> u8 {
        let idx = edges.iter().position(|e| e.pair == (i, j)).expect("edge");
        edges[idx].class
    };
    let mut witness = None;
    let mut triangles_checked = 0;
    for (i, j, k) in (1..=n).tuple_combinations() {
        triangles_checked += 1;
        if (class(i, j) + class(j, k) + class(i, k)) % 2 == 1 {
            witness = Some((i, j, k));
            break;
        }
    }
    Ok(TrivialityReport {
        pass: witness.is_none(),
        triangles_checked,
        witness,
        edges,
    })
}

/// The sign of `P_label` relative to `chart`: which of `+-P` lies in the
/// hemisphere `l > 0`.
pub fn hemisphere_sign(
    hcfg: &HomogeneousConfiguration,
    chart: &Chart,
    label: usize,
) -> Result<Sign> {
    hcfg.check_label(label)?;
    Ok(Sign::of(&chart.eval(&hcfg.vectors[label - 1])))
}
