//! The Orchard relation on a generic configuration.
//!
//! Two points are related when the number of hyperplanes spanned by `d`
//! other points and separating them has the parity of `C(n-3, d-1)`. The
//! relation is an equivalence with at most two classes; this module computes
//! it by three independent routes (direct counting, the sign of a product of
//! determinants, and an anchor sweep from point 1) and builds the recursive
//! partition tree plus the two sign invariants defined on a class.

use itertools::Itertools;
use serde::Serialize;

use crate::config::{det_sign_idx, ensure_generic, Configuration};
use crate::error::{OrchardError, Result};
use crate::exact::{binomial_is_odd, det, Rat, Sign};

/// Parity of `C(n-3, d-1)`, the reference parity of the relation.
pub fn reference_parity(n: usize, d: usize) -> bool {
    binomial_is_odd(n as i64 - 3, d as i64 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Class {
    A,
    B,
}

impl Class {
    pub fn other(self) -> Class {
        match self {
            Class::A => Class::B,
            Class::B => Class::A,
        }
    }
}

/// Canonical two-class partition: label 1 is always in class A.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OrchardPartition {
    #[serde(rename = "classA")]
    pub class_a: Vec<usize>,
    #[serde(rename = "classB")]
    pub class_b: Vec<usize>,
}

impl OrchardPartition {
    /// Builds the canonical partition from `related_to_first[i]`, whether
    /// label `i + 1` is related to label 1.
    pub fn from_first_row(related_to_first: &[bool]) -> Self {
        let (a, b): (Vec<usize>, Vec<usize>) =
            (1..=related_to_first.len()).partition(|&l| l == 1 || related_to_first[l - 1]);
        OrchardPartition {
            class_a: a,
            class_b: b,
        }
    }

    /// Canonicalizes an arbitrary assignment so that label 1 lands in A.
    pub fn from_assignment(classes: &[Class]) -> Self {
        let first = classes.first().copied().unwrap_or(Class::A);
        let row: Vec<bool> = classes.iter().map(|&c| c == first).collect();
        OrchardPartition::from_first_row(&row)
    }

    pub fn len(&self) -> usize {
        self.class_a.len() + self.class_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.class_b.is_empty()
    }

    pub fn class_of(&self, label: usize) -> Option<Class> {
        if self.class_a.binary_search(&label).is_ok() {
            Some(Class::A)
        } else if self.class_b.binary_search(&label).is_ok() {
            Some(Class::B)
        } else {
            None
        }
    }

    pub fn same_class(&self, i: usize, j: usize) -> bool {
        self.class_of(i) == self.class_of(j)
    }

    pub fn class(&self, c: Class) -> &[usize] {
        match c {
            Class::A => &self.class_a,
            Class::B => &self.class_b,
        }
    }

    /// Nonempty classes, A first.
    pub fn classes(&self) -> impl Iterator<Item = &[usize]> {
        [self.class_a.as_slice(), self.class_b.as_slice()]
            .into_iter()
            .filter(|c| !c.is_empty())
    }

    /// Relabels through `map[old - 1] = new` and re-canonicalizes.
    pub fn relabel(&self, map: &[usize]) -> OrchardPartition {
        let mut classes = vec![Class::A; map.len()];
        for &l in &self.class_b {
            classes[map[l - 1] - 1] = Class::B;
        }
        OrchardPartition::from_assignment(&classes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeparationCount {
    pub pair: (usize, usize),
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Parities of `n(P_1, P_i)` from one affine functional per hyperplane.
    Anchor,
    /// Every pairwise relation, checked to be an equivalence.
    AllPairs,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "anchor" => Ok(Method::Anchor),
            "all_pairs" | "all-pairs" => Ok(Method::AllPairs),
            _ => Err(format!(
                "unknown method `{s}` (expected anchor or all_pairs)"
            )),
        }
    }
}

fn check_pair(cfg: &Configuration, i: usize, j: usize) -> Result<()> {
    cfg.check_label(i)?;
    cfg.check_label(j)?;
    if i == j {
        return Err(OrchardError::RepeatedLabel(i));
    }
    Ok(())
}

/// 0-based indices of all points except `i` and `j`.
fn others(n: usize, i: usize, j: usize) -> Vec<usize> {
    (0..n).filter(|&k| k != i && k != j).collect()
}

/// Counts on 0-based indices without genericity checks.
pub(crate) fn count_separating(cfg: &Configuration, i: usize, j: usize) -> u64 {
    others(cfg.len(), i, j)
        .into_iter()
        .combinations(cfg.dim())
        .filter(|s| det_sign_idx(cfg, s, i) * det_sign_idx(cfg, s, j) == Sign::Negative)
        .count() as u64
}

/// `n(P_i, P_j)`: hyperplanes spanned by `d` other points that separate the
/// pair.
pub fn separating_count(cfg: &Configuration, i: usize, j: usize) -> Result<SeparationCount> {
    check_pair(cfg, i, j)?;
    ensure_generic(cfg)?;
    Ok(SeparationCount {
        pair: (i, j),
        count: count_separating(cfg, i - 1, j - 1),
    })
}

/// All `n(P_i, P_j)` as a symmetric matrix indexed by 0-based index, zero on
/// the diagonal.
pub fn separation_matrix(cfg: &Configuration) -> Result<Vec<Vec<u64>>> {
    ensure_generic(cfg)?;
    let n = cfg.len();
    let mut m = vec![vec![0; n]; n];
    for (i, j) in (0..n).tuple_combinations() {
        let c = count_separating(cfg, i, j);
        m[i][j] = c;
        m[j][i] = c;
    }
    Ok(m)
}

pub fn orchard_related(cfg: &Configuration, i: usize, j: usize) -> Result<bool> {
    if i == j {
        cfg.check_label(i)?;
        return Ok(true);
    }
    let c = separating_count(cfg, i, j)?;
    Ok((c.count % 2 == 1) == reference_parity(cfg.len(), cfg.dim()))
}

/// The relation from the sign of
/// `(-1)^C(n-3,d-1) * prod_S det(S - P_i) det(S - P_j)` without counting.
pub fn sign_product_related(cfg: &Configuration, i: usize, j: usize) -> Result<bool> {
    check_pair(cfg, i, j)?;
    ensure_generic(cfg)?;
    Ok(sign_product_unchecked(cfg, i - 1, j - 1))
}

pub(crate) fn sign_product_unchecked(cfg: &Configuration, i: usize, j: usize) -> bool {
    let lead = if reference_parity(cfg.len(), cfg.dim()) {
        Sign::Negative
    } else {
        Sign::Positive
    };
    let product = others(cfg.len(), i, j)
        .into_iter()
        .combinations(cfg.dim())
        .fold(lead, |acc, s| {
            acc * det_sign_idx(cfg, &s, i) * det_sign_idx(cfg, &s, j)
        });
    product == Sign::Positive
}

/// Partition together with the number of elementary predicate evaluations:
/// separation tests (one per pair and candidate hyperplane) for
/// [`Method::AllPairs`], determinant evaluations for [`Method::Anchor`].
pub fn orchard_partition_counted(
    cfg: &Configuration,
    method: Method,
) -> Result<(OrchardPartition, u64)> {
    ensure_generic(cfg)?;
    match method {
        Method::AllPairs => all_pairs(cfg),
        Method::Anchor => anchor(cfg),
    }
}

pub fn orchard_partition(cfg: &Configuration, method: Method) -> Result<OrchardPartition> {
    orchard_partition_counted(cfg, method).map(|(p, _)| p)
}

/// Checks that a relation matrix is an equivalence with at most two classes
/// and returns the canonical partition.
pub(crate) fn partition_from_relation(related: &[Vec<bool>]) -> Result<OrchardPartition> {
    let n = related.len();
    for i in 0..n {
        if !related[i][i] {
            return Err(OrchardError::Internal(format!(
                "relation not reflexive at {}",
                i + 1
            )));
        }
        for j in 0..n {
            if related[i][j] != related[j][i] {
                return Err(OrchardError::Internal(format!(
                    "relation not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    for (i, j, k) in (0..n).tuple_combinations() {
        let r = [related[i][j], related[j][k], related[i][k]];
        // transitive: never exactly two of the three hold
        if r.iter().filter(|&&x| x).count() == 2 {
            return Err(OrchardError::Internal(format!(
                "relation not transitive on ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        // at most two classes: never three mutually unrelated points
        if r.iter().all(|&x| !x) {
            return Err(OrchardError::Internal(format!(
                "three classes among ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
    }
    Ok(OrchardPartition::from_first_row(
        related.first().map(Vec::as_slice).unwrap_or(&[]),
    ))
}

fn all_pairs(cfg: &Configuration) -> Result<(OrchardPartition, u64)> {
    let n = cfg.len();
    let d = cfg.dim();
    let odd = reference_parity(n, d);
    let mut tests = 0u64;
    let mut related = vec![vec![true; n]; n];
    for (i, j) in (0..n).tuple_combinations() {
        let mut count = 0u64;
        for s in others(n, i, j).into_iter().combinations(d) {
            tests += 1;
            if det_sign_idx(cfg, &s, i) * det_sign_idx(cfg, &s, j) == Sign::Negative {
                count += 1;
            }
        }
        let r = (count % 2 == 1) == odd;
        related[i][j] = r;
        related[j][i] = r;
    }
    Ok((partition_from_relation(&related)?, tests))
}

/// Normal vector `nu` of the hyperplane through `pts` (0-based), with
/// `nu . (x - p_0) = det[x - p_0; p_1 - p_0; ...]`. Costs `d` minors.
pub(crate) fn hyperplane_normal(cfg: &Configuration, pts: &[usize], dets: &mut u64) -> Vec<Rat> {
    let d = cfg.dim();
    let base = &cfg.points()[pts[0]];
    let diffs: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|&k| cfg.points()[k].sub(base))
        .collect();
    (0..d)
        .map(|col| {
            let minor: Vec<Vec<Rat>> = diffs
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != col)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            *dets += 1;
            let v = det(&minor).expect("square minor");
            if col % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect()
}

fn anchor(cfg: &Configuration) -> Result<(OrchardPartition, u64)> {
    let n = cfg.len();
    let d = cfg.dim();
    let mut dets = 0u64;
    let mut parity = vec![false; n];
    for s in (1..n).combinations(d) {
        let normal = hyperplane_normal(cfg, &s, &mut dets);
        let base = &cfg.points()[s[0]];
        let g = |k: usize| -> Sign {
            let v: Rat = cfg.points()[k]
                .sub(base)
                .iter()
                .zip(&normal)
                .map(|(a, b)| a * b)
                .sum();
            Sign::of(&v)
        };
        // f_H = -g / g(P_1), so f_H(P_i) > 0 iff g(P_i) and g(P_1) differ.
        let g1 = g(0);
        if g1.is_zero() {
            return Err(OrchardError::Internal(
                "anchor lies on a spanned hyperplane".into(),
            ));
        }
        for (i, flag) in parity.iter_mut().enumerate().skip(1) {
            if s.binary_search(&i).is_ok() {
                continue;
            }
            if g(i) * g1 == Sign::Negative {
                *flag = !*flag;
            }
        }
    }
    let odd = reference_parity(n, d);
    let row: Vec<bool> = parity
        .iter()
        .enumerate()
        .map(|(i, &p)| i == 0 || p == odd)
        .collect();
    Ok((OrchardPartition::from_first_row(&row), dets))
}

/// Rooted binary tree of iterated Orchard partitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrchardTree {
    pub set: Vec<usize>,
    pub children: Vec<OrchardTree>,
}

impl OrchardTree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaves(&self) -> Vec<&OrchardTree> {
        if self.is_leaf() {
            vec![self]
        } else {
            self.children.iter().flat_map(|c| c.leaves()).collect()
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

pub fn orchard_tree(cfg: &Configuration) -> Result<OrchardTree> {
    ensure_generic(cfg)?;
    let labels: Vec<usize> = (1..=cfg.len()).collect();
    build_tree(cfg, labels)
}

fn build_tree(root: &Configuration, labels: Vec<usize>) -> Result<OrchardTree> {
    let sub = root.subconfiguration(&labels)?;
    let part = orchard_partition(&sub, Method::Anchor)?;
    if part.is_trivial() {
        return Ok(OrchardTree {
            set: labels,
            children: Vec::new(),
        });
    }
    let lift = |c: &[usize]| c.iter().map(|&l| labels[l - 1]).collect::<Vec<_>>();
    let first = build_tree(root, lift(&part.class_a))?;
    let second = build_tree(root, lift(&part.class_b))?;
    Ok(OrchardTree {
        set: labels,
        children: vec![first, second],
    })
}

/// One class with a sign per member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiClass {
    pub members: Vec<usize>,
    /// False when the values are only defined up to a global sign; they are
    /// then normalized so the first member has `+1`.
    pub well_defined: bool,
    pub values: Vec<Sign>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiInvariant {
    pub classes: Vec<PhiClass>,
}

impl PhiInvariant {
    pub fn value(&self, label: usize) -> Option<Sign> {
        self.classes.iter().find_map(|c| {
            c.members
                .iter()
                .position(|&m| m == label)
                .map(|k| c.values[k])
        })
    }
}

fn check_partition(cfg: &Configuration, partition: &OrchardPartition) -> Result<()> {
    let mut seen = vec![false; cfg.len()];
    for &l in partition.class_a.iter().chain(&partition.class_b) {
        cfg.check_label(l)?;
        if std::mem::replace(&mut seen[l - 1], true) {
            return Err(OrchardError::RepeatedLabel(l));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(OrchardError::InvalidInput(
            "partition does not cover every label".into(),
        ));
    }
    Ok(())
}

/// `phi(P) = sign prod det(P_i1 - P, ..., P_id - P)` over sorted `d`-subsets
/// of the class opposite to `P`.
pub fn phi_invariant(cfg: &Configuration, partition: &OrchardPartition) -> Result<PhiInvariant> {
    ensure_generic(cfg)?;
    check_partition(cfg, partition)?;
    let n = cfg.len() as i64;
    let d = cfg.dim();
    let mut classes = Vec::new();
    for (members, opposite) in [
        (&partition.class_a, &partition.class_b),
        (&partition.class_b, &partition.class_a),
    ] {
        if members.is_empty() {
            continue;
        }
        let opp: Vec<usize> = opposite.iter().map(|l| l - 1).collect();
        let mut values: Vec<Sign> = members
            .iter()
            .map(|&p| {
                opp.iter()
                    .copied()
                    .combinations(d)
                    .fold(Sign::Positive, |acc, s| acc * det_sign_idx(cfg, &s, p - 1))
            })
            .collect();
        let well_defined = !binomial_is_odd(n - 2 - members.len() as i64, d as i64 - 2);
        if !well_defined && values[0] == Sign::Negative {
            values.iter_mut().for_each(|v| *v = -*v);
        }
        classes.push(PhiClass {
            members: members.clone(),
            well_defined,
            values,
        });
    }
    Ok(PhiInvariant { classes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaClass {
    pub members: Vec<usize>,
    pub well_defined: bool,
    /// Number of factors in each product, `C(|opposite|, d-1)`. Swapping the
    /// arguments multiplies `omega` by `(-1)^factors`.
    pub factors: u128,
    /// `((P, Q), omega(P, Q))` for every ordered pair of distinct members.
    pub values: Vec<((usize, usize), Sign)>,
}

impl OmegaClass {
    pub fn get(&self, p: usize, q: usize) -> Option<Sign> {
        self.values
            .iter()
            .find(|(pq, _)| *pq == (p, q))
            .map(|(_, s)| *s)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.factors % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaInvariant {
    pub classes: Vec<OmegaClass>,
}

/// `omega(P, Q) = sign prod det(P - Q, P_i1 - Q, ..., P_i(d-1) - Q)` over
/// sorted `(d-1)`-subsets of the opposite class, for `P != Q` in one class.
pub fn omega_invariant(
    cfg: &Configuration,
    partition: &OrchardPartition,
) -> Result<OmegaInvariant> {
    ensure_generic(cfg)?;
    check_partition(cfg, partition)?;
    let n = cfg.len() as i64;
    let d = cfg.dim();
    let pts = cfg.points();
    let mut classes = Vec::new();
    for (members, opposite) in [
        (&partition.class_a, &partition.class_b),
        (&partition.class_b, &partition.class_a),
    ] {
        if members.is_empty() {
            continue;
        }
        let opp: Vec<usize> = opposite.iter().map(|l| l - 1).collect();
        let subsets: Vec<Vec<usize>> = opp.iter().copied().combinations(d - 1).collect();
        let omega = |p: usize, q: usize| -> Sign {
            subsets.iter().fold(Sign::Positive, |acc, t| {
                let mut rows = vec![pts[p - 1].sub(&pts[q - 1])];
                rows.extend(t.iter().map(|&k| pts[k].sub(&pts[q - 1])));
                acc * crate::exact::det_sign_rows(&rows).expect("square")
            })
        };
        let mut values: Vec<((usize, usize), Sign)> = members
            .iter()
            .flat_map(|&p| {
                members
                    .iter()
                    .filter(move |&&q| q != p)
                    .map(move |&q| (p, q))
            })
            .map(|(p, q)| ((p, q), omega(p, q)))
            .collect();
        let well_defined = !binomial_is_odd(n - 3 - members.len() as i64, d as i64 - 3);
        if !well_defined && values.first().is_some_and(|v| v.1 == Sign::Negative) {
            values.iter_mut().for_each(|v| v.1 = -v.1);
        }
        let factors = crate::exact::binomial(opp.len() as i64, d as i64 - 1);
        let swap = Sign::parity((factors % 2) as usize);
        for &((p, q), s) in &values {
            let back = values.iter().find(|v| v.0 == (q, p)).map(|v| v.1);
            if back != Some(swap * s) {
                return Err(OrchardError::Internal(format!(
                    "omega({p}, {q}) and omega({q}, {p}) violate the swap rule"
                )));
            }
        }
        classes.push(OmegaClass {
            members: members.clone(),
            well_defined,
            factors,
            values,
        });
    }
    Ok(OmegaInvariant { classes })
}
