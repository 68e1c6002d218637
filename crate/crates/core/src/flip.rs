//! Flips: moving one point across the hyperplane spanned by `d` others so
//! that exactly one `(d+1)`-subset changes orientation.

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{chirotope_unchecked, ensure_generic, random_generic, Configuration, Point};
use crate::error::{OrchardError, Result};
use crate::exact::{binomial_is_odd, dot, ratio, Rat};
use crate::relation::{hyperplane_normal, orchard_partition, Method, OrchardPartition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipSpec {
    /// Sorted `(d+1)`-subset of labels.
    pub flipset: Vec<usize>,
    pub mover: usize,
}

impl FlipSpec {
    pub fn new(mut flipset: Vec<usize>, mover: usize) -> Self {
        flipset.sort_unstable();
        FlipSpec { flipset, mover }
    }

    fn validate(&self, cfg: &Configuration) -> Result<()> {
        let d = cfg.dim();
        if self.flipset.len() != d + 1 {
            return Err(OrchardError::InvalidInput(format!(
                "flipset must have {} points, got {}",
                d + 1,
                self.flipset.len()
            )));
        }
        for w in self.flipset.windows(2) {
            if w[0] == w[1] {
                return Err(OrchardError::RepeatedLabel(w[0]));
            }
        }
        for &l in &self.flipset {
            cfg.check_label(l)?;
        }
        if !self.flipset.contains(&self.mover) {
            return Err(OrchardError::InvalidInput(format!(
                "mover {} is not in the flipset",
                self.mover
            )));
        }
        Ok(())
    }

    pub fn contains(&self, label: usize) -> bool {
        self.flipset.binary_search(&label).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipResult {
    pub before: Configuration,
    pub after: Configuration,
    pub spec: FlipSpec,
    /// Parameter `t` of the final position `P + t v`; the flip hyperplane is
    /// crossed at `t = 1/2`.
    pub stop_parameter: Rat,
}

/// Affine functional vanishing on the hyperplane through `pts` (0-based).
struct Functional {
    normal: Vec<Rat>,
    offset: Rat,
}

impl Functional {
    fn through(cfg: &Configuration, pts: &[usize]) -> Self {
        let mut unused = 0;
        let normal = hyperplane_normal(cfg, pts, &mut unused);
        let offset = -dot(&normal, cfg.points()[pts[0]].coords());
        Functional { normal, offset }
    }

    fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.normal, x) + &self.offset
    }
}

/// Candidate crossings along `p + t v` for every hyperplane spanned by `d`
/// points other than `mover` (0-based), as `(subset, t)`.
fn crossings(cfg: &Configuration, mover: usize, p: &[Rat], v: &[Rat]) -> Vec<(Vec<usize>, Rat)> {
    (0..cfg.len())
        .filter(|&k| k != mover)
        .combinations(cfg.dim())
        .filter_map(|s| {
            let f = Functional::through(cfg, &s);
            let rate = dot(&f.normal, v);
            (!rate.is_zero()).then(|| {
                let t = -f.eval(p) / rate;
                (s, t)
            })
        })
        .collect()
}

/// Moves the mover along `P(t) = P + t v`, `v = 2 (proj_H(P) - P)`, where `H`
/// is spanned by the rest of the flipset. `H` is crossed at `t = 1/2`; the
/// point stops halfway between `1/2` and the next crossing (or `1` if none).
///
/// Fails with [`OrchardError::FlipObstructed`] when another spanned
/// hyperplane is met at some `t` in `(0, 1/2]`: moving only the mover along
/// this path would change more than one orientation.
pub fn apply_flip(cfg: &Configuration, spec: &FlipSpec) -> Result<FlipResult> {
    ensure_generic(cfg)?;
    spec.validate(cfg)?;
    let mover = spec.mover - 1;
    let plane: Vec<usize> = spec
        .flipset
        .iter()
        .filter(|&&l| l != spec.mover)
        .map(|l| l - 1)
        .collect();
    let h = Functional::through(cfg, &plane);
    let p = cfg.points()[mover].coords().to_vec();
    let gp = h.eval(&p);
    let norm2 = dot(&h.normal, &h.normal);
    // v = 2 (proj - p) = -2 g(p) / |nu|^2 * nu
    let scale = -(&gp + &gp) / norm2;
    let v: Vec<Rat> = h.normal.iter().map(|x| x * &scale).collect();

    let half = ratio(1, 2);
    let mut next = Rat::one();
    for (s, t) in crossings(cfg, mover, &p, &v) {
        if s == plane {
            debug_assert_eq!(t, half);
            continue;
        }
        if t > Rat::zero() && t <= half {
            return Err(OrchardError::FlipObstructed(format!(
                "moving {} toward the plane of {:?} first crosses the plane of {:?}",
                spec.mover,
                plane.iter().map(|i| i + 1).collect::<Vec<_>>(),
                s.iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
        if t > half && t < next {
            next = t;
        }
    }
    let stop = (&half + &next) / Rat::from_integer(2.into());
    let moved = Point::new(p.iter().zip(&v).map(|(a, b)| a + b * &stop).collect());
    let after = cfg.with_point(spec.mover, moved)?;

    let changed = chirotope_unchecked(cfg).differences(&chirotope_unchecked(&after));
    if changed != [spec.flipset.clone()] {
        return Err(OrchardError::Internal(format!(
            "flip changed orientations of {changed:?}"
        )));
    }
    Ok(FlipResult {
        before: cfg.clone(),
        after,
        spec: spec.clone(),
        stop_parameter: stop,
    })
}

/// Picks a random realizable flip: a random mover, then random hyperplanes
/// of the other points until one is reachable. Falls back to the nearest
/// hyperplane, which is always reachable.
pub fn random_flip(cfg: &Configuration, rng: &mut impl Rng) -> Result<FlipResult> {
    ensure_generic(cfg)?;
    let n = cfg.len();
    let d = cfg.dim();
    if n < d + 1 {
        return Err(OrchardError::InvalidInput(format!(
            "a flip needs at least {} points",
            d + 1
        )));
    }
    let mover = rng.random_range(0..n);
    let mut candidates: Vec<Vec<usize>> = (0..n).filter(|&k| k != mover).combinations(d).collect();
    candidates.shuffle(rng);
    let spec_for = |s: &[usize]| {
        let flipset = s.iter().map(|i| i + 1).chain([mover + 1]).collect();
        FlipSpec::new(flipset, mover + 1)
    };
    for s in candidates.iter().take(32) {
        match apply_flip(cfg, &spec_for(s)) {
            Ok(r) => return Ok(r),
            Err(OrchardError::FlipObstructed(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let p = cfg.points()[mover].coords();
    let nearest = candidates
        .iter()
        .min_by(|a, b| {
            let dist = |s: &[usize]| {
                let f = Functional::through(cfg, s);
                let g = f.eval(p);
                &g * &g / dot(&f.normal, &f.normal)
            };
            dist(a).cmp(&dist(b))
        })
        .expect("at least one hyperplane");
    apply_flip(cfg, &spec_for(nearest))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipCheck {
    pub pass: bool,
    pub pairs_checked: usize,
    /// First pair violating the rule, if any.
    pub counterexample: Option<(usize, usize)>,
    pub before: OrchardPartition,
    pub after: OrchardPartition,
}

/// Pairs on the same side of the flipset keep their relation; mixed pairs
/// toggle it.
pub fn verify_flip_proposition(res: &FlipResult) -> Result<FlipCheck> {
    let before = orchard_partition(&res.before, Method::AllPairs)?;
    let after = orchard_partition(&res.after, Method::AllPairs)?;
    let n = res.before.len();
    let mut counterexample = None;
    let mut pairs_checked = 0;
    for (p, q) in (1..=n).tuple_combinations() {
        pairs_checked += 1;
        let mixed = res.spec.contains(p) != res.spec.contains(q);
        let kept = before.same_class(p, q) == after.same_class(p, q);
        if kept == mixed {
            counterexample = Some((p, q));
            break;
        }
    }
    Ok(FlipCheck {
        pass: counterexample.is_none(),
        pairs_checked,
        counterexample,
        before,
        after,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FlipType {
    pub in_a: usize,
    pub in_b: usize,
    pub monochromatic: bool,
    /// Odd dimension `2k+1` with exactly `k+1` flipset points in each class.
    pub balanced: bool,
}

pub fn classify_flip(partition: &OrchardPartition, spec: &FlipSpec) -> Result<FlipType> {
    let n = partition.len();
    let mut in_a = 0;
    let mut in_b = 0;
    for &l in &spec.flipset {
        match partition.class_of(l) {
            Some(crate::relation::Class::A) => in_a += 1,
            Some(crate::relation::Class::B) => in_b += 1,
            None => return Err(OrchardError::LabelOutOfRange { label: l, n }),
        }
    }
    let d = spec.flipset.len().saturating_sub(1);
    let balanced = d % 2 == 1 && in_a == d / 2 + 1 && in_b == d / 2 + 1;
    Ok(FlipType {
        in_a,
        in_b,
        monochromatic: in_a == 0 || in_b == 0,
        balanced,
    })
}

/// `pi(n, d)` for odd `d = 2k+1` and even `n = 2m`: `m mod 2` when
/// `C(2m-3, 2k)` is odd, else 0.
pub fn pointed_parity_constant(n: usize, d: usize) -> Option<u8> {
    if d % 2 == 0 || n % 2 == 1 {
        return None;
    }
    let m = n / 2;
    let k = (d - 1) / 2;
    Some(if binomial_is_odd(2 * m as i64 - 3, 2 * k as i64) {
        (m % 2) as u8
    } else {
        0
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityLaw {
    /// Even `d`: the selected class size changes parity at every flip.
    Toggles,
    /// Odd `d`, odd `n`: the parity is constant along flip walks.
    Constant,
    /// Odd `d`, even `n`: both class sizes have parity `pi(n, d)`.
    Fixed { pi: u8 },
}

impl ParityLaw {
    pub fn for_shape(n: usize, d: usize) -> ParityLaw {
        match pointed_parity_constant(n, d) {
            Some(pi) => ParityLaw::Fixed { pi },
            None if d % 2 == 0 => ParityLaw::Toggles,
            None => ParityLaw::Constant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityExperiment {
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub steps: usize,
    pub seed: u64,
    pub bound: i64,
}

impl ParityExperiment {
    pub fn new(n: usize, d: usize, trials: usize, seed: u64) -> Self {
        ParityExperiment {
            n,
            d,
            trials,
            steps: 50,
            seed,
            bound: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityTrial {
    pub seed: u64,
    /// Size of the selected class before the walk and after each flip.
    pub selected_sizes: Vec<usize>,
    /// Size of the other class along the walk.
    pub other_sizes: Vec<usize>,
    pub flipsets: Vec<Vec<usize>>,
    pub pass: bool,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub n: usize,
    pub d: usize,
    pub law: ParityLaw,
    pub pass: bool,
    pub trials: Vec<ParityTrial>,
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a
        .iter()
        .filter(|x| !b.contains(x))
        .chain(b.iter().filter(|x| !a.contains(x)))
        .copied()
        .collect();
    out.sort_unstable();
    out
}

/// Random pointed configurations followed along random flip walks. The
/// selected class is carried across a flip as `selected XOR flipset`, which
/// must be a class of the new configuration.
pub fn pointed_parity_experiment(exp: &ParityExperiment) -> Result<ParityReport> {
    let law = ParityLaw::for_shape(exp.n, exp.d);
    let mut rng = ChaCha8Rng::seed_from_u64(exp.seed);
    let mut trials = Vec::with_capacity(exp.trials);
    for _ in 0..exp.trials {
        let seed: u64 = rng.random();
        trials.push(parity_trial(exp, law, seed)?);
    }
    Ok(ParityReport {
        n: exp.n,
        d: exp.d,
        law,
        pass: trials.iter().all(|t| t.pass),
        trials,
    })
}

fn parity_trial(exp: &ParityExperiment, law: ParityLaw, seed: u64) -> Result<ParityTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cfg = random_generic(exp.n, exp.d, rng.random(), exp.bound)?;
    let part = orchard_partition(&cfg, Method::Anchor)?;
    let mut selected = if rng.random_bool(0.5) || part.is_trivial() {
        part.class_a.clone()
    } else {
        part.class_b.clone()
    };
    let mut trial = ParityTrial {
        seed,
        selected_sizes: vec![selected.len()],
        other_sizes: vec![exp.n - selected.len()],
        flipsets: Vec::new(),
        pass: true,
        failure: None,
    };
    let mut fail = |trial: &mut ParityTrial, msg: String| {
        if trial.pass {
            trial.pass = false;
            trial.failure = Some(msg);
        }
    };
    if let ParityLaw::Fixed { pi } = law {
        check_fixed(&mut trial, pi, &mut fail);
    }
    if exp.n < exp.d + 1 {
        return Ok(trial);
    }
    for step in 0..exp.steps {
        let flip = random_flip(&cfg, &mut rng)?;
        let simplified = simplify_mover(&flip)?;
        let after = orchard_partition(&simplified, Method::Anchor)?;
        let carried = symmetric_difference(&selected, &flip.spec.flipset);
        if carried != after.class_a && carried != after.class_b {
            fail(
                &mut trial,
                format!("step {step}: carried class {carried:?} is not a class of {after:?}"),
            );
        }
        let before = selected.len();
        selected = carried;
        cfg = simplified;
        trial.flipsets.push(flip.spec.flipset);
        trial.selected_sizes.push(selected.len());
        trial.other_sizes.push(exp.n - selected.len());
        match law {
            ParityLaw::Toggles if before % 2 == selected.len() % 2 => {
                fail(&mut trial, format!("step {step}: parity did not toggle"))
            }
            ParityLaw::Constant if before % 2 != selected.len() % 2 => {
                fail(&mut trial, format!("step {step}: parity changed"))
            }
            ParityLaw::Fixed { pi } => check_fixed(&mut trial, pi, &mut fail),
            _ => {}
        }
    }
    Ok(trial)
}

/// The flipped configuration with the mover rounded to the coarsest dyadic
/// grid that keeps every orientation. Keeps coordinates small along walks.
pub fn simplify_mover(res: &FlipResult) -> Result<Configuration> {
    let target = chirotope_unchecked(&res.after);
    let p = res.after.point(res.spec.mover)?;
    for bits in 0..64u32 {
        let scale = Rat::from_integer(num_bigint::BigInt::from(1u8) << bits);
        let q = Point::new(
            p.coords()
                .iter()
                .map(|x| (x * &scale).round() / &scale)
                .collect(),
        );
        let cand = res.after.with_point(res.spec.mover, q)?;
        if chirotope_unchecked(&cand).differences(&target).is_empty() {
            return Ok(cand);
        }
    }
    Ok(res.after.clone())
}

fn check_fixed(trial: &mut ParityTrial, pi: u8, fail: &mut impl FnMut(&mut ParityTrial, String)) {
    let a = *trial.selected_sizes.last().expect("nonempty");
    let b = *trial.other_sizes.last().expect("nonempty");
    if a % 2 != pi as usize || b % 2 != pi as usize {
        fail(
            trial,
            format!("class sizes ({a}, {b}) do not have parity {pi}"),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{chirotope, same_isomorphism_type};
    use crate::exact::rat;

    #[test]
    fn line_flip_swaps_order() {
        let cfg = Configuration::on_line(&[1, 2, 3]);
        let res = apply_flip(&cfg, &FlipSpec::new(vec![2, 3], 3)).unwrap();
        assert_eq!(res.stop_parameter, ratio(3, 4));
        assert_eq!(res.after.points()[2].coords(), &[ratio(3, 2)]);
        assert!(res.after.points()[2][0] < res.after.points()[1][0]);
        assert!(res.after.points()[2][0] > res.after.points()[0][0]);
    }

    #[test]
    fn flip_changes_one_orientation_and_undoes() {
        let cfg = crate::config::random_generic(6, 2, 11, 50).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let res = random_flip(&cfg, &mut rng).unwrap();
        let diff = chirotope(&cfg)
            .unwrap()
            .differences(&chirotope(&res.after).unwrap());
        assert_eq!(diff, vec![res.spec.flipset.clone()]);

        let back = apply_flip(&res.after, &res.spec).unwrap();
        let id: Vec<usize> = (1..=6).collect();
        assert!(same_isomorphism_type(&cfg, &back.after, &id).unwrap());
    }

    #[test]
    fn obstructed_flip_is_rejected() {
        let cfg = Configuration::on_line(&[1, 2, 3]);
        assert!(matches!(
            apply_flip(&cfg, &FlipSpec::new(vec![1, 3], 3)),
            Err(OrchardError::FlipObstructed(_))
        ));
    }

    #[test]
    fn bad_specs() {
        let cfg = Configuration::on_line(&[1, 2, 3]);
        assert!(apply_flip(&cfg, &FlipSpec::new(vec![1, 2, 3], 3)).is_err());
        assert!(apply_flip(&cfg, &FlipSpec::new(vec![1, 2], 3)).is_err());
        assert!(apply_flip(&cfg, &FlipSpec::new(vec![2, 2], 2)).is_err());
        assert!(apply_flip(&cfg, &FlipSpec::new(vec![2, 7], 2)).is_err());
    }

    #[test]
    fn flip_proposition_on_six_points() {
        let cfg = crate::config::random_generic(6, 2, 8, 30).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let res = random_flip(&cfg, &mut rng).unwrap();
        let check = verify_flip_proposition(&res).unwrap();
        assert!(check.pass, "{check:?}");
        assert_eq!(check.pairs_checked, 15);
    }

    #[test]
    fn tampered_flip_fails() {
        let cfg = Configuration::on_line(&[1, 2, 3, 4, 5]);
        let res = apply_flip(&cfg, &FlipSpec::new(vec![2, 3], 3)).unwrap();
        let tampered = FlipResult {
            after: res.before.clone(),
            ..res
        };
        let check = verify_flip_proposition(&tampered).unwrap();
        assert!(!check.pass);
        assert_eq!(check.counterexample, Some((1, 2)));
    }

    #[test]
    fn classify_examples() {
        let line = OrchardPartition::from_first_row(&[true, false, true, false, true]);
        let t = classify_flip(&line, &FlipSpec::new(vec![2, 3], 3)).unwrap();
        assert_eq!((t.in_a, t.in_b, t.monochromatic), (1, 1, false));
        let t = classify_flip(&line, &FlipSpec::new(vec![1, 3], 3)).unwrap();
        assert!(t.monochromatic);
        let r3 = OrchardPartition::from_first_row(&[true, false, true, false, true, true]);
        let t = classify_flip(&r3, &FlipSpec::new(vec![1, 2, 3, 4], 1)).unwrap();
        assert!(t.balanced);
        let t = classify_flip(&r3, &FlipSpec::new(vec![1, 2, 3, 5], 1)).unwrap();
        assert!(!t.balanced);
        assert!(classify_flip(&line, &FlipSpec::new(vec![2, 9], 2)).is_err());
    }

    #[test]
    fn pi_values() {
        assert_eq!(pointed_parity_constant(4, 1), Some(0));
        assert_eq!(pointed_parity_constant(6, 1), Some(1));
        assert_eq!(pointed_parity_constant(8, 1), Some(0));
        assert_eq!(pointed_parity_constant(4, 3), Some(0));
        assert_eq!(pointed_parity_constant(6, 3), Some(1));
        assert_eq!(pointed_parity_constant(8, 3), Some(0));
        assert_eq!(pointed_parity_constant(6, 5), Some(0));
        assert_eq!(pointed_parity_constant(5, 1), None);
        assert_eq!(pointed_parity_constant(6, 2), None);
    }

    #[test]
    fn parity_experiment_small() {
        let report = pointed_parity_experiment(&ParityExperiment {
            steps: 10,
            ..ParityExperiment::new(6, 1, 3, 2)
        })
        .unwrap();
        assert_eq!(report.law, ParityLaw::Fixed { pi: 1 });
        assert!(report.pass, "{report:?}");

        let report = pointed_parity_experiment(&ParityExperiment {
            steps: 10,
            ..ParityExperiment::new(5, 2, 2, 9)
        })
        .unwrap();
        assert_eq!(report.law, ParityLaw::Toggles);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn functional_vanishes_on_its_points() {
        let cfg = Configuration::from_ints(3, &[&[1, 2, 3], &[0, 5, -1], &[4, 4, 4]]).unwrap();
        let f = Functional::through(&cfg, &[0, 1, 2]);
        for p in cfg.points() {
            assert_eq!(f.eval(p.coords()), rat(0));
        }
    }
}
