//! Separation by members of a function family. A `(d+1)`-dimensional space
//! `C` of functions on `R^k` containing the constants is given by a basis
//! `b_1..b_d` of polynomials vanishing at the origin; `d` points determine
//! (up to scale) a function of `C` vanishing on them, and two further points
//! are separated when it takes opposite signs there.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::config::{content_lines, degenerate_subset, is_generic, Configuration, Point};
use crate::error::{OrchardError, Result};
use crate::exact::{null_space, rank, Rat};
use crate::poly::Polynomial;
use crate::relation::{
    count_separating, orchard_partition, partition_from_relation, reference_parity, Method,
    OrchardPartition,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionFamily {
    name: String,
    source_dim: usize,
    basis: Vec<Polynomial>,
}

impl FunctionFamily {
    /// A custom family from basis polynomials in `source_dim` variables.
    /// Every basis element must vanish at the origin and the basis must be
    /// linearly independent.
    pub fn new(name: impl Into<String>, source_dim: usize, basis: Vec<Polynomial>) -> Result<Self> {
        if basis.is_empty() {
            return Err(OrchardError::InvalidFamily("empty basis".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.vars() != source_dim {
                return Err(OrchardError::InvalidFamily(format!(
                    "basis element {} uses {} variables, expected {source_dim}",
                    i + 1,
                    b.vars()
                )));
            }
            if !b.constant_term().is_zero() {
                return Err(OrchardError::InvalidFamily(format!(
                    "basis element {} = {b} has a nonzero constant term",
                    i + 1
                )));
            }
        }
        let monomials: Vec<Vec<u32>> = basis
            .iter()
            .flat_map(|b| b.terms().map(|(e, _)| e.to_vec()))
            .sorted()
            .dedup()
            .collect();
        let rows: Vec<Vec<Rat>> = basis
            .iter()
            .map(|b| {
                monomials
                    .iter()
                    .map(|m| {
                        b.terms()
                            .find(|(e, _)| e == m)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(Rat::zero)
                    })
                    .collect()
            })
            .collect();
        if rank(&rows) != basis.len() {
            return Err(OrchardError::InvalidFamily(
                "basis functions are linearly dependent".into(),
            ));
        }
        Ok(FunctionFamily {
            name: name.into(),
            source_dim,
            basis,
        })
    }

    /// Hyperplanes of `R^d`: the coordinate functions.
    pub fn affine(d: usize) -> Result<Self> {
        let basis = (0..d).map(|i| Polynomial::monomial(d, i, 1)).collect();
        FunctionFamily::new(format!("affine {d}"), d, basis)
    }

    /// Circles and lines in the plane: `x, y, x^2 + y^2`.
    pub fn circles() -> Self {
        let x2 = Polynomial::monomial(2, 0, 2).add(&Polynomial::monomial(2, 1, 2));
        let basis = vec![
            Polynomial::monomial(2, 0, 1),
            Polynomial::monomial(2, 1, 1),
            x2,
        ];
        FunctionFamily::new("circles", 2, basis).expect("valid basis")
    }

    /// Plane conics: `x, y, x^2, xy, y^2`.
    pub fn conics() -> Self {
        let x = Polynomial::monomial(2, 0, 1);
        let y = Polynomial::monomial(2, 1, 1);
        let basis = vec![x.clone(), y.clone(), x.mul(&x), x.mul(&y), y.mul(&y)];
        FunctionFamily::new("conics", 2, basis).expect("valid basis")
    }

    /// Graphs of polynomials of degree below `d` in the plane:
    /// `x, x^2, ..., x^(d-1), y`.
    pub fn interpolation(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(OrchardError::InvalidFamily(
                "interpolation needs d >= 1".into(),
            ));
        }
        let mut basis: Vec<Polynomial> = (1..d as u32)
            .map(|e| Polynomial::monomial(2, 0, e))
            .collect();
        basis.push(Polynomial::monomial(2, 1, 1));
        FunctionFamily::new(format!("interpolation {d}"), 2, basis)
    }

    /// `affine d`, `circles`, `conics`, `interpolation d`, or
    /// `poly k : p1 ; p2 ; ...`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("poly") {
            let (k, list) = rest.split_once(':').ok_or_else(|| {
                OrchardError::InvalidFamily("expected `poly k : p1 ; p2 ...`".into())
            })?;
            let k: usize = k.trim().parse().map_err(|_| {
                OrchardError::InvalidFamily(format!("bad source dimension `{}`", k.trim()))
            })?;
            let basis = list
                .split(';')
                .map(|p| {
                    Polynomial::parse(p, k)
                        .map_err(|e| OrchardError::InvalidFamily(format!("`{}`: {e}", p.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            return FunctionFamily::new(format!("poly {k}"), k, basis);
        }
        let fields: Vec<&str> = spec.split_whitespace().collect();
        let param = |i: usize| -> Result<usize> {
            fields
                .get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| OrchardError::InvalidFamily(format!("`{spec}` needs a dimension")))
        };
        let family = match fields.first().copied() {
            Some("affine") => FunctionFamily::affine(param(1)?)?,
            Some("circles") => FunctionFamily::circles(),
            Some("conics") => FunctionFamily::conics(),
            Some("interpolation") => FunctionFamily::interpolation(param(1)?)?,
            _ => {
                return Err(OrchardError::InvalidFamily(format!(
                    "unknown family `{spec}`"
                )))
            }
        };
        let arity = match fields[0] {
            "affine" | "interpolation" => 2,
            _ => 1,
        };
        if fields.len() != arity {
            return Err(OrchardError::InvalidFamily(format!(
                "unexpected parameters in `{spec}`"
            )));
        }
        Ok(family)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension `k` of the space the functions are defined on.
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    /// Dimension `d` of the separating space (the basis size).
    pub fn sep_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// The generalized Veronese map `P -> (b_1(P), ..., b_d(P))`.
    pub fn lift(&self, p: &Point) -> Point {
        Point::new(self.basis.iter().map(|b| b.eval(p.coords())).collect())
    }
}

/// Points in `R^k` together with a function family on `R^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedConfiguration {
    pub family: FunctionFamily,
    pub points: Configuration,
}

impl GeneralizedConfiguration {
    pub fn new(family: FunctionFamily, points: Configuration) -> Result<Self> {
        if points.dim() != family.source_dim() {
            return Err(OrchardError::DimensionMismatch {
                expected: family.source_dim(),
                found: points.dim(),
            });
        }
        Ok(GeneralizedConfiguration { family, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// A `family ...` line followed by an ordinary configuration.
    pub fn parse(text: &str) -> Result<Self> {
        let (ln, first) = content_lines(text)
            .next()
            .ok_or_else(|| OrchardError::parse(1, "missing `family` header"))?;
        let spec = first
            .strip_prefix("family")
            .ok_or_else(|| OrchardError::parse(ln, "expected a `family <name>` header"))?;
        let family = FunctionFamily::parse(spec).map_err(|e| match e {
            OrchardError::InvalidFamily(m) => OrchardError::parse(ln, m),
            e => e,
        })?;
        let rest: String = text
            .lines()
            .enumerate()
            .map(|(i, l)| if i + 1 == ln { "" } else { l })
            .join("\n");
        GeneralizedConfiguration::new(family, Configuration::parse(&rest)?)
    }

    pub fn to_text(&self) -> String {
        let spec = if self.family.name.starts_with("poly") {
            format!(
                "{} : {}",
                self.family.name,
                self.family.basis.iter().map(|b| b.to_string()).join(" ; ")
            )
        } else {
            self.family.name.clone()
        };
        format!("family {spec}\n{}", self.points.to_text())
    }
}

pub fn veronese_image(gcfg: &GeneralizedConfiguration) -> Configuration {
    let points = gcfg
        .points
        .points()
        .iter()
        .map(|p| gcfg.family.lift(p))
        .collect();
    Configuration::new(gcfg.family.sep_dim(), points).expect("lifted points share a dimension")
}

/// Genericity of the Veronese image. This implies that every `d`-subset
/// determines a unique function up to scale and that these are distinct.
pub fn c_generic(gcfg: &GeneralizedConfiguration) -> bool {
    is_generic(&veronese_image(gcfg))
}

fn ensure_c_generic(gcfg: &GeneralizedConfiguration) -> Result<Configuration> {
    let image = veronese_image(gcfg);
    match degenerate_subset(&image) {
        Some(subset) => Err(OrchardError::NonGeneric { subset }),
        None => Ok(image),
    }
}

/// How separation by `I(S)` is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Solve for the function vanishing on `S` and evaluate it at the points.
    Direct,
    /// Orientation tests in the Veronese image.
    Image,
}

/// The function of the family vanishing on the points `subset` (0-based),
/// normalized up to scale. `None` when this space is not one-dimensional.
pub fn vanishing_function(gcfg: &GeneralizedConfiguration, subset: &[usize]) -> Option<Polynomial> {
    let k = gcfg.family.source_dim();
    let rows: Vec<Vec<Rat>> = subset
        .iter()
        .map(|&s| {
            let p = &gcfg.points.points()[s];
            std::iter::once(Rat::one())
                .chain(gcfg.family.basis().iter().map(|b| b.eval(p.coords())))
                .collect()
        })
        .collect();
    let kernel = null_space(&rows, gcfg.family.sep_dim() + 1);
    let [c] = kernel.as_slice() else {
        return None;
    };
    let f = gcfg
        .family
        .basis()
        .iter()
        .zip(&c[1..])
        .fold(Polynomial::constant(k, c[0].clone()), |acc, (b, ci)| {
            acc.add(&b.scaled(ci))
        });
    Some(f)
}

fn separating_subsets_unchecked(
    gcfg: &GeneralizedConfiguration,
    image: &Configuration,
    i: usize,
    j: usize,
    route: Route,
) -> Result<Vec<Vec<usize>>> {
    let d = gcfg.family.sep_dim();
    let pts = gcfg.points.points();
    let mut out = Vec::new();
    for s in (0..gcfg.len())
        .filter(|&k| k != i && k != j)
        .combinations(d)
    {
        let separates = match route {
            Route::Direct => {
                let f = vanishing_function(gcfg, &s).ok_or_else(|| OrchardError::NonGeneric {
                    subset: s.iter().map(|x| x + 1).collect(),
                })?;
                let fp = f.eval(pts[i].coords());
                let fq = f.eval(pts[j].coords());
                fp.is_positive() && fq.is_negative() || fp.is_negative() && fq.is_positive()
            }
            Route::Image => {
                crate::config::det_sign_idx(image, &s, i)
                    != crate::config::det_sign_idx(image, &s, j)
            }
        };
        if separates {
            out.push(s.iter().map(|x| x + 1).collect());
        }
    }
    Ok(out)
}

/// The `d`-subsets (1-based labels) whose vanishing function separates
/// points `i` and `j`.
pub fn c_separating_subsets(
    gcfg: &GeneralizedConfiguration,
    i: usize,
    j: usize,
    route: Route,
) -> Result<Vec<Vec<usize>>> {
    let image = ensure_c_generic(gcfg)?;
    gcfg.points.check_label(i)?;
    gcfg.points.check_label(j)?;
    if i == j {
        return Err(OrchardError::RepeatedLabel(i));
    }
    separating_subsets_unchecked(gcfg, &image, i - 1, j - 1, route)
}

pub fn c_separating_count(gcfg: &GeneralizedConfiguration, i: usize, j: usize) -> Result<u64> {
    let image = ensure_c_generic(gcfg)?;
    gcfg.points.check_label(i)?;
    gcfg.points.check_label(j)?;
    if i == j {
        return Err(OrchardError::RepeatedLabel(i));
    }
    Ok(count_separating(&image, i - 1, j - 1))
}

/// The partition by `n_C(P,Q) = C(n-3, d-1) (mod 2)`, computed by direct
/// evaluation and checked against the partition of the Veronese image.
pub fn c_orchard_partition(gcfg: &GeneralizedConfiguration) -> Result<OrchardPartition> {
    let image = ensure_c_generic(gcfg)?;
    let n = gcfg.len();
    let odd = reference_parity(n, gcfg.family.sep_dim());
    let mut related = vec![vec![true; n]; n];
    for (i, j) in (0..n).tuple_combinations() {
        let count = separating_subsets_unchecked(gcfg, &image, i, j, Route::Direct)?.len();
        let r = (count % 2 == 1) == odd;
        related[i][j] = r;
        related[j][i] = r;
    }
    let direct = partition_from_relation(&related)?;
    let lifted = orchard_partition(&image, Method::AllPairs)?;
    if direct != lifted {
        return Err(OrchardError::Internal(format!(
            "direct partition {direct:?} differs from the image partition {lifted:?}"
        )));
    }
    Ok(direct)
}

/// Inverse stereographic projection from the north pole onto the unit
/// sphere: `(u, v) -> (2u, 2v, u^2 + v^2 - 1) / (u^2 + v^2 + 1)`.
pub fn inverse_stereographic(u: &Rat, v: &Rat) -> [Rat; 3] {
    let r2 = u * u + v * v;
    let den = &r2 + Rat::one();
    [(u + u) / &den, (v + v) / &den, (r2 - Rat::one()) / den]
}

/// Lifts a planar configuration onto the unit sphere in `R^3`.
pub fn stereographic_lift(cfg: &Configuration) -> Result<Configuration> {
    if cfg.dim() != 2 {
        return Err(OrchardError::DimensionMismatch {
            expected: 2,
            found: cfg.dim(),
        });
    }
    let points = cfg
        .points()
        .iter()
        .map(|p| Point::new(inverse_stereographic(&p[0], &p[1]).to_vec()))
        .collect();
    Configuration::new(3, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::random_generic;
    use crate::exact::{rat, ratio};
    use crate::relation::separating_count;

    fn circles_on(rows: &[&[i64]]) -> GeneralizedConfiguration {
        GeneralizedConfiguration::new(
            FunctionFamily::circles(),
            Configuration::from_ints(2, rows).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn veronese_examples() {
        let g = circles_on(&[&[1, 2]]);
        assert_eq!(
            veronese_image(&g).points()[0].coords(),
            &[rat(1), rat(2), rat(5)]
        );
        let g = GeneralizedConfiguration::new(
            FunctionFamily::interpolation(3).unwrap(),
            Configuration::from_ints(2, &[&[2, 7]]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            veronese_image(&g).points()[0].coords(),
            &[rat(2), rat(4), rat(7)]
        );
        let cfg = random_generic(5, 2, 1, 20).unwrap();
        let g =
            GeneralizedConfiguration::new(FunctionFamily::affine(2).unwrap(), cfg.clone()).unwrap();
        assert_eq!(veronese_image(&g), cfg);
    }

    #[test]
    fn concyclic_points_are_not_c_generic() {
        let g = circles_on(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[3, 5]]);
        assert!(!c_generic(&g));
        assert!(matches!(
            c_separating_count(&g, 1, 5),
            Err(OrchardError::NonGeneric { .. })
        ));
        let g = circles_on(&[&[1, 0], &[0, 1], &[-1, 0], &[2, 3], &[3, 5]]);
        assert!(c_generic(&g));
    }

    #[test]
    fn six_points_on_a_conic() {
        // on x*y = 1
        let cfg = Configuration::new(
            2,
            [1, 2, 3, -1, -2, 5]
                .iter()
                .map(|&x| Point::new(vec![rat(x), ratio(1, x)]))
                .collect(),
        )
        .unwrap();
        let g = GeneralizedConfiguration::new(FunctionFamily::conics(), cfg).unwrap();
        assert!(!c_generic(&g));
    }

    #[test]
    fn circle_through_three_separates_inside_from_outside() {
        // unit circle through 1, 2, 3; point 4 inside, point 5 outside
        let g = circles_on(&[&[1, 0], &[0, 1], &[-1, 0], &[0, 0], &[5, 3]]);
        for route in [Route::Direct, Route::Image] {
            let s = c_separating_subsets(&g, 4, 5, route).unwrap();
            assert!(s.contains(&vec![1, 2, 3]), "{route:?}");
        }
        let f = vanishing_function(&g, &[0, 1, 2]).unwrap();
        assert!(f.eval(&[rat(0), rat(0)]) * f.eval(&[rat(5), rat(3)]) < rat(0));
    }

    #[test]
    fn routes_agree_subset_by_subset() {
        let fams = [
            FunctionFamily::circles(),
            FunctionFamily::conics(),
            FunctionFamily::interpolation(3).unwrap(),
        ];
        let mut checked = 0;
        for (s, fam) in fams.into_iter().enumerate() {
            let n = fam.sep_dim() + 3;
            let g = GeneralizedConfiguration::new(fam, random_generic(n, 2, s as u64, 30).unwrap())
                .unwrap();
            if !c_generic(&g) {
                continue;
            }
            for (i, j) in (1..=n).tuple_combinations() {
                assert_eq!(
                    c_separating_subsets(&g, i, j, Route::Direct).unwrap(),
                    c_separating_subsets(&g, i, j, Route::Image).unwrap()
                );
            }
            c_orchard_partition(&g).unwrap();
            checked += 1;
        }
        assert!(checked >= 2);
    }

    #[test]
    fn affine_family_reduces_to_ordinary_relation() {
        let cfg = random_generic(7, 3, 5, 40).unwrap();
        let g =
            GeneralizedConfiguration::new(FunctionFamily::affine(3).unwrap(), cfg.clone()).unwrap();
        assert_eq!(
            c_orchard_partition(&g).unwrap(),
            orchard_partition(&cfg, Method::AllPairs).unwrap()
        );
        assert_eq!(
            c_separating_count(&g, 2, 6).unwrap(),
            separating_count(&cfg, 2, 6).unwrap().count
        );
    }

    #[test]
    fn sphere_coherence() {
        let plane = random_generic(7, 2, 3, 9).unwrap();
        let g = GeneralizedConfiguration::new(FunctionFamily::circles(), plane.clone()).unwrap();
        assert!(c_generic(&g));
        let sphere = stereographic_lift(&plane).unwrap();
        for p in sphere.points() {
            assert_eq!(&p[0] * &p[0] + &p[1] * &p[1] + &p[2] * &p[2], rat(1));
        }
        assert_eq!(
            orchard_partition(&sphere, Method::AllPairs).unwrap(),
            c_orchard_partition(&g).unwrap()
        );
    }

    #[test]
    fn family_parsing() {
        assert_eq!(
            FunctionFamily::parse("circles").unwrap(),
            FunctionFamily::circles()
        );
        assert_eq!(FunctionFamily::parse("affine 3").unwrap().sep_dim(), 3);
        let f = FunctionFamily::parse("poly 2 : x1 ; x2 ; x1^2 + x2^2").unwrap();
        assert_eq!(f.basis(), FunctionFamily::circles().basis());
        assert!(FunctionFamily::parse("poly 2 : x1 ; x1 + 1").is_err());
        assert!(FunctionFamily::parse("poly 2 : x1 ; 2 x1").is_err());
        assert!(FunctionFamily::parse("circles 4").is_err());
        assert!(FunctionFamily::parse("affine").is_err());
        assert!(FunctionFamily::parse("ellipses").is_err());
    }

    #[test]
    fn file_roundtrip() {
        let text = "# points\nfamily poly 2 : x1 ; x2 ; x1^2 + x2^2\n2 3\n0 0\n1 0\n0 1\n";
        let g = GeneralizedConfiguration::parse(text).unwrap();
        assert_eq!(g.family.sep_dim(), 3);
        assert_eq!(GeneralizedConfiguration::parse(&g.to_text()).unwrap(), g);
        let g = GeneralizedConfiguration::parse("family circles\n2 1\n1 2\n").unwrap();
        assert_eq!(g.to_text(), "family circles\n2 1\n1 2\n");
        assert!(GeneralizedConfiguration::parse("family conics\n3 1\n1 2 3\n").is_err());
        assert!(matches!(
            GeneralizedConfiguration::parse("\nfamily bogus\n2 0\n"),
            Err(OrchardError::Parse { line: 2, .. })
        ));
    }
}
