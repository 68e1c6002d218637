//! Antipodal configurations on the sphere and projective configurations.

use orchard::exact::format_rat;
use orchard::projective::{random_chart, random_homogeneous, Mode};
use orchard::{projective_orchard, spherical_orchard, Chart};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> orchard::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 4..=7 {
        let h = random_homogeneous(n, 2, Mode::Sphere, n as u64, 10, 1000)?;
        let chart = random_chart(&h, &mut rng, 1000)?;
        let p = spherical_orchard(&h, &chart)?;
        println!(
            "sphere n={n}: antipodes together={:?} A={:?}",
            p.antipodes_same(),
            p.class_a
        );
    }

    let h = random_homogeneous(6, 2, Mode::Projective, 9, 10, 1000)?;
    for c in 0..3 {
        let chart = if c == 0 {
            Chart::standard(2)
        } else {
            random_chart(&h, &mut rng, 1000)?
        };
        let p = projective_orchard(&h, &chart)?;
        let cov: Vec<String> = chart.covector.iter().map(format_rat).collect();
        println!(
            "projective n=6 chart [{}]: A={:?}",
            cov.join(", "),
            p.class_a
        );
    }
    Ok(())
}
