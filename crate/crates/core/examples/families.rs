//! Orchard partitions for circles, conics and polynomial interpolation.

use orchard::config::random_generic;
use orchard::family::stereographic_lift;
use orchard::{
    c_generic, c_orchard_partition, orchard_partition, FunctionFamily, GeneralizedConfiguration,
    Method,
};

fn main() -> orchard::Result<()> {
    let pts = random_generic(7, 2, 5, 20)?;
    for family in [FunctionFamily::circles(), FunctionFamily::conics()] {
        let g = GeneralizedConfiguration::new(family, pts.clone())?;
        if c_generic(&g) {
            let p = c_orchard_partition(&g)?;
            println!("{:<8} A={:?} B={:?}", g.family.name(), p.class_a, p.class_b);
        } else {
            println!("{:<8} not generic", g.family.name());
        }
    }

    let g = GeneralizedConfiguration::new(FunctionFamily::interpolation(3)?, pts.clone())?;
    if c_generic(&g) {
        println!("parabola A={:?}", c_orchard_partition(&g)?.class_a);
    }

    let custom = FunctionFamily::parse("poly 2 : x1 ; x2 ; x1^2 - x2^2")?;
    let g = GeneralizedConfiguration::new(custom, pts.clone())?;
    println!("custom   generic={}", c_generic(&g));

    // circles in the plane are sections of the sphere
    let circles = GeneralizedConfiguration::new(FunctionFamily::circles(), pts.clone())?;
    let sphere = orchard_partition(&stereographic_lift(&pts)?, Method::AllPairs)?;
    assert_eq!(sphere, c_orchard_partition(&circles)?);
    println!("sphere   A={:?}", sphere.class_a);
    Ok(())
}
