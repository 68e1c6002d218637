//! Orchard partitions of a few small configurations, computed three ways.

use orchard::config::{moment_curve, regular_polygon};
use orchard::relation::orchard_partition_counted;
use orchard::{orchard_partition, Configuration, Method};

fn show(name: &str, cfg: &Configuration) -> orchard::Result<()> {
    let (anchor, dets) = orchard_partition_counted(cfg, Method::Anchor)?;
    let all = orchard_partition(cfg, Method::AllPairs)?;
    assert_eq!(anchor, all);
    println!(
        "{name:<12} d={} n={:<2} A={:?} B={:?} ({dets} determinants)",
        cfg.dim(),
        cfg.len(),
        anchor.class_a,
        anchor.class_b
    );
    Ok(())
}

fn main() -> orchard::Result<()> {
    show("line", &Configuration::on_line(&[1, 2, 3, 4, 5]))?;
    show(
        "square",
        &Configuration::from_ints(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])?,
    )?;
    show("pentagon", &regular_polygon(5))?;
    show("hexagon", &regular_polygon(6))?;
    show("moment", &moment_curve(&[1, 2, 3, 4, 5, 6, 7], 3))?;
    Ok(())
}
