//! Points to lines: the dual wiring diagram carries the same partition.

use orchard::config::random_generic;
use orchard::{dualize, orchard_partition, pseudoline_partition, Method};

fn main() -> orchard::Result<()> {
    let cfg = random_generic(6, 2, 12, 30)?;
    let dual = dualize(&cfg, 0, 1000)?;
    print!("{}", dual.diagram.to_text());
    println!("wire -> point {:?}", dual.wire_to_point);
    let from_wires = dual.to_points(&pseudoline_partition(&dual.diagram)?);
    let from_points = orchard_partition(&cfg, Method::AllPairs)?;
    println!("wires  A={:?}", from_wires.class_a);
    println!("points A={:?}", from_points.class_a);
    assert_eq!(from_wires, from_points);
    Ok(())
}
