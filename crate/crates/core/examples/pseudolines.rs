//! Wiring diagrams: partitions, orientations, triangle moves and smoothing.

use orchard::pseudoline::{random_diagram_seeded, triangle_positions};
use orchard::{
    desingularize, pseudoline_orientation, pseudoline_partition, triangle_move, Smoothing,
};

fn main() -> orchard::Result<()> {
    let wd = random_diagram_seeded(6, 1);
    print!("{}", wd.to_text());
    let p = pseudoline_partition(&wd)?;
    println!("partition A={:?} B={:?}", p.class_a, p.class_b);
    if let Some(&pos) = triangle_positions(&wd).first() {
        let moved = triangle_move(&wd, pos)?;
        println!(
            "after move at {pos}: A={:?}",
            pseudoline_partition(&moved)?.class_a
        );
    }

    let wd = random_diagram_seeded(5, 2);
    let [o, other] = pseudoline_orientation(&wd)?;
    println!("orientations {:?} / {:?}", o.forward, other.forward);
    for mode in [Smoothing::Respect, Smoothing::Oppose] {
        let r = desingularize(&wd, &o, mode)?;
        println!(
            "{mode:?}: {} curves, {} one-sided, lengths {:?}",
            r.curves, r.one_sided, r.lengths
        );
    }
    Ok(())
}
