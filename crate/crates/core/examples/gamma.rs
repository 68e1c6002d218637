//! The immersed complete graph of an odd-parity projective configuration.

use orchard::projective::{gamma_graph, random_homogeneous, Mode};
use orchard::{verify_homological_triviality, Chart};

fn main() -> orchard::Result<()> {
    // C(3, 2) = 3 is odd, so five points in the projective plane have no partition
    let h = random_homogeneous(5, 2, Mode::Projective, 4, 10, 1000)?;
    let chart = Chart::standard(2);
    for e in gamma_graph(&h, &chart)? {
        println!(
            "{:?} bounded={} unbounded={} chosen={:?} class={}",
            e.pair, e.bounded_count, e.unbounded_count, e.chosen, e.class
        );
    }
    let report = verify_homological_triviality(&h, &chart)?;
    println!(
        "{} triangles, trivial={}",
        report.triangles_checked, report.pass
    );
    Ok(())
}
