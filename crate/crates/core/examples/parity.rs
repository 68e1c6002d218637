//! Class-size parities of pointed configurations along flip walks.

use orchard::flip::{pointed_parity_experiment, ParityExperiment};

fn main() -> orchard::Result<()> {
    for (n, d) in [(5, 2), (6, 2), (5, 1), (6, 1), (8, 1), (6, 3), (8, 3)] {
        let mut exp = ParityExperiment::new(n, d, 3, 1);
        exp.steps = 20;
        let report = pointed_parity_experiment(&exp)?;
        let sizes: Vec<_> = report
            .trials
            .iter()
            .map(|t| t.selected_sizes.clone())
            .collect();
        println!("n={n} d={d} {:?} pass={}", report.law, report.pass);
        println!("  first walk: {:?}", sizes[0]);
    }
    Ok(())
}
