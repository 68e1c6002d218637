//! Writes an SVG picture of a planar orchard to standard output.
//!
//! `cargo run --example plot > orchard.svg`

use orchard::config::random_generic;
use orchard::svg::{render_svg, SvgOptions};
use orchard::{orchard_partition, Method};

fn main() -> orchard::Result<()> {
    let cfg = random_generic(9, 2, 1, 40)?;
    let p = orchard_partition(&cfg, Method::AllPairs)?;
    let opts = SvgOptions {
        pair: Some((1, 2)),
        labels: true,
    };
    print!("{}", render_svg(&cfg, &p, &opts)?);
    Ok(())
}
