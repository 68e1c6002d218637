//! Iterated partitions and the sign invariants of each class.

use orchard::config::random_generic;
use orchard::relation::{omega_invariant, phi_invariant, OrchardTree};
use orchard::{orchard_partition, orchard_tree, Method};

fn print_tree(t: &OrchardTree, depth: usize) {
    println!("{}{:?}", "  ".repeat(depth), t.set);
    for c in &t.children {
        print_tree(c, depth + 1);
    }
}

fn main() -> orchard::Result<()> {
    let cfg = random_generic(9, 2, 7, 100)?;
    print!("{}", cfg.to_text());
    let tree = orchard_tree(&cfg)?;
    print_tree(&tree, 0);
    println!("depth {} with {} leaves", tree.depth(), tree.leaves().len());

    let part = orchard_partition(&cfg, Method::Anchor)?;
    let phi = phi_invariant(&cfg, &part)?;
    for label in 1..=cfg.len() {
        println!("phi({label}) = {:?}", phi.value(label));
    }
    let omega = omega_invariant(&cfg, &part)?;
    println!("{}", serde_json::to_string(&omega).expect("json"));
    Ok(())
}
