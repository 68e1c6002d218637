//! Random flips and how they change the relation.

use orchard::config::random_generic;
use orchard::{classify_flip, random_flip, verify_flip_proposition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> orchard::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cfg = random_generic(7, 2, 3, 50)?;
    for step in 0..5 {
        let res = random_flip(&cfg, &mut rng)?;
        let check = verify_flip_proposition(&res)?;
        let kind = classify_flip(&check.before, &res.spec)?;
        println!(
            "step {step}: flipset {:?} mover {} t={} monochromatic={} {:?} -> {:?} ok={}",
            res.spec.flipset,
            res.spec.mover,
            res.stop_parameter,
            kind.monochromatic,
            check.before.class_a,
            check.after.class_a,
            check.pass
        );
        cfg = res.after;
    }
    Ok(())
}
