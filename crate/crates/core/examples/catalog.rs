//! Builds a slice of the model catalog and prints the invariants each model
//! is stated to have next to the computed ones.

use nilext::grading::natural_graded_verdict;
use nilext::models::{catalog, make, ModelError};

fn main() {
    let seed = 0;
    println!("{:<22} {:>4} {:<12} {:<12} {:<8} {}", "model", "dim", "claimed", "computed", "P", "graded");
    for id in catalog(4..=4) {
        match make(&id) {
            Ok(m) => {
                let cs = m.algebra.characteristic_sequence(seed).unwrap().blocks;
                let p = m.algebra.centralizer_property().unwrap();
                let graded = natural_graded_verdict(&m.algebra, seed).unwrap().conclusion;
                println!(
                    "{:<22} {:>4} {:<12} {:<12} {:<8} {:?}",
                    id.to_string(),
                    m.algebra.dim(),
                    format!("{:?}", id.claimed_charseq()),
                    format!("{:?}", cs),
                    if p.holds_p { p.variant.to_string() } else { "-".into() },
                    graded
                );
            }
            Err(ModelError::NoClosedLaw { violations, .. }) => {
                println!("{:<22} no closing law ({violations} violated triples)", id.to_string())
            }
            Err(e) => println!("{:<22} {e}", id.to_string()),
        }
    }
}
