//! Lists every place where a printed law differs from the adopted
//! Jacobi-closed law, with the Jacobi violation counts of both.

use nilext::models::{catalog, repair_report};

fn main() {
    for id in catalog(4..=4) {
        for e in repair_report(&id).unwrap() {
            println!("{id} [{:?}] {} ({})", e.kind, e.location, e.source);
            println!("    printed: {}", e.printed_variant);
            println!("    adopted: {}", e.adopted_variant);
            if let Some(c) = &e.certificate {
                println!("    violated triples: printed {}, adopted {}", c.printed_violations, c.adopted_violations);
            }
            println!("    why: {}", e.justification);
        }
    }
}
