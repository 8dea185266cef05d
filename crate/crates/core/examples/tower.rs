//! Rebuilds the g^{2,1,q} tower level by level as central extensions and
//! checks that each quotient by the top vector gives the previous level.

use nilext::extensions::extension_tower;
use nilext::models::{Family, ModelId};

fn main() {
    let id = ModelId::with(Family::G21q, 5, 1, 0, 0);
    for step in extension_tower(&id, 4, 0).unwrap() {
        println!(
            "{:<20} dim {:>2} ch.s. {:?} rebuilt = catalog: {} quotient = previous: {}",
            step.id.to_string(),
            step.algebra.dim(),
            step.charseq,
            step.matches_catalog,
            step.quotient_matches
        );
    }
}
