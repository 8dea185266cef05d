//! Grows naturally graded filiform algebras from L_3 by graded central
//! extensions and lists the classes found in each dimension.

use nilext::extensions::filiform_chain;
use nilext::models::{make, ModelId};

fn main() {
    let l3 = make(&ModelId::l(3)).unwrap().algebra;
    let levels = filiform_chain(&l3, 10, 0).unwrap();
    for (i, classes) in levels.iter().enumerate() {
        println!("dim {}: {} class(es)", l3.dim() + 1 + i, classes.len());
        for c in classes {
            let p = c.extended.centralizer_property().unwrap();
            println!(
                "    h2 {} der {} P: {}",
                c.fingerprint.h2_dim,
                c.fingerprint.derivation_dim,
                if p.holds_p { p.variant.to_string() } else { "neither".into() }
            );
        }
    }
}
