//! Second cohomology of small filiform algebras and a cocycle test for unit
//! cochains φ_ij.

use nilext::cohomology::{h2, is_cocycle, TwoCochain};
use nilext::models::{make, Family, ModelId};

fn main() {
    for id in [ModelId::l(3), ModelId::l(5), ModelId::with_m(Family::Q, 3), ModelId::with_m(Family::Q, 4)] {
        let g = make(&id).unwrap().algebra;
        let space = h2(&g);
        println!(
            "{id}: dim {}, dim ker λ = {}, dim Ω = {}, dim H2 = {}",
            g.dim(),
            space.ker_lambda.dim(),
            space.omega.dim(),
            space.representatives.len()
        );
        for r in &space.representatives {
            println!("    {}", r.display_with(g.labels()));
        }
    }

    let l3 = make(&ModelId::l(3)).unwrap().algebra;
    for (i, j) in [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let c = TwoCochain::unit(4, i, j);
        println!("L_3: φ_{{{},{}}} cocycle: {}", i + 1, j + 1, is_cocycle(&l3, &c).unwrap());
    }
}
