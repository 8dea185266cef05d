//! Central series, characteristic sequence, centralizer property and the
//! natural-grading verdict for an algebra given by structure constants.

use nilext::exactla::rat;
use nilext::grading::natural_graded_verdict;
use nilext::liecore::{Bracket, LieAlgebra};

fn main() {
    // [X1,Xi] = X_{i+1} (2 ≤ i ≤ 4), [X2,X3] = X5: filiform but not graded
    let b = |i, j, k| Bracket { i, j, k, coeff: rat(1) };
    let g = LieAlgebra::from_brackets(vec![1, 2, 3, 4, 5], &[b(1, 2, 3), b(1, 3, 4), b(1, 4, 5), b(2, 3, 5)]).unwrap();
    let s = g.lower_central_series();
    println!("dims of C^k: {:?}, nilindex {:?}, type {:?}", s.dims(), s.nilindex, s.type_sequence);
    println!("filiform: {}", g.is_filiform().unwrap());
    println!("characteristic sequence: {:?}", g.characteristic_sequence(0).unwrap().blocks);
    let p = g.centralizer_property().unwrap();
    println!("(P) holds: {}, variant {}", p.holds_p, p.variant);
    let v = natural_graded_verdict(&g, 0).unwrap();
    println!("graded verdict: {:?}", v.conclusion);
    if let Some((a, b)) = v.invariants {
        println!("    g:     {:?}\n    gr(g): {:?}", a, b);
    }
}
