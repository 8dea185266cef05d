//! Graded one-dimensional central extensions: the index-sum families over
//! Q_{2m−1} and L_{2m−1}, and the degree-7 extensions of s_4.

use nilext::extensions::{enumerate_graded_extensions, fingerprint, Depth, ExtensionSpec};
use nilext::models::{make, Family, ModelId};

fn report(name: &str, id: ModelId, spec: ExtensionSpec) {
    let base = make(&id).unwrap();
    let classes = enumerate_graded_extensions(&base.algebra, &base.grading, &spec).unwrap();
    println!("{name}: {} class(es)", classes.len());
    for c in &classes {
        println!(
            "    X{} via {}   type {:?} der {}",
            c.new_label,
            c.cochain.display_with(base.algebra.labels()),
            c.fingerprint.type_sequence,
            c.fingerprint.derivation_dim
        );
    }
}

fn main() {
    let m = 5;
    let q = ModelId::with_m(Family::Q, m);
    for t in 1..=m - 2 {
        let spec = ExtensionSpec::family(Depth::Integer(t), vec![2]).nilindex(2 * m as usize - 1);
        report(&format!("Q_{} family t={t}, k=2", 2 * m - 1), q, spec);
        let g2 = make(&ModelId::with(Family::G2, m, t, 0, 0)).unwrap().algebra;
        println!("    g2:m={m},t={t} fingerprint der {}", fingerprint(&g2, 0).unwrap().derivation_dim);
    }
    let spec = ExtensionSpec::family(Depth::Half(3), vec![2]).nilindex(2 * m as usize - 1);
    report("Q family t=3/2, k=2 (empty)", q, spec);

    report("s_4, degree 7, P2", ModelId::with_m(Family::S, 4), ExtensionSpec::degree(7).nilindex(7).p2());
    report("s_4, degree 7, any", ModelId::with_m(Family::S, 4), ExtensionSpec::degree(7).nilindex(7));
}
