//! Middle-height root pairs and the centralizer property of Borel
//! nilradicals across the simple types.

use nilext::roots::{borel_nilradical_p_check, build, format_root, proposition1_pair, RootType};

fn main() {
    let mut kinds = Vec::new();
    for l in 2..=8 {
        kinds.push(format!("A{l}"));
        kinds.push(format!("B{l}"));
    }
    for l in 3..=8 {
        kinds.push(format!("C{l}"));
    }
    for l in 4..=8 {
        kinds.push(format!("D{l}"));
    }
    kinds.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
    for k in kinds {
        let kind: RootType = k.parse().unwrap();
        let rs = build(kind);
        let pair = match proposition1_pair(&rs) {
            Some((a, b)) => {
                let s: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                format!("{} + {} = {}", format_root(&a), format_root(&b), rs.describe_relative_to_delta(&s))
            }
            None => "none".into(),
        };
        let p = borel_nilradical_p_check(&rs).report;
        println!("{kind:<4} ht δ = {:>2}  {:<8} {pair}", rs.highest_height(), p.variant.to_string());
    }
}
