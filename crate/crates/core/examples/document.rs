//! Writes a model as a JSON document, reads it back and re-verifies it.

use nilext::cli::{load_source, verify_source, VerifyChecks};
use nilext::document::AlgebraDocument;
use nilext::models::make;

fn main() {
    let m = make(&"g4:m=4".parse().unwrap()).unwrap();
    let doc = AlgebraDocument::from_model(&m);
    let path = std::env::temp_dir().join("nilext-g4.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    println!("{}", doc.to_json());

    let src = load_source(path.to_str().unwrap()).unwrap();
    assert_eq!(src.algebra, m.algebra);
    print!("{}", verify_source(&src, VerifyChecks::all(), None, 0).render());
}
