//! Reading, checking and writing `gwcx/1` documents.
use gwcx::cli::{check_document, parse, serialize};

const TEXT: &str = "\
format gwcx/1
name shifted_plane
field F3
param quadratic +1
kind poincare
window -1 1
dims 1 0 1
# phi pairs E_1 with E_-1
matrix phi-1 1 1
-1
matrix phi1 1 1
1
expect hyperbolic -H(1)
";

fn main() {
    let doc = parse(TEXT).unwrap();
    let mut report = String::new();
    let ok = check_document(&mut report, &doc);
    print!("{report}");
    println!("all expectations hold: {ok}\n");
    print!("{}", serialize(&doc));
}
