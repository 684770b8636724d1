//! Small named posets used as fixtures and forbidden patterns.

use super::{Poset, PosetError};

pub const CATALOG_NAMES: [&str; 13] = [
    "2+2", "3+1", "4+1", "3+1+1", "H", "V", "Z", "D", "Y", "Y_dual", "X1", "X2", "X3",
];

pub fn catalog(name: &str) -> Result<Poset, PosetError> {
    let build = |elements: &[&str], pairs: &[(&str, &str)]| {
        Poset::from_relations(elements, pairs).expect("catalog entries are posets")
    };
    let p = match name {
        "2+2" => build(&["x", "y", "z", "w"], &[("x", "y"), ("z", "w")]),
        "3+1" => build(&["x", "y", "z", "u"], &[("x", "y"), ("y", "z")]),
        "4+1" => build(&["x", "y", "z", "w", "v"], &[("x", "y"), ("y", "z"), ("z", "w")]),
        "3+1+1" => build(&["x", "y", "z", "u", "v"], &[("x", "y"), ("y", "z")]),
        "H" => build(
            &["x", "y", "z", "w", "u", "v"],
            &[("x", "y"), ("y", "z"), ("z", "w"), ("y", "u"), ("v", "z")],
        ),
        "V" => build(
            &["a", "b", "c", "d", "e", "m"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "e")],
        ),
        "Z" => build(
            &["x", "y", "z", "w", "u", "v"],
            &[("x", "y"), ("y", "z"), ("z", "w"), ("x", "v"), ("u", "w")],
        ),
        "D" => build(
            &["x", "y", "z", "w", "v"],
            &[("x", "y"), ("y", "z"), ("x", "w"), ("w", "z")],
        ),
        "Y" => build(&["x", "y", "z", "w", "v"], &[("x", "y"), ("y", "z"), ("y", "w")]),
        "Y_dual" => catalog("Y")?.dual(),
        "X1" => build(&X_ELEMENTS, &X1_PAIRS),
        "X2" => build(
            &X_ELEMENTS,
            &[("x", "y"), ("y", "z"), ("u", "v"), ("v", "w"), ("x", "w"), ("u", "z")],
        ),
        "X3" => {
            let mut elements = X_ELEMENTS.to_vec();
            elements.push("s");
            build(&elements, &X1_PAIRS)
        }
        _ => return Err(PosetError::UnknownCatalogName(name.to_string())),
    };
    Ok(p)
}

const X_ELEMENTS: [&str; 7] = ["x", "y", "z", "u", "v", "w", "t"];
const X1_PAIRS: [(&str, &str); 8] = [
    ("x", "y"),
    ("y", "z"),
    ("u", "v"),
    ("v", "w"),
    ("x", "t"),
    ("u", "t"),
    ("t", "z"),
    ("t", "w"),
];
