//! Byte-exact wire formats. Regenerate the fixtures with `UPDATE_GOLDEN=1 cargo test --test golden`.

use std::path::PathBuf;

use meander::constructions::{anchor_sharing_semi, closed_two_zeros, doubly_anchored_semi};
use meander::enumerate::{census, Census};
use meander::surface::{lift_all_poles, quadrangulate, PillowcaseCover};
use meander::{Kind, MeanderDiagram};

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} drifted from its fixture");
}

#[test]
fn diagram_json() {
    for (name, d) in [
        ("closed_two_zeros_1_1.json", closed_two_zeros(1, 1).unwrap()),
        ("doubly_anchored_semi_2_1.json", doubly_anchored_semi(2, 1).unwrap()),
        ("anchor_sharing_semi.json", anchor_sharing_semi()),
    ] {
        let text = d.to_json();
        check(name, &text);
        assert_eq!(MeanderDiagram::from_json(&text).unwrap(), d);
    }
}

#[test]
fn cover_json() {
    let sphere = quadrangulate(&closed_two_zeros(1, 1).unwrap()).unwrap();
    let lift = lift_all_poles(&anchor_sharing_semi()).unwrap().cover;
    for (name, c) in [("sphere_closed_two_zeros_1_1.json", sphere), ("lift_anchor_sharing_semi.json", lift)] {
        let text = c.to_json();
        check(name, &text);
        assert_eq!(PillowcaseCover::from_json(&text).unwrap(), c);
    }
}

#[test]
fn census_json() {
    let c = census(Kind::Closed, 8);
    let text = serde_json::to_string_pretty(&c).unwrap();
    check("census_closed_8.json", &text);
    assert_eq!(serde_json::from_str::<Census>(&text).unwrap(), c);
    assert_eq!(c.total(), 42);
}
