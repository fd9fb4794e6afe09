//! Shared fixtures for the integration suites: the three worked structure
//! families, the expected invariant tables, and small diagram helpers.

#![allow(dead_code)]

use shadow_invar::algebra::ShadowModuleStructure;
use shadow_invar::birack::{Birack, Shadow};
use shadow_invar::diagram::{LinkDiagram, PdCode};
use shadow_invar::invariant::{shadow_module_invariant, InvariantValue};
use shadow_invar::tables::{find_link, link_table};

/// The two-element birack with its three-region shadow and Z_3 module.
pub fn family_a() -> (Birack, Shadow, ShadowModuleStructure) {
    let b = Birack::from_tables(&[vec![1, 1], vec![2, 2]], &[vec![2, 2], vec![1, 1]])
        .expect("verified birack");
    let sh = Shadow::from_table(&b, &[vec![2, 2], vec![3, 3], vec![1, 1]])
        .expect("verified shadow");
    let ms = ShadowModuleStructure::new(
        3,
        vec![
            (
                vec![vec![1, 1], vec![1, 1]],
                vec![vec![2, 2], vec![2, 2]],
                vec![vec![2, 2], vec![2, 2]],
            ),
            (
                vec![vec![2, 1], vec![2, 1]],
                vec![vec![2, 1], vec![1, 2]],
                vec![vec![1, 1], vec![2, 2]],
            ),
            (
                vec![vec![2, 1], vec![2, 1]],
                vec![vec![2, 2], vec![2, 2]],
                vec![vec![2, 2], vec![1, 1]],
            ),
        ],
    )
    .expect("unit entries");
    (b, sh, ms)
}

/// The same birack with its two-region shadow and Z_5 module.
pub fn family_b() -> (Birack, Shadow, ShadowModuleStructure) {
    let b = Birack::from_tables(&[vec![1, 1], vec![2, 2]], &[vec![2, 2], vec![1, 1]])
        .expect("verified birack");
    let sh = Shadow::from_table(&b, &[vec![2, 2], vec![1, 1]]).expect("verified shadow");
    let ms = ShadowModuleStructure::new(
        5,
        vec![
            (
                vec![vec![1, 2], vec![1, 2]],
                vec![vec![2, 2], vec![2, 2]],
                vec![vec![2, 2], vec![4, 4]],
            ),
            (
                vec![vec![1, 3], vec![1, 3]],
                vec![vec![2, 1], vec![4, 2]],
                vec![vec![4, 4], vec![3, 3]],
            ),
        ],
    )
    .expect("unit entries");
    (b, sh, ms)
}

/// The three-element birack with its two-region shadow and Z_3 module.
pub fn family_c() -> (Birack, Shadow, ShadowModuleStructure) {
    let b = Birack::from_tables(
        &[vec![1, 3, 1], vec![2, 2, 2], vec![3, 1, 3]],
        &[vec![3, 3, 3], vec![2, 2, 2], vec![1, 1, 1]],
    )
    .expect("verified birack");
    let sh = Shadow::from_table(&b, &[vec![2, 2, 2], vec![1, 1, 1]]).expect("verified shadow");
    let ms = ShadowModuleStructure::new(
        3,
        vec![
            (
                vec![vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]],
                vec![vec![2, 0, 1], vec![0, 0, 0], vec![1, 0, 2]],
                vec![vec![1, 1, 1], vec![2, 1, 2], vec![1, 1, 1]],
            ),
            (
                vec![vec![2, 2, 2], vec![2, 2, 2], vec![2, 2, 2]],
                vec![vec![2, 0, 1], vec![0, 0, 0], vec![1, 0, 2]],
                vec![vec![2, 2, 2], vec![1, 2, 1], vec![2, 2, 2]],
            ),
        ],
    )
    .expect("unit entries");
    (b, sh, ms)
}

pub fn bundled_diagram(name: &str) -> LinkDiagram {
    let table = link_table(None).expect("bundled table");
    let entry = find_link(&table, name).unwrap_or_else(|| panic!("{name} in table"));
    LinkDiagram::from_pd(&entry.pd_code()).expect("bundled PD is valid")
}

pub fn diagram(pd: &[[usize; 4]]) -> LinkDiagram {
    LinkDiagram::from_pd(&PdCode(pd.to_vec())).expect("valid PD")
}

/// Computes the invariant on the bundled diagram, falling back to the
/// mirror when the value differs from `expect`; reports which chirality
/// was used.
pub fn invariant_with_mirror_fallback(
    name: &str,
    b: &Birack,
    sh: &Shadow,
    ms: &ShadowModuleStructure,
    expect: &str,
) -> (InvariantValue, &'static str) {
    let d = bundled_diagram(name);
    let phi = shadow_module_invariant(&d, b, sh, ms);
    if phi.to_string() == expect {
        return (phi, "bundled");
    }
    let m = LinkDiagram::from_pd(&d.pd().mirror()).expect("mirror PD is valid");
    let phim = shadow_module_invariant(&m, b, sh, ms);
    if phim.to_string() == expect {
        (phim, "mirror")
    } else {
        (phi, "bundled")
    }
}

/// Expected Z_5 polynomial per table name (the full two-column grouping,
/// as printed).
pub fn expected_z5_table() -> Vec<(&'static str, &'static str)> {
    let mut rows = Vec::new();
    for k in [
        "3_1", "5_2", "6_1", "6_2", "6_3", "7_1", "7_2", "7_3", "7_5", "7_6", "7_7", "8_1",
        "8_2", "8_3", "8_4", "8_5", "8_6", "8_7", "8_10", "8_12", "8_13", "8_14", "8_15",
        "8_17", "8_19", "8_20",
    ] {
        rows.push((k, "4u^5"));
    }
    for k in ["4_1", "5_1", "7_4", "8_8", "8_9", "8_11", "8_16", "8_18", "8_21"] {
        rows.push((k, "4u^25"));
    }
    for k in [
        "L2a1", "L4a1", "L5a1", "L6a1", "L6a3", "L7a1", "L7a3", "L7a4", "L7a5", "L7a6",
        "L7n1", "L7n2",
    ] {
        rows.push((k, "8u^5"));
    }
    for k in ["L6a2", "L7a2"] {
        rows.push((k, "8u^25"));
    }
    for k in ["L6a4", "L6a5", "L6n1"] {
        rows.push((k, "16u^5"));
    }
    rows.push(("L7a7", "16u^25"));
    rows
}

/// Expected Z_3 polynomial per knot name, plus 9_24.
pub fn expected_z3_table() -> Vec<(&'static str, &'static str)> {
    let mut rows = Vec::new();
    for k in [
        "3_1", "6_1", "7_4", "7_7", "8_5", "8_10", "8_11", "8_15", "8_19", "8_20", "8_21",
    ] {
        rows.push((k, "4u^3 + 4u^9"));
    }
    rows.push(("8_18", "4u^3 + 4u^27"));
    for k in [
        "4_1", "5_1", "5_2", "6_2", "6_3", "7_1", "7_2", "7_3", "7_5", "7_6", "8_1", "8_2",
        "8_3", "8_4", "8_6", "8_7", "8_8", "8_9", "8_12", "8_13", "8_14", "8_16", "8_17",
    ] {
        rows.push((k, "8u^3"));
    }
    rows.push(("9_24", "4u^3 + 4u^9"));
    rows
}
