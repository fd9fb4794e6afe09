//! The bundled link table: PD codes for all prime knots through 8 crossings
//! plus 9_24 (Rolfsen numbering) and all prime links through 7 crossings
//! (Thistlethwaite naming), in table order.

use std::sync::OnceLock;

use crate::io::LinkFile;

static BUNDLED: &str = include_str!("../data/links.json");

fn bundled() -> &'static [LinkFile] {
    static CACHE: OnceLock<Vec<LinkFile>> = OnceLock::new();
    CACHE.get_or_init(|| serde_json::from_str(BUNDLED).expect("bundled table parses"))
}

/// The table in canonical order, either the bundled one or the contents of
/// an override file (JSON array of link objects).
pub fn link_table(override_path: Option<&std::path::Path>) -> Result<Vec<LinkFile>, crate::io::IoError> {
    match override_path {
        None => Ok(bundled().to_vec()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| crate::io::IoError::Read {
                path: p.display().to_string(),
                source,
            })?;
            serde_json::from_str(&text).map_err(|source| crate::io::IoError::Parse {
                path: p.display().to_string(),
                source,
            })
        }
    }
}

/// Looks a link up by table name.
pub fn find_link<'a>(table: &'a [LinkFile], name: &str) -> Option<&'a LinkFile> {
    table.iter().find(|l| l.name == name)
}

/// Crossing count encoded in a table name: `8_19` -> 8, `L6a4` -> 6.
pub fn name_crossings(name: &str) -> Option<usize> {
    if let Some(rest) = name.strip_prefix('L') {
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        digits.parse().ok()
    } else {
        name.split('_').next()?.parse().ok()
    }
}

pub fn is_knot_name(name: &str) -> bool {
    !name.starts_with('L')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LinkDiagram;

    #[test]
    fn bundled_table_is_complete_and_well_formed() {
        let table = link_table(None).unwrap();
        assert_eq!(table.len(), 54);
        let knots = table.iter().filter(|l| is_knot_name(&l.name)).count();
        assert_eq!(knots, 36); // 35 prime knots through 8 crossings + 9_24
        for link in &table {
            let d = LinkDiagram::from_pd(&link.pd_code())
                .unwrap_or_else(|e| panic!("{}: {e}", link.name));
            assert_eq!(d.components().len(), link.components, "{}", link.name);
            assert_eq!(d.crossings(), name_crossings(&link.name).unwrap(), "{}", link.name);
        }
    }

    #[test]
    fn name_resolution() {
        let table = link_table(None).unwrap();
        assert!(find_link(&table, "3_1").is_some());
        assert!(find_link(&table, "L7a7").is_some());
        assert!(find_link(&table, "10_1").is_none());
        assert_eq!(name_crossings("8_19"), Some(8));
        assert_eq!(name_crossings("L6a4"), Some(6));
        assert_eq!(name_crossings("9_24"), Some(9));
    }
}
