//! Bundled PD codes of the prime knots with at most eight crossings,
//! taken from KnotInfo (see `scripts/fetch_knots.py`).

use crate::diagram::{parse_pd, LinkDiagram};
use crate::error::{Error, Result};

const TABLE: &str = include_str!("../data/knots.tsv");

/// A named knot of the bundled table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnotEntry {
    pub name: &'static str,
    pub pd: &'static str,
}

impl KnotEntry {
    /// Crossing number, read off the name.
    pub fn crossings(&self) -> usize {
        self.name.split('_').next().and_then(|c| c.parse().ok()).unwrap_or(0)
    }

    pub fn diagram(&self) -> Result<LinkDiagram> {
        parse_pd(self.pd)
    }
}

/// Every entry, in table order.
pub fn table() -> Vec<KnotEntry> {
    rows(TABLE).map(|(name, pd)| KnotEntry { name, pd }).collect()
}

fn rows(text: &str) -> impl Iterator<Item = (&str, &str)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .filter_map(|l| l.split_once('\t'))
        .map(|(n, p)| (n.trim(), p.trim()))
}

/// Reads a table in the bundled format: `name<TAB>pd` per line, `#`
/// comments.
pub fn parse_table(text: &str) -> Result<Vec<(String, LinkDiagram)>> {
    rows(text)
        .map(|(name, pd)| {
            let d = parse_pd(pd).map_err(|e| Error::Precondition(format!("{name}: {e}")))?;
            Ok((name.to_string(), d))
        })
        .collect()
}

/// Knots with at most `max` crossings.
pub fn up_to(max: usize) -> Vec<KnotEntry> {
    table().into_iter().filter(|k| k.crossings() <= max).collect()
}

pub fn lookup(name: &str) -> Option<KnotEntry> {
    table().into_iter().find(|k| k.name == name)
}

/// Resolves a name from the table, or `unknot`, to a diagram.
pub fn diagram_by_name(name: &str) -> Result<LinkDiagram> {
    if matches!(name, "unknot" | "0_1") {
        return Ok(LinkDiagram::unknot());
    }
    lookup(name)
        .ok_or_else(|| Error::Precondition(format!("unknown knot {name:?}")))?
        .diagram()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_complete_and_parses() {
        let t = table();
        assert_eq!(t.len(), 35);
        assert_eq!(up_to(7).len(), 14);
        for k in t {
            let d = k.diagram().unwrap();
            assert_eq!(d.crossing_count(), k.crossings(), "{}", k.name);
            assert!(d.is_knot(), "{}", k.name);
        }
    }

    #[test]
    fn owned_tables() {
        let t = parse_table("# c\n3_1\tX[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n").unwrap();
        assert_eq!(t.len(), 1);
        assert!(parse_table("k\tX[1,2]\n").is_err());
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(lookup("6_1").unwrap().crossings(), 6);
        assert!(lookup("9_1").is_none());
        assert_eq!(diagram_by_name("unknot").unwrap().crossing_count(), 0);
    }
}
