//! The KnotInfo fixture: Jones polynomials and integral Khovanov homology
//! of the prime knots up to eight crossings.

use std::collections::BTreeMap;

const FIXTURE: &str = include_str!("../data/knotinfo.tsv");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotInfoRow {
    pub name: String,
    /// `V(t)` keyed by exponents of `t^{1/2}`.
    pub jones: BTreeMap<i32, i64>,
    /// `(torsion, rank, r, q)`: `torsion` is 0 for free summands, else the
    /// order of the cyclic group.
    pub khovanov: Vec<[i64; 4]>,
    pub four_genus: i64,
    pub s: i64,
}

impl KnotInfoRow {
    /// Dimensions of Khovanov homology over F2 by universal coefficients:
    /// each `Z/2` summand in `(r, q)` contributes to `(r, q)` and `(r − 1, q)`.
    pub fn khovanov_f2(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for &[t, rank, r, q] in &self.khovanov {
            let (r, q, rank) = (r as i32, q as i32, rank as usize);
            if t == 0 {
                *out.entry((r, q)).or_default() += rank;
            } else if t % 2 == 0 {
                *out.entry((r, q)).or_default() += rank;
                *out.entry((r - 1, q)).or_default() += rank;
            }
        }
        out
    }
}

fn numbers(s: &str) -> Vec<i64> {
    s.split(|c: char| !(c.is_ascii_digit() || c == '-')).filter(|t| !t.is_empty()).map(|t| t.parse().unwrap()).collect()
}

pub fn fixture() -> Vec<KnotInfoRow> {
    FIXTURE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split('\t').collect();
            let j = numbers(f[1]);
            let jones = j[2..].iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (2 * (j[0] as i32 + i as i32), *c)).collect();
            let khovanov = numbers(f[2]).chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
            KnotInfoRow { name: f[0].to_string(), jones, khovanov, four_genus: f[3].trim().parse().unwrap(), s: f[4].trim().parse().unwrap() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_row() {
        let rows = fixture();
        let t = rows.iter().find(|r| r.name == "3_1").unwrap();
        assert_eq!(t.jones, [(2, 1), (6, 1), (8, -1)].into_iter().collect());
        assert_eq!(t.khovanov_f2().values().sum::<usize>(), 6);
        assert_eq!(rows.len(), 35);
    }
}
