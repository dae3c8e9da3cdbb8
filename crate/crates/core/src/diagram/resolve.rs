use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use super::{EdgeId, LinkDiagram};
use crate::error::{Error, Result};

/// A vertex of the cube of resolutions: one bit per crossing.
///
/// Bit `i` set means crossing `i` takes its 1-smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    mask: u32,
    len: u8,
}

impl State {
    pub const MAX_CROSSINGS: usize = 24;

    pub fn new(mask: u32, len: usize) -> Self {
        assert!(len <= Self::MAX_CROSSINGS, "too many crossings for a state");
        debug_assert!(len == 32 || mask >> len == 0);
        State { mask, len: len as u8 }
    }

    pub fn zero(len: usize) -> Self {
        State::new(0, len)
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mask = bits.iter().enumerate().fold(0u32, |m, (i, &b)| m | ((b as u32) << i));
        State::new(mask, bits.len())
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn get(self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn with(self, i: usize, bit: bool) -> State {
        let mask = if bit { self.mask | 1 << i } else { self.mask & !(1 << i) };
        State { mask, len: self.len }
    }

    /// Number of 1-smoothings.
    pub fn weight(self) -> usize {
        self.mask.count_ones() as usize
    }

    /// All `2^len` states in increasing mask order.
    pub fn all(len: usize) -> impl Iterator<Item = State> {
        (0..1u32 << len).map(move |m| State::new(m, len))
    }
}

/// The circles of a complete smoothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Each circle's edges in increasing order; circles ordered by least edge.
    pub circles: Vec<Vec<EdgeId>>,
    membership: BTreeMap<EdgeId, usize>,
}

impl Resolution {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of(&self, e: EdgeId) -> Option<usize> {
        self.membership.get(&e).copied()
    }
}

/// Edge pairs joined by the smoothing of a crossing tuple `[a,b,c,d]`.
///
/// The 0-smoothing joins a–b and c–d; the 1-smoothing joins a–d and b–c.
/// At a positive crossing the 0-smoothing is the oriented one.
pub fn smoothing_pairs(edges: [EdgeId; 4], one: bool) -> [(EdgeId, EdgeId); 2] {
    let [a, b, c, d] = edges;
    if one {
        [(a, d), (b, c)]
    } else {
        [(a, b), (c, d)]
    }
}

impl LinkDiagram {
    /// Traces the circles of the smoothing selected by `state`.
    pub fn resolve(&self, state: State) -> Result<Resolution> {
        if state.len() != self.crossing_count() {
            return Err(Error::StateLength { expected: self.crossing_count(), got: state.len() });
        }
        let edges = self.edges();
        let index: BTreeMap<EdgeId, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::<usize>::new(edges.len());
        for (ci, c) in self.crossings().iter().enumerate() {
            for (x, y) in smoothing_pairs(c.edges, state.get(ci)) {
                uf.union(index[&x], index[&y]);
            }
        }
        let mut root_to_circle: BTreeMap<usize, usize> = BTreeMap::new();
        let mut circles: Vec<Vec<EdgeId>> = Vec::new();
        let mut membership = BTreeMap::new();
        // edges are sorted, so circles come out ordered by least edge
        for (i, &e) in edges.iter().enumerate() {
            let root = uf.find(i);
            let ci = *root_to_circle.entry(root).or_insert_with(|| {
                circles.push(Vec::new());
                circles.len() - 1
            });
            circles[ci].push(e);
            membership.insert(e, ci);
        }
        Ok(Resolution { circles, membership })
    }

    /// Index of the circle of `resolve(state)` containing edge `e`.
    pub fn locate(&self, e: EdgeId, state: State) -> Result<usize> {
        if !self.has_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
        let r = self.resolve(state)?;
        Ok(r.circle_of(e).expect("edge belongs to a circle"))
    }

    /// The state whose smoothing follows the orientation everywhere.
    pub fn oriented_state(&self) -> State {
        let bits: Vec<bool> = self
            .crossings()
            .iter()
            .map(|c| c.sign == super::Sign::Negative)
            .collect();
        State::from_bits(&bits)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_pd;
    use super::*;
    use proptest::prelude::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn unknot_has_one_circle() {
        let d = LinkDiagram::unknot();
        assert_eq!(d.resolve(State::zero(0)).unwrap().circle_count(), 1);
    }

    #[test]
    fn trefoil_seifert_circles() {
        let d = parse_pd(TREFOIL).unwrap();
        let r = d.resolve(d.oriented_state()).unwrap();
        assert_eq!(r.circle_count(), 2);
        // Seifert genus: (n - s + 1) / 2 = 1
        assert_eq!((d.crossing_count() + 1 - r.circle_count()) / 2, 1);
    }

    #[test]
    fn state_length_is_checked() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(
            d.resolve(State::zero(2)),
            Err(Error::StateLength { expected: 3, got: 2 })
        );
    }

    #[test]
    fn locate_agrees_with_membership() {
        let d = parse_pd(TREFOIL).unwrap();
        let s = State::zero(3);
        let r = d.resolve(s).unwrap();
        assert_eq!(d.locate(1, s).unwrap(), r.circle_of(1).unwrap());
        assert_eq!(d.locate(99, s), Err(Error::UnknownEdge(99)));
        let k = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(k.locate(1, State::zero(1)).unwrap(), 0);
    }

    proptest! {
        #[test]
        fn adjacent_states_differ_by_one_circle(mask in 0u32..8, bit in 0usize..3) {
            let d = parse_pd(TREFOIL).unwrap();
            let s = State::new(mask, 3);
            let a = d.resolve(s).unwrap();
            let b = d.resolve(s.with(bit, !s.get(bit))).unwrap();
            prop_assert_eq!((a.circle_count() as i64 - b.circle_count() as i64).abs(), 1);
            let total: usize = a.circles.iter().map(Vec::len).sum();
            prop_assert_eq!(total, d.edge_count());
        }
    }
}
