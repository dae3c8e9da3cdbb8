//! Oriented link diagrams given by planar diagram (PD) codes.
//!
//! A crossing is a 4-tuple of edge labels read counterclockwise, starting
//! with the under-strand edge that enters the crossing. Crossingless
//! components are kept separately as loops.

mod parse;
mod resolve;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::parse_pd;
pub use resolve::{smoothing_pairs, Resolution, State};

pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [EdgeId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(edges: [EdgeId; 4], sign: Sign) -> Self {
        Crossing { edges, sign }
    }

    /// Whether the edge at `position` enters this crossing.
    ///
    /// The under strand always runs 0 → 2. The over strand runs 3 → 1 at a
    /// positive crossing and 1 → 3 at a negative one.
    pub fn is_incoming(&self, position: usize) -> bool {
        match (position, self.sign) {
            (0, _) => true,
            (2, _) => false,
            (3, Sign::Positive) | (1, Sign::Negative) => true,
            _ => false,
        }
    }
}

/// A crossing position `(crossing index, slot 0..4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeEnds {
    pub tail: Slot,
    pub head: Slot,
}

/// One side of an edge on a face boundary: the edge traversed forward
/// (along its orientation) or backward, with the face on the left.
pub type FaceSide = (EdgeId, bool);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    loops: Vec<EdgeId>,
    ends: BTreeMap<EdgeId, EdgeEnds>,
}

impl LinkDiagram {
    /// Validates and assembles a diagram from signed crossings and loops.
    pub fn new(crossings: Vec<Crossing>, mut loops: Vec<EdgeId>) -> Result<Self> {
        loops.sort_unstable();
        if loops.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDiagram("duplicate loop label".into()));
        }
        let mut tails: BTreeMap<EdgeId, Vec<Slot>> = BTreeMap::new();
        let mut heads: BTreeMap<EdgeId, Vec<Slot>> = BTreeMap::new();
        for (ci, c) in crossings.iter().enumerate() {
            for (p, &e) in c.edges.iter().enumerate() {
                let slot = Slot { crossing: ci, position: p };
                if c.is_incoming(p) {
                    heads.entry(e).or_default().push(slot);
                } else {
                    tails.entry(e).or_default().push(slot);
                }
            }
        }
        let labels: BTreeSet<EdgeId> = heads.keys().chain(tails.keys()).copied().collect();
        let mut ends = BTreeMap::new();
        for e in labels {
            let h = heads.get(&e).map_or(&[][..], |v| v.as_slice());
            let t = tails.get(&e).map_or(&[][..], |v| v.as_slice());
            if h.len() + t.len() != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "edge {e} appears {} times",
                    h.len() + t.len()
                )));
            }
            if h.len() != 1 {
                return Err(Error::InvalidDiagram(format!(
                    "orientation inconsistency on edge {e}"
                )));
            }
            ends.insert(e, EdgeEnds { tail: t[0], head: h[0] });
        }
        if let Some(l) = loops.iter().find(|l| ends.contains_key(l)) {
            return Err(Error::InvalidDiagram(format!("loop {l} also meets a crossing")));
        }
        Ok(LinkDiagram { crossings, loops, ends })
    }

    /// The crossingless unknot with a single loop labelled 1.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// `n` disjoint crossingless circles labelled 1..=n.
    pub fn unlink(n: u32) -> Self {
        LinkDiagram::new(Vec::new(), (1..=n).collect()).expect("unlink is valid")
    }

    pub fn empty() -> Self {
        Self::unlink(0)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> Result<&Crossing> {
        self.crossings.get(c).ok_or(Error::UnknownCrossing(c))
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> &[EdgeId] {
        &self.loops
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.loops.binary_search(&e).is_ok()
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.ends.contains_key(&e) || self.is_loop(e)
    }

    /// All edge labels in increasing order.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut v: Vec<EdgeId> = self.ends.keys().copied().chain(self.loops.iter().copied()).collect();
        v.sort_unstable();
        v
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len() + self.loops.len()
    }

    pub fn max_edge(&self) -> EdgeId {
        self.edges().last().copied().unwrap_or(0)
    }

    pub fn ends(&self, e: EdgeId) -> Result<EdgeEnds> {
        self.ends.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    /// `(n₊, n₋)`.
    pub fn sign_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.sign == Sign::Positive).count();
        (pos, self.crossings.len() - pos)
    }

    pub fn writhe(&self) -> i64 {
        let (p, n) = self.sign_counts();
        p as i64 - n as i64
    }

    /// The edge following `e` along the orientation.
    pub fn next_edge(&self, e: EdgeId) -> Result<EdgeId> {
        if self.is_loop(e) {
            return Ok(e);
        }
        let head = self.ends(e)?.head;
        Ok(self.crossings[head.crossing].edges[(head.position + 2) % 4])
    }

    /// Link components as edge lists in traversal order, ordered by least edge.
    pub fn components(&self) -> Vec<Vec<EdgeId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in self.edges() {
            if seen.contains(&e) {
                continue;
            }
            let mut comp = vec![e];
            seen.insert(e);
            let mut cur = self.next_edge(e).expect("edge exists");
            while cur != e {
                seen.insert(cur);
                comp.push(cur);
                cur = self.next_edge(cur).expect("edge exists");
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// The two under-strand edges at crossing `c`: (entering, leaving).
    pub fn crossing_sides(&self, c: usize) -> Result<(EdgeId, EdgeId)> {
        let x = self.crossing(c)?;
        Ok((x.edges[0], x.edges[2]))
    }

    /// Faces of the planar diagram as cycles of edge sides.
    ///
    /// Each face is traced keeping it on the left. Loops bound no traced
    /// face and are omitted.
    pub fn faces(&self) -> Vec<Vec<FaceSide>> {
        let mut seen: BTreeSet<FaceSide> = BTreeSet::new();
        let mut faces = Vec::new();
        for &e in self.ends.keys() {
            for forward in [true, false] {
                if seen.contains(&(e, forward)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = (e, forward);
                while seen.insert(cur) {
                    face.push(cur);
                    let ends = self.ends[&cur.0];
                    let arrive = if cur.1 { ends.head } else { ends.tail };
                    let out_pos = (arrive.position + 3) % 4;
                    let out_edge = self.crossings[arrive.crossing].edges[out_pos];
                    let out_ends = self.ends[&out_edge];
                    let leaving = Slot { crossing: arrive.crossing, position: out_pos };
                    // An edge running from a crossing back into it needs the
                    // slot comparison to decide which end we leave through.
                    let fwd = out_ends.tail == leaving;
                    cur = (out_edge, fwd);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Whether the PD code describes a diagram on the sphere, checked by
    /// counting faces against the Euler characteristic of each piece.
    pub fn is_planar(&self) -> bool {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for ends in self.ends.values() {
            let (a, b) = (root(&mut parent, ends.tail.crossing), root(&mut parent, ends.head.crossing));
            parent[a] = b;
        }
        let pieces = (0..n).filter(|&i| root(&mut parent, i) == i).count();
        self.faces().len() == n + 2 * pieces
    }

    /// Whether an oriented band can join `a` and `b` inside a common face.
    pub fn saddle_compatible(&self, a: EdgeId, b: EdgeId) -> bool {
        if self.is_loop(a) || self.is_loop(b) || a == b {
            return self.has_edge(a) && self.has_edge(b);
        }
        self.faces().iter().any(|f| {
            [true, false]
                .iter()
                .any(|&d| f.contains(&(a, d)) && f.contains(&(b, d)))
        })
    }

    /// Mirror image: every crossing changes over/under and sign.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                let edges = match c.sign {
                    Sign::Positive => [d, a, b, cc],
                    Sign::Negative => [b, cc, d, a],
                };
                Crossing::new(edges, c.sign.flipped())
            })
            .collect();
        LinkDiagram::new(crossings, self.loops.clone()).expect("mirror of a valid diagram")
    }

    /// The same diagram with crossings listed in the given order.
    pub fn reordered(&self, order: &[usize]) -> LinkDiagram {
        let crossings = order.iter().map(|&i| self.crossings[i].clone()).collect();
        LinkDiagram::new(crossings, self.loops.clone()).expect("reordering keeps validity")
    }

    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("X[{},{},{},{}]", c.edges[0], c.edges[1], c.edges[2], c.edges[3]))
            .collect();
        parts.extend(self.loops.iter().map(|l| format!("Loop[{l}]")));
        parts.join(" ")
    }
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkDiagram({})", self.to_pd_string())?;
        let signs: String = self
            .crossings
            .iter()
            .map(|c| if c.sign == Sign::Positive { '+' } else { '-' })
            .collect();
        if !signs.is_empty() {
            write!(f, " [{signs}]")?;
        }
        Ok(())
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn trefoil_is_left_handed() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.sign_counts(), (0, 3));
        assert!(d.is_knot());
        assert_eq!(d.edge_count(), 6);
    }

    #[test]
    fn kinked_unknot() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.sign_counts(), (1, 0));
        assert_eq!(d.crossing_sides(0).unwrap(), (1, 2));
    }

    #[test]
    fn face_count_satisfies_euler() {
        for pd in [TREFOIL, "X[1,1,2,2]", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"] {
            let d = parse_pd(pd).unwrap();
            assert_eq!(d.faces().len(), d.crossing_count() + 2, "{pd}");
            let sides: usize = d.faces().iter().map(Vec::len).sum();
            assert_eq!(sides, 2 * d.edge_count());
        }
    }

    #[test]
    fn crossing_sides_of_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_sides(0).unwrap(), (1, 2));
        assert_eq!(d.crossing_sides(5), Err(Error::UnknownCrossing(5)));
    }

    #[test]
    fn mirror_flips_signs() {
        let d = parse_pd(TREFOIL).unwrap();
        let m = d.mirror();
        assert_eq!(m.sign_counts(), (3, 0));
        assert_eq!(m.mirror(), d);
    }

    #[test]
    fn components_of_hopf_link() {
        let d = parse_pd("X[4,1,3,2] X[2,3,1,4]").unwrap();
        assert_eq!(d.component_count(), 2);
    }
}
