//! Elementary cobordisms and their effect on diagrams.

use std::fmt;

use crate::diagram::{Crossing, EdgeId, LinkDiagram, Sign};
use crate::error::{Error, Result};

/// A decoration placed on a sheet of a movie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Dot,
    Digit1,
    Digit2,
    Star,
}

impl Mark {
    pub fn keyword(self) -> &'static str {
        match self {
            Mark::Dot => "dot",
            Mark::Digit1 => "digit1",
            Mark::Digit2 => "digit2",
            Mark::Star => "star",
        }
    }

    pub fn decoration<C: crate::scalar::Coefficient>(self) -> crate::frobenius::Decoration<C> {
        use crate::frobenius::Decoration;
        match self {
            Mark::Dot => Decoration::Dot,
            Mark::Digit1 => Decoration::Digit1,
            Mark::Digit2 => Decoration::Digit2,
            Mark::Star => Decoration::Star,
        }
    }

    /// The digit a reflection through a crossing turns this one into.
    pub fn opposite(self) -> Mark {
        match self {
            Mark::Digit1 => Mark::Digit2,
            Mark::Digit2 => Mark::Digit1,
            m => m,
        }
    }
}

/// One step of a movie.
///
/// The optional fields pin down labels and crossing positions so that the
/// inverse of a move restores its source diagram exactly; scripts leave
/// them unset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryMove {
    /// A new crossingless circle.
    Birth { label: Option<EdgeId> },
    /// Caps off the crossingless circle `circle`.
    Death { circle: EdgeId },
    /// An oriented band between edges `a` and `b`.
    Saddle { a: EdgeId, b: EdgeId, new_loop: Option<EdgeId> },
    /// A decoration on the sheet through `edge`; the diagram is unchanged.
    Decorate { mark: Mark, edge: EdgeId },
    /// Adds a kink on `edge`.
    R1Plus { edge: EdgeId, sign: Sign, over_first: bool, fresh: Option<[EdgeId; 2]>, position: Option<usize> },
    /// Removes the kink at a crossing.
    R1Minus { crossing: usize },
    /// Pushes `over` across `under` through a common face.
    R2Plus {
        over: EdgeId,
        under: EdgeId,
        face: usize,
        directions: Option<(bool, bool)>,
        fresh: Option<[EdgeId; 4]>,
        positions: Option<[usize; 2]>,
    },
    /// Removes the bigon between two crossings.
    R2Minus { crossings: [usize; 2] },
    /// Slides a strand across the crossing opposite it in a triangle.
    R3 { crossings: [usize; 3] },
}

impl ElementaryMove {
    pub fn birth() -> Self {
        ElementaryMove::Birth { label: None }
    }

    pub fn saddle(a: EdgeId, b: EdgeId) -> Self {
        ElementaryMove::Saddle { a, b, new_loop: None }
    }

    pub fn r1_plus(edge: EdgeId, sign: Sign) -> Self {
        ElementaryMove::R1Plus { edge, sign, over_first: false, fresh: None, position: None }
    }

    pub fn r2_plus(over: EdgeId, under: EdgeId) -> Self {
        ElementaryMove::R2Plus { over, under, face: 0, directions: None, fresh: None, positions: None }
    }

    pub fn is_decoration(&self) -> bool {
        matches!(self, ElementaryMove::Decorate { .. })
    }

    pub fn is_reidemeister(&self) -> bool {
        matches!(
            self,
            ElementaryMove::R1Plus { .. }
                | ElementaryMove::R1Minus { .. }
                | ElementaryMove::R2Plus { .. }
                | ElementaryMove::R2Minus { .. }
                | ElementaryMove::R3 { .. }
        )
    }
}

impl fmt::Display for ElementaryMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ElementaryMove::*;
        match self {
            Birth { .. } => write!(f, "birth"),
            Death { circle } => write!(f, "death {circle}"),
            Saddle { a, b, .. } => write!(f, "saddle {a} {b}"),
            Decorate { mark, edge } => write!(f, "{} {edge}", mark.keyword()),
            R1Plus { edge, sign, over_first, .. } => write!(
                f,
                "r1+ {edge} {} {}",
                if *sign == Sign::Positive { '+' } else { '-' },
                if *over_first { "over" } else { "under" }
            ),
            R1Minus { crossing } => write!(f, "r1- {crossing}"),
            R2Plus { over, under, face, .. } => {
                write!(f, "r2+ {over} {under}")?;
                if *face > 0 {
                    write!(f, " {face}")?;
                }
                Ok(())
            }
            R2Minus { crossings: [a, b] } => write!(f, "r2- {a} {b}"),
            R3 { crossings: [a, b, c] } => write!(f, "r3 {a} {b} {c}"),
        }
    }
}

/// Where a Reidemeister move happens, in the diagram with more crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Site {
    None,
    /// Kink at `crossing`; `loop_edge` is the edge from the crossing to itself.
    Kink { crossing: usize, loop_edge: EdgeId },
    /// Bigon between crossings `l` and `r` bounded by `over_mid` and `under_mid`.
    Bigon { l: usize, r: usize, over_mid: EdgeId, under_mid: EdgeId },
}

/// Result of applying a move.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub diagram: LinkDiagram,
    /// A move taking `diagram` back to the source exactly.
    pub inverse: ElementaryMove,
    pub site: Site,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMove(msg.into())
}

fn require_edge(d: &LinkDiagram, e: EdgeId) -> Result<()> {
    if d.has_edge(e) {
        Ok(())
    } else {
        Err(Error::UnknownEdge(e))
    }
}

/// Edge list with `e`'s head slot relabelled `to` (no-op for loops).
fn retarget_head(d: &LinkDiagram, crossings: &mut [Crossing], e: EdgeId, to: EdgeId) -> Result<()> {
    if d.is_loop(e) {
        return Ok(());
    }
    let head = d.ends(e)?.head;
    crossings[head.crossing].edges[head.position] = to;
    Ok(())
}

fn insert_at(crossings: &mut Vec<Crossing>, mut items: Vec<(usize, Crossing)>) -> Result<()> {
    items.sort_by_key(|(p, _)| *p);
    for (p, c) in items {
        if p > crossings.len() {
            return Err(invalid(format!("crossing position {p} out of range")));
        }
        crossings.insert(p, c);
    }
    Ok(())
}

fn fresh_labels<const N: usize>(d: &LinkDiagram) -> [EdgeId; N] {
    let m = d.max_edge();
    std::array::from_fn(|i| m + 1 + i as EdgeId)
}

/// Applies `m` to `d`.
pub fn apply_move(d: &LinkDiagram, m: &ElementaryMove) -> Result<Outcome> {
    use ElementaryMove::*;
    match m {
        Birth { label } => {
            let l = label.unwrap_or_else(|| fresh_labels::<1>(d)[0]);
            if d.has_edge(l) {
                return Err(invalid(format!("label {l} already in use")));
            }
            let mut loops = d.loops().to_vec();
            loops.push(l);
            let diagram = LinkDiagram::new(d.crossings().to_vec(), loops)?;
            Ok(Outcome { diagram, inverse: Death { circle: l }, site: Site::None })
        }
        Death { circle } => {
            if !d.is_loop(*circle) {
                return Err(invalid(format!("{circle} is not a crossingless circle")));
            }
            let loops = d.loops().iter().copied().filter(|l| l != circle).collect();
            let diagram = LinkDiagram::new(d.crossings().to_vec(), loops)?;
            Ok(Outcome { diagram, inverse: Birth { label: Some(*circle) }, site: Site::None })
        }
        Decorate { edge, .. } => {
            require_edge(d, *edge)?;
            Ok(Outcome { diagram: d.clone(), inverse: m.clone(), site: Site::None })
        }
        Saddle { a, b, new_loop } => saddle(d, *a, *b, *new_loop),
        R1Plus { edge, sign, over_first, fresh, position } => {
            r1_plus(d, *edge, *sign, *over_first, fresh.unwrap_or_else(|| fresh_labels(d)), *position)
        }
        R1Minus { crossing } => r1_minus(d, *crossing),
        R2Plus { over, under, face, directions, fresh, positions } => r2_plus(
            d,
            *over,
            *under,
            *face,
            *directions,
            fresh.unwrap_or_else(|| fresh_labels(d)),
            *positions,
        ),
        R2Minus { crossings } => r2_minus(d, *crossings),
        R3 { crossings } => r3(d, *crossings),
    }
}

fn saddle(d: &LinkDiagram, a: EdgeId, b: EdgeId, new_loop: Option<EdgeId>) -> Result<Outcome> {
    require_edge(d, a)?;
    require_edge(d, b)?;
    let mut loops = d.loops().to_vec();
    if a == b {
        let l = new_loop.unwrap_or_else(|| fresh_labels::<1>(d)[0]);
        if d.has_edge(l) {
            return Err(invalid(format!("label {l} already in use")));
        }
        loops.push(l);
        let diagram = LinkDiagram::new(d.crossings().to_vec(), loops)?;
        let inverse = ElementaryMove::Saddle { a, b: l, new_loop: None };
        return Ok(Outcome { diagram, inverse, site: Site::None });
    }
    if d.is_loop(a) || d.is_loop(b) {
        let (keep, gone) = if d.is_loop(b) { (a, b) } else { (b, a) };
        loops.retain(|l| *l != gone);
        let diagram = LinkDiagram::new(d.crossings().to_vec(), loops)?;
        let inverse = ElementaryMove::Saddle { a: keep, b: keep, new_loop: Some(gone) };
        return Ok(Outcome { diagram, inverse, site: Site::None });
    }
    if !d.saddle_compatible(a, b) {
        return Err(invalid(format!("edges {a} and {b} do not face each other with compatible orientations")));
    }
    let mut crossings = d.crossings().to_vec();
    let (ha, hb) = (d.ends(a)?.head, d.ends(b)?.head);
    crossings[ha.crossing].edges[ha.position] = b;
    crossings[hb.crossing].edges[hb.position] = a;
    let diagram = LinkDiagram::new(crossings, loops)?;
    Ok(Outcome { diagram, inverse: ElementaryMove::Saddle { a, b, new_loop: None }, site: Site::None })
}

fn r1_plus(
    d: &LinkDiagram,
    e: EdgeId,
    sign: Sign,
    over_first: bool,
    [n1, n2]: [EdgeId; 2],
    position: Option<usize>,
) -> Result<Outcome> {
    require_edge(d, e)?;
    let out = if d.is_loop(e) { e } else { n2 };
    for l in [n1, out] {
        if l != e && d.has_edge(l) {
            return Err(invalid(format!("label {l} already in use")));
        }
    }
    let edges = match (sign, over_first) {
        (Sign::Positive, false) => [e, out, n1, n1],
        (Sign::Negative, false) => [e, n1, n1, out],
        (Sign::Positive, true) => [n1, n1, out, e],
        (Sign::Negative, true) => [n1, e, out, n1],
    };
    let mut crossings = d.crossings().to_vec();
    retarget_head(d, &mut crossings, e, out)?;
    let pos = position.unwrap_or(crossings.len());
    insert_at(&mut crossings, vec![(pos, Crossing::new(edges, sign))])?;
    let loops = d.loops().iter().copied().filter(|l| *l != e).collect();
    let diagram = LinkDiagram::new(crossings, loops)?;
    Ok(Outcome {
        diagram,
        inverse: ElementaryMove::R1Minus { crossing: pos },
        site: Site::Kink { crossing: pos, loop_edge: n1 },
    })
}

/// Reads a kink at crossing `c`: `(incoming edge, loop edge, outgoing edge, over_first)`.
pub fn kink_at(d: &LinkDiagram, c: usize) -> Result<(EdgeId, EdgeId, EdgeId, bool)> {
    let x = d.crossing(c)?;
    let t = x.edges;
    // A kink on a crossingless circle matches at two places; the loop edge
    // is then taken to be the larger label.
    let k = (0..4)
        .filter(|&k| t[k] == t[(k + 1) % 4])
        .max_by_key(|&k| t[k])
        .ok_or_else(|| invalid(format!("crossing {c} is not a kink")))?;
    let (e, n2, sign, over_first) = match k {
        2 => (t[0], t[1], Sign::Positive, false),
        1 => (t[0], t[3], Sign::Negative, false),
        0 => (t[3], t[2], Sign::Positive, true),
        _ => (t[1], t[2], Sign::Negative, true),
    };
    if sign != x.sign {
        return Err(invalid(format!("crossing {c} has an inconsistent kink")));
    }
    Ok((e, t[k], n2, over_first))
}

fn r1_minus(d: &LinkDiagram, c: usize) -> Result<Outcome> {
    let (e, n1, n2, over_first) = kink_at(d, c)?;
    let sign = d.crossing(c)?.sign;
    let mut crossings = d.crossings().to_vec();
    let mut loops = d.loops().to_vec();
    if e == n2 {
        loops.push(e);
    } else {
        let head = d.ends(n2)?.head;
        crossings[head.crossing].edges[head.position] = e;
    }
    crossings.remove(c);
    let diagram = LinkDiagram::new(crossings, loops)?;
    let inverse = ElementaryMove::R1Plus { edge: e, sign, over_first, fresh: Some([n1, n2]), position: Some(c) };
    Ok(Outcome { diagram, inverse, site: Site::Kink { crossing: c, loop_edge: n1 } })
}

/// Directions `(d1, d2)` with which `over` and `under` bound a common face.
fn face_directions(d: &LinkDiagram, over: EdgeId, under: EdgeId, face: usize) -> Result<(bool, bool)> {
    match (d.is_loop(over), d.is_loop(under)) {
        (true, _) | (_, true) => return Ok((true, true)),
        _ => {}
    }
    let mut options = Vec::new();
    for f in d.faces() {
        for d1 in [true, false] {
            for d2 in [true, false] {
                if f.contains(&(over, d1)) && f.contains(&(under, d2)) && !options.contains(&(d1, d2)) {
                    options.push((d1, d2));
                }
            }
        }
    }
    options.get(face).copied().ok_or_else(|| {
        invalid(format!("edges {over} and {under} share {} face(s); index {face} unavailable", options.len()))
    })
}

fn r2_plus(
    d: &LinkDiagram,
    e1: EdgeId,
    e2: EdgeId,
    face: usize,
    directions: Option<(bool, bool)>,
    [p, p2, m, m2]: [EdgeId; 4],
    positions: Option<[usize; 2]>,
) -> Result<Outcome> {
    require_edge(d, e1)?;
    require_edge(d, e2)?;
    if e1 == e2 {
        return Err(invalid("r2 needs two distinct edges"));
    }
    let (d1, d2) = match directions {
        Some(dirs) => dirs,
        None => face_directions(d, e1, e2, face)?,
    };
    let (a1, a2) = match (d.is_loop(e1), d1) {
        (true, _) => (e1, e1),
        (false, true) => (e1, p2),
        (false, false) => (p2, e1),
    };
    let (b1, b2) = match (d.is_loop(e2), d2) {
        (true, _) => (e2, e2),
        (false, true) => (e2, m2),
        (false, false) => (m2, e2),
    };
    let mut used = vec![p, m];
    if !d.is_loop(e1) {
        used.push(p2);
    }
    if !d.is_loop(e2) {
        used.push(m2);
    }
    for (i, l) in used.iter().enumerate() {
        if d.has_edge(*l) || used[..i].contains(l) {
            return Err(invalid(format!("label {l} already in use")));
        }
    }
    let (l, r) = if d2 { ([m, p, b2, a1], [b1, p, m, a2]) } else { ([b2, a1, m, p], [m, a2, b1, p]) };
    let sl = if d1 == d2 { Sign::Positive } else { Sign::Negative };

    let mut crossings = d.crossings().to_vec();
    retarget_head(d, &mut crossings, e1, p2)?;
    retarget_head(d, &mut crossings, e2, m2)?;
    let n = crossings.len();
    let [pl, pr] = positions.unwrap_or([n, n + 1]);
    insert_at(&mut crossings, vec![(pl, Crossing::new(l, sl)), (pr, Crossing::new(r, sl.flipped()))])?;
    let loops = d.loops().iter().copied().filter(|x| *x != e1 && *x != e2).collect();
    let diagram = LinkDiagram::new(crossings, loops)?;
    Ok(Outcome {
        diagram,
        inverse: ElementaryMove::R2Minus { crossings: [pl, pr] },
        site: Site::Bigon { l: pl, r: pr, over_mid: p, under_mid: m },
    })
}

/// Reads a bigon: `(l, r, d1, d2, [a1, a2, b1, b2], p, m)` in the labelling
/// of [`r2_plus`].
#[allow(clippy::type_complexity)]
fn bigon_at(d: &LinkDiagram, [c1, c2]: [usize; 2]) -> Result<(usize, usize, bool, bool, [EdgeId; 4], EdgeId, EdgeId)> {
    if c1 == c2 {
        return Err(invalid("r2- needs two distinct crossings"));
    }
    let (x1, x2) = (d.crossing(c1)?, d.crossing(c2)?);
    for (l, r) in [(c1, c2), (c2, c1)] {
        let (xl, xr) = if l == c1 { (x1, x2) } else { (x2, x1) };
        for d2 in [true, false] {
            let (tl, tr) = (xl.edges, xr.edges);
            let (m, p, b2, a1, b1, a2) = if d2 {
                (tl[0], tl[1], tl[2], tl[3], tr[0], tr[3])
            } else {
                (tl[2], tl[3], tl[0], tl[1], tr[2], tr[1])
            };
            let expect_r = if d2 { [b1, p, m, a2] } else { [m, a2, b1, p] };
            if tr != expect_r || xl.sign == xr.sign || p == m {
                continue;
            }
            let d1 = (xl.sign == Sign::Positive) == d2;
            return Ok((l, r, d1, d2, [a1, a2, b1, b2], p, m));
        }
    }
    Err(invalid(format!("crossings {c1} and {c2} do not bound a removable bigon")))
}

fn r2_minus(d: &LinkDiagram, crossings: [usize; 2]) -> Result<Outcome> {
    let (l, r, d1, d2, [a1, a2, b1, b2], p, m) = bigon_at(d, crossings)?;
    let (e1, p2) = if d1 { (a1, a2) } else { (a2, a1) };
    let (e2, m2) = if d2 { (b1, b2) } else { (b2, b1) };
    if [a1, a2].iter().any(|x| *x == b1 || *x == b2) {
        return Err(invalid("bigon strands are joined directly; not supported"));
    }
    let mut list = d.crossings().to_vec();
    let mut loops = d.loops().to_vec();
    for (keep, gone) in [(e1, p2), (e2, m2)] {
        if keep == gone {
            loops.push(keep);
        } else {
            let head = d.ends(gone)?.head;
            list[head.crossing].edges[head.position] = keep;
        }
    }
    let (hi, lo) = if l > r { (l, r) } else { (r, l) };
    list.remove(hi);
    list.remove(lo);
    let diagram = LinkDiagram::new(list, loops)?;
    let inverse = ElementaryMove::R2Plus {
        over: e1,
        under: e2,
        face: 0,
        directions: Some((d1, d2)),
        fresh: Some([p, p2, m, m2]),
        positions: Some([l, r]),
    };
    Ok(Outcome { diagram, inverse, site: Site::Bigon { l, r, over_mid: p, under_mid: m } })
}

fn r3(d: &LinkDiagram, [c1, c2, c3]: [usize; 3]) -> Result<Outcome> {
    let _ = (d, c1, c2, c3);
    Err(invalid("r3 is not implemented"))
}

/// Applies a list of moves, returning every frame.
pub fn frames(start: &LinkDiagram, moves: &[ElementaryMove]) -> Result<Vec<LinkDiagram>> {
    let mut out = vec![start.clone()];
    for m in moves {
        let next = apply_move(out.last().expect("nonempty"), m)?.diagram;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    fn roundtrip(d: &LinkDiagram, m: &ElementaryMove) -> LinkDiagram {
        let o = apply_move(d, m).unwrap();
        assert!(o.diagram.is_planar(), "{m}: {:?}", o.diagram);
        let back = apply_move(&o.diagram, &o.inverse).unwrap();
        assert_eq!(&back.diagram, d, "{m} then {}", o.inverse);
        o.diagram
    }

    #[test]
    fn birth_on_empty_gives_unknot() {
        let o = apply_move(&LinkDiagram::empty(), &ElementaryMove::birth()).unwrap();
        assert_eq!(o.diagram.crossing_count(), 0);
        assert_eq!(o.diagram.component_count(), 1);
    }

    #[test]
    fn saddle_joins_unlink() {
        let d = LinkDiagram::unlink(2);
        let e = d.loops().to_vec();
        let o = roundtrip(&d, &ElementaryMove::saddle(e[0], e[1]));
        assert_eq!(o.component_count(), 1);
    }

    #[test]
    fn kinks_on_the_unknot() {
        let u = LinkDiagram::unknot();
        for sign in [Sign::Positive, Sign::Negative] {
            for over_first in [false, true] {
                let m = ElementaryMove::R1Plus { edge: 1, sign, over_first, fresh: None, position: None };
                let k = roundtrip(&u, &m);
                assert_eq!(k.crossing_count(), 1);
                assert_eq!(k.crossings()[0].sign, sign);
                assert!(k.is_knot());
            }
        }
    }

    #[test]
    fn kinks_and_bigons_on_the_trefoil() {
        let t = parse_pd(TREFOIL).unwrap();
        for e in t.edges() {
            for sign in [Sign::Positive, Sign::Negative] {
                let m = ElementaryMove::R1Plus { edge: e, sign, over_first: e % 2 == 0, fresh: None, position: None };
                roundtrip(&t, &m);
            }
        }
        let mut count = 0;
        for a in t.edges() {
            for b in t.edges() {
                for face in 0..2 {
                    let m = ElementaryMove::R2Plus { over: a, under: b, face, directions: None, fresh: None, positions: None };
                    if apply_move(&t, &m).is_ok() {
                        let d = roundtrip(&t, &m);
                        assert_eq!(d.crossing_count(), 5);
                        count += 1;
                    }
                }
            }
        }
        assert!(count >= 12, "{count}");
    }

    #[test]
    fn split_and_merge_saddles() {
        let t = parse_pd(TREFOIL).unwrap();
        let mut splits = 0;
        for a in t.edges() {
            for b in t.edges() {
                if a < b && t.saddle_compatible(a, b) {
                    let d = roundtrip(&t, &ElementaryMove::saddle(a, b));
                    if d.component_count() == 2 {
                        splits += 1;
                    }
                }
            }
        }
        assert!(splits > 0);
        let u = LinkDiagram::unknot();
        let two = roundtrip(&u, &ElementaryMove::saddle(1, 1));
        assert_eq!(two.component_count(), 2);
    }

    #[test]
    fn bad_moves_are_rejected() {
        let t = parse_pd(TREFOIL).unwrap();
        assert!(apply_move(&t, &ElementaryMove::saddle(1, 99)).is_err());
        assert!(apply_move(&t, &ElementaryMove::R1Minus { crossing: 0 }).is_err());
        assert!(apply_move(&t, &ElementaryMove::R2Minus { crossings: [0, 1] }).is_err());
        assert!(apply_move(&t, &ElementaryMove::Death { circle: 1 }).is_err());
    }
}
