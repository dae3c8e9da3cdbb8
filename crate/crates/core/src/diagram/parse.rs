//! PD-code text: whitespace- or comma-separated `X[a,b,c,d]` tokens,
//! optionally wrapped in `PD[...]`, plus `Loop[e]` for crossingless
//! components.

use std::collections::{BTreeMap, VecDeque};

use super::{Crossing, EdgeId, LinkDiagram, Sign};
use crate::error::{Error, Result};

struct Token {
    position: usize,
    kind: TokenKind,
}

enum TokenKind {
    Crossing([EdgeId; 4]),
    Loop(EdgeId),
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_separators(&mut self) {
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_whitespace() || self.text[self.pos] == b',')
        {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.text[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<EdgeId> {
        while self.pos < self.text.len() && self.text[self.pos] == b' ' {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected an edge label"));
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| err(start, format!("edge label `{s}` out of range")))
    }

    /// `[n, n, ...]` after a head word.
    fn bracket_list(&mut self) -> Result<Vec<EdgeId>> {
        if !self.eat("[") {
            return Err(err(self.pos, "expected `[`"));
        }
        let mut out = Vec::new();
        loop {
            out.push(self.number()?);
            while self.pos < self.text.len() && self.text[self.pos] == b' ' {
                self.pos += 1;
            }
            if self.eat(",") {
                continue;
            }
            if self.eat("]") {
                return Ok(out);
            }
            return Err(err(self.pos, "expected `,` or `]`"));
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut sc = Scanner { text: text.as_bytes(), pos: 0 };
    sc.skip_separators();
    let wrapped = sc.eat("PD[");
    let mut tokens = Vec::new();
    loop {
        sc.skip_separators();
        if sc.pos >= sc.text.len() {
            if wrapped {
                return Err(err(sc.pos, "unterminated `PD[`"));
            }
            break;
        }
        if wrapped && sc.eat("]") {
            sc.skip_separators();
            if sc.pos < sc.text.len() {
                return Err(err(sc.pos, "trailing text after `PD[...]`"));
            }
            break;
        }
        let start = sc.pos;
        if sc.eat("X") {
            let list = sc.bracket_list()?;
            let edges: [EdgeId; 4] = list.as_slice().try_into().map_err(|_| {
                err(start, format!("crossing has {} entries, expected 4", list.len()))
            })?;
            tokens.push(Token { position: start, kind: TokenKind::Crossing(edges) });
        } else if sc.eat("Loop") {
            let list = sc.bracket_list()?;
            if list.len() != 1 {
                return Err(err(start, "`Loop` takes one edge label"));
            }
            tokens.push(Token { position: start, kind: TokenKind::Loop(list[0]) });
        } else {
            return Err(err(start, "expected `X[...]` or `Loop[...]`"));
        }
    }
    Ok(tokens)
}

/// Whether the occurrence is a head, as a literal over the unknown
/// "crossing is positive" variables.
#[derive(Clone, Copy)]
enum HeadLiteral {
    Fixed(bool),
    /// head iff (positive(crossing) XOR negated)
    Var { crossing: usize, negated: bool },
}

fn head_literal(crossing: usize, position: usize) -> HeadLiteral {
    match position {
        0 => HeadLiteral::Fixed(true),
        2 => HeadLiteral::Fixed(false),
        // over strand enters at slot 3 exactly when the crossing is positive
        3 => HeadLiteral::Var { crossing, negated: false },
        _ => HeadLiteral::Var { crossing, negated: true },
    }
}

/// Parses PD text and derives crossing signs from the edge orientation.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    if text.trim().is_empty() {
        return Err(err(0, "empty PD code"));
    }
    let tokens = tokenize(text)?;
    let mut tuples = Vec::new();
    let mut positions = Vec::new();
    let mut loops = Vec::new();
    for t in &tokens {
        match t.kind {
            TokenKind::Crossing(e) => {
                tuples.push(e);
                positions.push(t.position);
            }
            TokenKind::Loop(l) => loops.push((l, t.position)),
        }
    }

    let mut occurrences: BTreeMap<EdgeId, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, tuple) in tuples.iter().enumerate() {
        for (p, &e) in tuple.iter().enumerate() {
            occurrences.entry(e).or_default().push((ci, p));
        }
    }
    for (e, occ) in &occurrences {
        if occ.len() != 2 {
            return Err(err(
                positions[occ[0].0],
                format!("edge {e} appears {} times, expected 2", occ.len()),
            ));
        }
    }
    for &(l, pos) in &loops {
        if occurrences.contains_key(&l) {
            return Err(err(pos, format!("loop label {l} is also a crossing edge")));
        }
    }

    let signs = solve_orientation(&tuples, &occurrences, &positions)?;
    let crossings = tuples
        .iter()
        .zip(&signs)
        .map(|(&e, &positive)| {
            Crossing::new(e, if positive { Sign::Positive } else { Sign::Negative })
        })
        .collect();
    LinkDiagram::new(crossings, loops.into_iter().map(|(l, _)| l).collect())
        .map_err(|e| err(0, e.to_string()))
}

/// Assigns each crossing a sign so that every edge has one head and one
/// tail. Parity constraints are propagated breadth-first; classes with no
/// under-strand anchor fall back to the consecutive-label convention.
fn solve_orientation(
    tuples: &[[EdgeId; 4]],
    occurrences: &BTreeMap<EdgeId, Vec<(usize, usize)>>,
    positions: &[usize],
) -> Result<Vec<bool>> {
    let n = tuples.len();
    let mut fixed: Vec<Option<bool>> = vec![None; n];
    // (other crossing, parity): positive(a) XOR positive(b) = parity
    let mut links: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];

    for (e, occ) in occurrences {
        let a = head_literal(occ[0].0, occ[0].1);
        let b = head_literal(occ[1].0, occ[1].1);
        let at = positions[occ[0].0];
        match (a, b) {
            (HeadLiteral::Fixed(x), HeadLiteral::Fixed(y)) => {
                if x == y {
                    return Err(err(at, format!("orientation inconsistency on edge {e}")));
                }
            }
            (HeadLiteral::Fixed(x), HeadLiteral::Var { crossing, negated })
            | (HeadLiteral::Var { crossing, negated }, HeadLiteral::Fixed(x)) => {
                // (pos XOR negated) = !x
                let want = !x ^ negated;
                match fixed[crossing] {
                    Some(v) if v != want => {
                        return Err(err(
                            positions[crossing],
                            format!("orientation inconsistency on edge {e}"),
                        ))
                    }
                    _ => fixed[crossing] = Some(want),
                }
            }
            (
                HeadLiteral::Var { crossing: c1, negated: n1 },
                HeadLiteral::Var { crossing: c2, negated: n2 },
            ) => {
                let parity = true ^ n1 ^ n2;
                if c1 == c2 {
                    if parity {
                        return Err(err(at, format!("orientation inconsistency on edge {e}")));
                    }
                } else {
                    links[c1].push((c2, parity));
                    links[c2].push((c1, parity));
                }
            }
        }
    }

    let mut value: Vec<Option<bool>> = vec![None; n];
    let propagate = |start: usize, v: bool, value: &mut Vec<Option<bool>>| -> Result<()> {
        let mut queue = VecDeque::from([(start, v)]);
        while let Some((c, v)) = queue.pop_front() {
            match value[c] {
                Some(old) if old != v => {
                    return Err(err(positions[c], "orientation inconsistency"));
                }
                Some(_) => continue,
                None => value[c] = Some(v),
            }
            if let Some(f) = fixed[c] {
                if f != v {
                    return Err(err(positions[c], "orientation inconsistency"));
                }
            }
            for &(d, parity) in &links[c] {
                queue.push_back((d, v ^ parity));
            }
        }
        Ok(())
    };
    for c in 0..n {
        if let (None, Some(f)) = (value[c], fixed[c]) {
            propagate(c, f, &mut value)?;
        }
    }
    for c in 0..n {
        if value[c].is_none() {
            let [_, j, _, l] = tuples[c];
            // over strand runs l -> j when j follows l (possibly wrapping)
            let positive = j == l + 1 || l > j + 1;
            propagate(c, positive, &mut value)?;
        }
    }
    Ok(value.into_iter().map(|v| v.expect("all assigned")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_error() {
        match parse_pd("X[1,2,3]") {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 0);
                assert!(message.contains("3 entries"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_is_error() {
        assert!(matches!(parse_pd("   "), Err(Error::Parse { .. })));
    }

    #[test]
    fn edge_multiplicity_error() {
        let e = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]").unwrap_err();
        assert!(e.to_string().contains("appears 1 times"), "{e}");
    }

    #[test]
    fn orientation_error_is_reported() {
        // edge 1 enters under at both crossings
        let e = parse_pd("X[1,3,2,4] X[1,4,2,3]").unwrap_err();
        assert!(e.to_string().contains("orientation"), "{e}");
    }

    #[test]
    fn wrapper_and_loops() {
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        let u = parse_pd("Loop[1] Loop[2]").unwrap();
        assert_eq!(u.component_count(), 2);
        assert!(parse_pd("PD[X[1,1,2,2]").is_err());
    }

    #[test]
    fn figure_eight_has_mixed_signs() {
        let d = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        assert_eq!(d.sign_counts(), (2, 2));
    }
}
