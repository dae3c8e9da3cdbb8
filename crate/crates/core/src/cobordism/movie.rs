//! Movies: sequences of elementary moves, their scripts and chain maps.

use std::fmt;
use std::sync::Arc;

use crate::complex::{build_complex, ChainComplex, ChainMap};
use crate::diagram::{parse_pd, EdgeId, LinkDiagram, Sign};
use crate::error::{Error, Result};
use crate::frobenius::Theory;
use crate::knots;
use crate::scalar::Coefficient;

use super::maps::map_between;
use super::moves::{apply_move, ElementaryMove, Mark};

/// A decoration placed in an undecorated movie at frame `frame`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Placement {
    pub frame: usize,
    pub mark: Mark,
    pub edge: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Movie {
    pub start: LinkDiagram,
    pub moves: Vec<ElementaryMove>,
}

/// A parse or validation failure in a movie script, with its line.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

impl Movie {
    pub fn new(start: LinkDiagram, moves: Vec<ElementaryMove>) -> Result<Self> {
        let m = Movie { start, moves };
        m.frames()?;
        Ok(m)
    }

    pub fn identity(start: LinkDiagram) -> Self {
        Movie { start, moves: Vec::new() }
    }

    /// The diagram before the first move and after each move.
    pub fn frames(&self) -> Result<Vec<LinkDiagram>> {
        super::moves::frames(&self.start, &self.moves)
    }

    pub fn end(&self) -> Result<LinkDiagram> {
        Ok(self.frames()?.pop().expect("at least one frame"))
    }

    /// The movie run backwards, each move replaced by its exact inverse.
    pub fn reverse(&self) -> Result<Movie> {
        let mut d = self.start.clone();
        let mut inverses = Vec::new();
        for m in &self.moves {
            let o = apply_move(&d, m)?;
            inverses.push(o.inverse);
            d = o.diagram;
        }
        inverses.reverse();
        Ok(Movie { start: d, moves: inverses })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Movie) -> Result<Movie> {
        if self.end()? != next.start {
            return Err(Error::InvalidMove("movies do not meet".into()));
        }
        let mut moves = self.moves.clone();
        moves.extend(next.moves.iter().cloned());
        Ok(Movie { start: self.start.clone(), moves })
    }

    /// The movie without decorations and where they were.
    pub fn undecorated(&self) -> (Movie, Vec<Placement>) {
        let mut moves = Vec::new();
        let mut ledger = Vec::new();
        for m in &self.moves {
            match m {
                ElementaryMove::Decorate { mark, edge } => {
                    ledger.push(Placement { frame: moves.len(), mark: *mark, edge: *edge })
                }
                _ => moves.push(m.clone()),
            }
        }
        (Movie { start: self.start.clone(), moves }, ledger)
    }

    /// Inserts decorations into an undecorated movie.
    pub fn decorated(&self, ledger: &[Placement]) -> Result<Movie> {
        let mut sorted = ledger.to_vec();
        sorted.sort_by_key(|p| p.frame);
        let mut moves = Vec::new();
        let mut next = sorted.iter().peekable();
        for (i, m) in self.moves.iter().enumerate() {
            while let Some(p) = next.next_if(|p| p.frame == i) {
                moves.push(ElementaryMove::Decorate { mark: p.mark, edge: p.edge });
            }
            moves.push(m.clone());
        }
        for p in next {
            if p.frame != self.moves.len() {
                return Err(Error::InvalidMove(format!("no frame {}", p.frame)));
            }
            moves.push(ElementaryMove::Decorate { mark: p.mark, edge: p.edge });
        }
        Movie::new(self.start.clone(), moves)
    }

    /// Whether the undecorated frames read the same backwards.
    pub fn is_palindromic(&self) -> Result<bool> {
        let frames = self.undecorated().0.frames()?;
        Ok(frames.iter().eq(frames.iter().rev()))
    }

    /// Moves every decoration from frame `τ` to frame `last − τ`.
    pub fn reflected(&self) -> Result<Movie> {
        if !self.is_palindromic()? {
            return Err(Error::Precondition("the undecorated movie is not palindromic".into()));
        }
        let (bare, ledger) = self.undecorated();
        let last = bare.moves.len();
        let moved: Vec<Placement> = ledger.iter().map(|p| Placement { frame: last - p.frame, ..*p }).collect();
        bare.decorated(&moved)
    }

    pub fn saddle_count(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, ElementaryMove::Saddle { .. })).count()
    }

    /// Parses a movie script.
    pub fn parse(script: &str) -> std::result::Result<Movie, ScriptError> {
        let mut start: Option<LinkDiagram> = None;
        let mut frame = LinkDiagram::empty();
        let mut moves = Vec::new();
        for (n, raw) in script.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| ScriptError { line, message };
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let (word, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
            let rest = rest.trim();
            if word == "start" {
                if start.is_some() || !moves.is_empty() {
                    return Err(err("start must come first and only once".into()));
                }
                let d = parse_start(rest).map_err(|e| err(e.to_string()))?;
                frame = d.clone();
                start = Some(d);
                continue;
            }
            if start.is_none() {
                start = Some(LinkDiagram::empty());
            }
            let m = parse_move(word, rest).map_err(err)?;
            let outcome = apply_move(&frame, &m).map_err(|e| err(e.to_string()))?;
            frame = outcome.diagram;
            moves.push(m);
        }
        Ok(Movie { start: start.unwrap_or_else(LinkDiagram::empty), moves })
    }

    /// A script that parses back to this movie.
    pub fn to_script(&self) -> String {
        let mut out = format!("start {}\n", start_text(&self.start));
        for m in &self.moves {
            out.push_str(&m.to_string());
            out.push('\n');
        }
        out
    }
}

fn start_text(d: &LinkDiagram) -> String {
    if d.crossing_count() == 0 && d.loops().is_empty() {
        "empty".into()
    } else if *d == LinkDiagram::unknot() {
        "unknot".into()
    } else {
        d.to_pd_string()
    }
}

fn parse_start(rest: &str) -> Result<LinkDiagram> {
    match rest {
        "" | "empty" => Ok(LinkDiagram::empty()),
        _ if rest.contains('[') => parse_pd(rest),
        name => knots::diagram_by_name(name),
    }
}

fn parse_move(word: &str, rest: &str) -> std::result::Result<ElementaryMove, String> {
    let args: Vec<&str> = rest.split_whitespace().collect();
    let num = |i: usize| -> std::result::Result<u32, String> {
        let a = args.get(i).ok_or_else(|| format!("{word}: missing argument {}", i + 1))?;
        a.parse().map_err(|_| format!("{word}: expected a number, found {a:?}"))
    };
    let arity = |lo: usize, hi: usize| -> std::result::Result<(), String> {
        if args.len() < lo || args.len() > hi {
            Err(format!("{word}: expected {lo}..={hi} arguments, found {}", args.len()))
        } else {
            Ok(())
        }
    };
    use ElementaryMove::*;
    let mark = match word {
        "dot" => Some(Mark::Dot),
        "digit1" => Some(Mark::Digit1),
        "digit2" => Some(Mark::Digit2),
        "star" => Some(Mark::Star),
        _ => None,
    };
    if let Some(mark) = mark {
        arity(1, 1)?;
        return Ok(Decorate { mark, edge: num(0)? });
    }
    Ok(match word {
        "birth" => {
            arity(0, 0)?;
            Birth { label: None }
        }
        "death" => {
            arity(1, 1)?;
            Death { circle: num(0)? }
        }
        "saddle" => {
            arity(2, 2)?;
            Saddle { a: num(0)?, b: num(1)?, new_loop: None }
        }
        "r1+" => {
            arity(1, 3)?;
            let mut sign = Sign::Positive;
            let mut over_first = false;
            for a in &args[1..] {
                match *a {
                    "+" => sign = Sign::Positive,
                    "-" => sign = Sign::Negative,
                    "under" => over_first = false,
                    "over" => over_first = true,
                    other => return Err(format!("r1+: unknown option {other:?}")),
                }
            }
            R1Plus { edge: num(0)?, sign, over_first, fresh: None, position: None }
        }
        "r1-" => {
            arity(1, 1)?;
            R1Minus { crossing: num(0)? as usize }
        }
        "r2+" => {
            arity(2, 3)?;
            let face = if args.len() == 3 { num(2)? as usize } else { 0 };
            R2Plus { over: num(0)?, under: num(1)?, face, directions: None, fresh: None, positions: None }
        }
        "r2-" => {
            arity(2, 2)?;
            R2Minus { crossings: [num(0)? as usize, num(1)? as usize] }
        }
        "r3" => {
            arity(3, 3)?;
            R3 { crossings: [num(0)? as usize, num(1)? as usize, num(2)? as usize] }
        }
        other => return Err(format!("unknown move {other:?}")),
    })
}

impl fmt::Display for Movie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_script())
    }
}

/// Chain map of a whole movie, composed left to right.
pub fn evaluate_movie<C: Coefficient>(movie: &Movie, theory: &Theory<C>) -> Result<ChainMap<C>> {
    let mut current: Arc<ChainComplex<C>> = Arc::new(build_complex(&movie.start, theory)?);
    let mut total = ChainMap::identity(current.clone());
    let mut frame = movie.start.clone();
    for m in &movie.moves {
        let outcome = apply_move(&frame, m)?;
        let next = if m.is_decoration() {
            current.clone()
        } else {
            Arc::new(build_complex(&outcome.diagram, theory)?)
        };
        let f = map_between(current, next.clone(), m, &outcome)?;
        total = f.compose(&total)?;
        current = next;
        frame = outcome.diagram;
    }
    Ok(total)
}

/// Movies shipped with the library, by name.
pub fn bundled_movies() -> Vec<(&'static str, &'static str)> {
    vec![
        ("trivial-ribbon", include_str!("../../data/movies/trivial_ribbon.movie")),
        ("unknot-ribbon", include_str!("../../data/movies/unknot_ribbon.movie")),
        ("stevedore-ribbon", include_str!("../../data/movies/stevedore_ribbon.movie")),
    ]
}

pub fn bundled_movie(name: &str) -> Result<Movie> {
    let (_, text) = bundled_movies()
        .into_iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Precondition(format!("no bundled movie {name:?}")))?;
    Movie::parse(text).map_err(|e| Error::Precondition(format!("bundled movie {name}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{induced_map, Homology};
    use crate::F2;

    #[test]
    fn parses_and_prints() {
        let m = Movie::parse("start unknot\n# a comment\nsaddle 1 1\ndot 2\nsaddle 1 2\n").unwrap();
        assert_eq!(m.moves.len(), 3);
        assert_eq!(m.frames().unwrap().len(), 4);
        assert_eq!(Movie::parse(&m.to_script()).unwrap(), m);
    }

    #[test]
    fn script_errors_carry_lines() {
        let e = Movie::parse("start unknot\nbirth\nsaddle 1 9\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = Movie::parse("start unknot\nwiggle 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(Movie::parse("start X[1,2\n").is_err());
    }

    #[test]
    fn empty_movie_is_identity() {
        let t = Theory::<F2>::bar_natan();
        let m = Movie::parse("start 3_1\n").unwrap();
        let f = evaluate_movie(&m, &t).unwrap();
        let h = Homology::compute(f.source.clone()).unwrap();
        assert_eq!(induced_map(&f, &h, &h).unwrap(), h.identity_map());
    }

    #[test]
    fn reverse_and_reflect() {
        let m = Movie::parse("start unknot\ndot 1\nsaddle 1 1\nsaddle 1 2\n").unwrap();
        let r = m.reverse().unwrap();
        assert_eq!(r.end().unwrap(), m.start);
        assert!(m.is_palindromic().unwrap());
        let (_, ledger) = m.reflected().unwrap().undecorated();
        assert_eq!(ledger, vec![Placement { frame: 2, mark: Mark::Dot, edge: 1 }]);
        let bad = Movie::parse("start unknot\nsaddle 1 1\n").unwrap();
        assert!(bad.reflected().is_err());
    }

    #[test]
    fn bundled_movies_parse() {
        for (name, _) in bundled_movies() {
            let m = bundled_movie(name).unwrap();
            assert!(m.end().unwrap().is_knot(), "{name}");
        }
    }
}
