//! Checks of cobordism identities on homology, one finite instance at a time.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{build_complex, ChainComplex, ChainMap};
use crate::diagram::{EdgeId, LinkDiagram};
use crate::error::{Error, Result};
use crate::frobenius::Theory;
use crate::homology::{induced_map, Homology};
use crate::poly::Poly;
use crate::scalar::Coefficient;

use super::maps::map_between;
use super::moves::{apply_move, ElementaryMove, Mark};
use super::movie::{evaluate_movie, Movie, Placement};

/// Outcome of comparing two maps on homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    /// Equal after negating one side.
    HoldsUpToSign,
    Fails,
}

impl Verdict {
    /// Whether the check passed, with or without sign slack.
    pub fn passed(self, sign_slack: bool) -> bool {
        match self {
            Verdict::Holds => true,
            Verdict::HoldsUpToSign => sign_slack,
            Verdict::Fails => false,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::HoldsUpToSign => "holds up to sign",
            Verdict::Fails => "fails",
        })
    }
}

/// Homology of a complex, computed once and shared between comparisons.
pub struct Context<C: Coefficient> {
    pub complex: Arc<ChainComplex<C>>,
    pub homology: Homology<C>,
}

impl<C: Coefficient> Context<C> {
    pub fn new(d: &LinkDiagram, theory: &Theory<C>) -> Result<Self> {
        let complex = Arc::new(build_complex(d, theory)?);
        let homology = Homology::compute(complex.clone())?;
        Ok(Context { complex, homology })
    }

    fn from_complex(complex: Arc<ChainComplex<C>>) -> Result<Self> {
        let homology = Homology::compute(complex.clone())?;
        Ok(Context { complex, homology })
    }

    pub fn diagram(&self) -> &LinkDiagram {
        self.complex.diagram().expect("built from a diagram")
    }

    /// The endomorphism of a decoration at `edge`.
    pub fn decoration(&self, mark: Mark, edge: EdgeId) -> Result<ChainMap<C>> {
        let m = ElementaryMove::Decorate { mark, edge };
        let o = apply_move(self.diagram(), &m)?;
        map_between(self.complex.clone(), self.complex.clone(), &m, &o)
    }

    pub fn scalar(&self, s: &Poly<C>) -> ChainMap<C> {
        ChainMap::identity(self.complex.clone()).scale(s)
    }
}

/// Compares two maps between the complexes of `source` and `target`.
pub fn compare<C: Coefficient>(
    f: &ChainMap<C>,
    g: &ChainMap<C>,
    source: &Homology<C>,
    target: &Homology<C>,
) -> Result<Verdict> {
    let (a, b) = (induced_map(f, source, target)?, induced_map(g, source, target)?);
    Ok(if a == b {
        Verdict::Holds
    } else if a == b.neg() {
        Verdict::HoldsUpToSign
    } else {
        Verdict::Fails
    })
}

fn compare_endo<C: Coefficient>(f: &ChainMap<C>, g: &ChainMap<C>, ctx: &Context<C>) -> Result<Verdict> {
    compare(f, g, &ctx.homology, &ctx.homology)
}

/// What a dot-crossing check compares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DotCrossing {
    pub crossing: usize,
    pub p: EdgeId,
    pub q: EdgeId,
    pub verdict: Verdict,
}

/// At crossing `c` with under-strand edges `p`, `q`: without digits,
/// `X_p + X_q` against multiplication by the sum of the roots of
/// `X² − aX − b` (that is `h` for Bar-Natan); with digits, `①_p + ②_q`
/// against zero.
pub fn dot_crossing_at<C: Coefficient>(ctx: &Context<C>, c: usize) -> Result<DotCrossing> {
    let (p, q) = ctx.diagram().crossing_sides(c)?;
    let theory = ctx.complex.theory();
    let (lhs, rhs) = if theory.roots().is_some() {
        let lhs = ctx.decoration(Mark::Digit1, p)?.add(&ctx.decoration(Mark::Digit2, q)?)?;
        (lhs, ChainMap::zero(ctx.complex.clone(), ctx.complex.clone(), 0, 0))
    } else {
        let lhs = ctx.decoration(Mark::Dot, p)?.add(&ctx.decoration(Mark::Dot, q)?)?;
        (lhs, ctx.scalar(theory.quadratic().0))
    };
    Ok(DotCrossing { crossing: c, p, q, verdict: compare_endo(&lhs, &rhs, ctx)? })
}

/// The dot-crossing identity at every crossing of `d`.
pub fn verify_dot_crossing<C: Coefficient>(d: &LinkDiagram, theory: &Theory<C>) -> Result<Vec<DotCrossing>> {
    let ctx = Context::new(d, theory)?;
    (0..d.crossing_count()).map(|c| dot_crossing_at(&ctx, c)).collect()
}

/// The negative control: `X_p + X_q` against zero.
pub fn dot_crossing_against_zero<C: Coefficient>(ctx: &Context<C>, c: usize) -> Result<Verdict> {
    let (p, q) = ctx.diagram().crossing_sides(c)?;
    let lhs = ctx.decoration(Mark::Dot, p)?.add(&ctx.decoration(Mark::Dot, q)?)?;
    compare_endo(&lhs, &ChainMap::zero(ctx.complex.clone(), ctx.complex.clone(), 0, 0), ctx)
}

/// A split saddle followed by its reverse, against multiplication by `a`
/// (Bar-Natan) or by the star `X_*` (theories with digits).
pub fn verify_saddle_split<C: Coefficient>(
    d: &LinkDiagram,
    saddle: &ElementaryMove,
    theory: &Theory<C>,
) -> Result<Verdict> {
    let ElementaryMove::Saddle { a, .. } = saddle else {
        return Err(Error::Precondition(format!("{saddle} is not a saddle")));
    };
    let o = apply_move(d, saddle)?;
    if o.diagram.component_count() <= d.component_count() {
        return Err(Error::Precondition(format!("{saddle} does not increase the number of components")));
    }
    let ctx = Context::new(d, theory)?;
    let split = Arc::new(build_complex(&o.diagram, theory)?);
    let f = map_between(ctx.complex.clone(), split.clone(), saddle, &o)?;
    let back = apply_move(&o.diagram, &o.inverse)?;
    let g = map_between(split, ctx.complex.clone(), &o.inverse, &back)?;
    let expected = if theory.roots().is_some() { ctx.decoration(Mark::Star, *a)? } else { ctx.scalar(theory.quadratic().0) };
    compare_endo(&g.compose(&f)?, &expected, &ctx)
}

/// Every split saddle of `d` between edges `a ≤ b`.
pub fn split_saddles(d: &LinkDiagram) -> Vec<ElementaryMove> {
    let mut out = Vec::new();
    for a in d.edges() {
        for b in d.edges().into_iter().filter(|&b| b >= a) {
            let m = ElementaryMove::saddle(a, b);
            if (a == b || d.saddle_compatible(a, b))
                && apply_move(d, &m).is_ok_and(|o| o.diagram.component_count() > d.component_count())
            {
                out.push(m);
            }
        }
    }
    out
}

/// Compares a decorated movie with the one whose decorations are moved from
/// frame `τ` to frame `last − τ`.
pub fn verify_symmetry<C: Coefficient>(movie: &Movie, theory: &Theory<C>) -> Result<Verdict> {
    let reflected = movie.reflected()?;
    let f = evaluate_movie(movie, theory)?;
    let g = evaluate_movie(&reflected, theory)?;
    let hs = Homology::compute(f.source.clone())?;
    let ht = Homology::compute(f.target.clone())?;
    compare(&f, &g, &hs, &ht)
}

/// Two placements of a star on a movie without other decorations.
pub fn verify_movie_star<C: Coefficient>(
    movie: &Movie,
    first: Placement,
    second: Placement,
    theory: &Theory<C>,
) -> Result<Verdict> {
    let (bare, ledger) = movie.undecorated();
    if !ledger.is_empty() {
        return Err(Error::Precondition("movie already carries decorations".into()));
    }
    if first.mark != Mark::Star || second.mark != Mark::Star {
        return Err(Error::Precondition("placements must be stars".into()));
    }
    let f = evaluate_movie(&bare.decorated(&[first])?, theory)?;
    let g = evaluate_movie(&bare.decorated(&[second])?, theory)?;
    let hs = Homology::compute(f.source.clone())?;
    let ht = Homology::compute(f.target.clone())?;
    compare(&f, &g, &hs, &ht)
}

/// Results of the ribbon checks for a movie `R: K' → K` with `d` saddles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonReport {
    pub saddles: u32,
    /// `R' ∘ R` against the identity of `K'`.
    pub injective: Verdict,
    /// `s^d · (R ∘ R')` against `s^d` on `K`, with `s` the variable
    /// (Bar-Natan) or the star.
    pub scaled: Verdict,
    /// Torsion orders of the two ends.
    pub start_order: u32,
    pub end_order: u32,
}

impl RibbonReport {
    pub fn bound_holds(&self) -> bool {
        self.start_order.abs_diff(self.end_order) <= self.saddles
    }

    pub fn passed(&self, sign_slack: bool) -> bool {
        self.injective.passed(sign_slack) && self.scaled.passed(sign_slack) && self.bound_holds()
    }
}

/// Checks that a movie has the shape of a ribbon concordance: births, then
/// Reidemeister moves and saddles that each join two components, between
/// knots.
pub fn check_ribbon_structure(movie: &Movie) -> Result<()> {
    let frames = movie.frames()?;
    if !frames[0].is_knot() || !frames.last().expect("frames").is_knot() {
        return Err(Error::Precondition("a ribbon movie runs between knots".into()));
    }
    let mut saddle_seen = false;
    for (i, m) in movie.moves.iter().enumerate() {
        match m {
            ElementaryMove::Birth { .. } if saddle_seen => {
                return Err(Error::Precondition(format!("move {}: birth after a saddle", i + 1)))
            }
            ElementaryMove::Birth { .. } => {}
            ElementaryMove::Saddle { .. } => {
                saddle_seen = true;
                if frames[i + 1].component_count() >= frames[i].component_count() {
                    return Err(Error::Precondition(format!("move {}: saddle does not merge", i + 1)));
                }
            }
            m if m.is_reidemeister() => {}
            other => return Err(Error::Precondition(format!("move {}: {other} not allowed", i + 1))),
        }
    }
    Ok(())
}

/// The scaling endomorphism `s`: the variable `a` of Bar-Natan type
/// theories, the star for theories with digits.
fn scaling<C: Coefficient>(ctx: &Context<C>) -> Result<ChainMap<C>> {
    let theory = ctx.complex.theory();
    if theory.roots().is_some() {
        let edge = ctx.diagram().edges().first().copied().ok_or_else(|| Error::Precondition("empty diagram".into()))?;
        ctx.decoration(Mark::Star, edge)
    } else {
        Ok(ctx.scalar(theory.quadratic().0))
    }
}

pub fn verify_ribbon_composite<C: Coefficient>(movie: &Movie, theory: &Theory<C>) -> Result<RibbonReport> {
    check_ribbon_structure(movie)?;
    let d = movie.saddle_count() as u32;
    let r = evaluate_movie(movie, theory)?;
    let rr = evaluate_movie(&movie.reverse()?, theory)?;
    let start = Context::from_complex(r.source.clone())?;
    let end = Context::from_complex(r.target.clone())?;

    let injective = compare_endo(&rr.compose(&r)?, &ChainMap::identity(start.complex.clone()), &start)?;

    let s = scaling(&end)?;
    let mut lhs = r.compose(&rr)?;
    let mut rhs = ChainMap::identity(end.complex.clone());
    for _ in 0..d {
        lhs = s.compose(&lhs)?;
        rhs = s.compose(&rhs)?;
    }
    let scaled = compare_endo(&lhs, &rhs, &end)?;
    let order = |c: &Context<C>| c.homology.summary("").torsion_order();
    Ok(RibbonReport { saddles: d, injective, scaled, start_order: order(&start), end_order: order(&end) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::{F2, Q, Z};

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    fn lee() -> Theory<Q> {
        Theory::<Z>::alpha().specialize([Poly::from_i64(1), Poly::from_i64(-1)]).unwrap()
    }

    fn frac() -> Theory<F2> {
        Theory::<Z>::alpha().specialize([Poly::zero(), Poly::var(0)]).unwrap()
    }

    #[test]
    fn dot_crossing_on_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        let bn = Theory::<F2>::bar_natan();
        for r in verify_dot_crossing(&d, &bn).unwrap() {
            assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
        }
        let ctx = Context::new(&d, &bn).unwrap();
        assert_eq!(dot_crossing_against_zero(&ctx, 0).unwrap(), Verdict::Fails);
        for r in verify_dot_crossing(&d, &frac()).unwrap() {
            assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
        }
        for r in verify_dot_crossing(&d, &lee()).unwrap() {
            assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
        }
    }

    #[test]
    fn saddle_split_on_unknot_and_trefoil() {
        let u = LinkDiagram::unknot();
        let m = ElementaryMove::saddle(1, 1);
        assert_eq!(verify_saddle_split(&u, &m, &Theory::<F2>::bar_natan()).unwrap(), Verdict::Holds);
        assert!(verify_saddle_split(&u, &m, &lee()).unwrap().passed(true));
        let t = parse_pd(TREFOIL).unwrap();
        let splits = split_saddles(&t);
        assert!(!splits.is_empty());
        for s in &splits {
            assert_eq!(verify_saddle_split(&t, s, &Theory::<F2>::bar_natan()).unwrap(), Verdict::Holds, "{s}");
            assert!(verify_saddle_split(&t, s, &frac()).unwrap().passed(true), "{s}");
            assert!(verify_saddle_split(&t, s, &lee()).unwrap().passed(true), "{s}");
        }
        let two = LinkDiagram::unlink(2);
        assert!(verify_saddle_split(&two, &ElementaryMove::saddle(1, 2), &lee()).is_err());
    }

    #[test]
    fn symmetry_of_split_then_merge() {
        let m = Movie::parse("start unknot\ndot 1\nsaddle 1 1\nsaddle 1 2\n").unwrap();
        assert_eq!(verify_symmetry(&m, &Theory::<F2>::bar_natan()).unwrap(), Verdict::Holds);
        let m = Movie::parse("start unknot\nsaddle 1 1\ndigit1 2\nsaddle 1 2\n").unwrap();
        assert!(verify_symmetry(&m, &lee()).unwrap().passed(true));
        let m = Movie::parse("start unknot\ndigit1 1\nsaddle 1 1\nsaddle 1 2\n").unwrap();
        assert!(verify_symmetry(&m, &lee()).unwrap().passed(true));
        let bad = Movie::parse("start unknot\ndot 1\nsaddle 1 1\n").unwrap();
        assert!(verify_symmetry(&bad, &Theory::<F2>::bar_natan()).is_err());
    }

    #[test]
    fn ribbon_unknot_movie() {
        let m = super::super::movie::bundled_movie("unknot-ribbon").unwrap();
        let r = verify_ribbon_composite(&m, &Theory::<F2>::bar_natan()).unwrap();
        assert_eq!(r.injective, Verdict::Holds);
        assert_eq!(r.scaled, Verdict::Holds);
        assert!(r.bound_holds());
    }

    #[test]
    fn ribbon_structure_is_enforced() {
        let m = Movie::parse("start unknot\nsaddle 1 1\nsaddle 1 2\n").unwrap();
        assert!(check_ribbon_structure(&m).is_err());
    }
}
