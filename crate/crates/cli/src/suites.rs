//! Verification suites run by `ribbon verify`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use ribbon_core::cobordism::verify::{
    dot_crossing_at, split_saddles, verify_movie_star, verify_ribbon_composite, verify_saddle_split, verify_symmetry,
    Context, Verdict,
};
use ribbon_core::cobordism::{bundled_movies, ElementaryMove, Mark, Movie, Placement};
use ribbon_core::diagram::Sign;
use ribbon_core::frobenius::parse_selector;
use ribbon_core::{knots, with_theory, Coefficient, Error, LinkDiagram, Result, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Frobenius,
    Neckcut,
    DotCrossing,
    SaddleSplit,
    Symmetry,
    Ribbon,
    MovieStar,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Frobenius,
        Suite::Neckcut,
        Suite::DotCrossing,
        Suite::SaddleSplit,
        Suite::Symmetry,
        Suite::Ribbon,
        Suite::MovieStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Frobenius => "frobenius",
            Suite::Neckcut => "neckcut",
            Suite::DotCrossing => "dot-crossing",
            Suite::SaddleSplit => "saddle-split",
            Suite::Symmetry => "symmetry",
            Suite::Ribbon => "ribbon",
            Suite::MovieStar => "movie-star",
        }
    }

    /// Theories used when none is given.
    pub fn default_theories(self) -> &'static [&'static str] {
        match self {
            Suite::Frobenius | Suite::Neckcut => &["bn", "alpha", "kh-f2", "alpha@0,t/f2", "alpha@1,-1/q"],
            Suite::DotCrossing => &["bn", "alpha@0,t/f2"],
            Suite::SaddleSplit | Suite::Symmetry | Suite::Ribbon => &["bn", "alpha@0,t/f2", "alpha@1,-1/q"],
            Suite::MovieStar => &["alpha@0,t/f2", "alpha@1,-1/q"],
        }
    }

    pub fn default_max_crossings(self) -> usize {
        match self {
            Suite::DotCrossing => 7,
            Suite::SaddleSplit => 4,
            _ => 8,
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One checked instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub theory: String,
    pub instance: String,
    pub verdict: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.theory,
            self.instance,
            self.verdict
        )
    }
}

/// Inputs of a suite run.
pub struct SuiteConfig {
    pub theories: Vec<String>,
    pub knots: Vec<(String, LinkDiagram)>,
}

impl SuiteConfig {
    /// Defaults for `suite`, with optional theory and crossing bound.
    pub fn new(suite: Suite, theory: Option<&str>, max_crossings: Option<usize>) -> Self {
        let theories = match theory {
            Some(t) => vec![t.to_string()],
            None => suite.default_theories().iter().map(|s| s.to_string()).collect(),
        };
        let max = max_crossings.unwrap_or(suite.default_max_crossings());
        let knots = knots::up_to(max).into_iter().map(|k| (k.name.to_string(), k.diagram().expect("bundled"))).collect();
        SuiteConfig { theories, knots }
    }

    pub fn with_knots(mut self, knots: Vec<(String, LinkDiagram)>) -> Self {
        self.knots = knots;
        self
    }
}

/// Runs a suite; errors are input problems (a theory that cannot run it).
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for sel in &config.theories {
        let theory = parse_selector(sel)?;
        let checks = with_theory!(&theory, t => run_for(suite, t, sel, config))?;
        out.extend(checks);
    }
    Ok(out)
}

fn check(suite: Suite, theory: &str, instance: String, verdict: Verdict, slack: bool) -> Check {
    Check { suite, theory: theory.to_string(), instance, verdict: verdict.to_string(), passed: verdict.passed(slack) }
}

fn run_for<C: Coefficient>(suite: Suite, t: &Theory<C>, sel: &str, config: &SuiteConfig) -> Result<Vec<Check>> {
    // theories with digits are only claimed up to an overall sign
    let slack = t.roots().is_some();
    match suite {
        Suite::Frobenius => {
            let r = t.check_axioms();
            Ok(vec![Check {
                suite,
                theory: sel.into(),
                instance: "associativity, unit, counit, Frobenius relation".into(),
                verdict: r.clone().err().unwrap_or_else(|| "holds".into()),
                passed: r.is_ok(),
            }])
        }
        Suite::Neckcut => {
            let report = t.check_neck_cutting();
            let mut out: Vec<Check> = report
                .results
                .iter()
                .map(|(name, r)| Check {
                    suite,
                    theory: sel.into(),
                    instance: format!("neck cutting, {name}"),
                    verdict: match r {
                        Ok(()) => "holds".into(),
                        Err(e) => format!("fails on {}", e.display(t.base())),
                    },
                    passed: r.is_ok(),
                })
                .collect();
            out.push(Check {
                suite,
                theory: sel.into(),
                instance: "all decompositions agree".into(),
                verdict: if report.orderings_agree { "holds" } else { "fails" }.into(),
                passed: report.orderings_agree,
            });
            Ok(out)
        }
        Suite::DotCrossing => {
            let per_knot: Vec<Result<Vec<Check>>> = config
                .knots
                .par_iter()
                .map(|(name, d)| {
                    let ctx = Context::new(d, t)?;
                    (0..d.crossing_count())
                        .map(|c| {
                            let r = dot_crossing_at(&ctx, c)?;
                            let what = if slack { "digit1_p + digit2_q = 0" } else { "X_p + X_q = a" };
                            Ok(check(
                                suite,
                                sel,
                                format!("{name} crossing {c} (p={}, q={}) {what}", r.p, r.q),
                                r.verdict,
                                false,
                            ))
                        })
                        .collect()
                })
                .collect();
            flatten(per_knot)
        }
        Suite::SaddleSplit => {
            let mut knots = vec![("unknot".to_string(), LinkDiagram::unknot())];
            knots.extend(config.knots.iter().cloned());
            let per_knot: Vec<Result<Vec<Check>>> = knots
                .par_iter()
                .map(|(name, d)| {
                    split_saddles(d)
                        .into_iter()
                        .map(|s| {
                            let v = verify_saddle_split(d, &s, t)?;
                            Ok(check(suite, sel, format!("{name} {s} then reverse"), v, slack))
                        })
                        .collect()
                })
                .collect();
            flatten(per_knot)
        }
        Suite::Symmetry => {
            let mark = |first: bool| match (slack, first) {
                (false, _) => Mark::Dot,
                (true, true) => Mark::Digit1,
                (true, false) => Mark::Digit2,
            };
            let mut out = Vec::new();
            for (name, movie) in palindromic_movies()? {
                for (i, p) in placements(&movie, mark(true))?.into_iter().enumerate() {
                    let p = Placement { mark: if i % 2 == 0 { mark(true) } else { mark(false) }, ..p };
                    let dotted = movie.decorated(&[p])?;
                    let v = verify_symmetry(&dotted, t)?;
                    let instance = format!("{name}: {} at frame {} edge {}", p.mark.keyword(), p.frame, p.edge);
                    out.push(check(suite, sel, instance, v, false));
                }
            }
            Ok(out)
        }
        Suite::Ribbon => {
            let mut out = Vec::new();
            for (name, _) in bundled_movies() {
                let movie = ribbon_core::cobordism::bundled_movie(name)?;
                let r = verify_ribbon_composite(&movie, t)?;
                out.push(check(suite, sel, format!("{name}: reverse after movie = id"), r.injective, slack));
                out.push(check(
                    suite,
                    sel,
                    format!("{name}: s^{d} (movie after reverse) = s^{d}", d = r.saddles),
                    r.scaled,
                    slack,
                ));
                let bound = r.bound_holds();
                out.push(Check {
                    suite,
                    theory: sel.into(),
                    instance: format!(
                        "{name}: |{} - {}| <= {} saddle(s)",
                        r.end_order, r.start_order, r.saddles
                    ),
                    verdict: if bound { "holds" } else { "fails" }.into(),
                    passed: bound,
                });
            }
            Ok(out)
        }
        Suite::MovieStar => {
            if !slack {
                return Err(Error::TheoryMismatch(format!("{sel} has no star; pick a specialization of alpha")));
            }
            let mut out = Vec::new();
            for (name, movie) in palindromic_movies()? {
                let spots = placements(&movie, Mark::Star)?;
                for other in &spots[1..] {
                    let v = verify_movie_star(&movie, spots[0], *other, t)?;
                    let instance = format!(
                        "{name}: star at ({}, {}) vs ({}, {})",
                        spots[0].frame, spots[0].edge, other.frame, other.edge
                    );
                    out.push(check(suite, sel, instance, v, true));
                }
            }
            Ok(out)
        }
    }
}

fn flatten(parts: Vec<Result<Vec<Check>>>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// A movie followed by its reverse.
pub fn palindrome(start: LinkDiagram, moves: Vec<ElementaryMove>) -> Result<Movie> {
    let m = Movie::new(start, moves)?;
    m.then(&m.reverse()?)
}

/// Connected palindromic movies used by the symmetry and star suites.
pub fn palindromic_movies() -> Result<Vec<(String, Movie)>> {
    let trefoil = knots::diagram_by_name("3_1")?;
    let eight = knots::diagram_by_name("4_1")?;
    let split = |d: &LinkDiagram| -> Result<ElementaryMove> {
        split_saddles(d).into_iter().find(|m| matches!(m, ElementaryMove::Saddle { a, b, .. } if a != b))
            .ok_or_else(|| Error::Precondition("no split saddle".into()))
    };
    Ok(vec![
        ("unknot split-merge".into(), palindrome(LinkDiagram::unknot(), vec![ElementaryMove::saddle(1, 1)])?),
        ("3_1 split-merge".into(), palindrome(trefoil.clone(), vec![split(&trefoil)?])?),
        (
            "3_1 kink, split, merge, unkink".into(),
            palindrome(trefoil.clone(), vec![ElementaryMove::r1_plus(2, Sign::Negative), split(&trefoil)?])?,
        ),
        ("4_1 split-merge".into(), palindrome(eight.clone(), vec![split(&eight)?])?),
    ])
}

/// Single decorations on the first half of a palindromic movie: two edges
/// of the first frame and one of the middle frame.
fn placements(movie: &Movie, mark: Mark) -> Result<Vec<Placement>> {
    let frames = movie.frames()?;
    let mid = (frames.len() - 1) / 2;
    let mut out = Vec::new();
    let first = frames[0].edges();
    for &edge in first.iter().take(2) {
        out.push(Placement { frame: 0, mark, edge });
    }
    if let Some(&edge) = frames[mid].edges().last() {
        out.push(Placement { frame: mid, mark, edge });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn movies_are_palindromic_and_connected() {
        for (name, m) in palindromic_movies().unwrap() {
            assert!(m.is_palindromic().unwrap(), "{name}");
        }
    }

    #[test]
    fn frobenius_suite_passes() {
        let c = SuiteConfig::new(Suite::Frobenius, None, None);
        assert!(run_suite(Suite::Frobenius, &c).unwrap().iter().all(|c| c.passed));
    }
}
