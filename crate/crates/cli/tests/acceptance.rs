//! One line per acceptance criterion; exits nonzero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use ribbon_cli::suites::{run_suite, Suite, SuiteConfig};
use ribbon_core::cobordism::{apply_move, bundled_movie, ElementaryMove};
use ribbon_core::complex::build_complex;
use ribbon_core::diagram::Sign;
use ribbon_core::frobenius::parse_selector;
use ribbon_core::report::{BoundReport, Entry};
use ribbon_core::{knots, with_theory, BarNatan, Homology, HomologySummary, LinkDiagram, Theory, F2};
use ribbon_oracles::{dense_summary, jones, jones_from_euler};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn table(max: usize) -> Vec<(String, LinkDiagram)> {
    knots::up_to(max).into_iter().map(|k| (k.name.to_string(), k.diagram().unwrap())).collect()
}

fn summary<C: ribbon_core::Coefficient>(d: &LinkDiagram, t: &Theory<C>, name: &str) -> Result<HomologySummary, String> {
    let c = Arc::new(build_complex(d, t).map_err(|e| format!("{name}: {e}"))?);
    Ok(Homology::compute(c).map_err(|e| format!("{name}: {e}"))?.summary(name))
}

fn d_squared() -> Outcome {
    let start = Instant::now();
    let theories = ["bn", "alpha", "alpha@0,t/f2", "alpha@1,-1/q"];
    let jobs: Vec<(&str, (String, LinkDiagram))> =
        theories.iter().flat_map(|t| table(8).into_iter().map(move |k| (*t, k))).collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(sel, (name, d))| {
            let t = parse_selector(sel).unwrap();
            let ok = with_theory!(&t, t => build_complex(d, t).and_then(|c| c.check_d_squared().and(c.check_homogeneous())));
            ok.err().map(|e| format!("{sel} {name}: {e}"))
        })
        .collect();
    let elapsed = start.elapsed();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("{} complexes over 4 theories in {elapsed:.1?}", jobs.len()))
}

fn jones_oracle() -> Outcome {
    let kh = Theory::<F2>::khovanov();
    let knots = table(8);
    for (name, d) in &knots {
        let chi = build_complex(d, &kh).and_then(|c| c.graded_euler_characteristic()).map_err(|e| e.to_string())?;
        if jones_from_euler(&chi).as_ref() != Some(&jones(d)) {
            return Err(format!("{name}: Euler characteristic {chi} disagrees with the bracket"));
        }
    }
    Ok(format!("{} knots", knots.len()))
}

fn dense_equivalence() -> Outcome {
    let theories = ["bn", "kh-f2", "alpha@0,t/f2", "alpha@1,-1/q"];
    let mut n = 0;
    for sel in theories {
        let t = parse_selector(sel).unwrap();
        for (name, d) in table(6) {
            let agree = with_theory!(&t, t => {
                let c = Arc::new(build_complex(&d, t).map_err(|e| e.to_string())?);
                let mut fast = Homology::compute(c.clone()).map_err(|e| e.to_string())?.summary(&name);
                fast.note = None;
                fast == dense_summary(&c, &name)
            });
            if !agree {
                return Err(format!("{sel} {name}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} knot/theory pairs"))
}

fn trefoil_diagrams() -> Vec<(String, LinkDiagram)> {
    let t = knots::diagram_by_name("3_1").unwrap();
    let e = t.edges();
    let step = |d: &LinkDiagram, m: ElementaryMove| apply_move(d, &m).unwrap().diagram;
    let kinked = step(&t, ElementaryMove::r1_plus(e[0], Sign::Negative));
    let bigon = step(&t, ElementaryMove::r2_plus(e[1], e[4]));
    let both = step(&bigon, ElementaryMove::r1_plus(bigon.edges()[2], Sign::Positive));
    vec![
        ("table".into(), t),
        (format!("r1+ {} -", e[0]), kinked),
        (format!("r2+ {} {}", e[1], e[4]), bigon),
        ("r2+ then r1+".into(), both),
    ]
}

fn trefoil_mu() -> Outcome {
    let bn = BarNatan::bar_natan();
    let unknot = summary(&LinkDiagram::unknot(), &bn, "unknot")?.mu;
    if unknot != Some(0) {
        return Err(format!("mu(unknot) = {unknot:?}"));
    }
    let diagrams = trefoil_diagrams();
    let mut values = Vec::new();
    for (name, d) in &diagrams {
        let fast = summary(d, &bn, name)?.mu;
        let dense = dense_summary(&build_complex(d, &bn).unwrap(), name).mu;
        if fast != Some(1) || dense != Some(1) {
            return Err(format!("3_1 ({name}): pipeline {fast:?}, dense {dense:?}"));
        }
        values.push(d.crossing_count().to_string());
    }
    Ok(format!("mu(unknot) = 0, mu(3_1) = 1 on {} diagrams with {} crossings", diagrams.len(), values.join("/")))
}

fn suite_checks(suite: Suite) -> Result<Vec<ribbon_cli::suites::Check>, String> {
    let checks = run_suite(suite, &SuiteConfig::new(suite, None, None)).map_err(|e| e.to_string())?;
    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(bad.to_string());
    }
    Ok(checks)
}

fn count_for(checks: &[ribbon_cli::suites::Check], theory: &str) -> usize {
    checks.iter().filter(|c| c.theory == theory).count()
}

fn dot_crossing() -> Outcome {
    let checks = suite_checks(Suite::DotCrossing)?;
    let (bn, alpha) = (count_for(&checks, "bn"), count_for(&checks, "alpha@0,t/f2"));
    let expected: usize = table(7).iter().map(|(_, d)| d.crossing_count()).sum();
    if bn != expected || alpha != expected {
        return Err(format!("expected {expected} crossings per theory, ran {bn} and {alpha}"));
    }
    Ok(format!("{expected} crossings on knots up to 7 crossings, bn and alpha@0,t/f2"))
}

fn saddle_split() -> Outcome {
    let checks = suite_checks(Suite::SaddleSplit)?;
    let counts: Vec<String> = Suite::SaddleSplit
        .default_theories()
        .iter()
        .map(|t| (t, count_for(&checks, t)))
        .map(|(t, n)| if n >= 5 { Ok(format!("{t}: {n}")) } else { Err(format!("{t}: only {n} instances")) })
        .collect::<Result<_, _>>()?;
    Ok(counts.join(", "))
}

fn symmetry() -> Outcome {
    let checks = suite_checks(Suite::Symmetry)?;
    let mut per_movie: std::collections::BTreeMap<(String, String), usize> = Default::default();
    for c in &checks {
        let movie = c.instance.split(':').next().unwrap_or_default().to_string();
        *per_movie.entry((c.theory.clone(), movie)).or_default() += 1;
    }
    for t in Suite::Symmetry.default_theories() {
        let movies: Vec<_> = per_movie.iter().filter(|((th, _), n)| th == t && **n >= 2).collect();
        if movies.len() < 3 {
            return Err(format!("{t}: {} movies with two placements", movies.len()));
        }
    }
    Ok(format!("{} checks, {} movie/theory pairs", checks.len(), per_movie.len()))
}

fn ribbon() -> Outcome {
    let checks = suite_checks(Suite::Ribbon)?;
    let bn = BarNatan::bar_natan();
    // independent values: dense Smith form on the table diagrams
    let dense_mu = |name: &str| {
        let d = knots::diagram_by_name(name).unwrap();
        dense_summary(&build_complex(&d, &bn).unwrap(), name).mu.unwrap()
    };
    let mut lines = Vec::new();
    for (movie_name, knot) in [("unknot-ribbon", "unknot"), ("stevedore-ribbon", "6_1")] {
        let movie = bundled_movie(movie_name).map_err(|e| e.to_string())?;
        let end = movie.end().map_err(|e| e.to_string())?;
        let end_summary = summary(&end, &bn, knot)?;
        let start_summary = summary(&movie.start, &bn, "unknot")?;
        if end_summary.mu != Some(dense_mu(knot)) {
            return Err(format!("{movie_name}: mu of the end frame {:?}, table {knot} {}", end_summary.mu, dense_mu(knot)));
        }
        let entries = vec![
            Entry { name: "unknot".into(), components: 1, summary: start_summary },
            Entry { name: knot.into(), components: 1, summary: end_summary },
        ];
        let report = BoundReport::new("bn", entries).with_movie(movie.saddle_count() as u32);
        if report.movie_consistent() != Some(true) || movie.saddle_count() != 1 {
            return Err(format!("{movie_name}: bound report {}", report.render_table()));
        }
        lines.push(format!("mu({knot}) = {}", dense_mu(knot)));
    }
    Ok(format!("{} checks; {}", checks.len(), lines.join(", ")))
}

fn frobenius() -> Outcome {
    let mut n = suite_checks(Suite::Frobenius)?.len();
    n += suite_checks(Suite::Neckcut)?.len();
    for sel in ["kh-q", "kh-f3", "alpha@0,t/f3", "alpha@0,t/q", "alpha@1,-1/f3"] {
        let t = parse_selector(sel).map_err(|e| e.to_string())?;
        let ok = with_theory!(&t, t => t.check_axioms().is_ok() && t.check_neck_cutting().holds());
        if !ok {
            return Err(sel.to_string());
        }
        n += 1;
    }
    Ok(format!("{n} checks"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("d^2 = 0 for bn, alpha, both specializations, knots up to 8 crossings", d_squared),
        ("graded Euler characteristic equals the Kauffman-bracket Jones polynomial", jones_oracle),
        ("reduced homology equals dense Smith-form homology, knots up to 6 crossings", dense_equivalence),
        ("mu(unknot) = 0 and mu(3_1) = 1 across Reidemeister-related diagrams", trefoil_mu),
        ("dot-crossing identities at every crossing, knots up to 7 crossings", dot_crossing),
        ("saddle-split identities, at least 5 instances per theory", saddle_split),
        ("symmetry of palindromic movies, 3 movies with 2 placements", symmetry),
        ("ribbon composites and the bound report", ribbon),
        ("Frobenius axioms and neck cutting, all digit orderings", frobenius),
    ];
    let mut failed = 0;
    for (i, (what, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {what} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {what} ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
