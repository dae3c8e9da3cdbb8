//! Random search for one-saddle ribbon movies out of the unknot.
//!
//! Builds `birth`, a few `r2+` moves, and one merging saddle, then compares
//! the Bar-Natan homology of the result with the knots of the table. Used
//! to produce the bundled movies.
//!
//! Usage: `cargo run --release --example ribbon_search -- <target> [tries] [seed]`

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_core::cobordism::{apply_move, ElementaryMove, Movie};
use ribbon_core::complex::build_complex;
use ribbon_core::{knots, BarNatan, Homology, LinkDiagram};

fn summary(d: &LinkDiagram) -> ribbon_core::HomologySummary {
    let c = Arc::new(build_complex(d, &BarNatan::bar_natan()).unwrap());
    Homology::compute(c).unwrap().summary("")
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let target = args.get(1).map(String::as_str).unwrap_or("6_1");
    let tries: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(20000);
    let seed: u64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1);
    let k = knots::diagram_by_name(target).unwrap();
    let wanted = [summary(&k), summary(&k.mirror())];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for attempt in 0..tries {
        let mut d = apply_move(&LinkDiagram::unknot(), &ElementaryMove::birth()).unwrap().diagram;
        let mut moves = vec![ElementaryMove::birth()];
        let steps = rng.gen_range(2..=4);
        while moves.len() <= steps {
            let edges = d.edges();
            let m = ElementaryMove::R2Plus {
                over: *edges.choose(&mut rng).unwrap(),
                under: *edges.choose(&mut rng).unwrap(),
                face: rng.gen_range(0..2),
                directions: None,
                fresh: None,
                positions: None,
            };
            if let Ok(o) = apply_move(&d, &m) {
                d = o.diagram;
                moves.push(m);
            }
        }
        let comps = d.components();
        if comps.len() != 2 {
            continue;
        }
        let (a, b) = (*comps[0].choose(&mut rng).unwrap(), *comps[1].choose(&mut rng).unwrap());
        if !d.saddle_compatible(a, b) {
            continue;
        }
        let s = ElementaryMove::saddle(a, b);
        let end = apply_move(&d, &s).unwrap().diagram;
        moves.push(s);
        if !end.is_knot() || end.crossing_count() > 10 {
            continue;
        }
        let got = summary(&end);
        if let Some(which) = wanted.iter().position(|w| w.same_module(&got)) {
            let movie = Movie::new(LinkDiagram::unknot(), moves).unwrap();
            println!("# attempt {attempt}, {} crossings, mirror: {}", end.crossing_count(), which == 1);
            println!("# end {}", end.to_pd_string());
            print!("{}", movie.to_script());
            return;
        }
    }
    eprintln!("nothing found");
}
