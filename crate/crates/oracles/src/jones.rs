//! Jones polynomial by the Kauffman bracket.
//!
//! Polynomials are maps from exponents to integer coefficients. The Jones
//! polynomial is keyed by exponents of `t^{1/2}`, so a knot only has even
//! keys.

use std::collections::BTreeMap;

use ribbon_core::complex::Laurent;
use ribbon_core::LinkDiagram;

pub type LaurentMap = BTreeMap<i32, i64>;

fn add(p: &mut LaurentMap, e: i32, c: i64) {
    let v = p.entry(e).or_insert(0);
    *v += c;
    if *v == 0 {
        p.remove(&e);
    }
}

fn mul(a: &LaurentMap, b: &LaurentMap) -> LaurentMap {
    let mut out = LaurentMap::new();
    for (x, c) in a {
        for (y, d) in b {
            add(&mut out, x + y, c * d);
        }
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The Kauffman bracket `⟨D⟩` in the variable `A`.
///
/// At `X[a,b,c,d]` the A-smoothing joins `a` with `b` and `c` with `d`; the
/// B-smoothing joins `a` with `d` and `b` with `c`.
pub fn bracket(d: &LinkDiagram) -> LaurentMap {
    let edges = d.edges();
    let index: BTreeMap<u32, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let n = d.crossing_count();
    let delta: LaurentMap = [(2, -1), (-2, -1)].into_iter().collect();
    let mut out = LaurentMap::new();
    for state in 0u32..(1 << n) {
        let mut parent: Vec<usize> = (0..edges.len()).collect();
        let join = |x: u32, y: u32, parent: &mut Vec<usize>| {
            let (a, b) = (find(parent, index[&x]), find(parent, index[&y]));
            parent[a] = b;
        };
        let mut a_count = 0i32;
        for (i, c) in d.crossings().iter().enumerate() {
            let [a, b, cc, dd] = c.edges;
            if state >> i & 1 == 0 {
                a_count += 1;
                join(a, b, &mut parent);
                join(cc, dd, &mut parent);
            } else {
                join(a, dd, &mut parent);
                join(b, cc, &mut parent);
            }
        }
        let loops = (0..edges.len()).filter(|&i| find(&mut parent, i) == i).count();
        let mut term: LaurentMap = [(a_count - (n as i32 - a_count), 1)].into_iter().collect();
        for _ in 1..loops {
            term = mul(&term, &delta);
        }
        for (e, c) in term {
            add(&mut out, e, c);
        }
    }
    out
}

/// `V(t)` keyed by exponents of `t^{1/2}`: `(−A³)^{−w} ⟨D⟩` at `A = t^{−1/4}`.
pub fn jones(d: &LinkDiagram) -> LaurentMap {
    let w = d.writhe() as i32;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut out = LaurentMap::new();
    for (e, c) in bracket(d) {
        let a_exp = e - 3 * w;
        assert!(a_exp % 2 == 0, "odd power of A in a normalized bracket");
        add(&mut out, -a_exp / 2, sign * c);
    }
    out
}

/// Reads `V(t)` off a graded Euler characteristic `χ(q) = (q + q⁻¹) V|_{t^{1/2} = −q}`.
///
/// Returns `None` if `χ` is not divisible by `q + q⁻¹`.
pub fn jones_from_euler(chi: &Laurent) -> Option<LaurentMap> {
    // long division by q + q⁻¹ from the top degree down
    let mut rest: LaurentMap = chi.0.clone();
    let low = rest.keys().next().copied().unwrap_or(0);
    let mut quotient = LaurentMap::new();
    while let Some((&top, &c)) = rest.iter().next_back() {
        if top < low + 2 {
            return None;
        }
        add(&mut quotient, top - 1, c);
        add(&mut rest, top, -c);
        add(&mut rest, top - 2, -c);
    }
    Some(quotient.into_iter().map(|(e, c)| (e, if e.rem_euclid(2) == 0 { c } else { -c })).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ribbon_core::parse_pd;

    #[test]
    fn unknot_unlink_and_kink() {
        assert_eq!(jones(&LinkDiagram::unknot()), [(0, 1)].into_iter().collect());
        let unlink = jones(&LinkDiagram::unlink(2));
        assert_eq!(unlink, [(1, -1), (-1, -1)].into_iter().collect());
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(jones(&kink), [(0, 1)].into_iter().collect());
    }

    #[test]
    fn division_inverts_multiplication() {
        let v: LaurentMap = [(2, 1), (6, 1), (8, -1)].into_iter().collect();
        let mut chi = Laurent::default();
        for (e, c) in &v {
            let c = if e.rem_euclid(2) == 0 { *c } else { -c };
            chi.add_term(e + 1, c);
            chi.add_term(e - 1, c);
        }
        assert_eq!(jones_from_euler(&chi), Some(v));
        assert_eq!(jones_from_euler(&Laurent::from_terms(&[(0, 1)])), None);
    }
}
