//! Homology from a dense graded Smith form of each differential.
//!
//! Works over `F` or `F[t]` for a field `F`. A homogeneous complex over
//! `F[t]` has monomial entries whose exponent is fixed by the degrees of
//! row and column, so a dense matrix of `(coefficient, exponent)` pairs is
//! enough, and a pivot of least exponent divides everything left.

use std::collections::BTreeMap;

use ribbon_core::complex::ChainComplex;
use ribbon_core::frobenius::{BaseKind, StarAction};
use ribbon_core::homology::{FreeEntry, TorsionEntry};
use ribbon_core::{Coefficient, HomologySummary};

type Entry<C> = Option<(C, u32)>;

/// Pivots of a Smith form: `(row, column, exponent)` in original indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DenseSnf {
    pub pivots: Vec<(usize, usize, u32)>,
}

impl DenseSnf {
    pub fn compute<C: Coefficient>(mut m: Vec<Vec<Entry<C>>>) -> DenseSnf {
        assert!(C::IS_FIELD, "the dense oracle needs a field of coefficients");
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut row_done = vec![false; rows];
        let mut col_done = vec![false; cols];
        let mut pivots = Vec::new();
        loop {
            let mut best: Option<(usize, usize, u32)> = None;
            for (i, row) in m.iter().enumerate().filter(|(i, _)| !row_done[*i]) {
                for (j, x) in row.iter().enumerate().filter(|(j, _)| !col_done[*j]) {
                    if let Some((_, e)) = x {
                        if best.is_none_or(|b| *e < b.2) {
                            best = Some((i, j, *e));
                        }
                    }
                }
            }
            let Some((pi, pj, pe)) = best else { break };
            let inv = m[pi][pj].as_ref().unwrap().0.inverse().expect("field");
            let pivot_row = m[pi].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == pi || row_done[i] {
                    continue;
                }
                let Some((c, e)) = row[pj].clone() else { continue };
                let factor = c * inv.clone();
                let shift = e - pe;
                for (k, x) in pivot_row.iter().enumerate() {
                    let Some((pc, pe2)) = x else { continue };
                    let sub = (factor.clone() * pc.clone(), pe2 + shift);
                    row[k] = match row[k].take() {
                        None => Some((-sub.0, sub.1)),
                        Some((v, ve)) => {
                            assert_eq!(ve, sub.1, "inhomogeneous entry");
                            let v = v - sub.0;
                            (!v.is_zero()).then_some((v, ve))
                        }
                    };
                }
                debug_assert!(row[pj].is_none());
            }
            // the pivot divides the rest of its row, so column operations
            // clear it without touching other rows
            row_done[pi] = true;
            col_done[pj] = true;
            pivots.push((pi, pj, pe));
        }
        DenseSnf { pivots }
    }
}

fn dense<C: Coefficient>(c: &ChainComplex<C>, r: i32) -> Vec<Vec<Entry<C>>> {
    let d = c.d(r);
    let mut m = vec![vec![None; d.ncols()]; d.nrows()];
    for (i, j, p) in d.entries() {
        let (coef, [e, f]) = p.as_monomial().expect("monomial differential entry");
        assert_eq!(f, 0, "the dense oracle handles one variable");
        m[i][j] = Some((coef, e));
    }
    m
}

/// The homology summary of a complex, computed densely.
///
/// Free and torsion parts and the torsion-order fields follow the same
/// conventions as the pipeline's summaries; notes are left empty.
pub fn dense_summary<C: Coefficient>(c: &ChainComplex<C>, knot: &str) -> HomologySummary {
    let theory = c.theory();
    let graded = theory.is_graded();
    let q_of = |q: i32| graded.then_some(-q);
    let snfs: BTreeMap<i32, DenseSnf> = c.degrees().map(|r| (r, DenseSnf::compute(dense(c, r)))).collect();
    let mut free: BTreeMap<(i32, Option<i32>), usize> = BTreeMap::new();
    let mut torsion = Vec::new();
    for r in c.degrees() {
        // Pivot indices depend on the elimination order; only the degrees
        // they carry are invariant, so the bookkeeping is by degree.
        let gens = c.gens(r);
        let key = |i: usize| if graded { gens[i].q } else { 0 };
        let mut count: BTreeMap<i32, i64> = BTreeMap::new();
        for i in 0..gens.len() {
            *count.entry(key(i)).or_default() += 1;
        }
        for &(_, j, _) in &snfs[&r].pivots {
            *count.entry(key(j)).or_default() -= 1;
        }
        if let Some(prev) = snfs.get(&(r - 1)) {
            for &(i, _, e) in &prev.pivots {
                *count.entry(key(i)).or_default() -= 1;
                if e > 0 {
                    torsion.push(TorsionEntry { r, q: q_of(gens[i].q), order: e });
                }
            }
        }
        for (q, n) in count {
            assert!(n >= 0, "more pivots than generators in degree ({r}, {q})");
            if n > 0 {
                *free.entry((r, q_of(q))).or_default() += n as usize;
            }
        }
    }
    torsion.sort();
    let order = torsion.iter().map(|t| t.order).max().unwrap_or(0);
    let variable = theory.base().kind != BaseKind::Constant;
    HomologySummary {
        theory: theory.name().to_string(),
        knot: knot.to_string(),
        free: free.into_iter().map(|((r, q), rank)| FreeEntry { r, q, rank }).collect(),
        torsion,
        mu: (variable && theory.roots().is_none()).then_some(order),
        nu_phi: match (theory.roots(), theory.star_action()) {
            (None, _) | (_, StarAction::Unsupported) => None,
            (_, StarAction::Variable(_)) => Some(order),
            (_, StarAction::Invertible) => Some(0),
        },
        note: None,
    }
}
