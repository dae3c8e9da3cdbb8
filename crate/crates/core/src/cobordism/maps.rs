//! Chain maps of elementary cobordisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{
    all_resolutions, block_offsets, build_complex, carry_labels, saddle_images_at, ChainComplex, ChainMap, GenLabel,
};
use crate::diagram::{EdgeId, LinkDiagram, Resolution, State};
use crate::error::{Error, Result};
use crate::frobenius::{AlgebraElement, Theory};
use crate::homology::eliminate_pairs;
use crate::matrix::SparseMatrix;
use crate::poly::Poly;
use crate::scalar::Coefficient;

use super::moves::{apply_move, ElementaryMove, Outcome, Site};

/// The chain map of `m` applied to `frame`.
pub fn elementary_chain_map<C: Coefficient>(
    frame: &LinkDiagram,
    m: &ElementaryMove,
    theory: &Theory<C>,
) -> Result<ChainMap<C>> {
    let outcome = apply_move(frame, m)?;
    let source = Arc::new(build_complex(frame, theory)?);
    let target = Arc::new(build_complex(&outcome.diagram, theory)?);
    map_between(source, target, m, &outcome)
}

/// The chain map of `m` between already built complexes of its source and
/// target frames.
pub fn map_between<C: Coefficient>(
    source: Arc<ChainComplex<C>>,
    target: Arc<ChainComplex<C>>,
    m: &ElementaryMove,
    outcome: &Outcome,
) -> Result<ChainMap<C>> {
    use ElementaryMove::*;
    let theory = source.theory().clone();
    let from = source.diagram().ok_or_else(|| Error::Precondition("complex without a diagram".into()))?.clone();
    let to = &outcome.diagram;
    let graded = theory.is_graded();
    match m {
        Birth { .. } => cubewise(source, target, &from, to, if graded { -1 } else { 0 }, |_, a, b, labels| {
            // the new circle carries 1, the zero label bit
            Ok(vec![(carry_labels(a, b, labels, &[]), Poly::one())])
        }),
        Death { circle } => {
            let circle = *circle;
            cubewise(source, target, &from, to, if graded { -1 } else { 0 }, |_, a, b, labels| {
                let o = a.circle_of(circle).expect("loop is a circle");
                if labels >> o & 1 == 0 {
                    return Ok(vec![]);
                }
                Ok(vec![(carry_labels(a, b, labels, &[o]), Poly::one())])
            })
        }
        Saddle { a: ea, b: eb, .. } => {
            let (x, y) = (*ea, *eb);
            // locate the output circles by edges that survive in the target
            let (tx, ty) = match (&outcome.inverse, x == y) {
                (ElementaryMove::Saddle { b: l, .. }, true) => (x, *l),
                _ if from.is_loop(x) && !to.has_edge(x) => (y, y),
                _ => (x, if to.has_edge(y) { y } else { x }),
            };
            let th = theory.clone();
            cubewise(source, target, &from, to, if graded { 1 } else { 0 }, move |_, a, b, labels| {
                Ok(saddle_images_at(&th, a, b, (x, y), (tx, ty), labels))
            })
        }
        Decorate { mark, edge } => {
            let dec = mark.decoration::<C>();
            let elem = theory.decoration_element(&dec)?;
            let q = if graded { theory.decoration_degree(&dec)? } else { 0 };
            let images: Vec<AlgebraElement<C>> =
                (0..2).map(|u| theory.multiply(&elem, &AlgebraElement::basis(u))).collect::<Result<_>>()?;
            let edge = *edge;
            cubewise(source, target, &from, to, q, move |_, a, _, labels| {
                let c = a.circle_of(edge).expect("edge on a circle");
                let rest = labels & !(1 << c);
                let img = &images[(labels >> c & 1) as usize];
                Ok(img
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(u, p)| (rest | (u as u32) << c, p.clone()))
                    .collect())
            })
        }
        R1Plus { .. } | R2Plus { .. } => {
            let eq = Reidemeister::new(source.clone(), target.clone(), &outcome.site)?;
            eq.up()
        }
        R1Minus { .. } | R2Minus { .. } => {
            let eq = Reidemeister::new(target.clone(), source.clone(), &outcome.site)?;
            eq.down()
        }
        R3 { .. } => Err(Error::InvalidMove("r3 has no chain map".into())),
    }
}

type LocalImages<C> = Vec<(u32, Poly<C>)>;

/// A map between complexes of diagrams with the same crossings, given on
/// each cube vertex.
fn cubewise<C: Coefficient>(
    source: Arc<ChainComplex<C>>,
    target: Arc<ChainComplex<C>>,
    from: &LinkDiagram,
    to: &LinkDiagram,
    q_shift: i32,
    f: impl Fn(State, &Resolution, &Resolution, u32) -> Result<LocalImages<C>>,
) -> Result<ChainMap<C>> {
    let n = from.crossing_count();
    if to.crossing_count() != n {
        return Err(Error::InvalidMove("frames differ in crossings".into()));
    }
    let n_neg = from.sign_counts().1 as i32;
    let (ra, rb) = (all_resolutions(from), all_resolutions(to));
    let (oa, ob) = (block_offsets(&ra, n), block_offsets(&rb, n));
    let mut trip: Vec<Vec<(usize, usize, Poly<C>)>> = vec![Vec::new(); n + 1];
    for mask in 0..1u32 << n {
        let s = State::new(mask, n);
        let (a, b) = (&ra[mask as usize], &rb[mask as usize]);
        for labels in 0..1u32 << a.circle_count() {
            for (tl, c) in f(s, a, b, labels)? {
                trip[s.weight()].push((ob[mask as usize] + tl as usize, oa[mask as usize] + labels as usize, c));
            }
        }
    }
    let maps = trip
        .into_iter()
        .enumerate()
        .map(|(w, t)| {
            let r = w as i32 - n_neg;
            (r, SparseMatrix::from_triplets(target.rank(r), source.rank(r), t))
        })
        .collect();
    ChainMap::new(source, target, 0, q_shift, maps)
}

/// A Reidemeister equivalence between the complexes of a diagram `small`
/// and a diagram `big` with one or two more crossings, obtained by
/// cancelling the local merges and splits of the extra crossings.
struct Reidemeister<C: Coefficient> {
    small: Arc<ChainComplex<C>>,
    big: Arc<ChainComplex<C>>,
    /// Small complex to the reduced big complex: a signed permutation.
    j: ChainMap<C>,
    iota: ChainMap<C>,
    pi: ChainMap<C>,
}

impl<C: Coefficient> Reidemeister<C> {
    fn new(small: Arc<ChainComplex<C>>, big: Arc<ChainComplex<C>>, site: &Site) -> Result<Self> {
        let bd = big.diagram().expect("built from a diagram").clone();
        let sd = small.diagram().expect("built from a diagram").clone();
        let n = bd.crossing_count();
        let (extra, bubble): (Vec<usize>, Vec<EdgeId>) = match site {
            Site::Kink { crossing, loop_edge } => (vec![*crossing], vec![*loop_edge]),
            Site::Bigon { l, r, over_mid, under_mid } => (vec![*l, *r], vec![*over_mid, *under_mid]),
            Site::None => return Err(Error::Precondition("move has no Reidemeister site".into())),
        };
        let res = all_resolutions(&bd);
        // the small circle is the one made of exactly the bubble edges
        let bubble_circle = |mask: u32| -> Option<usize> {
            let r = &res[mask as usize];
            r.circles.iter().position(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                let mut b = bubble.clone();
                b.sort_unstable();
                c == b
            })
        };
        let local = |mask: u32| -> u32 { extra.iter().enumerate().map(|(i, &c)| (mask >> c & 1) << i).sum() };

        // decide, per local state, which vertices are cancelled
        let local_states = 1u32 << extra.len();
        let probe = |l: u32| -> bool {
            let mask: u32 = extra.iter().enumerate().map(|(i, &c)| (l >> i & 1) << c).sum();
            bubble_circle(mask).is_some()
        };
        let bubble_at: Vec<u32> = (0..local_states).filter(|&l| probe(l)).collect();
        if bubble_at.len() != 1 {
            return Err(Error::Precondition(format!("bubble appears in {} local states", bubble_at.len())));
        }
        let bl = bubble_at[0];
        // (local state of columns, column needs bubble label?, target local state, row bubble label)
        let mut plan: Vec<(u32, Option<u32>, u32, u32)> = Vec::new();
        let keep: u32;
        if extra.len() == 1 {
            if bl == 0 {
                plan.push((0, Some(0), 1, u32::MAX));
                keep = 0;
            } else {
                plan.push((0, None, 1, 1));
                keep = 1;
            }
        } else {
            let other = bl ^ 0b11;
            if bl.count_ones() != 1 {
                return Err(Error::Precondition("unexpected bigon resolution".into()));
            }
            plan.push((0, None, bl, 1));
            plan.push((bl, Some(0), 0b11, u32::MAX));
            keep = other;
        }

        let mut pairs = Vec::new();
        for r in big.degrees() {
            let d = big.d(r);
            for (j, g) in big.gens(r).iter().enumerate() {
                let GenLabel::Cube { state, labels } = g.label else { unreachable!() };
                let loc = local(state.mask());
                for &(cl, need, tl, row_label) in &plan {
                    if loc != cl {
                        continue;
                    }
                    if let Some(v) = need {
                        let o = bubble_circle(state.mask()).expect("bubble present");
                        if labels >> o & 1 != v {
                            continue;
                        }
                    }
                    let rows: Vec<usize> = d
                        .col(j)
                        .iter()
                        .filter(|(i, _)| {
                            let GenLabel::Cube { state: ts, labels: tls } = big.gens(r + 1)[*i].label else {
                                unreachable!()
                            };
                            if local(ts.mask()) != tl || (ts.mask() ^ state.mask()).count_ones() != 1 {
                                return false;
                            }
                            row_label == u32::MAX || {
                                let o = bubble_circle(ts.mask()).expect("bubble present");
                                tls >> o & 1 == row_label
                            }
                        })
                        .map(|(i, _)| *i)
                        .collect();
                    if rows.len() != 1 {
                        return Err(Error::Precondition(format!("ambiguous cancellation at {g:?}")));
                    }
                    pairs.push((r, rows[0], j));
                }
            }
        }
        let red = eliminate_pairs(big.clone(), &pairs)?;

        // identify small generators with the survivors
        let keep_mask: u32 = extra.iter().enumerate().map(|(i, &c)| (keep >> i & 1) << c).sum();
        let old: Vec<usize> = (0..n).filter(|c| !extra.contains(c)).collect();
        let small_res = all_resolutions(&sd);
        let mut jmaps = BTreeMap::new();
        for r in small.degrees() {
            let mut trip = Vec::new();
            for (col, g) in small.gens(r).iter().enumerate() {
                let GenLabel::Cube { state, labels } = g.label else { unreachable!() };
                let mut mask = keep_mask;
                for (k, &c) in old.iter().enumerate() {
                    mask |= (state.mask() >> k & 1) << c;
                }
                let bres = &res[mask as usize];
                let sres = &small_res[state.mask() as usize];
                let mut bl = 0u32;
                for (ci, circle) in sres.circles.iter().enumerate() {
                    if labels >> ci & 1 == 1 {
                        let t = bres.circle_of(circle[0]).ok_or_else(|| {
                            Error::Precondition(format!("edge {} missing from the larger diagram", circle[0]))
                        })?;
                        bl |= 1 << t;
                    }
                }
                if let Some(o) = bubble_circle(mask) {
                    // the surviving bubble label: X after a merge cancellation, 1 after a split
                    if extra.len() == 1 && keep == 0 {
                        bl |= 1 << o;
                    }
                }
                let label = GenLabel::Cube { state: State::new(mask, n), labels: bl };
                let row = red
                    .complex
                    .find(r, &label)
                    .ok_or_else(|| Error::Precondition(format!("no survivor for {:?}", g.label)))?;
                let negative = extra
                    .iter()
                    .filter(|&&c| mask >> c & 1 == 1)
                    .map(|&c| old.iter().filter(|&&k| k > c && mask >> k & 1 == 1).count())
                    .sum::<usize>()
                    % 2
                    == 1;
                trip.push((row, col, if negative { -Poly::one() } else { Poly::one() }));
                if red.complex.gens(r)[row].q != g.q {
                    return Err(Error::Precondition("quantum degrees do not match".into()));
                }
            }
            jmaps.insert(r, SparseMatrix::from_triplets(red.complex.rank(r), small.rank(r), trip));
        }
        let j = ChainMap::new(small.clone(), red.complex.clone(), 0, 0, jmaps)?;
        for r in small.degrees() {
            let lhs = red.complex.d(r).compose(&j.at(r));
            let rhs = j.at(r + 1).compose(&small.d(r));
            if lhs != rhs {
                return Err(Error::NotChainMap(format!("reduced differential differs in degree {r}")));
            }
        }
        Ok(Reidemeister { small, big, j, iota: red.iota, pi: red.pi })
    }

    fn up(&self) -> Result<ChainMap<C>> {
        let f = self.iota.compose(&self.j)?;
        debug_assert!(Arc::ptr_eq(&f.source, &self.small) && Arc::ptr_eq(&f.target, &self.big));
        Ok(f)
    }

    fn down(&self) -> Result<ChainMap<C>> {
        let maps = self.small.degrees().map(|r| (r, self.j.at(r).transpose())).collect();
        let jinv = ChainMap::new(self.j.target.clone(), self.small.clone(), 0, 0, maps)?;
        jinv.compose(&self.pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, Sign};
    use crate::homology::{induced_map, Homology};
    use crate::{F2, Q, Z};

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    fn check_move<C: Coefficient>(d: &LinkDiagram, m: &ElementaryMove, theory: &Theory<C>) -> ChainMap<C> {
        let f = elementary_chain_map(d, m, theory).unwrap();
        assert!(f.is_chain_map(), "{m} on {d:?}");
        if theory.is_graded() {
            f.check_homogeneous().unwrap();
        }
        f
    }

    #[test]
    fn birth_sends_one_to_one() {
        let t = Theory::<F2>::bar_natan();
        let f = check_move(&LinkDiagram::empty(), &ElementaryMove::birth(), &t);
        assert_eq!(f.at(0).to_dense(), vec![vec![Poly::one()], vec![Poly::zero()]]);
    }

    #[test]
    fn split_then_merge_is_h() {
        let t = Theory::<F2>::bar_natan();
        let u = LinkDiagram::unknot();
        let split = apply_move(&u, &ElementaryMove::saddle(1, 1)).unwrap();
        let f = check_move(&u, &ElementaryMove::saddle(1, 1), &t);
        let g = check_move(&split.diagram, &split.inverse, &t);
        let h = g.compose(&f).unwrap();
        assert_eq!(h.at(0), SparseMatrix::identity(2).scale(&Poly::var(0)));
    }

    #[test]
    fn saddles_on_trefoil_are_chain_maps() {
        let d = parse_pd(TREFOIL).unwrap();
        let t = Theory::<Z>::alpha();
        for a in d.edges() {
            for b in d.edges() {
                if a < b && d.saddle_compatible(a, b) {
                    check_move(&d, &ElementaryMove::saddle(a, b), &t);
                }
            }
        }
    }

    #[test]
    fn decorations_are_chain_maps() {
        let d = parse_pd(TREFOIL).unwrap();
        let t = Theory::<Z>::alpha();
        for mark in [super::super::Mark::Dot, super::super::Mark::Digit1, super::super::Mark::Star] {
            check_move(&d, &ElementaryMove::Decorate { mark, edge: 2 }, &t);
        }
    }

    fn reidemeister_roundtrip<C: Coefficient>(d: &LinkDiagram, m: &ElementaryMove, theory: &Theory<C>) {
        let o = apply_move(d, m).unwrap();
        let f = check_move(d, m, theory);
        let g = check_move(&o.diagram, &o.inverse, theory);
        let hs = Homology::compute(f.source.clone()).unwrap();
        let ht = Homology::compute(f.target.clone()).unwrap();
        assert_eq!(hs.summary("k"), ht.summary("k"), "{m}");
        let round = g.compose(&f).unwrap();
        assert_eq!(induced_map(&round, &hs, &hs).unwrap(), hs.identity_map(), "{m}");
        let back = f.compose(&g).unwrap();
        assert_eq!(induced_map(&back, &ht, &ht).unwrap(), ht.identity_map(), "{m}");
    }

    #[test]
    fn kinks_induce_isomorphisms() {
        let bn = Theory::<F2>::bar_natan();
        let lee = Theory::<Z>::alpha().specialize::<Q>([Poly::from_i64(1), Poly::from_i64(-1)]).unwrap();
        for d in [LinkDiagram::unknot(), parse_pd(TREFOIL).unwrap()] {
            for e in [1, 2] {
                for sign in [Sign::Positive, Sign::Negative] {
                    for over_first in [false, true] {
                        let m = ElementaryMove::R1Plus { edge: e, sign, over_first, fresh: None, position: None };
                        if !d.has_edge(e) {
                            continue;
                        }
                        reidemeister_roundtrip(&d, &m, &bn);
                        reidemeister_roundtrip(&d, &m, &lee);
                    }
                }
            }
        }
    }

    #[test]
    fn bigons_induce_isomorphisms() {
        let bn = Theory::<F2>::bar_natan();
        let d = parse_pd(TREFOIL).unwrap();
        let mut n = 0;
        for a in d.edges() {
            for b in d.edges() {
                for face in 0..2 {
                    let m = ElementaryMove::R2Plus { over: a, under: b, face, directions: None, fresh: None, positions: None };
                    if apply_move(&d, &m).is_ok() {
                        reidemeister_roundtrip(&d, &m, &bn);
                        n += 1;
                    }
                }
            }
        }
        assert!(n > 0);
    }

    #[test]
    fn bigon_linking_two_circles() {
        let bn = Theory::<F2>::bar_natan();
        let d = LinkDiagram::unlink(2);
        for face in 0..1 {
            let m = ElementaryMove::R2Plus { over: 1, under: 2, face, directions: None, fresh: None, positions: None };
            reidemeister_roundtrip(&d, &m, &bn);
        }
    }
}
