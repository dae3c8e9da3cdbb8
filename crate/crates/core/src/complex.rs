//! Cube-of-resolutions chain complexes and chain maps between them.
//!
//! Gradings are internal: with `deg X = 2` and `deg 1 = 0` a cube
//! generator in state `s` has
//!
//! ```text
//! r = |s| − n₋        q = 2·#X − #circles − |s| − n₊ + 2n₋
//! ```
//!
//! so that every differential entry has internal degree 0. The internal
//! `q` is the negative of the usual Khovanov quantum grading; reports flip
//! the sign (see [`Generator::quantum`]).

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use rayon::prelude::*;

use crate::diagram::{smoothing_pairs, LinkDiagram, Resolution, State};
use crate::error::{Error, Result};
use crate::frobenius::{BaseKind, Theory};
use crate::matrix::SparseMatrix;
use crate::poly::Poly;
use crate::scalar::Coefficient;

/// What a generator stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenLabel {
    /// A cube vertex with a 1/X label per circle (bit i set: circle i is X).
    Cube { state: State, labels: u32 },
    /// A generator of a derived complex, numbered within its degree.
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub r: i32,
    /// Internal quantum degree.
    pub q: i32,
    pub label: GenLabel,
}

impl Generator {
    /// Conventional Khovanov quantum degree.
    pub fn quantum(&self) -> i32 {
        -self.q
    }
}

/// A bounded cochain complex of free modules over the theory's base ring.
#[derive(Clone)]
pub struct ChainComplex<C> {
    theory: Theory<C>,
    diagram: Option<LinkDiagram>,
    r_min: i32,
    gens: Vec<Vec<Generator>>,
    /// `diffs[k]` maps degree `r_min + k` to `r_min + k + 1`.
    diffs: Vec<SparseMatrix<Poly<C>>>,
}

/// Sign of the cube edge that changes bit `i` of `s`.
pub fn edge_sign(s: State, i: usize) -> bool {
    (s.mask() & ((1u32 << i) - 1)).count_ones() % 2 == 1
}

/// Internal quantum degree of a cube generator.
pub fn cube_q(labels: u32, circles: usize, state: State, n_pos: usize, n_neg: usize) -> i32 {
    2 * labels.count_ones() as i32 - circles as i32 - state.weight() as i32 - n_pos as i32
        + 2 * n_neg as i32
}

impl<C: Coefficient> ChainComplex<C> {
    /// Assembles a complex from explicit data, checking shapes.
    pub fn from_parts(
        theory: Theory<C>,
        diagram: Option<LinkDiagram>,
        r_min: i32,
        gens: Vec<Vec<Generator>>,
        diffs: Vec<SparseMatrix<Poly<C>>>,
    ) -> Result<Self> {
        if diffs.len() + 1 != gens.len().max(1) {
            return Err(Error::ShapeMismatch(format!(
                "{} degrees but {} differentials",
                gens.len(),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (gens[k + 1].len(), gens[k].len()) {
                return Err(Error::ShapeMismatch(format!("differential {k} has shape {:?}", d.shape())));
            }
        }
        Ok(ChainComplex { theory, diagram, r_min, gens, diffs })
    }

    pub fn theory(&self) -> &Theory<C> {
        &self.theory
    }

    pub fn diagram(&self) -> Option<&LinkDiagram> {
        self.diagram.as_ref()
    }

    /// Lowest homological degree.
    pub fn r_min(&self) -> i32 {
        self.r_min
    }

    /// Highest homological degree.
    pub fn r_max(&self) -> i32 {
        self.r_min + self.gens.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.r_min..=self.r_max()
    }

    pub fn gens(&self, r: i32) -> &[Generator] {
        match self.index(r) {
            Some(k) => &self.gens[k],
            None => &[],
        }
    }

    pub fn rank(&self, r: i32) -> usize {
        self.gens(r).len()
    }

    pub fn total_rank(&self) -> usize {
        self.gens.iter().map(Vec::len).sum()
    }

    fn index(&self, r: i32) -> Option<usize> {
        let k = r - self.r_min;
        (k >= 0 && (k as usize) < self.gens.len()).then_some(k as usize)
    }

    /// The differential out of degree `r` (a zero matrix at the ends).
    pub fn d(&self, r: i32) -> SparseMatrix<Poly<C>> {
        match self.index(r) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => SparseMatrix::zeros(self.rank(r + 1), self.rank(r)),
        }
    }

    pub fn d_ref(&self, r: i32) -> Option<&SparseMatrix<Poly<C>>> {
        self.index(r).and_then(|k| self.diffs.get(k))
    }

    /// Position of a generator label in degree `r`.
    pub fn find(&self, r: i32, label: &GenLabel) -> Option<usize> {
        self.gens(r).binary_search_by(|g| g.label.cmp(label)).ok()
    }

    /// Same generators in the same order.
    pub fn same_shape(&self, other: &ChainComplex<C>) -> bool {
        self.r_min == other.r_min && self.gens == other.gens
            || self.total_rank() == 0 && other.total_rank() == 0
    }

    /// Checks `d ∘ d = 0` in every degree.
    pub fn check_d_squared(&self) -> Result<()> {
        for k in 1..self.diffs.len() {
            let dd = self.diffs[k].compose(&self.diffs[k - 1]);
            if !dd.is_zero() {
                return Err(Error::NotChainMap(format!(
                    "d∘d ≠ 0 out of degree {}",
                    self.r_min + k as i32 - 1
                )));
            }
        }
        Ok(())
    }

    /// Every entry shifts internal degree by zero (graded theories only).
    pub fn check_homogeneous(&self) -> Result<()> {
        if !self.theory.is_graded() {
            return Ok(());
        }
        for (k, d) in self.diffs.iter().enumerate() {
            for (i, j, v) in d.entries() {
                let q_row = self.gens[k + 1][i].q;
                let q_col = self.gens[k][j].q;
                if v.homogeneous_degree().map(|e| q_row + 2 * e as i32) != Some(q_col) {
                    return Err(Error::NotChainMap(format!("inhomogeneous entry {v:?} at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// `Σ (−1)^r q^deg` over generators, in conventional quantum degrees.
    pub fn graded_euler_characteristic(&self) -> Result<Laurent> {
        if self.theory.base().kind != BaseKind::Constant {
            return Err(Error::UnsupportedRing(format!(
                "{} has a polynomial base; its graded rank is not a Laurent polynomial",
                self.theory.name()
            )));
        }
        if !self.theory.is_graded() {
            return Err(Error::UnsupportedRing(format!("{} is not graded", self.theory.name())));
        }
        let mut out = Laurent::default();
        for g in self.gens.iter().flatten() {
            out.add_term(g.quantum(), if g.r.rem_euclid(2) == 0 { 1 } else { -1 });
        }
        Ok(out)
    }

    /// Debug dump: generators per degree and `(row, col, entry)` triplets.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let vars = &self.theory.base().variables;
        for r in self.degrees() {
            let _ = writeln!(s, "degree {r}: {} generators", self.rank(r));
            for (i, g) in self.gens(r).iter().enumerate() {
                let _ = writeln!(s, "  [{i}] q={} {:?}", g.quantum(), g.label);
            }
            if let Some(d) = self.d_ref(r) {
                for (i, j, v) in d.entries() {
                    let _ = writeln!(s, "  d({j}) -> {i}: {}", v.display_with(vars));
                }
            }
        }
        s
    }
}

/// Laurent polynomial in `q` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Laurent(pub BTreeMap<i32, i64>);

impl Laurent {
    pub fn add_term(&mut self, exp: i32, c: i64) {
        let e = self.0.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        let mut l = Laurent::default();
        for &(e, c) in terms {
            l.add_term(e, c);
        }
        l
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// `q ↦ q⁻¹`.
    pub fn invert(&self) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (-e, *c)).collect())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.0.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = c.abs();
            let coef = if mag == 1 && *e != 0 { String::new() } else { mag.to_string() };
            let var = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{e}"),
            };
            write!(f, "{}{sign}{coef}{var}", if k > 0 { " " } else { "" })?;
        }
        Ok(())
    }
}

/// Index of each state's generator block within its homological degree.
pub(crate) fn block_offsets(resolutions: &[Resolution], n: usize) -> Vec<usize> {
    let mut offsets = vec![0; resolutions.len()];
    let mut next = vec![0usize; n + 1];
    for (mask, res) in resolutions.iter().enumerate() {
        let w = mask.count_ones() as usize;
        offsets[mask] = next[w];
        next[w] += 1 << res.circle_count();
    }
    offsets
}

/// All resolutions of a diagram, indexed by state mask.
pub fn all_resolutions(d: &LinkDiagram) -> Vec<Resolution> {
    let n = d.crossing_count();
    (0..1u32 << n)
        .into_par_iter()
        .map(|m| d.resolve(State::new(m, n)).expect("state length matches"))
        .collect()
}

/// Writes the image of a single labelling under a local cobordism: the
/// circles in `touched` are replaced by `outputs`, every other circle of
/// `from` carries its label to the circle of `to` through a shared edge.
pub(crate) fn carry_labels(from: &Resolution, to: &Resolution, labels: u32, skip: &[usize]) -> u32 {
    let mut out = 0;
    for (ci, circle) in from.circles.iter().enumerate() {
        if skip.contains(&ci) || labels >> ci & 1 == 0 {
            continue;
        }
        let target = to.circle_of(circle[0]).expect("untouched circle survives");
        out |= 1 << target;
    }
    out
}

/// Entries `(target labels, coefficient)` of the merge or split map between
/// the resolutions `from` and `to` that differ at one crossing or band.
///
/// `x` and `y` are edges at the change: they lie on the two merging circles
/// of `from`, or on the two new circles of `to` after a split.
pub(crate) fn saddle_images<C: Coefficient>(
    theory: &Theory<C>,
    from: &Resolution,
    to: &Resolution,
    x: crate::diagram::EdgeId,
    y: crate::diagram::EdgeId,
    labels: u32,
) -> Vec<(u32, Poly<C>)> {
    saddle_images_at(theory, from, to, (x, y), (x, y), labels)
}

/// As [`saddle_images`], with the edges locating the output circles given
/// separately (a split may create a circle whose edges are all new).
pub(crate) fn saddle_images_at<C: Coefficient>(
    theory: &Theory<C>,
    from: &Resolution,
    to: &Resolution,
    (x, y): (crate::diagram::EdgeId, crate::diagram::EdgeId),
    (tx, ty): (crate::diagram::EdgeId, crate::diagram::EdgeId),
    labels: u32,
) -> Vec<(u32, Poly<C>)> {
    let a = from.circle_of(x).expect("edge in source");
    let b = from.circle_of(y).expect("edge in source");
    let mut out = Vec::new();
    if a != b {
        let rest = carry_labels(from, to, labels, &[a, b]);
        let m = to.circle_of(tx).expect("edge in target");
        let prod = theory.multiply_basis((labels >> a & 1) as usize, (labels >> b & 1) as usize);
        for (u, c) in prod.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.push((rest | (u as u32) << m, c.clone()));
            }
        }
    } else {
        let rest = carry_labels(from, to, labels, &[a]);
        let (t1, t2) = (to.circle_of(tx).expect("edge"), to.circle_of(ty).expect("edge"));
        debug_assert_ne!(t1, t2, "a split must separate the two edges");
        let delta = theory.comultiply_basis((labels >> a & 1) as usize);
        for (u, row) in delta.iter().enumerate() {
            for (v, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((rest | (u as u32) << t1 | (v as u32) << t2, c.clone()));
                }
            }
        }
    }
    out
}

/// Builds the Khovanov-type complex of `d` for `theory`, checking `d² = 0`.
pub fn build_complex<C: Coefficient>(d: &LinkDiagram, theory: &Theory<C>) -> Result<ChainComplex<C>> {
    let c = build_complex_unchecked(d, theory);
    c.check_d_squared()?;
    Ok(c)
}

/// As [`build_complex`] without the `d² = 0` verification.
pub fn build_complex_unchecked<C: Coefficient>(d: &LinkDiagram, theory: &Theory<C>) -> ChainComplex<C> {
    let n = d.crossing_count();
    let (n_pos, n_neg) = d.sign_counts();
    let resolutions = all_resolutions(d);
    let offsets = block_offsets(&resolutions, n);

    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); n + 1];
    for (mask, res) in resolutions.iter().enumerate() {
        let state = State::new(mask as u32, n);
        let w = state.weight();
        for labels in 0..1u32 << res.circle_count() {
            gens[w].push(Generator {
                r: w as i32 - n_neg as i32,
                q: cube_q(labels, res.circle_count(), state, n_pos, n_neg),
                label: GenLabel::Cube { state, labels },
            });
        }
    }

    let diffs: Vec<SparseMatrix<Poly<C>>> = (0..n)
        .into_par_iter()
        .map(|w| {
            let triplets: Vec<(usize, usize, Poly<C>)> = (0..1u32 << n)
                .into_par_iter()
                .filter(|m| m.count_ones() as usize == w)
                .flat_map_iter(|mask| {
                    let s = State::new(mask, n);
                    let from = &resolutions[mask as usize];
                    let mut out = Vec::new();
                    for i in (0..n).filter(|&i| !s.get(i)) {
                        let t = s.with(i, true);
                        let to = &resolutions[t.mask() as usize];
                        let [p, _, r, _] = d.crossings()[i].edges;
                        // the 0-smoothing arcs sit on p's and r's circles
                        let (x, y) = if from.circle_of(p) != from.circle_of(r) {
                            (p, r)
                        } else {
                            let [(a, _), (b, _)] = smoothing_pairs(d.crossings()[i].edges, true);
                            (a, b)
                        };
                        let negative = edge_sign(s, i);
                        for labels in 0..1u32 << from.circle_count() {
                            let col = offsets[mask as usize] + labels as usize;
                            for (tl, c) in saddle_images(theory, from, to, x, y, labels) {
                                let row = offsets[t.mask() as usize] + tl as usize;
                                out.push((row, col, if negative { -c } else { c }));
                            }
                        }
                    }
                    out
                })
                .collect();
            SparseMatrix::from_triplets(gens[w + 1].len(), gens[w].len(), triplets)
        })
        .collect();

    ChainComplex {
        theory: theory.clone(),
        diagram: Some(d.clone()),
        r_min: -(n_neg as i32),
        gens,
        diffs,
    }
}

/// A degree-preserving (up to declared shifts) map of complexes.
#[derive(Clone)]
pub struct ChainMap<C> {
    pub source: Arc<ChainComplex<C>>,
    pub target: Arc<ChainComplex<C>>,
    pub r_shift: i32,
    /// Internal quantum degree shift.
    pub q_shift: i32,
    /// Set when the map is only defined up to an overall sign.
    pub sign_slack: bool,
    maps: BTreeMap<i32, SparseMatrix<Poly<C>>>,
}

impl<C: Coefficient> ChainMap<C> {
    /// Maps are keyed by source degree; missing degrees are zero.
    pub fn new(
        source: Arc<ChainComplex<C>>,
        target: Arc<ChainComplex<C>>,
        r_shift: i32,
        q_shift: i32,
        maps: BTreeMap<i32, SparseMatrix<Poly<C>>>,
    ) -> Result<Self> {
        for (r, m) in &maps {
            let want = (target.rank(r + r_shift), source.rank(*r));
            if m.shape() != want {
                return Err(Error::ShapeMismatch(format!(
                    "map in degree {r} has shape {:?}, expected {want:?}",
                    m.shape()
                )));
            }
        }
        let maps = maps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(ChainMap { source, target, r_shift, q_shift, sign_slack: false, maps })
    }

    pub fn identity(c: Arc<ChainComplex<C>>) -> Self {
        let maps = c.degrees().map(|r| (r, SparseMatrix::identity(c.rank(r)))).collect();
        ChainMap::new(c.clone(), c, 0, 0, maps).expect("identity shapes")
    }

    pub fn zero(source: Arc<ChainComplex<C>>, target: Arc<ChainComplex<C>>, r_shift: i32, q_shift: i32) -> Self {
        ChainMap::new(source, target, r_shift, q_shift, BTreeMap::new()).expect("zero map")
    }

    pub fn with_sign_slack(mut self, slack: bool) -> Self {
        self.sign_slack = slack;
        self
    }

    /// The matrix out of source degree `r`.
    pub fn at(&self, r: i32) -> SparseMatrix<Poly<C>> {
        self.maps
            .get(&r)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.target.rank(r + self.r_shift), self.source.rank(r)))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    /// Whether `d ∘ f = f ∘ d`, or with sign slack `d ∘ f = ±f ∘ d` for
    /// one sign throughout.
    pub fn is_chain_map(&self) -> bool {
        let mut plus = true;
        let mut minus = self.sign_slack;
        let lo = self.source.r_min() - 1;
        let hi = self.source.r_max();
        for r in lo..=hi {
            let left = self.target.d(r + self.r_shift).compose(&self.at(r));
            let right = self.at(r + 1).compose(&self.source.d(r));
            if left != right {
                plus = false;
            }
            if minus && left != right.neg() {
                minus = false;
            }
            if !plus && !minus {
                return false;
            }
        }
        true
    }

    /// Every entry has the declared internal degree.
    pub fn check_homogeneous(&self) -> Result<()> {
        if !self.source.theory().is_graded() {
            return Ok(());
        }
        for (r, m) in &self.maps {
            let src = self.source.gens(*r);
            let tgt = self.target.gens(r + self.r_shift);
            for (i, j, v) in m.entries() {
                if v.homogeneous_degree().map(|e| tgt[i].q + 2 * e as i32) != Some(src[j].q + self.q_shift) {
                    return Err(Error::NotChainMap(format!(
                        "entry {v:?} at ({i},{j}) in degree {r} is not of degree {}",
                        self.q_shift
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap<C>) -> Result<ChainMap<C>> {
        if !g.target.same_shape(&self.source) {
            return Err(Error::ShapeMismatch("target of the inner map is not the source of the outer".into()));
        }
        let maps = g
            .maps
            .iter()
            .map(|(r, m)| (*r, self.at(r + g.r_shift).compose(m)))
            .collect();
        Ok(ChainMap::new(
            g.source.clone(),
            self.target.clone(),
            self.r_shift + g.r_shift,
            self.q_shift + g.q_shift,
            maps,
        )?
        .with_sign_slack(self.sign_slack || g.sign_slack))
    }

    fn check_parallel(&self, other: &ChainMap<C>) -> Result<()> {
        if !self.source.same_shape(&other.source)
            || !self.target.same_shape(&other.target)
            || self.r_shift != other.r_shift
        {
            return Err(Error::ShapeMismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap<C>) -> Result<ChainMap<C>> {
        self.check_parallel(other)?;
        let degrees: std::collections::BTreeSet<i32> = self.maps.keys().chain(other.maps.keys()).copied().collect();
        let maps = degrees.into_iter().map(|r| (r, self.at(r).add(&other.at(r)))).collect();
        let q_shift = if self.is_zero() { other.q_shift } else { self.q_shift };
        Ok(ChainMap::new(self.source.clone(), self.target.clone(), self.r_shift, q_shift, maps)?
            .with_sign_slack(self.sign_slack || other.sign_slack))
    }

    pub fn neg(&self) -> ChainMap<C> {
        let mut out = self.clone();
        for m in out.maps.values_mut() {
            *m = m.neg();
        }
        out
    }

    pub fn sub(&self, other: &ChainMap<C>) -> Result<ChainMap<C>> {
        self.add(&other.neg())
    }

    /// Multiplies by a homogeneous base-ring element of internal degree
    /// `2·deg(s)`.
    pub fn scale(&self, s: &Poly<C>) -> ChainMap<C> {
        let mut out = self.clone();
        for m in out.maps.values_mut() {
            *m = m.scale(s);
        }
        out.maps.retain(|_, m| !m.is_zero());
        out.q_shift += 2 * s.homogeneous_degree().unwrap_or(0) as i32;
        out
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.maps.keys().copied()
    }
}

impl<C: Coefficient> fmt::Debug for ChainComplex<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<usize> = self.gens.iter().map(Vec::len).collect();
        write!(f, "ChainComplex({}, r from {}, ranks {:?})", self.theory.name(), self.r_min, ranks)
    }
}

impl<C: Coefficient> fmt::Debug for ChainMap<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap(r+{}, q+{}) {:?}", self.r_shift, self.q_shift, self.maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::{F2, Z};

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn unknot_complex() {
        let c = build_complex(&LinkDiagram::unknot(), &Theory::<F2>::bar_natan()).unwrap();
        assert_eq!(c.degrees(), 0..=0);
        assert_eq!(c.rank(0), 2);
        let chi = build_complex(&LinkDiagram::unknot(), &Theory::<F2>::khovanov())
            .unwrap()
            .graded_euler_characteristic()
            .unwrap();
        assert_eq!(chi, Laurent::from_terms(&[(1, 1), (-1, 1)]));
    }

    #[test]
    fn kinked_unknot_complex() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        let c = build_complex(&d, &Theory::<F2>::bar_natan()).unwrap();
        assert_eq!((c.rank(0), c.rank(1)), (4, 2));
        // the merge sends all four label pairs somewhere nonzero
        assert_eq!(c.d(0).nnz(), 4);
        c.check_homogeneous().unwrap();
    }

    #[test]
    fn trefoil_alpha_d_squared() {
        let d = parse_pd(TREFOIL).unwrap();
        let c = build_complex(&d, &Theory::<Z>::alpha()).unwrap();
        assert_eq!(c.total_rank(), 8 + 3 * 4 + 3 * 2 + 4);
        c.check_homogeneous().unwrap();
    }

    #[test]
    fn trefoil_euler_characteristic_is_jones() {
        let d = parse_pd(TREFOIL).unwrap();
        let chi = build_complex(&d, &Theory::<F2>::khovanov()).unwrap().graded_euler_characteristic().unwrap();
        // unnormalized Jones polynomial of the left-handed trefoil
        assert_eq!(chi, Laurent::from_terms(&[(-9, -1), (-5, 1), (-3, 1), (-1, 1)]));
    }

    #[test]
    fn unlink_euler_characteristic() {
        let c = build_complex(&LinkDiagram::unlink(2), &Theory::<F2>::khovanov()).unwrap();
        let u = Laurent::from_terms(&[(1, 1), (-1, 1)]);
        assert_eq!(c.graded_euler_characteristic().unwrap(), u.mul(&u));
    }

    #[test]
    fn euler_characteristic_rejects_polynomial_base() {
        let c = build_complex(&LinkDiagram::unknot(), &Theory::<F2>::bar_natan()).unwrap();
        assert!(c.graded_euler_characteristic().is_err());
    }

    #[test]
    fn identity_and_corruption() {
        let d = parse_pd(TREFOIL).unwrap();
        let c = Arc::new(build_complex(&d, &Theory::<F2>::bar_natan()).unwrap());
        let id = ChainMap::identity(c.clone());
        assert!(id.is_chain_map());
        assert_eq!(id.compose(&id).unwrap().at(-2), id.at(-2));
        let mut maps: BTreeMap<i32, _> = c.degrees().map(|r| (r, id.at(r))).collect();
        let m = maps.get_mut(&-2).unwrap();
        *m = m.add(&SparseMatrix::from_triplets(m.nrows(), m.ncols(), vec![(0, 0, Poly::one())]));
        let bad = ChainMap::new(c.clone(), c, 0, 0, maps).unwrap();
        assert!(!bad.is_chain_map());
    }

    #[test]
    fn shifts_add_under_composition() {
        let c = Arc::new(build_complex(&LinkDiagram::unknot(), &Theory::<F2>::bar_natan()).unwrap());
        let mut f = ChainMap::zero(c.clone(), c.clone(), 1, 0);
        f.r_shift = 1;
        let g = f.compose(&f).unwrap();
        assert_eq!(g.r_shift, 2);
    }
}
