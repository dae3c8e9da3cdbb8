//! Homology over a graded PID `F[t]` (or a field) by monomial elimination.
//!
//! Every differential entry of a graded complex over `F[t]` is a monomial
//! `c·tᵉ`, and the exponent at a position is fixed by the degrees of its
//! row and column. Eliminating a pivot of minimal exponent therefore only
//! changes coefficients elsewhere, and pivoting level by level gives a
//! Smith form of every differential in compatible bases.
//!
//! Each basis change is logged as `y[dst] += m·y[src]` on the coordinates
//! of one degree. Replaying the log forward projects a cycle onto the final
//! basis; replaying it backward recovers representatives. That is all the
//! induced-map machinery needs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainComplex, ChainMap, Generator};
use crate::error::{Error, Result};
use crate::frobenius::{BaseKind, StarAction};
use crate::matrix::SparseMatrix;
use crate::poly::Poly;
use crate::scalar::Coefficient;

/// `c·tᵉ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono<C> {
    pub c: C,
    pub e: u32,
}

impl<C: Coefficient> Mono<C> {
    fn mul(&self, o: &Mono<C>) -> Mono<C> {
        Mono { c: self.c.clone() * o.c.clone(), e: self.e + o.e }
    }

    fn neg(&self) -> Mono<C> {
        Mono { c: -self.c.clone(), e: self.e }
    }

    pub fn to_poly(&self) -> Poly<C> {
        Poly::monomial(self.c.clone(), [self.e, 0])
    }

    fn from_poly(p: &Poly<C>) -> Result<Mono<C>> {
        match p.as_monomial() {
            Some((c, [e, 0])) => Ok(Mono { c, e }),
            Some(_) => Err(Error::UnsupportedRing(
                "two-variable base ring; specialize first".into(),
            )),
            None => Err(Error::UnsupportedRing(format!(
                "entry {p:?} is not a monomial; the complex is not graded"
            ))),
        }
    }
}

/// A logged coordinate change `y[dst] += m·y[src]`.
#[derive(Clone, Debug)]
pub struct Op<C> {
    pub dst: u32,
    pub src: u32,
    pub m: Mono<C>,
}

/// Matrix with monomial entries.
#[derive(Clone, Debug)]
pub struct MonomialMatrix<C> {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<(usize, usize, Mono<C>)>,
}

impl<C: Coefficient> MonomialMatrix<C> {
    pub fn from_sparse(m: &SparseMatrix<Poly<C>>) -> Result<Self> {
        let entries = m
            .entries()
            .map(|(i, j, v)| Ok((i, j, Mono::from_poly(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialMatrix { nrows: m.nrows(), ncols: m.ncols(), entries })
    }
}

/// Result of [`graded_snf`]: pivots in order of nondecreasing exponent,
/// with the column operations (source coordinates) and row operations
/// (target coordinates) that produced them.
#[derive(Clone, Debug)]
pub struct Snf<C> {
    pub diagonal: Vec<(usize, usize, Mono<C>)>,
    pub col_ops: Vec<Op<C>>,
    pub row_ops: Vec<Op<C>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Alive,
    PivotCol,
    PivotRow { order: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Policy {
    All,
    Units,
}

struct Level<C> {
    rows: Vec<BTreeMap<usize, Mono<C>>>,
    cols: Vec<BTreeMap<usize, Mono<C>>>,
    /// `(exponent, row, col)` of every live entry.
    candidates: BTreeSet<(u32, usize, usize)>,
}

impl<C: Coefficient> Level<C> {
    fn new(nrows: usize, ncols: usize) -> Self {
        Level {
            rows: vec![BTreeMap::new(); nrows],
            cols: vec![BTreeMap::new(); ncols],
            candidates: BTreeSet::new(),
        }
    }

    fn add_at(&mut self, i: usize, j: usize, delta: Mono<C>) {
        if delta.c.is_zero() {
            return;
        }
        let e = delta.e;
        let new = match self.cols[j].get(&i) {
            Some(old) => {
                assert_eq!(old.e, e, "inhomogeneous update at ({i},{j})");
                old.c.clone() + delta.c
            }
            None => delta.c,
        };
        if new.is_zero() {
            self.cols[j].remove(&i);
            self.rows[i].remove(&j);
            self.candidates.remove(&(e, i, j));
        } else {
            let m = Mono { c: new, e };
            self.cols[j].insert(i, m.clone());
            self.rows[i].insert(j, m);
            self.candidates.insert((e, i, j));
        }
    }

    fn remove(&mut self, i: usize, j: usize) {
        if let Some(m) = self.cols[j].remove(&i) {
            self.rows[i].remove(&j);
            self.candidates.remove(&(m.e, i, j));
        }
    }
}

struct Eliminator<C> {
    levels: Vec<Level<C>>,
    ops: Vec<Vec<Op<C>>>,
    status: Vec<Vec<Status>>,
}

impl<C: Coefficient> Eliminator<C> {
    fn from_complex(c: &ChainComplex<C>) -> Result<Self> {
        if c.theory().base().variable_count() > 1 {
            return Err(Error::UnsupportedRing(format!(
                "{} has a two-variable base ring; specialize first",
                c.theory().name()
            )));
        }
        if !C::IS_FIELD {
            return Err(Error::UnsupportedRing(format!(
                "coefficients {} are not a field",
                C::NAME
            )));
        }
        let ranks: Vec<usize> = c.degrees().map(|r| c.rank(r)).collect();
        let mut levels = Vec::new();
        for (k, r) in c.degrees().enumerate().take(ranks.len().saturating_sub(1)) {
            let mut level = Level::new(ranks[k + 1], ranks[k]);
            if let Some(d) = c.d_ref(r) {
                for (i, j, v) in d.entries() {
                    level.add_at(i, j, Mono::from_poly(v)?);
                }
            }
            levels.push(level);
        }
        Ok(Eliminator {
            levels,
            ops: vec![Vec::new(); ranks.len()],
            status: ranks.iter().map(|&n| vec![Status::Alive; n]).collect(),
        })
    }

    /// Isolates the entry `(i, j)` of level `k` and retires its row and column.
    fn pivot(&mut self, k: usize, i: usize, j: usize) {
        let p = self.levels[k].cols[j][&i].clone();
        let inv = p.c.inverse().expect("pivot coefficient is a unit");

        let others: Vec<(usize, Mono<C>)> =
            self.levels[k].cols[j].iter().filter(|(r, _)| **r != i).map(|(r, m)| (*r, m.clone())).collect();
        let pivot_row: Vec<(usize, Mono<C>)> =
            self.levels[k].rows[i].iter().map(|(c, m)| (*c, m.clone())).collect();
        for (i2, v) in others {
            // row_i2 −= f·row_i, i.e. y[i2] −= f·y[i] in degree k+1
            let f = Mono { c: v.c * inv.clone(), e: v.e - p.e };
            for (j2, w) in &pivot_row {
                self.levels[k].add_at(i2, *j2, f.mul(w).neg());
            }
            self.ops[k + 1].push(Op { dst: i2 as u32, src: i as u32, m: f.neg() });
            if let Some(next) = self.levels.get_mut(k + 1) {
                let col: Vec<(usize, Mono<C>)> = next.cols[i2].iter().map(|(r, m)| (*r, m.clone())).collect();
                for (r, w) in col {
                    next.add_at(r, i, f.mul(&w));
                }
            }
        }

        let others: Vec<(usize, Mono<C>)> =
            self.levels[k].rows[i].iter().filter(|(c, _)| **c != j).map(|(c, m)| (*c, m.clone())).collect();
        for (j2, v) in others {
            // col_j2 −= f·col_j, i.e. y[j] += f·y[j2] in degree k
            let f = Mono { c: v.c * inv.clone(), e: v.e - p.e };
            self.levels[k].add_at(i, j2, f.mul(&p).neg());
            self.ops[k].push(Op { dst: j as u32, src: j2 as u32, m: f.clone() });
            if k > 0 {
                let prev = &mut self.levels[k - 1];
                let row: Vec<(usize, Mono<C>)> = prev.rows[j2].iter().map(|(c, m)| (*c, m.clone())).collect();
                for (c, w) in row {
                    prev.add_at(j, c, f.mul(&w));
                }
            }
        }

        self.levels[k].remove(i, j);
        self.status[k][j] = Status::PivotCol;
        self.status[k + 1][i] = Status::PivotRow { order: p.e };
    }

    fn run(&mut self, policy: Policy) {
        loop {
            let mut changed = false;
            for k in 0..self.levels.len() {
                while let Some(&(e, i, j)) = self.levels[k].candidates.first() {
                    if policy == Policy::Units && e > 0 {
                        break;
                    }
                    self.pivot(k, i, j);
                    changed = true;
                }
            }
            if !changed || policy == Policy::All {
                break;
            }
        }
    }

    fn pivot_given(&mut self, k: usize, i: usize, j: usize) -> Result<()> {
        match self.levels.get(k).and_then(|l| l.cols.get(j)).and_then(|c| c.get(&i)) {
            Some(m) if m.e == 0 && m.c.is_unit() => {
                self.pivot(k, i, j);
                Ok(())
            }
            _ => Err(Error::Precondition(format!("no unit entry at ({i},{j}) of level {k}"))),
        }
    }
}

fn replay_forward<C: Coefficient>(ops: &[Op<C>], y: &mut [Poly<C>]) {
    for op in ops {
        let s = &y[op.src as usize];
        if !s.is_zero() {
            let add = &op.m.to_poly() * s;
            let d = &mut y[op.dst as usize];
            *d = &*d + &add;
        }
    }
}

fn replay_inverse<C: Coefficient>(ops: &[Op<C>], y: &mut [Poly<C>]) {
    for op in ops.iter().rev() {
        let s = &y[op.src as usize];
        if !s.is_zero() {
            let sub = &op.m.to_poly() * s;
            let d = &mut y[op.dst as usize];
            *d = &*d - &sub;
        }
    }
}

fn replay_transpose<C: Coefficient>(ops: &[Op<C>], w: &mut [Poly<C>]) {
    for op in ops.iter().rev() {
        let d = &w[op.dst as usize];
        if !d.is_zero() {
            let add = &op.m.to_poly() * d;
            let s = &mut w[op.src as usize];
            *s = &*s + &add;
        }
    }
}

/// Smith form of a single homogeneous matrix over `F[t]`.
pub fn graded_snf<C: Coefficient>(m: &MonomialMatrix<C>) -> Result<Snf<C>> {
    if !C::IS_FIELD {
        return Err(Error::UnsupportedRing(format!("coefficients {} are not a field", C::NAME)));
    }
    let mut level = Level::new(m.nrows, m.ncols);
    for (i, j, v) in &m.entries {
        level.add_at(*i, *j, v.clone());
    }
    let mut el = Eliminator {
        levels: vec![level],
        ops: vec![Vec::new(), Vec::new()],
        status: vec![vec![Status::Alive; m.ncols], vec![Status::Alive; m.nrows]],
    };
    let mut diagonal = Vec::new();
    while let Some(&(_, i, j)) = el.levels[0].candidates.first() {
        let p = el.levels[0].cols[j][&i].clone();
        el.pivot(0, i, j);
        diagonal.push((i, j, p));
    }
    let mut ops = el.ops.into_iter();
    let col_ops = ops.next().unwrap_or_default();
    let row_ops = ops.next().unwrap_or_default();
    Ok(Snf { diagonal, col_ops, row_ops })
}

/// A generator of homology: free, or cyclic of order `tᵏ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGenerator {
    pub r: i32,
    /// Internal quantum degree.
    pub q: i32,
    /// Position in the final basis of its chain group.
    pub index: usize,
    pub order: Option<u32>,
}

/// Homology of a complex with the data needed to push maps through it.
#[derive(Clone)]
pub struct Homology<C> {
    complex: Arc<ChainComplex<C>>,
    ops: Vec<Vec<Op<C>>>,
    status: Vec<Vec<Status>>,
    gens: Vec<Vec<HomologyGenerator>>,
}

impl<C: Coefficient> Homology<C> {
    pub fn compute(complex: Arc<ChainComplex<C>>) -> Result<Self> {
        let mut el = Eliminator::from_complex(&complex)?;
        el.run(Policy::All);
        let mut gens = Vec::new();
        for (k, r) in complex.degrees().enumerate() {
            let mut list = Vec::new();
            for (idx, s) in el.status[k].iter().enumerate() {
                let order = match s {
                    Status::Alive => None,
                    Status::PivotRow { order } if *order > 0 => Some(*order),
                    _ => continue,
                };
                list.push(HomologyGenerator { r, q: complex.gens(r)[idx].q, index: idx, order });
            }
            gens.push(list);
        }
        Ok(Homology { complex, ops: el.ops, status: el.status, gens })
    }

    pub fn complex(&self) -> &Arc<ChainComplex<C>> {
        &self.complex
    }

    pub fn gens(&self, r: i32) -> &[HomologyGenerator] {
        let k = r - self.complex.r_min();
        if k < 0 || k as usize >= self.gens.len() {
            &[]
        } else {
            &self.gens[k as usize]
        }
    }

    fn slot(&self, r: i32) -> Option<usize> {
        let k = r - self.complex.r_min();
        (k >= 0 && (k as usize) < self.gens.len()).then_some(k as usize)
    }

    /// Coordinates of the class of a cycle `z` (original basis, degree `r`)
    /// on the homology generators of degree `r`; torsion coordinates are
    /// reduced modulo `tᵏ`.
    pub fn project(&self, r: i32, z: &[Poly<C>]) -> Result<Vec<Poly<C>>> {
        let Some(k) = self.slot(r) else {
            return Ok(Vec::new());
        };
        if z.len() != self.complex.rank(r) {
            return Err(Error::ShapeMismatch(format!("vector of length {} in degree {r}", z.len())));
        }
        let mut y = z.to_vec();
        replay_forward(&self.ops[k], &mut y);
        for (idx, s) in self.status[k].iter().enumerate() {
            if *s == Status::PivotCol && !y[idx].is_zero() {
                return Err(Error::Precondition(format!("vector in degree {r} is not a cycle")));
            }
        }
        Ok(self.gens[k].iter().map(|g| truncate(&y[g.index], g.order)).collect())
    }

    /// A cycle representing homology generator `g` of degree `r`.
    pub fn representative(&self, r: i32, g: usize) -> Vec<Poly<C>> {
        let k = self.slot(r).expect("degree in range");
        let mut y = vec![Poly::zero(); self.complex.rank(r)];
        y[self.gens[k][g].index] = Poly::one();
        replay_inverse(&self.ops[k], &mut y);
        y
    }

    /// Torsion orders of every torsion summand.
    pub fn torsion_orders(&self) -> Vec<u32> {
        self.gens.iter().flatten().filter_map(|g| g.order).collect()
    }

    pub fn summary(&self, knot: &str) -> HomologySummary {
        let theory = self.complex.theory();
        let graded = theory.is_graded();
        let q_of = |g: &HomologyGenerator| graded.then_some(-g.q);
        let mut free: BTreeMap<(i32, Option<i32>), usize> = BTreeMap::new();
        let mut torsion = Vec::new();
        for g in self.gens.iter().flatten() {
            match g.order {
                None => *free.entry((g.r, q_of(g))).or_default() += 1,
                Some(order) => torsion.push(TorsionEntry { r: g.r, q: q_of(g), order }),
            }
        }
        torsion.sort();
        let mut s = HomologySummary {
            theory: theory.name().to_string(),
            knot: knot.to_string(),
            free: free.into_iter().map(|((r, q), rank)| FreeEntry { r, q, rank }).collect(),
            torsion,
            mu: None,
            nu_phi: None,
            note: None,
        };
        let t_order = s.torsion_order();
        if theory.roots().is_some() {
            match theory.star_action() {
                StarAction::Variable(_) => s.nu_phi = Some(t_order),
                StarAction::Invertible => {
                    s.nu_phi = Some(0);
                    s.note = Some("X_* is invertible at this specialization".into());
                }
                StarAction::Unsupported => {
                    s.note = Some("X_* is neither a unit multiple of t nor invertible here".into())
                }
            }
        } else if theory.base().kind != BaseKind::Constant {
            s.mu = Some(t_order);
        }
        s
    }

    /// The identity of this homology.
    pub fn identity_map(&self) -> HomologyMap<C> {
        let blocks = self
            .complex
            .degrees()
            .map(|r| {
                let n = self.gens(r).len();
                let mut m = vec![vec![Poly::zero(); n]; n];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = truncate(&Poly::one(), self.gens(r)[i].order);
                }
                (r, m)
            })
            .collect();
        HomologyMap { r_shift: 0, source: self.all_gens(), target: self.all_gens(), blocks }
    }

    fn all_gens(&self) -> BTreeMap<i32, Vec<HomologyGenerator>> {
        self.complex.degrees().map(|r| (r, self.gens(r).to_vec())).collect()
    }
}

fn truncate<C: Coefficient>(p: &Poly<C>, order: Option<u32>) -> Poly<C> {
    match order {
        None => p.clone(),
        Some(k) => Poly::from_terms(p.terms().iter().filter(|(e, _)| e[0] < k).cloned()),
    }
}

/// Free summand count in one bidegree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeEntry {
    pub r: i32,
    /// Conventional quantum degree; absent for ungraded theories.
    pub q: Option<i32>,
    pub rank: usize,
}

/// One cyclic torsion summand `F[t]/(tᵏ)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub r: i32,
    pub q: Option<i32>,
    pub order: u32,
}

/// Bigraded ranks and torsion of a homology computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub theory: String,
    pub knot: String,
    pub free: Vec<FreeEntry>,
    pub torsion: Vec<TorsionEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu_phi: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl HomologySummary {
    /// Largest torsion order, 0 when torsion-free.
    pub fn torsion_order(&self) -> u32 {
        self.torsion.iter().map(|t| t.order).max().unwrap_or(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free.iter().map(|f| f.rank).sum()
    }

    /// The summary of the submodule `tᵈ·H`: free parts shift by `d` in the
    /// variable, torsion of order `k > d` drops to `k − d`, the rest dies.
    pub fn scaled_by_power(&self, d: u32) -> HomologySummary {
        let shift = |q: Option<i32>| q.map(|q| q - 2 * d as i32);
        let mut out = self.clone();
        out.free = self.free.iter().map(|f| FreeEntry { r: f.r, q: shift(f.q), rank: f.rank }).collect();
        out.torsion = self
            .torsion
            .iter()
            .filter(|t| t.order > d)
            .map(|t| TorsionEntry { r: t.r, q: shift(t.q), order: t.order - d })
            .collect();
        out.torsion.sort();
        out.mu = self.mu.map(|m| m.saturating_sub(d));
        out.nu_phi = self.nu_phi.map(|m| m.saturating_sub(d));
        out
    }

    /// Same free ranks and torsion, ignoring names.
    pub fn same_module(&self, other: &HomologySummary) -> bool {
        self.free == other.free && self.torsion == other.torsion
    }
}

/// Torsion order of a summary (μ for Bar-Natan theory, ν_φ at a specialization).
pub fn torsion_order(s: &HomologySummary) -> u32 {
    s.torsion_order()
}

/// A map on homology, as dense blocks per source degree (target × source).
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyMap<C: Coefficient> {
    pub r_shift: i32,
    pub source: BTreeMap<i32, Vec<HomologyGenerator>>,
    pub target: BTreeMap<i32, Vec<HomologyGenerator>>,
    pub blocks: BTreeMap<i32, Vec<Vec<Poly<C>>>>,
}

impl<C: Coefficient> HomologyMap<C> {
    pub fn is_zero(&self) -> bool {
        self.blocks.values().flatten().flatten().all(Poly::is_zero)
    }

    fn reduce_entries(&mut self) {
        for (r, block) in self.blocks.iter_mut() {
            let tg = self.target.get(&(r + self.r_shift)).cloned().unwrap_or_default();
            for (i, row) in block.iter_mut().enumerate() {
                for v in row.iter_mut() {
                    *v = truncate(v, tg[i].order);
                }
            }
        }
    }

    pub fn scale(&self, s: &Poly<C>) -> HomologyMap<C> {
        let mut out = self.clone();
        for v in out.blocks.values_mut().flatten().flatten() {
            *v = &*v * s;
        }
        out.reduce_entries();
        out
    }

    pub fn neg(&self) -> HomologyMap<C> {
        self.scale(&-Poly::one())
    }

    fn check_parallel(&self, other: &HomologyMap<C>) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.r_shift != other.r_shift {
            return Err(Error::ShapeMismatch("homology maps have different presentations".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomologyMap<C>) -> Result<HomologyMap<C>> {
        self.check_parallel(other)?;
        let mut out = self.clone();
        for (r, block) in out.blocks.iter_mut() {
            let ob = &other.blocks[r];
            for (i, row) in block.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = &*v + &ob[i][j];
                }
            }
        }
        out.reduce_entries();
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomologyMap<C>) -> Result<HomologyMap<C>> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch("homology maps do not compose".into()));
        }
        let mut blocks = BTreeMap::new();
        for (r, inner) in &other.blocks {
            let mid = r + other.r_shift;
            let outer = &self.blocks[&mid];
            let rows = outer.len();
            let cols = inner.first().map_or(other.source[r].len(), Vec::len);
            let mut m = vec![vec![Poly::zero(); cols]; rows];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    for (k, inner_row) in inner.iter().enumerate() {
                        *v = &*v + &(&outer[i][k] * &inner_row[j]);
                    }
                }
            }
            blocks.insert(*r, m);
        }
        let mut out = HomologyMap {
            r_shift: self.r_shift + other.r_shift,
            source: other.source.clone(),
            target: self.target.clone(),
            blocks,
        };
        out.reduce_entries();
        Ok(out)
    }
}

/// The map induced on homology by a chain map.
pub fn induced_map<C: Coefficient>(
    f: &ChainMap<C>,
    source: &Homology<C>,
    target: &Homology<C>,
) -> Result<HomologyMap<C>> {
    if !source.complex.same_shape(&f.source) || !target.complex.same_shape(&f.target) {
        return Err(Error::ShapeMismatch("homology computed for other complexes".into()));
    }
    if !f.is_chain_map() {
        return Err(Error::NotChainMap("cannot induce a map on homology".into()));
    }
    let mut blocks = BTreeMap::new();
    for r in source.complex.degrees() {
        let tr = r + f.r_shift;
        let m = f.at(r);
        let tgens = target.gens(tr).len();
        let mut block = vec![vec![Poly::zero(); source.gens(r).len()]; tgens];
        for g in 0..source.gens(r).len() {
            let rep = source.representative(r, g);
            let sparse: Vec<(usize, Poly<C>)> =
                rep.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect();
            let image = m.apply(&sparse);
            if tgens == 0 {
                continue;
            }
            let mut dense = vec![Poly::zero(); target.complex.rank(tr)];
            for (i, v) in image {
                dense[i] = v;
            }
            let coords = target.project(tr, &dense)?;
            for (i, c) in coords.into_iter().enumerate() {
                block[i][g] = c;
            }
        }
        blocks.insert(r, block);
    }
    let source_gens = source.all_gens();
    let target_gens: BTreeMap<i32, Vec<HomologyGenerator>> =
        source.complex.degrees().map(|r| (r + f.r_shift, target.gens(r + f.r_shift).to_vec())).collect();
    let mut target_all = target.all_gens();
    target_all.extend(target_gens);
    Ok(HomologyMap { r_shift: f.r_shift, source: source_gens, target: target_all, blocks })
}

/// Equality of induced maps, optionally up to one global sign.
pub fn maps_equal_on_homology<C: Coefficient>(
    f: &HomologyMap<C>,
    g: &HomologyMap<C>,
    sign_slack: bool,
) -> Result<bool> {
    f.check_parallel(g)?;
    if f.blocks == g.blocks {
        return Ok(true);
    }
    Ok(sign_slack && f.blocks == g.neg().blocks)
}

/// A smaller homotopy-equivalent complex with the comparison maps.
#[derive(Clone)]
pub struct Reduction<C> {
    pub complex: Arc<ChainComplex<C>>,
    /// Reduced → original.
    pub iota: ChainMap<C>,
    /// Original → reduced.
    pub pi: ChainMap<C>,
}

fn finish_reduction<C: Coefficient>(c: Arc<ChainComplex<C>>, el: Eliminator<C>) -> Result<Reduction<C>> {
    let degrees: Vec<i32> = c.degrees().collect();
    let alive: Vec<Vec<usize>> = el
        .status
        .iter()
        .map(|s| s.iter().enumerate().filter(|(_, s)| **s == Status::Alive).map(|(i, _)| i).collect())
        .collect();
    let position: Vec<BTreeMap<usize, usize>> =
        alive.iter().map(|a| a.iter().enumerate().map(|(n, &i)| (i, n)).collect()).collect();

    let gens: Vec<Vec<Generator>> = degrees
        .iter()
        .enumerate()
        .map(|(k, &r)| alive[k].iter().map(|&i| c.gens(r)[i].clone()).collect())
        .collect();
    let mut diffs = Vec::new();
    for (k, level) in el.levels.iter().enumerate() {
        let mut trip = Vec::new();
        for (j, col) in level.cols.iter().enumerate() {
            for (i, m) in col {
                let (Some(&ni), Some(&nj)) = (position[k + 1].get(i), position[k].get(&j)) else {
                    return Err(Error::Precondition("entry left on a retired generator".into()));
                };
                trip.push((ni, nj, m.to_poly()));
            }
        }
        diffs.push(SparseMatrix::from_triplets(alive[k + 1].len(), alive[k].len(), trip));
    }
    let reduced = Arc::new(ChainComplex::from_parts(
        c.theory().clone(),
        c.diagram().cloned(),
        c.r_min(),
        gens,
        diffs,
    )?);

    let mut iota = BTreeMap::new();
    let mut pi = BTreeMap::new();
    for (k, &r) in degrees.iter().enumerate() {
        let n = c.rank(r);
        let mut icols = Vec::new();
        let mut prow = Vec::new();
        for (pos, &g) in alive[k].iter().enumerate() {
            let mut y = vec![Poly::zero(); n];
            y[g] = Poly::one();
            replay_inverse(&el.ops[k], &mut y);
            icols.push(y.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect::<Vec<_>>());
            let mut w = vec![Poly::zero(); n];
            w[g] = Poly::one();
            replay_transpose(&el.ops[k], &mut w);
            prow.extend(w.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(j, p)| (pos, j, p)));
        }
        iota.insert(r, SparseMatrix::from_columns(n, icols));
        pi.insert(r, SparseMatrix::from_triplets(alive[k].len(), n, prow));
    }
    let iota = ChainMap::new(reduced.clone(), c.clone(), 0, 0, iota)?;
    let pi = ChainMap::new(c, reduced.clone(), 0, 0, pi)?;
    Ok(Reduction { complex: reduced, iota, pi })
}

/// Cancels every unit entry.
pub fn reduce<C: Coefficient>(c: Arc<ChainComplex<C>>) -> Result<Reduction<C>> {
    let mut el = Eliminator::from_complex(&c)?;
    el.run(Policy::Units);
    finish_reduction(c, el)
}

/// Cancels the given unit entries, in order. Each pair is
/// `(r, row in degree r+1, column in degree r)`.
pub fn eliminate_pairs<C: Coefficient>(
    c: Arc<ChainComplex<C>>,
    pairs: &[(i32, usize, usize)],
) -> Result<Reduction<C>> {
    let mut el = Eliminator::from_complex(&c)?;
    for &(r, i, j) in pairs {
        let k = r - c.r_min();
        if k < 0 {
            return Err(Error::Precondition(format!("degree {r} below the complex")));
        }
        el.pivot_given(k as usize, i, j)?;
    }
    finish_reduction(c, el)
}
