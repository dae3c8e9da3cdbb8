//! Rank-two Frobenius systems `A = R[X]/(X² − aX − b)`.
//!
//! Every theory in the crate is of this shape. With basis `(1, X)` the
//! structure maps are
//!
//! ```text
//! m(X ⊗ X) = aX + b     Δ(1) = 1⊗X + X⊗1 − a·1⊗1     ε(1) = 0
//! ι(1)     = 1          Δ(X) = X⊗X + b·1⊗1           ε(X) = 1
//! ```
//!
//! Bar-Natan theory is `a = h, b = 0` over 𝔽₂[h]; α-theory is
//! `a = α₁+α₂, b = −α₁α₂` over ℤ[α₁,α₂]. The counit of α-theory is not
//! given explicitly in the literature; the values above are the unique
//! linear ones satisfying the counit law, and are checked by
//! [`Theory::check_axioms`].

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Coefficient, Fp};
use crate::Q;

/// Which graded ring the structure constants live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// 𝔽₂[h].
    BarNatan,
    /// ℤ[α₁, α₂].
    Alpha,
    /// F[t] for a prime field or ℚ.
    Univariate,
    /// The coefficient ring itself, no variables.
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseRing {
    pub kind: BaseKind,
    /// Variable names, in order. Each variable has degree 2.
    pub variables: Vec<&'static str>,
    /// Name of the coefficient ring (`f2`, `q`, `z`, ...).
    pub coefficients: &'static str,
}

impl BaseRing {
    pub const VARIABLE_DEGREE: i32 = 2;

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    /// Whether `p` only mentions variables of this ring.
    pub fn contains<C: Coefficient>(&self, p: &Poly<C>) -> bool {
        p.terms().iter().all(|(e, _)| {
            (0..2).all(|v| e[v] == 0 || v < self.variable_count())
        })
    }

    pub fn display<'a, C: Coefficient>(&'a self, p: &'a Poly<C>) -> impl fmt::Display + 'a {
        p.display_with(&self.variables)
    }
}

/// Basis index: 0 is `1`, 1 is `X`.
pub type Basis = usize;
pub const ONE: Basis = 0;
pub const X: Basis = 1;

/// `p·1 + q·X`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement<C> {
    pub coeffs: [Poly<C>; 2],
}

impl<C: Coefficient> AlgebraElement<C> {
    pub fn new(one: Poly<C>, x: Poly<C>) -> Self {
        AlgebraElement { coeffs: [one, x] }
    }

    pub fn zero() -> Self {
        Self::new(Poly::zero(), Poly::zero())
    }

    pub fn one() -> Self {
        Self::basis(ONE)
    }

    pub fn x() -> Self {
        Self::basis(X)
    }

    pub fn basis(i: Basis) -> Self {
        let mut e = Self::zero();
        e.coeffs[i] = Poly::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, r: &Poly<C>) -> Self {
        Self::new(&self.coeffs[0] * r, &self.coeffs[1] * r)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.coeffs[0] + &other.coeffs[0], &self.coeffs[1] + &other.coeffs[1])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.coeffs[0] - &other.coeffs[0], &self.coeffs[1] - &other.coeffs[1])
    }

    pub fn display<'a>(&'a self, base: &'a BaseRing) -> impl fmt::Display + 'a {
        ElementDisplay { e: self, base }
    }
}

struct ElementDisplay<'a, C> {
    e: &'a AlgebraElement<C>,
    base: &'a BaseRing,
}

impl<C: Coefficient> fmt::Display for ElementDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q] = &self.e.coeffs;
        match (p.is_zero(), q.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.base.display(p)),
            (true, false) => write!(f, "({})X", self.base.display(q)),
            (false, false) => write!(f, "{} + ({})X", self.base.display(p), self.base.display(q)),
        }
    }
}

impl<C: Coefficient> fmt::Debug for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + ({:?})X", self.coeffs[0], self.coeffs[1])
    }
}

/// Coefficients of `Σ c_ij · bᵢ ⊗ bⱼ`.
pub type Tensor2<C> = [[Poly<C>; 2]; 2];

/// A decoration carried by a surface: a dot, a digit, the star, or a scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Decoration<C: Coefficient> {
    /// Multiplication by X.
    Dot,
    /// Multiplication by X − α₁.
    Digit1,
    /// Multiplication by X − α₂.
    Digit2,
    /// Multiplication by X_* = 2X − (α₁ + α₂).
    Star,
    Scalar(Poly<C>),
}

impl<C: Coefficient> Decoration<C> {
    pub fn name(&self) -> &'static str {
        match self {
            Decoration::Dot => "dot",
            Decoration::Digit1 => "digit1",
            Decoration::Digit2 => "digit2",
            Decoration::Star => "star",
            Decoration::Scalar(_) => "scalar",
        }
    }
}

/// How the star acts at a specialization, for measuring X_*-torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarAction<C> {
    /// X_* is `c·t` with `c` a unit: torsion in `t` is X_*-torsion.
    Variable(C),
    /// X_* is invertible on A, so nothing is X_*-torsion.
    Invertible,
    /// Neither; the t-torsion order says nothing about X_*.
    Unsupported,
}

/// One cap/cup decomposition of the identity tube: the identity equals
/// `Σ scalar · out · ε(inner · a)`.
#[derive(Clone, Debug)]
pub struct NeckCut<C: Coefficient> {
    pub name: &'static str,
    pub terms: Vec<(AlgebraElement<C>, AlgebraElement<C>, Poly<C>)>,
}

#[derive(Clone, Debug)]
pub struct NeckCutReport<C: Coefficient> {
    /// Per decomposition: `Ok` or a basis element where it fails.
    pub results: Vec<(&'static str, std::result::Result<(), AlgebraElement<C>>)>,
    /// Whether all decompositions agree with each other on the basis.
    pub orderings_agree: bool,
}

impl<C: Coefficient> NeckCutReport<C> {
    pub fn holds(&self) -> bool {
        self.orderings_agree && self.results.iter().all(|(_, r)| r.is_ok())
    }
}

/// A rank-two Frobenius system with `X² = aX + b`.
#[derive(Clone, PartialEq, Eq)]
pub struct Theory<C> {
    name: String,
    base: BaseRing,
    a: Poly<C>,
    b: Poly<C>,
    /// `(α₁, α₂)` for α-theory and its specializations.
    roots: Option<[Poly<C>; 2]>,
}

impl<C: Coefficient> fmt::Debug for Theory<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Theory({}: X^2 = ({})X + ({}))",
            self.name,
            self.base.display(&self.a),
            self.base.display(&self.b)
        )
    }
}

impl<C: Coefficient> Theory<C> {
    /// `X² = hX` over C[h].
    pub fn bar_natan() -> Self {
        let kind = if C::CHARACTERISTIC == 2 { BaseKind::BarNatan } else { BaseKind::Univariate };
        Theory {
            name: if C::CHARACTERISTIC == 2 { "bn".into() } else { format!("bn/{}", C::NAME) },
            base: BaseRing { kind, variables: vec!["h"], coefficients: C::NAME },
            a: Poly::var(0),
            b: Poly::zero(),
            roots: None,
        }
    }

    /// `X² = 0` over the coefficient ring: Khovanov's original theory.
    pub fn khovanov() -> Self {
        Theory {
            name: format!("kh-{}", C::NAME),
            base: BaseRing { kind: BaseKind::Constant, variables: vec![], coefficients: C::NAME },
            a: Poly::zero(),
            b: Poly::zero(),
            roots: None,
        }
    }

    /// `(X − α₁)(X − α₂) = 0` over C[α₁, α₂].
    pub fn alpha() -> Self {
        let a1 = Poly::var(0);
        let a2 = Poly::var(1);
        Theory {
            name: if C::NAME == "z" { "alpha".into() } else { format!("alpha/{}", C::NAME) },
            base: BaseRing {
                kind: BaseKind::Alpha,
                variables: vec!["a1", "a2"],
                coefficients: C::NAME,
            },
            a: &a1 + &a2,
            b: -(&a1 * &a2),
            roots: Some([a1, a2]),
        }
    }

    /// A theory given by its quadratic, with optional roots for digits.
    pub fn from_quadratic(
        name: impl Into<String>,
        base: BaseRing,
        a: Poly<C>,
        b: Poly<C>,
        roots: Option<[Poly<C>; 2]>,
    ) -> Result<Self> {
        let t = Theory { name: name.into(), base, a, b, roots };
        if !t.base.contains(&t.a) || !t.base.contains(&t.b) {
            return Err(Error::TheoryMismatch("structure constants outside the base ring".into()));
        }
        if let Some([r1, r2]) = &t.roots {
            if (r1 + r2) != t.a || -(r1 * r2) != t.b {
                return Err(Error::TheoryMismatch("roots do not factor the quadratic".into()));
            }
        }
        t.check_axioms().map_err(Error::TheoryMismatch)?;
        Ok(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    /// `(a, b)` with `X² = aX + b`.
    pub fn quadratic(&self) -> (&Poly<C>, &Poly<C>) {
        (&self.a, &self.b)
    }

    pub fn roots(&self) -> Option<&[Poly<C>; 2]> {
        self.roots.as_ref()
    }

    /// Internal degree of X.
    pub fn degree_of_x(&self) -> i32 {
        2
    }

    /// Whether the structure constants are homogeneous, so that the
    /// internal grading survives.
    pub fn is_graded(&self) -> bool {
        let ok = |p: &Poly<C>, d: u32| p.is_zero() || p.homogeneous_degree() == Some(d);
        ok(&self.a, 1) && ok(&self.b, 2)
    }

    fn check_element(&self, a: &AlgebraElement<C>) -> Result<()> {
        if a.coeffs.iter().all(|p| self.base.contains(p)) {
            Ok(())
        } else {
            Err(Error::TheoryMismatch(format!(
                "element uses variables outside {}",
                self.name
            )))
        }
    }

    /// Product of basis elements.
    pub fn multiply_basis(&self, i: Basis, j: Basis) -> AlgebraElement<C> {
        match (i, j) {
            (ONE, k) | (k, ONE) => AlgebraElement::basis(k),
            _ => AlgebraElement::new(self.b.clone(), self.a.clone()),
        }
    }

    pub fn multiply(&self, x: &AlgebraElement<C>, y: &AlgebraElement<C>) -> Result<AlgebraElement<C>> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &AlgebraElement<C>, y: &AlgebraElement<C>) -> AlgebraElement<C> {
        let mut out = AlgebraElement::zero();
        for i in 0..2 {
            for j in 0..2 {
                let c = &x.coeffs[i] * &y.coeffs[j];
                if !c.is_zero() {
                    out = out.add(&self.multiply_basis(i, j).scale(&c));
                }
            }
        }
        out
    }

    /// Δ of a basis element.
    pub fn comultiply_basis(&self, i: Basis) -> Tensor2<C> {
        let z = Poly::zero;
        match i {
            ONE => [[-&self.a, Poly::one()], [Poly::one(), z()]],
            _ => [[self.b.clone(), z()], [z(), Poly::one()]],
        }
    }

    pub fn comultiply(&self, x: &AlgebraElement<C>) -> Result<Tensor2<C>> {
        self.check_element(x)?;
        Ok(self.comul(x))
    }

    pub(crate) fn comul(&self, x: &AlgebraElement<C>) -> Tensor2<C> {
        let mut out: Tensor2<C> = Default::default();
        for (k, c) in x.coeffs.iter().enumerate() {
            let t = self.comultiply_basis(k);
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = &out[i][j] + &(&t[i][j] * c);
                }
            }
        }
        out
    }

    pub fn counit(&self, x: &AlgebraElement<C>) -> Result<Poly<C>> {
        self.check_element(x)?;
        Ok(x.coeffs[X].clone())
    }

    pub fn unit(&self) -> AlgebraElement<C> {
        AlgebraElement::one()
    }

    /// The algebra element a decoration multiplies by.
    pub fn decoration_element(&self, dec: &Decoration<C>) -> Result<AlgebraElement<C>> {
        let x = AlgebraElement::x();
        match dec {
            Decoration::Dot => Ok(x),
            Decoration::Scalar(r) => {
                if !self.base.contains(r) {
                    return Err(Error::TheoryMismatch("scalar outside the base ring".into()));
                }
                Ok(AlgebraElement::one().scale(r))
            }
            Decoration::Digit1 | Decoration::Digit2 | Decoration::Star => {
                let [r1, r2] = self.roots.as_ref().ok_or_else(|| {
                    Error::TheoryMismatch(format!("{} has no digits or star", self.name))
                })?;
                Ok(match dec {
                    Decoration::Digit1 => AlgebraElement::new(-r1, Poly::one()),
                    Decoration::Digit2 => AlgebraElement::new(-r2, Poly::one()),
                    _ => AlgebraElement::new(-&self.a, Poly::from_i64(2)),
                })
            }
        }
    }

    pub fn dot_action(&self, dec: &Decoration<C>, x: &AlgebraElement<C>) -> Result<AlgebraElement<C>> {
        let d = self.decoration_element(dec)?;
        self.multiply(&d, x)
    }

    /// Internal degree shift of a decoration, if it is homogeneous.
    pub fn decoration_degree(&self, dec: &Decoration<C>) -> Result<i32> {
        let e = self.decoration_element(dec)?;
        element_degree(&e).ok_or_else(|| {
            Error::TheoryMismatch(format!("{} is not homogeneous in {}", dec.name(), self.name))
        })
    }

    /// Exhaustive check of the Frobenius axioms on the basis.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let basis = [AlgebraElement::<C>::one(), AlgebraElement::x()];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let l = self.mul(&self.mul(&basis[i], &basis[j]), &basis[k]);
                    let r = self.mul(&basis[i], &self.mul(&basis[j], &basis[k]));
                    if l != r {
                        return Err(format!("associativity fails at ({i},{j},{k})"));
                    }
                }
                if self.mul(&basis[i], &basis[j]) != self.mul(&basis[j], &basis[i]) {
                    return Err(format!("commutativity fails at ({i},{j})"));
                }
            }
        }
        for i in 0..2 {
            let d = self.comultiply_basis(i);
            // (Δ⊗id)Δ and (id⊗Δ)Δ as 3-tensors
            let mut left: [[[Poly<C>; 2]; 2]; 2] = Default::default();
            let mut right: [[[Poly<C>; 2]; 2]; 2] = Default::default();
            for p in 0..2 {
                for q in 0..2 {
                    if d[p][q].is_zero() {
                        continue;
                    }
                    let dp = self.comultiply_basis(p);
                    let dq = self.comultiply_basis(q);
                    for u in 0..2 {
                        for v in 0..2 {
                            left[u][v][q] = &left[u][v][q] + &(&d[p][q] * &dp[u][v]);
                            right[p][u][v] = &right[p][u][v] + &(&d[p][q] * &dq[u][v]);
                        }
                    }
                }
            }
            if left != right {
                return Err(format!("coassociativity fails at basis {i}"));
            }
            // counit law on both sides
            let mut l = AlgebraElement::zero();
            let mut r = AlgebraElement::zero();
            for p in 0..2 {
                for q in 0..2 {
                    let eps_p = basis[p].coeffs[X].clone();
                    let eps_q = basis[q].coeffs[X].clone();
                    l = l.add(&basis[q].scale(&(&d[p][q] * &eps_p)));
                    r = r.add(&basis[p].scale(&(&d[p][q] * &eps_q)));
                }
            }
            if l != basis[i] || r != basis[i] {
                return Err(format!("counit law fails at basis {i}"));
            }
        }
        // Frobenius: Δ∘m = (m⊗id)∘(id⊗Δ)
        for i in 0..2 {
            for j in 0..2 {
                let lhs = self.comul(&self.mul(&basis[i], &basis[j]));
                let dj = self.comultiply_basis(j);
                let mut rhs: Tensor2<C> = Default::default();
                for p in 0..2 {
                    for q in 0..2 {
                        let prod = self.multiply_basis(i, p);
                        for u in 0..2 {
                            rhs[u][q] = &rhs[u][q] + &(&dj[p][q] * &prod.coeffs[u]);
                        }
                    }
                }
                if lhs != rhs {
                    return Err(format!("Frobenius compatibility fails at ({i},{j})"));
                }
            }
        }
        if self.is_graded() {
            self.check_homogeneity()?;
        }
        Ok(())
    }

    /// With deg 1 = 0, deg X = 2: m has degree 0, Δ degree 2, ε degree −2.
    fn check_homogeneity(&self) -> std::result::Result<(), String> {
        let deg = |p: &Poly<C>| p.homogeneous_degree().map(|d| 2 * d as i32);
        for i in 0..2 {
            for j in 0..2 {
                let m = self.multiply_basis(i, j);
                for (u, c) in m.coeffs.iter().enumerate() {
                    if !c.is_zero() && deg(c).map(|d| d + 2 * u as i32) != Some(2 * (i + j) as i32) {
                        return Err(format!("m is inhomogeneous at ({i},{j})"));
                    }
                }
            }
            let d = self.comultiply_basis(i);
            for (p, row) in d.iter().enumerate() {
                for (q, c) in row.iter().enumerate() {
                    if !c.is_zero() && deg(c).map(|x| x + 2 * (p + q) as i32) != Some(2 * i as i32 + 2) {
                        return Err(format!("Δ is inhomogeneous at basis {i}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The cap/cup decompositions of the identity tube this theory supports.
    pub fn neck_cuttings(&self) -> Vec<NeckCut<C>> {
        let one = AlgebraElement::<C>::one;
        let x = AlgebraElement::<C>::x;
        let mut out = vec![NeckCut {
            name: "dots",
            terms: vec![
                (x(), one(), Poly::one()),
                (one(), x(), Poly::one()),
                (one(), one(), -&self.a),
            ],
        }];
        if self.roots.is_some() {
            let d1 = self.decoration_element(&Decoration::Digit1).expect("roots present");
            let d2 = self.decoration_element(&Decoration::Digit2).expect("roots present");
            out.push(NeckCut {
                name: "digits 1,2",
                terms: vec![(d1.clone(), one(), Poly::one()), (one(), d2.clone(), Poly::one())],
            });
            out.push(NeckCut {
                name: "digits 2,1",
                terms: vec![(d2, one(), Poly::one()), (one(), d1, Poly::one())],
            });
        }
        out
    }

    fn apply_neck_cut(&self, cut: &NeckCut<C>, a: &AlgebraElement<C>) -> AlgebraElement<C> {
        cut.terms.iter().fold(AlgebraElement::zero(), |acc, (out, inner, s)| {
            let e = self.mul(inner, a).coeffs[X].clone();
            acc.add(&out.scale(&(&e * s)))
        })
    }

    /// Checks every neck-cutting decomposition against the identity.
    pub fn check_neck_cutting(&self) -> NeckCutReport<C> {
        let cuts = self.neck_cuttings();
        let basis = [AlgebraElement::<C>::one(), AlgebraElement::x()];
        let results = cuts
            .iter()
            .map(|cut| {
                let bad = basis.iter().find(|a| &self.apply_neck_cut(cut, a) != *a);
                (cut.name, bad.map_or(Ok(()), |a| Err(a.clone())))
            })
            .collect();
        let orderings_agree = basis.iter().all(|a| {
            let first = self.apply_neck_cut(&cuts[0], a);
            cuts.iter().all(|c| self.apply_neck_cut(c, a) == first)
        });
        NeckCutReport { results, orderings_agree }
    }

    /// How X_* acts, for reading X_*-torsion off t-torsion.
    pub fn star_action(&self) -> StarAction<C> {
        if self.roots.is_none() {
            return StarAction::Unsupported;
        }
        let two = C::from_i64(2);
        if two.is_zero() {
            // X_* = −a, a base-ring element
            return match (-&self.a).as_monomial() {
                Some((c, [1, 0])) if c.is_unit() && self.base.variable_count() == 1 => {
                    StarAction::Variable(c)
                }
                Some((c, [0, 0])) if c.is_unit() => StarAction::Invertible,
                _ => StarAction::Unsupported,
            };
        }
        // X_*² = a² + 4b
        let sq = &(&self.a * &self.a) + &self.b.scale(&C::from_i64(4));
        match sq.as_constant() {
            Some(c) if c.is_unit() => StarAction::Invertible,
            _ => StarAction::Unsupported,
        }
    }
}

/// Internal degree of a homogeneous algebra element.
pub fn element_degree<C: Coefficient>(e: &AlgebraElement<C>) -> Option<i32> {
    let mut deg = None;
    for (u, c) in e.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = 2 * c.homogeneous_degree()? as i32 + 2 * u as i32;
        match deg {
            None => deg = Some(d),
            Some(old) if old != d => return None,
            _ => {}
        }
    }
    Some(deg.unwrap_or(0))
}

fn convert<D: Coefficient>(p: &Poly<i64>) -> Poly<D> {
    Poly::from_terms(p.terms().iter().map(|(e, c)| (*e, D::from_i64(*c))))
}

impl<C: Coefficient> Theory<C> {
    /// Substitutes univariate images for (α₁, α₂), changing coefficients
    /// from ℤ to `D`.
    ///
    /// Images must be homogeneous of degree 2 in `t` (or zero), or all
    /// constant; a constant specialization gives an ungraded theory.
    pub fn specialize<D: Coefficient>(&self, images: [Poly<D>; 2]) -> Result<Theory<D>>
    where
        C: Into<i64>,
    {
        let roots = self.roots.as_ref().ok_or_else(|| {
            Error::Specialization(format!("{} is not an α-theory", self.name))
        })?;
        if images.iter().any(Poly::uses_second_variable) {
            return Err(Error::Specialization("target is not univariate".into()));
        }
        let mut linear = false;
        let mut constant = false;
        for p in &images {
            if p.is_zero() {
                continue;
            }
            match p.homogeneous_degree() {
                Some(1) => linear = true,
                Some(0) => constant = true,
                _ => return Err(Error::Specialization(format!("image {p:?} is not homogeneous"))),
            }
        }
        if linear && constant {
            return Err(Error::Specialization("images mix degree 0 and degree 2".into()));
        }
        let lift = |p: &Poly<C>| -> Poly<D> {
            let q: Poly<i64> =
                Poly::from_terms(p.terms().iter().map(|(e, c)| (*e, c.clone().into())));
            convert::<D>(&q).substitute(&images)
        };
        let new_roots = [lift(&roots[0]), lift(&roots[1])];
        let base = if linear {
            BaseRing { kind: BaseKind::Univariate, variables: vec!["t"], coefficients: D::NAME }
        } else {
            BaseRing { kind: BaseKind::Constant, variables: vec![], coefficients: D::NAME }
        };
        let name = format!(
            "alpha@{},{}/{}",
            images[0].display_with(&["t"]),
            images[1].display_with(&["t"]),
            D::NAME
        )
        .replace(' ', "");
        let a = lift(&self.a);
        let b = lift(&self.b);
        Theory::from_quadratic(name, base, a, b, Some(new_roots))
    }
}

/// A theory over one of the supported coefficient rings, chosen at run time.
#[derive(Clone, Debug)]
pub enum AnyTheory {
    F2(Theory<Fp<2>>),
    F3(Theory<Fp<3>>),
    F5(Theory<Fp<5>>),
    F7(Theory<Fp<7>>),
    Q(Theory<Q>),
    Z(Theory<i64>),
}

/// Runs a generic expression against whichever theory is inside.
#[macro_export]
macro_rules! with_theory {
    ($any:expr, $t:ident => $body:expr) => {
        match $any {
            $crate::frobenius::AnyTheory::F2($t) => $body,
            $crate::frobenius::AnyTheory::F3($t) => $body,
            $crate::frobenius::AnyTheory::F5($t) => $body,
            $crate::frobenius::AnyTheory::F7($t) => $body,
            $crate::frobenius::AnyTheory::Q($t) => $body,
            $crate::frobenius::AnyTheory::Z($t) => $body,
        }
    };
}

impl AnyTheory {
    pub fn name(&self) -> String {
        with_theory!(self, t => t.name().to_string())
    }
}

/// Parses `c`, `t`, `-t`, `3t` or `3*t`.
fn parse_image<D: Coefficient>(s: &str) -> Option<Poly<D>> {
    let s = s.trim();
    if let Some(coef) = s.strip_suffix('t') {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let c: i64 = match coef {
            "" | "+" => 1,
            "-" => -1,
            _ => coef.parse().ok()?,
        };
        Some(Poly::monomial(D::from_i64(c), [1, 0]))
    } else {
        s.parse::<i64>().ok().map(Poly::from_i64)
    }
}

fn specialize_alpha<D: Coefficient>(selector: &str, images: &str) -> Result<Theory<D>> {
    let parts: Vec<&str> = images.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Selector(selector.into()));
    }
    let p0 = parse_image::<D>(parts[0]).ok_or_else(|| Error::Selector(selector.into()))?;
    let p1 = parse_image::<D>(parts[1]).ok_or_else(|| Error::Selector(selector.into()))?;
    Theory::<i64>::alpha().specialize([p0, p1])
}

/// Resolves a theory selector: `bn`, `alpha`, `kh-f2`, `kh-q`, or
/// `alpha@<α₁>,<α₂>/<ring>` with ring one of `f2 f3 f5 f7 q`.
pub fn parse_selector(selector: &str) -> Result<AnyTheory> {
    let s = selector.trim();
    match s {
        "bn" => return Ok(AnyTheory::F2(Theory::bar_natan())),
        "alpha" => return Ok(AnyTheory::Z(Theory::alpha())),
        "kh-f2" => return Ok(AnyTheory::F2(Theory::khovanov())),
        "kh-f3" => return Ok(AnyTheory::F3(Theory::khovanov())),
        "kh-q" => return Ok(AnyTheory::Q(Theory::khovanov())),
        _ => {}
    }
    let rest = s.strip_prefix("alpha@").ok_or_else(|| Error::Selector(s.into()))?;
    let (images, ring) = rest.rsplit_once('/').ok_or_else(|| Error::Selector(s.into()))?;
    Ok(match ring {
        "f2" => AnyTheory::F2(specialize_alpha(s, images)?),
        "f3" => AnyTheory::F3(specialize_alpha(s, images)?),
        "f5" => AnyTheory::F5(specialize_alpha(s, images)?),
        "f7" => AnyTheory::F7(specialize_alpha(s, images)?),
        "q" => AnyTheory::Q(specialize_alpha(s, images)?),
        _ => return Err(Error::Selector(s.into())),
    })
}

impl<C: Coefficient> Default for AlgebraElement<C> {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, Z};

    fn x<C: Coefficient>() -> AlgebraElement<C> {
        AlgebraElement::x()
    }

    #[test]
    fn bar_natan_multiplication() {
        let t = Theory::<F2>::bar_natan();
        let h = Poly::var(0);
        assert_eq!(t.multiply(&x(), &x()).unwrap(), AlgebraElement::new(Poly::zero(), h.clone()));
        assert_eq!(t.multiply(&AlgebraElement::one(), &x()).unwrap(), x());
        assert_eq!(
            t.dot_action(&Decoration::Dot, &x()).unwrap(),
            AlgebraElement::new(Poly::zero(), h)
        );
        assert_eq!(t.dot_action(&Decoration::Dot, &AlgebraElement::one()).unwrap(), x());
    }

    #[test]
    fn bar_natan_comultiplication() {
        let t = Theory::<F2>::bar_natan();
        let h = Poly::<F2>::var(0);
        let d1 = t.comultiply(&AlgebraElement::one()).unwrap();
        // 1⊗X + X⊗1 + h·1⊗1 (signs vanish in characteristic 2)
        assert_eq!(d1, [[h, Poly::one()], [Poly::one(), Poly::zero()]]);
        let dx = t.comultiply(&x()).unwrap();
        assert_eq!(dx, [[Poly::zero(), Poly::zero()], [Poly::zero(), Poly::one()]]);
        assert_eq!(t.counit(&AlgebraElement::one()).unwrap(), Poly::zero());
        assert_eq!(t.counit(&x()).unwrap(), Poly::one());
    }

    #[test]
    fn alpha_digits() {
        let t = Theory::<Z>::alpha();
        let d1 = t.decoration_element(&Decoration::Digit1).unwrap();
        let d2 = t.decoration_element(&Decoration::Digit2).unwrap();
        assert!(t.multiply(&d1, &d2).unwrap().is_zero());
        // Δ(X−α₁) = (X−α₁)⊗(X−α₁)
        let delta = t.comultiply(&d1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(delta[i][j], &d1.coeffs[i] * &d1.coeffs[j]);
            }
        }
        let star = t.dot_action(&Decoration::Star, &AlgebraElement::one()).unwrap();
        assert_eq!(star, AlgebraElement::new(-(&Poly::var(0) + &Poly::var(1)), Poly::from_i64(2)));
        assert_eq!(t.counit(&AlgebraElement::one()).unwrap(), Poly::zero());
        assert_eq!(t.counit(&x()).unwrap(), Poly::one());
    }

    #[test]
    fn alpha_counit_is_forced() {
        // Solve (ε⊗id)Δ(b) = b for ε = (e0, e1) on a 2x2 system over the
        // generic point α = (2, 5): the solution must be (0, 1).
        let t = Theory::<Z>::alpha()
            .specialize::<crate::Q>([Poly::from_i64(2), Poly::from_i64(5)])
            .unwrap();
        let d1 = t.comultiply_basis(ONE);
        let dx = t.comultiply_basis(X);
        let c = |p: &Poly<crate::Q>| p.as_constant().unwrap();
        // (ε⊗id)Δ(1) has X-coefficient e0·d1[0][1] + e1·d1[1][1] = 0 and
        // 1-coefficient e0·d1[0][0] + e1·d1[1][0] = 1
        let (a11, a12, a21, a22) = (c(&d1[0][0]), c(&d1[1][0]), c(&dx[0][0]), c(&dx[1][0]));
        let det = a11 * a22 - a12 * a21;
        let e0 = (a22 * crate::Q::from_integer(1) - a12 * crate::Q::from_integer(0)) / det;
        let e1 = (a11 * crate::Q::from_integer(0) - a21 * crate::Q::from_integer(1)) / det;
        assert_eq!((e0, e1), (crate::Q::from_integer(0), crate::Q::from_integer(1)));
    }

    #[test]
    fn axioms_hold() {
        assert_eq!(Theory::<F2>::bar_natan().check_axioms(), Ok(()));
        assert_eq!(Theory::<Z>::alpha().check_axioms(), Ok(()));
        assert_eq!(Theory::<F2>::khovanov().check_axioms(), Ok(()));
        assert_eq!(Theory::<crate::Q>::bar_natan().check_axioms(), Ok(()));
    }

    #[test]
    fn neck_cutting_holds() {
        assert!(Theory::<F2>::bar_natan().check_neck_cutting().holds());
        let r = Theory::<Z>::alpha().check_neck_cutting();
        assert_eq!(r.results.len(), 3);
        assert!(r.holds());
        assert!(Theory::<F2>::khovanov().check_neck_cutting().holds());
    }

    #[test]
    fn broken_neck_cut_reports_counterexample() {
        let mut t = Theory::<Z>::alpha();
        t.a = Poly::zero();
        let r = t.check_neck_cutting();
        assert!(!r.holds());
    }

    #[test]
    fn specialization_zero_t_is_bar_natan() {
        let s = Theory::<Z>::alpha()
            .specialize::<F2>([Poly::zero(), Poly::var(0)])
            .unwrap();
        let bn = Theory::<F2>::bar_natan();
        assert_eq!(s.quadratic(), bn.quadratic());
        for i in 0..2 {
            assert_eq!(s.comultiply_basis(i), bn.comultiply_basis(i));
            for j in 0..2 {
                assert_eq!(s.multiply_basis(i, j), bn.multiply_basis(i, j));
            }
        }
        assert!(s.is_graded());
        assert_eq!(s.star_action(), StarAction::Variable(F2::new(1)));
    }

    #[test]
    fn specialization_lee_type() {
        let s = Theory::<Z>::alpha()
            .specialize::<crate::Q>([Poly::from_i64(1), Poly::from_i64(-1)])
            .unwrap();
        let (a, b) = s.quadratic();
        assert!(a.is_zero());
        assert!(b.is_one());
        let star = s.decoration_element(&Decoration::Star).unwrap();
        assert_eq!(star, AlgebraElement::new(Poly::zero(), Poly::from_i64(2)));
        assert!(!s.is_graded());
        assert_eq!(s.star_action(), StarAction::Invertible);
    }

    #[test]
    fn specialization_errors() {
        let a = Theory::<Z>::alpha();
        assert!(matches!(
            a.specialize::<Z>([Poly::var(0), Poly::var(1)]),
            Err(Error::Specialization(_))
        ));
        assert!(a.specialize::<F2>([Poly::one(), Poly::var(0)]).is_err());
        assert!(a.specialize::<F2>([&Poly::one() + &Poly::var(0), Poly::zero()]).is_err());
        assert!(Theory::<Z>::khovanov()
            .specialize::<F2>([Poly::zero(), Poly::var(0)])
            .is_err());
    }

    #[test]
    fn selectors() {
        for s in ["bn", "alpha", "kh-f2", "alpha@0,t/f2", "alpha@1,-1/q", "alpha@t,-t/f3"] {
            let t = parse_selector(s).unwrap();
            assert!(with_theory!(&t, t => t.check_axioms().is_ok()), "{s}");
        }
        assert_eq!(parse_selector("alpha@0,t/f2").unwrap().name(), "alpha@0,t/f2");
        assert!(parse_selector("bogus").is_err());
        assert!(parse_selector("alpha@0,t/r").is_err());
    }

    #[test]
    fn digits_rejected_outside_alpha() {
        let t = Theory::<F2>::bar_natan();
        assert!(matches!(
            t.dot_action(&Decoration::Star, &AlgebraElement::one()),
            Err(Error::TheoryMismatch(_))
        ));
        let stray = AlgebraElement::new(Poly::var(1), Poly::zero());
        assert!(t.multiply(&stray, &x()).is_err());
    }

    #[test]
    fn homogeneity_of_decorations() {
        let t = Theory::<Z>::alpha();
        for d in [Decoration::Dot, Decoration::Digit1, Decoration::Digit2, Decoration::Star] {
            assert_eq!(t.decoration_degree(&d).unwrap(), 2);
        }
    }
}
