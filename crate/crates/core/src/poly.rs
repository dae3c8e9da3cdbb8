//! Sparse polynomials in at most two variables over a [`Coefficient`] ring.
//!
//! These are the base-ring elements of every Frobenius theory: 𝔽₂[h],
//! ℤ[α₁,α₂], 𝔽[t] and plain constants. Terms are kept sorted by exponent
//! with no zero coefficients, so structural equality is ring equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Coefficient;

/// Exponent vector of a monomial; unused variables stay at zero.
pub type Exponents = [u32; 2];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: Vec<(Exponents, C)>,
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, [0, 0])
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    pub fn monomial(c: C, exps: Exponents) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(exps, c)] }
        }
    }

    /// The `index`-th variable (0 or 1).
    pub fn var(index: usize) -> Self {
        let mut e = [0, 0];
        e[index] = 1;
        Self::monomial(C::one(), e)
    }

    /// `c · var^k` for the first variable.
    pub fn power(c: C, k: u32) -> Self {
        Self::monomial(c, [k, 0])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> &[(Exponents, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0, 0] && self.terms[0].1.is_one()
    }

    /// The constant term if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [([0, 0], c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// `(c, exps)` when the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(C, Exponents)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((c.clone(), *e)),
            _ => None,
        }
    }

    /// Whether the second variable ever occurs.
    pub fn uses_second_variable(&self) -> bool {
        self.terms.iter().any(|(e, _)| e[1] > 0)
    }

    /// Total polynomial degree of every term, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|(e, _)| e[0] + e[1]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add_term(&mut self, exps: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(e, _)| e.cmp(&exps)) {
            Ok(i) => {
                self.terms[i].1 += c;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (exps, c)),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes polynomials for the two variables.
    pub fn substitute(&self, images: &[Poly<C>; 2]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let term = (&images[0].pow(e[0]) * &images[1].pow(e[1])).scale(c);
            out = &out + &term;
        }
        out
    }

    /// Renders with the given variable names (`h`, `a1`, ...).
    pub fn display_with<'a>(&'a self, vars: &'a [&'a str]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, vars }
    }
}

struct PolyDisplay<'a, C> {
    poly: &'a Poly<C>,
    vars: &'a [&'a str],
}

impl<C: Coefficient> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.poly.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                let name = self.vars.get(v).copied().unwrap_or(if v == 0 { "x" } else { "y" });
                match k {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{c}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&["x", "y"]))
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1]], ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<C: Coefficient> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
}
