//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are positional. Terms live in a `BTreeMap` keyed by exponent
//! vector, which fixes one canonical storage order; the Gröbner engine sorts
//! terms under whichever [`MonomialOrder`] it is running with.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::linalg::{primitive_integer_vector, Rational};

/// Exponent vector of a monomial, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(e: Vec<u32>) -> Self {
        Exponents(e)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponents(e)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_coprime(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

impl From<Vec<u32>> for Exponents {
    fn from(v: Vec<u32>) -> Self {
        Exponents(v)
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// lexicographically decreasing order (x0^d first).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Exponents> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(Exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Exponents(Vec::new()));
        }
        return out;
    }
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// Monomial orders used by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Any monomial involving the first block beats every monomial free of it.
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Exponents, b: &Exponents) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Block(k) => {
                let k = k.min(a.0.len());
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

/// Sparse polynomial in a fixed number of positional variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Exponents::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Exponents::unit(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Exponents::unit(n, i), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponents) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponents::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Degree in each block of variables, if every term agrees on it.
    pub fn multidegree(&self, blocks: &[Vec<usize>]) -> Option<Vec<u32>> {
        let block_deg = |e: &Exponents| -> Vec<u32> {
            blocks
                .iter()
                .map(|b| b.iter().map(|&i| e.0[i]).sum())
                .collect()
        };
        let mut it = self.terms.keys().map(block_deg);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e.0[i] > 0))
            .collect()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted in decreasing order under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Exponents, Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exponents, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.mul(e), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn partial_derivative(&self, var: usize) -> Result<MultiPoly, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut d = e.0.clone();
            d[var] -= 1;
            out.add_term(Exponents(d), c * Rational::from_integer(k.into()));
        }
        Ok(out)
    }

    /// All first partial derivatives.
    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes `images[i]` for variable `i`. All images must share a
    /// variable count, which becomes the variable count of the result.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let m = images.first().map_or(0, MultiPoly::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != m) {
            return Err(PolyError::VarCountMismatch {
                left: m,
                right: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(m), p.clone()]).collect();
        let mut out = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(m, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k];
            }
            for (te, tc) in t.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Composes `self` (in x0..x3 or any arity) with forms that are
    /// multihomogeneous of one common multidegree with respect to `blocks`.
    pub fn substitute_biparametrization(
        &self,
        forms: &[MultiPoly],
        blocks: &[Vec<usize>],
    ) -> Result<MultiPoly, PolyError> {
        let mut degree: Option<Vec<u32>> = None;
        for f in forms.iter().filter(|f| !f.is_zero()) {
            let d = f.multidegree(blocks).ok_or(PolyError::Inhomogeneous)?;
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev != d => return Err(PolyError::Inhomogeneous),
                _ => {}
            }
        }
        self.compose(forms)
    }

    /// Euler identity `sum x_i dp/dx_i = deg(p) p`; errors on inhomogeneous input.
    pub fn euler_check(&self) -> Result<bool, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::Inhomogeneous);
        }
        let Some(d) = self.total_degree() else {
            return Ok(true);
        };
        let mut lhs = MultiPoly::zero(self.nvars);
        for i in 0..self.nvars {
            let t = &MultiPoly::var(self.nvars, i) * &self.partial_derivative(i)?;
            lhs = &lhs + &t;
        }
        Ok(lhs == self.scale(&Rational::from_integer(d.into())))
    }

    /// Sets variable `var` to zero.
    pub fn set_zero(&self, var: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0[var] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops variable `var`, which must not occur.
    pub fn remove_variable(&self, var: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    assert_eq!(e.0[var], 0, "removed variable occurs");
                    let mut v = e.0.clone();
                    v.remove(var);
                    (Exponents(v), c.clone())
                })
                .collect(),
        }
    }

    /// Re-embeds into a ring with `nvars` variables, sending variable `i` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut v = vec![0; nvars];
                for (i, &k) in e.0.iter().enumerate() {
                    v[map[i]] += k;
                }
                (Exponents(v), c.clone())
            }),
        )
    }

    /// Primitive integer multiple whose grevlex-leading coefficient is positive.
    pub fn normalized(&self) -> MultiPoly {
        let sorted = self.sorted_terms(MonomialOrder::GrevLex);
        let coeffs: Vec<Rational> = sorted.iter().map(|(_, c)| c.clone()).collect();
        let ints = primitive_integer_vector(&coeffs);
        MultiPoly::from_terms(
            self.nvars,
            sorted
                .into_iter()
                .zip(ints)
                .map(|((e, _), c)| (e, Rational::from_integer(c))),
        )
    }

    /// Monic under `order`.
    pub fn monic(&self, order: MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Whether `self` and `other` agree up to a nonzero scalar.
    pub fn equal_up_to_scale(&self, other: &MultiPoly) -> bool {
        self.nvars == other.nvars && self.normalized() == other.normalized()
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.sorted_terms(MonomialOrder::Lex).iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, &k)| {
                    let name = names.get(i).map_or_else(|| format!("x{i}"), |n| n.to_string());
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn segre() -> MultiPoly {
        &(&x(4, 0) * &x(4, 3)) - &(&x(4, 1) * &x(4, 2))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn arithmetic_examples() {
        let (a, b) = (x(2, 0), x(2, 1));
        let prod = &(&a + &b) * &(&a - &b);
        assert_eq!(prod, &a.pow(2) - &b.pow(2));
        assert_eq!(&prod + &MultiPoly::zero(2), prod);

        let sq = segre().pow(2);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coefficient(&Exponents::new(vec![2, 0, 0, 2])), rat(1));
        assert_eq!(sq.coefficient(&Exponents::new(vec![1, 1, 1, 1])), rat(-2));
        assert_eq!(sq.coefficient(&Exponents::new(vec![0, 2, 2, 0])), rat(1));
    }

    #[test]
    fn mismatched_variable_counts() {
        assert!(matches!(
            x(2, 0).checked_add(&x(3, 0)),
            Err(PolyError::VarCountMismatch { left: 2, right: 3 })
        ));
        assert!(x(2, 0).checked_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(segre().partial_derivative(0).unwrap(), x(4, 3));
        assert!(MultiPoly::constant(3, rat(7)).partial_derivative(1).unwrap().is_zero());
        // symbolic coefficients c0, c1 as variables 2 and 3: c0 x0^2 + c1 x0 x1
        let (x0, x1, c0, c1) = (x(4, 0), x(4, 1), x(4, 2), x(4, 3));
        let p = &(&c0 * &x0.pow(2)) + &(&(&c1 * &x0) * &x1);
        let expected = &(&c0 * &x0).scale(&rat(2)) + &(&c1 * &x1);
        assert_eq!(p.partial_derivative(0).unwrap(), expected);
        assert!(p.partial_derivative(4).is_err());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(segre().evaluate(&ints(&[1, 1, 1, 1])).unwrap(), rat(0));
        assert_eq!(segre().evaluate(&ints(&[1, 2, 3, 4])).unwrap(), rat(-2));
        let v = vec![ratio(1, 2), rat(3), rat(-1), rat(2)];
        let lam = ratio(-5, 3);
        let scaled: Vec<Rational> = v.iter().map(|c| c * &lam).collect();
        assert_eq!(
            segre().evaluate(&scaled).unwrap(),
            &lam * &lam * segre().evaluate(&v).unwrap()
        );
    }

    #[test]
    fn substitution_examples() {
        let blocks = vec![vec![0, 1, 2, 3]];
        let ident: Vec<MultiPoly> = (0..4).map(|i| x(4, i)).collect();
        assert_eq!(segre().substitute_biparametrization(&ident, &blocks).unwrap(), segre());

        // (su, tu, sv, tv) with s,t,u,v = vars 0..3
        let bl = vec![vec![0, 1], vec![2, 3]];
        let (s, t, u, v) = (x(4, 0), x(4, 1), x(4, 2), x(4, 3));
        let forms = vec![&s * &u, &t * &u, &s * &v, &t * &v];
        assert!(segre().substitute_biparametrization(&forms, &bl).unwrap().is_zero());

        let bad = vec![&s * &u, s.clone(), &s * &v, &t * &v];
        assert_eq!(
            segre().substitute_biparametrization(&bad, &bl),
            Err(PolyError::Inhomogeneous)
        );
    }

    #[test]
    fn euler_examples() {
        assert!(segre().euler_check().unwrap());
        let cubic = &(&x(3, 0).pow(3) - &(&x(3, 1) * &x(3, 2).pow(2))) + &x(3, 2).pow(3).scale(&ratio(2, 7));
        assert!(cubic.euler_check().unwrap());
        let inh = &x(2, 0).pow(2) + &x(2, 1);
        assert_eq!(inh.euler_check(), Err(PolyError::Inhomogeneous));
    }

    #[test]
    fn monomial_orders() {
        let e = |v: Vec<u32>| Exponents::new(v);
        // grevlex: x1^2 > x0 x2 (last variable exponent smaller wins)
        assert_eq!(
            MonomialOrder::GrevLex.cmp(&e(vec![0, 2, 0]), &e(vec![1, 0, 1])),
            Ordering::Greater
        );
        assert_eq!(MonomialOrder::Lex.cmp(&e(vec![1, 0, 0]), &e(vec![0, 5, 5])), Ordering::Greater);
        // block: anything with the first block beats anything without
        assert_eq!(
            MonomialOrder::Block(1).cmp(&e(vec![1, 0, 0]), &e(vec![0, 5, 5])),
            Ordering::Greater
        );
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(4, 2)[0], e(vec![2, 0, 0, 0]));
        assert_eq!(monomials_of_degree(4, 2)[9], e(vec![0, 0, 0, 2]));
    }

    #[test]
    fn normalization_makes_scale_syntactic() {
        // grevlex ranks x1*x2 above x0*x3, so the normalized sign flips
        let p = segre().scale(&ratio(3, 4));
        assert_eq!(p.normalized(), -segre());
        assert!(p.equal_up_to_scale(&segre()));
        assert_eq!(segre().to_string(), "x0*x3 - x1*x2");
    }

    fn poly_strategy(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, nvars), -5i64..=5),
            0..5,
        )
        .prop_map(move |ts| {
            MultiPoly::from_terms(nvars, ts.into_iter().map(|(e, c)| (Exponents::new(e), rat(c))))
        })
    }

    fn homogeneous_strategy(nvars: usize, d: u32) -> impl Strategy<Value = MultiPoly> {
        let monos = monomials_of_degree(nvars, d);
        proptest::collection::vec(-4i64..=4, monos.len()).prop_map(move |cs| {
            MultiPoly::from_terms(nvars, monos.iter().cloned().zip(cs.into_iter().map(rat)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_axioms(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn homogeneity_preserved(a in homogeneous_strategy(4, 2), b in homogeneous_strategy(4, 2)) {
            prop_assert!((&a + &b).is_homogeneous());
            prop_assert!((&a * &b).is_homogeneous());
            prop_assert!((&a * &b).euler_check().unwrap());
        }

        #[test]
        fn substitution_commutes_with_evaluation(
            f in homogeneous_strategy(4, 2),
            coeffs in proptest::collection::vec(-5i64..=5, 16),
            params in proptest::collection::vec(-6i64..=6, 4),
        ) {
            // four bilinear forms in (s,t) x (u,v)
            let n = 4;
            let forms: Vec<MultiPoly> = (0..4).map(|k| {
                let c = &coeffs[4 * k..4 * k + 4];
                let st = MultiPoly::linear_form(&[rat(c[0]), rat(c[1]), rat(0), rat(0)]);
                let uv = MultiPoly::linear_form(&[rat(0), rat(0), rat(c[2]), rat(c[3])]);
                &st * &uv
            }).collect();
            let blocks = vec![vec![0, 1], vec![2, 3]];
            let composed = f.substitute_biparametrization(&forms, &blocks).unwrap();
            let p: Vec<Rational> = params.iter().map(|&v| rat(v)).collect();
            let values: Vec<Rational> = forms.iter().map(|g| g.evaluate(&p).unwrap()).collect();
            prop_assert_eq!(composed.evaluate(&p).unwrap(), f.evaluate(&values).unwrap());
            prop_assert_eq!(composed.nvars(), n);
        }
    }
}
