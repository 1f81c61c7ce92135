//! Buchberger's algorithm with the coprime and chain criteria.
//!
//! Pairs are selected by smallest lcm under the active order, ties broken by
//! generator index, so a fixed input always produces the same basis.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{GroebnerError, PolyError};
use crate::linalg::Rational;
use crate::poly::{Exponents, MonomialOrder, MultiPoly};

/// Environment variable overriding the default step limit.
pub const STEP_LIMIT_ENV: &str = "HS_GB_STEP_LIMIT";
pub const DEFAULT_STEP_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of S-polynomial reductions before giving up.
    pub step_limit: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            step_limit: DEFAULT_STEP_LIMIT,
        }
    }
}

impl GroebnerConfig {
    /// Default configuration, with the step limit taken from
    /// `HS_GB_STEP_LIMIT` when it is set to a valid number.
    pub fn from_env() -> Self {
        let step_limit = std::env::var(STEP_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_STEP_LIMIT);
        GroebnerConfig { step_limit }
    }
}

/// Ideal given by generators in a common polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<MultiPoly>) -> Result<Self, PolyError> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(PolyError::VarCountMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
        Ok(Ideal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }
}

/// Reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<MultiPoly>,
}

type Term = (Exponents, Rational);

/// Terms sorted in decreasing order; leading term first.
#[derive(Clone, Debug)]
struct Sorted(Vec<Term>);

impl Sorted {
    fn from_poly(p: &MultiPoly, order: MonomialOrder) -> Self {
        Sorted(p.sorted_terms(order))
    }

    fn to_poly(&self, nvars: usize) -> MultiPoly {
        MultiPoly::from_terms(nvars, self.0.iter().cloned())
    }

    fn lead(&self) -> &Exponents {
        &self.0[0].0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.0.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in self.0.iter_mut() {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }
}

/// `a - c * m * b`, all sorted decreasingly.
fn sub_mul(a: &[Term], b: &[Term], m: &Exponents, c: &Rational, order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut shifted = b.iter().map(|(e, x)| (e.mul(m), x * c));
    let mut next_b = shifted.next();
    while i < a.len() || next_b.is_some() {
        match (a.get(i), &next_b) {
            (Some(ta), Some(tb)) => match order.cmp(&ta.0, &tb.0) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((tb.0.clone(), -tb.1.clone()));
                    next_b = shifted.next();
                }
                Ordering::Equal => {
                    let v = &ta.1 - &tb.1;
                    if !v.is_zero() {
                        out.push((ta.0.clone(), v));
                    }
                    i += 1;
                    next_b = shifted.next();
                }
            },
            (Some(ta), None) => {
                out.push(ta.clone());
                i += 1;
            }
            (None, Some(tb)) => {
                out.push((tb.0.clone(), -tb.1.clone()));
                next_b = shifted.next();
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `p` modulo monic `basis`.
fn reduce(mut p: Vec<Term>, basis: &[Sorted], order: MonomialOrder) -> Vec<Term> {
    let mut pos = 0;
    while pos < p.len() {
        let (e, c) = &p[pos];
        let divisor = basis.iter().find(|g| g.lead().divides(e));
        match divisor {
            Some(g) => {
                let m = e.div(g.lead());
                let c = c.clone();
                let tail = sub_mul(&p[pos..], &g.0, &m, &c, order);
                p.truncate(pos);
                p.extend(tail);
            }
            None => pos += 1,
        }
    }
    p
}

fn s_polynomial(f: &Sorted, g: &Sorted, order: MonomialOrder) -> Vec<Term> {
    let l = f.lead().lcm(g.lead());
    let mf = l.div(f.lead());
    let mg = l.div(g.lead());
    let ff: Vec<Term> = f.0.iter().map(|(e, c)| (e.mul(&mf), c.clone())).collect();
    sub_mul(&ff, &g.0, &mg, &Rational::one(), order)
}

fn add_element(
    basis: &mut Vec<Sorted>,
    pairs: &mut Vec<(usize, usize)>,
    pending: &mut HashSet<(usize, usize)>,
    mut s: Sorted,
) {
    s.make_monic();
    let k = basis.len();
    basis.push(s);
    for i in 0..k {
        pairs.push((i, k));
        pending.insert((i, k));
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(
    ideal: &Ideal,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis, GroebnerError> {
    let nvars = ideal.nvars();
    let mut basis: Vec<Sorted> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    for g in ideal.generators() {
        let r = reduce(Sorted::from_poly(g, order).0, &basis, order);
        if !r.is_empty() {
            add_element(&mut basis, &mut pairs, &mut pending, Sorted(r));
        }
    }

    let mut steps = 0usize;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&x, &y| {
                let (a, b) = pairs[x];
                let (c, d) = pairs[y];
                let la = basis[a].lead().lcm(basis[b].lead());
                let lc = basis[c].lead().lcm(basis[d].lead());
                order.cmp(&la, &lc).then((a, b).cmp(&(c, d)))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let li = basis[i].lead().clone();
        let lj = basis[j].lead().clone();
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        steps += 1;
        if steps > config.step_limit {
            return Err(GroebnerError::StepLimit {
                limit: config.step_limit,
            });
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(s, &basis, order);
        if !r.is_empty() {
            add_element(&mut basis, &mut pairs, &mut pending, Sorted(r));
        }
    }

    Ok(GroebnerBasis::interreduce(nvars, order, basis))
}

impl GroebnerBasis {
    fn interreduce(nvars: usize, order: MonomialOrder, basis: Vec<Sorted>) -> Self {
        // drop elements whose leading monomial is divisible by an earlier kept one
        let mut minimal: Vec<Sorted> = Vec::new();
        for (idx, g) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(k, h)| {
                k != idx && h.lead().divides(g.lead()) && (h.lead() != g.lead() || k < idx)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut reduced: Vec<Sorted> = Vec::with_capacity(minimal.len());
        for idx in 0..minimal.len() {
            let others: Vec<Sorted> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, g)| g.clone())
                .collect();
            let g = &minimal[idx];
            let mut tail = reduce(g.0[1..].to_vec(), &others, order);
            let mut terms = vec![g.0[0].clone()];
            terms.append(&mut tail);
            let mut s = Sorted(terms);
            s.make_monic();
            reduced.push(s);
        }
        reduced.sort_by(|a, b| order.cmp(a.lead(), b.lead()));
        GroebnerBasis {
            nvars,
            order,
            basis: reduced.iter().map(|s| s.to_poly(nvars)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn into_ideal(self) -> Ideal {
        Ideal {
            nvars: self.nvars,
            generators: self.basis,
        }
    }

    pub fn leading_monomials(&self) -> Vec<Exponents> {
        self.basis
            .iter()
            .map(|g| g.leading_term(self.order).expect("nonzero").0.clone())
            .collect()
    }

    /// True iff the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant())
    }

    fn sorted_basis(&self) -> Vec<Sorted> {
        self.basis
            .iter()
            .map(|g| Sorted::from_poly(g, self.order))
            .collect()
    }

    /// Remainder of multivariate division by the basis.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if p.nvars() != self.nvars {
            return Err(PolyError::VarCountMismatch {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        let r = reduce(Sorted::from_poly(p, self.order).0, &self.sorted_basis(), self.order);
        Ok(MultiPoly::from_terms(self.nvars, r))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool, PolyError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Checks the defining properties of a reduced Gröbner basis: monic,
    /// no term of an element divisible by another element's leading
    /// monomial, and every S-polynomial reducing to zero.
    pub fn is_reduced(&self) -> bool {
        let sorted = self.sorted_basis();
        for (i, g) in sorted.iter().enumerate() {
            if !g.0[0].1.is_one() {
                return false;
            }
            for (j, h) in sorted.iter().enumerate() {
                if i != j && g.0.iter().any(|(e, _)| h.lead().divides(e)) {
                    return false;
                }
            }
        }
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                let s = s_polynomial(&sorted[i], &sorted[j], self.order);
                if !reduce(s, &sorted, self.order).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Generators of `ideal ∩ Q[x_k, ..., x_{n-1}]`, still expressed in all `n`
/// variables (the dropped ones simply do not occur).
pub fn eliminate(ideal: &Ideal, drop_first: usize, config: &GroebnerConfig) -> Result<Ideal, GroebnerError> {
    let order = if drop_first == 0 {
        MonomialOrder::GrevLex
    } else {
        MonomialOrder::Block(drop_first)
    };
    let gb = buchberger(ideal, order, config)?;
    let generators = gb
        .basis
        .into_iter()
        .filter(|g| g.variables().iter().all(|&v| v >= drop_first))
        .collect();
    Ok(Ideal {
        nvars: ideal.nvars(),
        generators,
    })
}

/// Krull dimension of the affine zero set: the largest set of variables
/// containing the support of no leading monomial. `-1` for the unit ideal.
pub fn ideal_dimension(ideal: &Ideal, config: &GroebnerConfig) -> Result<i64, GroebnerError> {
    let gb = buchberger(ideal, MonomialOrder::GrevLex, config)?;
    Ok(dimension_from_basis(&gb))
}

/// Dimension from the leading monomials of an existing (degree-compatible
/// or not) Gröbner basis.
pub fn dimension_from_basis(gb: &GroebnerBasis) -> i64 {
    if gb.is_unit() {
        return -1;
    }
    let n = gb.nvars;
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|e| e.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    assert!(n < 64, "too many variables for subset enumeration");
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as i64;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn cfg() -> GroebnerConfig {
        GroebnerConfig::default()
    }

    #[test]
    fn already_reduced_basis() {
        let i = Ideal::new(2, vec![x(2, 0), x(2, 1)]).unwrap();
        let gb = buchberger(&i, MonomialOrder::GrevLex, &cfg()).unwrap();
        assert_eq!(gb.basis().len(), 2);
        assert!(gb.basis().contains(&x(2, 0)));
        assert!(gb.basis().contains(&x(2, 1)));
        assert!(gb.is_reduced());
    }

    #[test]
    fn lex_basis_of_small_system() {
        // <x^2 - y, x^3 - x> under lex x > y.
        // Hand S-pair reduction: x^3 - x = x*(x^2 - y) + (xy - x), then
        // S(x^2 - y, xy - x) reduces to y^2 - y, and x*(y - 1) stays.
        // Reduced basis: {y^2 - y, xy - x, x^2 - y}.
        let (xx, yy) = (x(2, 0), x(2, 1));
        let f = &xx.pow(2) - &yy;
        let g = &xx.pow(3) - &xx;
        let i = Ideal::new(2, vec![f.clone(), g.clone()]).unwrap();
        let gb = buchberger(&i, MonomialOrder::Lex, &cfg()).unwrap();
        let expected = vec![&yy.pow(2) - &yy, &(&xx * &yy) - &xx, f.clone()];
        assert_eq!(gb.basis(), expected.as_slice());
        assert!(gb.is_reduced());
        // y^3 - y lies in the ideal: y^3 - y = (y + 1)(y^2 - y)
        assert!(gb.contains(&(&yy.pow(3) - &yy)).unwrap());
        assert!(gb.contains(&g).unwrap());
        assert!(!gb.contains(&yy).unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let i = Ideal::new(2, vec![x(2, 0), x(2, 1)]).unwrap();
        let gb = buchberger(&i, MonomialOrder::GrevLex, &cfg()).unwrap();
        for g in gb.basis() {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
        assert_eq!(gb.normal_form(&MultiPoly::one(2)).unwrap(), MultiPoly::one(2));

        // Segre quadric lies in its own Jacobian ideal (Euler identity)
        let f = &(&x(4, 0) * &x(4, 3)) - &(&x(4, 1) * &x(4, 2));
        let jac = Ideal::new(4, f.gradient()).unwrap();
        let gb = buchberger(&jac, MonomialOrder::GrevLex, &cfg()).unwrap();
        assert!(gb.normal_form(&f).unwrap().is_zero());
    }

    #[test]
    fn elimination_examples() {
        // <x - s t, y - s, z - t> in vars (s, t, x, y, z); eliminate s, t
        let n = 5;
        let (s, t, xx, yy, zz) = (x(n, 0), x(n, 1), x(n, 2), x(n, 3), x(n, 4));
        let i = Ideal::new(n, vec![&xx - &(&s * &t), &yy - &s, &zz - &t]).unwrap();
        let e = eliminate(&i, 2, &cfg()).unwrap();
        assert_eq!(e.generators().len(), 1);
        assert!(e.generators()[0].equal_up_to_scale(&(&xx - &(&yy * &zz))));

        // k = 0 keeps the ideal
        let e0 = eliminate(&i, 0, &cfg()).unwrap();
        let gb0 = buchberger(&e0, MonomialOrder::GrevLex, &cfg()).unwrap();
        for g in i.generators() {
            assert!(gb0.contains(g).unwrap());
        }

        // Segre pair graph ideal in (s, t, u, v, x0..x3)
        let n = 8;
        let v = |i| x(n, i);
        let forms = [&v(0) * &v(2), &v(1) * &v(2), &v(0) * &v(3), &v(1) * &v(3)];
        let gens = (0..4).map(|k| &v(4 + k) - &forms[k]).collect();
        let e = eliminate(&Ideal::new(n, gens).unwrap(), 4, &cfg()).unwrap();
        assert_eq!(e.generators().len(), 1);
        let segre = &(&v(4) * &v(7)) - &(&v(5) * &v(6));
        assert!(e.generators()[0].equal_up_to_scale(&segre));
        for g in e.generators() {
            assert!(g.variables().iter().all(|&i| i >= 4));
        }
    }

    #[test]
    fn dimension_examples() {
        let i = Ideal::new(3, vec![x(3, 0)]).unwrap();
        assert_eq!(ideal_dimension(&i, &cfg()).unwrap(), 2);
        let i = Ideal::new(3, vec![x(3, 0), x(3, 1), x(3, 2)]).unwrap();
        assert_eq!(ideal_dimension(&i, &cfg()).unwrap(), 0);
        let i = Ideal::new(3, vec![MultiPoly::one(3)]).unwrap();
        assert_eq!(ideal_dimension(&i, &cfg()).unwrap(), -1);
        // principal non-constant ideal: n - 1
        let f = &(&x(4, 0).pow(3) - &(&x(4, 1) * &x(4, 2))) + &MultiPoly::constant(4, rat(5));
        let i = Ideal::new(4, vec![f]).unwrap();
        assert_eq!(ideal_dimension(&i, &cfg()).unwrap(), 3);
    }

    #[test]
    fn step_limit_is_an_error() {
        let (xx, yy) = (x(2, 0), x(2, 1));
        let i = Ideal::new(2, vec![&xx.pow(2) - &yy, &xx.pow(3) - &xx]).unwrap();
        let tiny = GroebnerConfig { step_limit: 0 };
        assert_eq!(
            buchberger(&i, MonomialOrder::Lex, &tiny),
            Err(GroebnerError::StepLimit { limit: 0 })
        );
    }

    #[test]
    fn membership_stable_under_generator_permutation() {
        let n = 3;
        let (a, b, c) = (x(n, 0), x(n, 1), x(n, 2));
        let gens = vec![&(&a * &b) - &c, &b.pow(2) - &(&a * &c), &a.pow(2) - &b];
        let mut rev = gens.clone();
        rev.reverse();
        let g1 = buchberger(&Ideal::new(n, gens.clone()).unwrap(), MonomialOrder::GrevLex, &cfg()).unwrap();
        let g2 = buchberger(&Ideal::new(n, rev).unwrap(), MonomialOrder::GrevLex, &cfg()).unwrap();
        assert_eq!(g1, g2);
        let probe = &(&gens[0] * &a) + &(&gens[2] * &c.pow(2));
        assert!(g1.contains(&probe).unwrap());
        assert!(g2.contains(&probe).unwrap());
        assert!(!g1.contains(&c).unwrap());
    }

    #[test]
    fn wrong_arity_rejected() {
        assert!(Ideal::new(2, vec![x(3, 0)]).is_err());
        let gb = buchberger(&Ideal::new(2, vec![x(2, 0)]).unwrap(), MonomialOrder::GrevLex, &cfg()).unwrap();
        assert!(gb.normal_form(&x(3, 0)).is_err());
    }
}
