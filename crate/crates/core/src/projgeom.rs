//! Points, lines and rationally parametrized curves in projective 3-space.
//!
//! Plücker coordinates are stored 0-based in the order
//! `(p01, p02, p03, p12, p13, p23)`. A 1-based label `q_ij` translates to
//! `p_{i-1, j-1}`, so `q12 q34 p13 p24 - q13 q24 p12 p34` becomes
//! `q01 q23 p02 p13 - q02 q13 p01 p23`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::GeomError;
use crate::linalg::{primitive_integer_vector, rat, RatMatrix, Rational};
use crate::poly::{Exponents, MultiPoly};

/// Index pairs of the six Plücker coordinates, in storage order.
pub const PLUECKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Range used for random integer coordinates in fixtures.
pub const SAMPLE_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

/// A point of P³, stored as its primitive integer representative with
/// first nonzero coordinate positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [BigInt; 4],
}

impl ProjPoint {
    pub fn new(coords: &[Rational]) -> Result<Self, GeomError> {
        assert_eq!(coords.len(), 4, "projective points have 4 coordinates");
        if coords.iter().all(Zero::is_zero) {
            return Err(GeomError::ZeroPoint);
        }
        let v = primitive_integer_vector(coords);
        Ok(ProjPoint {
            coords: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()],
        })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self, GeomError> {
        Self::new(&c.map(rat))
    }

    /// Coordinate point `e_i`.
    pub fn coordinate(i: usize) -> Self {
        let mut c = [0; 4];
        c[i] = 1;
        Self::from_ints(c).expect("nonzero")
    }

    pub fn all_ones() -> Self {
        Self::from_ints([1, 1, 1, 1]).expect("nonzero")
    }

    pub fn integer_coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn coords(&self) -> [Rational; 4] {
        self.coords.clone().map(Rational::from_integer)
    }

    /// Indices of vanishing coordinates.
    pub fn zero_slots(&self) -> Vec<usize> {
        (0..4).filter(|&i| self.coords[i].is_zero()).collect()
    }

    pub fn lies_on_plane(&self, i: usize) -> bool {
        self.coords[i].is_zero()
    }

    pub fn is_coordinate_point(&self) -> bool {
        self.zero_slots().len() == 3
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let c = [0; 4].map(|_: i64| rng.gen_range(SAMPLE_RANGE));
            if let Ok(p) = Self::from_ints(c) {
                return p;
            }
        }
    }

    /// Random point with every coordinate nonzero.
    pub fn random_torus<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let p = Self::random(rng);
            if p.zero_slots().is_empty() {
                return p;
            }
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}:{}:{}:{})",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coordinate-wise product of two points.
pub fn hadamard_point(p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, GeomError> {
    let c: Vec<Rational> = (0..4)
        .map(|i| Rational::from_integer(&p.coords[i] * &q.coords[i]))
        .collect();
    ProjPoint::new(&c).map_err(|_| GeomError::HadamardUndefined)
}

fn minors(a: &[Rational], b: &[Rational]) -> [Rational; 6] {
    PLUECKER_PAIRS.map(|(i, j)| &a[i] * &b[j] - &a[j] * &b[i])
}

/// Evaluates the Plücker relation `p01 p23 - p02 p13 + p03 p12`.
pub fn pluecker_relation(p: &[Rational; 6]) -> Rational {
    &p[0] * &p[5] - &p[1] * &p[4] + &p[2] * &p[3]
}

/// A line of P³ with its span in reduced row-echelon form and its
/// Plücker vector (the 2x2 minors of that span).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LineP3 {
    span: RatMatrix,
    pluecker: [Rational; 6],
}

impl LineP3 {
    fn from_span_rows(a: &[Rational], b: &[Rational]) -> Result<Self, GeomError> {
        let m = RatMatrix::from_rows(vec![a.to_vec(), b.to_vec()]).expect("two rows of four");
        let (r, pivots) = m.rref();
        if pivots.len() < 2 {
            return Err(GeomError::CoincidentPoints);
        }
        let pl = minors(r.row(0), r.row(1));
        Ok(LineP3 { span: r, pluecker: pl })
    }

    pub fn from_points(p: &ProjPoint, q: &ProjPoint) -> Result<Self, GeomError> {
        Self::from_span_rows(&p.coords(), &q.coords())
    }

    /// Rebuilds the span from a Plücker vector, which must be nonzero and
    /// satisfy the Plücker relation.
    pub fn from_pluecker(p: &[Rational; 6]) -> Result<Self, GeomError> {
        if p.iter().all(Zero::is_zero) {
            return Err(GeomError::InvalidPluecker("zero vector".into()));
        }
        if !pluecker_relation(p).is_zero() {
            return Err(GeomError::InvalidPluecker("Pluecker relation fails".into()));
        }
        // antisymmetric matrix P = a b^T - b a^T; its columns span the line
        let mut pm = RatMatrix::zeros(4, 4);
        for (k, &(i, j)) in PLUECKER_PAIRS.iter().enumerate() {
            pm[(i, j)] = p[k].clone();
            pm[(j, i)] = -p[k].clone();
        }
        let (r, pivots) = pm.transpose().rref();
        if pivots.len() != 2 {
            return Err(GeomError::InvalidPluecker("does not define a line".into()));
        }
        Self::from_span_rows(r.row(0), r.row(1))
    }

    pub fn span(&self) -> &RatMatrix {
        &self.span
    }

    pub fn pluecker(&self) -> &[Rational; 6] {
        &self.pluecker
    }

    /// Plücker vector scaled to a primitive integer vector.
    pub fn pluecker_normalized(&self) -> Vec<BigInt> {
        primitive_integer_vector(&self.pluecker)
    }

    /// Point `s * row0 + t * row1` of the span.
    pub fn point_at(&self, s: &Rational, t: &Rational) -> Option<ProjPoint> {
        let c: Vec<Rational> = (0..4)
            .map(|k| s * &self.span[(0, k)] + t * &self.span[(1, k)])
            .collect();
        ProjPoint::new(&c).ok()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let m = RatMatrix::from_rows(vec![
            self.span.row(0).to_vec(),
            self.span.row(1).to_vec(),
            p.coords().to_vec(),
        ])
        .expect("3x4");
        m.rank() == 2
    }

    /// Intersection with the plane `x_i = 0`; `None` when the line lies in it.
    pub fn meet_plane(&self, i: usize) -> Option<ProjPoint> {
        let a = &self.span[(0, i)];
        let b = &self.span[(1, i)];
        if a.is_zero() && b.is_zero() {
            return None;
        }
        // s a + t b = 0 with (s, t) = (b, -a)
        self.point_at(b, &-a.clone())
    }

    pub fn in_coordinate_plane(&self) -> bool {
        (0..4).any(|i| self.meet_plane(i).is_none())
    }

    pub fn contains_coordinate_point(&self) -> bool {
        (0..4).any(|i| self.contains(&ProjPoint::coordinate(i)))
    }

    pub fn parametrization(&self) -> ParamCurve {
        let forms = [0, 1, 2, 3].map(|k| {
            BinaryForm::new(vec![self.span[(0, k)].clone(), self.span[(1, k)].clone()])
        });
        ParamCurve::new(forms).expect("a line is a valid degree-1 curve")
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            if let Ok(l) = Self::from_points(&ProjPoint::random(rng), &ProjPoint::random(rng)) {
                return l;
            }
        }
    }
}

impl fmt::Debug for LineP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.pluecker_normalized().iter().map(|x| x.to_string()).collect();
        write!(f, "Line[{}]", p.join(":"))
    }
}

/// Image of a line under `x -> p * x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarImage {
    Line(LineP3),
    Point(ProjPoint),
}

pub fn point_star_line(p: &ProjPoint, line: &LineP3) -> Result<StarImage, GeomError> {
    let pc = p.coords();
    let rows: Vec<Vec<Rational>> = (0..2)
        .map(|r| (0..4).map(|k| &pc[k] * &line.span()[(r, k)]).collect())
        .collect();
    let m = RatMatrix::from_rows(rows.clone()).expect("2x4");
    match m.rank() {
        2 => Ok(StarImage::Line(LineP3::from_span_rows(&rows[0], &rows[1])?)),
        1 => {
            let nz = if rows[0].iter().any(|x| !x.is_zero()) { &rows[0] } else { &rows[1] };
            Ok(StarImage::Point(ProjPoint::new(nz)?))
        }
        _ => Err(GeomError::EmptyImage),
    }
}

/// Whether `m` lies on the closure of `{p * l}`: the biquadratic
/// `q01 q23 m02 m13 - q02 q13 m01 m23` vanishes, `q` the Plücker vector of `l`.
pub fn xl_membership(l: &LineP3, m: &LineP3) -> bool {
    xl_value(l, m).is_zero()
}

pub fn xl_value(l: &LineP3, m: &LineP3) -> Rational {
    let q = l.pluecker();
    let p = m.pluecker();
    &q[0] * &q[5] * &p[1] * &p[4] - &q[1] * &q[4] * &p[0] * &p[5]
}

/// Invertible diagonal automorphism `x -> (t0 x0 : ... : t3 x3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalAuto {
    entries: [Rational; 4],
}

impl DiagonalAuto {
    pub fn new(entries: [Rational; 4]) -> Result<Self, GeomError> {
        if let Some(i) = entries.iter().position(Zero::is_zero) {
            return Err(GeomError::SingularDiagonal(i));
        }
        Ok(DiagonalAuto { entries })
    }

    pub fn identity() -> Self {
        DiagonalAuto {
            entries: [0, 1, 2, 3].map(|_| Rational::one()),
        }
    }

    pub fn entries(&self) -> &[Rational; 4] {
        &self.entries
    }

    pub fn inverse(&self) -> Self {
        DiagonalAuto {
            entries: self.entries.clone().map(|e| e.recip()),
        }
    }

    pub fn compose(&self, other: &DiagonalAuto) -> Self {
        DiagonalAuto {
            entries: [0, 1, 2, 3].map(|i| &self.entries[i] * &other.entries[i]),
        }
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        let c = p.coords();
        let v: Vec<Rational> = (0..4).map(|i| &c[i] * &self.entries[i]).collect();
        ProjPoint::new(&v).expect("diagonal is invertible")
    }

    pub fn apply_line(&self, l: &LineP3) -> LineP3 {
        let rows: Vec<Vec<Rational>> = (0..2)
            .map(|r| (0..4).map(|k| &l.span()[(r, k)] * &self.entries[k]).collect())
            .collect();
        LineP3::from_span_rows(&rows[0], &rows[1]).expect("diagonal is invertible")
    }

    pub fn apply_curve(&self, c: &ParamCurve) -> ParamCurve {
        let forms = [0, 1, 2, 3].map(|k| c.forms[k].scale(&self.entries[k]));
        ParamCurve::new(forms).expect("diagonal is invertible")
    }

    /// Random entries in the fixture range, excluding zero.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let entries = [0; 4].map(|_: i64| loop {
            let v = rng.gen_range(SAMPLE_RANGE);
            if v != 0 {
                break rat(v);
            }
        });
        DiagonalAuto { entries }
    }
}

/// Binary form `sum c_i s^(d-i) t^i` of degree `d = coeffs.len() - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs a degree");
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let d = self.degree();
        self.coeffs.iter().enumerate().fold(Rational::zero(), |acc, (i, c)| {
            acc + c * num_traits::pow(s.clone(), d - i) * num_traits::pow(t.clone(), i)
        })
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        BinaryForm { coeffs: c }
    }

    /// As a polynomial in `nvars` variables with `s`, `t` at the given slots.
    pub fn to_poly(&self, nvars: usize, s: usize, t: usize) -> MultiPoly {
        let d = self.degree() as u32;
        MultiPoly::from_terms(
            nvars,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; nvars];
                e[s] += d - i as u32;
                e[t] += i as u32;
                (Exponents::new(e), c.clone())
            }),
        )
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of `t` dividing the form.
    fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Rational roots `(s : t)` of a nonzero form of degree at most 2,
    /// without multiplicity.
    pub fn rational_roots(&self) -> Vec<(Rational, Rational)> {
        assert!(self.degree() <= 2, "rational roots only for degree <= 2");
        assert!(!self.is_zero(), "zero form vanishes everywhere");
        let one = Rational::one;
        let c = &self.coeffs;
        let mut out = Vec::new();
        let mut rest = c.clone();
        if c[0].is_zero() && c.len() > 1 {
            out.push((one(), Rational::zero()));
            rest.remove(0);
        }
        match rest.len() {
            2 if !rest[0].is_zero() => out.push((-&rest[1] / &rest[0], one())),
            3 => {
                let disc = &rest[1] * &rest[1] - rat(4) * &rest[0] * &rest[2];
                if let Some(r) = rational_sqrt(&disc) {
                    let den = rat(2) * &rest[0];
                    out.push(((-&rest[1] + &r) / &den, one()));
                    if !r.is_zero() {
                        out.push(((-&rest[1] - &r) / &den, one()));
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Dehomogenization `f(s, 1)` as ascending univariate coefficients.
    fn affine(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.coeffs.iter().rev().cloned().collect();
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }
}

/// Exact square root of a nonnegative rational, if rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

fn univariate_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn univariate_gcd(a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Degree of the gcd of a set of binary forms over the rationals. All-zero
/// sets (and the empty set) have an undefined gcd, reported as `None`:
/// every point of P¹ is a common root.
pub fn common_factor_degree(forms: &[&BinaryForm]) -> Option<usize> {
    let nonzero: Vec<&&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let tv = nonzero.iter().map(|f| f.t_valuation()).min().unwrap();
    let g = nonzero
        .iter()
        .map(|f| f.affine())
        .reduce(univariate_gcd)
        .unwrap();
    Some(tv + g.len().saturating_sub(1))
}

/// Whether the forms share a root in P¹ (over an algebraic closure).
pub fn have_common_root(forms: &[&BinaryForm]) -> bool {
    common_factor_degree(forms).is_none_or(|d| d > 0)
}

/// A rational curve `(s:t) -> (f0 : f1 : f2 : f3)` of degree 1 (line) or 2
/// (plane conic).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamCurve {
    forms: [BinaryForm; 4],
}

impl ParamCurve {
    /// Validates degree, absence of a common factor, and that the image
    /// spans a line (degree 1) or exactly a plane (degree 2).
    pub fn new(forms: [BinaryForm; 4]) -> Result<Self, GeomError> {
        let d = forms[0].degree();
        if forms.iter().any(|f| f.degree() != d) {
            return Err(GeomError::DegenerateCurve("forms of different degrees".into()));
        }
        if !(1..=2).contains(&d) {
            return Err(GeomError::UnsupportedDegree(d));
        }
        if have_common_root(&forms.iter().collect::<Vec<_>>()) {
            return Err(GeomError::DegenerateCurve("forms share a common factor".into()));
        }
        let coeff_rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
        let rank = RatMatrix::from_rows(coeff_rows).expect("4 x (d+1)").rank();
        if rank != d + 1 {
            return Err(GeomError::DegenerateCurve(format!(
                "image spans a space of dimension {} instead of {}",
                rank as i64 - 1,
                d
            )));
        }
        Ok(ParamCurve { forms })
    }

    /// Conic `s^2 a + s t b + t^2 c`.
    pub fn conic(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Result<Self, GeomError> {
        let (a, b, c) = (a.coords(), b.coords(), c.coords());
        let forms = [0, 1, 2, 3].map(|k| BinaryForm::new(vec![a[k].clone(), b[k].clone(), c[k].clone()]));
        Self::new(forms)
    }

    pub fn degree(&self) -> usize {
        self.forms[0].degree()
    }

    pub fn forms(&self) -> &[BinaryForm; 4] {
        &self.forms
    }

    pub fn point_at(&self, s: &Rational, t: &Rational) -> Option<ProjPoint> {
        let c: Vec<Rational> = self.forms.iter().map(|f| f.eval(s, t)).collect();
        ProjPoint::new(&c).ok()
    }

    /// Coefficient matrix with one row per coordinate.
    pub fn coefficient_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.forms.iter().map(|f| f.coeffs().to_vec()).collect()).expect("rectangular")
    }

    /// For a conic, the plane containing it as a primitive linear form.
    pub fn plane(&self) -> Option<Vec<Rational>> {
        if self.degree() != 2 {
            return None;
        }
        // linear relations among the four forms: left kernel of the coefficient matrix
        let k = self.coefficient_matrix().transpose().kernel_basis();
        (k.len() == 1).then(|| k[0].clone())
    }

    /// Whether the curve passes through the coordinate point `e_i`.
    pub fn contains_coordinate_point(&self, i: usize) -> bool {
        let others: Vec<&BinaryForm> = (0..4).filter(|&k| k != i).map(|k| &self.forms[k]).collect();
        have_common_root(&others)
    }

    /// Whether the curve meets the set `{x_k = 0 for all k in slots}`.
    pub fn meets_coordinate_subspace(&self, slots: &[usize]) -> bool {
        let fs: Vec<&BinaryForm> = slots.iter().map(|&k| &self.forms[k]).collect();
        have_common_root(&fs)
    }
}

/// Random plane conic through `point`: `c(s,t) = s^2 A + s t B + t^2 C`
/// with `A = point` and `B`, `C` drawn from the fixture range without
/// zero coordinates, redrawn
/// until the curve is a nondegenerate plane conic.
pub fn conic_through<R: Rng + ?Sized>(point: &ProjPoint, rng: &mut R) -> Result<ParamCurve, GeomError> {
    const ATTEMPTS: usize = 100;
    for _ in 0..ATTEMPTS {
        let b = ProjPoint::random_torus(rng);
        let c = ProjPoint::random_torus(rng);
        if let Ok(curve) = ParamCurve::conic(point, &b, &c) {
            return Ok(curve);
        }
    }
    Err(GeomError::SamplingExhausted(ATTEMPTS))
}

/// Random line through `point` and a point with no zero coordinate.
pub fn line_through<R: Rng + ?Sized>(point: &ProjPoint, rng: &mut R) -> LineP3 {
    loop {
        if let Ok(l) = LineP3::from_points(point, &ProjPoint::random_torus(rng)) {
            return l;
        }
    }
}
