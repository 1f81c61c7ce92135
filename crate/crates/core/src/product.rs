//! Hadamard products of parametrized curves: the product parametrization,
//! implicitization by linear algebra, base-point analysis, and torus checks.
//!
//! Parameters live in a four-variable ring `(s, t, u, v)`: the first curve
//! uses `(s, t)`, the second `(u, v)`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ProductError, SurfaceError};
use crate::groebner::{eliminate, GroebnerConfig, Ideal};
use crate::linalg::{rat, RatMatrix, Rational};
use crate::poly::{monomials_of_degree, Exponents, MultiPoly};
use crate::projgeom::{DiagonalAuto, ParamCurve, ProjPoint, SAMPLE_RANGE};

pub const PARAM_NAMES: [&str; 4] = ["s", "t", "u", "v"];
pub const COORD_NAMES: [&str; 4] = ["x0", "x1", "x2", "x3"];

/// Four bihomogeneous forms in `(s, t; u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductForms {
    pub forms: [MultiPoly; 4],
    pub bidegree: (u32, u32),
}

impl ProductForms {
    pub fn param_blocks() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![2, 3]]
    }

    pub fn evaluate(&self, params: &[Rational]) -> Vec<Rational> {
        self.forms
            .iter()
            .map(|f| f.evaluate(params).expect("four parameters"))
            .collect()
    }

    pub fn point_at(&self, params: &[Rational]) -> Option<ProjPoint> {
        ProjPoint::new(&self.evaluate(params)).ok()
    }

    /// Exact Jacobian `d f_k / d param_j` at a parameter point.
    pub fn jacobian_at(&self, params: &[Rational]) -> RatMatrix {
        let rows = self
            .forms
            .iter()
            .map(|f| {
                f.gradient()
                    .iter()
                    .map(|g| g.evaluate(params).expect("four parameters"))
                    .collect()
            })
            .collect();
        RatMatrix::from_rows(rows).expect("4x4")
    }
}

/// Coordinate-wise product of the two form vectors.
pub fn product_parametrization(c1: &ParamCurve, c2: &ParamCurve) -> ProductForms {
    let forms = [0, 1, 2, 3].map(|k| {
        let a = c1.forms()[k].to_poly(4, 0, 1);
        let b = c2.forms()[k].to_poly(4, 2, 3);
        &a * &b
    });
    ProductForms {
        forms,
        bidegree: (c1.degree() as u32, c2.degree() as u32),
    }
}

/// Implicit equation of a surface in P³, stored normalized (primitive
/// integer coefficients, positive grevlex-leading coefficient).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceImplicit {
    equation: MultiPoly,
    degree: u32,
}

impl SurfaceImplicit {
    pub fn new(equation: &MultiPoly) -> Result<Self, SurfaceError> {
        if equation.nvars() != 4 || equation.is_zero() || !equation.is_homogeneous() {
            return Err(SurfaceError::BadEquation);
        }
        let degree = equation.total_degree().expect("nonzero");
        if degree == 0 {
            return Err(SurfaceError::BadEquation);
        }
        Ok(SurfaceImplicit {
            equation: equation.normalized(),
            degree,
        })
    }

    pub fn equation(&self) -> &MultiPoly {
        &self.equation
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.equation.evaluate(&p.coords()).expect("4 coordinates").is_zero()
    }
}

/// What the Hadamard product of two curves turned out to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductKind {
    PointImage(ProjPoint),
    /// Image is a curve; `plane` is a linear form vanishing on it, if any.
    CurveImage { plane: Option<Vec<Rational>> },
    /// Image is a plane, given by a primitive linear form.
    PlaneImage(Vec<Rational>),
    SurfaceImage(SurfaceImplicit),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedProduct {
    pub kind: ProductKind,
    /// Jacobian rank of the product parametrization at each sampled point.
    pub jacobian_ranks: Vec<usize>,
    /// `(degree, kernel dimension)` for every degree tried.
    pub kernel_dims: Vec<(u32, usize)>,
}

impl ClassifiedProduct {
    pub fn surface(&self) -> Option<&SurfaceImplicit> {
        match &self.kind {
            ProductKind::SurfaceImage(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImplicitizeOptions {
    /// Highest degree tried; defaults to `2 * deg C1 * deg C2`.
    pub cap: Option<u32>,
    /// Seed for the Jacobian sample points.
    pub seed: u64,
}

impl Default for ImplicitizeOptions {
    fn default() -> Self {
        ImplicitizeOptions { cap: None, seed: 0x5eed }
    }
}

/// Number of parameter points used for the Jacobian rank.
const JACOBIAN_ATTEMPTS: usize = 3;

/// Kernel of the substitution map from degree-`d` forms in `x0..x3` to
/// bihomogeneous forms in the parameters. Returns the kernel as polynomials.
fn kernel_in_degree(pf: &ProductForms, d: u32) -> Vec<MultiPoly> {
    let monos = monomials_of_degree(4, d);
    let mut powers: Vec<Vec<MultiPoly>> = pf
        .forms
        .iter()
        .map(|f| vec![MultiPoly::one(4), f.clone()])
        .collect();
    for (k, f) in pf.forms.iter().enumerate() {
        while powers[k].len() <= d as usize {
            let next = &powers[k][powers[k].len() - 1] * f;
            powers[k].push(next);
        }
    }
    let images: Vec<MultiPoly> = monos
        .iter()
        .map(|m| {
            let mut p = MultiPoly::one(4);
            for (k, &e) in m.as_slice().iter().enumerate() {
                if e > 0 {
                    p = &p * &powers[k][e as usize];
                }
            }
            p
        })
        .collect();
    let (a, b) = pf.bidegree;
    let targets: Vec<Exponents> = monomials_of_degree(2, d * a)
        .into_iter()
        .flat_map(|st| {
            monomials_of_degree(2, d * b).into_iter().map(move |uv| {
                let (x, y) = (st.as_slice(), uv.as_slice());
                Exponents::new(vec![x[0], x[1], y[0], y[1]])
            })
        })
        .collect();
    let mut m = RatMatrix::zeros(targets.len(), monos.len());
    for (j, img) in images.iter().enumerate() {
        for (i, t) in targets.iter().enumerate() {
            m[(i, j)] = img.coefficient(t);
        }
    }
    m.kernel_basis()
        .into_iter()
        .map(|v| MultiPoly::from_terms(4, monos.iter().cloned().zip(v)))
        .collect()
}

fn random_params(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..4).map(|_| rat(rng.gen_range(SAMPLE_RANGE))).collect()
}

/// Implicitizes `C1 * C2` and classifies the image.
pub fn implicitize(
    c1: &ParamCurve,
    c2: &ParamCurve,
    options: &ImplicitizeOptions,
) -> Result<ClassifiedProduct, ProductError> {
    let pf = product_parametrization(c1, c2);
    implicitize_forms(&pf, options)
}

pub fn implicitize_forms(
    pf: &ProductForms,
    options: &ImplicitizeOptions,
) -> Result<ClassifiedProduct, ProductError> {
    if pf.forms.iter().all(MultiPoly::is_zero) {
        return Err(ProductError::ZeroParametrization);
    }
    let cap = options.cap.unwrap_or(2 * pf.bidegree.0 * pf.bidegree.1);
    if cap == 0 {
        return Err(ProductError::InvalidCap);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut jacobian_ranks = Vec::with_capacity(JACOBIAN_ATTEMPTS);
    let mut sample_point = None;
    for _ in 0..JACOBIAN_ATTEMPTS {
        let params = random_params(&mut rng);
        jacobian_ranks.push(pf.jacobian_at(&params).rank());
        if sample_point.is_none() {
            sample_point = pf.point_at(&params);
        }
    }
    let rank = *jacobian_ranks.iter().max().expect("attempts > 0");
    let mut kernel_dims = Vec::new();

    let linear = kernel_in_degree(pf, 1);
    kernel_dims.push((1, linear.len()));
    let linear_form = |p: &MultiPoly| -> Vec<Rational> {
        (0..4).map(|i| p.coefficient(&Exponents::unit(4, i))).collect()
    };

    let kind = match rank {
        0 => return Err(ProductError::ZeroParametrization),
        1 => {
            let p = match sample_point {
                Some(p) => p,
                None => (0..16)
                    .find_map(|_| pf.point_at(&random_params(&mut rng)))
                    .ok_or(ProductError::ZeroParametrization)?,
            };
            ProductKind::PointImage(p)
        }
        2 => ProductKind::CurveImage {
            plane: linear.first().map(linear_form),
        },
        _ => {
            if let Some(l) = linear.first() {
                ProductKind::PlaneImage(linear_form(l))
            } else {
                let mut found = None;
                for d in 2..=cap {
                    let k = kernel_in_degree(pf, d);
                    kernel_dims.push((d, k.len()));
                    match k.len() {
                        0 => continue,
                        1 => {
                            found = Some(SurfaceImplicit::new(&k[0]).expect("nonzero homogeneous"));
                            break;
                        }
                        dim => return Err(ProductError::AmbiguousKernel { degree: d, dim }),
                    }
                }
                match found {
                    Some(s) => ProductKind::SurfaceImage(s),
                    None => return Err(ProductError::CapExhausted { cap }),
                }
            }
        }
    };
    Ok(ClassifiedProduct {
        kind,
        jacobian_ranks,
        kernel_dims,
    })
}

/// Implicit equations of `C1 * C2` by eliminating the parameters from the
/// graph ideal `<x_k - f_k(s,t,u,v)>`. Returned normalized, in `x0..x3`.
pub fn implicitize_by_elimination(
    c1: &ParamCurve,
    c2: &ParamCurve,
    config: &GroebnerConfig,
) -> Result<Vec<MultiPoly>, ProductError> {
    let pf = product_parametrization(c1, c2);
    let n = 8;
    let gens = (0..4)
        .map(|k| {
            let f = pf.forms[k].embed(n, &[0, 1, 2, 3]);
            &MultiPoly::var(n, 4 + k) - &f
        })
        .collect();
    let ideal = Ideal::new(n, gens).expect("shared ring");
    let elim = eliminate(&ideal, 4, config)?;
    let mut out: Vec<MultiPoly> = elim
        .generators()
        .iter()
        .map(|g| {
            let mut p = g.clone();
            for _ in 0..4 {
                p = p.remove_variable(0);
            }
            p.normalized()
        })
        .collect();
    out.sort_by_key(|p| (p.total_degree(), p.to_string()));
    Ok(out)
}

/// Pairs of coordinate-zero patterns witnessing an undefined product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePointWitness {
    /// Coordinates where the point of `C1` vanishes.
    pub first_zero_slots: Vec<usize>,
    /// Coordinates where the point of `C2` vanishes (the complement).
    pub second_zero_slots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismStatus {
    Morphism,
    BasePoints(Vec<BasePointWitness>),
}

impl MorphismStatus {
    pub fn is_morphism(&self) -> bool {
        matches!(self, MorphismStatus::Morphism)
    }
}

/// Decides whether `p * q` is defined for every `p` in `C1` and `q` in `C2`:
/// for each split of the coordinates into `S` and its complement, checks
/// whether `C1` meets `{x_S = 0}` and `C2` meets `{x_{S^c} = 0}` (common
/// factors of binary forms, no root extraction).
pub fn morphism_check(c1: &ParamCurve, c2: &ParamCurve) -> MorphismStatus {
    let mut witnesses = Vec::new();
    for mask in 0u8..16 {
        let s: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
        let sc: Vec<usize> = (0..4).filter(|i| mask & (1 << i) == 0).collect();
        if c1.meets_coordinate_subspace(&s) && c2.meets_coordinate_subspace(&sc) {
            witnesses.push(BasePointWitness {
                first_zero_slots: s,
                second_zero_slots: sc,
            });
        }
    }
    if witnesses.is_empty() {
        MorphismStatus::Morphism
    } else {
        MorphismStatus::BasePoints(witnesses)
    }
}

/// Whether `psi(L) * psi^-1(R)` has the same implicit classification as `L * R`.
pub fn torus_invariance_check(
    l: &ParamCurve,
    r: &ParamCurve,
    psi: &DiagonalAuto,
    options: &ImplicitizeOptions,
) -> Result<bool, ProductError> {
    let base = implicitize(l, r, options)?;
    let moved = implicitize(&psi.apply_curve(l), &psi.inverse().apply_curve(r), options)?;
    Ok(same_image(&base.kind, &moved.kind))
}

/// Equality of classified images up to scale.
pub fn same_image(a: &ProductKind, b: &ProductKind) -> bool {
    use crate::linalg::normalize_vector;
    match (a, b) {
        (ProductKind::SurfaceImage(x), ProductKind::SurfaceImage(y)) => x == y,
        (ProductKind::PlaneImage(x), ProductKind::PlaneImage(y)) => {
            normalize_vector(x) == normalize_vector(y)
        }
        (ProductKind::PointImage(x), ProductKind::PointImage(y)) => x == y,
        (ProductKind::CurveImage { plane: x }, ProductKind::CurveImage { plane: y }) => {
            x.as_ref().map(|v| normalize_vector(v)) == y.as_ref().map(|v| normalize_vector(v))
        }
        _ => false,
    }
}

/// Whether `F(product forms)` is the zero polynomial.
pub fn vanishes_on_product(equation: &MultiPoly, pf: &ProductForms) -> bool {
    equation
        .substitute_biparametrization(&pf.forms, &ProductForms::param_blocks())
        .is_ok_and(|p| p.is_zero())
}

/// Linear form coefficients are zero only in the given slot.
pub fn is_coordinate_plane(form: &[Rational]) -> Option<usize> {
    let nz: Vec<usize> = (0..form.len()).filter(|&i| !form[i].is_zero()).collect();
    (nz.len() == 1).then(|| nz[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::projgeom::{conic_through, line_through, LineP3, StarImage, point_star_line};
    use rand::SeedableRng;

    fn pt(c: [i64; 4]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    fn line(a: [i64; 4], b: [i64; 4]) -> ParamCurve {
        LineP3::from_points(&pt(a), &pt(b)).unwrap().parametrization()
    }

    fn segre_pair() -> (ParamCurve, ParamCurve) {
        (line([1, 0, 1, 0], [0, 1, 0, 1]), line([1, 1, 0, 0], [0, 0, 1, 1]))
    }

    fn segre() -> MultiPoly {
        let x = |i| MultiPoly::var(4, i);
        &(&x(0) * &x(3)) - &(&x(1) * &x(2))
    }

    #[test]
    fn segre_parametrization() {
        let (l, r) = segre_pair();
        let pf = product_parametrization(&l, &r);
        let v = |i| MultiPoly::var(4, i);
        // L = (s, t, s, t), R = (u, u, v, v)
        assert_eq!(pf.forms, [&v(0) * &v(2), &v(1) * &v(2), &v(0) * &v(3), &v(1) * &v(3)]);
        assert_eq!(pf.bidegree, (1, 1));
    }

    #[test]
    fn claim_chart_parametrization() {
        // chart lines [1 0 u1 v1; 0 1 u2 v2] and [1 0 z1 w1; 0 1 z2 w2]
        let (u1, u2, v1, v2) = (2, 3, 5, 7);
        let (z1, z2, w1, w2) = (-1, 4, 6, -3);
        let l = line([1, 0, u1, v1], [0, 1, u2, v2]);
        let r = line([1, 0, z1, w1], [0, 1, z2, w2]);
        let pf = product_parametrization(&l, &r);
        let (lam1, lam2, mu1, mu2) = (rat(3), rat(-2), rat(5), rat(1));
        let got = pf.evaluate(&[lam1.clone(), lam2.clone(), mu1.clone(), mu2.clone()]);
        let expected = vec![
            &lam1 * &mu1,
            &lam2 * &mu2,
            (&lam1 * rat(u1) + &lam2 * rat(u2)) * (&mu1 * rat(z1) + &mu2 * rat(z2)),
            (&lam1 * rat(v1) + &lam2 * rat(v2)) * (&mu1 * rat(w1) + &mu2 * rat(w2)),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn segre_implicitization() {
        let (l, r) = segre_pair();
        let c = implicitize(&l, &r, &ImplicitizeOptions::default()).unwrap();
        let s = c.surface().expect("surface");
        assert_eq!(s.degree(), 2);
        assert!(s.equation().equal_up_to_scale(&segre()));
        assert_eq!(c.kernel_dims, vec![(1, 0), (2, 1)]);
        let oracle = implicitize_by_elimination(&l, &r, &GroebnerConfig::default()).unwrap();
        assert_eq!(oracle, vec![s.equation().clone()]);
    }

    #[test]
    fn square_of_a_line_is_planar() {
        let l = line([1, 2, 3, 4], [2, -1, 5, 1]);
        let c = implicitize(&l, &l, &ImplicitizeOptions::default()).unwrap();
        assert!(matches!(c.kind, ProductKind::PlaneImage(_)));
    }

    #[test]
    fn line_in_coordinate_plane_gives_that_plane() {
        let l = line([0, 1, 2, 3], [0, 2, -1, 1]);
        let r = line([1, 2, 3, 4], [2, -1, 5, 1]);
        let c = implicitize(&l, &r, &ImplicitizeOptions::default()).unwrap();
        match c.kind {
            ProductKind::PlaneImage(f) => assert_eq!(is_coordinate_plane(&f), Some(0)),
            other => panic!("expected a plane, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_images() {
        // coordinate line times coordinate line: a point or a line
        let l = line([1, 0, 0, 0], [0, 1, 0, 0]);
        let r = line([1, 0, 0, 0], [0, 0, 1, 0]);
        let c = implicitize(&l, &r, &ImplicitizeOptions::default()).unwrap();
        assert_eq!(c.kind, ProductKind::PointImage(ProjPoint::coordinate(0)));

        let l = line([1, 0, 0, 0], [0, 1, 0, 0]);
        let r = line([1, 1, 0, 0], [1, 2, 3, 0]);
        let c = implicitize(&l, &r, &ImplicitizeOptions::default()).unwrap();
        assert!(matches!(c.kind, ProductKind::CurveImage { .. }));
    }

    #[test]
    fn morphism_examples() {
        let (l, r) = segre_pair();
        assert_eq!(morphism_check(&l, &r), MorphismStatus::Morphism);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let through_e0 = line_through(&ProjPoint::coordinate(0), &mut rng).parametrization();
        let c = conic_through(&pt([0, 1, 1, 1]), &mut rng).unwrap();
        match morphism_check(&through_e0, &c) {
            MorphismStatus::BasePoints(w) => {
                assert!(w.iter().any(|b| b.first_zero_slots == vec![1, 2, 3] && b.second_zero_slots == vec![0]));
            }
            MorphismStatus::Morphism => panic!("expected base points"),
        }

        // a line avoiding all six coordinate lines works with any partner
        let avoid = line([1, 2, 3, 4], [2, -1, 5, 1]);
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(!avoid.meets_coordinate_subspace(&[i, j]));
            }
        }
        for _ in 0..10 {
            let other = LineP3::random(&mut rng).parametrization();
            if (0..4).all(|i| !other.contains_coordinate_point(i)) {
                assert!(morphism_check(&avoid, &other).is_morphism());
            }
        }
    }

    #[test]
    fn zero_degree_curve_is_out_of_domain() {
        use crate::projgeom::BinaryForm;
        let one = BinaryForm::new(vec![rat(1)]);
        assert!(ParamCurve::new([one.clone(), one.clone(), one.clone(), one]).is_err());
    }

    #[test]
    fn torus_invariance() {
        let (l, r) = segre_pair();
        assert!(torus_invariance_check(&l, &r, &DiagonalAuto::identity(), &ImplicitizeOptions::default()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut one_sided_differs = 0;
        for _ in 0..10 {
            let l = LineP3::random(&mut rng).parametrization();
            let r = LineP3::random(&mut rng).parametrization();
            let psi = DiagonalAuto::random(&mut rng);
            assert!(torus_invariance_check(&l, &r, &psi, &ImplicitizeOptions::default()).unwrap());
            let base = implicitize(&l, &r, &ImplicitizeOptions::default()).unwrap();
            let one_sided = implicitize(&psi.apply_curve(&l), &r, &ImplicitizeOptions::default()).unwrap();
            if !same_image(&base.kind, &one_sided.kind) {
                one_sided_differs += 1;
            }
        }
        assert!(one_sided_differs > 0);
    }

    #[test]
    fn implicit_equation_vanishes_and_map_is_injective() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut surfaces = 0;
        while surfaces < 5 {
            let l = LineP3::random(&mut rng).parametrization();
            let r = LineP3::random(&mut rng).parametrization();
            if !morphism_check(&l, &r).is_morphism() {
                continue;
            }
            let c = implicitize(&l, &r, &ImplicitizeOptions::default()).unwrap();
            let Some(s) = c.surface() else { continue };
            surfaces += 1;
            let pf = product_parametrization(&l, &r);
            assert!(vanishes_on_product(s.equation(), &pf));
            assert_eq!(s.degree(), 2);
            // injectivity: 20 distinct parameter pairs give 20 distinct points
            let mut seen = std::collections::HashSet::new();
            let mut params = std::collections::HashSet::new();
            while params.len() < 20 {
                let st = ProjPoint::from_ints([1, rng.gen_range(-30..=30), 0, 0]).unwrap();
                let uv = ProjPoint::from_ints([1, rng.gen_range(-30..=30), 0, 0]).unwrap();
                if params.insert((st.clone(), uv.clone())) {
                    let c1 = st.coords();
                    let c2 = uv.coords();
                    let p = pf.point_at(&[c1[0].clone(), c1[1].clone(), c2[0].clone(), c2[1].clone()]).unwrap();
                    seen.insert(p);
                }
            }
            assert_eq!(seen.len(), 20);
        }
    }

    #[test]
    fn point_star_line_product_is_planar() {
        let l = LineP3::from_points(&pt([1, 2, 3, 4]), &pt([2, -1, 5, 1])).unwrap();
        let StarImage::Line(m) = point_star_line(&pt([2, 3, -1, 5]), &l).unwrap() else {
            panic!("expected a line")
        };
        let c = implicitize(&l.parametrization(), &m.parametrization(), &ImplicitizeOptions::default()).unwrap();
        assert!(matches!(c.kind, ProductKind::PlaneImage(_)));
    }
}
