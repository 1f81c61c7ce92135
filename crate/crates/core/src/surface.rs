//! Analysis of implicit surfaces in P³: singular locus, cone tests,
//! coordinate-plane sections and line containment.

use num_traits::Zero;

use crate::error::SurfaceError;
use crate::groebner::{ideal_dimension, GroebnerConfig, Ideal};
use crate::linalg::{rat, RatMatrix, Rational};
use crate::poly::{monomials_of_degree, MultiPoly};
use crate::product::SurfaceImplicit;
use crate::projgeom::{hadamard_point, LineP3, ParamCurve, ProjPoint};
use crate::quadric::Quadric;

/// Projective dimension of `Sing(W)`; `-1` means smooth.
pub fn singular_locus_dimension(w: &SurfaceImplicit, config: &GroebnerConfig) -> Result<i64, SurfaceError> {
    if w.degree() < 2 {
        return Err(SurfaceError::DegreeTooLow { min: 2, found: w.degree() });
    }
    let ideal = Ideal::new(4, w.equation().gradient()).expect("4 variables");
    Ok(ideal_dimension(&ideal, config)? - 1)
}

fn gradient_at(f: &MultiPoly, p: &[Rational]) -> Vec<Rational> {
    f.gradient().iter().map(|g| g.evaluate(p).expect("matching arity")).collect()
}

pub fn is_singular_point(w: &SurfaceImplicit, p: &ProjPoint) -> bool {
    gradient_at(w.equation(), &p.coords()).iter().all(Zero::is_zero)
}

/// Whether `W` is a cone with vertex `v`: all partials vanish at `v` and
/// `W(x + s v) = W(x)` identically in `(x, s)`.
pub fn is_cone_with_vertex(w: &SurfaceImplicit, v: &ProjPoint) -> bool {
    if !is_singular_point(w, v) {
        return false;
    }
    let n = 5;
    let vc = v.coords();
    let images: Vec<MultiPoly> = (0..4)
        .map(|k| &MultiPoly::var(n, k) + &MultiPoly::var(n, 4).scale(&vc[k]))
        .collect();
    let shifted = w.equation().compose(&images).expect("4 images");
    shifted == w.equation().embed(n, &[0, 1, 2, 3])
}

/// Basis of the space of vertices `v` with `sum v_i dW/dx_i = 0`
/// identically. `W` is a cone with vertex `v` iff `v` lies in this space,
/// so an empty basis rules out every vertex, rational or not.
pub fn vertex_space(w: &SurfaceImplicit) -> Vec<Vec<Rational>> {
    let grad = w.equation().gradient();
    let d = w.degree().saturating_sub(1);
    let rows: Vec<Vec<Rational>> = monomials_of_degree(4, d)
        .iter()
        .map(|m| grad.iter().map(|g| g.coefficient(m)).collect())
        .collect();
    RatMatrix::from_rows(rows).expect("rectangular").kernel_basis()
}

/// `W ∩ H_i` as a form in the three remaining coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCurve {
    pub plane: usize,
    pub form: MultiPoly,
    pub degree: u32,
}

pub fn section(w: &SurfaceImplicit, plane: usize) -> Result<SectionCurve, SurfaceError> {
    assert!(plane < 4, "plane index {plane} out of range");
    let restricted = w.equation().set_zero(plane);
    if restricted.is_zero() {
        return Err(SurfaceError::PlaneComponent { plane });
    }
    Ok(SectionCurve {
        plane,
        form: restricted.remove_variable(plane),
        degree: w.degree(),
    })
}

/// Whether the plane curve has a singular point over ℂ (non-reduced curves
/// count as singular). Conics use the Gram determinant; higher degrees use
/// the dimension of the ideal of the curve and its partials.
pub fn section_is_singular(c: &SectionCurve, config: &GroebnerConfig) -> Result<bool, SurfaceError> {
    match c.degree {
        0 | 1 => Ok(false),
        2 => {
            let f = c.form.embed(4, &[0, 1, 2]);
            let q = Quadric::from_poly(&f).expect("nonzero conic");
            Ok(q.restrict_to_plane(3).det().is_zero())
        }
        _ => {
            let mut gens = vec![c.form.clone()];
            gens.extend(c.form.gradient());
            let ideal = Ideal::new(3, gens).expect("3 variables");
            Ok(ideal_dimension(&ideal, config)? >= 1)
        }
    }
}

/// Whether `W` vanishes identically on `L`.
pub fn line_in_surface(w: &SurfaceImplicit, l: &LineP3) -> bool {
    curve_in_surface(w, &l.parametrization())
}

pub fn curve_in_surface(w: &SurfaceImplicit, c: &ParamCurve) -> bool {
    let images: Vec<MultiPoly> = c.forms().iter().map(|f| f.to_poly(2, 0, 1)).collect();
    w.equation().compose(&images).expect("4 images").is_zero()
}

/// Rational points of `C ∩ H_i`.
pub fn rational_plane_points(c: &ParamCurve, plane: usize) -> Vec<ProjPoint> {
    let f = &c.forms()[plane];
    if f.is_zero() {
        return Vec::new();
    }
    f.rational_roots()
        .iter()
        .filter_map(|(s, t)| c.point_at(s, t))
        .collect()
}

/// Candidate vertices for a surface `L ⋆ C`: the coordinate points and
/// the products `p ⋆ q` where `p` is a rational point of `L ∩ H_i` or
/// `L(s:1)` for small integers `s`, `q` likewise on `C`, and the basis
/// points of [`vertex_space`]. Only singular points of `W` are kept.
pub fn candidate_vertices(w: &SurfaceImplicit, l: &LineP3, c: &ParamCurve) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = (0..4).map(ProjPoint::coordinate).collect();
    pts.extend(vertex_space(w).iter().filter_map(|v| ProjPoint::new(v).ok()));
    let small = || (-3..=3).map(|s| (rat(s), rat(1))).chain(std::iter::once((rat(1), rat(0))));
    let mut on_line: Vec<ProjPoint> = (0..4).filter_map(|i| l.meet_plane(i)).collect();
    on_line.extend(small().filter_map(|(s, t)| l.point_at(&s, &t)));
    let mut on_curve: Vec<ProjPoint> = (0..4).flat_map(|i| rational_plane_points(c, i)).collect();
    on_curve.extend(small().filter_map(|(s, t)| c.point_at(&s, &t)));
    for p in &on_line {
        for q in &on_curve {
            if let Ok(r) = hadamard_point(p, q) {
                pts.push(r);
            }
        }
    }
    let mut out: Vec<ProjPoint> = Vec::new();
    for p in pts {
        if is_singular_point(w, &p) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::{implicitize, ImplicitizeOptions};
    use crate::projgeom::{conic_through, line_through, point_star_line, StarImage};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(4, i)
    }

    fn surf(f: &MultiPoly) -> SurfaceImplicit {
        SurfaceImplicit::new(f).unwrap()
    }

    fn segre() -> SurfaceImplicit {
        surf(&(&(&x(0) * &x(3)) - &(&x(1) * &x(2))))
    }

    fn pt(c: [i64; 4]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    fn fixture(line_pt: [i64; 4], conic_pt: [i64; 4], seed: u64) -> (LineP3, ParamCurve, SurfaceImplicit) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = line_through(&pt(line_pt), &mut rng);
        let c = conic_through(&pt(conic_pt), &mut rng).unwrap();
        let w = implicitize(&l.parametrization(), &c, &ImplicitizeOptions::default())
            .unwrap()
            .surface()
            .unwrap()
            .clone();
        (l, c, w)
    }

    #[test]
    fn singular_locus_examples() {
        let cfg = GroebnerConfig::default();
        assert_eq!(singular_locus_dimension(&segre(), &cfg).unwrap(), -1);
        let (_, _, cone) = fixture([1, 0, 0, 0], [0, 1, 1, 1], 1);
        assert_eq!(cone.degree(), 2);
        assert_eq!(singular_locus_dimension(&cone, &cfg).unwrap(), 0);
        let (_, _, cubic) = fixture([0, 0, 1, 1], [1, 1, 0, 0], 1);
        assert_eq!(cubic.degree(), 3);
        assert_eq!(singular_locus_dimension(&cubic, &cfg).unwrap(), 1);
        let plane = surf(&x(0));
        assert!(matches!(
            singular_locus_dimension(&plane, &cfg),
            Err(SurfaceError::DegreeTooLow { min: 2, found: 1 })
        ));
    }

    #[test]
    fn cone_tests() {
        let (_, _, cone) = fixture([1, 0, 0, 0], [0, 1, 1, 1], 1);
        assert!(is_cone_with_vertex(&cone, &ProjPoint::coordinate(0)));
        for i in 0..4 {
            assert!(!is_cone_with_vertex(&segre(), &ProjPoint::coordinate(i)));
        }
        let diag = surf(&(&(&x(0).pow(2) + &x(1).pow(2)) + &x(2).pow(2)));
        assert!(is_cone_with_vertex(&diag, &ProjPoint::coordinate(3)));
        assert!(!is_cone_with_vertex(&diag, &ProjPoint::coordinate(0)));
    }

    #[test]
    fn sections_and_singularity() {
        let cfg = GroebnerConfig::default();
        let s0 = section(&segre(), 0).unwrap();
        let y = |i| MultiPoly::var(3, i);
        assert!(s0.form.equal_up_to_scale(&-&(&y(0) * &y(1))));
        for i in 0..4 {
            assert!(section_is_singular(&section(&segre(), i).unwrap(), &cfg).unwrap());
        }
        let sphere = surf(&(0..4).map(|i| x(i).pow(2)).fold(MultiPoly::zero(4), |a, b| &a + &b));
        for i in 0..4 {
            assert!(!section_is_singular(&section(&sphere, i).unwrap(), &cfg).unwrap());
        }
        let (_, _, cubic) = fixture([0, 0, 1, 1], [1, 1, 0, 0], 1);
        for i in 0..4 {
            let s = section(&cubic, i).unwrap();
            assert_eq!(s.degree, 3);
            assert!(section_is_singular(&s, &cfg).unwrap());
        }
        let reducible = surf(&(&x(0) * &segre().equation().clone()));
        assert_eq!(section(&reducible, 0), Err(SurfaceError::PlaneComponent { plane: 0 }));
    }

    #[test]
    fn smooth_cubic_section_is_nonsingular() {
        // Fermat cubic: sections are smooth Fermat curves
        let f = (0..4).map(|i| x(i).pow(3)).fold(MultiPoly::zero(4), |a, b| &a + &b);
        let cfg = GroebnerConfig::default();
        for i in 0..4 {
            assert!(!section_is_singular(&section(&surf(&f), i).unwrap(), &cfg).unwrap());
        }
    }

    #[test]
    fn lines_in_surfaces() {
        let l = LineP3::from_points(&pt([1, 0, 1, 0]), &pt([0, 1, 0, 1])).unwrap();
        assert!(line_in_surface(&segre(), &l));
        let m = LineP3::from_points(&pt([1, 2, 3, 4]), &pt([2, -1, 5, 1])).unwrap();
        assert!(!line_in_surface(&segre(), &m));

        // L ⋆ q lies in L ⋆ C for q ∈ C ∩ H_i
        let (l, c, w) = fixture([0, 0, 1, 1], [1, 1, 0, 0], 1);
        let mut found = 0;
        for i in 0..4 {
            for q in rational_plane_points(&c, i) {
                if let Ok(StarImage::Line(m)) = point_star_line(&q, &l) {
                    assert!(line_in_surface(&w, &m));
                    for s in -2..=2 {
                        let p = m.point_at(&rat(s), &rat(1)).unwrap();
                        assert!(w.contains_point(&p));
                    }
                    found += 1;
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn vertex_spaces() {
        let (_, _, cone) = fixture([1, 0, 0, 0], [0, 1, 1, 1], 1);
        let v = vertex_space(&cone);
        assert_eq!(v.len(), 1);
        assert_eq!(ProjPoint::new(&v[0]).unwrap(), ProjPoint::coordinate(0));
        let (_, _, cubic) = fixture([0, 0, 1, 1], [1, 1, 0, 0], 1);
        assert!(vertex_space(&cubic).is_empty());
        assert!(vertex_space(&segre()).is_empty());
        let plane_pair = surf(&(&x(0) * &x(1)));
        assert_eq!(vertex_space(&plane_pair).len(), 2);
    }

    #[test]
    fn cubic_is_not_a_cone_at_candidates() {
        let (l, c, w) = fixture([0, 0, 1, 1], [1, 1, 0, 0], 1);
        let cands = candidate_vertices(&w, &l, &c);
        assert!(!cands.is_empty());
        assert!(cands.iter().all(|v| !is_cone_with_vertex(&w, v)));
    }

    #[test]
    fn rational_roots_of_binary_forms() {
        use crate::projgeom::BinaryForm;
        // s² - 4t² = (s - 2t)(s + 2t)
        let f = BinaryForm::new(vec![rat(1), rat(0), rat(-4)]);
        assert_eq!(f.rational_roots(), vec![(rat(2), rat(1)), (rat(-2), rat(1))]);
        // s² + t²: none
        assert!(BinaryForm::new(vec![rat(1), rat(0), rat(1)]).rational_roots().is_empty());
        // st: (1:0) and (0:1)
        let g = BinaryForm::new(vec![rat(0), rat(1), rat(0)]);
        assert_eq!(g.rational_roots(), vec![(rat(1), rat(0)), (rat(0), rat(1))]);
    }
}
