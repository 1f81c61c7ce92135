//! Quadric surfaces in P³: Gram matrices, smoothness, the adjugate diagonal,
//! coordinate-plane sections and the singular coordinate locus.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::QuadricError;
use crate::linalg::{primitive_integer_vector, rat, RatMatrix, Rational};
use crate::poly::{monomials_of_degree, MultiPoly};
use crate::projgeom::ProjPoint;

/// Index pairs `(i, j)`, `i <= j`, of the ten quadratic monomials in the
/// coefficient order `c0..c9` (x0², x0x1, x0x2, x0x3, x1², x1x2, x1x3, x2², x2x3, x3²).
pub fn coefficient_pairs() -> Vec<(usize, usize)> {
    monomials_of_degree(4, 2)
        .iter()
        .map(|e| {
            let s: Vec<usize> = e.support().collect();
            if s.len() == 1 {
                (s[0], s[0])
            } else {
                (s[0], s[1])
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    gram: RatMatrix,
}

impl Quadric {
    pub fn from_gram(gram: RatMatrix) -> Result<Self, QuadricError> {
        if gram.rows() != 4 || gram.cols() != 4 || !gram.is_symmetric() {
            return Err(QuadricError::BadGram);
        }
        if gram.is_zero() {
            return Err(QuadricError::NotQuadric("zero form".into()));
        }
        Ok(Quadric { gram })
    }

    pub fn from_poly(f: &MultiPoly) -> Result<Self, QuadricError> {
        if f.nvars() != 4 {
            return Err(QuadricError::NotQuadric(format!("expected 4 variables, got {}", f.nvars())));
        }
        if f.is_zero() {
            return Err(QuadricError::NotQuadric("zero polynomial".into()));
        }
        if !f.is_homogeneous() || f.total_degree() != Some(2) {
            return Err(QuadricError::NotQuadric("not a homogeneous form of degree 2".into()));
        }
        let coeffs: Vec<Rational> = monomials_of_degree(4, 2).iter().map(|e| f.coefficient(e)).collect();
        Self::from_coefficients(&coeffs)
    }

    /// Builds the quadric `c0 x0² + c1 x0x1 + ... + c9 x3²`.
    pub fn from_coefficients(c: &[Rational]) -> Result<Self, QuadricError> {
        if c.len() != 10 {
            return Err(QuadricError::NotQuadric(format!("expected 10 coefficients, got {}", c.len())));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut g = RatMatrix::zeros(4, 4);
        for (k, &(i, j)) in coefficient_pairs().iter().enumerate() {
            if i == j {
                g[(i, i)] = c[k].clone();
            } else {
                g[(i, j)] = &c[k] * &half;
                g[(j, i)] = &c[k] * &half;
            }
        }
        Self::from_gram(g)
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        coefficient_pairs()
            .iter()
            .map(|&(i, j)| {
                if i == j {
                    self.gram[(i, i)].clone()
                } else {
                    &self.gram[(i, j)] * rat(2)
                }
            })
            .collect()
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(4, monomials_of_degree(4, 2).into_iter().zip(self.coefficients()))
    }

    /// Same quadric rescaled to primitive integer coefficients.
    pub fn normalized(&self) -> Quadric {
        Quadric::from_poly(&self.to_poly().normalized()).expect("nonzero quadric")
    }

    pub fn same_up_to_scale(&self, other: &Quadric) -> bool {
        self.to_poly().equal_up_to_scale(&other.to_poly())
    }

    pub fn det(&self) -> Rational {
        self.gram.det_bareiss().expect("square")
    }

    pub fn smoothness(&self) -> Smoothness {
        let rank = self.gram.rank();
        if rank == 4 {
            return Smoothness::Smooth;
        }
        let vertex_space: Vec<Vec<BigInt>> =
            self.gram.kernel_basis().iter().map(|v| primitive_integer_vector(v)).collect();
        Smoothness::Cone { rank, vertex_space }
    }

    /// Diagonal of the adjugate of the Gram matrix; entry `i` is the
    /// determinant of the section Gram on `H_i`.
    pub fn adjugate_diagonal(&self) -> [Rational; 4] {
        let adj = self.gram.adjugate().expect("square");
        [0, 1, 2, 3].map(|i| adj[(i, i)].clone())
    }

    /// Membership in the closure of the variety of quadrics with null
    /// adjugate diagonal.
    pub fn in_closure_y(&self) -> bool {
        self.adjugate_diagonal().iter().all(Zero::is_zero)
    }

    pub fn restrict_to_plane(&self, plane: usize) -> ConicInPlane {
        assert!(plane < 4, "plane index {plane} out of range");
        let keep: Vec<usize> = (0..4).filter(|&k| k != plane).collect();
        ConicInPlane {
            plane,
            gram: self.gram.select(&keep, &keep),
        }
    }

    pub fn scl(&self) -> SclResult {
        let sections = [0, 1, 2, 3].map(|i| self.restrict_to_plane(i).status());
        SclResult::from_sections(sections)
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// Singular quadric: Gram rank and a basis of the vertex space.
    Cone { rank: usize, vertex_space: Vec<Vec<BigInt>> },
}

impl Smoothness {
    /// The vertex when it is a single point (rank 3).
    pub fn vertex(&self) -> Option<ProjPoint> {
        match self {
            Smoothness::Cone { rank: 3, vertex_space } => {
                let v: Vec<Rational> = vertex_space[0].iter().cloned().map(Rational::from_integer).collect();
                ProjPoint::new(&v).ok()
            }
            _ => None,
        }
    }
}

/// The section `Q ∩ H_i` as a conic in the remaining three coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicInPlane {
    pub plane: usize,
    pub gram: RatMatrix,
}

impl ConicInPlane {
    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn det(&self) -> Rational {
        self.gram.det_bareiss().expect("square")
    }

    /// Lifts a vector in the three remaining coordinates to P³ with 0 at the plane slot.
    pub fn embed(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = Vec::with_capacity(4);
        let mut it = v.iter();
        for k in 0..4 {
            if k == self.plane {
                out.push(Rational::zero());
            } else {
                out.push(it.next().expect("three entries").clone());
            }
        }
        out
    }

    pub fn status(&self) -> SectionStatus {
        match self.rank() {
            3 => SectionStatus::SmoothConic,
            2 => {
                let k = self.gram.kernel_basis();
                let center = ProjPoint::new(&self.embed(&k[0])).expect("kernel vector is nonzero");
                SectionStatus::ReducibleConic(center)
            }
            1 => SectionStatus::DoubleLine,
            _ => SectionStatus::ContainedInPlane,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionStatus {
    SmoothConic,
    ReducibleConic(ProjPoint),
    DoubleLine,
    ContainedInPlane,
}

impl SectionStatus {
    pub fn center(&self) -> Option<&ProjPoint> {
        match self {
            SectionStatus::ReducibleConic(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SectionStatus::SmoothConic => "smooth_conic",
            SectionStatus::ReducibleConic(_) => "reducible_conic",
            SectionStatus::DoubleLine => "double_line",
            SectionStatus::ContainedInPlane => "contained_in_plane",
        }
    }
}

/// Singular points of the four coordinate-plane sections, one plane at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SclResult {
    pub sections: [SectionStatus; 4],
    pub all_four_reducible: bool,
    pub centers_distinct: bool,
    /// Each center `O_i` has nonzero coordinates away from slot `i`.
    pub off_other_planes: bool,
    /// Determinant of the four centers; `None` unless all four exist.
    pub centers_det: Option<Rational>,
}

impl SclResult {
    fn from_sections(sections: [SectionStatus; 4]) -> Self {
        let centers: Vec<&ProjPoint> = sections.iter().filter_map(SectionStatus::center).collect();
        let all_four_reducible = centers.len() == 4;
        let centers_distinct = all_four_reducible
            && (0..4).all(|i| (i + 1..4).all(|j| centers[i] != centers[j]));
        let off_other_planes = all_four_reducible
            && centers.iter().enumerate().all(|(i, c)| c.zero_slots() == vec![i]);
        let centers_det = all_four_reducible.then(|| {
            let pts: Vec<ProjPoint> = centers.iter().map(|c| (*c).clone()).collect();
            points_determinant(&pts)
        });
        SclResult {
            sections,
            all_four_reducible,
            centers_distinct,
            off_other_planes,
            centers_det,
        }
    }

    pub fn centers(&self) -> Option<[ProjPoint; 4]> {
        if !self.all_four_reducible {
            return None;
        }
        Some([0, 1, 2, 3].map(|i| self.sections[i].center().expect("reducible").clone()))
    }

    pub fn coplanar(&self) -> Option<bool> {
        self.centers_det.as_ref().map(Zero::is_zero)
    }
}

/// Determinant of the 4×4 matrix whose rows are the canonical
/// representatives of four points.
pub fn points_determinant(points: &[ProjPoint]) -> Rational {
    let rows = points.iter().map(|p| p.coords().to_vec()).collect();
    RatMatrix::from_rows(rows)
        .expect("rows of length 4")
        .det_bareiss()
        .expect("square")
}

fn det3(m: &[[MultiPoly; 3]; 3]) -> MultiPoly {
    let t = |a: usize, b: usize, c: usize| &(&m[0][a] * &m[1][b]) * &m[2][c];
    let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
    let neg = &(&t(2, 1, 0) + &t(0, 2, 1)) + &t(1, 0, 2);
    &pos - &neg
}

/// The four adjugate-diagonal entries of the generic Gram matrix as
/// polynomials in `c0..c9`.
pub fn adjugate_diagonal_polynomials() -> [MultiPoly; 4] {
    let half = Rational::new(BigInt::one(), 2.into());
    let mut g: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::zero(10); 4]; 4];
    for (k, &(i, j)) in coefficient_pairs().iter().enumerate() {
        let c = MultiPoly::var(10, k);
        if i == j {
            g[i][i] = c;
        } else {
            let h = c.scale(&half);
            g[i][j] = h.clone();
            g[j][i] = h;
        }
    }
    [0, 1, 2, 3].map(|skip| {
        let keep: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
        let m = [0, 1, 2].map(|r| [0, 1, 2].map(|c| g[keep[r]][keep[c]].clone()));
        det3(&m)
    })
}

/// Rank of the Jacobian of the adjugate-diagonal map at a coefficient point.
pub fn adjugate_jacobian_rank(coefficients: &[Rational]) -> usize {
    let rows = adjugate_diagonal_polynomials()
        .iter()
        .map(|p| {
            p.gradient()
                .iter()
                .map(|g| g.evaluate(coefficients).expect("10 coefficients"))
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows).expect("4x10").rank()
}
