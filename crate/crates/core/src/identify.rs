//! Recovering a quadric from its four singular coordinate points, and the
//! rank survey of the underlying 12×10 linear system.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::IdentifyError;
use crate::linalg::{RatMatrix, Rational};
use crate::projgeom::ProjPoint;
use crate::quadric::{coefficient_pairs, Quadric};

/// Four collinear points `p_i ∈ H_i` in the chart
/// `p0 = (0:1:a1:a2)`, `p1 = (1:0:a3:a4)`. Kept as raw vectors because
/// degenerate parameters can make `p2` or `p3` vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearQuadruple {
    pub params: [Rational; 4],
    pub points: [Vec<Rational>; 4],
}

impl CollinearQuadruple {
    /// Rank of the 4×4 matrix of the points (2 when they span a line).
    pub fn span_rank(&self) -> usize {
        RatMatrix::from_rows(self.points.to_vec()).expect("4x4").rank()
    }

    /// Some `p_i` vanishes or has a zero outside slot `i`.
    pub fn degenerate_position(&self) -> bool {
        self.points
            .iter()
            .enumerate()
            .any(|(i, p)| (0..4).any(|k| k != i && p[k].is_zero()))
    }

    pub fn projective_points(&self) -> Vec<Option<ProjPoint>> {
        self.points.iter().map(|p| ProjPoint::new(p).ok()).collect()
    }
}

pub fn quadruple_from_chart(a: &[Rational; 4]) -> CollinearQuadruple {
    let z = Rational::zero;
    let one = || Rational::from_integer(1.into());
    let [a1, a2, a3, a4] = a;
    let d = a2 * a3 - a1 * a4;
    let points = [
        vec![z(), one(), a1.clone(), a2.clone()],
        vec![one(), z(), a3.clone(), a4.clone()],
        vec![-a1.clone(), a3.clone(), z(), d.clone()],
        vec![-a2.clone(), a4.clone(), -d, z()],
    ];
    CollinearQuadruple {
        params: a.clone(),
        points,
    }
}

/// `O_i = p_i ⋆ q_i` as raw vectors (possibly zero).
pub fn centers_of(p: &CollinearQuadruple, q: &CollinearQuadruple) -> [Vec<Rational>; 4] {
    [0, 1, 2, 3].map(|i| (0..4).map(|k| &p.points[i][k] * &q.points[i][k]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionSystem {
    /// Row `3i + r` is `∂F/∂x_j (O_i) = 0` for the `r`-th `j ≠ i`;
    /// columns are `c0..c9`.
    pub matrix: RatMatrix,
    pub centers: [Vec<Rational>; 4],
    pub rank: usize,
    pub kernel: Vec<Vec<Rational>>,
    /// A center vanishes or lies on a second coordinate plane.
    pub degenerate_position: bool,
}

/// Builds the 12×10 system from four centers given as raw coordinate vectors.
pub fn build_system_raw(centers: &[Vec<Rational>; 4]) -> Result<ReconstructionSystem, IdentifyError> {
    for (i, c) in centers.iter().enumerate() {
        assert_eq!(c.len(), 4, "centers live in P3");
        if !c[i].is_zero() {
            return Err(IdentifyError::CenterOffPlane { index: i });
        }
    }
    let pairs = coefficient_pairs();
    let mut m = RatMatrix::zeros(12, 10);
    let mut row = 0;
    for (i, o) in centers.iter().enumerate() {
        for j in (0..4).filter(|&j| j != i) {
            for (col, &(a, b)) in pairs.iter().enumerate() {
                // d(x_a x_b)/dx_j evaluated at o
                let mut v = Rational::zero();
                if a == j {
                    v += &o[b];
                }
                if b == j {
                    v += &o[a];
                }
                m[(row, col)] = v;
            }
            row += 1;
        }
    }
    let rank = m.rank();
    let kernel = m.kernel_basis();
    let degenerate_position = centers
        .iter()
        .enumerate()
        .any(|(i, c)| (0..4).any(|k| k != i && c[k].is_zero()));
    Ok(ReconstructionSystem {
        matrix: m,
        centers: centers.clone(),
        rank,
        kernel,
        degenerate_position,
    })
}

pub fn build_system(centers: &[ProjPoint; 4]) -> Result<ReconstructionSystem, IdentifyError> {
    build_system_raw(&[0, 1, 2, 3].map(|i| centers[i].coords().to_vec()))
}

impl ReconstructionSystem {
    pub fn quadric(&self) -> Result<Quadric, IdentifyError> {
        match self.kernel.len() {
            0 => Err(IdentifyError::Inconsistent),
            1 => Ok(Quadric::from_coefficients(&self.kernel[0])
                .expect("kernel vector is nonzero")
                .normalized()),
            dim => Err(IdentifyError::Underdetermined { dim }),
        }
    }

    /// All `C(12,10) = 66` maximal minors.
    pub fn maximal_minors(&self) -> Vec<Rational> {
        let cols: Vec<usize> = (0..10).collect();
        let mut out = Vec::with_capacity(66);
        for skip1 in 0..12 {
            for skip2 in skip1 + 1..12 {
                let rows: Vec<usize> = (0..12).filter(|&r| r != skip1 && r != skip2).collect();
                out.push(self.matrix.select(&rows, &cols).det_bareiss().expect("square"));
            }
        }
        out
    }
}

/// The unique quadric singular on each section `Q ∩ H_i` at `O_i`.
pub fn reconstruct(centers: &[ProjPoint; 4]) -> Result<Quadric, IdentifyError> {
    build_system(centers)?.quadric()
}

/// Parameter names in the order `a1..a4, b1..b4`.
pub const PARAM_NAMES: [&str; 8] = ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"];

/// Components of the degeneracy locus, as sets of vanishing parameters
/// (indices into [`PARAM_NAMES`]).
pub const COMPONENTS: [&[usize]; 14] = [
    &[0, 1],
    &[0, 2],
    &[1, 3],
    &[2, 3],
    &[4, 5],
    &[4, 6],
    &[5, 7],
    &[6, 7],
    &[3, 4],
    &[2, 5],
    &[1, 6],
    &[0, 7],
    &[0, 3, 5, 6],
    &[1, 2, 4, 7],
];

/// Parameters are drawn from `[-SURVEY_RANGE, SURVEY_RANGE] \ {0}`.
pub const SURVEY_RANGE: i64 = 1_000_000;

/// Upper bound on the degree of a 10×10 minor in the eight parameters:
/// center coordinates have degree at most 4.
pub const MINOR_DEGREE_BOUND: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurveyOptions {
    pub generic_samples: usize,
    pub per_component: usize,
    pub seed: u64,
    /// Also evaluate all 66 maximal minors at every draw.
    pub check_minors: bool,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            generic_samples: 100,
            per_component: 20,
            seed: 0x5eed,
            check_minors: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyBatch {
    /// `"generic"` or the component label, e.g. `"(a1,a2)"`.
    pub label: String,
    pub samples: usize,
    pub rank_counts: BTreeMap<usize, usize>,
    pub max_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub seed: u64,
    pub generic: SurveyBatch,
    pub components: Vec<SurveyBatch>,
    pub total_draws: usize,
    pub full_rank_draws: usize,
    /// Draws at which some 10×10 minor is nonzero (`None` if not checked).
    pub nonvanishing_minor_draws: Option<usize>,
    pub schwartz_zippel_note: String,
}

impl SurveyReport {
    pub fn generic_all_rank_nine(&self) -> bool {
        self.generic.rank_counts.keys().all(|&r| r == 9)
    }

    pub fn components_all_at_most_eight(&self) -> bool {
        self.components.iter().all(|c| c.max_rank <= 8)
    }
}

pub fn component_label(vars: &[usize]) -> String {
    let names: Vec<&str> = vars.iter().map(|&v| PARAM_NAMES[v]).collect();
    format!("({})", names.join(","))
}

fn draw_params(rng: &mut ChaCha8Rng, zero: &[usize]) -> [Rational; 8] {
    [0, 1, 2, 3, 4, 5, 6, 7].map(|k| {
        if zero.contains(&k) {
            return Rational::zero();
        }
        loop {
            let v: i64 = rng.gen_range(-SURVEY_RANGE..=SURVEY_RANGE);
            if v != 0 {
                return Rational::from_integer(v.into());
            }
        }
    })
}

/// The system for the centers of the chart quadruples at parameters `a, b`.
pub fn system_at(params: &[Rational; 8]) -> ReconstructionSystem {
    let a = [0, 1, 2, 3].map(|k| params[k].clone());
    let b = [4, 5, 6, 7].map(|k| params[k].clone());
    let centers = centers_of(&quadruple_from_chart(&a), &quadruple_from_chart(&b));
    build_system_raw(&centers).expect("chart centers lie on their planes")
}

pub fn degeneracy_survey(options: &SurveyOptions) -> SurveyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut total = 0;
    let mut full = 0;
    let mut nonvanishing = 0;
    let mut run = |label: String, zero: &[usize], n: usize, rng: &mut ChaCha8Rng| {
        let mut rank_counts = BTreeMap::new();
        for _ in 0..n {
            let sys = system_at(&draw_params(rng, zero));
            *rank_counts.entry(sys.rank).or_insert(0) += 1;
            total += 1;
            if sys.rank == 10 {
                full += 1;
            }
            if options.check_minors && sys.maximal_minors().iter().any(|m| !m.is_zero()) {
                nonvanishing += 1;
            }
        }
        let max_rank = rank_counts.keys().max().copied().unwrap_or(0);
        SurveyBatch {
            label,
            samples: n,
            rank_counts,
            max_rank,
        }
    };
    let generic = run("generic".into(), &[], options.generic_samples, &mut rng);
    let components = COMPONENTS
        .iter()
        .map(|c| run(component_label(c), c, options.per_component, &mut rng))
        .collect();
    let schwartz_zippel_note = format!(
        "each 10x10 minor has degree at most {MINOR_DEGREE_BOUND} in a1..b4; a nonzero minor vanishes at a uniform draw \
         from {} integer values per parameter with probability at most {MINOR_DEGREE_BOUND}/{}",
        2 * SURVEY_RANGE + 1,
        2 * SURVEY_RANGE + 1
    );
    SurveyReport {
        seed: options.seed,
        generic,
        components,
        total_draws: total,
        full_rank_draws: full,
        nonvanishing_minor_draws: options.check_minors.then_some(nonvanishing),
        schwartz_zippel_note,
    }
}
