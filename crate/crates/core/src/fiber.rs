//! Line pairs in the standard Grassmannian chart whose Hadamard product lies
//! in the Segre quadric `x0 x3 - x1 x2`.
//!
//! Chart: `L` has rows `[1 0 u1 v1; 0 1 u2 v2]`, `R` has rows
//! `[1 0 z1 w1; 0 1 z2 w2]`. Ring variables are ordered
//! `u1, u2, v1, v2, z1, z2, w1, w2`.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GroebnerError, ProductError};
use crate::groebner::{ideal_dimension, GroebnerConfig, Ideal};
use crate::linalg::{RatMatrix, Rational};
use crate::poly::{monomials_of_degree, Exponents, MultiPoly};
use crate::product::{implicitize, ImplicitizeOptions};
use crate::projgeom::{DiagonalAuto, LineP3, ProjPoint};

pub const CHART_VARS: [&str; 8] = ["u1", "u2", "v1", "v2", "z1", "z2", "w1", "w2"];
pub const CLAIMED_DIMENSION: i64 = 3;

const U1: usize = 0;
const U2: usize = 1;
const V1: usize = 2;
const V2: usize = 3;
const Z1: usize = 4;
const Z2: usize = 5;
const W1: usize = 6;
const W2: usize = 7;

fn c(i: usize) -> MultiPoly {
    MultiPoly::var(8, i)
}

/// One coefficient of the bidegree-(2,2) expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCoefficient {
    /// Exponents of `(λ1, λ2, μ1, μ2)`.
    pub monomial: [u32; 4],
    pub coefficient: MultiPoly,
}

/// Expands `x0 x3 - x1 x2` at the product of the two chart lines and
/// collects the coefficients of the nine monomials `λ1^a λ2^b μ1^c μ2^d`.
pub fn claim_expansion() -> Vec<ExpansionCoefficient> {
    // 12 variables: chart variables, then λ1, λ2, μ1, μ2
    let n = 12;
    let v = |i: usize| MultiPoly::var(n, i);
    let (l1, l2, m1, m2) = (v(8), v(9), v(10), v(11));
    let x0 = &l1 * &m1;
    let x1 = &l2 * &m2;
    let x2 = &(&(&l1 * &v(U1)) + &(&l2 * &v(U2))) * &(&(&m1 * &v(Z1)) + &(&m2 * &v(Z2)));
    let x3 = &(&(&l1 * &v(V1)) + &(&l2 * &v(V2))) * &(&(&m1 * &v(W1)) + &(&m2 * &v(W2)));
    let f = &(&x0 * &x3) - &(&x1 * &x2);

    let mut out = Vec::new();
    for lam in monomials_of_degree(2, 2) {
        for mu in monomials_of_degree(2, 2) {
            let key = [lam.as_slice()[0], lam.as_slice()[1], mu.as_slice()[0], mu.as_slice()[1]];
            let terms = f.terms().filter_map(|(e, coef)| {
                let s = e.as_slice();
                (s[8..] == key).then(|| (Exponents::new(s[..8].to_vec()), coef.clone()))
            });
            out.push(ExpansionCoefficient {
                monomial: key,
                coefficient: MultiPoly::from_terms(8, terms),
            });
        }
    }
    out
}

/// The ideal generated by the nonzero expansion coefficients.
pub fn claim_ideal() -> Ideal {
    let gens = claim_expansion()
        .into_iter()
        .map(|e| e.coefficient)
        .filter(|p| !p.is_zero())
        .collect();
    Ideal::new(8, gens).expect("8 variables")
}

/// The seven generators as stated with the claim:
/// `v1w1, v1w2, v2w1, v2w2 - u2z2, u1z2, u2z1, u2z2`.
pub fn stated_claim_generators() -> Vec<MultiPoly> {
    vec![
        &c(V1) * &c(W1),
        &c(V1) * &c(W2),
        &c(V2) * &c(W1),
        &(&c(V2) * &c(W2)) - &(&c(U2) * &c(Z2)),
        &c(U1) * &c(Z2),
        &c(U2) * &c(Z1),
        &c(U2) * &c(Z2),
    ]
}

fn normalized_set(ps: &[MultiPoly]) -> BTreeSet<String> {
    ps.iter().map(|p| p.normalized().display_with(&CHART_VARS)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorComparison {
    pub computed: Vec<String>,
    pub stated: Vec<String>,
    pub only_computed: Vec<String>,
    pub only_stated: Vec<String>,
}

impl GeneratorComparison {
    pub fn matches(&self) -> bool {
        self.only_computed.is_empty() && self.only_stated.is_empty()
    }
}

/// Compares the computed generators with the stated list, up to scale.
pub fn compare_with_stated() -> GeneratorComparison {
    let computed = normalized_set(claim_ideal().generators());
    let stated = normalized_set(&stated_claim_generators());
    GeneratorComparison {
        only_computed: computed.difference(&stated).cloned().collect(),
        only_stated: stated.difference(&computed).cloned().collect(),
        computed: computed.into_iter().collect(),
        stated: stated.into_iter().collect(),
    }
}

/// A torus stratum: the chart variables in `zero` vanish, all others are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub zero: Vec<usize>,
    pub dimension: i64,
    /// `L` lies in `H2` (`u = 0`) or `H3` (`v = 0`).
    pub first_in_coordinate_plane: bool,
    /// `R` lies in `H2` (`z = 0`) or `H3` (`w = 0`).
    pub second_in_coordinate_plane: bool,
}

impl Stratum {
    pub fn in_domain(&self) -> bool {
        !self.first_in_coordinate_plane && !self.second_in_coordinate_plane
    }

    pub fn label(&self) -> String {
        let names: Vec<&str> = self.zero.iter().map(|&i| CHART_VARS[i]).collect();
        format!("{{{}}} = 0", names.join(","))
    }
}

/// Dimension of `V(I)` intersected with one torus stratum, for ideals
/// generated by monomials and binomials. `None` if the stratum is empty.
fn stratum_dimension(gens: &[MultiPoly], zero_mask: u32, nvars: usize) -> Option<i64> {
    let free: Vec<usize> = (0..nvars).filter(|i| zero_mask & (1 << i) == 0).collect();
    let mut rows = Vec::new();
    for g in gens {
        let mut p = g.clone();
        for i in 0..nvars {
            if zero_mask & (1 << i) != 0 {
                p = p.set_zero(i);
            }
        }
        let terms: Vec<(&Exponents, &Rational)> = p.terms().collect();
        match terms.len() {
            0 => {}
            1 => return None,
            2 => {
                let (a, b) = (terms[0].0.as_slice(), terms[1].0.as_slice());
                rows.push(
                    free.iter()
                        .map(|&i| Rational::from_integer((a[i] as i64 - b[i] as i64).into()))
                        .collect(),
                );
            }
            _ => panic!("stratum oracle handles monomial and binomial generators only"),
        }
    }
    let rank = if rows.is_empty() { 0 } else { RatMatrix::from_rows(rows).expect("rows").rank() };
    Some(free.len() as i64 - rank as i64)
}

/// Enumerates all 256 zero patterns of the chart variables.
pub fn strata(ideal: &Ideal) -> Vec<Stratum> {
    let n = ideal.nvars();
    assert_eq!(n, 8);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if let Some(dimension) = stratum_dimension(ideal.generators(), mask, n) {
            let zero: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let z = |i: usize| zero.contains(&i);
            out.push(Stratum {
                first_in_coordinate_plane: (z(U1) && z(U2)) || (z(V1) && z(V2)),
                second_in_coordinate_plane: (z(Z1) && z(Z2)) || (z(W1) && z(W2)),
                zero,
                dimension,
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimDimensionReport {
    pub groebner_dimension: i64,
    pub oracle_dimension: i64,
    pub claimed_dimension: i64,
    /// Strata of maximal dimension.
    pub top_strata: Vec<Stratum>,
    /// Largest dimension among strata where neither line lies in a coordinate plane.
    pub in_domain_dimension: Option<i64>,
    pub discrepancy_note: Option<String>,
}

impl ClaimDimensionReport {
    pub fn oracle_agrees(&self) -> bool {
        self.groebner_dimension == self.oracle_dimension
    }
}

pub fn claim_dimension(config: &GroebnerConfig) -> Result<ClaimDimensionReport, GroebnerError> {
    let ideal = claim_ideal();
    let groebner_dimension = ideal_dimension(&ideal, config)?;
    let all = strata(&ideal);
    let oracle_dimension = all.iter().map(|s| s.dimension).max().unwrap_or(-1);
    let top_strata: Vec<Stratum> = all.iter().filter(|s| s.dimension == oracle_dimension).cloned().collect();
    let in_domain_dimension = all.iter().filter(|s| s.in_domain()).map(|s| s.dimension).max();
    let discrepancy_note = (groebner_dimension != CLAIMED_DIMENSION).then(|| {
        let outside = top_strata.iter().all(|s| !s.in_domain());
        format!(
            "computed affine dimension {groebner_dimension} differs from the claimed {CLAIMED_DIMENSION}; \
             top-dimensional strata: {}; {}; largest stratum with neither line in a coordinate plane has dimension {}",
            top_strata.iter().map(Stratum::label).collect::<Vec<_>>().join(", "),
            if outside {
                "every top stratum has a line inside a coordinate plane"
            } else {
                "some top stratum lies in the domain of the product map"
            },
            in_domain_dimension.map_or("none".into(), |d| d.to_string()),
        )
    });
    Ok(ClaimDimensionReport {
        groebner_dimension,
        oracle_dimension,
        claimed_dimension: CLAIMED_DIMENSION,
        top_strata,
        in_domain_dimension,
        discrepancy_note,
    })
}

/// The Segre pair `L0 = <(1:0:1:0),(0:1:0:1)>`, `R0 = <(1:1:0:0),(0:0:1:1)>`.
pub fn segre_pair() -> (LineP3, LineP3) {
    let p = |c| ProjPoint::from_ints(c).expect("nonzero");
    (
        LineP3::from_points(&p([1, 0, 1, 0]), &p([0, 1, 0, 1])).expect("distinct"),
        LineP3::from_points(&p([1, 1, 0, 0]), &p([0, 0, 1, 1])).expect("distinct"),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusOrbitReport {
    pub seed: u64,
    pub samples: usize,
    pub matches: usize,
}

impl TorusOrbitReport {
    pub fn all_match(&self) -> bool {
        self.matches == self.samples
    }
}

/// Checks `ψ L0 ⋆ ψ⁻¹ R0 = Segre quadric` for random diagonal `ψ`.
pub fn torus_orbit_check(samples: usize, seed: u64) -> Result<TorusOrbitReport, ProductError> {
    let (l, r) = segre_pair();
    let (l, r) = (l.parametrization(), r.parametrization());
    let x = |i| MultiPoly::var(4, i);
    let segre = (&(&x(0) * &x(3)) - &(&x(1) * &x(2))).normalized();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matches = 0;
    for _ in 0..samples {
        let psi = DiagonalAuto::random(&mut rng);
        let c = implicitize(&psi.apply_curve(&l), &psi.inverse().apply_curve(&r), &ImplicitizeOptions::default())?;
        if c.surface().is_some_and(|s| s.equation() == &segre) {
            matches += 1;
        }
    }
    Ok(TorusOrbitReport { seed, samples, matches })
}
