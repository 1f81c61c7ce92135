//! Exact rational scalars and dense matrices.
//!
//! Everything here is exact: RREF and kernels run over the rationals, while
//! determinants and ranks clear denominators row by row and use fraction-free
//! (Bareiss) elimination over the integers.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. The zero vector maps to itself.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let sign_flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x = &*x / &g;
        if sign_flip {
            *x = -&*x;
        }
    }
    ints
}

/// Same as [`primitive_integer_vector`] but returned as rationals.
pub fn normalize_vector(v: &[Rational]) -> Vec<Rational> {
    primitive_integer_vector(v)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::ShapeMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RatMatrix { rows: r, cols: c, data })
    }

    /// Integer-entry constructor, mostly for fixtures and tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(v).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Submatrix with the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        RatMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Deletes row `i` and column `j`.
    pub fn minor_matrix(&self, i: usize, j: usize) -> RatMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select(&rows, &cols)
    }

    /// Reduced row-echelon form together with the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &f * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank, via fraction-free elimination on the denominator-cleared matrix.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows().0;
        bareiss_in_place(&mut a, self.rows, self.cols).0
    }

    /// Basis of the right null space, each vector primitive integral with
    /// first nonzero entry positive.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                normalize_vector(&v)
            })
            .collect()
    }

    /// Determinant by Bareiss elimination after clearing row denominators.
    pub fn det_bareiss(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut a, scale) = self.integer_rows();
        let (rank, sign) = bareiss_in_place(&mut a, n, n);
        if rank < n {
            return Ok(Rational::zero());
        }
        let mut det = a[n - 1][n - 1].clone();
        if sign {
            det = -det;
        }
        Ok(Rational::new(det, scale))
    }

    /// Transposed cofactor matrix; `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Result<RatMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(RatMatrix::identity(1));
        }
        let mut adj = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor_matrix(j, i).det_bareiss()?;
                adj[(i, j)] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        Ok(adj)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Integer rows obtained by scaling each row by the lcm of its
    /// denominators, and the product of those scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        (rows, scale)
    }
}

/// Fraction-free Gaussian elimination. Returns the rank and whether an odd
/// number of row swaps was performed. For a nonsingular square input the
/// determinant ends up in the last diagonal slot.
fn bareiss_in_place(a: &mut [Vec<BigInt>], rows: usize, cols: usize) -> (usize, bool) {
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swapped = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swapped = !swapped;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, swapped)
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Cofactor expansion along the first row; independent of Bareiss.
    fn det_cofactor(m: &RatMatrix) -> Rational {
        let n = m.rows();
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        (0..n).fold(Rational::zero(), |acc, j| {
            let term = &m[(0, j)] * det_cofactor(&m.minor_matrix(0, j));
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    fn segre_gram() -> RatMatrix {
        let h = ratio(1, 2);
        let z = Rational::zero();
        RatMatrix::from_rows(vec![
            vec![z.clone(), z.clone(), z.clone(), h.clone()],
            vec![z.clone(), z.clone(), -h.clone(), z.clone()],
            vec![z.clone(), -h.clone(), z.clone(), z.clone()],
            vec![h, z.clone(), z.clone(), z],
        ])
        .unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, p) = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r, RatMatrix::from_i64(&[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let (r, p) = RatMatrix::identity(4).rref();
        assert_eq!(r, RatMatrix::identity(4));
        assert_eq!(p, vec![0, 1, 2, 3]);

        let (r, p) = RatMatrix::from_i64(&[&[0, 1, 0, 1], &[1, 0, 1, 0]]).rref();
        assert_eq!(r, RatMatrix::from_i64(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        let k = RatMatrix::from_i64(&[&[1, 1, 1, 1]]).kernel_basis();
        assert_eq!(k.len(), 3);
        let inv = RatMatrix::from_i64(&[&[2, 1, 0, 0], &[1, 2, 1, 0], &[0, 1, 2, 1], &[0, 0, 1, 2]]);
        assert!(inv.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vectors_are_primitive_and_positive() {
        let m = RatMatrix::from_rows(vec![vec![ratio(1, 2), ratio(-1, 3), rat(0)]]).unwrap();
        for v in m.kernel_basis() {
            let first = v.iter().find(|x| !x.is_zero()).unwrap();
            assert!(first.is_positive());
            assert!(v.iter().all(|x| x.is_integer()));
            assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn det_examples() {
        let d = RatMatrix::diagonal(&[rat(1), rat(2), rat(3), rat(4)]);
        assert_eq!(d.det_bareiss().unwrap(), rat(24));
        let s = RatMatrix::from_i64(&[&[1, 2, 3], &[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(s.det_bareiss().unwrap(), rat(0));
        // cofactor oracle gives 1/16 for the Segre Gram matrix
        assert_eq!(det_cofactor(&segre_gram()), ratio(1, 16));
        assert_eq!(segre_gram().det_bareiss().unwrap(), ratio(1, 16));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = RatMatrix::zeros(2, 3);
        assert!(matches!(m.det_bareiss(), Err(LinalgError::NotSquare { .. })));
        assert!(matches!(m.adjugate(), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn adjugate_examples() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.adjugate().unwrap(), RatMatrix::from_i64(&[&[4, -2], &[-3, 1]]));
        assert_eq!(RatMatrix::identity(4).adjugate().unwrap(), RatMatrix::identity(4));

        let g = segre_gram();
        let adj = g.adjugate().unwrap();
        for i in 0..4 {
            assert!(adj[(i, i)].is_zero());
        }
        // det * inverse cross-check; the inverse of the antidiagonal Gram is 4 * itself
        let inverse = g.scale(&rat(4));
        assert_eq!(adj, inverse.scale(&g.det_bareiss().unwrap()));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(RatMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn primitive_vector_normalization() {
        let v = primitive_integer_vector(&[ratio(-1, 2), ratio(3, 4), rat(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
        assert_eq!(primitive_integer_vector(&[rat(0), rat(0)]), vec![BigInt::zero(); 2]);
    }

    fn small_matrix(max_n: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max_n, 1..=max_n).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-6i64..=6, 1i64..=3), r * c).prop_map(move |v| {
                RatMatrix::new(r, c, v.into_iter().map(|(n, d)| ratio(n, d)).collect()).unwrap()
            })
        })
    }

    fn square_matrix(max_n: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((-5i64..=5, 1i64..=3), n * n).prop_map(move |v| {
                RatMatrix::new(n, n, v.into_iter().map(|(a, d)| ratio(a, d)).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn rref_is_idempotent(m in small_matrix(5)) {
            let (r, p) = m.rref();
            let (rr, pp) = r.rref();
            prop_assert_eq!(&r, &rr);
            prop_assert_eq!(p, pp);
        }

        #[test]
        fn kernel_and_rank_agree(m in small_matrix(6)) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.len() + m.rank(), m.cols());
            prop_assert_eq!(m.rank(), m.rref().1.len());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn bareiss_matches_cofactor(m in square_matrix(5)) {
            prop_assert_eq!(m.det_bareiss().unwrap(), det_cofactor(&m));
        }

        #[test]
        fn adjugate_identity(m in square_matrix(4)) {
            let adj = m.adjugate().unwrap();
            let d = m.det_bareiss().unwrap();
            prop_assert_eq!(m.mul(&adj).unwrap(), RatMatrix::identity(m.rows()).scale(&d));
        }
    }
}
