//! Exact integer-matrix algebra.
//!
//! Smith normal form with unimodular transforms, cokernels of integer maps as
//! finite abelian groups, and sublattice equality. Everything is done over
//! arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense rectangular matrix over `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row slices. Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but with an explicit column count, so
    /// that `k x 0` matrices can be expressed.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(e);
        }
        m
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
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

    /// Matrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Stacks `other` below `self`. Column counts must agree.
    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product: dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
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

/// Result of [`smith_normal_form`]: `u * m * v == s`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with unimodular row and column transforms.
///
/// The pivot at each stage is an entry of minimal absolute value; rows and
/// columns are cleared by Euclidean steps and the divisibility condition is
/// restored by folding an offending row into the pivot row.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = min_abs_entry(&a, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))))
        else {
            break;
        };
        a.swap_rows(t, pr);
        u.swap_rows(t, pr);
        a.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }

            if !clean {
                // A nonzero remainder is smaller than the pivot; move it up.
                let line = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let (pr, pc) = min_abs_entry(&a, line).expect("pivot row/column is nonzero");
                a.swap_rows(t, pr);
                u.swap_rows(t, pr);
                a.swap_cols(t, pc);
                v.swap_cols(t, pc);
                continue;
            }

            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    Smith { s: a, u, v }
}

fn min_abs_entry(a: &IntMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !a[(i, j)].is_zero())
        .min_by(|&(i, j), &(k, l)| a[(i, j)].magnitude().cmp(a[(k, l)].magnitude()))
}

/// Finitely generated abelian group `Z/d_1 x ... x Z/d_k x Z^r` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self { invariant_factors: Vec::new(), free_rank: 0 }
    }

    /// Normalizes an arbitrary product of cyclic groups: `Z/c_1 x ... x Z/c_m x Z^r`.
    /// Orders of 0 are read as `Z`, orders of ±1 are dropped.
    pub fn from_cyclic_orders(orders: &[BigInt], free_rank: usize) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, c) in orders.iter().enumerate() {
            m[(i, i)] = c.clone();
        }
        let mut g = cokernel(&m);
        g.free_rank += free_rank;
        g
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<BigInt> =
            self.invariant_factors.iter().chain(&other.invariant_factors).cloned().collect();
        Self::from_cyclic_orders(&orders, self.free_rank + other.free_rank)
    }

    /// Invariant factors as machine integers, for reports.
    pub fn factors_u64(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// `Z^cols / rowspace(m)`: the rows of `m` are the images of a basis of the
/// source lattice.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let smith = smith_normal_form(m);
    let diag = smith.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let invariant_factors = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    AbelianGroup { invariant_factors, free_rank: m.cols - rank }
}

pub fn is_surjective(m: &IntMatrix) -> bool {
    cokernel(m).is_trivial()
}

/// Rank and covolume (product of the nonzero elementary divisors) of the
/// lattice spanned by the rows of `m`.
fn lattice_invariants(m: &IntMatrix) -> (usize, BigInt) {
    let diag = smith_normal_form(m).diagonal();
    let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
    (nonzero.len(), nonzero.iter().product())
}

/// Whether the row lattices of `a` and `b` coincide.
///
/// For sublattices `L ⊆ M` of equal rank the product of elementary divisors
/// of `L` is that of `M` times the index `[M : L]`, so `A = A + B = B` can be
/// read off from the Smith forms of `a`, `b` and the stacked generators.
pub fn row_lattices_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.cols, b.cols, "lattices live in different ambient ranks");
    let sum = lattice_invariants(&a.vstack(b));
    lattice_invariants(a) == sum && lattice_invariants(b) == sum
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
    }

    /// Leibniz expansion; independent of the Bareiss routine.
    fn det_leibniz(m: &[Vec<i64>]) -> i64 {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        let k = m.len();
        perms(k)
            .into_iter()
            .map(|p| {
                let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                sign * (0..k).map(|i| m[i][p[i]]).product::<i64>()
            })
            .sum()
    }

    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = combos(n - 1, k);
        for mut c in combos(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }

    fn gcd_of_minors(m: &[Vec<i64>], r: usize) -> i64 {
        let cols = m[0].len();
        let mut g = 0i64;
        for rs in combos(m.len(), r) {
            for cs in combos(cols, r) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&det_leibniz(&sub));
            }
        }
        g
    }

    fn random_unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        for &(i, j, k) in ops {
            let (i, j) = (i % n, j % n);
            if i != j {
                u.add_row_multiple(i, j, &BigInt::from(k));
            } else {
                u.negate_row(i);
            }
        }
        u
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn smith_is_a_unimodular_diagonalization(rows in matrix(4)) {
            let m = IntMatrix::from_rows(&rows);
            let sm = smith_normal_form(&m);
            prop_assert_eq!(sm.u.mul(&m).mul(&sm.v), sm.s.clone());
            prop_assert!(sm.u.is_unimodular() && sm.v.is_unimodular());
            let d = sm.diagonal();
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
            }
        }

        #[test]
        fn smith_products_are_minor_gcds(rows in matrix(4)) {
            let m = IntMatrix::from_rows(&rows);
            let d = smith_normal_form(&m).diagonal();
            for r in 1..=d.len() {
                let prod: BigInt = d[..r].iter().product();
                prop_assert_eq!(prod, BigInt::from(gcd_of_minors(&rows, r)), "r = {}", r);
            }
        }

        #[test]
        fn cokernel_is_invariant_under_unimodular_changes(
            rows in matrix(4),
            row_ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6),
            col_ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6),
        ) {
            let m = IntMatrix::from_rows(&rows);
            let u = random_unimodular(m.rows(), &row_ops);
            let v = random_unimodular(m.cols(), &col_ops).transpose();
            prop_assert_eq!(cokernel(&u.mul(&m).mul(&v)), cokernel(&m));
        }
    }
}
