//! Smith normal form of integer matrices, with unimodular transforms.
//!
//! `u * a * v = diag(d)` with `d_i | d_{i+1}` and `|det u| = |det v| = 1`.
//! Pivoting always selects the entry of minimal nonzero absolute value in
//! the remaining block, which keeps entry growth modest for the matrix
//! sizes in play here (at most ~16 x 16).
//!
//! On top of the normal form sit the three lattice operations the rest of
//! the crate needs: integer kernel bases, integer linear solves, and
//! invariant factors of a finite quotient of one lattice by another.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    /// Builds a matrix from a list of columns.
    pub fn from_columns(rows: usize, cols: Vec<Vec<BigInt>>) -> Self {
        let c = cols.len();
        let mut m = IntMat::zero(rows, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMat::identity(self.rows)
    }

    /// Matrix power (square matrices).
    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = IntMat::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of [`smith_normal_form`].
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal invariant factors, nonnegative, each dividing the next.
    pub d: Vec<BigInt>,
    /// Unimodular row transform.
    pub u: IntMat,
    /// Unimodular column transform.
    pub v: IntMat,
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Computes the Smith normal form `u * a * v = diag(d)` over the integers.
///
/// Empty matrices are allowed and yield an empty diagonal.
pub fn smith_normal_form(a: &IntMat) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut b = a.clone();
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);
    let k_max = m.min(n);

    for k in 0..k_max {
        'pivot: loop {
            // Find minimal nonzero |entry| in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if b[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if b[(i, j)].abs() < b[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let (pi, pj) = match best {
                None => break 'pivot, // trailing block is zero
                Some(p) => p,
            };
            swap_rows(&mut b, &mut u, k, pi);
            swap_cols(&mut b, &mut v, k, pj);
            if b[(k, k)].is_negative() {
                negate_row(&mut b, &mut u, k);
            }

            // Clear column k below the pivot.
            let mut dirty = false;
            for i in k + 1..m {
                if b[(i, k)].is_zero() {
                    continue;
                }
                let q = div_nearest(&b[(i, k)], &b[(k, k)]);
                row_sub(&mut b, &mut u, i, k, &q);
                if !b[(i, k)].is_zero() {
                    dirty = true; // smaller remainder became the new candidate pivot
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Clear row k to the right of the pivot.
            for j in k + 1..n {
                if b[(k, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&b[(k, j)], &b[(k, k)]);
                col_sub(&mut b, &mut v, j, k, &q);
                if !b[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Enforce divisibility: pivot must divide the whole block.
            let mut offender: Option<(usize, usize)> = None;
            for i in k + 1..m {
                for j in k + 1..n {
                    if !(&b[(i, j)] % &b[(k, k)]).is_zero() {
                        offender = Some((i, j));
                        break;
                    }
                }
                if offender.is_some() {
                    break;
                }
            }
            match offender {
                Some((i, _)) => {
                    // Fold the offending row into row k and restart.
                    row_add(&mut b, &mut u, k, i);
                    continue 'pivot;
                }
                None => break 'pivot,
            }
        }
    }

    let mut d = Vec::with_capacity(k_max);
    for k in 0..k_max {
        d.push(b[(k, k)].clone());
    }
    SmithForm { d, u, v }
}

fn swap_rows(b: &mut IntMat, u: &mut IntMat, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..b.cols {
        let t = b[(r1, j)].clone();
        b[(r1, j)] = b[(r2, j)].clone();
        b[(r2, j)] = t;
    }
    for j in 0..u.cols {
        let t = u[(r1, j)].clone();
        u[(r1, j)] = u[(r2, j)].clone();
        u[(r2, j)] = t;
    }
}

fn swap_cols(b: &mut IntMat, v: &mut IntMat, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..b.rows {
        let t = b[(i, c1)].clone();
        b[(i, c1)] = b[(i, c2)].clone();
        b[(i, c2)] = t;
    }
    for i in 0..v.rows {
        let t = v[(i, c1)].clone();
        v[(i, c1)] = v[(i, c2)].clone();
        v[(i, c2)] = t;
    }
}

fn negate_row(b: &mut IntMat, u: &mut IntMat, r: usize) {
    for j in 0..b.cols {
        let t = -b[(r, j)].clone();
        b[(r, j)] = t;
    }
    for j in 0..u.cols {
        let t = -u[(r, j)].clone();
        u[(r, j)] = t;
    }
}

/// row_i -= q * row_k
fn row_sub(b: &mut IntMat, u: &mut IntMat, i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..b.cols {
        let t = q * &b[(k, j)];
        b[(i, j)] -= t;
    }
    for j in 0..u.cols {
        let t = q * &u[(k, j)];
        u[(i, j)] -= t;
    }
}

/// row_k += row_i
fn row_add(b: &mut IntMat, u: &mut IntMat, k: usize, i: usize) {
    for j in 0..b.cols {
        let t = b[(i, j)].clone();
        b[(k, j)] += t;
    }
    for j in 0..u.cols {
        let t = u[(i, j)].clone();
        u[(k, j)] += t;
    }
}

/// col_j -= q * col_k
fn col_sub(b: &mut IntMat, v: &mut IntMat, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..b.rows {
        let t = q * &b[(i, k)];
        b[(i, j)] -= t;
    }
    for i in 0..v.rows {
        let t = q * &v[(i, k)];
        v[(i, j)] -= t;
    }
}

/// Quotient rounded to nearest, so remainders satisfy |r| <= |d|/2.
fn div_nearest(a: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(d);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > d.abs() {
        if (a.is_negative()) == (d.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Basis of the integer kernel `{x : a x = 0}`, as column vectors.
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let mut basis = Vec::new();
    for j in 0..a.cols {
        let dj_zero = j >= snf.d.len() || snf.d[j].is_zero();
        if dj_zero {
            basis.push(snf.v.column(j));
        }
    }
    basis
}

/// Solves `a x = b` over the integers, if a solution exists.
pub fn solve(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    let y = snf.u.mul_vec(b);
    let mut x_prime = vec![BigInt::zero(); a.cols];
    for (i, yi) in y.iter().enumerate() {
        if i < snf.d.len() && !snf.d[i].is_zero() {
            let (q, r) = yi.div_rem(&snf.d[i]);
            if !r.is_zero() {
                return None;
            }
            x_prime[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&x_prime))
}

/// Invariant factors of the quotient `L / W` where `L` is a lattice with
/// basis the columns of `l_basis` and `W` is the sublattice spanned by the
/// columns of `w_gens` (which must all lie in `L`).
///
/// Returns the full diagonal (1s and 0s included); a 0 records a free
/// direction of the quotient.
pub fn quotient_invariants(l_basis: &IntMat, w_gens: &IntMat) -> Option<Vec<BigInt>> {
    let r = l_basis.cols();
    // Express each generator of W in the basis of L.
    let mut cols = Vec::with_capacity(w_gens.cols());
    for j in 0..w_gens.cols() {
        let col = w_gens.column(j);
        let x = solve(l_basis, &col)?;
        cols.push(x);
    }
    let x = IntMat::from_columns(r, cols);
    let snf = smith_normal_form(&x);
    let mut inv: Vec<BigInt> = snf.d.clone();
    // Directions of L not hit at all are free (rank deficit).
    while inv.len() < r {
        inv.push(BigInt::zero());
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(a: &IntMat, snf: &SmithForm) {
        let uav = snf.u.mul(a).mul(&snf.v);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let expect = if i == j && i < snf.d.len() { snf.d[i].clone() } else { BigInt::zero() };
                assert_eq!(uav[(i, j)], expect, "diagonalization mismatch at ({i},{j})");
            }
        }
        for w in snf.d.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
            } else {
                assert!(w[1].is_zero(), "zero must be terminal in the chain");
            }
        }
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
    }

    #[test]
    fn diag_2_3_gives_1_6() {
        let a = IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d, vec![BigInt::from(1), BigInt::from(6)]);
        check_decomposition(&a, &snf);
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMat::identity(4);
        let snf = smith_normal_form(&id);
        assert!(snf.d.iter().all(|x| x == &BigInt::one()));
        check_decomposition(&id, &snf);

        let z = IntMat::zero(3, 5);
        let snf = smith_normal_form(&z);
        assert!(snf.d.iter().all(Zero::is_zero));
        check_decomposition(&z, &snf);
    }

    #[test]
    fn empty_matrix() {
        let a = IntMat::zero(0, 0);
        let snf = smith_normal_form(&a);
        assert!(snf.d.is_empty());
    }

    #[test]
    fn kernel_and_solve() {
        // a = [1 2 3; 4 5 6] has a 1-dimensional kernel spanned by (1, -2, 1).
        let a = IntMat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let ker = kernel_basis(&a);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        let av = a.mul_vec(v);
        assert!(av.iter().all(Zero::is_zero));

        let b = vec![BigInt::from(6), BigInt::from(15)];
        let x = solve(&a, &b).expect("solvable");
        assert_eq!(a.mul_vec(&x), b);

        // 2x = 1 has no integer solution.
        let a2 = IntMat::from_rows(vec![vec![2]]);
        assert!(solve(&a2, &[BigInt::one()]).is_none());
    }

    #[test]
    fn quotient_z2_by_2z_x_3z() {
        let l = IntMat::identity(2);
        let w = IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let inv = quotient_invariants(&l, &w).unwrap();
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
    }
}
