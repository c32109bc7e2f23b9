//! Dense matrices over a field, Smith normal form over the integers, and
//! presentations of finitely generated abelian groups.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_traits::{Num, Signed};
use serde::Serialize;

/// Scalars usable in Gaussian elimination.  Exactness is up to the type:
/// `BigRational` and `Ratio<i64>` are exact, `f64` is not.
pub trait Field: Clone + PartialEq + Debug + Num + Neg<Output = Self> {}
impl<T: Clone + PartialEq + Debug + Num + Neg<Output = T>> Field for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = acc + a.clone() * b.clone();
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() * c.clone()
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Row echelon reduction of `[self | rhs]`; returns the reduced pair and
    /// the pivot columns.
    fn eliminate(&self, rhs: &Self) -> (Self, Self, Vec<usize>) {
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            b.swap_rows(r, p);
            let inv = T::one() / a[(r, c)].clone();
            for j in 0..a.cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for j in 0..b.cols {
                b[(r, j)] = b[(r, j)].clone() * inv.clone();
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in 0..a.cols {
                        a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    }
                    for j in 0..b.cols {
                        b[(i, j)] = b[(i, j)].clone() - f.clone() * b[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, b, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate(&Self::zeros(self.rows, 0)).2.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let (_, b, pivots) = self.eliminate(&Self::identity(self.rows));
        (pivots.len() == self.rows).then_some(b)
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..a.cols {
            let Some(p) = (c..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..a.rows {
                let f = a[(i, c)].clone() / piv.clone();
                if !f.is_zero() {
                    for j in c..a.cols {
                        a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(c, j)].clone();
                    }
                }
            }
        }
        det
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let rhs = Matrix::from_fn(b.len(), 1, |i, _| b[i].clone());
        let (_, b, pivots) = self.eliminate(&rhs);
        if (pivots.len()..self.rows).any(|i| !b[(i, 0)].is_zero()) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = b[(r, 0)].clone();
        }
        Some(x)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_0 | d_1 | ...`, nonnegative.  `u_inv` is kept alongside `u`.
#[derive(Clone, Debug)]
pub struct Snf<T> {
    pub u: Vec<Vec<T>>,
    pub u_inv: Vec<Vec<T>>,
    pub v: Vec<Vec<T>>,
    pub diag: Vec<T>,
}

impl<T: Integer + Signed + Clone> Snf<T> {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

fn ident<T: Integer + Clone>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

/// Smith normal form of an `m x n` integer matrix given by rows.
pub fn smith<T: Integer + Signed + Clone>(a: &[Vec<T>], ncols: usize) -> Snf<T> {
    let m = a.len();
    let n = ncols;
    let mut a: Vec<Vec<T>> = a.to_vec();
    let mut u = ident::<T>(m);
    let mut ui = ident::<T>(m);
    let mut v = ident::<T>(n);

    // row_i += c * row_t, with the matching updates of U and U^{-1}
    let row_add = |a: &mut Vec<Vec<T>>,
                   u: &mut Vec<Vec<T>>,
                   ui: &mut Vec<Vec<T>>,
                   i: usize,
                   t: usize,
                   c: T| {
        for j in 0..n {
            let x = a[t][j].clone() * c.clone();
            a[i][j] = a[i][j].clone() + x;
        }
        for j in 0..m {
            let x = u[t][j].clone() * c.clone();
            u[i][j] = u[i][j].clone() + x;
        }
        for row in ui.iter_mut() {
            let x = row[i].clone() * c.clone();
            row[t] = row[t].clone() - x;
        }
    };
    let col_add = |a: &mut Vec<Vec<T>>, v: &mut Vec<Vec<T>>, j: usize, t: usize, c: T| {
        for row in a.iter_mut() {
            let x = row[t].clone() * c.clone();
            row[j] = row[j].clone() + x;
        }
        for row in v.iter_mut() {
            let x = row[t].clone() * c.clone();
            row[j] = row[j].clone() + x;
        }
    };
    let row_swap =
        |a: &mut Vec<Vec<T>>, u: &mut Vec<Vec<T>>, ui: &mut Vec<Vec<T>>, i: usize, t: usize| {
            a.swap(i, t);
            u.swap(i, t);
            for row in ui.iter_mut() {
                row.swap(i, t);
            }
        };
    let col_swap = |a: &mut Vec<Vec<T>>, v: &mut Vec<Vec<T>>, j: usize, t: usize| {
        for row in a.iter_mut() {
            row.swap(j, t);
        }
        for row in v.iter_mut() {
            row.swap(j, t);
        }
    };

    let steps = m.min(n);
    for t in 0..steps {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        row_swap(&mut a, &mut u, &mut ui, t, bi);
        col_swap(&mut a, &mut v, t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_add(&mut a, &mut u, &mut ui, i, t, -q);
                if !a[i][t].is_zero() {
                    row_swap(&mut a, &mut u, &mut ui, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_add(&mut a, &mut v, j, t, -q);
                if !a[t][j].is_zero() {
                    col_swap(&mut a, &mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let p = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => row_add(&mut a, &mut u, &mut ui, t, i, T::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in 0..n {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..m {
                u[t][j] = -u[t][j].clone();
            }
            for row in ui.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
    }
    let diag = (0..steps).map(|i| a[i][i].clone()).collect();
    Snf {
        u,
        u_inv: ui,
        v,
        diag,
    }
}

fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Some integer solution of `M z = rhs` (M given by rows, `ncols` columns).
pub fn solve_integer(m: &[Vec<i64>], ncols: usize, rhs: &[i64]) -> Option<Vec<i64>> {
    let s = smith(m, ncols);
    let ur = mat_vec(&s.u, rhs);
    let rank = s.rank();
    let mut w = vec![0i64; ncols];
    for (i, y) in ur.iter().enumerate() {
        if i < rank {
            if y % s.diag[i] != 0 {
                return None;
            }
            w[i] = y / s.diag[i];
        } else if *y != 0 {
            return None;
        }
    }
    Some(mat_vec(&s.v, &w))
}

/// A basis (as columns, returned as a list of vectors) of the integer kernel.
pub fn integer_kernel(m: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let s = smith(m, ncols);
    let rank = s.rank();
    (rank..ncols)
        .map(|j| s.v.iter().map(|row| row[j]).collect())
        .collect()
}

/// The quotient `Z^r / L` for a sublattice `L` spanned by given vectors.
///
/// Elements are written in SNF coordinates: one residue per nontrivial
/// torsion factor followed by the free coordinates.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    rank: usize,
    u: Vec<Vec<i64>>,
    u_inv: Vec<Vec<i64>>,
    /// indices of `U`-rows kept, with modulus (0 = free)
    kept: Vec<(usize, i64)>,
}

impl LatticeQuotient {
    pub fn new(rank: usize, generators: &[Vec<i64>]) -> Self {
        // matrix whose columns are the generators
        let rows: Vec<Vec<i64>> = (0..rank)
            .map(|i| generators.iter().map(|g| g[i]).collect())
            .collect();
        let s = smith(&rows, generators.len());
        let mut kept = Vec::new();
        for i in 0..rank {
            let d = s.diag.get(i).copied().unwrap_or(0);
            if d != 1 {
                kept.push((i, d));
            }
        }
        // torsion factors first, free ones after
        kept.sort_by_key(|&(i, d)| (d == 0, i));
        LatticeQuotient {
            rank,
            u: s.u,
            u_inv: s.u_inv,
            kept,
        }
    }

    pub fn lattice_rank(&self) -> usize {
        self.rank
    }

    /// Invariant factors `d_i > 1` followed by a `0` per free summand.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.kept.iter().map(|&(_, d)| d).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.kept.is_empty()
    }

    pub fn order(&self) -> Option<u64> {
        self.kept
            .iter()
            .try_fold(1u64, |acc, &(_, d)| (d != 0).then(|| acc * d as u64))
    }

    pub fn torsion_rank(&self) -> usize {
        self.kept.iter().filter(|&&(_, d)| d != 0).count()
    }

    pub fn free_rank(&self) -> usize {
        self.kept.len() - self.torsion_rank()
    }

    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.rank);
        self.kept
            .iter()
            .map(|&(i, d)| {
                let y: i64 = self.u[i].iter().zip(x).map(|(a, b)| a * b).sum();
                if d == 0 {
                    y
                } else {
                    y.rem_euclid(d)
                }
            })
            .collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.project(x).iter().all(|&c| c == 0)
    }

    /// A lattice vector projecting onto the given coordinates.
    pub fn lift(&self, coords: &[i64]) -> Vec<i64> {
        assert_eq!(coords.len(), self.kept.len());
        let mut y = vec![0i64; self.rank];
        for (&(i, _), &c) in self.kept.iter().zip(coords) {
            y[i] = c;
        }
        mat_vec(&self.u_inv, &y)
    }

    /// Lattice vectors lifting the standard generators of the quotient.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        (0..self.kept.len())
            .map(|k| {
                let mut c = vec![0i64; self.kept.len()];
                c[k] = 1;
                self.lift(&c)
            })
            .collect()
    }

    /// Every element with free coordinates in `[-radius, radius]`.
    pub fn window(&self, radius: i64) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &(_, d) in &self.kept {
            let range: Vec<i64> = if d == 0 {
                (-radius..=radius).collect()
            } else {
                (0..d).collect()
            };
            out = out
                .into_iter()
                .flat_map(|p| {
                    range.iter().map(move |&c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn presentation(&self) -> GroupPresentation {
        GroupPresentation {
            invariant_factors: self.invariant_factors(),
            generators: self.generators(),
        }
    }
}

/// An abelian group `Z/d_1 + ... + Z^f` with lifts of its generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub invariant_factors: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// `{x in Z^r / L : (1 - g) x = 0}` for an automorphism `g` (rows) of `Z^r`
/// preserving the sublattice `L` spanned by `sub`.
pub fn fixed_subgroup(g: &[Vec<i64>], sub: &[Vec<i64>]) -> GroupPresentation {
    let r = g.len();
    let n = sub.len();
    // [(I - g) | -A] z = 0
    let m: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut row: Vec<i64> = (0..r).map(|j| i64::from(i == j) - g[i][j]).collect();
            row.extend(sub.iter().map(|a| -a[i]));
            row
        })
        .collect();
    let ker = integer_kernel(&m, r + n);
    let gens: Vec<Vec<i64>> = ker.iter().map(|z| z[..r].to_vec()).collect();
    // basis B of F: columns u_inv[:, i] * d_i
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|i| gens.iter().map(|x| x[i]).collect())
        .collect();
    let s = smith(&rows, gens.len());
    let k = s.rank();
    let basis: Vec<Vec<i64>> = (0..k)
        .map(|c| (0..r).map(|i| s.u_inv[i][c] * s.diag[c]).collect())
        .collect();
    // coordinates of the sublattice generators in that basis
    let coords: Vec<Vec<i64>> = sub
        .iter()
        .map(|a| {
            let ua = mat_vec(&s.u, a);
            (0..k)
                .map(|c| {
                    debug_assert_eq!(ua[c] % s.diag[c], 0);
                    ua[c] / s.diag[c]
                })
                .collect()
        })
        .collect();
    let q = LatticeQuotient::new(k, &coords);
    let generators = q
        .generators()
        .into_iter()
        .map(|c| {
            (0..r)
                .map(|i| (0..k).map(|j| basis[j][i] * c[j]).sum())
                .collect()
        })
        .collect();
    GroupPresentation {
        invariant_factors: q.invariant_factors(),
        generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    fn check_snf(a: &[Vec<i64>], n: usize) {
        let s = smith(a, n);
        let m = a.len();
        // U A V
        let ua: Vec<Vec<i64>> = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| (0..m).map(|k| s.u[i][k] * a[k][j]).sum())
                    .collect()
            })
            .collect();
        let uav: Vec<Vec<i64>> = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| ua[i][k] * s.v[k][j]).sum())
                    .collect()
            })
            .collect();
        for i in 0..m {
            for j in 0..n {
                let want = if i == j { s.diag[i] } else { 0 };
                assert_eq!(uav[i][j], want, "U A V not diagonal for {a:?}");
            }
        }
        for w in s.diag.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        for i in 0..m {
            for j in 0..m {
                let p: i64 = (0..m).map(|k| s.u[i][k] * s.u_inv[k][j]).sum();
                assert_eq!(p, i64::from(i == j));
            }
        }
    }

    #[test]
    fn smith_small_cases() {
        check_snf(&[vec![2]], 1);
        check_snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        check_snf(&[vec![0, 0], vec![0, 0]], 2);
        check_snf(&[vec![1, -1]], 2);
        check_snf(&[vec![6, 4], vec![4, 6], vec![2, 2]], 2);
        assert_eq!(
            smith(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3).diag,
            vec![2, 6, 12]
        );
    }

    #[test]
    fn quotients() {
        // Z / 2Z
        let q = LatticeQuotient::new(1, &[vec![2]]);
        assert_eq!(q.invariant_factors(), vec![2]);
        assert_eq!(q.project(&[3]), vec![1]);
        // Z^2 / (1,-1)
        let q = LatticeQuotient::new(2, &[vec![1, -1]]);
        assert_eq!(q.invariant_factors(), vec![0]);
        assert_eq!(
            q.project(&[1, 0])
                .iter()
                .map(|x| x.abs())
                .collect::<Vec<_>>(),
            vec![1]
        );
        assert!(q.contains(&[3, -3]));
        let g = q.generators();
        assert_eq!(q.project(&g[0]), vec![1]);
    }

    #[test]
    fn fixed_subgroup_of_swap() {
        // Z^2 / 0 with swap: fixed part is the diagonal
        let g = vec![vec![0, 1], vec![1, 0]];
        let f = fixed_subgroup(&g, &[]);
        assert_eq!(f.invariant_factors, vec![0]);
        assert_eq!(f.generators[0][0].abs(), 1);
        assert_eq!(f.generators[0][0], f.generators[0][1]);
        // (Z/2)^2 with swap: fixed part Z/2
        let f = fixed_subgroup(&g, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(f.invariant_factors, vec![2]);
    }

    #[test]
    fn rational_solve_and_det() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let m = Matrix::from_rows(vec![vec![q(2), q(-1)], vec![q(-1), q(2)]]);
        assert_eq!(m.det(), q(3));
        let x = m.solve(&[q(1), q(0)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(0)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        // same computation over machine rationals
        let r = |n: i64| Ratio::<i64>::from_integer(n);
        let m2 = Matrix::from_rows(vec![vec![r(2), r(-1)], vec![r(-1), r(2)]]);
        assert_eq!(m2.det(), r(3));
        let f = Matrix::from_rows(vec![vec![2.0f64, -1.0], vec![-1.0, 2.0]]);
        assert!((f.det() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn integer_solve() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(solve_integer(&m, 2, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_integer(&m, 2, &[1, 0]), None);
    }

    proptest::proptest! {
        #[test]
        fn smith_random(entries in proptest::collection::vec(-6i64..7, 12)) {
            let a: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            check_snf(&a, 4);
        }
    }
}
