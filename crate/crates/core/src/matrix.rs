//! Dense exact matrices: fraction-free determinant, kernel bases over
//! fields, Hermite normal form, and Smith normal form over the Euclidean
//! rings `Z` and `Z[i]`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Ring, Scalar};

/// Dense row-major matrix over one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::domain(format!(
                "matrix data length {} does not match shape {rows}x{cols}",
                data.len()
            )));
        }
        for s in &data {
            if s.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), s.ring().to_string()));
            }
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(ring, rows, cols, |_, _| Scalar::zero(ring))
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        Matrix::from_fn(ring, n, n, |i, j| {
            if i == j {
                Scalar::one(ring)
            } else {
                Scalar::zero(ring)
            }
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
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

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.ring(), self.ring, "entry ring must match matrix ring");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    fn check_same_ring(&self, rhs: &Matrix) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), rhs.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_ring(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::domain("matrix addition shape mismatch"));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| a.neg()).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_ring(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::domain(format!(
                "matrix product shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.at(i, j).add(&a.mul(rhs.at(k, j)));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self^k` by iterated multiplication; `self` must be square.
    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut out = Matrix::identity(&self.ring, self.rows);
        for _ in 0..k {
            out = out.mul(self).expect("square power");
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::domain("matrix-vector shape mismatch"));
        }
        let mut out = vec![Scalar::zero(&self.ring); self.rows];
        for i in 0..self.rows {
            let mut acc = Scalar::zero(&self.ring);
            for j in 0..self.cols {
                acc = acc.add(&self.at(i, j).mul(&v[j]));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Coordinates in the basic-matrix basis ordered first by column and
    /// then by row, i.e. the columns of the matrix stacked top to bottom.
    pub fn vectorize_column_major(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.at(i, j).clone());
            }
        }
        out
    }

    /// Inverse of `vectorize_column_major` for a given shape.
    pub fn from_vectorized_column_major(
        ring: &Ring,
        rows: usize,
        cols: usize,
        data: &[Scalar],
    ) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::domain("vector length does not match target shape"));
        }
        Ok(Matrix::from_fn(ring, rows, cols, |i, j| data[j * rows + i].clone()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination. Requires a
    /// square matrix over an integral domain.
    pub fn det_fraction_free(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        if !self.ring.is_domain() {
            return Err(Error::domain(format!(
                "determinant needs an integral domain, {} is not one",
                self.ring
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one(&self.ring));
        }
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign_flip = false;
        let mut prev_pivot = Scalar::one(&self.ring);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(Scalar::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    // Bareiss guarantees this division is exact
                    m[i][j] = num.div_exact(&prev_pivot).map_err(|_| {
                        Error::invariant("fraction-free elimination produced an inexact division")
                    })?;
                }
                m[i][k] = Scalar::zero(&self.ring);
            }
            prev_pivot = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign_flip { det.neg() } else { det })
    }

    /// Reduced row echelon form over a field; returns (rref, pivot columns).
    fn rref(&self) -> Result<(Vec<Vec<Scalar>>, Vec<usize>)> {
        if !self.ring.is_field() {
            return Err(Error::domain(format!("row reduction needs a field, got {}", self.ring)));
        }
        let mut m: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = m[r][c].inverse().expect("nonzero field element");
            for j in c..self.cols {
                m[r][j] = m[r][j].mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c].clone();
                    for j in c..self.cols {
                        let v = m[i][j].sub(&factor.mul(&m[r][j]));
                        m[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank_over_field(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the right null space `{x : A x = 0}` over a field. The empty
    /// basis means the matrix is injective.
    pub fn solve_kernel(&self) -> Result<Vec<Vec<Scalar>>> {
        let (m, pivots) = self.rref()?;
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(&self.ring); self.cols];
            v[free] = Scalar::one(&self.ring);
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = m[r][free].neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Canonical triangular basis of an integer (or Gaussian-integer) row
/// lattice, with the rank it exposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    pub basis: Matrix,
    pub rank: usize,
}

impl HermiteBasis {
    /// Leading (pivot) column of each basis row.
    fn pivot_cols(&self) -> Vec<usize> {
        (0..self.basis.rows())
            .map(|i| {
                (0..self.basis.cols())
                    .find(|&j| !self.basis.at(i, j).is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    /// Lattice membership test by triangular elimination with exact
    /// divisibility at every pivot.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.basis.cols() {
            return Err(Error::domain("vector length does not match lattice dimension"));
        }
        let mut v = v.to_vec();
        for (i, pc) in self.pivot_cols().into_iter().enumerate() {
            // columns left of the pivot must already be eliminated
            if let Some(j) = (0..pc).find(|&j| !v[j].is_zero()) {
                debug_assert!(j < pc);
                return Ok(false);
            }
            if v[pc].is_zero() {
                continue;
            }
            let q = match v[pc].div_exact(self.basis.at(i, pc)) {
                Ok(q) => q,
                Err(_) => return Ok(false),
            };
            for j in pc..v.len() {
                v[j] = v[j].sub(&q.mul(self.basis.at(i, j)));
            }
        }
        Ok(v.iter().all(|s| s.is_zero()))
    }
}

/// Quotient used to reduce an entry against a pivot in HNF position: floor
/// division over `Z` (remainders land in `[0, pivot)`), nearest-lattice
/// division over `Z[i]`.
fn reduction_quotient(a: &Scalar, pivot: &Scalar) -> Result<Scalar> {
    match (a, pivot) {
        (Scalar::Int(x), Scalar::Int(p)) => {
            use num_integer::Integer;
            Ok(Scalar::Int(x.div_floor(p)))
        }
        _ => Ok(a.euclid_div(pivot)?.0),
    }
}

/// Canonical Hermite-form basis of the lattice spanned by `rows`.
pub fn hermite_row_basis(ring: &Ring, rows: &[Vec<Scalar>]) -> Result<HermiteBasis> {
    if !ring.is_euclidean_lattice_ring() {
        return Err(Error::domain(format!("Hermite form needs Z or Z[i], got {ring}")));
    }
    let cols = rows.first().map_or(0, |r| r.len());
    for r in rows {
        if r.len() != cols {
            return Err(Error::domain("ragged rows in lattice input"));
        }
        for s in r {
            if s.ring() != *ring {
                return Err(Error::RingMismatch(ring.to_string(), s.ring().to_string()));
            }
        }
    }
    // echelon basis kept sorted by pivot column
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for row in rows {
        insert_row(&mut basis, row.clone())?;
    }
    // canonicalize pivots and reduce the entries above each pivot
    for k in 0..basis.len() {
        let (canon_pivot, unit) = {
            let (pc, row) = &basis[k];
            row[*pc].canonical_associate()
        };
        if !unit.is_one() {
            for s in &mut basis[k].1 {
                *s = s.mul(&unit);
            }
            debug_assert_eq!(basis[k].1[basis[k].0], canon_pivot);
        }
    }
    // ascending pivot order: later pivot rows vanish at earlier pivot
    // columns, so each reduced column stays final
    for k in 0..basis.len() {
        let (pc, pivot_row) = (basis[k].0, basis[k].1.clone());
        for above in 0..k {
            if basis[above].1[pc].is_zero() {
                continue;
            }
            let q = reduction_quotient(&basis[above].1[pc], &pivot_row[pc])?;
            if q.is_zero() {
                continue;
            }
            for j in 0..cols {
                let v = basis[above].1[j].sub(&q.mul(&pivot_row[j]));
                basis[above].1[j] = v;
            }
        }
    }
    let rank = basis.len();
    let data: Vec<Scalar> = basis.into_iter().flat_map(|(_, r)| r).collect();
    Ok(HermiteBasis { basis: Matrix::new(ring.clone(), rank, cols, data)?, rank })
}

fn insert_row(basis: &mut Vec<(usize, Vec<Scalar>)>, mut v: Vec<Scalar>) -> Result<()> {
    let cols = v.len();
    let mut k = 0;
    loop {
        let Some(lead) = (0..cols).find(|&j| !v[j].is_zero()) else {
            return Ok(()); // reduced to zero
        };
        // skip basis rows with pivots strictly left of the new leading column
        while k < basis.len() && basis[k].0 < lead {
            k += 1;
        }
        if k == basis.len() || basis[k].0 > lead {
            basis.insert(k, (lead, v));
            return Ok(());
        }
        // same leading column: run the euclidean gcd dance in place
        loop {
            let (q, r) = v[lead].euclid_div(&basis[k].1[lead])?;
            if !q.is_zero() {
                for j in 0..cols {
                    let t = v[j].sub(&q.mul(&basis[k].1[j]));
                    v[j] = t;
                }
            }
            if r.is_zero() {
                debug_assert!(v[lead].is_zero());
                break;
            }
            std::mem::swap(&mut v, &mut basis[k].1);
        }
        // v now has its leading entry at `lead` cleared; keep sifting
    }
}

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal with the
/// divisibility chain `a_1 | a_2 | ...` in canonical associates.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
    pub invariant_factors: Vec<Scalar>,
}

impl SmithDecomposition {
    /// Product of the norms of the invariant factors, i.e. the index of the
    /// row lattice when it has full rank; `None` when rank-deficient.
    pub fn index(&self) -> Result<Option<BigUint>> {
        let n = self.s.rows().min(self.s.cols());
        if self.invariant_factors.len() < n {
            return Ok(None);
        }
        let mut idx = BigUint::one();
        for a in &self.invariant_factors {
            idx *= a.norm()?;
        }
        Ok(Some(idx))
    }
}

struct SnfWorkspace {
    s: Matrix,
    u: Matrix,
    v: Matrix,
}

impl SnfWorkspace {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.s.cols() {
            let (x, y) = (self.s.at(a, j).clone(), self.s.at(b, j).clone());
            self.s.set(a, j, y);
            self.s.set(b, j, x);
        }
        for j in 0..self.u.cols() {
            let (x, y) = (self.u.at(a, j).clone(), self.u.at(b, j).clone());
            self.u.set(a, j, y);
            self.u.set(b, j, x);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.s.rows() {
            let (x, y) = (self.s.at(i, a).clone(), self.s.at(i, b).clone());
            self.s.set(i, a, y);
            self.s.set(i, b, x);
        }
        for i in 0..self.v.rows() {
            let (x, y) = (self.v.at(i, a).clone(), self.v.at(i, b).clone());
            self.v.set(i, a, y);
            self.v.set(i, b, x);
        }
    }

    /// row[target] -= q * row[source]
    fn row_op(&mut self, target: usize, source: usize, q: &Scalar) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.s.cols() {
            let v = self.s.at(target, j).sub(&q.mul(self.s.at(source, j)));
            self.s.set(target, j, v);
        }
        for j in 0..self.u.cols() {
            let v = self.u.at(target, j).sub(&q.mul(self.u.at(source, j)));
            self.u.set(target, j, v);
        }
    }

    /// col[target] -= q * col[source]
    fn col_op(&mut self, target: usize, source: usize, q: &Scalar) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.s.rows() {
            let v = self.s.at(i, target).sub(&q.mul(self.s.at(i, source)));
            self.s.set(i, target, v);
        }
        for i in 0..self.v.rows() {
            let v = self.v.at(i, target).sub(&q.mul(self.v.at(i, source)));
            self.v.set(i, target, v);
        }
    }

    fn scale_row(&mut self, r: usize, unit: &Scalar) {
        if unit.is_one() {
            return;
        }
        for j in 0..self.s.cols() {
            let v = self.s.at(r, j).mul(unit);
            self.s.set(r, j, v);
        }
        for j in 0..self.u.cols() {
            let v = self.u.at(r, j).mul(unit);
            self.u.set(r, j, v);
        }
    }
}

/// Smallest-norm nonzero entry of `S[k.., k..]`, ties broken by lowest
/// `(row, col)`. Deterministic, so decompositions are reproducible.
fn select_pivot(s: &Matrix, k: usize) -> Result<Option<(usize, usize)>> {
    let mut best: Option<(BigUint, usize, usize)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let e = s.at(i, j);
            if e.is_zero() {
                continue;
            }
            let n = e.norm()?;
            match &best {
                Some((bn, _, _)) if *bn <= n => {}
                _ => best = Some((n, i, j)),
            }
        }
    }
    Ok(best.map(|(_, i, j)| (i, j)))
}

pub fn smith_normal_form(a: &Matrix) -> Result<SmithDecomposition> {
    let ring = a.ring().clone();
    if !ring.is_euclidean_lattice_ring() {
        return Err(Error::domain(format!("Smith normal form needs Z or Z[i], got {ring}")));
    }
    let mut w = SnfWorkspace {
        s: a.clone(),
        u: Matrix::identity(&ring, a.rows()),
        v: Matrix::identity(&ring, a.cols()),
    };
    let steps = a.rows().min(a.cols());
    for k in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = select_pivot(&w.s, k)? else {
                break 'pivot; // remaining block is zero
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            let mut dirty = false;
            for i in k + 1..w.s.rows() {
                if w.s.at(i, k).is_zero() {
                    continue;
                }
                let (q, r) = w.s.at(i, k).euclid_div(w.s.at(k, k))?;
                w.row_op(i, k, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..w.s.cols() {
                if w.s.at(k, j).is_zero() {
                    continue;
                }
                let (q, r) = w.s.at(k, j).euclid_div(w.s.at(k, k))?;
                w.col_op(j, k, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue; // smaller remainders exist; reselect the pivot
            }
            // row and column k are clear; enforce divisibility of the rest
            let pivot = w.s.at(k, k).clone();
            let mut fixed = true;
            'scan: for i in k + 1..w.s.rows() {
                for j in k + 1..w.s.cols() {
                    if w.s.at(i, j).div_exact(&pivot).is_err() {
                        let minus_one = Scalar::one(&ring).neg();
                        w.row_op(k, i, &minus_one); // add row i into row k
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
        if w.s.at(k, k).is_zero() {
            break;
        }
        let (_, unit) = w.s.at(k, k).canonical_associate();
        w.scale_row(k, &unit);
    }
    let mut invariant_factors = Vec::new();
    for k in 0..steps {
        let d = w.s.at(k, k);
        if d.is_zero() {
            break;
        }
        invariant_factors.push(d.clone());
    }
    Ok(SmithDecomposition { u: w.u, s: w.s, v: w.v, invariant_factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn zmat(rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        let ring = Ring::Integers;
        Matrix::new(
            ring.clone(),
            rows,
            cols,
            vals.iter().map(|&v| Scalar::from_i64(&ring, v)).collect(),
        )
        .unwrap()
    }

    fn zvec(vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|&v| Scalar::from_i64(&Ring::Integers, v)).collect()
    }

    // independent oracle: cofactor expansion along the first row
    fn det_cofactor(m: &Matrix) -> Scalar {
        let n = m.rows();
        if n == 0 {
            return Scalar::one(m.ring());
        }
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut acc = Scalar::zero(m.ring());
        for j in 0..n {
            if m.at(0, j).is_zero() {
                continue;
            }
            let minor = Matrix::from_fn(m.ring(), n - 1, n - 1, |r, c| {
                m.at(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.at(0, j).mul(&det_cofactor(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        let samples = [
            zmat(2, 2, &[1, 2, 3, 4]),
            zmat(3, 3, &[2, -1, 0, 5, 3, 7, -2, 4, 1]),
            zmat(4, 4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -6, -11, -6, -1]),
            zmat(4, 4, &[3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 3]),
        ];
        for m in samples {
            assert_eq!(m.det_fraction_free().unwrap(), det_cofactor(&m));
        }
    }

    #[test]
    fn det_identity_and_errors() {
        let id = Matrix::identity(&Ring::Integers, 5);
        assert!(id.det_fraction_free().unwrap().is_one());
        let rect = zmat(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert!(rect.det_fraction_free().is_err());
        let z6 = Ring::integers_mod(6).unwrap();
        let m = Matrix::identity(&z6, 2);
        assert!(m.det_fraction_free().is_err());
    }

    #[test]
    fn det_over_gaussian_integers() {
        let ring = Ring::GaussianIntegers;
        let g = |a: i64, b: i64| Scalar::Gauss(BigInt::from(a), BigInt::from(b));
        let m = Matrix::new(
            ring,
            2,
            2,
            vec![g(1, 1), g(0, 2), g(3, -1), g(2, 0)],
        )
        .unwrap();
        // det = (1+i)(2) - (2i)(3-i) = 2+2i - (6i+2) = -4i
        assert_eq!(m.det_fraction_free().unwrap(), g(0, -4));
    }

    #[test]
    fn kernel_cases() {
        let q = Ring::Rationals;
        let id = Matrix::identity(&q, 3);
        assert!(id.solve_kernel().unwrap().is_empty());

        let zero = Matrix::zeros(&q, 2, 2);
        assert_eq!(zero.solve_kernel().unwrap().len(), 2);

        let ones = Matrix::from_fn(&q, 2, 2, |_, _| Scalar::one(&q));
        let k = ones.solve_kernel().unwrap();
        assert_eq!(k.len(), 1);
        // the line spanned by (1, -1); the basis vector normalizes the free
        // coordinate to 1, giving (-1, 1)
        assert_eq!(k[0][0], k[0][1].neg());
        assert!(k[0][1].is_one());
    }

    #[test]
    fn kernel_vectors_are_killed_and_rank_nullity_holds() {
        let q = Ring::Rationals;
        let m = Matrix::from_fn(&q, 3, 5, |i, j| Scalar::from_i64(&q, ((i * j) % 4) as i64 - 1));
        let rank = m.rank_over_field().unwrap();
        let kernel = m.solve_kernel().unwrap();
        assert_eq!(rank + kernel.len(), 5);
        for v in kernel {
            assert!(m.mul_vec(&v).unwrap().iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn vectorize_is_column_major() {
        let m = zmat(2, 2, &[1, 2, 3, 4]); // [[a,b],[c,d]] = [[1,2],[3,4]]
        let v = m.vectorize_column_major();
        assert_eq!(v, zvec(&[1, 3, 2, 4])); // (a, c, b, d)
        let e12 = zmat(2, 2, &[0, 1, 0, 0]);
        assert_eq!(e12.vectorize_column_major(), zvec(&[0, 0, 1, 0]));
        let id = Matrix::identity(&Ring::Integers, 2);
        assert_eq!(id.vectorize_column_major(), zvec(&[1, 0, 0, 1]));
    }

    // brute-force membership oracle: small integer combinations of the rows
    fn lattice_contains_small(rows: &[Vec<i64>], target: &[i64]) -> bool {
        let k = rows.len();
        let bound = 6i64;
        let mut coeffs = vec![-bound; k];
        loop {
            let mut acc = vec![0i64; target.len()];
            for (c, row) in coeffs.iter().zip(rows) {
                for (a, r) in acc.iter_mut().zip(row) {
                    *a += c * r;
                }
            }
            if acc == target {
                return true;
            }
            let mut i = 0;
            loop {
                if i == k {
                    return false;
                }
                coeffs[i] += 1;
                if coeffs[i] <= bound {
                    break;
                }
                coeffs[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn hermite_example_lattice() {
        let rows = vec![zvec(&[2, 0]), zvec(&[0, 2]), zvec(&[1, 1])];
        let h = hermite_row_basis(&Ring::Integers, &rows).unwrap();
        assert_eq!(h.rank, 2);
        assert_eq!(h.basis, zmat(2, 2, &[1, 1, 0, 2]));
        // oracle: both basis rows lie in the original lattice and vice versa
        let orig: Vec<Vec<i64>> = vec![vec![2, 0], vec![0, 2], vec![1, 1]];
        assert!(lattice_contains_small(&orig, &[1, 1]));
        assert!(lattice_contains_small(&orig, &[0, 2]));
        assert!(!lattice_contains_small(&orig, &[1, 0]));
        assert!(h.contains(&zvec(&[2, 0])).unwrap());
        assert!(!h.contains(&zvec(&[1, 0])).unwrap());
    }

    #[test]
    fn hermite_trivial_cases() {
        let h = hermite_row_basis(&Ring::Integers, &[zvec(&[0, 0, 0])]).unwrap();
        assert_eq!(h.rank, 0);
        let rows = vec![zvec(&[1, 0]), zvec(&[0, 1])];
        let h = hermite_row_basis(&Ring::Integers, &rows).unwrap();
        assert_eq!(h.basis, zmat(2, 2, &[1, 0, 0, 1]));
        assert!(hermite_row_basis(&Ring::Integers, &[zvec(&[1]), zvec(&[1, 2])]).is_err());
    }

    #[test]
    fn hermite_is_idempotent() {
        let rows = vec![zvec(&[4, 6, 2]), zvec(&[6, 3, 0]), zvec(&[2, 9, 8])];
        let h = hermite_row_basis(&Ring::Integers, &rows).unwrap();
        let again = hermite_row_basis(
            &Ring::Integers,
            &(0..h.basis.rows()).map(|i| h.basis.row(i).to_vec()).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(h.basis, again.basis);
    }

    #[test]
    fn smith_diag_2_3() {
        let m = zmat(2, 2, &[2, 0, 0, 3]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(
            snf.invariant_factors,
            vec![Scalar::from_i64(&Ring::Integers, 1), Scalar::from_i64(&Ring::Integers, 6)]
        );
        let recomposed = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(recomposed, snf.s);
        assert!(snf.u.det_fraction_free().unwrap().is_unit());
        assert!(snf.v.det_fraction_free().unwrap().is_unit());
    }

    #[test]
    fn smith_zero_and_unimodular() {
        let z = Matrix::zeros(&Ring::Integers, 3, 2);
        let snf = smith_normal_form(&z).unwrap();
        assert!(snf.invariant_factors.is_empty());
        assert!(snf.s.is_zero());

        let um = zmat(2, 2, &[2, 1, 1, 1]); // det 1
        let snf = smith_normal_form(&um).unwrap();
        assert!(snf.invariant_factors.iter().all(|a| a.is_one()));
    }

    #[test]
    fn smith_over_gaussian_integers() {
        let ring = Ring::GaussianIntegers;
        let g = |a: i64, b: i64| Scalar::Gauss(BigInt::from(a), BigInt::from(b));
        let m = Matrix::new(ring.clone(), 2, 2, vec![g(1, 1), g(0, 0), g(0, 0), g(2, 0)]).unwrap();
        let snf = smith_normal_form(&m).unwrap();
        let recomposed = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(recomposed, snf.s);
        // index = product of norms = N(1+i) * N(2) ... invariant factors may
        // differ from the diagonal input, but the index is determined
        assert_eq!(snf.index().unwrap(), Some(BigUint::from(8u32)));
        // divisibility chain
        for w in snf.invariant_factors.windows(2) {
            assert!(w[1].div_exact(&w[0]).is_ok());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn det_is_multiplicative(xs in proptest::collection::vec(-9i64..=9, 16), ys in proptest::collection::vec(-9i64..=9, 16)) {
            let a = zmat(4, 4, &xs);
            let b = zmat(4, 4, &ys);
            let lhs = a.mul(&b).unwrap().det_fraction_free().unwrap();
            let rhs = a.det_fraction_free().unwrap().mul(&b.det_fraction_free().unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn smith_recomposes_with_divisibility(xs in proptest::collection::vec(-9i64..=9, 12)) {
            let a = zmat(3, 4, &xs);
            let snf = smith_normal_form(&a).unwrap();
            let recomposed = snf.u.mul(&a).unwrap().mul(&snf.v).unwrap();
            prop_assert_eq!(&recomposed, &snf.s);
            prop_assert!(snf.u.det_fraction_free().unwrap().is_unit());
            prop_assert!(snf.v.det_fraction_free().unwrap().is_unit());
            for w in snf.invariant_factors.windows(2) {
                prop_assert!(w[1].div_exact(&w[0]).is_ok());
            }
            // off-diagonal of S is zero
            for i in 0..snf.s.rows() {
                for j in 0..snf.s.cols() {
                    if i != j {
                        prop_assert!(snf.s.at(i, j).is_zero());
                    }
                }
            }
        }

        #[test]
        fn smith_index_equals_abs_det(xs in proptest::collection::vec(-9i64..=9, 16)) {
            let a = zmat(4, 4, &xs);
            let det = a.det_fraction_free().unwrap();
            let snf = smith_normal_form(&a).unwrap();
            if det.is_zero() {
                prop_assert_eq!(snf.index().unwrap(), None);
            } else {
                prop_assert_eq!(snf.index().unwrap(), Some(det.norm().unwrap()));
            }
        }

        #[test]
        fn smith_over_gaussians_recomposes(xs in proptest::collection::vec(-4i64..=4, 18)) {
            let ring = Ring::GaussianIntegers;
            let a = Matrix::from_fn(&ring, 3, 3, |i, j| {
                let t = 2 * (i * 3 + j);
                Scalar::Gauss(BigInt::from(xs[t]), BigInt::from(xs[t + 1]))
            });
            let snf = smith_normal_form(&a).unwrap();
            let recomposed = snf.u.mul(&a).unwrap().mul(&snf.v).unwrap();
            prop_assert_eq!(&recomposed, &snf.s);
            prop_assert!(snf.u.det_fraction_free().unwrap().is_unit());
            prop_assert!(snf.v.det_fraction_free().unwrap().is_unit());
            for w in snf.invariant_factors.windows(2) {
                prop_assert!(w[1].div_exact(&w[0]).is_ok());
            }
            let det = a.det_fraction_free().unwrap();
            if det.is_zero() {
                prop_assert_eq!(snf.index().unwrap(), None);
            } else {
                prop_assert_eq!(snf.index().unwrap(), Some(det.norm().unwrap()));
            }
        }

        #[test]
        fn hermite_idempotent_random(xs in proptest::collection::vec(-9i64..=9, 12)) {
            let rows: Vec<Vec<Scalar>> = xs.chunks(4).map(zvec).collect();
            let h = hermite_row_basis(&Ring::Integers, &rows).unwrap();
            let rows2: Vec<Vec<Scalar>> = (0..h.basis.rows()).map(|i| h.basis.row(i).to_vec()).collect();
            let again = hermite_row_basis(&Ring::Integers, &rows2).unwrap();
            prop_assert_eq!(h.basis, again.basis);
        }
    }
}
