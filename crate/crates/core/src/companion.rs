//! The algebra generated by a pair of companion matrices.
//!
//! For monic `f`, `g` of equal degree `n >= 2` over an exact ring this
//! module builds the companion matrices `C`, `D`, the structure matrix
//! whose columns are the coordinates of the products `C^i D^j`, and
//! everything derived from the pair: the determinant identity
//! `det M = Res(f, g)^(n-1)`, the lattice index over `Z` and `Z[i]`, the
//! scalar sequence read off the last row of `s(D)` with its relation
//! polynomials, rank and basis of the generated module, commutants, and
//! common invariant subspaces.
//!
//! Operations that verify an exact identity return an invariant-violation
//! error (with both sides dumped) when the identity fails; that outcome is
//! always a bug here, never bad input.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{hermite_row_basis, smith_normal_form, Matrix};
use crate::poly::{poly_gcd, poly_sub_same_degree, resultant, Monic, Poly};
use crate::ring::{Ring, Scalar};
use crate::span::span_closure_oracle;

/// Coefficient table of an element of the free span of the ordered
/// monomials `X^a Y^b`, keyed by `(a, b)`.
pub type MonomialTable = BTreeMap<(usize, usize), Scalar>;

/// Companion matrix of a monic polynomial of degree `n >= 2`: ones on the
/// subdiagonal, negated coefficients down the last column.
pub fn companion(f: &Monic) -> Result<Matrix> {
    let n = f.deg();
    if n < 2 {
        return Err(Error::domain(format!("companion matrix needs degree >= 2, got {n}")));
    }
    let ring = f.ring().clone();
    let mut m = Matrix::zeros(&ring, n, n);
    for i in 1..n {
        m.set(i, i - 1, Scalar::one(&ring));
    }
    for i in 0..n {
        m.set(i, n - 1, f.coeff(i).neg());
    }
    Ok(m)
}

/// Coordinates of `p` relative to the basis `1, X, ..., X^(n-1)`.
pub fn coords(p: &Poly, n: usize) -> Result<Vec<Scalar>> {
    if p.degree().map_or(false, |d| d >= n) {
        return Err(Error::domain(format!(
            "degree {} does not fit the coordinate space of dimension {n}",
            p.degree().unwrap()
        )));
    }
    Ok((0..n).map(|k| p.coeff(k)).collect())
}

/// A pair of companion matrices and the data every theorem about them
/// consumes. `C` and `D` share their first `n - 1` columns; `s = g - f` has
/// degree at most `n - 1`; the last-row selector used in the scalar
/// identity below is just `e_n` transposed.
#[derive(Clone, Debug)]
pub struct CompanionPair {
    ring: Ring,
    n: usize,
    f: Monic,
    g: Monic,
    c: Matrix,
    d: Matrix,
    s: Poly,
}

impl CompanionPair {
    pub fn new(f: Monic, g: Monic) -> Result<CompanionPair> {
        if f.ring() != g.ring() {
            return Err(Error::RingMismatch(f.ring().to_string(), g.ring().to_string()));
        }
        let n = f.deg();
        if g.deg() != n {
            return Err(Error::domain(format!(
                "degree mismatch: deg f = {n}, deg g = {}",
                g.deg()
            )));
        }
        if n < 2 {
            return Err(Error::domain("companion pairs need degree >= 2"));
        }
        let c = companion(&f)?;
        let d = companion(&g)?;
        let s = poly_sub_same_degree(&g, &f)?;
        Ok(CompanionPair { ring: f.ring().clone(), n, f, g, c, d, s })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &Monic {
        &self.f
    }

    pub fn g(&self) -> &Monic {
        &self.g
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn s(&self) -> &Poly {
        &self.s
    }

    pub fn resultant(&self) -> Result<Scalar> {
        resultant(&self.f, &self.g)
    }

    /// `[I, M, M^2, ..., M^upto]`.
    fn powers(m: &Matrix, upto: usize) -> Vec<Matrix> {
        let mut out = vec![Matrix::identity(m.ring(), m.rows())];
        for k in 1..=upto {
            out.push(out[k - 1].mul(m).expect("square powers"));
        }
        out
    }

    pub fn c_powers(&self, upto: usize) -> Vec<Matrix> {
        Self::powers(&self.c, upto)
    }

    pub fn d_powers(&self, upto: usize) -> Vec<Matrix> {
        Self::powers(&self.d, upto)
    }

    /// The structure matrix: column for the exponent pair `(i, j)` holds
    /// the column-major coordinates of `C^i D^j`, columns ordered by
    /// descending `j` and ascending `i` within each block.
    pub fn structure_matrix(&self) -> StructureMatrix {
        let n = self.n;
        let pc = self.c_powers(n - 1);
        let pd = self.d_powers(n - 1);
        let mut column_order = Vec::with_capacity(n * n);
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(n * n);
        for j in (0..n).rev() {
            for i in 0..n {
                column_order.push((i, j));
                let prod = pc[i].mul(&pd[j]).expect("same ring powers");
                columns.push(prod.vectorize_column_major());
            }
        }
        let mut row_order = Vec::with_capacity(n * n);
        for l in 0..n {
            for k in 0..n {
                row_order.push((k, l));
            }
        }
        let matrix = Matrix::from_fn(&self.ring, n * n, n * n, |r, c| columns[c][r].clone());
        StructureMatrix { matrix, column_order, row_order }
    }

    /// Checks the determinant identity `det M = Res(f, g)^(n-1)` exactly.
    /// Inequality is an invariant violation, reported with both sides.
    pub fn det_identity_check(&self) -> Result<DetIdentity> {
        if !self.ring.is_domain() {
            return Err(Error::domain(format!(
                "determinant identity needs an integral domain, got {}",
                self.ring
            )));
        }
        let det_m = self.structure_matrix().matrix.det_fraction_free()?;
        let res = self.resultant()?;
        let res_power = res.pow((self.n - 1) as u64);
        if det_m != res_power {
            return Err(Error::invariant(format!(
                "det M != Res^(n-1) for f = {}, g = {}: det M = {det_m}, Res = {res}, Res^(n-1) = {res_power}",
                self.f, self.g
            )));
        }
        Ok(DetIdentity { det_m, res_power, equal: true })
    }

    /// Index of the lattice generated by the products `C^i D^j` inside the
    /// full matrix lattice, over `Z` or `Z[i]`: predicted `N(Res)^(n-1)`
    /// against the product of invariant-factor norms of the structure
    /// matrix. Rank-deficient pairs (`Res = 0`) report the rank instead.
    pub fn lattice_index(&self) -> Result<IndexReport> {
        if !self.ring.is_euclidean_lattice_ring() {
            return Err(Error::domain(format!(
                "lattice index is computed over Z or Z[i], got {}",
                self.ring
            )));
        }
        let res = self.resultant()?;
        let snf = smith_normal_form(&self.structure_matrix().matrix)?;
        let rank = snf.invariant_factors.len();
        if res.is_zero() {
            // cross-check the rank against the free-module rank formula
            // when the gcd degree is available
            let m = if self.ring == Ring::Integers {
                Some(poly_gcd(self.f.as_poly(), self.g.as_poly())?.degree().unwrap_or(0))
            } else if self.f == self.g {
                Some(self.n)
            } else {
                None
            };
            if let Some(m) = m {
                let expected = self.n + (self.n - m) * (self.n - 1);
                if rank != expected {
                    return Err(Error::invariant(format!(
                        "rank-deficient pair f = {}, g = {}: SNF rank {rank}, formula rank {expected}",
                        self.f, self.g
                    )));
                }
            }
            return Ok(IndexReport {
                resultant: res,
                predicted_index: None,
                snf_index: None,
                invariant_factors: snf.invariant_factors,
                rank,
                agree: true,
            });
        }
        let predicted = res.norm()?.pow((self.n - 1) as u32);
        let snf_index = snf.index()?;
        if snf_index.as_ref() != Some(&predicted) {
            return Err(Error::invariant(format!(
                "index mismatch for f = {}, g = {}: predicted {predicted}, SNF gives {snf_index:?} \
                 with invariant factors {:?}",
                self.f,
                self.g,
                snf.invariant_factors.iter().map(|a| a.to_string()).collect::<Vec<_>>()
            )));
        }
        Ok(IndexReport {
            resultant: res,
            predicted_index: Some(predicted.clone()),
            snf_index: Some(predicted),
            invariant_factors: snf.invariant_factors,
            rank,
            agree: true,
        })
    }

    /// The scalars `a_1, ..., a_n` read off the last row of `s(D)`,
    /// verified against the rank-one identity
    /// `(C - D) D^(j-1) (C - D) = a_j (C - D)` for `1 <= j <= n`.
    pub fn a_sequence(&self) -> Result<Vec<Scalar>> {
        let sd = self.s.eval_matrix(&self.d)?;
        let a: Vec<Scalar> = (0..self.n).map(|j| sd.at(self.n - 1, j).clone()).collect();
        let z = self.c.sub(&self.d)?;
        let pd = self.d_powers(self.n - 1);
        for j in 1..=self.n {
            let lhs = z.mul(&pd[j - 1])?.mul(&z)?;
            let rhs = z.mul_scalar(&a[j - 1]);
            if lhs != rhs {
                return Err(Error::invariant(format!(
                    "scalar identity failed at j = {j} for f = {}, g = {}: lhs =\n{lhs}rhs =\n{rhs}",
                    self.f, self.g
                )));
            }
        }
        Ok(a)
    }

    /// The relation polynomials: `p_0 = 1`, `p_j = X p_(j-1) - a_j`, and
    /// `P_j(X, Y) = p_j(X)(X - Y) + Y^(j+1)`. Verifies the lowering
    /// identity `p_j(C)(C - D) = D^j (C - D)` and the swap identity
    /// `D^j C = P_j(C, D)`.
    pub fn p_sequence(&self) -> Result<PSequence> {
        let a = self.a_sequence()?;
        let n = self.n;
        let x = Poly::monomial(Scalar::one(&self.ring), 1);
        let mut p = vec![Poly::one(&self.ring)];
        for j in 1..n {
            let next = x.mul(&p[j - 1])?.sub(&Poly::constant(a[j - 1].clone()))?;
            p.push(next);
        }
        let mut big_p = Vec::with_capacity(n);
        for (j, pj) in p.iter().enumerate() {
            let mut table = MonomialTable::new();
            for (k, c) in pj.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                add_to_table(&mut table, (k + 1, 0), c.clone());
                add_to_table(&mut table, (k, 1), c.neg());
            }
            add_to_table(&mut table, (0, j + 1), Scalar::one(&self.ring));
            big_p.push(table);
        }
        // verify both parts of the construction
        let z = self.c.sub(&self.d)?;
        let pc = self.c_powers(n);
        let pd = self.d_powers(n);
        for (j, pj) in p.iter().enumerate() {
            let lhs = pj.eval_matrix(&self.c)?.mul(&z)?;
            let rhs = pd[j].mul(&z)?;
            if lhs != rhs {
                return Err(Error::invariant(format!(
                    "lowering identity failed at j = {j} for f = {}, g = {}",
                    self.f, self.g
                )));
            }
        }
        for j in 1..n {
            let lhs = pd[j].mul(&pc[1])?;
            let rhs = eval_table(&big_p[j], &pc, &pd)?;
            if lhs != rhs {
                return Err(Error::invariant(format!(
                    "swap identity failed at j = {j} for f = {}, g = {}: lhs =\n{lhs}rhs =\n{rhs}",
                    self.f, self.g
                )));
            }
        }
        Ok(PSequence { p, big_p })
    }

    /// Solves `g(C) Q = -f(D)` over a field: the particular solution has
    /// the relation polynomials' coordinate vectors as columns, and the
    /// full solution set adds anything with columns in `ker g(C)`.
    pub fn solve_q(&self) -> Result<SolveQ> {
        if !self.ring.is_field() {
            return Err(Error::domain(format!("solve-q needs a field, got {}", self.ring)));
        }
        let seq = self.p_sequence()?;
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for pj in &seq.p {
            cols.push(coords(pj, n)?);
        }
        let particular = Matrix::from_fn(&self.ring, n, n, |i, j| cols[j][i].clone());
        let gc = self.g.as_poly().eval_matrix(&self.c)?;
        let lhs = gc.mul(&particular)?;
        let rhs = self.f.as_poly().eval_matrix(&self.d)?.neg();
        if lhs != rhs {
            return Err(Error::invariant(format!(
                "g(C) P != -f(D) for f = {}, g = {}: lhs =\n{lhs}rhs =\n{rhs}",
                self.f, self.g
            )));
        }
        let kernel = gc.solve_kernel()?;
        let unique = kernel.is_empty();
        let kernel_full = kernel.len() == n;
        Ok(SolveQ { particular, kernel, unique, kernel_full })
    }

    /// `h = f / gcd(f, g)` kills the column difference: `h(C) C = h(C) D`.
    pub fn h_annihilator_check(&self) -> Result<HCheck> {
        let d = poly_gcd(self.f.as_poly(), self.g.as_poly())?;
        let h = self.f.as_poly().div_exact(&d)?;
        let hc = h.eval_matrix(&self.c)?;
        let lhs = hc.mul(&self.c)?;
        let rhs = hc.mul(&self.d)?;
        if lhs != rhs {
            return Err(Error::invariant(format!(
                "h(C) C != h(C) D for f = {}, g = {}, h = {h}",
                self.f, self.g
            )));
        }
        Ok(HCheck { h, holds: true })
    }

    /// Rank and monomial basis of the module generated by the pair, per the
    /// free-module rank formula `n + (n - m)(n - 1)` with `m` the gcd
    /// degree. Cross-checked against coordinate-matrix rank and, over
    /// fields, the span-closure oracle.
    pub fn rank_and_basis(&self) -> Result<BasisReport> {
        let supported = matches!(self.ring, Ring::Integers | Ring::Rationals)
            || self.ring.is_field();
        if !supported {
            return Err(Error::domain(format!(
                "rank/basis needs Q, GF(p), or Z, got {}",
                self.ring
            )));
        }
        let n = self.n;
        let d = poly_gcd(self.f.as_poly(), self.g.as_poly())?;
        let m = d.degree().unwrap_or(0);
        let h = self.f.as_poly().div_exact(&d)?;
        let rank = n + (n - m) * (n - 1);
        let mut basis_monomials: Vec<(usize, usize)> = (0..n).map(|i| (i, 0)).collect();
        for j in 1..n {
            for i in 0..n - m {
                basis_monomials.push((i, j));
            }
        }
        debug_assert_eq!(basis_monomials.len(), rank);
        // cross-check 1: the monomials evaluate to independent matrices
        let pc = self.c_powers(n - 1);
        let pd = self.d_powers(n - 1);
        let rows: Vec<Vec<Scalar>> = basis_monomials
            .iter()
            .map(|&(i, j)| Ok(pc[i].mul(&pd[j])?.vectorize_column_major()))
            .collect::<Result<_>>()?;
        let observed_rank = if self.ring == Ring::Integers {
            hermite_row_basis(&self.ring, &rows)?.rank
        } else {
            Matrix::from_fn(&self.ring, rows.len(), n * n, |i, j| rows[i][j].clone())
                .rank_over_field()?
        };
        if observed_rank != rank {
            return Err(Error::invariant(format!(
                "basis monomials have rank {observed_rank}, formula says {rank} \
                 (f = {}, g = {}, gcd degree {m})",
                self.f, self.g
            )));
        }
        // cross-check 2 over fields: the closure oracle agrees
        let oracle_dimension = if self.ring.is_field() {
            let dim = span_closure_oracle(&[self.c.clone(), self.d.clone()])?.dimension;
            if dim != rank {
                return Err(Error::invariant(format!(
                    "span-closure oracle dimension {dim} disagrees with rank formula {rank} \
                     (f = {}, g = {})",
                    self.f, self.g
                )));
            }
            Some(dim)
        } else {
            None
        };
        Ok(BasisReport { gcd_degree: m, rank, basis_monomials, h, oracle_dimension })
    }

    /// Commutant of `{C, D}` over a field, via the kernel of the stacked
    /// commutator operator. Scalars only when `f != g`; all of `R[C]` when
    /// `f = g`.
    pub fn commutant(&self) -> Result<Commutant> {
        if !self.ring.is_field() {
            return Err(Error::domain(format!("commutant needs a field, got {}", self.ring)));
        }
        let n = self.n;
        let dim = n * n;
        // column t = stacked commutators of the t-th basic matrix, indexed
        // column-major to match vectorization
        let mut op = Matrix::zeros(&self.ring, 2 * dim, dim);
        for t in 0..dim {
            let (l, k) = (t / n, t % n); // E has its 1 at (row k, col l)
            let mut e = Matrix::zeros(&self.ring, n, n);
            e.set(k, l, Scalar::one(&self.ring));
            let ec = e.mul(&self.c)?.sub(&self.c.mul(&e)?)?;
            let ed = e.mul(&self.d)?.sub(&self.d.mul(&e)?)?;
            for (r, v) in ec.vectorize_column_major().into_iter().enumerate() {
                op.set(r, t, v);
            }
            for (r, v) in ed.vectorize_column_major().into_iter().enumerate() {
                op.set(dim + r, t, v);
            }
        }
        let kernel = op.solve_kernel()?;
        if self.f == self.g {
            // the commutant of a single cyclic matrix is R[C], and the
            // powers of C are its natural basis
            if kernel.len() != n {
                return Err(Error::invariant(format!(
                    "commutant of the pair f = g = {} has dimension {}, expected {n}",
                    self.f,
                    kernel.len()
                )));
            }
            return Ok(Commutant { dimension: n, basis: self.c_powers(n - 1) });
        }
        if kernel.len() != 1 {
            return Err(Error::invariant(format!(
                "commutant of the distinct pair f = {}, g = {} has dimension {}, expected scalars only",
                self.f,
                self.g,
                kernel.len()
            )));
        }
        let basis = kernel
            .iter()
            .map(|v| Matrix::from_vectorized_column_major(&self.ring, n, n, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Commutant { dimension: basis.len(), basis })
    }

    /// Randomized coordinate-identity checks: reconstruction of `p(C)` from
    /// its first column, the symmetry `p(C)[q] = q(C)[p]`, and the
    /// annihilation law `p(C)[q] = 0 <=> f | pq`. All trials must pass.
    pub fn coord_identity_checks(&self, trials: u32, seed: u64) -> Result<CoordChecks> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n;
        let pc = self.c_powers(n - 1);
        for _ in 0..trials {
            let p = random_poly_below(&self.ring, n, &mut rng);
            let q = random_poly_below(&self.ring, n, &mut rng);
            let pmat = p.eval_matrix(&self.c)?;
            let pv = coords(&p, n)?;
            for (j, cj) in pc.iter().enumerate() {
                let col: Vec<Scalar> = (0..n).map(|i| pmat.at(i, j).clone()).collect();
                let expect = cj.mul_vec(&pv)?;
                if col != expect {
                    return Err(Error::invariant(format!(
                        "column reconstruction failed at column {j} for p = {p} over f = {}",
                        self.f
                    )));
                }
            }
            let qv = coords(&q, n)?;
            let qmat = q.eval_matrix(&self.c)?;
            let lhs = pmat.mul_vec(&qv)?;
            let rhs = qmat.mul_vec(&pv)?;
            if lhs != rhs {
                return Err(Error::invariant(format!(
                    "column symmetry failed for p = {p}, q = {q} over f = {}",
                    self.f
                )));
            }
            let vanishes = lhs.iter().all(|s| s.is_zero());
            let (_, rem) = p.mul(&q)?.div_rem(self.f.as_poly())?;
            if vanishes != rem.is_zero() {
                return Err(Error::invariant(format!(
                    "annihilation law failed for p = {p}, q = {q} over f = {}: \
                     p(C)[q] zero: {vanishes}, f | pq: {}",
                    self.f,
                    rem.is_zero()
                )));
            }
        }
        Ok(CoordChecks { trials })
    }
}

/// Random polynomial of degree `< n` (possibly zero).
fn random_poly_below(ring: &Ring, n: usize, rng: &mut impl Rng) -> Poly {
    let coeffs: Vec<Scalar> = (0..n).map(|_| Scalar::random_small(ring, rng)).collect();
    Poly::new(ring.clone(), coeffs).unwrap()
}

pub(crate) fn add_to_table(table: &mut MonomialTable, key: (usize, usize), v: Scalar) {
    match table.get(&key) {
        Some(cur) => {
            let sum = cur.add(&v);
            if sum.is_zero() {
                table.remove(&key);
            } else {
                table.insert(key, sum);
            }
        }
        None => {
            if !v.is_zero() {
                table.insert(key, v);
            }
        }
    }
}

/// Evaluates a monomial table at `(C, D)` using the supplied power caches.
pub fn eval_table(table: &MonomialTable, pc: &[Matrix], pd: &[Matrix]) -> Result<Matrix> {
    let ring = pc[0].ring().clone();
    let n = pc[0].rows();
    let mut acc = Matrix::zeros(&ring, n, n);
    for (&(a, b), coeff) in table {
        let term = pc[a].mul(&pd[b])?.mul_scalar(coeff);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// The matrix of coordinates of the ordered products `C^i D^j`, with its
/// column order (descending `j` blocks, ascending `i` within each block)
/// and row order (basic matrices `E^(kl)` listed first by column `l`, then
/// by row `k`, both 0-indexed).
#[derive(Clone, Debug)]
pub struct StructureMatrix {
    pub matrix: Matrix,
    pub column_order: Vec<(usize, usize)>,
    pub row_order: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct DetIdentity {
    pub det_m: Scalar,
    pub res_power: Scalar,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct IndexReport {
    pub resultant: Scalar,
    /// `N(Res)^(n-1)`; `None` when the pair is rank-deficient.
    pub predicted_index: Option<BigUint>,
    /// Product of invariant-factor norms; `None` when rank-deficient.
    pub snf_index: Option<BigUint>,
    pub invariant_factors: Vec<Scalar>,
    pub rank: usize,
    pub agree: bool,
}

/// The lowering polynomials `p_j` and the swap polynomials `P_j` as
/// monomial tables.
#[derive(Clone, Debug)]
pub struct PSequence {
    pub p: Vec<Poly>,
    pub big_p: Vec<MonomialTable>,
}

#[derive(Clone, Debug)]
pub struct SolveQ {
    pub particular: Matrix,
    pub kernel: Vec<Vec<Scalar>>,
    pub unique: bool,
    /// `g(C) = 0` (happens exactly when `f = g`), making every matrix a
    /// solution.
    pub kernel_full: bool,
}

#[derive(Clone, Debug)]
pub struct HCheck {
    pub h: Poly,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    pub gcd_degree: usize,
    pub rank: usize,
    /// Exponent pairs `(i, j)` meaning `C^i D^j`, ordered as in the basis
    /// statement: all powers of `C` first, then the truncated `C^i D^j`
    /// blocks for each `j >= 1`.
    pub basis_monomials: Vec<(usize, usize)>,
    pub h: Poly,
    pub oracle_dimension: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Commutant {
    pub dimension: usize,
    pub basis: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct CoordChecks {
    pub trials: u32,
}

/// Report on common invariant subspaces of a family of companion matrices
/// over a field.
#[derive(Clone, Debug)]
pub struct InvariantSubspaceReport {
    pub gcd: Poly,
    pub exists_nontrivial: bool,
    pub subspaces: Vec<SubspaceWitness>,
}

#[derive(Clone, Debug)]
pub struct SubspaceWitness {
    pub factor: Poly,
    /// Coordinate vectors of `h, Xh, ..., X^(m-1) h` with `m = n - deg h`.
    pub basis: Vec<Vec<Scalar>>,
    pub verified: bool,
}

/// Common invariant subspaces of the companion matrices of `polys` over a
/// field: one exists strictly between 0 and the full space iff the gcd of
/// the family has degree strictly between 0 and `n`. For each requested
/// monic factor of the gcd (default: the gcd itself) the witness subspace
/// is constructed and its invariance verified under every matrix.
pub fn common_invariant_subspaces(
    polys: &[Monic],
    factors: Option<&[Poly]>,
) -> Result<InvariantSubspaceReport> {
    if polys.is_empty() {
        return Err(Error::domain("need at least one polynomial"));
    }
    let ring = polys[0].ring().clone();
    if !ring.is_field() {
        return Err(Error::domain(format!("invariant subspaces need a field, got {ring}")));
    }
    let n = polys[0].deg();
    for p in polys {
        if p.ring() != &ring {
            return Err(Error::RingMismatch(ring.to_string(), p.ring().to_string()));
        }
        if p.deg() != n {
            return Err(Error::domain("all polynomials must share one degree"));
        }
    }
    let mut d = polys[0].as_poly().clone();
    for p in &polys[1..] {
        d = poly_gcd(&d, p.as_poly())?;
    }
    let deg_d = d.degree().unwrap_or(0);
    let exists_nontrivial = deg_d > 0 && deg_d < n;
    let mut chosen: Vec<Poly> = Vec::new();
    match factors {
        Some(fs) => {
            for h in fs {
                let deg_h = h.degree().unwrap_or(0);
                if deg_h == 0 || deg_h >= n {
                    return Err(Error::domain(format!(
                        "factor {h} must have degree strictly between 0 and {n}"
                    )));
                }
                if !h.leading().unwrap().is_one() {
                    return Err(Error::domain(format!("factor {h} must be monic")));
                }
                if d.div_rem(h)?.1.is_zero() {
                    chosen.push(h.clone());
                } else {
                    return Err(Error::domain(format!("{h} does not divide the gcd {d}")));
                }
            }
        }
        None => {
            if exists_nontrivial {
                chosen.push(d.clone());
            }
        }
    }
    let companions = polys.iter().map(companion).collect::<Result<Vec<_>>>()?;
    let mut subspaces = Vec::new();
    for h in chosen {
        let m = n - h.degree().unwrap();
        let mut basis = Vec::with_capacity(m);
        let mut xk_h = h.clone();
        for _ in 0..m {
            basis.push(coords(&xk_h, n)?);
            xk_h = xk_h.mul(&Poly::monomial(Scalar::one(&ring), 1))?;
        }
        // invariance: the image of every basis vector stays in the span
        let span = Matrix::from_fn(&ring, m, n, |i, j| basis[i][j].clone());
        for cm in &companions {
            for v in &basis {
                let image = cm.mul_vec(v)?;
                let mut rows: Vec<Vec<Scalar>> = (0..m).map(|i| span.row(i).to_vec()).collect();
                rows.push(image.clone());
                let stacked = Matrix::from_fn(&ring, m + 1, n, |i, j| rows[i][j].clone());
                if stacked.rank_over_field()? != m {
                    return Err(Error::invariant(format!(
                        "subspace for factor {h} is not invariant under the companion of one input"
                    )));
                }
            }
        }
        subspaces.push(SubspaceWitness { factor: h, basis, verified: true });
    }
    Ok(InvariantSubspaceReport { gcd: d, exists_nontrivial, subspaces })
}
