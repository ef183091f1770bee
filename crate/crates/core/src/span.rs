//! Brute-force span-closure oracle and generation verdicts.
//!
//! The oracle computes the unital subalgebra generated by a set of matrices
//! by repeated multiplication and elimination, independently of any formula
//! it is later checked against: a dimension over fields, a Hermite-form
//! lattice over `Z`. Generation of the full matrix algebra is decided by
//! the resultant unit test for a pair and by gcd checks at every relevant
//! maximal ideal for larger families.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::matrix::{hermite_row_basis, HermiteBasis, Matrix};
use crate::poly::{poly_gcd, resultant, Monic, Poly};
use crate::ring::{Ring, Scalar};

/// Result of the closure oracle.
#[derive(Clone, Debug)]
pub struct SpanClosure {
    /// Dimension over a field, lattice rank over `Z`.
    pub dimension: usize,
    /// The closed lattice over `Z`.
    pub lattice_basis: Option<HermiteBasis>,
    /// For exactly two generators `A`, `B`: whether the span of the
    /// ordered products `A^i B^j` (`0 <= i, j < n`) is already closed
    /// under multiplication. Companion pairs always close; generic pairs
    /// need not.
    pub ordered_span_closed: Option<bool>,
}

/// Row-echelon accumulator over a field; insert returns true when the
/// vector enlarged the span.
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn new() -> Echelon {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let factor = v[*pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.sub(&factor.mul(r));
            }
        }
    }

    fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = v[pc].inverse().expect("nonzero field element");
        for x in &mut v {
            *x = x.mul(&inv);
        }
        let at = self.rows.partition_point(|(c, _)| *c < pc);
        self.rows.insert(at, (pc, v));
        true
    }

    fn contains(&self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|s| s.is_zero())
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

fn validate_generators(generators: &[Matrix]) -> Result<(Ring, usize)> {
    let Some(first) = generators.first() else {
        return Err(Error::domain("need at least one generator"));
    };
    let ring = first.ring().clone();
    let n = first.rows();
    for m in generators {
        if m.ring() != &ring {
            return Err(Error::RingMismatch(ring.to_string(), m.ring().to_string()));
        }
        if !m.is_square() || m.rows() != n {
            return Err(Error::domain("generators must be square matrices of one size"));
        }
    }
    Ok((ring, n))
}

/// Dimension (or lattice) of the unital algebra generated by `generators`,
/// by seeding with the identity and multiplying until nothing new appears.
pub fn span_closure_oracle(generators: &[Matrix]) -> Result<SpanClosure> {
    let (ring, n) = validate_generators(generators)?;
    if ring.is_field() {
        let mut ech = Echelon::new();
        let mut queue: VecDeque<Matrix> = VecDeque::new();
        let identity = Matrix::identity(&ring, n);
        ech.insert(identity.vectorize_column_major());
        queue.push_back(identity);
        while let Some(m) = queue.pop_front() {
            for g in generators {
                for prod in [g.mul(&m)?, m.mul(g)?] {
                    if ech.insert(prod.vectorize_column_major()) {
                        queue.push_back(prod);
                    }
                }
            }
        }
        let closed = ordered_span_closed(generators, |rows| {
            let mut span = Echelon::new();
            for r in rows {
                span.insert(r.to_vec());
            }
            Ok(Box::new(move |v: &[Scalar]| Ok(span.contains(v))) as MembershipFn)
        })?;
        Ok(SpanClosure { dimension: ech.len(), lattice_basis: None, ordered_span_closed: closed })
    } else if ring == Ring::Integers {
        let identity = Matrix::identity(&ring, n);
        let mut h = hermite_row_basis(&ring, &[identity.vectorize_column_major()])?;
        loop {
            let mut rows: Vec<Vec<Scalar>> =
                (0..h.basis.rows()).map(|i| h.basis.row(i).to_vec()).collect();
            for i in 0..h.basis.rows() {
                let m = Matrix::from_vectorized_column_major(&ring, n, n, h.basis.row(i))?;
                for g in generators {
                    rows.push(g.mul(&m)?.vectorize_column_major());
                    rows.push(m.mul(g)?.vectorize_column_major());
                }
            }
            let next = hermite_row_basis(&ring, &rows)?;
            if next.basis == h.basis {
                break;
            }
            h = next;
        }
        let closed = ordered_span_closed(generators, |rows| {
            let span = hermite_row_basis(&ring, &rows.to_vec())?;
            Ok(Box::new(move |v: &[Scalar]| span.contains(v)) as MembershipFn)
        })?;
        Ok(SpanClosure {
            dimension: h.rank,
            lattice_basis: Some(h),
            ordered_span_closed: closed,
        })
    } else {
        Err(Error::domain(format!("span closure oracle works over fields and Z, got {ring}")))
    }
}

type MembershipFn = Box<dyn Fn(&[Scalar]) -> Result<bool>>;

/// For a two-element generator list `[A, B]`: is the span of the ordered
/// products `A^i B^j` closed under left and right multiplication by both
/// generators?
fn ordered_span_closed(
    generators: &[Matrix],
    make_membership: impl FnOnce(&[Vec<Scalar>]) -> Result<MembershipFn>,
) -> Result<Option<bool>> {
    let [a, b] = generators else {
        return Ok(None);
    };
    let n = a.rows();
    let mut products = Vec::with_capacity(n * n);
    let mut ai = Matrix::identity(a.ring(), n);
    for _ in 0..n {
        let mut aibj = ai.clone();
        for _ in 0..n {
            products.push(aibj.clone());
            aibj = aibj.mul(b)?;
        }
        ai = ai.mul(a)?;
    }
    let rows: Vec<Vec<Scalar>> = products.iter().map(|m| m.vectorize_column_major()).collect();
    let contains = make_membership(&rows)?;
    for m in &products {
        for g in [a, b] {
            for prod in [g.mul(m)?, m.mul(g)?] {
                if !contains(&prod.vectorize_column_major())? {
                    return Ok(Some(false));
                }
            }
        }
    }
    Ok(Some(true))
}

/// Verdict on whether companion matrices of a family of monic polynomials
/// generate the full matrix algebra, with an explanation.
#[derive(Clone, Debug)]
pub struct GenerationVerdict {
    pub generates: bool,
    pub witness: GenerationWitness,
}

#[derive(Clone, Debug)]
pub enum GenerationWitness {
    /// Over a field: the gcd of all inputs (1 exactly when they generate).
    FieldGcd(Poly),
    /// Pair over `Z` or `Z[i]` whose resultant is a unit.
    UnitResultant(Scalar),
    /// Pair over `Z[i]` with a non-unit resultant (no prime split
    /// attempted).
    NonUnitResultant(Scalar),
    /// Candidate maximal ideals checked, and those where the reductions
    /// share a factor.
    ObstructingPrimes {
        checked: Vec<BigUint>,
        obstructions: Vec<PrimeObstruction>,
    },
    /// Pair over `Z` with resultant 0: a common factor obstructs at every
    /// prime.
    CommonFactor(Poly),
    /// All pairwise resultants vanish: the constant generator of the
    /// lattice spanned by shifts of the inputs (1 exactly when they
    /// generate), with the shift bound at which it stabilized.
    ConstantGenerator { generator: BigUint, bound: usize },
}

#[derive(Clone, Debug)]
pub struct PrimeObstruction {
    pub prime: BigUint,
    /// The common factor of the reductions mod the prime.
    pub common_factor: Poly,
}

fn gcd_of_family(polys: &[Monic], ring: &Ring) -> Result<Poly> {
    let mut d = polys[0].as_poly().reduce_hom(ring)?;
    for p in &polys[1..] {
        d = poly_gcd(&d, &p.as_poly().reduce_hom(ring)?)?;
    }
    Ok(d)
}

/// Obstructions among the given primes: reduce every input mod `p` and take
/// the gcd; degree >= 1 blocks generation at that maximal ideal.
fn obstructions_at(polys: &[Monic], primes: &[BigUint]) -> Result<Vec<PrimeObstruction>> {
    let mut out = Vec::new();
    for p in primes {
        let gfp = Ring::IntegersMod(p.clone());
        let lifted: Vec<Poly> = polys
            .iter()
            .map(|f| f.lift_to_int()?.reduce_hom(&gfp))
            .collect::<Result<_>>()?;
        let mut d = lifted[0].clone();
        for q in &lifted[1..] {
            d = poly_gcd(&d, q)?;
        }
        if d.degree().unwrap_or(0) >= 1 {
            out.push(PrimeObstruction { prime: p.clone(), common_factor: d });
        }
    }
    Ok(out)
}

pub fn generates_full(polys: &[Monic]) -> Result<GenerationVerdict> {
    if polys.len() < 2 {
        return Err(Error::domain("generation needs at least two polynomials"));
    }
    let ring = polys[0].ring().clone();
    let n = polys[0].deg();
    for p in polys {
        if p.ring() != &ring {
            return Err(Error::RingMismatch(ring.to_string(), p.ring().to_string()));
        }
        if p.deg() != n {
            return Err(Error::domain("all polynomials must share one degree"));
        }
    }
    if n < 2 {
        return Err(Error::domain("generation is about degree >= 2 companion matrices"));
    }
    if ring.is_field() {
        let d = gcd_of_family(polys, &ring)?;
        return Ok(GenerationVerdict { generates: d.is_one(), witness: GenerationWitness::FieldGcd(d) });
    }
    match &ring {
        Ring::IntegersMod(m) => {
            let primes: Vec<BigUint> = factorize(m).into_keys().collect();
            let obstructions = obstructions_at(polys, &primes)?;
            Ok(GenerationVerdict {
                generates: obstructions.is_empty(),
                witness: GenerationWitness::ObstructingPrimes { checked: primes, obstructions },
            })
        }
        Ring::GaussianIntegers => {
            if polys.len() != 2 {
                return Err(Error::domain(
                    "generation over Z[i] is supported for pairs only",
                ));
            }
            let r = resultant(&polys[0], &polys[1])?;
            if r.is_unit() {
                Ok(GenerationVerdict { generates: true, witness: GenerationWitness::UnitResultant(r) })
            } else {
                Ok(GenerationVerdict {
                    generates: false,
                    witness: GenerationWitness::NonUnitResultant(r),
                })
            }
        }
        Ring::Integers => generates_over_z(polys, n),
        Ring::Rationals => unreachable!("fields handled above"),
    }
}

fn generates_over_z(polys: &[Monic], n: usize) -> Result<GenerationVerdict> {
    if polys.len() == 2 {
        let r = resultant(&polys[0], &polys[1])?;
        if r.is_unit() {
            return Ok(GenerationVerdict {
                generates: true,
                witness: GenerationWitness::UnitResultant(r),
            });
        }
        if r.is_zero() {
            let d = poly_gcd(polys[0].as_poly(), polys[1].as_poly())?;
            return Ok(GenerationVerdict {
                generates: false,
                witness: GenerationWitness::CommonFactor(d),
            });
        }
        let primes: Vec<BigUint> = factorize(&r.norm()?).into_keys().collect();
        let obstructions = obstructions_at(polys, &primes)?;
        // a prime divides the resultant of two monic polynomials exactly
        // when their reductions share a factor, so every checked prime
        // must obstruct
        if obstructions.len() != primes.len() {
            return Err(Error::invariant(format!(
                "non-unit resultant {r} without an obstructing prime among {primes:?}"
            )));
        }
        return Ok(GenerationVerdict {
            generates: false,
            witness: GenerationWitness::ObstructingPrimes { checked: primes, obstructions },
        });
    }
    // three or more inputs: a prime obstructing generation must divide
    // every pairwise resultant, hence their gcd
    let mut res_gcd = Scalar::zero(&Ring::Integers);
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let r = resultant(&polys[i], &polys[j])?;
            res_gcd = res_gcd.euclidean_gcd(&r)?;
        }
    }
    if !res_gcd.is_zero() {
        let primes: Vec<BigUint> = if res_gcd.is_unit() {
            Vec::new()
        } else {
            factorize(&res_gcd.norm()?).into_keys().collect()
        };
        let obstructions = obstructions_at(polys, &primes)?;
        return Ok(GenerationVerdict {
            generates: obstructions.is_empty(),
            witness: GenerationWitness::ObstructingPrimes { checked: primes, obstructions },
        });
    }
    // every pairwise resultant vanished: fall back to the constant
    // generator of the lattice spanned by X^k f_i, doubling the shift
    // bound until it stabilizes across rounds
    let mut bound = 2 * n;
    let mut prev: Option<BigUint> = None;
    loop {
        let c = constant_generator(polys, n, bound)?;
        if prev.as_ref() == Some(&c) {
            return Ok(GenerationVerdict {
                generates: c.is_one(),
                witness: GenerationWitness::ConstantGenerator { generator: c, bound },
            });
        }
        prev = Some(c);
        bound *= 2;
        if bound > 4096 {
            return Err(Error::invariant(
                "constant generator failed to stabilize at shift bound 4096",
            ));
        }
    }
}

/// Generator of the set of constants expressible as integer-polynomial
/// combinations `sum u_i f_i` with `deg u_i <= bound`; 0 when no nonzero
/// constant is reachable. Columns are ordered by descending degree so the
/// constant coordinate is the last one.
fn constant_generator(polys: &[Monic], n: usize, bound: usize) -> Result<BigUint> {
    let ring = Ring::Integers;
    let width = n + bound + 1;
    let mut rows = Vec::with_capacity(polys.len() * (bound + 1));
    for f in polys {
        for k in 0..=bound {
            let mut row = vec![Scalar::zero(&ring); width];
            for t in 0..=n {
                // coefficient of X^(t+k) sits at descending-degree index
                row[width - 1 - (t + k)] = f.coeff(t);
            }
            rows.push(row);
        }
    }
    let h = hermite_row_basis(&ring, &rows)?;
    for i in 0..h.basis.rows() {
        let row = h.basis.row(i);
        let lead = row.iter().position(|s| !s.is_zero()).expect("basis rows are nonzero");
        if lead == width - 1 {
            return row[lead].norm();
        }
    }
    Ok(BigUint::from(0u32))
}
