//! Exact scalar arithmetic over the supported coefficient rings.
//!
//! Five concrete rings are supported: the integers `Z`, the rationals `Q`,
//! the residue rings `Z/m` with `m >= 2` (a field exactly when `m` is
//! prime), and the Gaussian integers `Z[i]`. Elements are tagged with their
//! ring and kept in canonical form on construction: fractions in lowest
//! terms with positive denominator, residues in `[0, m)`. Mixing elements
//! of different rings is a hard error, never a silent coercion.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Descriptor of one of the supported exact coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    /// `Z/m` with `m >= 2`; a finite field when `m` is prime.
    IntegersMod(BigUint),
    GaussianIntegers,
}

impl Ring {
    /// Builds `Z/m`, rejecting moduli below 2.
    pub fn integers_mod(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(Error::domain(format!("modulus must be >= 2, got {m}")));
        }
        Ok(Ring::IntegersMod(BigUint::from(m)))
    }

    pub fn modulus(&self) -> Option<&BigUint> {
        match self {
            Ring::IntegersMod(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::IntegersMod(m) => crate::factor::is_prime(m),
            _ => false,
        }
    }

    pub fn is_domain(&self) -> bool {
        match self {
            Ring::Integers | Ring::Rationals | Ring::GaussianIntegers => true,
            Ring::IntegersMod(m) => crate::factor::is_prime(m),
        }
    }

    /// Rings with a Euclidean division usable by HNF/SNF pivoting.
    pub fn is_euclidean_lattice_ring(&self) -> bool {
        matches!(self, Ring::Integers | Ring::GaussianIntegers)
    }

    /// Parses a ring spec: `z | q | zmod:<m> | gf:<p> | zi`.
    pub fn parse(spec: &str) -> Result<Ring> {
        let s = spec.trim().to_ascii_lowercase();
        match s.as_str() {
            "z" => Ok(Ring::Integers),
            "q" => Ok(Ring::Rationals),
            "zi" => Ok(Ring::GaussianIntegers),
            _ => {
                if let Some(m) = s.strip_prefix("zmod:") {
                    let m: u64 = m
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad modulus in ring spec {spec:?}")))?;
                    Ring::integers_mod(m)
                } else if let Some(p) = s.strip_prefix("gf:") {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad prime in ring spec {spec:?}")))?;
                    let ring = Ring::integers_mod(p)?;
                    if !ring.is_field() {
                        return Err(Error::domain(format!("gf:{p} requires a prime, {p} is composite")));
                    }
                    Ok(ring)
                } else {
                    Err(Error::Parse(format!(
                        "unknown ring spec {spec:?} (expected z | q | zmod:<m> | gf:<p> | zi)"
                    )))
                }
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::IntegersMod(m) => write!(f, "Z/{m}"),
            Ring::GaussianIntegers => write!(f, "Z[i]"),
        }
    }
}

/// An exact element of one of the supported rings, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    /// Residue in `[0, m)` together with its modulus `m`.
    Mod(BigUint, BigUint),
    /// `a + b i`.
    Gauss(BigInt, BigInt),
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar arithmetic across rings: {} vs {}", a.ring(), b.ring());
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integers,
            Scalar::Rat(_) => Ring::Rationals,
            Scalar::Mod(_, m) => Ring::IntegersMod(m.clone()),
            Scalar::Gauss(_, _) => Ring::GaussianIntegers,
        }
    }

    pub fn zero(ring: &Ring) -> Scalar {
        Scalar::from_bigint(ring, BigInt::zero())
    }

    pub fn one(ring: &Ring) -> Scalar {
        Scalar::from_bigint(ring, BigInt::one())
    }

    /// The canonical image of an integer in `ring`.
    pub fn from_bigint(ring: &Ring, v: BigInt) -> Scalar {
        match ring {
            Ring::Integers => Scalar::Int(v),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(v)),
            Ring::IntegersMod(m) => {
                let mi = BigInt::from(m.clone());
                let r = v.mod_floor(&mi);
                Scalar::Mod(r.to_biguint().expect("mod_floor is nonnegative"), m.clone())
            }
            Ring::GaussianIntegers => Scalar::Gauss(v, BigInt::zero()),
        }
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Scalar {
        Scalar::from_bigint(ring, BigInt::from(v))
    }

    pub fn rational(num: BigInt, den: BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::domain("rational with zero denominator"));
        }
        Ok(Scalar::Rat(BigRational::new(num, den)))
    }

    pub fn gaussian(re: BigInt, im: BigInt) -> Scalar {
        Scalar::Gauss(re, im)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod(v, _) => v.is_zero(),
            Scalar::Gauss(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod(v, _) => v.is_one(),
            Scalar::Gauss(a, b) => a.is_one() && b.is_zero(),
        }
    }

    fn same_ring(&self, rhs: &Scalar) -> bool {
        match (self, rhs) {
            (Scalar::Int(_), Scalar::Int(_)) => true,
            (Scalar::Rat(_), Scalar::Rat(_)) => true,
            (Scalar::Mod(_, m), Scalar::Mod(_, k)) => m == k,
            (Scalar::Gauss(_, _), Scalar::Gauss(_, _)) => true,
            _ => false,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        if !self.same_ring(rhs) {
            mismatch(self, rhs);
        }
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, m), Scalar::Mod(b, _)) => Scalar::Mod((a + b) % m, m.clone()),
            (Scalar::Gauss(a, b), Scalar::Gauss(c, d)) => Scalar::Gauss(a + c, b + d),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, m) => {
                if a.is_zero() {
                    self.clone()
                } else {
                    Scalar::Mod(m - a, m.clone())
                }
            }
            Scalar::Gauss(a, b) => Scalar::Gauss(-a, -b),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        if !self.same_ring(rhs) {
            mismatch(self, rhs);
        }
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, m), Scalar::Mod(b, _)) => Scalar::Mod((a * b) % m, m.clone()),
            (Scalar::Gauss(a, b), Scalar::Gauss(c, d)) => {
                Scalar::Gauss(a * c - b * d, a * d + b * c)
            }
            _ => unreachable!(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = Scalar::one(&self.ring());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True iff the element is invertible in its ring.
    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// The multiplicative inverse, when one exists.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Int(a) => {
                if a.is_one() || (-a).is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Scalar::Rat(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Mod(a, m) => {
                let ai = BigInt::from(a.clone());
                let mi = BigInt::from(m.clone());
                let e = ai.extended_gcd(&mi);
                if e.gcd.is_one() {
                    let inv = e.x.mod_floor(&mi);
                    Some(Scalar::Mod(inv.to_biguint().unwrap(), m.clone()))
                } else {
                    None
                }
            }
            Scalar::Gauss(a, b) => {
                // units of Z[i] are 1, -1, i, -i, each its own conjugate-inverse
                let n: BigInt = a * a + b * b;
                if n.is_one() {
                    Some(Scalar::Gauss(a.clone(), -b))
                } else {
                    None
                }
            }
        }
    }

    /// Multiplicative norm as used for lattice indices: `|a|` over `Z`,
    /// `a * conj(a)` over `Z[i]`. Rejects zero and other rings.
    pub fn norm(&self) -> Result<BigUint> {
        if self.is_zero() {
            return Err(Error::domain("norm of zero is not an index"));
        }
        match self {
            Scalar::Int(a) => Ok(a.magnitude().clone()),
            Scalar::Gauss(a, b) => {
                let n: BigInt = a * a + b * b;
                Ok(n.to_biguint().unwrap())
            }
            _ => Err(Error::domain(format!("norm is defined over Z and Z[i], not {}", self.ring()))),
        }
    }

    /// Euclidean division with small remainder: `self = q * d + r` with
    /// `N(r) < N(d)`. Over `Z` and `Z[i]` the quotient is rounded to the
    /// nearest lattice point (deterministic tie-break); over fields `r = 0`.
    pub fn euclid_div(&self, d: &Scalar) -> Result<(Scalar, Scalar)> {
        if !self.same_ring(d) {
            return Err(Error::RingMismatch(self.ring().to_string(), d.ring().to_string()));
        }
        if d.is_zero() {
            return Err(Error::domain("euclidean division by zero"));
        }
        match (self, d) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                // floor division leaves a remainder with the divisor's
                // sign; shift it to the symmetric range |r| <= |b|/2
                let q0 = a.div_floor(b);
                let r0 = a - &q0 * b;
                if r0.abs() * 2 > b.abs() {
                    let q = &q0 + BigInt::one();
                    let r = a - &q * b;
                    Ok((Scalar::Int(q), Scalar::Int(r)))
                } else {
                    Ok((Scalar::Int(q0), Scalar::Int(r0)))
                }
            }
            (Scalar::Gauss(_, _), Scalar::Gauss(c, dd)) => {
                // q = round(a * conj(d) / N(d)) componentwise
                let conj = Scalar::Gauss(c.clone(), -dd);
                let num = self.mul(&conj);
                let nd: BigInt = c * c + dd * dd;
                let (nr, ni) = match num {
                    Scalar::Gauss(x, y) => (x, y),
                    _ => unreachable!(),
                };
                let q = Scalar::Gauss(round_nearest(&nr, &nd), round_nearest(&ni, &nd));
                let r = self.sub(&q.mul(d));
                Ok((q, r))
            }
            _ if self.ring().is_field() => {
                let q = self.div_exact(d)?;
                Ok((q, Scalar::zero(&self.ring())))
            }
            _ => Err(Error::domain(format!("no euclidean division over {}", self.ring()))),
        }
    }

    /// Exact division; errors when the quotient does not exist in the ring.
    pub fn div_exact(&self, d: &Scalar) -> Result<Scalar> {
        if !self.same_ring(d) {
            return Err(Error::RingMismatch(self.ring().to_string(), d.ring().to_string()));
        }
        if d.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        match (self, d) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(Error::domain(format!("inexact division {a} / {b} in Z")))
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            (Scalar::Mod(_, _), Scalar::Mod(_, _)) => match d.inverse() {
                Some(inv) => Ok(self.mul(&inv)),
                None => Err(Error::domain(format!("{d} is not invertible in {}", self.ring()))),
            },
            (Scalar::Gauss(_, _), Scalar::Gauss(_, _)) => {
                let (q, r) = self.euclid_div(d)?;
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(Error::domain(format!("inexact division {self} / {d} in Z[i]")))
                }
            }
            _ => unreachable!(),
        }
    }

    /// The canonical associate together with the unit carrying `self` onto
    /// it: `Z` nonnegative, `Z[i]` in the first quadrant (`re > 0, im >= 0`
    /// or zero), fields normalized to 1.
    pub fn canonical_associate(&self) -> (Scalar, Scalar) {
        let one = Scalar::one(&self.ring());
        if self.is_zero() {
            return (self.clone(), one);
        }
        match self {
            Scalar::Int(a) => {
                if a.is_negative() {
                    (Scalar::Int(-a), Scalar::Int(-BigInt::one()))
                } else {
                    (self.clone(), one)
                }
            }
            Scalar::Gauss(_, _) => {
                let i = Scalar::Gauss(BigInt::zero(), BigInt::one());
                let mut cur = self.clone();
                let mut unit = one;
                for _ in 0..4 {
                    if let Scalar::Gauss(a, b) = &cur {
                        if a.is_positive() && !b.is_negative() {
                            return (cur.clone(), unit);
                        }
                    }
                    cur = cur.mul(&i);
                    unit = unit.mul(&i);
                }
                unreachable!("some rotation of a nonzero Gaussian integer lies in the first quadrant")
            }
            _ => {
                let inv = self.inverse().expect("nonzero field element");
                (Scalar::one(&self.ring()), inv)
            }
        }
    }

    /// Greatest common divisor over `Z`, `Z[i]`, or a field, canonicalized.
    pub fn euclidean_gcd(&self, rhs: &Scalar) -> Result<Scalar> {
        if !self.same_ring(rhs) {
            return Err(Error::RingMismatch(self.ring().to_string(), rhs.ring().to_string()));
        }
        let ring = self.ring();
        if ring.is_field() {
            return Ok(if self.is_zero() && rhs.is_zero() {
                Scalar::zero(&ring)
            } else {
                Scalar::one(&ring)
            });
        }
        if !ring.is_euclidean_lattice_ring() {
            return Err(Error::domain(format!("gcd is not supported over {ring}")));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.euclid_div(&b)?;
            a = b;
            b = r;
        }
        Ok(a.canonical_associate().0)
    }

    /// Image under the canonical ring homomorphism into `target`, when one
    /// exists: `Z -> Z/m | Q | Z[i]`, and `Q -> Z/m` when the denominator is
    /// invertible mod `m`.
    pub fn reduce_hom(&self, target: &Ring) -> Result<Scalar> {
        if self.ring() == *target {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Int(a), _) => Ok(Scalar::from_bigint(target, a.clone())),
            (Scalar::Rat(a), Ring::IntegersMod(_)) => {
                let num = Scalar::from_bigint(target, a.numer().clone());
                let den = Scalar::from_bigint(target, a.denom().clone());
                match den.inverse() {
                    Some(inv) => Ok(num.mul(&inv)),
                    None => Err(Error::domain(format!(
                        "no homomorphism image: denominator {} is not invertible in {target}",
                        a.denom()
                    ))),
                }
            }
            _ => Err(Error::domain(format!(
                "no canonical homomorphism {} -> {target}",
                self.ring()
            ))),
        }
    }

    /// Small random element, used by the seeded randomized verifiers:
    /// integers in `[-9, 9]`, rationals with the same numerators and
    /// denominators up to 3, uniform residues, Gaussian integers in a
    /// `[-3, 3]` box.
    pub fn random_small(ring: &Ring, rng: &mut impl rand::Rng) -> Scalar {
        match ring {
            Ring::Integers => Scalar::from_i64(ring, rng.gen_range(-9..=9)),
            Ring::Rationals => {
                let num = BigInt::from(rng.gen_range(-9i64..=9));
                let den = BigInt::from(rng.gen_range(1i64..=3));
                Scalar::Rat(BigRational::new(num, den))
            }
            Ring::IntegersMod(m) => {
                let cap = u64::try_from(m).unwrap_or(u64::MAX);
                Scalar::from_bigint(ring, BigInt::from(rng.gen_range(0..cap)))
            }
            Ring::GaussianIntegers => Scalar::Gauss(
                BigInt::from(rng.gen_range(-3i64..=3)),
                BigInt::from(rng.gen_range(-3i64..=3)),
            ),
        }
    }

    /// The representative of a residue as an integer in `[0, m)`; identity
    /// on integers. Used to lift `Z/m` data back to `Z` (this is a section
    /// of the projection, not a ring map).
    pub fn lift_to_int(&self) -> Result<Scalar> {
        match self {
            Scalar::Int(_) => Ok(self.clone()),
            Scalar::Mod(v, _) => Ok(Scalar::Int(BigInt::from(v.clone()))),
            _ => Err(Error::domain(format!("no integer lift from {}", self.ring()))),
        }
    }
}

/// Rounds `a / b` to the nearest integer, halves away from the floor
/// (deterministic, independent of signs).
fn round_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rat(a) => write!(f, "{a}"),
            Scalar::Mod(a, _) => write!(f, "{a}"),
            Scalar::Gauss(a, b) => {
                if b.is_zero() {
                    write!(f, "{a}")
                } else if a.is_zero() {
                    match b {
                        b if b.is_one() => write!(f, "i"),
                        b if (-b).is_one() => write!(f, "-i"),
                        _ => write!(f, "{b}i"),
                    }
                } else if b.is_positive() {
                    if b.is_one() {
                        write!(f, "{a}+i")
                    } else {
                        write!(f, "{a}+{b}i")
                    }
                } else if (-b).is_one() {
                    write!(f, "{a}-i")
                } else {
                    write!(f, "{a}-{}i", -b)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zi(a: i64, b: i64) -> Scalar {
        Scalar::Gauss(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn units_per_ring() {
        assert!(Scalar::from_i64(&Ring::Integers, -1).is_unit());
        assert!(!Scalar::from_i64(&Ring::Integers, 2).is_unit());
        let z6 = Ring::integers_mod(6).unwrap();
        assert!(!Scalar::from_i64(&z6, 4).is_unit()); // gcd(4,6)=2
        assert!(Scalar::from_i64(&z6, 5).is_unit());
        assert!(zi(0, 1).is_unit()); // i * (-i) = 1
        assert!(!zi(1, 1).is_unit());
        assert!(Scalar::from_i64(&Ring::Rationals, -7).is_unit());
        assert!(!Scalar::zero(&Ring::Rationals).is_unit());
    }

    #[test]
    fn inverse_really_inverts() {
        let z7 = Ring::integers_mod(7).unwrap();
        for v in 1..7 {
            let a = Scalar::from_i64(&z7, v);
            let inv = a.inverse().unwrap();
            assert!(a.mul(&inv).is_one());
        }
        for u in [zi(1, 0), zi(-1, 0), zi(0, 1), zi(0, -1)] {
            assert!(u.mul(&u.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn norms() {
        assert_eq!(Scalar::from_i64(&Ring::Integers, -4).norm().unwrap(), BigUint::from(4u32));
        assert_eq!(zi(1, 1).norm().unwrap(), BigUint::from(2u32));
        assert_eq!(zi(3, 4).norm().unwrap(), BigUint::from(25u32));
        assert!(Scalar::zero(&Ring::Integers).norm().is_err());
        assert!(Scalar::from_i64(&Ring::Rationals, 2).norm().is_err());
    }

    #[test]
    fn integer_gcd() {
        let g = Scalar::from_i64(&Ring::Integers, 12)
            .euclidean_gcd(&Scalar::from_i64(&Ring::Integers, 18))
            .unwrap();
        assert_eq!(g, Scalar::from_i64(&Ring::Integers, 6));
        let g = Scalar::zero(&Ring::Integers)
            .euclidean_gcd(&Scalar::zero(&Ring::Integers))
            .unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn gaussian_gcd_of_five_and_one_plus_two_i() {
        // 5 = (1+2i)(1-2i), so gcd(5, 1+2i) is an associate of 1+2i.
        let g = zi(5, 0).euclidean_gcd(&zi(1, 2)).unwrap();
        // oracle: g divides both inputs, and 1+2i divides g
        assert!(zi(5, 0).div_exact(&g).is_ok());
        assert!(zi(1, 2).div_exact(&g).is_ok());
        assert!(g.div_exact(&zi(1, 2)).is_ok());
        // canonical associate lies in the first quadrant
        match &g {
            Scalar::Gauss(a, b) => assert!(a.is_positive() && !b.is_negative()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn gaussian_euclid_div_shrinks_norm() {
        let pairs = [
            (zi(7, 3), zi(2, -1)),
            (zi(-5, 8), zi(1, 1)),
            (zi(100, -37), zi(3, 4)),
        ];
        for (a, b) in pairs {
            let (q, r) = a.euclid_div(&b).unwrap();
            assert_eq!(a, q.mul(&b).add(&r));
            if !r.is_zero() {
                assert!(r.norm().unwrap() < b.norm().unwrap());
            }
        }
    }

    #[test]
    fn reduce_hom_cases() {
        let z5 = Ring::integers_mod(5).unwrap();
        assert_eq!(
            Scalar::from_i64(&Ring::Integers, 7).reduce_hom(&z5).unwrap(),
            Scalar::from_i64(&z5, 2)
        );
        assert_eq!(
            Scalar::from_i64(&Ring::Integers, 3).reduce_hom(&Ring::Rationals).unwrap(),
            Scalar::from_i64(&Ring::Rationals, 3)
        );
        // 1/2 has no image mod 4
        let z4 = Ring::integers_mod(4).unwrap();
        let half = Scalar::rational(BigInt::one(), BigInt::from(2)).unwrap();
        assert!(half.reduce_hom(&z4).is_err());
        // but it does mod 5
        assert_eq!(half.reduce_hom(&z5).unwrap(), Scalar::from_i64(&z5, 3));
    }

    #[test]
    fn canonical_forms() {
        // rationals in lowest terms with positive denominator
        let r = Scalar::rational(BigInt::from(4), BigInt::from(-6)).unwrap();
        assert_eq!(r, Scalar::rational(BigInt::from(-2), BigInt::from(3)).unwrap());
        // residues reduced into [0, m)
        let z5 = Ring::integers_mod(5).unwrap();
        assert_eq!(Scalar::from_i64(&z5, -3), Scalar::from_i64(&z5, 2));
    }

    #[test]
    fn display_round_trip_shapes() {
        assert_eq!(zi(3, 4).to_string(), "3+4i");
        assert_eq!(zi(3, -1).to_string(), "3-i");
        assert_eq!(zi(0, -2).to_string(), "-2i");
        assert_eq!(zi(0, 1).to_string(), "i");
        assert_eq!(
            Scalar::rational(BigInt::from(3), BigInt::from(2)).unwrap().to_string(),
            "3/2"
        );
    }

    fn arb_ring() -> impl Strategy<Value = Ring> {
        prop_oneof![
            Just(Ring::Integers),
            Just(Ring::Rationals),
            Just(Ring::integers_mod(6).unwrap()),
            Just(Ring::integers_mod(7).unwrap()),
            Just(Ring::GaussianIntegers),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms_hold(ring in arb_ring(), xs in proptest::array::uniform3(-50i64..50)) {
            let a = Scalar::from_i64(&ring, xs[0]);
            let b = Scalar::from_i64(&ring, xs[1]);
            let c = Scalar::from_i64(&ring, xs[2]);
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.sub(&a), Scalar::zero(&ring));
        }

        #[test]
        fn gaussian_axioms_with_imaginary_parts(xs in proptest::array::uniform6(-30i64..30)) {
            let a = Scalar::Gauss(BigInt::from(xs[0]), BigInt::from(xs[1]));
            let b = Scalar::Gauss(BigInt::from(xs[2]), BigInt::from(xs[3]));
            let c = Scalar::Gauss(BigInt::from(xs[4]), BigInt::from(xs[5]));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn norm_is_multiplicative(xs in proptest::array::uniform4(-40i64..40)) {
            let a = Scalar::Gauss(BigInt::from(xs[0]), BigInt::from(xs[1]));
            let b = Scalar::Gauss(BigInt::from(xs[2]), BigInt::from(xs[3]));
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul(&b).norm().unwrap(), a.norm().unwrap() * b.norm().unwrap());
            let x = Scalar::from_i64(&Ring::Integers, xs[0]);
            let y = Scalar::from_i64(&Ring::Integers, xs[2]);
            prop_assume!(!x.is_zero() && !y.is_zero());
            prop_assert_eq!(x.mul(&y).norm().unwrap(), x.norm().unwrap() * y.norm().unwrap());
        }

        #[test]
        fn reduce_hom_is_a_homomorphism(x in -200i64..200, y in -200i64..200, m in 2u64..30) {
            let target = Ring::integers_mod(m).unwrap();
            let a = Scalar::from_i64(&Ring::Integers, x);
            let b = Scalar::from_i64(&Ring::Integers, y);
            let ra = a.reduce_hom(&target).unwrap();
            let rb = b.reduce_hom(&target).unwrap();
            prop_assert_eq!(a.add(&b).reduce_hom(&target).unwrap(), ra.add(&rb));
            prop_assert_eq!(a.mul(&b).reduce_hom(&target).unwrap(), ra.mul(&rb));
        }

        #[test]
        fn unit_inverse_is_checked(x in -30i64..30, m in 2u64..40) {
            let ring = Ring::integers_mod(m).unwrap();
            let a = Scalar::from_i64(&ring, x);
            if let Some(inv) = a.inverse() {
                prop_assert!(a.mul(&inv).is_one());
            }
        }

        #[test]
        fn euclid_div_contract(a in -500i64..500, b in -500i64..500, xs in proptest::array::uniform4(-60i64..60)) {
            if b != 0 {
                let x = Scalar::from_i64(&Ring::Integers, a);
                let y = Scalar::from_i64(&Ring::Integers, b);
                let (quo, rem) = x.euclid_div(&y).unwrap();
                prop_assert_eq!(&x, &quo.mul(&y).add(&rem));
                if !rem.is_zero() {
                    // nearest rounding keeps the remainder at half the divisor
                    prop_assert!(rem.norm().unwrap() * 2u32 <= y.norm().unwrap());
                }
            }
            let u = Scalar::Gauss(BigInt::from(xs[0]), BigInt::from(xs[1]));
            let v = Scalar::Gauss(BigInt::from(xs[2]), BigInt::from(xs[3]));
            if !v.is_zero() {
                let (quo, rem) = u.euclid_div(&v).unwrap();
                prop_assert_eq!(&u, &quo.mul(&v).add(&rem));
                if !rem.is_zero() {
                    prop_assert!(rem.norm().unwrap() < v.norm().unwrap());
                }
            }
        }

        #[test]
        fn gcd_divides_both_and_canonicalizes(xs in proptest::array::uniform4(-50i64..50)) {
            let a = Scalar::Gauss(BigInt::from(xs[0]), BigInt::from(xs[1]));
            let b = Scalar::Gauss(BigInt::from(xs[2]), BigInt::from(xs[3]));
            let g = a.euclidean_gcd(&b).unwrap();
            if !g.is_zero() {
                prop_assert!(a.div_exact(&g).is_ok());
                prop_assert!(b.div_exact(&g).is_ok());
                match &g {
                    Scalar::Gauss(re, im) => prop_assert!(re.is_positive() && !im.is_negative()),
                    _ => unreachable!(),
                }
            }
        }
    }
}
