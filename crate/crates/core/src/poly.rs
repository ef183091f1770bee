//! Univariate exact polynomial arithmetic: monic polynomials, gcd,
//! resultants via the Sylvester determinant with a Euclidean cross-check,
//! and coefficient-wise reduction between rings.
//!
//! The resultant sign convention is fixed so that for monic `f`, `g` of
//! equal degree, `Res(f, g)` equals the product of `g` over the roots of
//! `f`; the linear case `Res(X - a, X - b) = a - b` pins it down.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Ring, Scalar};

/// Polynomial in one variable, coefficients ascending, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient vector and no
/// degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(ring: Ring, mut coeffs: Vec<Scalar>) -> Result<Poly> {
        for c in &coeffs {
            if c.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), c.ring().to_string()));
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(Poly { ring, coeffs })
    }

    pub fn from_i64(ring: &Ring, coeffs: &[i64]) -> Poly {
        let cs = coeffs.iter().map(|&v| Scalar::from_i64(ring, v)).collect();
        Poly::new(ring.clone(), cs).expect("uniform ring by construction")
    }

    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), coeffs: vec![] }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(Scalar::one(ring))
    }

    pub fn constant(c: Scalar) -> Poly {
        let ring = c.ring();
        Poly::new(ring, vec![c]).unwrap()
    }

    /// The monomial `c * X^k`.
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        let ring = c.ring();
        let mut coeffs = vec![Scalar::zero(&ring); k];
        coeffs.push(c);
        Poly::new(ring, coeffs).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Scalar::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    fn check_same_ring(&self, rhs: &Poly) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), rhs.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Poly) -> Result<Poly> {
        self.check_same_ring(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect();
        Poly::new(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Result<Poly> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, rhs: &Poly) -> Result<Poly> {
        self.check_same_ring(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let mut coeffs = vec![Scalar::zero(&self.ring); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.ring.clone(), coeffs)
    }

    pub fn mul_scalar(&self, s: &Scalar) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| c.mul(s)).collect();
        Poly::new(self.ring.clone(), coeffs).unwrap()
    }

    /// Division with remainder. The divisor's leading coefficient must be a
    /// unit (always true over a field or for a monic divisor).
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_ring(d)?;
        let Some(dd) = d.degree() else {
            return Err(Error::domain("polynomial division by zero"));
        };
        let lc_inv = d.leading().unwrap().inverse().ok_or_else(|| {
            Error::domain(format!(
                "division requires a unit leading coefficient, got {} over {}",
                d.leading().unwrap(),
                self.ring
            ))
        })?;
        let mut rem = self.clone();
        let mut quo = Poly::zero(&self.ring);
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap().mul(&lc_inv);
            let term = Poly::monomial(c, rd - dd);
            quo = quo.add(&term)?;
            rem = rem.sub(&term.mul(d)?)?;
        }
        Ok((quo, rem))
    }

    /// Exact quotient `self / d`; errors when `d` does not divide exactly.
    /// Works over any supported domain as long as every elimination step
    /// divides (which holds whenever `d` genuinely divides `self`).
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        self.check_same_ring(d)?;
        let Some(dd) = d.degree() else {
            return Err(Error::domain("polynomial division by zero"));
        };
        if self.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let mut rem = self.clone();
        let mut quo = Poly::zero(&self.ring);
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap().div_exact(d.leading().unwrap()).map_err(|_| {
                Error::domain(format!("{d} does not divide {self} exactly"))
            })?;
            let term = Poly::monomial(c, rd - dd);
            quo = quo.add(&term)?;
            rem = rem.sub(&term.mul(d)?)?;
        }
        if !rem.is_zero() {
            return Err(Error::domain(format!("{d} does not divide {self} exactly")));
        }
        Ok(quo)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix> {
        if *a.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), a.ring().to_string()));
        }
        if !a.is_square() {
            return Err(Error::domain("polynomial evaluation at a non-square matrix"));
        }
        let n = a.rows();
        let mut acc = Matrix::zeros(&self.ring, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?;
            for i in 0..n {
                let v = acc.at(i, i).add(c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Coefficient-wise image under the canonical homomorphism into
    /// `target`.
    pub fn reduce_hom(&self, target: &Ring) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce_hom(target))
            .collect::<Result<Vec<_>>>()?;
        Poly::new(target.clone(), coeffs)
    }

    /// Representative lift of a `Z/m` polynomial back to `Z` (coefficients
    /// in `[0, m)`); identity over `Z`.
    pub fn lift_to_int(&self) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.lift_to_int())
            .collect::<Result<Vec<_>>>()?;
        Poly::new(Ring::Integers, coeffs)
    }

    /// Scales a field polynomial to be monic; `Z` polynomials to primitive
    /// with positive leading coefficient.
    pub fn normalized(&self) -> Result<Poly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        match &self.ring {
            Ring::Integers => {
                let mut g = Scalar::zero(&self.ring);
                for c in &self.coeffs {
                    g = g.euclidean_gcd(c)?;
                }
                let mut out = Poly::new(
                    self.ring.clone(),
                    self.coeffs.iter().map(|c| c.div_exact(&g)).collect::<Result<Vec<_>>>()?,
                )?;
                if matches!(out.leading().unwrap(), Scalar::Int(v) if v.sign() == num_bigint::Sign::Minus)
                {
                    out = out.neg();
                }
                Ok(out)
            }
            _ if self.ring.is_field() => {
                let inv = self.leading().unwrap().inverse().expect("nonzero over a field");
                Ok(self.mul_scalar(&inv))
            }
            _ => Err(Error::domain(format!("no canonical scaling over {}", self.ring))),
        }
    }
}

impl Poly {
    /// Parses the polynomial text grammar shared with the CLI: terms `c`,
    /// `x^k`, `c*x^k`, `x` separated by `+`/`-`, case-insensitive variable,
    /// rational coefficients `p/q` only over `Q`, Gaussian coefficients
    /// `(a+bi)` only over `Z[i]`. A string starting with `{` is instead
    /// parsed as the JSON form `{"coeffs": [c0, ..., 1]}` in ascending
    /// degree.
    pub fn parse(ring: &Ring, input: &str) -> Result<Poly> {
        let normalized: String = input.trim().replace('\u{2212}', "-");
        if normalized.starts_with('{') {
            return parse_json_poly(ring, &normalized);
        }
        if normalized.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Scalar> = Vec::new();
        for term in split_terms(&normalized)? {
            let (c, k) = parse_term(ring, &term)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Scalar::zero(ring));
            }
            coeffs[k] = coeffs[k].add(&c);
        }
        Poly::new(ring.clone(), coeffs)
    }
}

/// Splits on top-level `+`/`-`, keeping each sign with its term.
fn split_terms(s: &str) -> Result<Vec<String>> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for (pos, ch) in s.char_indices() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced ')' in {s:?}")))?;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && pos > 0 => {
                if cur.trim().is_empty() {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                terms.push(cur.clone());
                cur.clear();
                if ch == '-' {
                    cur.push('-');
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in {s:?}")));
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    terms.push(cur);
    Ok(terms)
}

/// One term: optional sign, optional coefficient literal, optional `*`,
/// optional `x` with optional `^k`.
fn parse_term(ring: &Ring, term: &str) -> Result<(Scalar, usize)> {
    let mut s = term.trim();
    let mut negate = false;
    if let Some(rest) = s.strip_prefix('-') {
        negate = true;
        s = rest.trim_start();
    } else if let Some(rest) = s.strip_prefix('+') {
        s = rest.trim_start();
    }
    if s.is_empty() {
        return Err(Error::Parse(format!("empty term in {term:?}")));
    }
    // coefficient literal, if present
    let (mut coeff, mut rest) = if s.starts_with('(') {
        let close = s
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced '(' in term {term:?}")))?;
        let inner = &s[1..close];
        (parse_gaussian_literal(ring, inner)?, s[close + 1..].trim_start())
    } else if s.starts_with(|c: char| c.is_ascii_digit()) {
        let end = s
            .find(|c: char| !(c.is_ascii_digit() || c == '/'))
            .unwrap_or(s.len());
        (parse_numeric_literal(ring, &s[..end])?, s[end..].trim_start())
    } else {
        (Scalar::one(ring), s)
    };
    rest = rest.strip_prefix('*').map_or(rest, |r| r.trim_start());
    let exponent = if rest.is_empty() {
        0
    } else {
        let rest_lower = rest.to_ascii_lowercase();
        if !rest_lower.starts_with('x') && rest_lower.contains('i') && *ring == Ring::GaussianIntegers
        {
            return Err(Error::Parse(format!(
                "Gaussian coefficients must be parenthesized, like (1+2i); got {term:?}"
            )));
        }
        let after_x = rest_lower
            .strip_prefix('x')
            .ok_or_else(|| Error::Parse(format!("expected variable x in term {term:?}")))?;
        let after_x = after_x.trim_start();
        if after_x.is_empty() {
            1
        } else {
            let exp = after_x
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("expected ^ in term {term:?}")))?
                .trim();
            exp.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad exponent in term {term:?}")))?
        }
    };
    if negate {
        coeff = coeff.neg();
    }
    Ok((coeff, exponent))
}

fn parse_numeric_literal(ring: &Ring, lit: &str) -> Result<Scalar> {
    if let Some((num, den)) = lit.split_once('/') {
        if *ring != Ring::Rationals {
            return Err(Error::Parse(format!(
                "rational coefficient {lit:?} is only accepted over Q, not {ring}"
            )));
        }
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {lit:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {lit:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {lit:?}")));
        }
        return Ok(Scalar::Rat(BigRational::new(num, den)));
    }
    let v: BigInt = lit
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer literal {lit:?}")))?;
    Ok(Scalar::from_bigint(ring, v))
}

/// `a+bi` inside parentheses; accepts `a`, `bi`, `i`, `-i`, `a+bi`, `a-bi`.
fn parse_gaussian_literal(ring: &Ring, lit: &str) -> Result<Scalar> {
    if *ring != Ring::GaussianIntegers {
        return Err(Error::Parse(format!(
            "Gaussian coefficient ({lit}) is only accepted over Z[i], not {ring}"
        )));
    }
    let s: String = lit.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty Gaussian literal".into()));
    }
    let parse_int = |t: &str| -> Result<BigInt> {
        match t {
            "" | "+" => Ok(BigInt::one()),
            "-" => Ok(-BigInt::one()),
            _ => t.parse().map_err(|_| Error::Parse(format!("bad Gaussian literal ({lit})"))),
        }
    };
    match s.strip_suffix('i') {
        None => Ok(Scalar::Gauss(parse_int(&s)?, BigInt::zero())),
        Some(head) => {
            // split the imaginary part off at the last interior sign
            let split = head
                .char_indices()
                .filter(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
                .next_back();
            match split {
                None => Ok(Scalar::Gauss(BigInt::zero(), parse_int(head)?)),
                Some((idx, _)) => {
                    Ok(Scalar::Gauss(parse_int(&head[..idx])?, parse_int(&head[idx..])?))
                }
            }
        }
    }
}

fn parse_json_poly(ring: &Ring, input: &str) -> Result<Poly> {
    let v: serde_json::Value = serde_json::from_str(input)
        .map_err(|e| Error::Parse(format!("bad JSON polynomial: {e}")))?;
    let arr = v
        .get("coeffs")
        .and_then(|c| c.as_array())
        .ok_or_else(|| Error::Parse("JSON polynomial needs a \"coeffs\" array".into()))?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for entry in arr {
        let c = match entry {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("non-integer JSON coefficient {n}")))?;
                Scalar::from_i64(ring, i)
            }
            serde_json::Value::String(s) => {
                let t = s.trim();
                let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')'));
                match inner {
                    Some(g) => parse_gaussian_literal(ring, g)?,
                    None if t.contains('i') && *ring == Ring::GaussianIntegers => {
                        parse_gaussian_literal(ring, t)?
                    }
                    None => parse_numeric_literal(ring, t)?,
                }
            }
            other => {
                return Err(Error::Parse(format!("bad JSON coefficient {other}")));
            }
        };
        coeffs.push(c);
    }
    Poly::new(ring.clone(), coeffs)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c {
                Scalar::Int(v) if v.sign() == num_bigint::Sign::Minus => (true, c.neg()),
                Scalar::Rat(v) if *v < BigRational::from_integer(0.into()) => (true, c.neg()),
                Scalar::Gauss(a, b) if b.is_zero() && a.sign() == num_bigint::Sign::Minus => {
                    (true, c.neg())
                }
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            // Gaussian coefficients with an imaginary part stay
            // parenthesized so the output re-parses
            let parens = matches!(&mag, Scalar::Gauss(_, b) if !b.is_zero());
            if k == 0 {
                if parens {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else {
                if mag.is_one() {
                    // coefficient 1 is implicit
                } else if parens {
                    write!(f, "({mag})*")?;
                } else {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Monic polynomial of degree at least 1. The leading coefficient is the
/// ring's 1 by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monic(Poly);

impl Monic {
    pub fn new(p: Poly) -> Result<Monic> {
        match p.degree() {
            None | Some(0) => Err(Error::domain("monic polynomial must have degree >= 1")),
            Some(_) => {
                if !p.leading().unwrap().is_one() {
                    return Err(Error::domain(format!("leading coefficient of {p} is not 1")));
                }
                Ok(Monic(p))
            }
        }
    }

    pub fn from_i64(ring: &Ring, coeffs: &[i64]) -> Result<Monic> {
        Monic::new(Poly::from_i64(ring, coeffs))
    }

    /// Parses the shared polynomial grammar and checks monicity.
    pub fn parse(ring: &Ring, input: &str) -> Result<Monic> {
        Monic::new(Poly::parse(ring, input)?)
    }

    /// Random monic polynomial of degree `n >= 1` with small coefficients;
    /// used by the seeded randomized verifiers.
    pub fn random(ring: &Ring, n: usize, rng: &mut impl rand::Rng) -> Monic {
        assert!(n >= 1);
        let mut coeffs: Vec<Scalar> =
            (0..n).map(|_| Scalar::random_small(ring, rng)).collect();
        coeffs.push(Scalar::one(ring));
        Monic::new(Poly::new(ring.clone(), coeffs).unwrap()).unwrap()
    }

    pub fn deg(&self) -> usize {
        self.0.degree().expect("monic is nonzero")
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }
}

impl std::ops::Deref for Monic {
    type Target = Poly;

    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl fmt::Display for Monic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `s = g - f` for monic polynomials of the same degree; the leading terms
/// cancel, so `deg s <= n - 1`.
pub fn poly_sub_same_degree(g: &Monic, f: &Monic) -> Result<Poly> {
    if g.deg() != f.deg() {
        return Err(Error::domain(format!(
            "degree mismatch: deg g = {}, deg f = {}",
            g.deg(),
            f.deg()
        )));
    }
    g.as_poly().sub(f.as_poly())
}

/// The 2n x 2n Sylvester matrix of two monic polynomials of equal degree
/// `n`, with rows of `f` first, coefficients descending. For this layout
/// `det = Res(f, g) = prod g(alpha_i)` over the roots of `f`.
pub fn sylvester_matrix(f: &Monic, g: &Monic) -> Result<Matrix> {
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
    let ring = f.ring().clone();
    let size = 2 * n;
    let mut m = Matrix::zeros(&ring, size, size);
    for i in 0..n {
        for k in 0..=n {
            // descending coefficients of f shifted i places
            m.set(i, i + k, f.coeff(n - k));
            m.set(n + i, i + k, g.coeff(n - k));
        }
    }
    Ok(m)
}

/// Resultant of `f` and `g`, both monic of equal degree.
///
/// Computed as the fraction-free determinant of the Sylvester matrix; over
/// fields it is additionally cross-checked against the classical Euclidean
/// recursion, and a disagreement is an invariant violation. Over a
/// composite `Z/m` the computation lifts to `Z` and reduces back.
pub fn resultant(f: &Monic, g: &Monic) -> Result<Scalar> {
    let ring = f.ring().clone();
    if let Ring::IntegersMod(_) = &ring {
        if !ring.is_field() {
            let fz = Monic::new(f.lift_to_int()?)?;
            let gz = Monic::new(g.lift_to_int()?)?;
            return resultant(&fz, &gz)?.reduce_hom(&ring);
        }
    }
    let syl = sylvester_matrix(f, g)?;
    let det = syl.det_fraction_free()?;
    if ring.is_field() {
        let other = resultant_euclidean(f.as_poly(), g.as_poly())?;
        if det != other {
            return Err(Error::invariant(format!(
                "resultant routes disagree for f = {f}, g = {g}: sylvester {det}, euclidean {other}"
            )));
        }
    }
    Ok(det)
}

/// Classical resultant recursion over a field, any degrees. Convention
/// matches the Sylvester layout above: `res(f, g) = lc(f)^(deg g) prod
/// g(roots of f)`.
fn resultant_euclidean(f: &Poly, g: &Poly) -> Result<Scalar> {
    let ring = f.ring().clone();
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        // res(f, 0) = 0 except for constant f where the empty product is 1
        let other = if f.is_zero() { g } else { f };
        return Ok(match other.degree() {
            Some(0) | None => Scalar::one(&ring),
            Some(_) => Scalar::zero(&ring),
        });
    };
    if df == 0 {
        return Ok(f.coeff(0).pow(dg as u64));
    }
    if dg == 0 {
        return Ok(g.coeff(0).pow(df as u64));
    }
    let (_, r) = f.div_rem(g)?;
    let sign_flip = (df * dg) % 2 == 1;
    let dr = r.degree();
    let lc_g = g.leading().unwrap().clone();
    let tail = match dr {
        None => Scalar::zero(&ring), // g divides f, common factor
        Some(dr) => {
            let sub = resultant_euclidean(g, &r)?;
            lc_g.pow((df - dr) as u64).mul(&sub)
        }
    };
    Ok(if sign_flip { tail.neg() } else { tail })
}

/// Greatest common divisor: monic over `Q` and `GF(p)`, primitive with
/// positive leading coefficient over `Z` (via the gcd of the images over
/// `Q`). Composite `Z/m` has no gcd theory and is rejected.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch(f.ring().to_string(), g.ring().to_string()));
    }
    let ring = f.ring().clone();
    if f.is_zero() && g.is_zero() {
        return Err(Error::domain("gcd(0, 0) is undefined"));
    }
    match &ring {
        Ring::Rationals => gcd_over_field(f, g),
        Ring::IntegersMod(_) if ring.is_field() => gcd_over_field(f, g),
        Ring::IntegersMod(_) => Err(Error::domain("gcd undefined over non-domain Z/m")),
        Ring::Integers => {
            let fq = f.reduce_hom(&Ring::Rationals)?;
            let gq = g.reduce_hom(&Ring::Rationals)?;
            let d = gcd_over_field(&fq, &gq)?;
            // clear denominators, then take the primitive part
            let mut lcm = num_bigint::BigInt::from(1);
            for c in d.coeffs() {
                if let Scalar::Rat(r) = c {
                    lcm = num_integer::lcm(lcm, r.denom().clone());
                }
            }
            let scaled = d.mul_scalar(&Scalar::Rat(num_rational::BigRational::from_integer(lcm)));
            let ints = scaled
                .coeffs()
                .iter()
                .map(|c| match c {
                    Scalar::Rat(r) => Scalar::Int(r.to_integer()),
                    _ => unreachable!(),
                })
                .collect();
            Poly::new(Ring::Integers, ints)?.normalized()
        }
        _ => Err(Error::domain(format!("gcd not supported over {ring}"))),
    }
}

fn gcd_over_field(f: &Poly, g: &Poly) -> Result<Poly> {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    a.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::companion;
    use proptest::prelude::*;

    fn q() -> Ring {
        Ring::Rationals
    }

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn zero_poly_has_no_degree() {
        let p = Poly::from_i64(&z(), &[0, 0, 0]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(Poly::from_i64(&z(), &[5]).degree(), Some(0));
    }

    #[test]
    fn monic_constructor_enforces_invariants() {
        assert!(Monic::from_i64(&z(), &[1]).is_err()); // degree 0
        assert!(Monic::from_i64(&z(), &[0, 2]).is_err()); // leading 2
        let m = Monic::from_i64(&z(), &[-2, 0, 1]).unwrap(); // x^2 - 2
        assert_eq!(m.deg(), 2);
    }

    #[test]
    fn sub_of_equal_degree_monics() {
        // g = x^3 - 3, f = x^3 - 2: s = -1
        let g = Monic::from_i64(&z(), &[-3, 0, 0, 1]).unwrap();
        let f = Monic::from_i64(&z(), &[-2, 0, 0, 1]).unwrap();
        assert_eq!(poly_sub_same_degree(&g, &f).unwrap(), Poly::from_i64(&z(), &[-1]));
        assert!(poly_sub_same_degree(&g, &g).unwrap().is_zero());
        // g = x^2 + x, f = x^2: s = x
        let g = Monic::from_i64(&z(), &[0, 1, 1]).unwrap();
        let f = Monic::from_i64(&z(), &[0, 0, 1]).unwrap();
        assert_eq!(poly_sub_same_degree(&g, &f).unwrap(), Poly::from_i64(&z(), &[0, 1]));
        // degree mismatch is a domain error
        let f2 = Monic::from_i64(&z(), &[0, 0, 0, 1]).unwrap();
        assert!(poly_sub_same_degree(&g, &f2).is_err());
    }

    // independent oracle for small determinants
    fn det_cofactor(m: &Matrix) -> Scalar {
        let n = m.rows();
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
    fn sylvester_linear_case_fixes_the_sign() {
        // f = x - a, g = x - b with a = 5, b = 3: det must be a - b = 2
        let f = Monic::from_i64(&z(), &[-5, 1]).unwrap();
        let g = Monic::from_i64(&z(), &[-3, 1]).unwrap();
        let m = sylvester_matrix(&f, &g).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.det_fraction_free().unwrap(), Scalar::from_i64(&z(), 2));
        assert_eq!(resultant(&f, &g).unwrap(), Scalar::from_i64(&z(), 2));
    }

    #[test]
    fn sylvester_x2_vs_x2_minus_2() {
        let f = Monic::from_i64(&z(), &[0, 0, 1]).unwrap();
        let g = Monic::from_i64(&z(), &[-2, 0, 1]).unwrap();
        let m = sylvester_matrix(&f, &g).unwrap();
        assert_eq!(det_cofactor(&m), Scalar::from_i64(&z(), 4)); // oracle: g(0)^2 = 4
        assert_eq!(resultant(&f, &g).unwrap(), Scalar::from_i64(&z(), 4));
    }

    #[test]
    fn resultant_of_xn_minus_2_and_xn_minus_3() {
        // prod over roots of f of (alpha^n - 3) = prod (2 - 3) = (-1)^n
        for n in [2usize, 3] {
            let mut fc = vec![0i64; n + 1];
            fc[0] = -2;
            fc[n] = 1;
            let mut gc = vec![0i64; n + 1];
            gc[0] = -3;
            gc[n] = 1;
            let f = Monic::from_i64(&z(), &fc).unwrap();
            let g = Monic::from_i64(&z(), &gc).unwrap();
            let expect = Scalar::from_i64(&z(), if n % 2 == 0 { 1 } else { -1 });
            let syl = sylvester_matrix(&f, &g).unwrap();
            assert_eq!(det_cofactor(&syl), expect); // determinant oracle
            assert_eq!(resultant(&f, &g).unwrap(), expect);
        }
    }

    #[test]
    fn resultant_vanishes_on_common_factor() {
        let f = Monic::from_i64(&q(), &[0, 0, 1]).unwrap();
        assert!(resultant(&f, &f).unwrap().is_zero());
        // f = x^2 - 1, g = x^2 - x share x - 1
        let f = Monic::from_i64(&q(), &[-1, 0, 1]).unwrap();
        let g = Monic::from_i64(&q(), &[0, -1, 1]).unwrap();
        assert!(resultant(&f, &g).unwrap().is_zero());
        assert_eq!(
            poly_gcd(f.as_poly(), g.as_poly()).unwrap(),
            Poly::from_i64(&q(), &[-1, 1])
        );
    }

    #[test]
    fn resultant_over_composite_modulus_via_lift() {
        let z6 = Ring::integers_mod(6).unwrap();
        // f = x^2, g = x^2 + x + 1: over Z res = g(0)^2 = 1
        let f = Monic::from_i64(&z6, &[0, 0, 1]).unwrap();
        let g = Monic::from_i64(&z6, &[1, 1, 1]).unwrap();
        assert_eq!(resultant(&f, &g).unwrap(), Scalar::from_i64(&z6, 1));
    }

    #[test]
    fn gcd_examples() {
        // f = x^3 - x^2, g = x^3 - x: common factor x(x - 1) (factor oracle:
        // their product expands to x^2 - x)
        let f = Poly::from_i64(&q(), &[0, 0, -1, 1]);
        let g = Poly::from_i64(&q(), &[0, -1, 0, 1]);
        let d = poly_gcd(&f, &g).unwrap();
        assert_eq!(d, Poly::from_i64(&q(), &[0, -1, 1]));

        // gcd(f, f) = f made monic
        let f2 = Poly::from_i64(&q(), &[2, 4, 2]); // 2(x+1)^2
        assert_eq!(poly_gcd(&f2, &f2).unwrap(), Poly::from_i64(&q(), &[1, 2, 1]));

        // coprime pair
        let f = Poly::from_i64(&q(), &[0, 0, 1]);
        let g = Poly::from_i64(&q(), &[-2, 0, 1]);
        assert!(poly_gcd(&f, &g).unwrap().is_one());
    }

    #[test]
    fn gcd_over_z_is_primitive_with_positive_lead() {
        let f = Poly::from_i64(&z(), &[0, 0, -2, 2]); // 2x^2(x - 1)... actually 2x^3 - 2x^2
        let g = Poly::from_i64(&z(), &[0, -4, 0, 4]); // 4x(x^2 - 1)
        let d = poly_gcd(&f, &g).unwrap();
        // common part x(x-1) = x^2 - x, primitive positive
        assert_eq!(d, Poly::from_i64(&z(), &[0, -1, 1]));
        let z6 = Ring::integers_mod(6).unwrap();
        let h = Poly::from_i64(&z6, &[1, 1]);
        assert!(poly_gcd(&h, &h).is_err());
    }

    #[test]
    fn exact_division() {
        // long-division oracle cases
        let f = Poly::from_i64(&z(), &[-1, 0, 1]); // x^2 - 1
        let d = Poly::from_i64(&z(), &[-1, 1]); // x - 1
        assert_eq!(f.div_exact(&d).unwrap(), Poly::from_i64(&z(), &[1, 1]));
        assert_eq!(f.div_exact(&Poly::one(&z())).unwrap(), f);
        let f = Poly::from_i64(&z(), &[0, 0, -1, 1]); // x^3 - x^2
        let d = Poly::from_i64(&z(), &[0, -1, 1]); // x^2 - x
        assert_eq!(f.div_exact(&d).unwrap(), Poly::from_i64(&z(), &[0, 1]));
        // nonzero remainder is an error
        let d = Poly::from_i64(&z(), &[1, 1]);
        assert!(f.div_exact(&d).is_err());
    }

    #[test]
    fn eval_matrix_cases() {
        let f = Monic::from_i64(&z(), &[3, -1, 1]).unwrap(); // x^2 - x + 3
        let c = companion(&f).unwrap();
        // minimal polynomial: f(C) = 0
        assert!(f.as_poly().eval_matrix(&c).unwrap().is_zero());
        // p = 1 -> identity, p = x -> A
        assert_eq!(
            Poly::one(&z()).eval_matrix(&c).unwrap(),
            Matrix::identity(&z(), 2)
        );
        assert_eq!(Poly::from_i64(&z(), &[0, 1]).eval_matrix(&c).unwrap(), c);
    }

    #[test]
    fn sylvester_and_euclid_agree_on_two_hundred_pairs() {
        // `resultant` computes both routes over fields and errors on any
        // disagreement, so success across the sweep is the assertion
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(200);
        let gf5 = Ring::integers_mod(5).unwrap();
        for i in 0..200 {
            let ring = if i % 2 == 0 { q() } else { gf5.clone() };
            let n = 2 + i % 4;
            let f = Monic::random(&ring, n, &mut rng);
            let g = Monic::random(&ring, n, &mut rng);
            resultant(&f, &g).unwrap();
        }
    }

    #[test]
    fn minimal_polynomial_up_to_degree_eight() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for n in 2..=8 {
            let f = Monic::random(&z(), n, &mut rng);
            let c = companion(&f).unwrap();
            assert!(f.as_poly().eval_matrix(&c).unwrap().is_zero());
        }
    }

    #[test]
    fn parse_basic_grammar() {
        assert_eq!(Poly::parse(&z(), "x^2-2").unwrap(), Poly::from_i64(&z(), &[-2, 0, 1]));
        assert_eq!(Poly::parse(&z(), "X^3 - 2*x + 1").unwrap(), Poly::from_i64(&z(), &[1, -2, 0, 1]));
        assert_eq!(Poly::parse(&z(), "3x").unwrap(), Poly::from_i64(&z(), &[0, 3]));
        assert_eq!(Poly::parse(&z(), "-x + x").unwrap(), Poly::zero(&z()));
        assert_eq!(Poly::parse(&z(), "7").unwrap(), Poly::from_i64(&z(), &[7]));
        // unicode minus
        assert_eq!(Poly::parse(&z(), "x\u{2212}1").unwrap(), Poly::from_i64(&z(), &[-1, 1]));
        assert!(Poly::parse(&z(), "x^").is_err());
        assert!(Poly::parse(&z(), "x + ").is_err());
        assert!(Poly::parse(&z(), "y^2").is_err());
    }

    #[test]
    fn parse_ring_specific_coefficients() {
        let p = Poly::parse(&q(), "1/2*x^2 - 3/4").unwrap();
        assert_eq!(p.coeff(2), Scalar::rational(BigInt::from(1), BigInt::from(2)).unwrap());
        assert_eq!(p.coeff(0), Scalar::rational(BigInt::from(-3), BigInt::from(4)).unwrap());
        // rationals are rejected elsewhere
        assert!(Poly::parse(&z(), "1/2*x").is_err());

        let zi = Ring::GaussianIntegers;
        let p = Poly::parse(&zi, "x^2 + (1+2i)*x - (3-i)").unwrap();
        assert_eq!(p.coeff(1), Scalar::Gauss(BigInt::from(1), BigInt::from(2)));
        assert_eq!(p.coeff(0), Scalar::Gauss(BigInt::from(-3), BigInt::from(1)));
        assert_eq!(Poly::parse(&zi, "(i)*x").unwrap().coeff(1), Scalar::Gauss(BigInt::from(0), BigInt::from(1)));
        assert!(Poly::parse(&z(), "(1+2i)*x").is_err());
        // bare Gaussian terms need parentheses, with a pointed message
        match Poly::parse(&zi, "x^2+i") {
            Err(Error::Parse(msg)) => assert!(msg.contains("parenthesized"), "{msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }

        // residues reduce on construction
        let z5 = Ring::integers_mod(5).unwrap();
        assert_eq!(Poly::parse(&z5, "7*x + 6").unwrap(), Poly::from_i64(&z5, &[1, 2]));
    }

    #[test]
    fn parse_json_form() {
        let p = Poly::parse(&z(), r#"{"coeffs": [-2, 0, 1]}"#).unwrap();
        assert_eq!(p, Poly::from_i64(&z(), &[-2, 0, 1]));
        let p = Poly::parse(&q(), r#"{"coeffs": ["1/2", "0", "1"]}"#).unwrap();
        assert_eq!(p.coeff(0), Scalar::rational(BigInt::from(1), BigInt::from(2)).unwrap());
        let zi = Ring::GaussianIntegers;
        let p = Poly::parse(&zi, r#"{"coeffs": ["(1+2i)", 0, 1]}"#).unwrap();
        assert_eq!(p.coeff(0), Scalar::Gauss(BigInt::from(1), BigInt::from(2)));
        assert!(Poly::parse(&z(), r#"{"nope": []}"#).is_err());
    }

    #[test]
    fn display_parse_round_trip() {
        let samples = [
            Poly::from_i64(&z(), &[-2, 0, 1]),
            Poly::from_i64(&z(), &[1, -2, 0, 1]),
            Poly::from_i64(&z(), &[0, 3]),
            Poly::zero(&z()),
            Poly::from_i64(&z(), &[-7]),
        ];
        for p in samples {
            assert_eq!(Poly::parse(&z(), &p.to_string()).unwrap(), p);
        }
        let zi = Ring::GaussianIntegers;
        let p = Poly::new(
            zi.clone(),
            vec![
                Scalar::Gauss(BigInt::from(-3), BigInt::from(1)),
                Scalar::Gauss(BigInt::from(1), BigInt::from(2)),
                Scalar::Gauss(BigInt::from(1), BigInt::from(0)),
            ],
        )
        .unwrap();
        assert_eq!(Poly::parse(&zi, &p.to_string()).unwrap(), p);
    }

    fn arb_monic(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-9i64..=9, n).prop_map(move |mut v| {
            v.push(1);
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn resultant_is_symmetric_for_equal_even_odd_degrees(fc in arb_monic(3), gc in arb_monic(3)) {
            // deg f = deg g = n: res(f,g) = (-1)^(n*n) res(g,f) = res(g,f) for even n^2...
            // n = 3 gives sign (-1)^9 = -1; check the exact sign law
            let f = Monic::from_i64(&z(), &fc).unwrap();
            let g = Monic::from_i64(&z(), &gc).unwrap();
            let rfg = resultant(&f, &g).unwrap();
            let rgf = resultant(&g, &f).unwrap();
            prop_assert_eq!(rfg, rgf.neg());
        }

        #[test]
        fn resultant_symmetric_even_degree(fc in arb_monic(2), gc in arb_monic(2)) {
            let f = Monic::from_i64(&z(), &fc).unwrap();
            let g = Monic::from_i64(&z(), &gc).unwrap();
            prop_assert_eq!(resultant(&f, &g).unwrap(), resultant(&g, &f).unwrap());
        }

        #[test]
        fn resultant_zero_iff_common_factor(fc in arb_monic(3), gc in arb_monic(3), p in prop_oneof![Just(2u64), Just(5u64)]) {
            let gf = Ring::integers_mod(p).unwrap();
            let f = Monic::new(Poly::from_i64(&z(), &fc).reduce_hom(&gf).unwrap()).unwrap();
            let g = Monic::new(Poly::from_i64(&z(), &gc).reduce_hom(&gf).unwrap()).unwrap();
            let r = resultant(&f, &g).unwrap();
            let d = poly_gcd(f.as_poly(), g.as_poly()).unwrap();
            prop_assert_eq!(r.is_zero(), d.degree().unwrap_or(0) >= 1);
        }

        #[test]
        fn cayley_hamilton_for_companions(fc in arb_monic(5)) {
            let f = Monic::from_i64(&z(), &fc).unwrap();
            let c = companion(&f).unwrap();
            prop_assert!(f.as_poly().eval_matrix(&c).unwrap().is_zero());
        }

        #[test]
        fn sylvester_and_euclid_agree_over_q(fc in arb_monic(4), gc in arb_monic(4)) {
            let f = Monic::from_i64(&q(), &fc).unwrap();
            let g = Monic::from_i64(&q(), &gc).unwrap();
            // `resultant` cross-checks internally over fields and errors on
            // disagreement; success is the assertion.
            prop_assert!(resultant(&f, &g).is_ok());
        }

        #[test]
        fn display_parse_identity(coeffs in proptest::collection::vec(-99i64..=99, 0..7)) {
            let p = Poly::from_i64(&z(), &coeffs);
            prop_assert_eq!(Poly::parse(&z(), &p.to_string()).unwrap(), p);
        }
    }
}
