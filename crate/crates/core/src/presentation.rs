//! Finite presentations of the generated algebra and the word-rewriting
//! engine that realizes them.
//!
//! Three presentation variants exist. `Full` presents the whole matrix
//! algebra on two generators when the resultant is a unit, with swap
//! relations `Y^j X = P_j(X, Y)`. `FullConstantS` is its specialization
//! when `g - f` is a constant unit, where the swaps take the symmetric form
//! `Y^j X + X^j Y = X^(j+1) + Y^(j+1)`. `Subalgebra` presents the generated
//! subalgebra over a UFD, adding the relation `h(X)(X - Y) = 0` with
//! `h = f / gcd(f, g)`.
//!
//! Words are reduced by online left-to-right evaluation over a coefficient
//! table of basis monomials `X^i Y^j`, so termination is structural: every
//! rewrite strictly lowers the `(Y-degree, X-degree)` of the monomial it
//! replaces. Completeness is established by dimension count plus the
//! soundness check against direct matrix evaluation, mirroring how the
//! spanning-and-independence argument works in exact arithmetic.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::companion::{add_to_table, eval_table, CompanionPair, MonomialTable};
use crate::error::{Error, Result};
use crate::matrix::{hermite_row_basis, Matrix};
use crate::poly::{poly_gcd, Poly};
use crate::ring::{Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    X,
    Y,
}

/// Element of the free monoid on `{X, Y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// The ordered monomial `X^i Y^j` as a word.
    pub fn from_exponents(i: usize, j: usize) -> Word {
        let mut letters = vec![Letter::X; i];
        letters.extend(std::iter::repeat(Letter::Y).take(j));
        Word(letters)
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&rhs.0);
        Word(letters)
    }

    pub fn random(len: usize, rng: &mut impl Rng) -> Word {
        let letters = (0..len)
            .map(|_| if rng.gen_bool(0.5) { Letter::X } else { Letter::Y })
            .collect();
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of the images of the letters (`X -> C`, `Y -> D`).
    pub fn evaluate(&self, pair: &CompanionPair) -> Result<Matrix> {
        let mut acc = Matrix::identity(pair.ring(), pair.n());
        for l in &self.0 {
            acc = match l {
                Letter::X => acc.mul(pair.c())?,
                Letter::Y => acc.mul(pair.d())?,
            };
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut run: Option<(Letter, usize)> = None;
        let flush = |f: &mut fmt::Formatter<'_>, run: Option<(Letter, usize)>| match run {
            Some((l, 1)) => write!(f, "{}", if l == Letter::X { "X" } else { "Y" }),
            Some((l, k)) => write!(f, "{}^{k}", if l == Letter::X { "X" } else { "Y" }),
            None => Ok(()),
        };
        for &l in &self.0 {
            match run {
                Some((cur, k)) if cur == l => run = Some((cur, k + 1)),
                Some(prev) => {
                    flush(f, Some(prev))?;
                    run = Some((l, 1));
                }
                None => run = Some((l, 1)),
            }
        }
        flush(f, run)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Full,
    FullConstantS,
    Subalgebra,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Variant::Full),
            "full-constant-s" | "constant-s" => Ok(Variant::FullConstantS),
            "subalgebra" | "sub" => Ok(Variant::Subalgebra),
            _ => Err(Error::Parse(format!(
                "unknown variant {s:?} (expected full | full-constant-s | subalgebra)"
            ))),
        }
    }

    /// Picks the strongest variant the pair supports: the symmetric
    /// constant-difference form when `g - f` is a constant unit, the full
    /// presentation when the resultant is a unit, otherwise the subalgebra
    /// presentation.
    pub fn auto(pair: &CompanionPair) -> Result<Variant> {
        let s = pair.s();
        if s.degree().map_or(false, |d| d == 0) && s.coeff(0).is_unit() {
            return Ok(Variant::FullConstantS);
        }
        if pair.resultant()?.is_unit() {
            return Ok(Variant::Full);
        }
        Ok(Variant::Subalgebra)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Full => write!(f, "full"),
            Variant::FullConstantS => write!(f, "full-constant-s"),
            Variant::Subalgebra => write!(f, "subalgebra"),
        }
    }
}

/// Element of the quotient algebra as a pruned coefficient table over the
/// active basis monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub ring: Ring,
    pub coeffs: MonomialTable,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Formal expansion back into scaled words `X^i Y^j`.
    pub fn expansion(&self) -> Vec<(Scalar, Word)> {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| (c.clone(), Word::from_exponents(i, j)))
            .collect()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // descending total degree, then descending X-degree
        let mut keys: Vec<&(usize, usize)> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (t, key) in keys.into_iter().enumerate() {
            let c = &self.coeffs[key];
            write_term(f, t == 0, c, &Word::from_exponents(key.0, key.1))?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: &Scalar, word: &Word) -> fmt::Result {
    // render sign separately for readability over signed rings
    let (neg, mag) = match coeff {
        Scalar::Int(v) if v.sign() == num_bigint::Sign::Minus => (true, coeff.neg()),
        Scalar::Rat(v) if *v < num_rational::BigRational::from_integer(0.into()) => {
            (true, coeff.neg())
        }
        _ => (false, coeff.clone()),
    };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if word.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{word}")
    } else if matches!(mag, Scalar::Gauss(_, _)) {
        write!(f, "({mag}){word}")
    } else {
        write!(f, "{mag}{word}")
    }
}

/// One relation `lhs = rhs` between linear combinations of words.
#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub lhs: Vec<(Scalar, Word)>,
    pub rhs: Vec<(Scalar, Word)>,
}

impl Relation {
    fn side_to_string(side: &[(Scalar, Word)]) -> String {
        if side.is_empty() {
            return "0".into();
        }
        struct SideFmt<'a>(&'a [(Scalar, Word)]);
        impl fmt::Display for SideFmt<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (t, (c, w)) in self.0.iter().enumerate() {
                    write_term(f, t == 0, c, w)?;
                }
                Ok(())
            }
        }
        SideFmt(side).to_string()
    }

    pub fn render(&self) -> String {
        format!("{} = {}", Self::side_to_string(&self.lhs), Self::side_to_string(&self.rhs))
    }
}

/// A finite presentation document: generators are always `X`, `Y`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub variant: Variant,
    pub ring: Ring,
    pub n: usize,
    pub relations: Vec<Relation>,
    /// Active basis monomials the normal forms live on.
    pub basis: Vec<(usize, usize)>,
}

impl Presentation {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "algebra over {} with generators X, Y ({} variant)\n",
            self.ring, self.variant
        ));
        for r in &self.relations {
            out.push_str(&format!("  [{}] {}\n", r.label, r.render()));
        }
        out.push_str(&format!(
            "normal-form basis ({} monomials): {}\n",
            self.basis.len(),
            self.basis
                .iter()
                .map(|&(i, j)| Word::from_exponents(i, j).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        let side = |terms: &[(Scalar, Word)]| {
            Value::Array(
                terms
                    .iter()
                    .map(|(c, w)| json!({"coeff": c.to_string(), "word": w.to_string()}))
                    .collect(),
            )
        };
        json!({
            "ring": self.ring.to_string(),
            "variant": self.variant.to_string(),
            "degree": self.n,
            "generators": ["X", "Y"],
            "relations": self.relations.iter().map(|r| json!({
                "label": r.label,
                "lhs": side(&r.lhs),
                "rhs": side(&r.rhs),
            })).collect::<Vec<_>>(),
            "basis": self.basis.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        })
    }
}

/// Rewriting engine for one pair and variant; construction verifies the
/// variant preconditions and the relation polynomials.
pub struct Reducer {
    ring: Ring,
    n: usize,
    f_low: Vec<Scalar>,
    g_low: Vec<Scalar>,
    swap: Vec<MonomialTable>,
    /// `(basis bound for mixed monomials, tail of h)` when rewriting into
    /// the subalgebra basis; `h = X^(n-m) + tail`.
    sub: Option<(usize, Vec<Scalar>)>,
    basis: Vec<(usize, usize)>,
    h: Option<Poly>,
}

impl Reducer {
    pub fn new(pair: &CompanionPair, variant: Variant) -> Result<Reducer> {
        let ring = pair.ring().clone();
        let n = pair.n();
        match variant {
            Variant::Full => {
                let r = pair.resultant()?;
                if !r.is_unit() {
                    return Err(Error::domain(format!(
                        "full presentation needs a unit resultant; Res(f, g) = {r} is not a unit in {ring}"
                    )));
                }
            }
            Variant::FullConstantS => {
                let s = pair.s();
                let ok = s.degree().map_or(false, |d| d == 0) && s.coeff(0).is_unit();
                if !ok {
                    return Err(Error::domain(format!(
                        "constant-difference presentation needs g - f to be a constant unit, got {s}"
                    )));
                }
            }
            Variant::Subalgebra => {
                let supported = matches!(ring, Ring::Integers | Ring::Rationals) || ring.is_field();
                if !supported {
                    return Err(Error::domain(format!(
                        "subalgebra presentation needs a UFD among Q, GF(p), Z, got {ring}"
                    )));
                }
            }
        }
        let seq = pair.p_sequence()?;
        let f_low: Vec<Scalar> = (0..n).map(|k| pair.f().coeff(k)).collect();
        let g_low: Vec<Scalar> = (0..n).map(|k| pair.g().coeff(k)).collect();
        let (sub, h, basis) = if variant == Variant::Subalgebra {
            let d = poly_gcd(pair.f().as_poly(), pair.g().as_poly())?;
            let m = d.degree().unwrap_or(0);
            let h = pair.f().as_poly().div_exact(&d)?;
            debug_assert!(h.leading().unwrap().is_one());
            let tail: Vec<Scalar> = (0..n - m).map(|t| h.coeff(t)).collect();
            let mut basis: Vec<(usize, usize)> = (0..n).map(|i| (i, 0)).collect();
            for j in 1..n {
                for i in 0..n - m {
                    basis.push((i, j));
                }
            }
            (Some((n - m, tail)), Some(h), basis)
        } else {
            let mut basis = Vec::with_capacity(n * n);
            for j in 0..n {
                for i in 0..n {
                    basis.push((i, j));
                }
            }
            (None, None, basis)
        };
        Ok(Reducer { ring, n, f_low, g_low, swap: seq.big_p, sub, basis, h })
    }

    /// Adds `c * X^i Y^j` to `acc`, rewriting until the monomial lies in
    /// the active basis. Every rule strictly lowers `(j, i)` lexically, so
    /// this terminates.
    fn add_monomial(&self, acc: &mut MonomialTable, i: usize, j: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let n = self.n;
        if i >= n {
            // X^n = -(f_0 + ... + f_(n-1) X^(n-1))
            for (k, fk) in self.f_low.iter().enumerate() {
                self.add_monomial(acc, i - n + k, j, c.mul(&fk.neg()));
            }
            return;
        }
        if j >= n {
            for (k, gk) in self.g_low.iter().enumerate() {
                self.add_monomial(acc, i, j - n + k, c.mul(&gk.neg()));
            }
            return;
        }
        if let Some((bound, tail)) = &self.sub {
            // mixed monomials must satisfy i < bound; rewrite via
            // X^bound Y = X^(bound+1) + tail(X) X - tail(X) Y
            if j >= 1 && i >= *bound {
                let e = i - bound;
                self.add_monomial(acc, i + 1, j - 1, c.clone());
                for (t, ht) in tail.iter().enumerate() {
                    if ht.is_zero() {
                        continue;
                    }
                    self.add_monomial(acc, e + t + 1, j - 1, c.mul(ht));
                    self.add_monomial(acc, e + t, j, c.mul(ht).neg());
                }
                return;
            }
        }
        add_to_table(acc, (i, j), c);
    }

    fn mul_letter(&self, table: &MonomialTable, letter: Letter) -> MonomialTable {
        let mut acc = MonomialTable::new();
        for (&(i, j), c) in table {
            match letter {
                Letter::Y => self.add_monomial(&mut acc, i, j + 1, c.clone()),
                Letter::X => {
                    if j == 0 {
                        self.add_monomial(&mut acc, i + 1, 0, c.clone());
                    } else {
                        // Y^j X = P_j(X, Y), multiplied by X^i on the left
                        for (&(a, b), pc) in &self.swap[j] {
                            self.add_monomial(&mut acc, i + a, b, c.mul(pc));
                        }
                    }
                }
            }
        }
        acc
    }

    pub fn reduce(&self, w: &Word) -> NormalForm {
        let mut table = MonomialTable::new();
        table.insert((0, 0), Scalar::one(&self.ring));
        for &l in &w.0 {
            table = self.mul_letter(&table, l);
        }
        NormalForm { ring: self.ring.clone(), coeffs: table }
    }

    /// Reduces a linear combination of words.
    pub fn reduce_combination(&self, terms: &[(Scalar, Word)]) -> NormalForm {
        let mut acc = MonomialTable::new();
        for (c, w) in terms {
            for (&(i, j), coeff) in &self.reduce(w).coeffs {
                add_to_table(&mut acc, (i, j), coeff.mul(c));
            }
        }
        NormalForm { ring: self.ring.clone(), coeffs: acc }
    }

    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }
}

fn table_to_terms(table: &MonomialTable) -> Vec<(Scalar, Word)> {
    let mut keys: Vec<(usize, usize)> = table.keys().copied().collect();
    keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
    keys.into_iter()
        .map(|k| (table[&k].clone(), Word::from_exponents(k.0, k.1)))
        .collect()
}

fn poly_as_terms(p: &Poly, letter: Letter) -> Vec<(Scalar, Word)> {
    let mut out = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let word = match letter {
            Letter::X => Word::from_exponents(k, 0),
            Letter::Y => Word::from_exponents(0, k),
        };
        out.push((c.clone(), word));
    }
    out
}

/// Emits the presentation document for the pair under the given variant.
pub fn emit_presentation(pair: &CompanionPair, variant: Variant) -> Result<Presentation> {
    let reducer = Reducer::new(pair, variant)?;
    let n = pair.n();
    let ring = pair.ring().clone();
    let mut relations = Vec::new();
    relations.push(Relation {
        label: "f-rel".into(),
        lhs: poly_as_terms(pair.f().as_poly(), Letter::X),
        rhs: vec![],
    });
    relations.push(Relation {
        label: "g-rel".into(),
        lhs: poly_as_terms(pair.g().as_poly(), Letter::Y),
        rhs: vec![],
    });
    if variant == Variant::Subalgebra {
        let h = reducer.h.clone().expect("subalgebra reducer carries h");
        let x = Poly::monomial(Scalar::one(&ring), 1);
        let hx = h.mul(&x)?;
        let mut table = MonomialTable::new();
        for (k, c) in hx.coeffs().iter().enumerate() {
            add_to_table(&mut table, (k, 0), c.clone());
        }
        for (k, c) in h.coeffs().iter().enumerate() {
            add_to_table(&mut table, (k, 1), c.neg());
        }
        relations.push(Relation { label: "h-rel".into(), lhs: table_to_terms(&table), rhs: vec![] });
    }
    for j in 1..n {
        let (lhs, rhs) = match variant {
            Variant::FullConstantS => (
                vec![
                    (Scalar::one(&ring), Word::from_exponents(0, j).concat(&Word(vec![Letter::X]))),
                    (Scalar::one(&ring), Word::from_exponents(j, 1)),
                ],
                vec![
                    (Scalar::one(&ring), Word::from_exponents(j + 1, 0)),
                    (Scalar::one(&ring), Word::from_exponents(0, j + 1)),
                ],
            ),
            _ => (
                vec![(Scalar::one(&ring), Word::from_exponents(0, j).concat(&Word(vec![Letter::X])))],
                table_to_terms(&reducer.swap[j]),
            ),
        };
        relations.push(Relation { label: format!("swap-{j}"), lhs, rhs });
    }
    Ok(Presentation { variant, ring, n, relations, basis: reducer.basis.clone() })
}

/// Reduces a word to its normal form over the active basis.
pub fn reduce_word(w: &Word, pair: &CompanionPair, variant: Variant) -> Result<NormalForm> {
    Ok(Reducer::new(pair, variant)?.reduce(w))
}

/// `sum coeffs[(i, j)] C^i D^j`.
pub fn evaluate_normal_form(nf: &NormalForm, pair: &CompanionPair) -> Result<Matrix> {
    let n = pair.n();
    let mut max_i = 0;
    let mut max_j = 0;
    for &(i, j) in nf.coeffs.keys() {
        max_i = max_i.max(i);
        max_j = max_j.max(j);
    }
    let pc = pair.c_powers(max_i.max(n - 1));
    let pd = pair.d_powers(max_j.max(n - 1));
    eval_table(&nf.coeffs, &pc, &pd)
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub variant: Variant,
    pub relations_checked: usize,
    pub words_checked: u32,
    pub splits_checked: u32,
    pub basis_size: usize,
    pub basis_rank: usize,
}

fn evaluate_terms(terms: &[(Scalar, Word)], pair: &CompanionPair) -> Result<Matrix> {
    let mut acc = Matrix::zeros(pair.ring(), pair.n(), pair.n());
    for (c, w) in terms {
        acc = acc.add(&w.evaluate(pair)?.mul_scalar(c))?;
    }
    Ok(acc)
}

/// Verifies the presentation: every relation holds in matrices, random
/// words reduce soundly, reduction commutes with splitting a word in two,
/// and the active basis monomials are linearly independent.
pub fn verify_presentation(
    pair: &CompanionPair,
    variant: Variant,
    trials: u32,
    max_len: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let reducer = Reducer::new(pair, variant)?;
    let doc = emit_presentation(pair, variant)?;
    for rel in &doc.relations {
        let lhs = evaluate_terms(&rel.lhs, pair)?;
        let rhs = evaluate_terms(&rel.rhs, pair)?;
        if lhs != rhs {
            return Err(Error::invariant(format!(
                "relation {} does not hold in matrices: {}",
                rel.label,
                rel.render()
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let len = rng.gen_range(0..=max_len);
        let w = Word::random(len, &mut rng);
        let reduced = reducer.reduce(&w);
        let via_nf = evaluate_normal_form(&reduced, pair)?;
        let direct = w.evaluate(pair)?;
        if via_nf != direct {
            return Err(Error::invariant(format!(
                "word {w} reduces to {reduced}, which evaluates differently from the direct product"
            )));
        }
    }
    let splits = trials / 4 + 1;
    for _ in 0..splits {
        let w1 = Word::random(rng.gen_range(0..=max_len), &mut rng);
        let w2 = Word::random(rng.gen_range(0..=max_len), &mut rng);
        let direct = reducer.reduce(&w1.concat(&w2));
        // compose: expand reduce(w1) and push w2 through each monomial
        let terms: Vec<(Scalar, Word)> = reducer
            .reduce(&w1)
            .expansion()
            .into_iter()
            .map(|(c, w)| (c, w.concat(&w2)))
            .collect();
        let composed = reducer.reduce_combination(&terms);
        if direct != composed {
            return Err(Error::invariant(format!(
                "split reduction mismatch for {w1} | {w2}: direct {direct}, composed {composed}"
            )));
        }
    }
    // independence of the active basis under evaluation
    let rows: Vec<Vec<Scalar>> = reducer
        .basis
        .iter()
        .map(|&(i, j)| {
            Ok(Word::from_exponents(i, j).evaluate(pair)?.vectorize_column_major())
        })
        .collect::<Result<_>>()?;
    let basis_rank = if pair.ring().is_field() {
        Matrix::from_fn(pair.ring(), rows.len(), pair.n() * pair.n(), |i, j| rows[i][j].clone())
            .rank_over_field()?
    } else {
        hermite_row_basis(pair.ring(), &rows)?.rank
    };
    if basis_rank != reducer.basis.len() {
        return Err(Error::invariant(format!(
            "active basis of size {} has rank {basis_rank} under evaluation",
            reducer.basis.len()
        )));
    }
    Ok(VerifyReport {
        variant,
        relations_checked: doc.relations.len(),
        words_checked: trials,
        splits_checked: splits,
        basis_size: reducer.basis.len(),
        basis_rank,
    })
}
