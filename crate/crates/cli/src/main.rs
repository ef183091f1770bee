//! Command-line front end: every library operation as a subcommand, with
//! exact text or JSON output.
//!
//! Exit codes: 0 success (a computed verdict, even a negative one), 2
//! parse/usage error, 3 domain error (ring or degree preconditions), 4
//! invariant violation (an exact theorem failed to verify, which is a bug,
//! reported with a full dump).

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use companion_core::companion::{common_invariant_subspaces, CompanionPair, MonomialTable};
use companion_core::presentation::{self, Variant};
use companion_core::span::{generates_full, span_closure_oracle, GenerationWitness};
use companion_core::{Error, Matrix, Monic, Poly, Ring, Scalar};

#[derive(Parser)]
#[command(
    name = "companion",
    version,
    about = "Exact computations on the algebra generated by a pair of companion matrices"
)]
struct Cli {
    /// Coefficient ring: z | q | zmod:<m> | gf:<p> | zi
    #[arg(long, global = true, default_value = "z")]
    ring: String,

    /// First monic polynomial f (grammar: `x^2 - 2`, `3*x + 1`, or JSON
    /// `{"coeffs": [-2, 0, 1]}`)
    #[arg(short = 'f', global = true)]
    f: Option<String>,

    /// Second monic polynomial g
    #[arg(short = 'g', global = true)]
    g: Option<String>,

    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Trial count for randomized verification
    #[arg(long, global = true, default_value_t = 100)]
    trials: u32,

    /// Maximum random word length
    #[arg(long = "max-word-len", global = true, default_value_t = 8)]
    max_word_len: usize,

    /// Seed for reproducible randomized verification
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Resultant of f and g (Sylvester determinant, cross-checked over fields)
    Resultant,
    /// Verify det M = Res(f, g)^(n-1) for the structure matrix M
    DetIdentity,
    /// Index of the generated lattice in the full matrix lattice (Z, Z[i])
    Index,
    /// Decide whether the companion matrices generate the full matrix algebra
    Generates {
        /// Polynomials in addition to -f/-g
        polys: Vec<String>,
    },
    /// Rank and monomial basis of the generated module
    Basis,
    /// The scalar sequence, lowering polynomials, swap polynomials, and their identities
    Relations,
    /// Solve g(C) Q = -f(D) over a field
    SolveQ,
    /// Emit a finite presentation of the generated algebra
    Presentation {
        /// full | full-constant-s | subalgebra (default: auto)
        #[arg(long)]
        variant: Option<String>,
    },
    /// Verify a presentation: relations, random words, splits, basis rank
    VerifyPresentation {
        /// full | full-constant-s | subalgebra (default: auto)
        #[arg(long)]
        variant: Option<String>,
    },
    /// Commutant of {C, D} over a field
    Commutant,
    /// Common invariant subspaces of a family of companion matrices
    InvariantSubspaces {
        /// Polynomials in addition to -f/-g
        polys: Vec<String>,
        /// Monic factor of the gcd to build a subspace for (repeatable)
        #[arg(long)]
        factor: Vec<String>,
    },
    /// Brute-force span-closure oracle on C and D
    OracleSpan,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).unwrap());
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                Error::Domain(_) | Error::RingMismatch(_, _) => ExitCode::from(3),
                Error::Invariant(_) => ExitCode::from(4),
            }
        }
    }
}

struct Report {
    json: Value,
    text: String,
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let ring = Ring::parse(&cli.ring)?;
    match &cli.cmd {
        Cmd::Resultant => resultant_cmd(cli, &ring),
        Cmd::DetIdentity => det_identity_cmd(cli, &ring),
        Cmd::Index => index_cmd(cli, &ring),
        Cmd::Generates { polys } => generates_cmd(cli, &ring, polys),
        Cmd::Basis => basis_cmd(cli, &ring),
        Cmd::Relations => relations_cmd(cli, &ring),
        Cmd::SolveQ => solve_q_cmd(cli, &ring),
        Cmd::Presentation { variant } => presentation_cmd(cli, &ring, variant.as_deref(), false),
        Cmd::VerifyPresentation { variant } => {
            presentation_cmd(cli, &ring, variant.as_deref(), true)
        }
        Cmd::Commutant => commutant_cmd(cli, &ring),
        Cmd::InvariantSubspaces { polys, factor } => {
            invariant_subspaces_cmd(cli, &ring, polys, factor)
        }
        Cmd::OracleSpan => oracle_span_cmd(cli, &ring),
    }
}

fn parse_pair(cli: &Cli, ring: &Ring) -> Result<CompanionPair, Error> {
    let f = cli
        .f
        .as_deref()
        .ok_or_else(|| Error::Parse("missing -f <poly>".into()))?;
    let g = cli
        .g
        .as_deref()
        .ok_or_else(|| Error::Parse("missing -g <poly>".into()))?;
    CompanionPair::new(Monic::parse(ring, f)?, Monic::parse(ring, g)?)
}

fn gather_polys(cli: &Cli, ring: &Ring, extra: &[String]) -> Result<Vec<Monic>, Error> {
    let mut out = Vec::new();
    for s in cli.f.iter().chain(cli.g.iter()).chain(extra.iter()) {
        out.push(Monic::parse(ring, s)?);
    }
    Ok(out)
}

fn envelope(_cli: &Cli, ring: &Ring, command: &str, inputs: Value, result: Value) -> Value {
    json!({
        "command": command,
        "ring": ring.to_string(),
        "inputs": inputs,
        "result": result,
    })
}

fn pair_inputs(pair: &CompanionPair) -> Value {
    json!({"f": pair.f().to_string(), "g": pair.g().to_string()})
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| Value::String(m.at(i, j).to_string())).collect())
            })
            .collect(),
    )
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

fn table_json(t: &MonomialTable) -> Value {
    Value::Array(
        t.iter()
            .map(|(&(a, b), c)| json!({"exponents": [a, b], "coeff": c.to_string()}))
            .collect(),
    )
}

fn resultant_cmd(cli: &Cli, ring: &Ring) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let r = pair.resultant()?;
    let json = envelope(
        cli,
        ring,
        "resultant",
        pair_inputs(&pair),
        json!({
            "resultant": r.to_string(),
            "is_zero": r.is_zero(),
            "is_unit": r.is_unit(),
        }),
    );
    let text = format!(
        "Res(f, g) = {r} over {ring} (zero: {}, unit: {})\n",
        r.is_zero(),
        r.is_unit()
    );
    Ok(Report { json, text })
}

fn det_identity_cmd(cli: &Cli, ring: &Ring) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let rec = pair.det_identity_check()?;
    let n = pair.n();
    let json = envelope(
        cli,
        ring,
        "det-identity",
        pair_inputs(&pair),
        json!({
            "det_m": rec.det_m.to_string(),
            "res_power": rec.res_power.to_string(),
            "exponent": n - 1,
            "equal": rec.equal,
        }),
    );
    let text = format!(
        "det M = {} and Res(f, g)^{} = {}: equal\n",
        rec.det_m,
        n - 1,
        rec.res_power
    );
    Ok(Report { json, text })
}

fn index_cmd(cli: &Cli, ring: &Ring) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let rep = pair.lattice_index()?;
    let fmt_index = |v: &Option<num_bigint::BigUint>| match v {
        Some(x) => x.to_string(),
        None => "infinite/rank-deficient".to_string(),
    };
    let json = envelope(
        cli,
        ring,
        "index",
        pair_inputs(&pair),
        json!({
            "resultant": rep.resultant.to_string(),
            "predicted_index": fmt_index(&rep.predicted_index),
            "snf_index": fmt_index(&rep.snf_index),
            "invariant_factors": rep.invariant_factors.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "rank": rep.rank,
            "agree": rep.agree,
        }),
    );
    let mut text = format!(
        "Res(f, g) = {}\npredicted index N(Res)^(n-1) = {}\nSNF index = {} (invariant factors: {})\nrank = {}, agree = {}\n",
        rep.resultant,
        fmt_index(&rep.predicted_index),
        fmt_index(&rep.snf_index),
        rep.invariant_factors.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "),
        rep.rank,
        rep.agree,
    );
    if rep.predicted_index.is_none() {
        text.push_str("the generated lattice does not have maximal rank\n");
    }
    Ok(Report { json, text })
}

fn witness_json(w: &GenerationWitness) -> Value {
    match w {
        GenerationWitness::FieldGcd(d) => json!({"kind": "field-gcd", "gcd": d.to_string()}),
        GenerationWitness::UnitResultant(r) => {
            json!({"kind": "unit-resultant", "resultant": r.to_string()})
        }
        GenerationWitness::NonUnitResultant(r) => {
            json!({"kind": "non-unit-resultant", "resultant": r.to_string()})
        }
        GenerationWitness::ObstructingPrimes { checked, obstructions } => json!({
            "kind": "obstructing-primes",
            "checked": checked.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "obstructions": obstructions.iter().map(|o| json!({
                "prime": o.prime.to_string(),
                "common_factor": o.common_factor.to_string(),
            })).collect::<Vec<_>>(),
        }),
        GenerationWitness::CommonFactor(d) => {
            json!({"kind": "common-factor", "gcd": d.to_string()})
        }
        GenerationWitness::ConstantGenerator { generator, bound } => json!({
            "kind": "constant-generator",
            "generator": generator.to_string(),
            "bound": bound,
        }),
    }
}

fn witness_text(w: &GenerationWitness) -> String {
    match w {
        GenerationWitness::FieldGcd(d) => format!("gcd of the inputs: {d}"),
        GenerationWitness::UnitResultant(r) => format!("Res(f, g) = {r} is a unit"),
        GenerationWitness::NonUnitResultant(r) => format!("Res(f, g) = {r} is not a unit"),
        GenerationWitness::ObstructingPrimes { checked, obstructions } => {
            if obstructions.is_empty() {
                format!(
                    "no obstruction among the candidate primes {{{}}}",
                    checked.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
                )
            } else {
                obstructions
                    .iter()
                    .map(|o| format!("prime {} with common factor {}", o.prime, o.common_factor))
                    .collect::<Vec<_>>()
                    .join("; ")
            }
        }
        GenerationWitness::CommonFactor(d) => {
            format!("common factor {d} obstructs at every prime")
        }
        GenerationWitness::ConstantGenerator { generator, bound } => format!(
            "constant generator {generator} of the shift lattice (stable at bound {bound})"
        ),
    }
}

fn generates_cmd(cli: &Cli, ring: &Ring, extra: &[String]) -> Result<Report, Error> {
    let polys = gather_polys(cli, ring, extra)?;
    let verdict = generates_full(&polys)?;
    let inputs = Value::Array(polys.iter().map(|p| Value::String(p.to_string())).collect());
    let json = envelope(
        cli,
        ring,
        "generates",
        json!({"polys": inputs}),
        json!({
            "generates": verdict.generates,
            "witness": witness_json(&verdict.witness),
        }),
    );
    let text = format!(
        "generates M_{}({ring}): {}\nwitness: {}\n",
        polys[0].deg(),
        verdict.generates,
        witness_text(&verdict.witness)
    );
    Ok(Report { json, text })
}

fn basis_cmd(cli: &Cli, ring: &Ring) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let rep = pair.rank_and_basis()?;
    let monomial = |&(i, j): &(usize, usize)| {
        presentation::Word::from_exponents(i, j).to_string()
    };
    let json = envelope(
        cli,
        ring,
        "basis",
        pair_inputs(&pair),
        json!({
            "gcd_degree": rep.gcd_degree,
            "rank": rep.rank,
            "h": rep.h.to_string(),
            "basis_monomials": rep.basis_monomials.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "oracle_dimension": rep.oracle_dimension,
        }),
    );
    let text = format!(
        "deg gcd(f, g) = {}\nrank = {}\nh = f / gcd = {}\nbasis: {}\noracle dimension: {}\n",
        rep.gcd_degree,
        rep.rank,
        rep.h,
        rep.basis_monomials.iter().map(monomial).collect::<Vec<_>>().join(", "),
        rep.oracle_dimension.map_or("n/a".to_string(), |d| d.to_string()),
    );
    Ok(Report { json, text })
}

fn relations_cmd(cli: &Cli, ring: &Ring) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let a = pair.a_sequence()?;
    let seq = pair.p_sequence()?;
    let json = envelope(
        cli,
        ring,
        "relations",
        pair_inputs(&pair),
        json!({
            "s": pair.s().to_string(),
            "a": a.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "p": seq.p.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "P": seq.big_p.iter().map(table_json).collect::<Vec<_>>(),
            "identities": "verified",
        }),
    );
    let mut text = format!("s = g - f = {}\n", pair.s());
    text.push_str(&format!(
        "a = [{}]\n",
        a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    ));
    for (j, p) in seq.p.iter().enumerate() {
        text.push_str(&format!("p_{j} = {p}\n"));
    }
    for (j, t) in seq.big_p.iter().enumerate() {
        let nf = presentation::NormalForm { ring: ring.clone(), coeffs: t.clone() };
        text.push_str(&format!("P_{j} = {nf}\n"));
    }
    text.push_str("scalar, lowering, and swap identities: verified\n");
    Ok(Report { json, text })
}

fn solve_q_cmd(cli: &Cli, ring: &Ring) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let sol = pair.solve_q()?;
    let json = envelope(
        cli,
        ring,
        "solve-q",
        pair_inputs(&pair),
        json!({
            "particular": matrix_json(&sol.particular),
            "kernel": sol.kernel.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
            "unique": sol.unique,
            "kernel_full": sol.kernel_full,
        }),
    );
    let mut text = format!("particular solution P with g(C) P = -f(D):\n{}", sol.particular);
    if sol.unique {
        text.push_str("g(C) is invertible: the solution is unique\n");
    } else if sol.kernel_full {
        text.push_str("g(C) = 0: every matrix is a solution\n");
    } else {
        text.push_str(&format!(
            "solutions differ by columns from ker g(C) of dimension {}\n",
            sol.kernel.len()
        ));
    }
    Ok(Report { json, text })
}

fn pick_variant(
    pair: &CompanionPair,
    requested: Option<&str>,
) -> Result<Variant, Error> {
    match requested {
        Some(s) => Variant::parse(s),
        None => Variant::auto(pair),
    }
}

fn presentation_cmd(
    cli: &Cli,
    ring: &Ring,
    variant: Option<&str>,
    verify: bool,
) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let variant = pick_variant(&pair, variant)?;
    if verify {
        let rep = presentation::verify_presentation(
            &pair,
            variant,
            cli.trials,
            cli.max_word_len,
            cli.seed,
        )?;
        let json = envelope(
            cli,
            ring,
            "verify-presentation",
            pair_inputs(&pair),
            json!({
                "variant": rep.variant.to_string(),
                "relations_checked": rep.relations_checked,
                "words_checked": rep.words_checked,
                "splits_checked": rep.splits_checked,
                "basis_size": rep.basis_size,
                "basis_rank": rep.basis_rank,
                "seed": cli.seed,
                "ok": true,
            }),
        );
        let text = format!(
            "variant {}: {} relations hold, {} random words and {} splits reduce soundly, \
             basis of size {} has full rank {} (seed {})\n",
            rep.variant,
            rep.relations_checked,
            rep.words_checked,
            rep.splits_checked,
            rep.basis_size,
            rep.basis_rank,
            cli.seed,
        );
        Ok(Report { json, text })
    } else {
        let doc = presentation::emit_presentation(&pair, variant)?;
        let json = envelope(cli, ring, "presentation", pair_inputs(&pair), doc.to_json());
        Ok(Report { json, text: doc.to_text() })
    }
}

fn commutant_cmd(cli: &Cli, ring: &Ring) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let rep = pair.commutant()?;
    let json = envelope(
        cli,
        ring,
        "commutant",
        pair_inputs(&pair),
        json!({
            "dimension": rep.dimension,
            "basis": rep.basis.iter().map(matrix_json).collect::<Vec<_>>(),
        }),
    );
    let mut text = format!("commutant dimension = {}\n", rep.dimension);
    for (k, b) in rep.basis.iter().enumerate() {
        text.push_str(&format!("basis[{k}]:\n{b}"));
    }
    Ok(Report { json, text })
}

fn invariant_subspaces_cmd(
    cli: &Cli,
    ring: &Ring,
    extra: &[String],
    factors: &[String],
) -> Result<Report, Error> {
    let polys = gather_polys(cli, ring, extra)?;
    let parsed_factors = factors
        .iter()
        .map(|s| Poly::parse(ring, s))
        .collect::<Result<Vec<_>, _>>()?;
    let factor_opt = if parsed_factors.is_empty() { None } else { Some(parsed_factors.as_slice()) };
    let rep = common_invariant_subspaces(&polys, factor_opt)?;
    let inputs = Value::Array(polys.iter().map(|p| Value::String(p.to_string())).collect());
    let json = envelope(
        cli,
        ring,
        "invariant-subspaces",
        json!({"polys": inputs}),
        json!({
            "gcd": rep.gcd.to_string(),
            "exists_nontrivial": rep.exists_nontrivial,
            "subspaces": rep.subspaces.iter().map(|w| json!({
                "factor": w.factor.to_string(),
                "basis": w.basis.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
                "verified": w.verified,
            })).collect::<Vec<_>>(),
        }),
    );
    let mut text = format!(
        "gcd of the family: {}\nnontrivial common invariant subspace exists: {}\n",
        rep.gcd, rep.exists_nontrivial
    );
    for w in &rep.subspaces {
        text.push_str(&format!(
            "factor {}: subspace of dimension {} with basis {}; invariance verified\n",
            w.factor,
            w.basis.len(),
            w.basis
                .iter()
                .map(|v| format!(
                    "({})",
                    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
                ))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    Ok(Report { json, text })
}

fn oracle_span_cmd(cli: &Cli, ring: &Ring) -> Result<Report, Error> {
    let pair = parse_pair(cli, ring)?;
    let out = span_closure_oracle(&[pair.c().clone(), pair.d().clone()])?;
    let json = envelope(
        cli,
        ring,
        "oracle-span",
        pair_inputs(&pair),
        json!({
            "dimension": out.dimension,
            "ordered_span_closed": out.ordered_span_closed,
            "lattice_basis": out.lattice_basis.as_ref().map(|h| matrix_json(&h.basis)),
        }),
    );
    let mut text = format!(
        "closure dimension = {} (full algebra needs {})\n",
        out.dimension,
        pair.n() * pair.n()
    );
    if let Some(closed) = out.ordered_span_closed {
        text.push_str(&format!("ordered products C^i D^j already closed: {closed}\n"));
    }
    if let Some(h) = &out.lattice_basis {
        text.push_str(&format!("lattice basis (Hermite form):\n{}", h.basis));
    }
    Ok(Report { json, text })
}
