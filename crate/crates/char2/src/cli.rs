//! The `char2` command line.
//!
//! Exit codes: 0 on success, 1 when the answer is "no" or "none", 2 when the
//! command could not run (usage, parse or IO errors).

use std::io::Write;
use std::path::{Path, PathBuf};

use char2_core::algebra::factor::poly_factor_seeded;
use char2_core::algebra::{divisor_of, make_constant_set_v, ord_at, FieldSpec, Poly, RatFunc};
use char2_core::artin_schreier::{self, AsDegree, AsProblem};
use char2_core::certificates::{
    build_s1_certificate, build_t1_certificate, check_power_relation, lemma_sigma_search, member_s, member_t,
    search_basecase, CertError,
};
use char2_core::certificates::s1::{build_s1_certificate_over, check_s1_certificate};
use char2_core::certificates::t1::check_t1_certificate;
use char2_core::certificates::Base;
use char2_core::expr;
use char2_core::reducer::{
    check_ksystem, compile, embed, expand, parse_nsystem, solve_nat, KAssignment, KSystem, NAssignment, NSystem,
};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::format::{self, Assignment, Certificate, FieldDto};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "char2", version, about = "Exact arithmetic and certificates over GF(2^m)(t)")]
pub struct Cli {
    /// Extension degree m of the constant field GF(2^m).
    #[arg(long, global = true, default_value_t = 8, value_name = "M")]
    pub field: u32,
    /// Modulus of GF(2^m) in hex (default: smallest irreducible).
    #[arg(long, global = true, value_name = "HEX")]
    pub modulus: Option<String>,
    /// Size of the constant set V used by certificates.
    #[arg(long, global = true, default_value_t = 7, value_name = "K")]
    pub vsize: usize,
    /// Seed for randomized steps and corpora.
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of an expression.
    Eval { expr: String },
    /// Order of an expression at a place (`inf` or a monic irreducible).
    Ord {
        #[arg(long)]
        place: String,
        expr: String,
    },
    /// Principal divisor of a nonzero expression.
    Divisor { expr: String },
    /// Height (degree of the zero divisor).
    Height { expr: String },
    /// Factor numerator and denominator into irreducibles.
    Factor { expr: String },
    /// Solve z^q + z = beta for q = 2 or 4.
    AsSolve {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["2", "4"]))]
        deg: String,
        beta: String,
    },
    /// Build the certificate that t^(4^s) lies in S.
    CertifyS {
        #[arg(long)]
        s: u32,
        /// Write the certificate over 1/t.
        #[arg(long)]
        inverted: bool,
    },
    /// Build the certificate that u^(4^s) lies in T(u), u = t^2 + t + 1/x.
    CertifyT {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        x: String,
    },
    /// Check a certificate file.
    VerifyCert { file: PathBuf },
    /// Decide y = x^(2^s) through the equational power relation.
    PowerRel {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Membership of w in S; prints k with w = t^(2^k).
    MemberS { w: String },
    /// Membership of w in T(u); prints k with w = u^(2^k).
    MemberT {
        #[arg(long)]
        x: String,
        w: String,
    },
    /// Compile a system over (N, +, |2) into a system over K.
    Compile { file: PathBuf },
    /// Find the lexicographically least solution with values below B.
    SolveNat {
        #[arg(long, value_name = "B")]
        bound: u64,
        file: PathBuf,
    },
    /// Check an assignment against a system (DSL text or compiled JSON).
    Check {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        assign: PathBuf,
    },
    /// Print the polynomial equations of a compiled system.
    Expand {
        #[arg(long)]
        system: PathBuf,
    },
    /// Search y of bounded height with y + t and 1/y + 1/t both z^4 + z
    /// images that are not t^(4^k).
    SearchBasecase {
        #[arg(long)]
        height: u32,
        #[arg(long)]
        smax: u32,
    },
    /// Search (sigma, mu) with t(sigma^4 + sigma) = mu^4 + mu and sigma outside
    /// the constant kernel.
    SearchSigma {
        #[arg(long)]
        height: u32,
    },
    /// Print random elements of bounded height.
    Sample {
        #[arg(long)]
        height: u32,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Msg(String),
    #[error(transparent)]
    Format(#[from] format::FormatError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Algebra(#[from] char2_core::AlgebraError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn msg(s: impl Into<String>) -> CliError {
    CliError::Msg(s.into())
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    field: FieldSpec,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn json(&self) -> bool {
        self.cli.format == OutputFormat::Json
    }

    fn parse(&self, s: &str) -> Result<RatFunc, CliError> {
        expr::parse(s, self.field)
            .map_err(|e| msg(format!("cannot parse '{s}' at column {}: {}", e.column(s), e.message)))
    }

    /// Prints `text` or the JSON record, depending on the format.
    fn emit(&mut self, text: impl std::fmt::Display, record: Value) -> Result<(), CliError> {
        if self.json() {
            writeln!(self.out, "{record}")?;
        } else {
            writeln!(self.out, "{text}")?;
        }
        Ok(())
    }

    fn v_set(&self) -> Result<Vec<char2_core::FieldElem>, CliError> {
        Ok(make_constant_set_v(self.field, self.cli.vsize)?)
    }
}

fn field_of(cli: &Cli) -> Result<FieldSpec, CliError> {
    Ok(match &cli.modulus {
        Some(hex) => FieldDto { m: cli.field, modulus: hex.clone() }.to_spec()?,
        None if cli.field == 8 => FieldSpec::gf256(),
        None => FieldSpec::with_degree(cli.field)?,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| msg(format!("{}: {e}", path.display())))
}

fn read_nsystem(path: &Path) -> Result<NSystem, CliError> {
    let text = read(path)?;
    parse_nsystem(&text).map_err(|e| msg(format!("{}:{e}", path.display())))
}

/// A system file is either compiled JSON or DSL text.
fn read_system(path: &Path) -> Result<(KSystem, Option<NSystem>), CliError> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        return Ok((format::ksystem_from_json(&text)?, None));
    }
    let sys = parse_nsystem(&text).map_err(|e| msg(format!("{}:{e}", path.display())))?;
    Ok((compile(&sys), Some(sys)))
}

fn none(ctx: &mut Ctx, text: &str, record: Value) -> Result<i32, CliError> {
    ctx.emit(format!("none: {text}"), record)?;
    Ok(1)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let field = field_of(cli)?;
    let mut ctx = Ctx { cli, field, out };
    let rf = |r: &RatFunc| expr::to_string(r);
    match &cli.command {
        Command::Eval { expr } => {
            let v = ctx.parse(expr)?;
            ctx.emit(rf(&v), json!({ "value": rf(&v) }))?;
        }
        Command::Ord { place, expr } => {
            let p = expr::parse_place(place, field)
                .map_err(|e| msg(format!("cannot parse place '{place}': {}", e.message)))?;
            let v = ctx.parse(expr)?;
            if v.is_zero() {
                return Err(msg("the order of 0 is infinite"));
            }
            let n = ord_at(&v, &p)?;
            ctx.emit(n, json!({ "place": p.to_string(), "ord": n }))?;
        }
        Command::Divisor { expr } => {
            let v = ctx.parse(expr)?;
            let d = divisor_of(&v)?;
            let support: Vec<Value> =
                d.iter().map(|(p, n)| json!({ "place": p.to_string(), "multiplicity": n })).collect();
            ctx.emit(&d, json!({ "divisor": support, "degree": d.degree() }))?;
        }
        Command::Height { expr } => {
            let v = ctx.parse(expr)?;
            let h = v.height()?;
            ctx.emit(h, json!({ "height": h }))?;
        }
        Command::Factor { expr } => {
            let v = ctx.parse(expr)?;
            if v.is_zero() {
                return Err(msg("0 has no factorization"));
            }
            let parts = |p: &Poly| -> Result<(String, Vec<Value>), CliError> {
                let f = poly_factor_seeded(p, cli.seed)?;
                let mut text = format!("{}", f.leading);
                let mut rec = Vec::new();
                for (pl, e) in &f.factors {
                    text.push_str(&format!(" * ({pl})^{e}"));
                    rec.push(json!({ "factor": pl.to_string(), "exponent": e }));
                }
                Ok((text, rec))
            };
            let (nt, nr) = parts(v.numer())?;
            let (dt, dr) = parts(v.denom())?;
            let text = if v.denom().is_one() { nt } else { format!("{nt} / {dt}") };
            ctx.emit(text, json!({ "numerator": nr, "denominator": dr }))?;
        }
        Command::AsSolve { deg, beta } => {
            let degree = if deg == "2" { AsDegree::Two } else { AsDegree::Four };
            let b = ctx.parse(beta)?;
            match artin_schreier::solve(&AsProblem { beta: b.clone(), degree }) {
                Some(sol) => {
                    let kernel: Vec<String> = sol.kernel.iter().map(|c| c.to_string()).collect();
                    ctx.emit(rf(&sol.z), json!({ "z": rf(&sol.z), "kernel": kernel }))?;
                }
                None => {
                    let text = format!("z^{} + z = {} has no solution in K", degree.exponent(), rf(&b));
                    return none(&mut ctx, &text, json!({ "z": null }));
                }
            }
        }
        Command::CertifyS { s, inverted } => {
            let v = ctx.v_set()?;
            let cert = if *inverted {
                build_s1_certificate_over(field, Base::InvT, *s, &v)
            } else {
                build_s1_certificate(field, *s, &v)
            };
            writeln!(ctx.out, "{}", format::certificate_to_json(&Certificate::S1(cert)))?;
        }
        Command::CertifyT { s, x } => {
            let x = ctx.parse(x)?;
            let v = ctx.v_set()?;
            let cert = build_t1_certificate(&x, *s, &v)?;
            writeln!(ctx.out, "{}", format::certificate_to_json(&Certificate::T1(cert)))?;
        }
        Command::VerifyCert { file } => {
            let cert = format::certificate_from_json(&read(file)?)?;
            let result = match &cert {
                Certificate::S1(c) => check_s1_certificate(c).map_err(|f| f.to_string()),
                Certificate::T1(c) => check_t1_certificate(c).map_err(|f| f.to_string()),
            };
            match result {
                Ok(()) => ctx.emit("ok", json!({ "valid": true }))?,
                Err(f) => {
                    ctx.emit(format!("invalid: {f}"), json!({ "valid": false, "failure": f }))?;
                    return Ok(1);
                }
            }
        }
        Command::PowerRel { x, y } => {
            let (x, y) = (ctx.parse(x)?, ctx.parse(y)?);
            match check_power_relation(&x, &y)? {
                Some(rel) => ctx.emit(
                    format!("s = {} (r = {}, j = {})", rel.s, rel.r, rel.j),
                    json!({ "s": rel.s, "r": rel.r, "j": rel.j }),
                )?,
                None => {
                    let text = format!("{} is not ({})^(2^s) for any s", rf(&y), rf(&x));
                    return none(&mut ctx, &text, json!({ "s": null }));
                }
            }
        }
        Command::MemberS { w } => {
            let w = ctx.parse(w)?;
            let v = ctx.v_set()?;
            match member_s(&w, &v)? {
                Some(k) => ctx.emit(k, json!({ "k": k }))?,
                None => return none(&mut ctx, &format!("{} is not t^(2^k)", rf(&w)), json!({ "k": null })),
            }
        }
        Command::MemberT { x, w } => {
            let (x, w) = (ctx.parse(x)?, ctx.parse(w)?);
            let v = ctx.v_set()?;
            match member_t(&x, &w, &v)? {
                Some(k) => ctx.emit(k, json!({ "k": k }))?,
                None => return none(&mut ctx, &format!("{} is not u^(2^k)", rf(&w)), json!({ "k": null })),
            }
        }
        Command::Compile { file } => {
            let ks = compile(&read_nsystem(file)?);
            if ctx.json() {
                writeln!(ctx.out, "{}", format::ksystem_to_json(&ks))?;
            } else {
                write!(ctx.out, "{ks}")?;
            }
        }
        Command::SolveNat { bound, file } => {
            let sys = read_nsystem(file)?;
            match solve_nat(&sys, *bound) {
                Some(na) => {
                    if ctx.json() {
                        writeln!(ctx.out, "{}", format::nassignment_to_json(&sys, &na))?;
                    } else {
                        for (name, v) in sys.variables.iter().zip(&na.values) {
                            writeln!(ctx.out, "{name} = {v}")?;
                        }
                    }
                }
                None => {
                    let text = format!("no solution with values below {bound}");
                    return none(&mut ctx, &text, json!({ "values": null }));
                }
            }
        }
        Command::Check { system, assign } => {
            let (ks, nsys) = read_system(system)?;
            let (asg, afield) = format::assignment_from_json(&read(assign)?, field)?;
            let ka = match asg {
                Assignment::Nat(map) => {
                    let names = nat_names(&ks, nsys.as_ref());
                    let values = format::ordered(&names, &map)?;
                    if let Some(sys) = &nsys {
                        let na = NAssignment { values: values.clone() };
                        for i in na.failures(sys) {
                            writeln!(ctx.out, "# over N, fails: {}", sys.atom_to_string(&sys.atoms[i]))?;
                        }
                    }
                    embed(&ks, &NAssignment { values }, afield)
                }
                Assignment::K(map) => KAssignment { values: format::ordered(&ks.variables, &map)? },
            };
            let result = check_ksystem(&ks, &ka);
            if result.holds() {
                ctx.emit("ok", json!({ "holds": true }))?;
            } else {
                let fails: Vec<Value> = result
                    .failures
                    .iter()
                    .map(|&i| json!({ "atom": i, "text": ks.atom_to_string(&ks.atoms[i]), "origin": ks.origin[i] }))
                    .collect();
                let mut text = String::from("fails:");
                for &i in &result.failures {
                    text.push_str(&format!("\n  atom {i}: {}", ks.atom_to_string(&ks.atoms[i])));
                    if let Some(n) = ks.origin[i] {
                        text.push_str(&format!(" (from atom {n} over N)"));
                    }
                }
                ctx.emit(text, json!({ "holds": false, "failures": fails }))?;
                return Ok(1);
            }
        }
        Command::Expand { system } => {
            let (ks, _) = read_system(system)?;
            let v = ctx.v_set()?;
            let ex = expand(&ks, field, &v);
            let text = ex.to_text();
            let record = json!({
                "variables": ex.variables,
                "equations": ex.equation_count(),
                "constraints": text.lines().collect::<Vec<_>>(),
            });
            if ctx.json() {
                writeln!(ctx.out, "{record}")?;
            } else {
                write!(ctx.out, "{text}")?;
            }
        }
        Command::SearchBasecase { height, smax } => {
            let report = search_basecase(field, *height, *smax)?;
            let members: Vec<String> = report.members.iter().map(rf).collect();
            let counter: Vec<String> = report.counterexamples.iter().map(rf).collect();
            let text = match counter.first() {
                None => format!(
                    "examined {}, members {}, no counterexample",
                    report.examined,
                    report.members.len()
                ),
                Some(c) => format!("counterexample: {c} ({} in total)", counter.len()),
            };
            let record = json!({ "examined": report.examined, "members": members, "counterexamples": counter });
            ctx.emit(text, record)?;
            return Ok(if counter.is_empty() { 0 } else { 1 });
        }
        Command::SearchSigma { height } => {
            let pairs = lemma_sigma_search(field, *height)?;
            let kernel = artin_schreier::kernel(field, AsDegree::Four);
            let outside: Vec<&(RatFunc, RatFunc)> = pairs
                .iter()
                .filter(|(s, _)| !s.as_constant().is_some_and(|c| kernel.contains(&c)))
                .collect();
            let text = match outside.first() {
                None => format!("{} pairs, every sigma in the kernel", pairs.len()),
                Some((s, m)) => format!("counterexample: sigma = {}, mu = {}", rf(s), rf(m)),
            };
            let list: Vec<Value> =
                pairs.iter().map(|(s, m)| json!({ "sigma": rf(s), "mu": rf(m) })).collect();
            ctx.emit(text, json!({ "pairs": list, "outside_kernel": outside.len() }))?;
            return Ok(if outside.is_empty() { 0 } else { 1 });
        }
        Command::Sample { height, count } => {
            let mut rng = StdRng::seed_from_u64(cli.seed);
            for _ in 0..*count {
                let v = random_ratfunc(&mut rng, field, *height);
                ctx.emit(rf(&v), json!({ "value": rf(&v) }))?;
            }
        }
    }
    Ok(0)
}

/// Names of the N variables, in the order `embed` expects.
fn nat_names(ks: &KSystem, nsys: Option<&NSystem>) -> Vec<String> {
    match nsys {
        Some(sys) => sys.variables.clone(),
        None => ks.variables[..ks.primary]
            .iter()
            .map(|v| v.strip_prefix("z_").unwrap_or(v).to_string())
            .collect(),
    }
}

/// A uniformly drawn element `f / g` with `deg f, deg g <= height`.
pub fn random_ratfunc<R: Rng>(rng: &mut R, field: FieldSpec, height: u32) -> RatFunc {
    let q = field.order();
    let mut poly = |nonzero: bool| loop {
        let coeffs: Vec<u64> = (0..=height).map(|_| rng.random_range(0..q)).collect();
        let p = Poly::from_bits(field, &coeffs).expect("in range");
        if !nonzero || !p.is_zero() {
            return p;
        }
    };
    let n = poly(false);
    let d = poly(true);
    RatFunc::new(n, d).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("char2").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn documented_examples() {
        assert_eq!(call(&["ord", "--place", "t", "t^3/(t+1)"]).0, 0);
        assert_eq!(call(&["ord", "--place", "t", "t^3/(t+1)"]).1, "3\n");
        assert_eq!(call(&["as-solve", "--deg", "4", "t^16 + t"]).1, "t^4 + t\n");
        let (code, out, _) = call(&["power-rel", "--x", "t+1", "--y", "t^3"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("none:"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["eval"]).0, 2);
        assert_eq!(call(&["eval", "--bogus", "t"]).0, 2);
        let (code, _, err) = call(&["eval", "t +* 1"]);
        assert_eq!(code, 2);
        assert!(err.contains("column"));
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn field_flags() {
        assert_eq!(call(&["--field", "2", "eval", "#x3 * #x3"]).1, "#x2\n");
        assert_eq!(call(&["--field", "4", "--modulus", "13", "eval", "#x2^4"]).1, "#x3\n");
        assert_eq!(call(&["--field", "4", "--modulus", "11", "eval", "t"]).0, 2);
    }

    #[test]
    fn sample_depends_only_on_seed() {
        let a = call(&["--seed", "5", "sample", "--height", "3", "--count", "4"]);
        assert_eq!(a, call(&["--seed", "5", "sample", "--height", "3", "--count", "4"]));
        assert_ne!(a.1, call(&["--seed", "6", "sample", "--height", "3", "--count", "4"]).1);
    }
}
