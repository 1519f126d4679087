//! Command-line front end. `dispatch` runs one request against the
//! library and returns the exit status with a JSON report; `emit_report`
//! renders that report canonically (sorted keys, fixed layout).

use std::cell::RefCell;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::bundles::{
    codim_hef, dim_hef, hurwitz_dim, realizable_scrollar, theorem15_check, BundlePair,
};
use crate::error::{Error, Result};
use crate::exactalg::codec::{format_rational, form_to_json, parse_rational};
use crate::exactalg::{P1Point, PrimeField, Rationals, ScalarCodec, DEFAULT_PRIME, SMALL_PRIME_WARNING};
use crate::minimize::{minimize_at, partial_normalize, NormalFormCertificate};
use crate::polytopes::{
    decompose, in_q_prime, irreducible_generators, lift_scrollar, pi_geo_finite, projection_report, q_region,
    rho_geo, EBox, GENERATOR_LIFTS,
};
use crate::sections::{sample_section, AnySection, Section, QUAD_MONOMIALS};
use crate::singularity::{singular_scan, ScanStatus, DEFAULT_M_MAX};
use crate::strata::counting_verdict;

pub const PRIME_ENV: &str = "QUINTIC_PRIME";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportLevel {
    Full,
    Summary,
}

#[derive(Parser, Clone, Debug)]
#[command(name = "quintic", version, about = "Quintic covers of P^1: realizability, sections, singularities, strata and densities")]
pub struct RunRequest {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every random choice made by the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Default prime modulus for finite-field work.
    #[arg(long, global = true, env = PRIME_ENV, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, global = true, value_enum, default_value_t = ReportLevel::Full)]
    pub report: ReportLevel,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Is e / (g + 4) in the scrollar polytope?
    Realizable {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        e: Vec<i64>,
    },
    /// Realizability conditions and stratum dimension for a pair (E, F).
    CheckBundles {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        e: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f: Vec<i64>,
    },
    /// A random section for a pair, over Q or a prime field.
    Sample {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        e: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f: Vec<i64>,
        /// "Q", "p" for the default prime, or an explicit prime.
        #[arg(long, default_value = "p")]
        field: String,
    },
    /// The five quadrics of a section.
    Pfaffians {
        /// Section JSON, or "-" for stdin.
        #[arg(long)]
        input: PathBuf,
    },
    /// Finite-field singularity scan of a section.
    Singular {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: usize,
    },
    /// Normal-form certificate for a section singular above a point.
    Minimize {
        #[arg(long)]
        input: PathBuf,
        /// Base point as "s,t".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Partial normalization along a certificate.
    Normalize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Dimension counts for the normal-form loci of a realizable pair.
    Strata {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        e: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f: Vec<i64>,
    },
    /// Compare the e-projection of Q with P level by level.
    ProjectVerify {
        #[arg(long)]
        gmax: i64,
    },
    /// Generators of the scrollar monoid and their lifts.
    Generators,
    /// An f with (e, f) realizable, built from generator lifts.
    Lift {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        e: Vec<i64>,
    },
    /// The limit density at a normalized e, and optionally the genus-g value.
    Density {
        /// Four rationals "n/d" summing to 1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        e: Vec<String>,
        #[arg(long)]
        g: Option<i64>,
        /// Half-width of the window for the finite-genus value.
        #[arg(long, default_value = "0")]
        radius: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Realizable { .. } => "realizable",
            Command::CheckBundles { .. } => "check-bundles",
            Command::Sample { .. } => "sample",
            Command::Pfaffians { .. } => "pfaffians",
            Command::Singular { .. } => "singular",
            Command::Minimize { .. } => "minimize",
            Command::Normalize { .. } => "normalize",
            Command::Strata { .. } => "strata",
            Command::ProjectVerify { .. } => "project-verify",
            Command::Generators => "generators",
            Command::Lift { .. } => "lift",
            Command::Density { .. } => "density",
        }
    }
}

/// Exit status and report of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

struct Ctx<'a> {
    req: &'a RunRequest,
    warnings: Vec<String>,
}

impl Ctx<'_> {
    fn full(&self) -> bool {
        self.req.report == ReportLevel::Full
    }

    fn prime_field(&mut self, p: u64) -> Result<PrimeField> {
        let f = PrimeField::new(p)?;
        if p < SMALL_PRIME_WARNING {
            let w = format!("prime {p} is below {SMALL_PRIME_WARNING}; finite-field results may not reflect characteristic 0");
            if !self.warnings.contains(&w) {
                self.warnings.push(w);
            }
        }
        Ok(f)
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::FieldMismatch(_) => "field-mismatch",
        Error::InvalidField(_) => "invalid-field",
        Error::Degenerate(_) => "degenerate",
        Error::InvalidBundle(_) => "invalid-bundle",
        Error::InvalidSection(_) => "invalid-section",
        Error::InvalidGroupElement(_) => "invalid-group-element",
        Error::Precondition(_) => "precondition",
        Error::NotOnCurve(_) => "not-on-curve",
        Error::NotSingular => "not-singular",
        Error::IrrationalSingularPoint => "irrational-singular-point",
        Error::InvalidCertificate(_) => "invalid-certificate",
        Error::Unbounded => "unbounded",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::NotInMonoid(_) => "not-in-monoid",
        Error::Parse(_) => "parse",
    }
}

/// The exit-2 report for a request that could not be carried out.
pub fn error_report(command: Option<&str>, kind: &str, message: &str) -> Value {
    json!({
        "tool": "quintic",
        "version": VERSION,
        "command": command,
        "error": { "kind": kind, "message": message },
    })
}

pub fn emit_report(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn dispatch(req: &RunRequest) -> Outcome {
    let mut ctx = Ctx { req, warnings: Vec::new() };
    let name = req.command.name();
    match run(&mut ctx) {
        Ok((affirmative, result)) => {
            let code = if affirmative { 0 } else { 1 };
            Outcome {
                code,
                report: json!({
                    "tool": "quintic",
                    "version": VERSION,
                    "command": name,
                    "seed": req.seed,
                    "report": if ctx.full() { "full" } else { "summary" },
                    "verdict": if affirmative { "affirmative" } else { "negative" },
                    "result": result,
                    "warnings": ctx.warnings,
                }),
            }
        }
        Err(e) => Outcome { code: 2, report: error_report(Some(name), error_kind(&e), &e.to_string()) },
    }
}

fn array<const N: usize>(v: &[i64], what: &str) -> Result<[i64; N]> {
    v.try_into()
        .map_err(|_| Error::Parse(format!("{what} needs {N} comma-separated integers, got {}", v.len())))
}

fn pair(g: i64, e: &[i64], f: &[i64]) -> Result<BundlePair> {
    BundlePair::new(g, array(e, "--e")?, array(f, "--f")?)
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Reads `key` out of a quintic report, or the whole document otherwise,
/// so reports can be piped from one command into the next.
fn read_payload(path: &PathBuf, key: &str) -> Result<Value> {
    let v = read_json(path)?;
    if v.get("tool").and_then(Value::as_str) == Some("quintic") {
        return v
            .get("result")
            .and_then(|r| r.get(key))
            .cloned()
            .ok_or_else(|| Error::Parse(format!("{} is a report without result.{key}", path.display())));
    }
    Ok(v)
}

fn rat(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn run(ctx: &mut Ctx) -> Result<(bool, Value)> {
    let full = ctx.full();
    let req = ctx.req;
    match &req.command {
        Command::Realizable { g, e } => {
            let e = array::<4>(e, "--e")?;
            let ok = realizable_scrollar(&e, *g)?;
            let mut out = json!({ "g": g, "e": e, "realizable": ok });
            if ok && full {
                out["lift"] = json!(lift_scrollar(&e)?);
            }
            Ok((ok, out))
        }
        Command::CheckBundles { g, e, f } => {
            let bp = pair(*g, e, f)?;
            let verdict = theorem15_check(&bp);
            let ok = verdict.is_satisfied();
            let mut out = json!({
                "pair": bp,
                "conditions": verdict,
                "scrollar_realizable": realizable_scrollar(&bp.e, bp.g)?,
                "realizable": ok,
            });
            if ok {
                let codim = codim_hef(&bp)?;
                out["codim_hef"] = json!(codim);
                out["dim_hef"] = json!(hurwitz_dim(bp.g) - codim);
                out["parameter_count"] = json!(dim_hef(&bp));
            }
            if full {
                let d: Map<String, Value> =
                    bp.degree_matrix().entries().into_iter().map(|((i, j, k), d)| (format!("{k},{i},{j}"), json!(d))).collect();
                out["degrees"] = Value::Object(d);
            }
            Ok((ok, out))
        }
        Command::Sample { g, e, f, field } => {
            let bp = pair(*g, e, f)?;
            let sec = match field.as_str() {
                "Q" | "q" => AnySection::Rational(sample_section(&bp, &Rationals, req.seed)),
                "p" => {
                    let fp = ctx.prime_field(req.prime)?;
                    AnySection::Prime(sample_section(&bp, &fp, req.seed))
                }
                other => {
                    let p = other.parse::<u64>().map_err(|_| Error::Parse(format!("--field {other:?} is not Q, p or a prime")))?;
                    let fp = ctx.prime_field(p)?;
                    AnySection::Prime(sample_section(&bp, &fp, req.seed))
                }
            };
            let j = sec.to_json();
            let out = if full {
                json!({ "section": j })
            } else {
                let n = j["a"].as_object().map_or(0, Map::len);
                json!({ "base": j["base"], "field": j["field"], "nonzero_entries": n })
            };
            Ok((true, out))
        }
        Command::Pfaffians { input } => {
            let out = match AnySection::from_json(&read_payload(input, "section")?)? {
                AnySection::Rational(s) => pfaffian_json(&s, full),
                AnySection::Prime(s) => pfaffian_json(&s, full),
            };
            Ok((true, out))
        }
        Command::Singular { input, m_max } => {
            let sec = match AnySection::from_json(&read_payload(input, "section")?)? {
                AnySection::Prime(s) => {
                    ctx.prime_field(s.field().modulus())?;
                    s
                }
                AnySection::Rational(s) => {
                    let fp = ctx.prime_field(req.prime)?;
                    reduce_section(&s, fp)?
                }
            };
            let report = singular_scan(&sec, *m_max)?;
            let smooth = report.status == ScanStatus::SmoothScanned;
            Ok((smooth, report.to_json(full)))
        }
        Command::Minimize { input, point } => match AnySection::from_json(&read_payload(input, "section")?)? {
            AnySection::Rational(s) => minimize_json(&s, point),
            AnySection::Prime(s) => minimize_json(&s, point),
        },
        Command::Normalize { input, cert } => {
            let cert = read_payload(cert, "certificate")?;
            let out = match AnySection::from_json(&read_payload(input, "section")?)? {
                AnySection::Rational(s) => normalize_json(&s, &cert, full, &mut ctx.warnings)?,
                AnySection::Prime(s) => normalize_json(&s, &cert, full, &mut ctx.warnings)?,
            };
            Ok((true, out))
        }
        Command::Strata { g, e, f } => {
            let bp = pair(*g, e, f)?;
            let report = counting_verdict(&bp)?;
            let mut out = report.to_json();
            if !full {
                out["maximal_triples"] = json!(report.triples.len());
            }
            out["pair"] = json!(bp);
            Ok((report.pass(), out))
        }
        Command::ProjectVerify { gmax } => {
            if *gmax < 0 {
                return Err(Error::Precondition(format!("--gmax {gmax} is negative")));
            }
            let levels = projection_report(&q_region(), *gmax);
            let ok = levels.iter().all(|l| l.ok());
            let mut out = json!({ "gmax": gmax, "ok": ok });
            out["levels"] = if full {
                json!(levels)
            } else {
                json!(levels.iter().map(|l| json!({ "g": l.g, "p_points": l.p_points, "q_points": l.q_points })).collect::<Vec<_>>())
            };
            Ok((ok, out))
        }
        Command::Generators => {
            let gens = irreducible_generators();
            let lifts: Vec<Value> = GENERATOR_LIFTS.iter().map(|(e, f)| json!({ "e": e, "f": f })).collect();
            let lifts_ok = GENERATOR_LIFTS.iter().all(|(e, f)| in_q_prime(e, f).unwrap_or(false));
            let matches = gens.iter().eq(GENERATOR_LIFTS.iter().map(|(e, _)| e));
            Ok((lifts_ok && matches, json!({ "generators": gens, "lifts": lifts, "lifts_in_q_prime": lifts_ok })))
        }
        Command::Lift { e } => {
            let e = array::<4>(e, "--e")?;
            match decompose(&e) {
                Ok(mult) => {
                    let f = lift_scrollar(&e)?;
                    Ok((true, json!({ "e": e, "f": f, "decomposition": mult, "in_q_prime": in_q_prime(&e, &f)? })))
                }
                Err(Error::NotInMonoid(msg)) => Ok((false, json!({ "e": e, "in_monoid": false, "reason": msg }))),
                Err(err) => Err(err),
            }
        }
        Command::Density { e, g, radius } => {
            let e: Vec<BigRational> = e.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
            let rho = rho_geo(&e)?;
            let mut out = json!({ "e": e.iter().map(rat).collect::<Vec<_>>(), "rho_geo": rat(&rho) });
            if let Some(g) = g {
                if *g < 0 {
                    return Err(Error::Precondition(format!("--g {g} is negative")));
                }
                let r = parse_rational(radius)?;
                let x: [BigRational; 4] = e.clone().try_into().expect("rho_geo checked four coordinates");
                let pi = pi_geo_finite(&EBox::around(&x, &r), *g);
                out["pi_geo_finite"] = json!({ "g": g, "radius": rat(&r), "value": rat(&pi) });
            }
            Ok((true, out))
        }
    }
}

fn pfaffian_json<F: ScalarCodec>(sec: &Section<F>, full: bool) -> Value {
    let pf = sec.pfaffians();
    let f = sec.field();
    let quads: Vec<Value> = pf
        .quads
        .iter()
        .map(|q| {
            let m: Map<String, Value> = QUAD_MONOMIALS
                .iter()
                .zip(q)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&(a, b), c)| {
                    let v = if full { form_to_json(f, c) } else { json!(c.deg()) };
                    (format!("x{}x{}", a + 1, b + 1), v)
                })
                .collect();
            Value::Object(m)
        })
        .collect();
    json!({ "base": sec.base(), "field": f.spec().to_json(), "quadrics": quads, "zero": pf.is_zero() })
}

/// Reduction of a rational section modulo p.
fn reduce_section(sec: &Section<Rationals>, fp: PrimeField) -> Result<Section<PrimeField>> {
    let failure = RefCell::new(None);
    let out = sec.lift(fp, |r| {
        fp.reduce_rational(r).unwrap_or_else(|e| {
            failure.borrow_mut().get_or_insert(e);
            0
        })
    });
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn parse_point<F: ScalarCodec>(f: &F, s: &str) -> Result<P1Point<F::E>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(Error::Parse(format!("point {s:?} must be \"s,t\"")));
    };
    let scalar = |x: &str| -> Result<F::E> {
        let v = match x.parse::<i64>() {
            Ok(n) => json!(n),
            Err(_) => json!(x),
        };
        f.decode(&v)
    };
    P1Point::new(f, scalar(a)?, scalar(b)?)
}

fn minimize_json<F: ScalarCodec>(sec: &Section<F>, point: &str) -> Result<(bool, Value)> {
    let p = parse_point(sec.field(), point)?;
    match minimize_at(sec, &p) {
        Ok(cert) => Ok((true, json!({ "singular": true, "certificate": cert.to_json(sec.field()) }))),
        Err(Error::NotSingular) => Ok((false, json!({ "singular": false }))),
        Err(e) => Err(e),
    }
}

fn normalize_json<F: ScalarCodec>(sec: &Section<F>, cert: &Value, full: bool, warnings: &mut Vec<String>) -> Result<Value> {
    let cert = NormalFormCertificate::from_json(sec.field(), cert)?;
    let n = partial_normalize(sec, &cert)?;
    if let Some(w) = &n.warning {
        warnings.push(w.clone());
    }
    let mut out = json!({
        "base": n.base,
        "genus_drop": sec.base().g - n.base.g,
    });
    if full {
        out["section"] = n.section.to_json();
    }
    Ok(out)
}
