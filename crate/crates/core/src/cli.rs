//! Batch command-line front end.
//!
//! Every subcommand reads JSON files, runs one library operation and prints
//! one report, as compact JSON (default) or as an aligned table. Domain
//! errors print `{"error":{"code":…,"message":…}}` and exit with status 1;
//! usage errors exit with status 2.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::FiniteAlgebra;
use crate::congruence::{ascending_chains, congruence_generated, congruence_lattice, is_a_congruence};
use crate::equations::{ideal_member, is_a_ideal, EqSystem};
use crate::freealg::{free_algebra, theorem_converse, theorem_forward};
use crate::geometry::{
    coordinate_algebra, descending_chain, noetherian_certificate, prefix_chain, radical_member, solve,
    zariski_closure, AlgebraicSet,
};
use crate::io::{self, LoadedAlgebra};
use crate::signature::Signature;
use crate::terms::print_term;
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "ugeom", version, about = "Algebraic geometry over finite algebras")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Algebra file.
    #[arg(long, global = true)]
    pub algebra: Option<PathBuf>,
    /// System file.
    #[arg(long, global = true)]
    pub system: Option<PathBuf>,
    /// Family member files; repeat the flag or list several.
    #[arg(long, global = true, num_args = 1..)]
    pub family: Vec<PathBuf>,
    /// Number of variables.
    #[arg(long, global = true)]
    pub vars: Option<usize>,
    /// Maximum term height accepted in input systems.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: Option<u64>,
    /// Scan cap: points of Bⁿ and table entries.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    /// Carrier cap for products and generated algebras.
    #[arg(long = "product-cap", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub product_cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub out: Format,
    /// Worker threads for point scans.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Seed for randomized subcommands; no current subcommand draws random numbers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Point-set file.
    #[arg(long, global = true)]
    pub points: Option<PathBuf>,
    /// Pair-list file.
    #[arg(long, global = true)]
    pub pairs: Option<PathBuf>,
    /// Congruence-chain file.
    #[arg(long, global = true)]
    pub chain: Option<PathBuf>,
    /// System file whose equations are the queries.
    #[arg(long, global = true)]
    pub query: Option<PathBuf>,
    /// Signature file, for commands that need no algebra.
    #[arg(long, global = true)]
    pub signature: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Solution set of a system.
    Solve,
    /// Test query equations against the radical of a point set.
    RadicalMember,
    /// Coordinate algebra of a point set (or of a system's solutions).
    Coord,
    /// Zariski closure of a point set.
    Closure,
    /// Congruence generated by a list of pairs.
    Congruence,
    /// Congruence lattice and maximal chains.
    Lattice,
    /// Membership of query equations in the ideal generated by a system.
    IdealMember,
    /// Relatively free algebra of a family.
    Free,
    /// Finite subsystem with the same solutions.
    Certify,
    /// Solution sets along the prefixes of a system.
    Chain,
    /// Forward direction of the noetherian correspondence on one system.
    TheoremForward,
    /// Converse direction on a chain of congruences of the free algebra.
    TheoremConverse,
    /// Load and check input files.
    Validate,
}

/// Parses `args` (program name first), runs, writes the report to `out`,
/// and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                eprint!("{text}");
            }
            return code;
        }
    };
    let (value, status) = match execute(&cfg) {
        Ok(v) => (v, 0),
        Err(e) => (
            json!({"error": {"code": e.code(), "message": e.to_string()}}),
            1,
        ),
    };
    let text = match cfg.out {
        Format::Json => serde_json::to_string(&value).expect("serializable"),
        Format::Table => render_table(&value),
    };
    if writeln!(out, "{}", text.trim_end()).is_err() {
        return 1;
    }
    status
}

impl RunConfig {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            scan_cap: self.cap.unwrap_or(d.scan_cap),
            product_cap: self.product_cap.unwrap_or(d.product_cap),
            jobs: self.jobs as usize,
            ..d
        }
    }

    fn need<'a>(&self, p: &'a Option<PathBuf>, flag: &str) -> Result<&'a PathBuf> {
        p.as_ref()
            .ok_or_else(|| Error::MissingInput(format!("--{flag} is required")))
    }

    fn algebra(&self) -> Result<LoadedAlgebra> {
        io::load_algebra(self.need(&self.algebra, "algebra")?)
    }

    fn system(&self, sig: &Arc<Signature>) -> Result<EqSystem> {
        let s = io::load_system(self.need(&self.system, "system")?, sig.clone())?;
        self.check_depth(&s)?;
        if let Some(n) = self.vars {
            if n != s.nvars() {
                return Err(Error::VariableMismatch(format!(
                    "--vars {n} but the system has {} variable(s)",
                    s.nvars()
                )));
            }
        }
        Ok(s)
    }

    fn query(&self, s: &EqSystem) -> Result<EqSystem> {
        let q = io::load_system(self.need(&self.query, "query")?, s.sig().clone())?;
        self.check_depth(&q)?;
        if q.vars() != s.vars() {
            return Err(Error::VariableMismatch(
                "query and system declare different variables".into(),
            ));
        }
        Ok(q)
    }

    fn check_depth(&self, s: &EqSystem) -> Result<()> {
        let Some(cap) = self.depth else {
            return Ok(());
        };
        for e in s.equations() {
            let h = e.lhs.height().max(e.rhs.height()) as u64;
            if h > cap {
                return Err(Error::cap("term height", h, cap));
            }
        }
        Ok(())
    }

    /// `--points`, else the solutions of `--system`.
    fn point_set(&self, b: &FiniteAlgebra) -> Result<AlgebraicSet> {
        if let Some(p) = &self.points {
            let y = io::load_points(p)?;
            y.check_in(b)?;
            return Ok(y);
        }
        if self.system.is_some() {
            return solve(b, &self.system(b.sig_arc())?, &self.limits());
        }
        Err(Error::MissingInput("--points or --system is required".into()))
    }

    fn nvars(&self) -> Result<usize> {
        self.vars
            .ok_or_else(|| Error::MissingInput("--vars is required".into()))
    }

    fn family(&self) -> Result<crate::freealg::Family> {
        if self.family.is_empty() {
            return Err(Error::MissingInput("--family is required".into()));
        }
        io::load_family(&self.family)
    }
}

fn execute(cfg: &RunConfig) -> Result<Value> {
    let lim = cfg.limits();
    match cfg.command {
        Command::Solve => {
            let b = cfg.algebra()?;
            let b = b.algebra();
            let s = cfg.system(b.sig_arc())?;
            Ok(to_value(solve(b, &s, &lim)?.to_json()))
        }
        Command::RadicalMember => {
            let b = cfg.algebra()?;
            let b = b.algebra();
            let y = cfg.point_set(b)?;
            let q = io::load_system(cfg.need(&cfg.query, "query")?, b.sig_arc().clone())?;
            cfg.check_depth(&q)?;
            if q.nvars() != y.n() {
                return Err(Error::VariableMismatch(format!(
                    "queries use {} variable(s), points have {}",
                    q.nvars(),
                    y.n()
                )));
            }
            let mut rows = Vec::new();
            for e in q.equations() {
                rows.push(json!({
                    "equation": q.display_equation(e),
                    "member": radical_member(b, &y, e)?,
                }));
            }
            Ok(json!({ "results": rows }))
        }
        Command::Coord => {
            let b = cfg.algebra()?;
            let b = b.algebra();
            let y = cfg.point_set(b)?;
            let g = coordinate_algebra(b, &y, &lim)?;
            let vars = crate::equations::default_vars(y.n());
            let vars = match &cfg.system {
                Some(_) if cfg.points.is_none() => cfg.system(b.sig_arc())?.vars().to_vec(),
                _ => vars,
            };
            let elements: Vec<Value> = g
                .witnesses()
                .iter()
                .zip(g.values())
                .map(|(w, v)| json!({"witness": print_term(w, b.sig(), &vars), "values": v}))
                .collect();
            Ok(json!({
                "size": g.len(),
                "points": y.points(),
                "generators": g.generators(),
                "elements": elements,
                "algebra": to_value(g.algebra().to_json()),
            }))
        }
        Command::Closure => {
            let b = cfg.algebra()?;
            let b = b.algebra();
            let y = cfg.point_set(b)?;
            Ok(to_value(zariski_closure(b, &y, &lim)?.to_json()))
        }
        Command::Congruence => {
            let l = cfg.algebra()?;
            let b = l.algebra();
            let pairs = io::load_pairs(cfg.need(&cfg.pairs, "pairs")?, b.size())?;
            let r = congruence_generated(b, &pairs);
            let mut v = to_value(r.to_json());
            if let Some(e) = &l.embedding {
                let obj = v.as_object_mut().expect("object");
                match is_a_congruence(&r, e) {
                    Ok(()) => obj.insert("a_congruence".into(), json!(true)),
                    Err(w) => {
                        obj.insert("a_congruence".into(), json!(false));
                        obj.insert("merged".into(), json!([w.0, w.1]))
                    }
                };
            }
            Ok(v)
        }
        Command::Lattice => {
            let l = cfg.algebra()?;
            let b = l.algebra();
            let lattice = congruence_lattice(b, &lim)?;
            let chains = ascending_chains(b, l.embedding.as_ref(), b.size(), &lim)?;
            let chains: Vec<Vec<usize>> = chains
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|r| lattice.iter().position(|x| x == r).expect("lattice member"))
                        .collect()
                })
                .collect();
            Ok(json!({
                "count": lattice.len(),
                "congruences": lattice.iter().map(|r| to_value(r.to_json())).collect::<Vec<_>>(),
                "chains": chains,
            }))
        }
        Command::IdealMember => {
            let (sig, coeffs) = match (&cfg.signature, &cfg.algebra) {
                (Some(p), _) => (Arc::new(io::load_signature(p)?), None),
                (None, Some(_)) => {
                    let l = cfg.algebra()?;
                    let coeffs = l.embedding.as_ref().map(|e| {
                        (0..e.domain.size()).map(|a| e.coefficient_constant(a)).collect::<Vec<_>>()
                    });
                    (l.algebra().sig_arc().clone(), coeffs)
                }
                (None, None) => {
                    return Err(Error::MissingInput("--signature or --algebra is required".into()))
                }
            };
            let s = cfg.system(&sig)?;
            let q = cfg.query(&s)?;
            let mut rows = Vec::new();
            for e in q.equations() {
                rows.push(json!({
                    "equation": q.display_equation(e),
                    "member": ideal_member(&s, e)?,
                }));
            }
            let mut v = json!({ "results": rows });
            if let Some(c) = coeffs {
                let obj = v.as_object_mut().expect("object");
                match is_a_ideal(&s, &c)? {
                    None => obj.insert("a_ideal".into(), json!(true)),
                    Some((a1, a2)) => {
                        obj.insert("a_ideal".into(), json!(false));
                        obj.insert(
                            "merged".into(),
                            json!([sig.constants()[a1], sig.constants()[a2]]),
                        )
                    }
                };
            }
            Ok(v)
        }
        Command::Free => {
            let fam = cfg.family()?;
            let n = cfg.nvars()?;
            let f = free_algebra(&fam, n, &lim)?;
            let vars = crate::equations::default_vars(n);
            let elements: Vec<String> = f
                .witnesses
                .iter()
                .map(|w| print_term(w, fam.sig(), &vars))
                .collect();
            Ok(json!({
                "size": f.size(),
                "coordinates": f.coords.len(),
                "generators": f.generators,
                "elements": elements,
                "coefficients": f.embedding.as_ref().map(|e| e.map.clone()),
                "algebra": to_value(f.base.to_json()),
            }))
        }
        Command::Certify => {
            let b = cfg.algebra()?;
            let b = b.algebra();
            let s = cfg.system(b.sig_arc())?;
            Ok(to_value(noetherian_certificate(b, &s, &lim)?.to_json()))
        }
        Command::Chain => {
            let b = cfg.algebra()?;
            let b = b.algebra();
            let s = cfg.system(b.sig_arc())?;
            let c = descending_chain(b, &prefix_chain(&s), &lim)?;
            let rows: Vec<Value> = c
                .sets
                .iter()
                .enumerate()
                .map(|(k, y)| {
                    json!({
                        "equations": k,
                        "V_size": y.len(),
                        "proper": if k == 0 { Value::Null } else { json!(c.proper[k - 1]) },
                    })
                })
                .collect();
            Ok(json!({ "steps": rows, "distinct": c.distinct_len() }))
        }
        Command::TheoremForward => {
            let fam = cfg.family()?;
            let s = cfg.system(fam.sig())?;
            Ok(to_value(theorem_forward(&fam, s.nvars(), &s, &lim)?))
        }
        Command::TheoremConverse => {
            let fam = cfg.family()?;
            let n = cfg.nvars()?;
            let f = free_algebra(&fam, n, &lim)?;
            let chain = io::load_chain(cfg.need(&cfg.chain, "chain")?, f.size())?;
            Ok(to_value(theorem_converse(&fam, n, &chain, &lim)?))
        }
        Command::Validate => validate(cfg),
    }
}

fn validate(cfg: &RunConfig) -> Result<Value> {
    let mut report = Map::new();
    if let Some(p) = &cfg.signature {
        let sig = io::load_signature(p)?;
        report.insert(
            "signature".into(),
            json!({"ops": sig.ops().len(), "constants": sig.constants().len()}),
        );
    }
    let mut sig = None;
    if cfg.algebra.is_some() {
        let l = cfg.algebra()?;
        let mut entry = json!({"size": l.plain.size()});
        if let Some(e) = &l.embedding {
            entry["embedding"] = json!(e.map);
        }
        sig = Some(l.algebra().sig_arc().clone());
        report.insert("algebra".into(), entry);
    }
    if !cfg.family.is_empty() {
        let fam = cfg.family()?;
        sig.get_or_insert_with(|| fam.sig().clone());
        report.insert(
            "family".into(),
            json!({
                "members": fam.members().len(),
                "coefficients": fam.coefficients().map(|c| c.algebra.size()),
            }),
        );
    }
    if cfg.system.is_some() {
        let Some(sig) = &sig else {
            return Err(Error::MissingInput(
                "validating a system needs --algebra or --family".into(),
            ));
        };
        let s = cfg.system(sig)?;
        report.insert(
            "system".into(),
            json!({"vars": s.nvars(), "equations": s.len()}),
        );
    }
    if report.is_empty() {
        return Err(Error::MissingInput("nothing to validate".into()));
    }
    let mut out = Map::new();
    out.insert("ok".into(), json!(true));
    out.extend(report);
    Ok(Value::Object(out))
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Scalars as `key  value` lines; arrays of objects as aligned tables.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, "", &mut out);
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("serializable"),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object))
}

fn render_into(v: &Value, indent: &str, out: &mut String) {
    let Value::Object(map) = v else {
        out.push_str(indent);
        out.push_str(&cell(v));
        out.push('\n');
        return;
    };
    let width = map
        .iter()
        .filter(|(_, v)| !v.is_object() && !is_table(v))
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    for (k, val) in map {
        if is_table(val) {
            out.push_str(&format!("{indent}{k}:\n"));
            render_rows(val.as_array().expect("array"), &format!("{indent}  "), out);
        } else if let Value::Object(_) = val {
            out.push_str(&format!("{indent}{k}:\n"));
            render_into(val, &format!("{indent}  "), out);
        } else {
            let pad = width - k.chars().count();
            out.push_str(&format!("{indent}{k}{}  {}\n", " ".repeat(pad), cell(val)));
        }
    }
}

fn render_rows(rows: &[Value], indent: &str, out: &mut String) {
    let mut cols: Vec<&String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("object").keys() {
            if !cols.contains(&k) {
                cols.push(k);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c.as_str()).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|row| row[i].chars().count())
                .chain([c.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |vals: Vec<&str>| -> String {
        let parts: Vec<String> = vals
            .iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v}{}", " ".repeat(w - v.chars().count())))
            .collect();
        format!("{indent}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(cols.iter().map(|c| c.as_str()).collect()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
}
