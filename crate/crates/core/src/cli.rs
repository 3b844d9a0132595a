//! Command-line frontend. Every subcommand produces a human-readable text
//! report and a [`RunSummary`]; `--json` prints the summary instead.
//!
//! Exit codes: 0 success (including "not found"), 1 i/o failure, 2 usage or
//! invalid parameters, 3 parse failure, 4 budget refusal.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bench::run_bench;
use crate::budget::Budget;
use crate::circuit::ArithmeticCircuit;
use crate::error::{param, Error, Result};
use crate::family::{build_rectangle_hitting_set, verify_hitting_set, Density};
use crate::graph::{UndirectedGraph, WeightedDigraph};
use crate::msep::{build_multiset_separator, verify_multiset_separator};
use crate::oracles::{
    oracle_degree_bounded_tree, oracle_edge_weighted_path, oracle_hamiltonian_path,
    oracle_monomial, oracle_packing, oracle_r_simple_k_path, oracle_spanning_trees,
};
use crate::repset::{compute_representative, verify_representative, WeightedMultisetFamily};
use crate::separating::{
    build_lopsided_universal, build_minimal_separating, verify_lopsided, verify_minimal_separating,
};
use crate::solvers::{
    solve_edge_weighted_path, solve_monomial_detection, solve_r_simple_k_path, solve_rpq_packing,
    SetFamilyInstance,
};
use crate::spanning::{hardness_gadget, solve_degree_bounded_spanning_tree};
use crate::verify::Verdict;

/// Term limit for the symbolic expansion used by the monomial oracle.
const ORACLE_MAX_TERMS: usize = 1 << 22;

#[derive(Debug, Parser)]
#[command(
    name = "relaxrep",
    version,
    about = "Representative sets for multisets and relaxed-disjointness solvers"
)]
pub struct Cli {
    /// Print the machine-readable run summary instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a (t,k)-minimal separating family over [n].
    Sepfam(SepfamArgs),
    /// Build an (n,p,q)-lopsided universal set family.
    Universal(UniversalArgs),
    /// Build a multiset separator for r-sets over [n] with total size k.
    Msep(MsepArgs),
    /// Compute a representative subfamily of a weighted multiset family.
    Repset(RepsetArgs),
    /// Minimum-weight r-simple k-path in a directed graph.
    Rpath(RpathArgs),
    /// Minimum-weight (r,p,q)-packing.
    Rpack(RpackArgs),
    /// (r,k)-monomial detection on a non-canceling circuit.
    Monomial(MonomialArgs),
    /// Spanning tree with maximum degree at most d.
    Dbst(DbstArgs),
    /// Attach d-2 pendant vertices to every vertex.
    Gadget(GadgetArgs),
    /// Exhaustively check a construction.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Brute-force reference answers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Sweep family sizes over an (n, r, k) grid.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SepfamArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub k: usize,
    /// Write the family to this file instead of printing it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UniversalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MsepArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RepsetArgs {
    /// Family file in the `wmsfam` format.
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RpathArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub k: usize,
    /// Minimize total arc weight instead of vertex weight.
    #[arg(long)]
    pub edge_weighted: bool,
}

#[derive(Debug, Args)]
pub struct RpackArgs {
    /// Set-family file in the `setfam` format.
    #[arg(long)]
    pub sets: PathBuf,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub p: usize,
}

#[derive(Debug, Args)]
pub struct MonomialArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub k: u32,
    /// Comma-separated variable weights.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct DbstArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub d: u32,
}

#[derive(Debug, Args)]
pub struct GadgetArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Build and check a minimal separating family.
    Sepfam(SepfamArgs),
    /// Build and check a lopsided universal family.
    Universal(UniversalArgs),
    /// Build and check a multiset separator.
    Msep(MsepArgs),
    /// Compute a representative subfamily and check it against every test multiset.
    Repset(RepsetArgs),
    /// Build and check a rectangle hitting set.
    Hitting(HittingArgs),
}

#[derive(Debug, Args)]
pub struct HittingArgs {
    /// Comma-separated side sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sides: Vec<usize>,
    /// One of 1/3, 1/2, 1.
    #[arg(long, default_value = "1/2")]
    pub density: String,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Walk enumeration.
    Rpath(RpathArgs),
    /// Subfamily enumeration.
    Rpack(RpackArgs),
    /// Full symbolic expansion.
    Monomial(MonomialArgs),
    /// Spanning-tree enumeration.
    Dbst(DbstArgs),
    /// Hamiltonian path by dynamic programming over vertex subsets.
    Hampath(GraphArg),
    /// List every spanning tree.
    Trees(GraphArg),
}

#[derive(Debug, Args)]
pub struct GraphArg {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "4,6,8")]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6")]
    pub r: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
    pub k: Vec<u32>,
}

/// Machine-readable record of one run. Everything except `wall_time_ms` is
/// a function of the command and its inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    /// SHA-256 of the command, parameters and input file contents.
    pub instance_digest: String,
    pub answer: Value,
    pub witness: Value,
    pub family_sizes: Vec<usize>,
    pub wall_time_ms: f64,
}

impl RunSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

/// Text report and summary of a successful run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub summary: RunSummary,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 1,
        Error::Parameter(_) | Error::Dimension(_) => 2,
        Error::Parse(_) => 3,
        Error::Budget { .. } => 4,
    }
}

/// Collects inputs and parameters while a command runs.
struct Recorder {
    command: String,
    parameters: BTreeMap<String, Value>,
    hasher: Sha256,
}

impl Recorder {
    fn new(command: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        Recorder {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            hasher,
        }
    }

    fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameter serializes"),
        );
    }

    fn read(&mut self, key: &str, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.param(key, path.display().to_string());
        self.hasher.update(key.as_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn finish(
        mut self,
        started: Instant,
        text: String,
        answer: Value,
        witness: Value,
        sizes: Vec<usize>,
    ) -> Outcome {
        let params = serde_json::to_string(&self.parameters).expect("parameters serialize");
        self.hasher.update(params.as_bytes());
        let digest: String = self
            .hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        Outcome {
            text,
            summary: RunSummary {
                command: self.command,
                parameters: self.parameters,
                instance_digest: digest,
                answer,
                witness,
                family_sizes: sizes,
                wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
            },
        }
    }
}

fn write_or_inline(out: &Option<PathBuf>, body: String, header: String) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, &body)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(format!("{header}written to {}\n", path.display()))
        }
        None => Ok(format!("{header}{body}")),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict_report(v: &Verdict) -> (String, Value) {
    match v {
        Verdict::Holds => ("holds\n".to_string(), json!({ "holds": true })),
        Verdict::Violated(c) => (
            format!("violated: {c}\n"),
            json!({ "holds": false, "counterexample": c.to_string() }),
        ),
    }
}

fn path_report(found: bool, weight: Option<i64>, walk: &[usize]) -> (String, Value, Value) {
    if found {
        let w = one_based(walk);
        (
            format!(
                "found weight={}\nwitness {}\n",
                weight.expect("weight"),
                join(&w)
            ),
            json!({ "found": true, "weight": weight }),
            json!(w),
        )
    } else {
        (
            "not found\n".to_string(),
            json!({ "found": false }),
            Value::Null,
        )
    }
}

fn monomial_text(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(i, &d)| {
            if d == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{d}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn load_packing(rec: &mut Recorder, a: &RpackArgs) -> Result<SetFamilyInstance> {
    rec.param("r", a.r);
    rec.param("p", a.p);
    let inst: SetFamilyInstance = rec.read("sets", &a.sets)?.parse()?;
    Ok(inst.with_params(a.r, a.p))
}

fn load_circuit(rec: &mut Recorder, a: &MonomialArgs) -> Result<ArithmeticCircuit> {
    rec.param("r", a.r);
    rec.param("k", a.k);
    rec.param("weights", &a.weights);
    rec.read("circuit", &a.circuit)?.parse()
}

fn parse_density(s: &str) -> Result<Density> {
    match s.trim() {
        "1/3" => Ok(Density::THIRD),
        "1/2" => Ok(Density::HALF),
        "1" | "1/1" => Ok(Density::FULL),
        other => Err(param(format!(
            "unsupported density `{other}`; expected 1/3, 1/2 or 1"
        ))),
    }
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let started = Instant::now();
    let budget = Budget::from_env();
    match &cli.command {
        Command::Sepfam(a) => {
            let mut rec = Recorder::new("sepfam");
            rec.param("n", a.n);
            rec.param("t", a.t);
            rec.param("k", a.k);
            let fam = build_minimal_separating(a.n, a.t, a.k)?;
            let header = format!(
                "minimal separating family n={} t={} k={} size={}\n",
                a.n,
                a.t,
                a.k,
                fam.len()
            );
            let text = write_or_inline(&a.out, fam.family().to_text(), header)?;
            Ok(rec.finish(
                started,
                text,
                json!({ "size": fam.len() }),
                Value::Null,
                vec![fam.len()],
            ))
        }
        Command::Universal(a) => {
            let mut rec = Recorder::new("universal");
            rec.param("n", a.n);
            rec.param("p", a.p);
            rec.param("q", a.q);
            let fam = build_lopsided_universal(a.n, a.p, a.q)?;
            let header = format!("lopsided universal family size={}\n", fam.len());
            let text = write_or_inline(&a.out, fam.to_text(), header)?;
            Ok(rec.finish(
                started,
                text,
                json!({ "size": fam.len() }),
                Value::Null,
                vec![fam.len()],
            ))
        }
        Command::Msep(a) => {
            let mut rec = Recorder::new("msep");
            rec.param("n", a.n);
            rec.param("r", a.r);
            rec.param("k", a.k);
            let sep = build_multiset_separator(a.n, a.r, a.k)?;
            let header = format!(
                "multiset separator size={} generated={} t={}\n",
                sep.len(),
                sep.generated(),
                sep.t()
            );
            let text = write_or_inline(&a.out, sep.to_text(), header)?;
            let answer = json!({ "size": sep.len(), "generated": sep.generated().to_string(), "t": sep.t() });
            Ok(rec.finish(started, text, answer, Value::Null, vec![sep.len()]))
        }
        Command::Repset(a) => {
            let mut rec = Recorder::new("repset");
            let fam: WeightedMultisetFamily = rec.read("family", &a.family)?.parse()?;
            let rep = compute_representative(&fam)?;
            let header = format!(
                "representative family size={} of {}\n",
                rep.len(),
                fam.len()
            );
            let text = write_or_inline(&a.out, rep.to_text(), header)?;
            let answer = json!({ "size": rep.len(), "input_size": fam.len() });
            Ok(rec.finish(
                started,
                text,
                answer,
                Value::Null,
                vec![fam.len(), rep.len()],
            ))
        }
        Command::Rpath(a) => {
            let mut rec = Recorder::new("rpath");
            rec.param("r", a.r);
            rec.param("k", a.k);
            rec.param("edge_weighted", a.edge_weighted);
            let g: WeightedDigraph = rec.read("graph", &a.graph)?.parse()?;
            let res = if a.edge_weighted {
                solve_edge_weighted_path(&g, a.r, a.k)?
            } else {
                solve_r_simple_k_path(&g, a.r, a.k)?
            };
            let (text, answer, witness) = path_report(res.found, res.weight, &res.witness);
            Ok(rec.finish(started, text, answer, witness, res.layer_sizes))
        }
        Command::Rpack(a) => {
            let mut rec = Recorder::new("rpack");
            let inst = load_packing(&mut rec, a)?;
            let res = solve_rpq_packing(&inst)?;
            let (text, answer, witness) = if res.found {
                let w = one_based(&res.witness);
                (
                    format!(
                        "found weight={}\nsets {}\n",
                        res.weight.expect("weight"),
                        join(&w)
                    ),
                    json!({ "found": true, "weight": res.weight }),
                    json!(w),
                )
            } else {
                (
                    "not found\n".to_string(),
                    json!({ "found": false }),
                    Value::Null,
                )
            };
            Ok(rec.finish(started, text, answer, witness, res.layer_sizes))
        }
        Command::Monomial(a) => {
            let mut rec = Recorder::new("monomial");
            let c = load_circuit(&mut rec, a)?;
            let res = solve_monomial_detection(&c, a.r, a.k, a.weights.as_deref())?;
            let (text, answer, witness) = if res.found {
                (
                    format!(
                        "found {} weight={}\n",
                        monomial_text(&res.monomial),
                        res.weight.expect("weight")
                    ),
                    json!({ "found": true, "weight": res.weight }),
                    json!(res.monomial),
                )
            } else {
                (
                    "not found\n".to_string(),
                    json!({ "found": false }),
                    Value::Null,
                )
            };
            Ok(rec.finish(started, text, answer, witness, res.family_sizes))
        }
        Command::Dbst(a) => {
            let mut rec = Recorder::new("dbst");
            rec.param("d", a.d);
            let g: UndirectedGraph = rec.read("graph", &a.graph)?.parse()?;
            let res = solve_degree_bounded_spanning_tree(&g, a.d)?;
            let edges: Vec<[usize; 2]> = res.tree.iter().map(|&(u, v)| [u + 1, v + 1]).collect();
            let text = if res.found {
                let list: Vec<String> =
                    edges.iter().map(|e| format!("{}-{}", e[0], e[1])).collect();
                format!("found\ntree {}\n", list.join(" "))
            } else {
                "not found\n".to_string()
            };
            let witness = if res.found { json!(edges) } else { Value::Null };
            Ok(rec.finish(
                started,
                text,
                json!({ "found": res.found }),
                witness,
                Vec::new(),
            ))
        }
        Command::Gadget(a) => {
            let mut rec = Recorder::new("gadget");
            rec.param("d", a.d);
            let g: UndirectedGraph = rec.read("graph", &a.graph)?.parse()?;
            let h = hardness_gadget(&g, a.d)?;
            let header = format!("gadget graph n={} m={}\n", h.n(), h.edges().len());
            let text = write_or_inline(&a.out, h.to_text(), header)?;
            let answer = json!({ "n": h.n(), "m": h.edges().len() });
            Ok(rec.finish(started, text, answer, Value::Null, Vec::new()))
        }
        Command::Verify(v) => verify(v, budget, started),
        Command::Oracle(o) => oracle(o, budget, started),
        Command::Bench(a) => {
            let mut rec = Recorder::new("bench");
            rec.param("n", &a.n);
            rec.param("r", &a.r);
            rec.param("k", &a.k);
            let report = run_bench(&a.n, &a.r, &a.k)?;
            let sizes = report.rows.iter().map(|r| r.representative_size).collect();
            let answer = serde_json::to_value(&report).expect("report serializes");
            Ok(rec.finish(started, report.to_text(), answer, Value::Null, sizes))
        }
    }
}

fn verify(v: &VerifyCommand, budget: Budget, started: Instant) -> Result<Outcome> {
    let (rec, verdict, sizes) = match v {
        VerifyCommand::Sepfam(a) => {
            let mut rec = Recorder::new("verify sepfam");
            rec.param("n", a.n);
            rec.param("t", a.t);
            rec.param("k", a.k);
            let fam = build_minimal_separating(a.n, a.t, a.k)?;
            (
                rec,
                verify_minimal_separating(&fam, budget)?,
                vec![fam.len()],
            )
        }
        VerifyCommand::Universal(a) => {
            let mut rec = Recorder::new("verify universal");
            rec.param("n", a.n);
            rec.param("p", a.p);
            rec.param("q", a.q);
            let fam = build_lopsided_universal(a.n, a.p, a.q)?;
            (rec, verify_lopsided(&fam, budget)?, vec![fam.len()])
        }
        VerifyCommand::Msep(a) => {
            let mut rec = Recorder::new("verify msep");
            rec.param("n", a.n);
            rec.param("r", a.r);
            rec.param("k", a.k);
            let sep = build_multiset_separator(a.n, a.r, a.k)?;
            (
                rec,
                verify_multiset_separator(&sep, budget)?,
                vec![sep.len()],
            )
        }
        VerifyCommand::Repset(a) => {
            let mut rec = Recorder::new("verify repset");
            let fam: WeightedMultisetFamily = rec.read("family", &a.family)?.parse()?;
            let rep = compute_representative(&fam)?;
            (
                rec,
                verify_representative(&fam, &rep, budget)?,
                vec![fam.len(), rep.len()],
            )
        }
        VerifyCommand::Hitting(a) => {
            let mut rec = Recorder::new("verify hitting");
            rec.param("sides", &a.sides);
            rec.param("density", &a.density);
            let density = parse_density(&a.density)?;
            let set = build_rectangle_hitting_set(&a.sides, density)?;
            (
                rec,
                verify_hitting_set(&set, density, budget)?,
                vec![set.points.len()],
            )
        }
    };
    let (text, answer) = verdict_report(&verdict);
    Ok(rec.finish(started, text, answer, Value::Null, sizes))
}

fn oracle(o: &OracleCommand, budget: Budget, started: Instant) -> Result<Outcome> {
    match o {
        OracleCommand::Rpath(a) => {
            let mut rec = Recorder::new("oracle rpath");
            rec.param("r", a.r);
            rec.param("k", a.k);
            rec.param("edge_weighted", a.edge_weighted);
            let g: WeightedDigraph = rec.read("graph", &a.graph)?.parse()?;
            let best = if a.edge_weighted {
                oracle_edge_weighted_path(&g, a.r, a.k, budget)?
            } else {
                oracle_r_simple_k_path(&g, a.r, a.k, budget)?
            };
            let (text, answer, witness) = match &best {
                Some((w, walk)) => path_report(true, Some(*w), walk),
                None => path_report(false, None, &[]),
            };
            Ok(rec.finish(started, text, answer, witness, Vec::new()))
        }
        OracleCommand::Rpack(a) => {
            let mut rec = Recorder::new("oracle rpack");
            let inst = load_packing(&mut rec, a)?;
            let (text, answer, witness) = match oracle_packing(&inst, budget)? {
                Some((w, sets)) => {
                    let s = one_based(&sets);
                    (
                        format!("found weight={w}\nsets {}\n", join(&s)),
                        json!({ "found": true, "weight": w }),
                        json!(s),
                    )
                }
                None => (
                    "not found\n".to_string(),
                    json!({ "found": false }),
                    Value::Null,
                ),
            };
            Ok(rec.finish(started, text, answer, witness, Vec::new()))
        }
        OracleCommand::Monomial(a) => {
            let mut rec = Recorder::new("oracle monomial");
            let c = load_circuit(&mut rec, a)?;
            let (text, answer, witness) =
                match oracle_monomial(&c, a.r, a.k, a.weights.as_deref(), ORACLE_MAX_TERMS)? {
                    Some((w, m)) => (
                        format!("found {} weight={w}\n", monomial_text(&m)),
                        json!({ "found": true, "weight": w }),
                        json!(m),
                    ),
                    None => (
                        "not found\n".to_string(),
                        json!({ "found": false }),
                        Value::Null,
                    ),
                };
            Ok(rec.finish(started, text, answer, witness, Vec::new()))
        }
        OracleCommand::Dbst(a) => {
            let mut rec = Recorder::new("oracle dbst");
            rec.param("d", a.d);
            let g: UndirectedGraph = rec.read("graph", &a.graph)?.parse()?;
            let found = oracle_degree_bounded_tree(&g, a.d, budget)?;
            let text = if found { "found\n" } else { "not found\n" }.to_string();
            Ok(rec.finish(
                started,
                text,
                json!({ "found": found }),
                Value::Null,
                Vec::new(),
            ))
        }
        OracleCommand::Hampath(a) => {
            let mut rec = Recorder::new("oracle hampath");
            let g: UndirectedGraph = rec.read("graph", &a.graph)?.parse()?;
            let found = oracle_hamiltonian_path(&g)?;
            let text = if found { "found\n" } else { "not found\n" }.to_string();
            Ok(rec.finish(
                started,
                text,
                json!({ "found": found }),
                Value::Null,
                Vec::new(),
            ))
        }
        OracleCommand::Trees(a) => {
            let mut rec = Recorder::new("oracle trees");
            let g: UndirectedGraph = rec.read("graph", &a.graph)?.parse()?;
            let trees = oracle_spanning_trees(&g, budget)?;
            let mut text = format!("{} spanning trees\n", trees.len());
            let mut list = Vec::with_capacity(trees.len());
            for t in &trees {
                let edges: Vec<[usize; 2]> = t
                    .edges
                    .iter()
                    .map(|&e| {
                        let (u, v) = g.edges()[e];
                        [u + 1, v + 1]
                    })
                    .collect();
                let shown: Vec<String> =
                    edges.iter().map(|e| format!("{}-{}", e[0], e[1])).collect();
                text.push_str(&format!("{}\n", shown.join(" ")));
                list.push(edges);
            }
            Ok(rec.finish(
                started,
                text,
                json!({ "count": trees.len() }),
                json!(list),
                Vec::new(),
            ))
        }
    }
}

/// Parses `args` (program name first), runs the command and prints the
/// report. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.summary.to_json());
            } else {
                print!("{}", out.text);
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
