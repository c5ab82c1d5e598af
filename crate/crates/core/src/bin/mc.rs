//! Command-line surface: root tables, family verification, MC search, and
//! abelian-set statistics, with machine-readable JSON output.
//!
//! Exit codes are the machine contract besides JSON: 0 success/verified,
//! 1 property failure, 2 undecided because a budget ran out.

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use mc_core::abelian::{ade_equivalence_check, max_strongly_abelian};
use mc_core::completeness::{is_minimal_inversion_complete, Family, Provenance, Verdict};
use mc_core::coxeter::{canonical_word, element_from_word, parse_word_file};
use mc_core::families::{mc_bound, paper_family, McBound, PaperFamilyId};
use mc_core::report::{
    max_abelian_json, roots_json, search_json, status_exit_code, verdict_str, verify_family,
    verify_json, SCHEMA_VERSION,
};
use mc_core::roots::{build_root_system, RootSystem, TypeFamily, TypeId};
use mc_core::search::{search_mc, SearchConfig, SearchStatus};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

const DEFAULT_SEED: u64 = 28003;

#[derive(Parser)]
#[command(name = "mc", about = "Minimal inversion complete set toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print known values and bounds of the statistic per type.
    Table {
        /// Types like A5, B3, I2:7, or ranges like A2..A8. Empty: a default list.
        types: Vec<String>,
        /// Re-verify the constructed family for each type that has one.
        #[arg(long)]
        verify: bool,
        /// Stdout format: text or csv.
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
        /// Write the table as JSON to this path.
        #[arg(long)]
        json: Option<String>,
    },
    /// Dump the indexed positive roots of a type.
    Roots {
        #[arg(long = "type")]
        type_spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify a family: completeness, minimality, antichain, conditions.
    Verify {
        #[arg(long = "type")]
        type_spec: String,
        /// "paper" for the embedded/constructed family, else a word file path.
        #[arg(long)]
        family: String,
        /// Prefix split k for the dihedral family.
        #[arg(long)]
        dihedral_k: Option<u32>,
        #[arg(long)]
        json: Option<String>,
    },
    /// Exhaustive search for the maximum minimal-complete family size.
    Search {
        #[arg(long = "type")]
        type_spec: String,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, default_value_t = 50_000_000)]
        node_budget: u64,
        /// Seconds.
        #[arg(long)]
        time_budget: Option<u64>,
        /// Worker threads (falls back to MC_THREADS, then all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Disable the necessary-conditions pruning.
        #[arg(long)]
        no_pruning: bool,
        /// Do not seed the scan with the known family.
        #[arg(long)]
        no_seed: bool,
        #[arg(long, default_value_t = 100_000)]
        pool_cap: usize,
        #[arg(long)]
        json: Option<String>,
    },
    /// Abelian-set statistics.
    Abelian {
        #[arg(long = "type")]
        type_spec: String,
        /// "max-strong" or "ade-check".
        #[arg(long, default_value = "max-strong")]
        mode: String,
        /// Samples for ade-check.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Seconds.
        #[arg(long)]
        time_budget: Option<u64>,
        #[arg(long)]
        json: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Table {
            types,
            verify,
            format,
            json,
        } => cmd_table(types, verify, format, json),
        Command::Roots { type_spec, format } => cmd_roots(&type_spec, format),
        Command::Verify {
            type_spec,
            family,
            dihedral_k,
            json,
        } => cmd_verify(&type_spec, &family, dihedral_k, json),
        Command::Search {
            type_spec,
            k_min,
            k_max,
            node_budget,
            time_budget,
            threads,
            no_pruning,
            no_seed,
            pool_cap,
            json,
        } => {
            let cfg = SearchConfig {
                k_min,
                k_max,
                node_budget,
                time_budget: time_budget.map(Duration::from_secs),
                threads: resolve_threads(threads),
                use_conditions_pruning: !no_pruning,
                pool_cap,
                path_budget: 100_000,
                seed_with_family: !no_seed,
            };
            cmd_search(&type_spec, &cfg, json)
        }
        Command::Abelian {
            type_spec,
            mode,
            samples,
            seed,
            time_budget,
            json,
        } => cmd_abelian(
            &type_spec,
            &mode,
            samples,
            seed,
            time_budget.map(Duration::from_secs),
            json,
        ),
    }
}

fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("MC_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn load_type(spec: &str) -> anyhow::Result<Arc<RootSystem>> {
    let t = TypeId::parse(spec)?;
    Ok(build_root_system(t)?)
}

fn write_json(path: &Option<String>, value: &Value) -> anyhow::Result<()> {
    if let Some(path) = path {
        std::fs::write(path, serde_json::to_string_pretty(value)?)
            .with_context(|| format!("writing {path}"))?;
    }
    Ok(())
}

fn expand_type_args(args: &[String]) -> anyhow::Result<Vec<TypeId>> {
    let mut out = Vec::new();
    for arg in args {
        if let Some((lo, hi)) = arg.split_once("..") {
            let lo_t = TypeId::parse(lo)?;
            let hi_t = TypeId::parse(hi)?;
            if lo_t.family != hi_t.family || lo_t.family == TypeFamily::I {
                return Err(anyhow!("bad range {arg}: families must match"));
            }
            for rank in lo_t.rank..=hi_t.rank {
                out.push(TypeId::new(lo_t.family, rank)?);
            }
        } else {
            out.push(TypeId::parse(arg)?);
        }
    }
    Ok(out)
}

fn default_table_types() -> Vec<TypeId> {
    let mut out = Vec::new();
    let mut push = |s: &str| out.push(TypeId::parse(s).unwrap());
    for r in 2..=8 {
        push(&format!("A{r}"));
    }
    for n in 2..=6 {
        push(&format!("B{n}"));
    }
    for n in 3..=5 {
        push(&format!("C{n}"));
    }
    for n in 4..=6 {
        push(&format!("D{n}"));
    }
    for s in ["G2", "F4", "E6", "E7", "E8", "H3", "H4", "I2:5", "I2:7", "I2:12"] {
        push(s);
    }
    out
}

fn cmd_table(
    types: Vec<String>,
    verify: bool,
    format: TableFormat,
    json: Option<String>,
) -> anyhow::Result<ExitCode> {
    let list = if types.is_empty() {
        default_table_types()
    } else {
        expand_type_args(&types)?
    };
    let mut rows = Vec::new();
    let mut all_ok = true;
    match format {
        TableFormat::Text => println!(
            "{:<7} {:>6}  {:<8} {:<40} {}",
            "type",
            "|D+|",
            "MC",
            "source",
            if verify { "verified" } else { "" }
        ),
        TableFormat::Csv => println!("type,positive_roots,mc,exact,source,verified"),
    }
    for t in list {
        let rs = build_root_system(t)?;
        let (bound, source) = mc_bound(t);
        let mc_text = match bound {
            McBound::Exact(v) => format!("{v}"),
            McBound::AtLeast(v) => format!(">= {v}"),
        };
        let verified = if verify {
            match PaperFamilyId::for_type(t, None) {
                Ok(id) => {
                    let pf = paper_family(&rs, id)?;
                    let ok = is_minimal_inversion_complete(&rs, &pf.family)
                        && pf.family.len() == id.expected_cardinality();
                    all_ok &= ok;
                    Some(ok)
                }
                Err(_) => None,
            }
        } else {
            None
        };
        let vtext = match verified {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "",
        };
        match format {
            TableFormat::Text => println!(
                "{:<7} {:>6}  {:<8} {:<40} {}",
                t.to_string(),
                rs.n_positive(),
                mc_text,
                source,
                vtext
            ),
            TableFormat::Csv => {
                let v = match bound {
                    McBound::Exact(v) | McBound::AtLeast(v) => v,
                };
                println!(
                    "{},{},{},{},\"{}\",{}",
                    t,
                    rs.n_positive(),
                    v,
                    matches!(bound, McBound::Exact(_)),
                    source,
                    vtext
                );
            }
        }
        rows.push(json!({
            "type": t.to_string(),
            "positive_roots": rs.n_positive(),
            "mc": match bound { McBound::Exact(v) => v, McBound::AtLeast(v) => v },
            "exact": matches!(bound, McBound::Exact(_)),
            "source": source,
            "verified": verified,
        }));
    }
    write_json(
        &json,
        &json!({"schema_version": SCHEMA_VERSION, "rows": rows}),
    )?;
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_roots(type_spec: &str, format: Format) -> anyhow::Result<ExitCode> {
    let rs = load_type(type_spec)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&roots_json(&rs))?),
        Format::Text => {
            println!(
                "{} : rank {}, {} positive roots",
                rs.type_id(),
                rs.rank(),
                rs.n_positive()
            );
            for i in 0..rs.n_positive() as u32 {
                let coords: Vec<String> =
                    rs.root(i).coords.iter().map(|c| c.to_string()).collect();
                let eps = rs
                    .root(i)
                    .eps
                    .as_ref()
                    .map(|e| {
                        let parts: Vec<String> = e.iter().map(|q| q.to_string()).collect();
                        format!("  eps=[{}]", parts.join(", "))
                    })
                    .unwrap_or_default();
                println!("{i:>4}  [{}]{}", coords.join(", "), eps);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    type_spec: &str,
    family_spec: &str,
    dihedral_k: Option<u32>,
    json: Option<String>,
) -> anyhow::Result<ExitCode> {
    let rs = load_type(type_spec)?;
    let (family, non_reduced, label) = if family_spec == "paper" {
        let id = PaperFamilyId::for_type(rs.type_id(), dihedral_k)?;
        let pf = paper_family(&rs, id)?;
        (pf.family, pf.non_reduced, "paper".to_string())
    } else {
        let text = std::fs::read_to_string(family_spec)
            .with_context(|| format!("reading {family_spec}"))?;
        let words = parse_word_file(&text)?;
        let mut members = Vec::with_capacity(words.len());
        let mut non_reduced = Vec::new();
        for (i, w) in words.iter().enumerate() {
            let g = element_from_word(&rs, w)?;
            if g.length() != w.len() {
                non_reduced.push(i);
            }
            members.push(g);
        }
        (
            Family::new(members, Provenance::Embedded)?,
            non_reduced,
            family_spec.to_string(),
        )
    };

    let outcome = verify_family(&rs, &family, non_reduced);
    println!(
        "{} family '{}': |Y| = {}",
        rs.type_id(),
        label,
        outcome.size
    );
    println!("  complete:  {}", if outcome.complete { "yes" } else { "NO" });
    println!("  minimal:   {}", if outcome.minimal { "yes" } else { "NO" });
    println!(
        "  antichain: {}",
        if outcome.antichain { "yes" } else { "NO" }
    );
    if !outcome.non_reduced.is_empty() {
        println!("  non-reduced words at positions {:?}", outcome.non_reduced);
    }
    if let Some(rep) = &outcome.conditions {
        println!(
            "  essential-set conditions: (1) {} (2) {} (3) {}{}",
            verdict_str(rep.cond1),
            verdict_str(rep.cond2),
            verdict_str(rep.cond3),
            if rep.cond1 == Verdict::Undecided {
                "  [path budget truncated; treated as not violated]"
            } else {
                ""
            }
        );
    }
    write_json(&json, &verify_json(&rs, &label, &outcome))?;

    Ok(if outcome.failed() {
        ExitCode::from(1)
    } else if outcome.undecided() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_search(
    type_spec: &str,
    cfg: &SearchConfig,
    json: Option<String>,
) -> anyhow::Result<ExitCode> {
    let rs = load_type(type_spec)?;
    let res = search_mc(&rs, cfg);
    println!(
        "{}: MC {} {} ({} nodes, {} ms)",
        rs.type_id(),
        match res.status {
            SearchStatus::Exact => "=",
            _ => ">=",
        },
        res.value,
        res.nodes,
        res.elapsed.as_millis()
    );
    println!("  status: {}", res.status.as_str());
    for g in res.witness.members() {
        println!("  witness word: {}", canonical_word(&rs, g));
    }
    write_json(&json, &search_json(&rs, &res))?;
    Ok(ExitCode::from(status_exit_code(res.status)))
}

fn cmd_abelian(
    type_spec: &str,
    mode: &str,
    samples: usize,
    seed: u64,
    time_budget: Option<Duration>,
    json: Option<String>,
) -> anyhow::Result<ExitCode> {
    let rs = load_type(type_spec)?;
    match mode {
        "max-strong" => {
            let res = max_strongly_abelian(&rs, time_budget);
            println!(
                "{}: maximum strongly abelian size {} {} ({} ms)",
                rs.type_id(),
                if res.status == SearchStatus::Exact {
                    "="
                } else {
                    ">="
                },
                res.value,
                res.elapsed.as_millis()
            );
            println!("  witness roots: {:?}", res.witness.indices());
            write_json(&json, &max_abelian_json(&rs, &res))?;
            Ok(if res.status == SearchStatus::Exact {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        "ade-check" => {
            let counterexample = ade_equivalence_check(&rs, samples, seed)?;
            let ok = counterexample.is_none();
            println!(
                "{}: abelian vs strongly abelian on {samples} samples (seed {seed}): {}",
                rs.type_id(),
                if ok { "no discrepancy" } else { "VIOLATION" }
            );
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "type": rs.type_id().to_string(),
                "mode": "ade-check",
                "samples": samples,
                "seed": seed,
                "ok": ok,
                "counterexample": counterexample.map(|s| s.indices()),
            });
            write_json(&json, &doc)?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        other => Err(anyhow!("unknown mode '{other}' (max-strong, ade-check)")),
    }
}
