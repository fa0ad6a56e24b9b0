mod document;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use document::{parse_document, DocError, ResolvedDocument};
use semiexact::{
    classify, connecting_morphism, enumerate_commutative_monoids, lemma_verify, sequence_report,
    Classification, FuzzConfig, LemmaId, Morphism,
};

#[derive(Parser)]
#[command(name = "semiexact", version, about = "Finite semiring and semimodule calculator")]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an algebra document
    Check { file: PathBuf },
    /// Classify a morphism from the document
    Classify {
        file: PathBuf,
        /// morphism name
        #[arg(short)]
        m: String,
    },
    /// Per-junction exactness report for a sequence
    Exact {
        file: PathBuf,
        /// sequence name
        #[arg(short)]
        s: String,
    },
    /// Snake certificate for a 2×3 ladder diagram
    Snake {
        file: PathBuf,
        /// diagram name
        #[arg(short)]
        d: String,
        /// print the connecting morphism table
        #[arg(long)]
        emit_delta: bool,
    },
    /// Verify one lemma against a diagram
    Lemma {
        file: PathBuf,
        /// diagram name
        #[arg(short)]
        d: String,
        /// lemma id, e.g. SHORT5, NINE, SNAKE
        #[arg(long)]
        id: String,
    },
    /// Census of commutative monoids up to isomorphism
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        /// print only per-order counts
        #[arg(long)]
        count_only: bool,
    },
    /// Randomized lemma verification over the builtin semiring rotation
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        /// restrict to one lemma id
        #[arg(long)]
        id: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, value, ok)) => {
            match cli.format {
                Format::Text => print!("{text}"),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&value).expect("report is JSON"))
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &PathBuf) -> Result<ResolvedDocument, DocError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| DocError::Syntax(format!("cannot read {}: {e}", file.display())))?;
    parse_document(&text)
}

fn named<'a, T>(
    map: &'a std::collections::BTreeMap<String, T>,
    kind: &str,
    name: &str,
) -> Result<&'a T, DocError> {
    map.get(name)
        .ok_or_else(|| DocError::Reference(format!("no {kind} named '{name}' in the document")))
}

fn worker_count() -> usize {
    let machine = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var("SEMIEXACT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(n) if n >= 1 => n.min(machine),
        _ => machine,
    }
}

fn internal(e: semiexact::Error) -> DocError {
    DocError::Validation(e.to_string())
}

type Report = (String, Value, bool);

fn run(cli: &Cli) -> Result<Report, DocError> {
    match &cli.command {
        Command::Check { file } => {
            let doc = load(file)?;
            let counts = [
                ("semirings", doc.semirings.len()),
                ("semimodules", doc.semimodules.len()),
                ("morphisms", doc.morphisms.len()),
                ("sequences", doc.sequences.len()),
                ("diagrams", doc.diagrams.len()),
            ];
            let mut text = String::from("document ok\n");
            for (kind, n) in counts {
                text.push_str(&format!("  {kind}: {n}\n"));
            }
            let value = json!({
                "ok": true,
                "counts": counts.iter().map(|(k, n)| (k.to_string(), *n))
                    .collect::<std::collections::BTreeMap<_, _>>(),
            });
            Ok((text, value, true))
        }
        Command::Classify { file, m } => {
            let doc = load(file)?;
            let f = named(&doc.morphisms, "morphism", m)?;
            let c = classify(f).map_err(internal)?;
            Ok((classification_text(f, &c), json!({ "morphism": m, "classification": c }), true))
        }
        Command::Exact { file, s } => {
            let doc = load(file)?;
            let seq = named(&doc.sequences, "sequence", s)?;
            let report = sequence_report(seq).map_err(internal)?;
            let all_exact = report.iter().all(|v| v.exact);
            let mut text = format!("sequence {s}: {} junction(s)\n", report.len());
            for (i, v) in report.iter().enumerate() {
                text.push_str(&format!(
                    "  junction {i}: chain={} proper={} semi={} quasi={} exact={}\n",
                    v.chain, v.proper_exact, v.semi_exact, v.quasi_exact, v.exact
                ));
            }
            text.push_str(if all_exact { "exact\n" } else { "not exact\n" });
            let value = json!({ "sequence": s, "junctions": report, "exact": all_exact });
            Ok((text, value, all_exact))
        }
        Command::Snake { file, d, emit_delta } => {
            let doc = load(file)?;
            let diagram = named(&doc.diagrams, "diagram", d)?;
            let cert = connecting_morphism(diagram).map_err(internal)?;
            let ok = cert.all_ok();
            let mut text = format!("snake on {d}:\n");
            if *emit_delta {
                text.push_str("  delta:");
                for (x, y) in cert.delta.map.iter().enumerate() {
                    text.push_str(&format!(" {x}↦{y}"));
                }
                text.push('\n');
            }
            text.push_str(&format!(
                "  well_defined={} ker_ok={} image_ok={} k_uniform={} four_term={:?}\n{}\n",
                cert.well_defined,
                cert.ker_delta_ok,
                cert.image_delta_ok,
                cert.delta_k_uniform,
                cert.four_term_exact,
                if ok { "certified" } else { "FAILED" }
            ));
            let value = json!({
                "diagram": d,
                "delta": cert.delta.map,
                "well_defined": cert.well_defined,
                "ker_delta_ok": cert.ker_delta_ok,
                "image_delta_ok": cert.image_delta_ok,
                "delta_k_uniform": cert.delta_k_uniform,
                "four_term_exact": cert.four_term_exact,
                "ok": ok,
            });
            Ok((text, value, ok))
        }
        Command::Lemma { file, d, id } => {
            let doc = load(file)?;
            let diagram = named(&doc.diagrams, "diagram", d)?;
            let lemma = LemmaId::parse(id)
                .map_err(|e| DocError::Reference(e.to_string()))?;
            let verdict = lemma_verify(lemma, diagram).map_err(internal)?;
            let refuted = verdict.conclusion_holds == Some(false);
            let mut text = format!("{lemma} on {d}:\n");
            for h in &verdict.hypothesis_details {
                text.push_str(&format!("  [{}] {}\n", if h.holds { "ok" } else { "--" }, h.name));
            }
            text.push_str(&format!(
                "  hypotheses_satisfied={} vacuous={} conclusion={:?}\n",
                verdict.hypotheses_satisfied, verdict.vacuous, verdict.conclusion_holds
            ));
            if let Some(ref cx) = verdict.counterexample {
                text.push_str(&format!("  counterexample: {cx}\n"));
            }
            let value = json!({ "diagram": d, "verdict": verdict });
            Ok((text, value, !refuted))
        }
        Command::Enumerate { max_order, count_only } => {
            let mut text = String::new();
            let mut counts = Vec::new();
            let mut tables = Vec::new();
            for n in 1..=*max_order {
                let monoids = enumerate_commutative_monoids(n)
                    .map_err(|e| DocError::Validation(e.to_string()))?;
                text.push_str(&format!("order {n}: {} classes\n", monoids.len()));
                counts.push(json!({ "order": n, "classes": monoids.len() }));
                if !count_only {
                    for t in &monoids {
                        text.push_str(&format!("  {t:?}\n"));
                    }
                }
                tables.push(monoids);
            }
            let value = if *count_only {
                json!({ "counts": counts })
            } else {
                json!({ "counts": counts, "tables": tables })
            };
            Ok((text, value, true))
        }
        Command::Fuzz { seed, trials, max_order, id } => {
            let lemma = match id {
                Some(s) => {
                    Some(LemmaId::parse(s).map_err(|e| DocError::Reference(e.to_string()))?)
                }
                None => None,
            };
            let config = FuzzConfig {
                seed: *seed,
                trials: *trials,
                max_order: *max_order,
                lemma,
                workers: worker_count(),
            };
            let report = semiexact::fuzz(&config)
                .map_err(|e| DocError::Validation(e.to_string()))?;
            let ok = report.refuted == 0;
            let mut text = format!(
                "fuzz seed={} trials={} max-order={} lemma={}\n\
                 verified {}\nrefuted {}\nno_instance {}\n",
                report.seed,
                report.trials,
                report.max_order,
                report.lemma.as_deref().unwrap_or("ALL"),
                report.verified,
                report.refuted,
                report.no_instance
            );
            for o in report.outcomes.iter().filter(|o| o.status == "refuted") {
                text.push_str(&format!(
                    "refutation at trial {} ({} over {}):\n{}\n",
                    o.index,
                    o.lemma,
                    o.semiring,
                    serde_json::to_string_pretty(&o.refutation).expect("dump serializes")
                ));
            }
            let value = serde_json::to_value(&report).expect("report serializes");
            Ok((text, value, ok))
        }
    }
}

fn classification_text(f: &Morphism, c: &Classification) -> String {
    let flags = [
        ("injective", c.injective),
        ("surjective", c.surjective),
        ("k_uniform", c.k_uniform),
        ("i_uniform", c.i_uniform),
        ("uniform", c.uniform),
        ("steady", c.steady),
        ("costeady", c.costeady),
        ("bisteady", c.bisteady),
        ("semi_mono", c.semi_mono),
        ("semi_epi", c.semi_epi),
        ("semi_iso", c.semi_iso),
        ("cancellative_morphism", c.cancellative_morphism),
        ("cs_epi", c.cs_epi),
    ];
    let mut text = format!("morphism {}: {} -> {}\n", f.name, f.dom.name, f.cod.name);
    for (name, holds) in flags {
        text.push_str(&format!("  {name:<22} {holds}\n"));
    }
    text
}
