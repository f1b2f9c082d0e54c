use std::fs;
use std::hash::{DefaultHasher, Hasher};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use graphsc::conditions::{
    certify_asphericity, check_ck, check_tp, CertificateKind, CheckOptions, ConditionReport,
    PieceProfile,
};
use graphsc::diagram::{is_graphically_reduced, origination_report, Diagram};
use graphsc::identity::{unglue, van_kampen, IdentitySequence};
use graphsc::lifting::enumerate_pieces;
use graphsc::presentation::{relators_basis, relators_simple, Presentation};
use graphsc::search::{search_reduced_spheres, SearchBounds, SearchOutcome};
use graphsc::{LabelledGraph, DEFAULT_CYCLE_CAP};

#[derive(Parser)]
#[command(name = "gsc", version, about = "Graphical small-cancellation toolkit")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for per-cycle work; results do not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide graphical C(k) or T(p).
    Check(CheckArgs),
    /// Try C(6), C(4)&T(4), C(3)&T(6) in turn.
    Certify { graph: PathBuf },
    /// Print the presentation read off a graph.
    Relators {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Simple)]
        mode: Mode,
    },
    /// List the pieces up to a length.
    Pieces {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
    /// Diagram tools.
    #[command(subcommand)]
    Diagram(DiagramCommand),
    /// Bounded search for graphically reduced spherical diagrams.
    Search {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_faces: usize,
        /// Maximum number of search steps.
        #[arg(long)]
        budget: Option<u64>,
        /// Leave out relators longer than this.
        #[arg(long)]
        max_relator_len: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Condition {
    /// Graphical C(k).
    #[arg(long = "c", value_name = "K")]
    c: Option<usize>,
    /// Graphical T(p).
    #[arg(long = "t", value_name = "P")]
    t: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    graph: PathBuf,
    #[command(flatten)]
    condition: Condition,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Simple,
    Basis,
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// Check the map structure and, optionally, the face labels.
    Validate {
        diagram: PathBuf,
        /// Check faces against the simple-cycle relators of this graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Check faces against these relators, one word per line.
        #[arg(long, conflicts_with = "graph")]
        relators: Option<PathBuf>,
    },
    /// Report which edges originate.
    ReduceCheck { diagram: PathBuf, graph: PathBuf },
    /// Glue the van Kampen diagram of an identity sequence.
    BuildIdentity {
        identity: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Read an identity sequence back off a spherical diagram.
    Unglue { diagram: PathBuf },
    /// Render as Graphviz; originating edges are dashed.
    ExportDot {
        diagram: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Outcome-bearing part of a run; exit code and renderings derive from it.
struct Report {
    command: String,
    digest: String,
    outcome: &'static str,
    payload: Value,
    text: String,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn exit_code(outcome: &str) -> u8 {
    match outcome {
        "holds" | "certified" | "ok" | "valid" | "reduced" | "exhausted" => 0,
        "violated" | "unknown" | "invalid" | "not_reduced" | "witness" => 1,
        "budget_exceeded" => 3,
        _ => 2,
    }
}

struct Inputs {
    hasher: DefaultHasher,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text =
            fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        self.hasher.write(text.as_bytes());
        Ok(text)
    }

    fn graph(&mut self, path: &Path) -> Result<LabelledGraph, Failure> {
        let text = self.read(path)?;
        LabelledGraph::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }

    fn diagram(&mut self, path: &Path) -> Result<Diagram, Failure> {
        let text = self.read(path)?;
        Diagram::from_json(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }

    fn digest(&self) -> String {
        format!("{:016x}", self.hasher.finish())
    }
}

fn cycle_cap() -> Result<usize, Failure> {
    match std::env::var("GSC_CYCLE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure(format!("GSC_CYCLE_CAP: not a number: {v}"))),
        Err(_) => Ok(DEFAULT_CYCLE_CAP),
    }
}

fn report(
    command: &str,
    inputs: &Inputs,
    outcome: &'static str,
    payload: Value,
    text: String,
) -> Report {
    Report {
        command: command.to_string(),
        digest: inputs.digest(),
        outcome,
        payload,
        text,
    }
}

fn condition_text(r: &ConditionReport) -> String {
    let mut s = format!(
        "{}: {}",
        r.condition,
        if r.holds { "holds" } else { "fails" }
    );
    if let Some(w) = &r.witness {
        s.push_str(&format!("\nwitness: {w}"));
    }
    s
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let opts = CheckOptions {
        cycle_cap: cycle_cap()?,
        threads: cli.threads.max(1),
    };
    let mut inputs = Inputs {
        hasher: DefaultHasher::new(),
    };
    match &cli.command {
        Command::Check(args) => {
            let g = inputs.graph(&args.graph)?;
            let cycles = PieceProfile::compute(&g, opts)?.cycles.len();
            let r = match (args.condition.c, args.condition.t) {
                (Some(k), _) => ConditionReport::ck(k, &check_ck(&g, k, opts)?, cycles),
                (_, Some(p)) => ConditionReport::tp(p, &check_tp(&g, p, opts)?, cycles),
                _ => unreachable!("clap requires one condition"),
            };
            let outcome = if r.holds { "holds" } else { "violated" };
            Ok(report(
                "check",
                &inputs,
                outcome,
                json!({ "report": r }),
                condition_text(&r),
            ))
        }
        Command::Certify { graph } => {
            let g = inputs.graph(graph)?;
            let cert = certify_asphericity(&g, opts)?;
            let outcome = if cert.kind == CertificateKind::Unknown {
                "unknown"
            } else {
                "certified"
            };
            let mut text = format!("certificate: {}", cert.kind);
            for r in &cert.evidence {
                text.push_str(&format!(
                    "\n  {}: {}",
                    r.condition,
                    if r.holds { "holds" } else { "fails" }
                ));
            }
            Ok(report(
                "certify",
                &inputs,
                outcome,
                json!({ "certificate": cert }),
                text,
            ))
        }
        Command::Relators { graph, mode } => {
            let g = inputs.graph(graph)?;
            let p = match mode {
                Mode::Simple => relators_simple(&g, opts.cycle_cap)?,
                Mode::Basis => relators_basis(&g),
            };
            let text = if cli.format == Format::Json {
                String::new()
            } else {
                p.to_string()
            };
            Ok(report(
                "relators",
                &inputs,
                "ok",
                json!({ "presentation": p }),
                text,
            ))
        }
        Command::Pieces { graph, max_len } => {
            let g = inputs.graph(graph)?;
            let pieces = enumerate_pieces(&g, *max_len);
            let mut by_len = vec![Vec::new(); *max_len + 1];
            for w in &pieces {
                by_len[w.len()].push(w.to_string());
            }
            let text = (1..=*max_len)
                .map(|n| format!("length {n}: {}", by_len[n].join(", ")))
                .collect::<Vec<_>>()
                .join("\n");
            let payload = json!({ "pieces": by_len.iter().enumerate().skip(1)
                .map(|(n, ws)| json!({ "length": n, "words": ws })).collect::<Vec<_>>() });
            Ok(report("pieces", &inputs, "ok", payload, text))
        }
        Command::Diagram(sub) => run_diagram(sub, &mut inputs, opts),
        Command::Search {
            graph,
            max_faces,
            budget,
            max_relator_len,
        } => {
            let g = inputs.graph(graph)?;
            let bounds = SearchBounds {
                max_faces: *max_faces,
                max_relator_len: *max_relator_len,
                budget: *budget,
                cycle_cap: opts.cycle_cap,
            };
            let out = search_reduced_spheres(&g, &bounds)?;
            let (outcome, progress) = match &out {
                SearchOutcome::Exhausted { progress } => ("exhausted", progress),
                SearchOutcome::Witness { progress, .. } => ("witness", progress),
                SearchOutcome::BudgetExceeded { progress } => ("budget_exceeded", progress),
            };
            let mut text = format!(
                "{outcome}: {} face sets, {} steps, {} spheres",
                progress.face_sets, progress.steps, progress.spheres
            );
            if let SearchOutcome::Witness { diagram, .. } = &out {
                text.push_str(&format!("\n{}", serde_json::to_string_pretty(diagram)?));
            }
            let mut payload = serde_json::to_value(&out)?;
            payload
                .as_object_mut()
                .expect("tagged enum")
                .remove("outcome");
            payload["bounds"] = serde_json::to_value(bounds)?;
            Ok(report("search", &inputs, outcome, payload, text))
        }
    }
}

fn write_or(output: &Option<PathBuf>, body: &str) -> Result<bool, Failure> {
    match output {
        Some(path) => {
            fs::write(path, body).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            Ok(true)
        }
        None => Ok(false),
    }
}

fn run_diagram(
    sub: &DiagramCommand,
    inputs: &mut Inputs,
    opts: CheckOptions,
) -> Result<Report, Failure> {
    match sub {
        DiagramCommand::Validate {
            diagram,
            graph,
            relators,
        } => {
            let d = inputs.diagram(diagram)?;
            let p = match (graph, relators) {
                (Some(g), _) => Some(relators_simple(&inputs.graph(g)?, opts.cycle_cap)?),
                (_, Some(r)) => Some(Presentation::parse_lines(&inputs.read(r)?)?),
                _ => None,
            };
            let v = d.validate(p.as_ref());
            let outcome = if v.valid { "valid" } else { "invalid" };
            let mut text = format!(
                "{outcome}: V={} E={} F={} components={} chi={:?}",
                v.vertices, v.edges, v.faces, v.components, v.euler
            );
            for x in &v.violations {
                text.push_str(&format!("\n  {}", serde_json::to_string(x)?));
            }
            Ok(report(
                "diagram validate",
                inputs,
                outcome,
                json!({ "validation": v }),
                text,
            ))
        }
        DiagramCommand::ReduceCheck { diagram, graph } => {
            let d = inputs.diagram(diagram)?;
            let g = inputs.graph(graph)?;
            let edges = origination_report(&d, &g);
            let verdict = is_graphically_reduced(&d, &g);
            let (outcome, text) = match verdict.witness() {
                None => ("reduced", "graphically reduced".to_string()),
                Some(x) => (
                    "not_reduced",
                    format!("not graphically reduced: edge at dart {x} originates"),
                ),
            };
            Ok(report(
                "diagram reduce-check",
                inputs,
                outcome,
                json!({ "edges": edges }),
                text,
            ))
        }
        DiagramCommand::BuildIdentity { identity, output } => {
            let seq = IdentitySequence::parse(&inputs.read(identity)?, None)?;
            let d = van_kampen(&seq)?;
            let body = d.to_json();
            let text = if write_or(output, &body)? {
                format!(
                    "wrote {} faces to {}",
                    d.inner_faces().len(),
                    output.as_ref().unwrap().display()
                )
            } else {
                body
            };
            let payload = json!({ "faces": d.inner_faces().len(), "diagram": d.to_json_value() });
            Ok(report(
                "diagram build-identity",
                inputs,
                "ok",
                payload,
                text,
            ))
        }
        DiagramCommand::Unglue { diagram } => {
            let seq = unglue(&inputs.diagram(diagram)?)?;
            let payload = json!({ "identity": seq.to_text(), "items": seq.items });
            Ok(report(
                "diagram unglue",
                inputs,
                "ok",
                payload,
                seq.to_text().trim_end().to_string(),
            ))
        }
        DiagramCommand::ExportDot {
            diagram,
            graph,
            output,
        } => {
            let d = inputs.diagram(diagram)?;
            let g = graph.as_ref().map(|p| inputs.graph(p)).transpose()?;
            let dot = d.to_dot(g.as_ref());
            let text = if write_or(output, &dot)? {
                format!("wrote {}", output.as_ref().unwrap().display())
            } else {
                dot.clone()
            };
            Ok(report(
                "diagram export-dot",
                inputs,
                "ok",
                json!({ "dot": dot }),
                text,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (code, stdout) = match result {
        Ok(r) => {
            let code = exit_code(r.outcome);
            let out = match cli.format {
                Format::Text => r.text,
                Format::Json => {
                    let mut v = json!({
                        "command": r.command,
                        "input_digest": r.digest,
                        "outcome": r.outcome,
                        "exit_code": code,
                    });
                    if let Value::Object(extra) = r.payload {
                        v.as_object_mut().unwrap().extend(extra);
                    }
                    v["timing"] = json!({ "elapsed_ms": elapsed_ms });
                    serde_json::to_string_pretty(&v).expect("report serializes")
                }
            };
            (code, out)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            let out = match cli.format {
                Format::Text => String::new(),
                Format::Json => {
                    json!({ "outcome": "error", "exit_code": 2, "error": msg }).to_string()
                }
            };
            (2, out)
        }
    };
    if !stdout.is_empty() {
        println!("{stdout}");
    }
    ExitCode::from(code)
}
