//! `sagq`: inspect bound quivers of string and SAG algebras from the shell.

use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ColorChoice, Parser, Subcommand};
use serde_json::{json, Value};

use sag_core::dot::to_dot;
use sag_core::forbidden::{self, left_forbidden_arrows};
use sag_core::gen::{gen_random_sag, RandomSagSpec};
use sag_core::strmod::{self, arrow_module_string, projective_string};
use sag_core::transform::{self, lift_cyclic_walk, validate_index, TransformResult};
use sag_core::walk::{canonical_string, parse_walk};
use sag_core::walks::{self, enumerate_strings};
use sag_core::{classify, parse_document, to_dsl, BoundQuiver, Error};

#[derive(Parser)]
#[command(
    name = "sagq",
    version,
    about = "Bound quivers of string and SAG algebras"
)]
#[command(color = ColorChoice::Never)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and check a quiver file.
    Validate { file: PathBuf },
    /// String / almost gentle / SAG / gentle flags with violations.
    Classify { file: PathBuf },
    /// Canonical strings up to a length bound.
    Strings {
        file: PathBuf,
        #[arg(long = "max-letters", default_value_t = 4)]
        max_letters: usize,
    },
    /// Whether a band exists.
    Bands {
        file: PathBuf,
        /// Also print a shortest witness.
        #[arg(long)]
        find: bool,
    },
    /// `finite` or `infinite`.
    Reptype { file: PathBuf },
    /// Left forbidden arrows, forbidden cycles and the perfect index.
    Forbidden { file: PathBuf },
    /// Split the arrows of an index through fresh vertices.
    Transform {
        file: PathBuf,
        /// Comma-separated arrow ids.
        #[arg(long = "R", value_delimiter = ',', num_args = 0..)]
        r: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The transform by the perfect index.
    Cma {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// dim Hom(M(from), M(to)) for two strings.
    Homdim {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// String of a projective `P(v)` or an arrow module `αA`.
    ModuleString {
        file: PathBuf,
        #[arg(long, conflicts_with = "arrow", required_unless_present = "arrow")]
        projective: Option<String>,
        #[arg(long)]
        arrow: Option<String>,
    },
    /// Compare the endomorphism dimension with the transformed algebra.
    Verify {
        file: PathBuf,
        #[arg(long = "R", value_delimiter = ',', num_args = 0.., conflicts_with = "all_indices")]
        r: Vec<String>,
        /// Every subset of the left forbidden arrows.
        #[arg(long)]
        all_indices: bool,
        /// Stop after this many subsets.
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// Dimension of the algebra.
    Dim { file: PathBuf },
    /// Graphviz rendering.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A seeded random finite-dimensional SAG quiver.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        #[arg(long, default_value_t = 7)]
        arrows: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

struct Style {
    color: bool,
}

impl Style {
    fn detect() -> Self {
        Style {
            color: std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal(),
        }
    }

    fn flag(&self, value: bool) -> String {
        match (self.color, value) {
            (false, v) => v.to_string(),
            (true, true) => "\x1b[32mtrue\x1b[0m".into(),
            (true, false) => "\x1b[31mfalse\x1b[0m".into(),
        }
    }
}

fn load(path: &Path) -> Result<BoundQuiver, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_document(&text)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// DSL unless the file name ends in `.json`.
fn write_quiver(path: &Path, bq: &BoundQuiver) -> Result<(), Failure> {
    let text = if path.extension().is_some_and(|e| e == "json") {
        sag_core::to_json(bq) + "\n"
    } else {
        to_dsl(bq)
    };
    write_file(path, &text)
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

fn spec_json(bq: &BoundQuiver) -> Value {
    serde_json::to_value(bq.to_spec()).expect("specs serialize")
}

fn names<'a>(
    bq: &'a BoundQuiver,
    arrows: impl IntoIterator<Item = &'a sag_core::Arrow>,
) -> Vec<String> {
    arrows
        .into_iter()
        .map(|&a| bq.arrow_name(a).to_string())
        .collect()
}

fn resolve_index(bq: &BoundQuiver, ids: &[String]) -> Result<transform::RIndex, Failure> {
    let arrows = ids
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| bq.arrow(s.trim()))
        .collect::<sag_core::Result<Vec<_>>>()?;
    Ok(validate_index(bq, arrows)?)
}

fn emit_transform(
    tr: &TransformResult,
    json: bool,
    out: Option<&Path>,
    dot: Option<&Path>,
    extra: Value,
) -> Outcome {
    if let Some(path) = out {
        write_quiver(path, &tr.quiver)?;
    }
    if let Some(path) = dot {
        write_file(path, &to_dot(&tr.quiver))?;
    }
    let index = names(&tr.source, &tr.index.arrows);
    if json {
        let mut v = json!({ "index": index, "quiver": spec_json(&tr.quiver) });
        if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
            map.extend(more);
        }
        return Ok(pretty(v));
    }
    let mut text = String::new();
    if let Value::Object(more) = extra {
        for (k, v) in more {
            text += &format!(
                "{k}: {}\n",
                v.as_array()
                    .map(|a| join_values(a))
                    .unwrap_or_else(|| v.to_string())
            );
        }
    }
    text += &format!("index: {}\n", index.join(" "));
    if out.is_none() {
        text += &to_dsl(&tr.quiver);
    } else {
        text += &format!(
            "wrote {} vertices, {} arrows, {} relations\n",
            tr.quiver.num_vertices(),
            tr.quiver.num_arrows(),
            tr.quiver.relations().len()
        );
    }
    Ok(text)
}

fn join_values(a: &[Value]) -> String {
    a.iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .unwrap_or_else(|| v.to_string())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli, style: &Style) -> Outcome {
    let json = cli.json;
    match cli.cmd {
        Cmd::Validate { file } => {
            let bq = load(&file)?;
            let (n, m, r) = (bq.num_vertices(), bq.num_arrows(), bq.relations().len());
            Ok(if json {
                pretty(json!({ "valid": true, "vertices": n, "arrows": m, "relations": r }))
            } else {
                format!("ok: {n} vertices, {m} arrows, {r} relations\n")
            })
        }
        Cmd::Classify { file } => {
            let c = classify(&load(&file)?);
            if json {
                return Ok(pretty(
                    serde_json::to_value(&c).expect("classification serializes"),
                ));
            }
            let mut text = format!(
                "string: {}\nalmost_gentle: {}\nsag: {}\ngentle: {}\n",
                style.flag(c.is_string),
                style.flag(c.is_almost_gentle),
                style.flag(c.is_sag),
                style.flag(c.is_gentle)
            );
            for v in &c.violations {
                text += &format!("violation {}: {}\n", v.axiom, v.witness.join(" "));
            }
            Ok(text)
        }
        Cmd::Strings { file, max_letters } => {
            let bq = load(&file)?;
            let strings: Vec<String> = enumerate_strings(&bq, max_letters)?
                .iter()
                .map(|w| w.format(&bq))
                .collect();
            Ok(if json {
                pretty(json!({ "max_letters": max_letters, "strings": strings }))
            } else {
                strings.iter().map(|s| format!("{s}\n")).collect()
            })
        }
        Cmd::Bands { file, find } => {
            let bq = load(&file)?;
            if !find {
                let exists = walks::band_exists(&bq)?;
                return Ok(if json {
                    pretty(json!({ "band_exists": exists }))
                } else {
                    format!("band_exists: {}\n", style.flag(exists))
                });
            }
            let band = walks::find_band(&bq)?.map(|b| b.format(&bq));
            Ok(if json {
                pretty(json!({ "band_exists": band.is_some(), "band": band }))
            } else {
                let mut text = format!("band_exists: {}\n", style.flag(band.is_some()));
                if let Some(b) = band {
                    text += &format!("band: {b}\n");
                }
                text
            })
        }
        Cmd::Reptype { file } => {
            let t = walks::representation_type(&load(&file)?)?;
            Ok(if json {
                pretty(json!({ "representation_type": t }))
            } else {
                format!("{t}\n")
            })
        }
        Cmd::Forbidden { file } => {
            let bq = load(&file)?;
            let report = forbidden::report(&bq)?;
            if json {
                return Ok(pretty(
                    serde_json::to_value(&report).expect("report serializes"),
                ));
            }
            let mut text = format!("left forbidden: {}\n", report.left_forbidden.join(" "));
            for c in &report.cycles {
                let tag = if c.perfect { "perfect" } else { "not perfect" };
                text += &format!("cycle: {} ({tag})\n", c.arrows.join(" "));
            }
            text += &format!("perfect index: {}\n", report.perfect_index.join(" "));
            Ok(text)
        }
        Cmd::Transform { file, r, out, dot } => {
            let bq = load(&file)?;
            let index = resolve_index(&bq, &r)?;
            let tr = transform::r_transform(&bq, &index)?;
            emit_transform(&tr, json, out.as_deref(), dot.as_deref(), json!({}))
        }
        Cmd::Cma { file, out, dot } => {
            let bq = load(&file)?;
            let tr = transform::cma(&bq)?;
            let perfect = names(&bq, &tr.index.arrows);
            emit_transform(
                &tr,
                json,
                out.as_deref(),
                dot.as_deref(),
                json!({ "perfect_index": perfect }),
            )
        }
        Cmd::Homdim { file, from, to } => {
            let bq = load(&file)?;
            let s2 = parse_walk(&bq, &from)?;
            let s1 = parse_walk(&bq, &to)?;
            let d = strmod::hom_dim(&bq, &s2, &s1)?;
            Ok(if json {
                pretty(json!({ "from": s2.format(&bq), "to": s1.format(&bq), "dim": d }))
            } else {
                format!("{d}\n")
            })
        }
        Cmd::ModuleString {
            file,
            projective,
            arrow,
        } => {
            let bq = load(&file)?;
            let (label, w) = match (projective, arrow) {
                (Some(v), _) => (format!("P({v})"), projective_string(&bq, bq.vertex(&v)?)?),
                (None, Some(a)) => (format!("{a}A"), arrow_module_string(&bq, bq.arrow(&a)?)?),
                (None, None) => return Err(Failure::Usage("need --projective or --arrow".into())),
            };
            let canonical = canonical_string(&w).format(&bq);
            Ok(if json {
                pretty(json!({ "module": label, "string": w.format(&bq), "canonical": canonical }))
            } else {
                format!("{label}: {}\n", w.format(&bq))
            })
        }
        Cmd::Verify {
            file,
            r,
            all_indices,
            cap,
        } => {
            let bq = load(&file)?;
            let indices = if all_indices {
                let lf: Vec<_> = left_forbidden_arrows(&bq).into_iter().collect();
                let total = 1usize.checked_shl(lf.len() as u32).unwrap_or(usize::MAX);
                (0..total.min(cap))
                    .map(|mask| {
                        let chosen = lf
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, a)| *a);
                        Ok(validate_index(&bq, chosen)?)
                    })
                    .collect::<Result<Vec<_>, Failure>>()?
            } else {
                vec![resolve_index(&bq, &r)?]
            };
            let source_type = walks::representation_type(&bq)?;
            let mut rows = Vec::new();
            for index in &indices {
                let report = transform::verify_endo_dimension(&bq, index)?;
                let lifted_type = walks::representation_type(&report.result.quiver)?;
                let band_lifts = match walks::find_band(&bq)? {
                    Some(b) => {
                        let lifted = lift_cyclic_walk(&report.result, &b)?;
                        walks::validate_band(&report.result.quiver, &lifted)?.valid
                    }
                    None => true,
                };
                rows.push(json!({
                    "index": names(&bq, &index.arrows),
                    "dim_source_endo": report.dim_source_endo,
                    "dim_transformed": report.dim_transformed,
                    "dimensions_agree": report.dimensions_agree(),
                    "reptype_source": source_type,
                    "reptype_transformed": lifted_type,
                    "band_lifts": band_lifts,
                }));
            }
            if json {
                return Ok(pretty(json!({ "results": rows })));
            }
            let mut text = String::new();
            for row in &rows {
                text += &format!(
                    "{{{}}}: endo {} transformed {} agree {} reptype {}/{} band_lifts {}\n",
                    join_values(row["index"].as_array().expect("array")),
                    row["dim_source_endo"],
                    row["dim_transformed"],
                    style.flag(row["dimensions_agree"].as_bool().unwrap_or(false)),
                    source_type,
                    row["reptype_transformed"].as_str().unwrap_or("?"),
                    style.flag(row["band_lifts"].as_bool().unwrap_or(false)),
                );
            }
            Ok(text)
        }
        Cmd::Dim { file } => {
            let d = load(&file)?.algebra_dim()?;
            Ok(if json {
                pretty(json!({ "dim": d }))
            } else {
                format!("{d}\n")
            })
        }
        Cmd::ExportDot { file, out } => {
            let dot = to_dot(&load(&file)?);
            match out {
                Some(path) => {
                    write_file(&path, &dot)?;
                    Ok(if json {
                        pretty(json!({ "written": path.display().to_string() }))
                    } else {
                        String::new()
                    })
                }
                None if json => Ok(pretty(json!({ "dot": dot }))),
                None => Ok(dot),
            }
        }
        Cmd::Gen {
            seed,
            vertices,
            arrows,
            density,
            out,
        } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(Failure::Usage(format!(
                    "--density must lie in [0, 1], got {density}"
                )));
            }
            let bq = gen_random_sag(&RandomSagSpec::new(seed, vertices, arrows, density))?;
            if let Some(path) = &out {
                write_quiver(path, &bq)?;
            }
            Ok(if json {
                pretty(spec_json(&bq))
            } else if out.is_some() {
                String::new()
            } else {
                to_dsl(&bq)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let style = Style::detect();
    match run(cli, &style) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{} {e}", e.tag());
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
