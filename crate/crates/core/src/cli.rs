//! The `djsplit` command-line driver.
//!
//! Every command prints one canonical JSON document (sorted keys, two-space
//! indent) except `gen`, which prints a facet file. Exit codes: 0 success,
//! 1 negative search or failed verification, 2 input error.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::{SrElement, TermJson};
use crate::coloring::{self, Coloring, OrderPolicy};
use crate::complex::{self, Family, SimplicialComplex};
use crate::moment_angle::{self, AuditConfig};
use crate::splitting::{self, ClassEntry, ExtractOptions, Mode, SplittingCertificate, SplittingVerifier};

/// Largest `m` for commands that expand products of classes in `ℤ[K]`.
pub const CLASS_EXPANSION_MAX_M: usize = 24;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "DJSPLIT_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "djsplit",
    version,
    about = "Colorings of simplicial complexes and their splitting certificates"
)]
pub struct Cli {
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex count, dimension, f-vector and minimal non-faces.
    Info {
        /// Facet file or JSON complex; `-` reads stdin.
        file: PathBuf,
    },
    /// Find a coloring, exactly (least palette, or a given one) or greedily.
    #[command(group(ArgGroup::new("method").required(true).args(["exact", "greedy"])))]
    Color {
        /// Facet file or JSON complex; `-` reads stdin.
        file: PathBuf,
        /// Branch and bound; least palette unless `-r` is given.
        #[arg(long)]
        exact: bool,
        /// DSatur greedy; an upper bound only.
        #[arg(long)]
        greedy: bool,
        /// Palette size to search for.
        #[arg(short = 'r', value_name = "INT")]
        r: Option<usize>,
    },
    /// Build the certificate of a coloring and check its identities.
    Certify {
        /// Facet file or JSON complex; `-` reads stdin.
        file: PathBuf,
        /// Coloring as a JSON list or `color` output.
        #[arg(long, value_name = "PATH")]
        coloring: PathBuf,
        /// Identities to check.
        #[arg(long, default_value = "both", value_name = "chern|pontrjagin|both")]
        mode: Mode,
    },
    /// Read a coloring back off a list of degree-2 classes.
    Extract {
        /// Facet file or JSON complex; `-` reads stdin.
        file: PathBuf,
        /// Classes as JSON, or `certify` output.
        #[arg(long, value_name = "PATH")]
        classes: PathBuf,
        /// Defaults to the certificate's own mode, else `both`.
        #[arg(long, value_name = "chern|pontrjagin|both")]
        mode: Option<Mode>,
        /// Also check the restriction of the classes to every face.
        #[arg(long)]
        verify_faces: bool,
    },
    /// Sample the moment-angle complex and audit the fiberwise isomorphism.
    VerifyLemma {
        /// Facet file or JSON complex; `-` reads stdin.
        file: PathBuf,
        /// Coloring as a JSON list or `color` output.
        #[arg(long, value_name = "PATH")]
        coloring: PathBuf,
        /// Random points per color class.
        #[arg(long, default_value_t = 1000, value_name = "INT")]
        samples: usize,
        /// Seed for all sampling streams.
        #[arg(long, default_value_t = 0, value_name = "U64")]
        seed: u64,
        /// Injectivity threshold on `σ_min / σ_max`.
        #[arg(long, default_value_t = 1e-9, value_name = "FLOAT")]
        tol: f64,
    },
    /// Print a complex from a named family as a facet file.
    Gen {
        /// simplex-boundary, cross-polytope, cycle, simplex or edgeless.
        family: String,
        /// Vertex count, dimension or cycle length, by family.
        param: usize,
    },
    /// Chromatic number, certificate, identities and round trip in one report.
    Report {
        /// Facet file or JSON complex; `-` reads stdin.
        file: PathBuf,
    },
}

/// What a command produced, before it is written out.
enum Output {
    Json(Value),
    Text(String),
}

struct Outcome {
    output: Output,
    code: i32,
}

impl Outcome {
    fn json(value: Value, ok: bool) -> Self {
        Outcome {
            output: Output::Json(value),
            code: if ok { EXIT_OK } else { EXIT_NEGATIVE },
        }
    }
}

/// An input error: reported on stderr, exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
///
/// Reads `-` paths from `stdin`. Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_INPUT;
        }
    };
    let piped = if cli.command.reads_stdin() {
        let mut buf = Vec::new();
        if let Err(e) = stdin.read_to_end(&mut buf) {
            let _ = writeln!(stderr, "error: stdin: {e}");
            return EXIT_INPUT;
        }
        Some(buf)
    } else {
        None
    };
    let mut input = Stdin { piped, used: false };
    let result = pool.install(|| dispatch(&cli.command, &mut input));
    match result {
        Ok(outcome) => {
            let text = match outcome.output {
                Output::Json(value) => canonical_json(&value),
                Output::Text(text) => text,
            };
            match write_output(cli.out.as_deref(), &text, stdout) {
                Ok(()) => outcome.code,
                Err(InputError(msg)) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_INPUT
                }
            }
        }
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
    }
}

/// Pretty-printed JSON with object keys in sorted order, plus a newline.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn thread_pool() -> Result<rayon::ThreadPool, InputError> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => {
                return Err(InputError(format!(
                    "{THREADS_ENV} must be a positive integer, got `{v}`"
                )))
            }
        },
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| InputError(format!("cannot start worker threads: {e}")))
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), InputError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| InputError(format!("stdout: {e}"))),
    }
}

impl Command {
    fn paths(&self) -> Vec<&Path> {
        match self {
            Command::Info { file } | Command::Color { file, .. } | Command::Report { file } => vec![file],
            Command::Certify { file, coloring, .. } | Command::VerifyLemma { file, coloring, .. } => {
                vec![file, coloring]
            }
            Command::Extract { file, classes, .. } => vec![file, classes],
            Command::Gen { .. } => vec![],
        }
    }

    fn reads_stdin(&self) -> bool {
        self.paths().iter().any(|p| p.as_os_str() == "-")
    }
}

/// Standard input, read up front when some path is `-`.
struct Stdin {
    piped: Option<Vec<u8>>,
    used: bool,
}

impl Stdin {
    fn read(&mut self, path: &Path) -> Result<String, InputError> {
        if path.as_os_str() == "-" {
            if self.used {
                return Err(InputError("stdin (`-`) can only be read once".into()));
            }
            self.used = true;
            let buf = self.piped.take().unwrap_or_default();
            return String::from_utf8(buf).map_err(|_| InputError("stdin: not valid UTF-8".into()));
        }
        let bytes = fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        String::from_utf8(bytes).map_err(|_| InputError(format!("{}: not valid UTF-8", path.display())))
    }

    fn complex(&mut self, path: &Path) -> Result<SimplicialComplex, InputError> {
        let text = self.read(path)?;
        complex::parse_complex(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

fn path_str(path: &Path) -> String {
    path.display().to_string()
}

fn dispatch(command: &Command, input: &mut Stdin) -> Result<Outcome, InputError> {
    match command {
        Command::Info { file } => cmd_info(file, input),
        Command::Color {
            file,
            exact,
            greedy: _,
            r,
        } => cmd_color(file, *exact, *r, input),
        Command::Certify { file, coloring, mode } => cmd_certify(file, coloring, *mode, input),
        Command::Extract {
            file,
            classes,
            mode,
            verify_faces,
        } => cmd_extract(file, classes, *mode, *verify_faces, input),
        Command::VerifyLemma {
            file,
            coloring,
            samples,
            seed,
            tol,
        } => cmd_verify_lemma(file, coloring, *samples, *seed, *tol, input),
        Command::Gen { family, param } => cmd_gen(family, *param),
        Command::Report { file } => cmd_report(file, input),
    }
}

fn config(command: &str, entries: &[(&str, Value)]) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    for (k, v) in entries {
        if !v.is_null() {
            map.insert((*k).into(), v.clone());
        }
    }
    Value::Object(map)
}

fn with_config(config: Value, body: Value) -> Value {
    let mut body = match body {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    body.insert("config".into(), config);
    Value::Object(body)
}

fn guard_expansion(k: &SimplicialComplex) -> Result<(), InputError> {
    let m = k.vertex_count();
    if m > CLASS_EXPANSION_MAX_M {
        return Err(InputError(format!(
            "m = {m} exceeds the limit of {CLASS_EXPANSION_MAX_M} vertices for expanding classes in the Stanley-Reisner ring"
        )));
    }
    Ok(())
}

fn cmd_info(file: &Path, input: &mut Stdin) -> Result<Outcome, InputError> {
    let k = input.complex(file)?;
    let faces_of = |fs: &[complex::Face]| fs.iter().map(|f| f.vertices()).collect::<Vec<_>>();
    let body = json!({
        "m": k.vertex_count(),
        "dim": k.dimension(),
        "facets": faces_of(k.facets()),
        "f_vector": k.f_vector()?,
        "minimal_non_faces": faces_of(&k.minimal_non_faces()?),
        "is_flag_like": k.is_flag_like()?,
        "ghost_vertices": k.ghost_vertices(),
    });
    let cfg = config("info", &[("input", json!(path_str(file)))]);
    Ok(Outcome::json(with_config(cfg, body), true))
}

fn coloring_json(g: &Coloring) -> Value {
    json!({ "r": g.palette_size(), "colors": g.colors(), "used_colors": g.used_colors() })
}

fn cmd_color(file: &Path, exact: bool, r: Option<usize>, input: &mut Stdin) -> Result<Outcome, InputError> {
    let k = input.complex(file)?;
    if r == Some(0) {
        return Err(InputError("-r must be at least 1".into()));
    }
    let found = if exact {
        let r = r.unwrap_or_else(|| coloring::chromatic_number(&k));
        coloring::find_coloring(&k, r)
    } else {
        let g = coloring::greedy_color(&k, OrderPolicy::Dsatur);
        match r {
            Some(r) if g.palette_size() > r => None,
            Some(r) => Some(Coloring::new(r, g.colors().to_vec())?),
            None => Some(g),
        }
    };
    let cfg = config(
        "color",
        &[
            ("input", json!(path_str(file))),
            ("method", json!(if exact { "exact" } else { "greedy" })),
            ("r", json!(r)),
        ],
    );
    Ok(match found {
        Some(g) => Outcome::json(with_config(cfg, coloring_json(&g)), true),
        None => Outcome::json(with_config(cfg, json!({ "result": "none" })), false),
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ColoringDoc {
    Bare(Vec<usize>),
    Object { colors: Vec<usize>, r: Option<usize> },
}

fn read_coloring(path: &Path, k: &SimplicialComplex, input: &mut Stdin) -> Result<Coloring, InputError> {
    let text = input.read(path)?;
    let doc: ColoringDoc = serde_json::from_str(&text).map_err(|e| {
        InputError(format!(
            "{}: expected {{\"r\": int, \"colors\": [int, ...]}} or a list of colors ({e})",
            path.display()
        ))
    })?;
    let (colors, r) = match doc {
        ColoringDoc::Bare(colors) => (colors, None),
        ColoringDoc::Object { colors, r } => (colors, r),
    };
    let r = r.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(1));
    let g = Coloring::new(r, colors).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    if g.len() != k.vertex_count() {
        return Err(InputError(format!(
            "{}: coloring has {} entries but the complex has {} vertices",
            path.display(),
            g.len(),
            k.vertex_count()
        )));
    }
    Ok(g)
}

fn cmd_certify(file: &Path, coloring_path: &Path, mode: Mode, input: &mut Stdin) -> Result<Outcome, InputError> {
    let k = input.complex(file)?;
    guard_expansion(&k)?;
    let g = read_coloring(coloring_path, &k, input)?;
    if g.palette_size() > k.vertex_count() {
        return Err(InputError(format!(
            "palette size {} exceeds the vertex count {}; a certificate has at most m classes",
            g.palette_size(),
            k.vertex_count()
        )));
    }
    let classes = splitting::classes_from_assignment(&k, &g)?;
    let cert = SplittingCertificate::new(&k, classes, mode)?;
    let verifier = SplittingVerifier::new(&k)?;
    let chern = if mode.checks_chern() {
        Some(verifier.chern(cert.classes())?)
    } else {
        None
    };
    let pontrjagin = if mode.checks_pontrjagin() {
        Some(verifier.pontrjagin(cert.classes())?)
    } else {
        None
    };
    let collapsed = coloring::first_collapsed_face(&k, &g);
    let verified = chern.unwrap_or(true) && pontrjagin.unwrap_or(true);
    let body = json!({
        "certificate": serde_json::to_value(cert.to_json())?,
        "chern_identity": chern,
        "pontrjagin_identity": pontrjagin,
        "proper": collapsed.is_none(),
        "collapsed_face": collapsed.map(|f| f.vertices()),
        "verified": verified,
        "evidence": "cohomological certificate",
    });
    let cfg = config(
        "certify",
        &[
            ("input", json!(path_str(file))),
            ("coloring", json!(path_str(coloring_path))),
            ("mode", json!(mode)),
        ],
    );
    Ok(Outcome::json(with_config(cfg, body), verified))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ClassDoc {
    Linear(Vec<ClassEntry>),
    Terms(Vec<TermJson>),
}

/// Accepts a bare list of classes, a certificate, or a `certify` output.
fn read_classes(
    path: &Path,
    k: &SimplicialComplex,
    input: &mut Stdin,
) -> Result<(Vec<SrElement>, Option<Mode>), InputError> {
    let text = input.read(path)?;
    let bad = |msg: String| InputError(format!("{}: {msg}", path.display()));
    let mut doc: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if let Some(cert) = doc.get_mut("certificate") {
        doc = cert.take();
    }
    let mode = match doc.get("mode") {
        Some(m) => Some(Mode::deserialize(m).map_err(|e| bad(e.to_string()))?),
        None => None,
    };
    let list = match doc {
        Value::Array(list) => list,
        Value::Object(mut map) => match map.remove("classes") {
            Some(Value::Array(list)) => list,
            _ => return Err(bad("expected a `classes` array".into())),
        },
        _ => return Err(bad("expected a list of classes or an object with `classes`".into())),
    };
    let mut classes = Vec::with_capacity(list.len());
    for (i, item) in list.into_iter().enumerate() {
        let class = ClassDoc::deserialize(item).map_err(|_| {
            bad(format!(
                "class {} must be a list of {{\"vertex\", \"coef\"}} or {{\"coef\", \"mono\"}} entries",
                i + 1
            ))
        })?;
        let x = match class {
            ClassDoc::Linear(entries) => splitting::classes_from_json(k, std::slice::from_ref(&entries))
                .map_err(|e| bad(e.to_string()))?
                .remove(0),
            ClassDoc::Terms(terms) => SrElement::from_json(k, &terms).map_err(|e| bad(e.to_string()))?,
        };
        classes.push(x);
    }
    Ok((classes, mode))
}

fn cmd_extract(
    file: &Path,
    classes_path: &Path,
    mode: Option<Mode>,
    verify_faces: bool,
    input: &mut Stdin,
) -> Result<Outcome, InputError> {
    let k = input.complex(file)?;
    guard_expansion(&k)?;
    let (classes, doc_mode) = read_classes(classes_path, &k, input)?;
    let mode = mode.or(doc_mode).unwrap_or_default();
    let cfg = config(
        "extract",
        &[
            ("input", json!(path_str(file))),
            ("classes", json!(path_str(classes_path))),
            ("mode", json!(mode)),
            ("verify_faces", json!(verify_faces)),
        ],
    );
    let opts = ExtractOptions { mode, verify_faces };
    Ok(match splitting::extract_coloring(&k, &classes, opts) {
        Ok(g) => Outcome::json(with_config(cfg, json!({ "coloring": coloring_json(&g) })), true),
        Err(e) => {
            let error = json!({ "kind": e.kind(), "location": e.location(), "message": e.to_string() });
            Outcome::json(with_config(cfg, json!({ "error": error })), false)
        }
    })
}

fn cmd_verify_lemma(
    file: &Path,
    coloring_path: &Path,
    samples: usize,
    seed: u64,
    tol: f64,
    input: &mut Stdin,
) -> Result<Outcome, InputError> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(InputError(format!(
            "--tol must be a finite non-negative number, got {tol}"
        )));
    }
    let k = input.complex(file)?;
    let g = read_coloring(coloring_path, &k, input)?;
    let cfg = AuditConfig {
        samples,
        seed,
        injectivity_tol: tol,
        ..AuditConfig::default()
    };
    let report = moment_angle::audit_lemma(&k, &g, &cfg)?;
    let proper = coloring::is_coloring(&k, &g);
    let pass = report.pass;
    let mut body = serde_json::to_value(report)?;
    body["proper"] = json!(proper);
    let run = config(
        "verify-lemma",
        &[
            ("input", json!(path_str(file))),
            ("coloring", json!(path_str(coloring_path))),
            ("samples", json!(samples)),
            ("seed", json!(seed)),
            ("tol", json!(tol)),
        ],
    );
    body["run"] = run;
    Ok(Outcome::json(body, pass))
}

fn cmd_gen(family: &str, param: usize) -> Result<Outcome, InputError> {
    let family: Family = family.parse()?;
    let k = family.generate(param)?;
    Ok(Outcome {
        output: Output::Text(k.to_facet_text()),
        code: EXIT_OK,
    })
}

fn cmd_report(file: &Path, input: &mut Stdin) -> Result<Outcome, InputError> {
    let k = input.complex(file)?;
    guard_expansion(&k)?;
    let report = splitting::equivalence_report(&k)?;
    let ok = report.conditions.all() && report.round_trip.exact;
    let cfg = config("report", &[("input", json!(path_str(file)))]);
    Ok(Outcome::json(with_config(cfg, serde_json::to_value(report)?), ok))
}
