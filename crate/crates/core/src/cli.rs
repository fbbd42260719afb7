//! Command-line interface.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog::{
    barycentric_sphere, catalog_json, enumerate_basic_flips, render_table, stacked_cross_sphere,
};
use crate::complex::{find_balanced_coloring, is_proper_coloring, Coloring, Complex, RelativeComplex};
use crate::diamond::{cross_polytope, diamond_closed_form, simplex_boundary, IndexSet};
use crate::io::{complex_from_json, complex_to_json, ShellingCertificate};
use crate::manifold::{is_combinatorial_manifold, ManifoldVerdict};
use crate::moves::remove_by_shellings;
use crate::script::run_script;
use crate::shelling::{find_shelling, is_relative_shelling, is_shelling, DEFAULT_BUDGET};
use crate::verify;
use crate::walk::{run_walk, WalkConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "crossflip", version, about = "Balanced simplicial complexes and cross-flips")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKind {
    CrossPolytope,
    SimplexBoundary,
    Diamond,
    Stacked,
    Barycentric,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum CheckKind {
    Manifold,
    Balanced,
    Induced,
    ShellingOrder,
    Shellable,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a standard complex as JSON.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Comma-separated index set, for `diamond`.
        #[arg(long)]
        index: Option<String>,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a property; `induced` and `shelling-order` take a second file.
    Check {
        what: CheckKind,
        file: PathBuf,
        second: Option<PathBuf>,
        /// Largest facet count `shellable` will search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Apply a move script.
    Flip {
        file: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random cross-flip walk; CSV rows go to stdout.
    Walk {
        /// Starting complex; the cross-polytope of `--dim` when omitted.
        start: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allowed flip class; repeat for several. All classes when omitted.
        #[arg(long)]
        index: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of basic cross-flip classes.
    Catalog {
        d: usize,
        /// Also write the catalog as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::TARGETS))]
        target: String,
        #[arg(default_value_t = 2)]
        d: usize,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

/// Parse `args` and run; returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match run(cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn read_complex(path: &Path) -> Result<(Complex, Option<Coloring>), Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    complex_from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => writeln!(stdout, "{text}").map_err(|e| usage(e.to_string())),
    }
}

fn parse_index(d: usize, text: &str) -> Result<IndexSet, Failure> {
    IndexSet::parse(d, text).map_err(|e| usage(format!("--index {text}: {e}")))
}

fn say(stdout: &mut dyn Write, line: String) {
    let _ = writeln!(stdout, "{line}");
}

fn run(cmd: Command, stdout: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Gen {
            kind,
            dim,
            index,
            copies,
            out,
        } => {
            let (c, k) = match kind {
                GenKind::CrossPolytope => {
                    let c = cross_polytope(dim);
                    let k = Coloring::by_index(&c);
                    (c, k)
                }
                GenKind::SimplexBoundary => (simplex_boundary(dim), None),
                GenKind::Diamond => {
                    let text = index.ok_or_else(|| usage("diamond needs --index"))?;
                    let i = parse_index(dim, &text)?;
                    let c = diamond_closed_form(&i);
                    let k = Coloring::by_index(&c);
                    (c, k)
                }
                GenKind::Stacked => {
                    if copies == 0 {
                        return Err(usage("--copies must be at least 1"));
                    }
                    let (c, k) = stacked_cross_sphere(copies, dim);
                    (c, Some(k))
                }
                GenKind::Barycentric => {
                    let (c, k) = barycentric_sphere(dim).map_err(|e| Failure {
                        code: EXIT_UNDECIDED,
                        message: e.to_string(),
                    })?;
                    (c, Some(k))
                }
            };
            emit(&out, &complex_to_json(&c, k.as_ref()), stdout)?;
            Ok(EXIT_PASS)
        }
        Command::Check {
            what,
            file,
            second,
            budget,
        } => check(what, &file, second.as_deref(), budget, stdout),
        Command::Flip { file, script, out } => {
            let (c, k) = read_complex(&file)?;
            let text = fs::read_to_string(&script)
                .map_err(|e| usage(format!("{}: {e}", script.display())))?;
            match run_script(&c, k.as_ref(), &text) {
                Ok((c, k)) => {
                    emit(&out, &complex_to_json(&c, k.as_ref()), stdout)?;
                    Ok(EXIT_PASS)
                }
                Err(e) => Err(Failure {
                    code: EXIT_FAIL,
                    message: e.to_string(),
                }),
            }
        }
        Command::Walk {
            start,
            dim,
            steps,
            seed,
            index,
            out,
        } => {
            let (c, k) = match start {
                Some(p) => read_complex(&p)?,
                None => {
                    let c = cross_polytope(dim);
                    let k = Coloring::by_index(&c);
                    (c, k)
                }
            };
            let d = c.dim().max(0) as usize;
            let k = match k.or_else(|| find_balanced_coloring(&c)) {
                Some(k) => k,
                None => return Err(usage("starting complex is not balanced")),
            };
            let mut cfg = WalkConfig::all_flips(d, steps, seed);
            if !index.is_empty() {
                cfg.allowed_flips = index
                    .iter()
                    .map(|t| parse_index(d, t))
                    .collect::<Result<_, _>>()?;
            }
            let walk = run_walk(&cfg, &c, &k).map_err(|e| Failure {
                code: EXIT_FAIL,
                message: e.to_string(),
            })?;
            write!(stdout, "{}", walk.csv()).map_err(|e| usage(e.to_string()))?;
            if let Some(p) = out {
                emit(&Some(p), &complex_to_json(&walk.complex, Some(&walk.coloring)), stdout)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Catalog { d, out } => {
            let classes = enumerate_basic_flips(d).map_err(|e| Failure {
                code: EXIT_UNDECIDED,
                message: e.to_string(),
            })?;
            write!(stdout, "{}", render_table(&classes)).map_err(|e| usage(e.to_string()))?;
            if let Some(p) = out {
                emit(&Some(p), &catalog_json(&classes), stdout)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { target, d } => {
            let report = verify::run(&target, d).map_err(|e| Failure {
                code: EXIT_UNDECIDED,
                message: e.to_string(),
            })?;
            let tag = if report.passed { "PASS" } else { "FAIL" };
            say(stdout, format!("{tag} {target} d={d}: {}", report.detail));
            Ok(if report.passed { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

fn verdict(stdout: &mut dyn Write, ok: bool, reason: String) -> Outcome {
    say(stdout, format!("{}: {reason}", if ok { "pass" } else { "fail" }));
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn check(
    what: CheckKind,
    file: &Path,
    second: Option<&Path>,
    budget: usize,
    stdout: &mut dyn Write,
) -> Outcome {
    let (c, k) = read_complex(file)?;
    let needs_second = matches!(what, CheckKind::Induced | CheckKind::ShellingOrder);
    if needs_second != second.is_some() {
        return Err(usage(if needs_second {
            "this check needs a second file"
        } else {
            "unexpected second file"
        }));
    }
    match what {
        CheckKind::Manifold => {
            let v = is_combinatorial_manifold(&c).map_err(|e| Failure {
                code: EXIT_FAIL,
                message: e.to_string(),
            })?;
            match v {
                ManifoldVerdict::Closed => verdict(stdout, true, "closed combinatorial manifold".into()),
                ManifoldVerdict::WithBoundary => {
                    verdict(stdout, true, "combinatorial manifold with boundary".into())
                }
                ManifoldVerdict::No => verdict(stdout, false, "some vertex link is not a sphere or ball".into()),
                ManifoldVerdict::Undecided => {
                    say(stdout, format!("undecided: dimension {} is beyond the exact check", c.dim()));
                    Ok(EXIT_UNDECIDED)
                }
            }
        }
        CheckKind::Balanced => {
            let colors = (c.dim() + 1).max(1) as usize;
            match k {
                Some(k) => {
                    let ok = is_proper_coloring(&c, &k, colors);
                    verdict(stdout, ok, format!("stored coloring with {colors} colors"))
                }
                None => {
                    let ok = find_balanced_coloring(&c).is_some();
                    verdict(stdout, ok, format!("search for a {colors}-coloring"))
                }
            }
        }
        CheckKind::Shellable => match find_shelling(&c, budget) {
            Ok(Some(order)) => {
                let restrictions = is_shelling(&c, &order).map(|v| v.restrictions).unwrap_or_default();
                let cert = ShellingCertificate {
                    order,
                    restrictions,
                    removal: false,
                };
                verdict(stdout, true, format!("order {}", cert.to_json()))
            }
            Ok(None) => verdict(stdout, false, "no shelling order exists".into()),
            Err(e) => {
                say(stdout, format!("undecided: {e}"));
                Ok(EXIT_UNDECIDED)
            }
        },
        CheckKind::Induced => {
            let (sub, _) = read_complex(second.expect("checked"))?;
            match c.is_induced(&sub) {
                Ok(ok) => verdict(stdout, ok, "induced subcomplex test".into()),
                Err(e) => verdict(stdout, false, e.to_string()),
            }
        }
        CheckKind::ShellingOrder => {
            let path = second.expect("checked");
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let cert = ShellingCertificate::from_json(&text)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            if cert.removal {
                return match remove_by_shellings(&c, &cert.order) {
                    Ok(_) => verdict(stdout, true, format!("{} facets removed", cert.order.len())),
                    Err((i, e)) => verdict(
                        stdout,
                        false,
                        format!("fails at facet {} ({}): {e}", i + 1, cert.order[i]),
                    ),
                };
            }
            let listed = Complex::generated(cert.order.iter().cloned());
            let removed = c.delete_subcomplex(&listed);
            let rc = RelativeComplex::new(c, removed).expect("generated by facets of c");
            let v = is_relative_shelling(&rc, &cert.order).map_err(|e| Failure {
                code: EXIT_FAIL,
                message: e.to_string(),
            })?;
            if let Some(i) = v.failing_index {
                let mins = v.minimal_new_faces.iter().map(ToString::to_string).collect::<Vec<_>>();
                return verdict(
                    stdout,
                    false,
                    format!(
                        "fails at facet {} ({}): minimal new faces [{}]",
                        i + 1,
                        cert.order[i],
                        mins.join(" ")
                    ),
                );
            }
            if !cert.restrictions.is_empty() && cert.restrictions != v.restrictions {
                let j = cert
                    .restrictions
                    .iter()
                    .zip(&v.restrictions)
                    .position(|(a, b)| a != b)
                    .unwrap_or(0);
                return verdict(stdout, false, format!("restriction face {} differs", j + 1));
            }
            verdict(stdout, true, format!("{} facets shelled", cert.order.len()))
        }
    }
}
