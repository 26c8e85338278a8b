//! Batch command-line front end.
//!
//! Exit codes: 0 when the verdict is positive, 1 when an input or a checked
//! property fails, 2 for unreadable files, bad JSON, and bad arguments.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;

use crate::chain::betti;
use crate::chfunctor::{ch_category, homotopy_report};
use crate::fincat::{
    CategoryDescription, FinCategory, Functor, FunctorDescription, NatTransf, NatTransfDescription,
};
use crate::nerve::{check_two_coskeletal, nerve};
use crate::ratlinalg::{format_vector, parse_vector};
use crate::twovect::{
    eckmann_hilton_check, eckmann_hilton_exhaustive, eckmann_hilton_sampled, solve_composition,
    CompositionSolution, EhVerdict, GraphDocument, MagmaDocument, MagmaPair,
};

#[derive(Debug, Parser)]
#[command(
    name = "cathom",
    version,
    about = "Finite categories, nerves, chain complexes and homology over ℚ"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a category description against the axioms.
    Validate { category: PathBuf },
    /// Simplex counts of the truncated nerve.
    Nerve {
        category: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// Also list every simplex.
        #[arg(long)]
        list: bool,
    },
    /// The alternating (or normalized) chain complex as JSON.
    Chain {
        category: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long)]
        normalized: bool,
    },
    /// Betti numbers over ℚ; the top truncated degree is parenthesized.
    Homology {
        category: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        normalized: bool,
    },
    /// Unique fillers of compatible boundaries in dimension 3 (and 4).
    Coskeletal {
        category: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
        max_dim: u8,
    },
    /// `g ⋄ f` on a reflexive graph.
    Diamond {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Solve the unit laws for the composition of a reflexive graph.
    SolveComp { graph: PathBuf },
    /// Eckmann–Hilton on one magma pair, or over all pairs on a small carrier.
    EhCheck {
        magma: Option<PathBuf>,
        #[arg(long)]
        exhaustive_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pairs drawn when the carrier is too large to enumerate.
        #[arg(long, default_value_t = 10000)]
        samples: usize,
    },
    /// Verify the chain homotopy induced by `alpha : F ⇒ G`.
    Homotopy {
        source: PathBuf,
        target: PathBuf,
        from: PathBuf,
        to: PathBuf,
        alpha: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

/// Largest carrier enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 3;

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn schema(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::schema(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::schema(format!("{}: {e}", path.display())))
}

fn load_category(path: &Path) -> Result<FinCategory, Failure> {
    let raw: CategoryDescription = read_json(path)?;
    FinCategory::from_description(&raw)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load_functor(
    path: &Path,
    src: &Arc<FinCategory>,
    tgt: &Arc<FinCategory>,
) -> Result<Functor, Failure> {
    let raw: FunctorDescription = read_json(path)?;
    Functor::from_description(src.clone(), tgt.clone(), &raw)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<crate::twovect::ReflexiveVectGraph, Failure> {
    let doc: GraphDocument = read_json(path)?;
    doc.to_graph()
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

/// `b0=1 b1=0 (b2=?)`
pub fn format_betti(reliable: &[usize], top: usize) -> String {
    let mut parts: Vec<String> = reliable
        .iter()
        .enumerate()
        .map(|(n, b)| format!("b{n}={b}"))
        .collect();
    parts.push(format!("(b{top}=?)"));
    parts.join(" ")
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { category } => {
            let raw: CategoryDescription = read_json(&category)?;
            match FinCategory::from_description(&raw) {
                Ok(c) => Ok((
                    format!(
                        "valid: {} objects, {} morphisms, {} composites\n",
                        c.object_count(),
                        c.morphism_count(),
                        c.composite_count()
                    ),
                    0,
                )),
                Err(e) => {
                    let lines: String = e.violations.iter().map(|v| format!("  {v}\n")).collect();
                    Ok((
                        format!("invalid: {} violation(s)\n{lines}", e.violations.len()),
                        1,
                    ))
                }
            }
        }
        Command::Nerve {
            category,
            max_dim,
            list,
        } => {
            let c = load_category(&category)?;
            let n = nerve(&c, max_dim);
            let s = n.set();
            let mut out = format!(
                "counts: {:?}\nnondegenerate: {:?}\n",
                s.counts(),
                s.nondegenerate_counts()
            );
            if list {
                for d in 0..=max_dim {
                    out.push_str(&format!("dim {d}:\n"));
                    for label in s.labels(d) {
                        out.push_str(&format!("  {label}\n"));
                    }
                }
            }
            Ok((out, 0))
        }
        Command::Chain {
            category,
            max_dim,
            normalized,
        } => {
            let r = ch_category(Arc::new(load_category(&category)?), max_dim)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let c = if normalized {
                &r.normalized
            } else {
                &r.complex
            };
            let json = serde_json::to_string_pretty(&c.to_document()).expect("documents serialize");
            Ok((json + "\n", 0))
        }
        Command::Homology {
            category,
            max_dim,
            normalized,
        } => {
            let r = ch_category(Arc::new(load_category(&category)?), max_dim)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let c = if normalized {
                &r.normalized
            } else {
                &r.complex
            };
            let reliable = if max_dim == 0 {
                Vec::new()
            } else {
                betti(c, max_dim - 1).expect("below the top degree")
            };
            Ok((format_betti(&reliable, max_dim) + "\n", 0))
        }
        Command::Coskeletal { category, max_dim } => {
            let c = load_category(&category)?;
            let n = nerve(&c, max_dim as usize);
            let report = check_two_coskeletal(n.set(), max_dim == 4)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let mut out = report.to_string();
            for v in &report.violations {
                out.push_str(&v.describe(n.set()));
                out.push('\n');
            }
            out.push_str(if report.is_ok() {
                "Ok\n"
            } else {
                "Violation\n"
            });
            Ok((out, if report.is_ok() { 0 } else { 1 }))
        }
        Command::Diamond { graph, f, g } => {
            let graph = load_graph(&graph)?;
            let fv = parse_vector(&f).map_err(|e| Failure::schema(format!("--f: {e}")))?;
            let gv = parse_vector(&g).map_err(|e| Failure::schema(format!("--g: {e}")))?;
            let v = graph
                .diamond(&gv, &fv)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            Ok((format_vector(&v) + "\n", 0))
        }
        Command::SolveComp { graph } => {
            let graph = load_graph(&graph)?;
            match solve_composition(&graph).map_err(|e| Failure::invalid(e.to_string()))? {
                CompositionSolution::Unique { equals_diamond, .. } => {
                    let verdict = if equals_diamond { "yes" } else { "no" };
                    Ok((
                        format!("Unique; equals diamond: {verdict}\n"),
                        if equals_diamond { 0 } else { 1 },
                    ))
                }
                CompositionSolution::Affine(d) => Ok((format!("Affine({d})\n"), 1)),
                CompositionSolution::None => Ok(("None\n".into(), 1)),
            }
        }
        Command::EhCheck {
            magma,
            exhaustive_size,
            seed,
            samples,
        } => eh_check(magma, exhaustive_size, seed, samples),
        Command::Homotopy {
            source,
            target,
            from,
            to,
            alpha,
            max_dim,
        } => {
            let c = Arc::new(load_category(&source)?);
            let d = Arc::new(load_category(&target)?);
            let f = load_functor(&from, &c, &d)?;
            let g = load_functor(&to, &c, &d)?;
            let raw: NatTransfDescription = read_json(&alpha)?;
            let a = NatTransf::from_description(f, g, &raw)
                .map_err(|e| Failure::invalid(format!("{}: {e}", alpha.display())))?;
            let src = ch_category(c, max_dim).map_err(|e| Failure::invalid(e.to_string()))?;
            let tgt = ch_category(d, max_dim).map_err(|e| Failure::invalid(e.to_string()))?;
            let report =
                homotopy_report(&a, &src, &tgt).map_err(|e| Failure::invalid(e.to_string()))?;
            Ok((format!("{report}\n"), if report.is_ok() { 0 } else { 1 }))
        }
    }
}

fn eh_check(
    magma: Option<PathBuf>,
    exhaustive_size: Option<usize>,
    seed: u64,
    samples: usize,
) -> Outcome {
    let mut out = String::new();
    let mut code = 0;
    if let Some(path) = &magma {
        let doc: MagmaDocument = read_json(path)?;
        let p = MagmaPair::from_document(&doc)
            .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
        let verdict = eckmann_hilton_check(&p)
            .map_err(|e| Failure::invalid(format!("internal error: {e}")))?;
        if matches!(verdict, EhVerdict::InterchangeViolation { .. }) {
            code = 1;
        }
        out.push_str(&format!("{verdict}\n"));
    }
    if let Some(k) = exhaustive_size {
        if k == 0 {
            return Err(Failure::schema("--exhaustive-size must be at least 1"));
        }
        let (mode, summary) = if k <= EXHAUSTIVE_LIMIT {
            ("exhaustive", eckmann_hilton_exhaustive(k))
        } else {
            (
                "sampled",
                eckmann_hilton_sampled(&mut ChaCha8Rng::seed_from_u64(seed), k, samples),
            )
        };
        out.push_str(&format!(
            "size {k} ({mode}): {} pairs, {} satisfy interchange, {} counterexamples\n",
            summary.pairs_checked,
            summary.interchange_pairs,
            summary.counterexamples.len()
        ));
        for c in &summary.counterexamples {
            out.push_str(&format!("  {c}\n"));
        }
        if !summary.counterexamples.is_empty() {
            code = 1;
        }
    }
    if magma.is_none() && exhaustive_size.is_none() {
        return Err(Failure::schema(
            "eh-check needs a magma file or --exhaustive-size",
        ));
    }
    Ok((out, code))
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                return 2;
            }
            let _ = stdout.write_all(text.as_bytes());
            return 0;
        }
    };
    match execute(cli.command) {
        Ok((out, code)) => {
            let _ = stdout.write_all(out.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_formatting() {
        assert_eq!(format_betti(&[1, 0, 0], 3), "b0=1 b1=0 b2=0 (b3=?)");
        assert_eq!(format_betti(&[], 0), "(b0=?)");
    }

    #[test]
    fn bad_arguments_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["cathom", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(
            run(
                ["cathom", "coskeletal", "x.json", "--max-dim", "5"],
                &mut out,
                &mut err
            ),
            2
        );
        assert_eq!(
            run(
                ["cathom", "validate", "/nonexistent.json"],
                &mut out,
                &mut err
            ),
            2
        );
        assert_eq!(run(["cathom", "eh-check"], &mut out, &mut err), 2);
    }
}
