use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use prelie_core::anticyclic::{cyc_normal, gamma, CycPreLieElem, PermCycElem};
use prelie_core::cyclie_embed::{conjecture_report, indec_series, lambda_map, series_residuals, theta};
use prelie_core::exactalg::{cyclie_series, prelie_series, Egf};
use prelie_core::lie::{CycLieElem, LieVector};
use prelie_core::prelie::{bracket, compose_partial, prelie_product, reduce_rv1, TreeVector, WedgeVector};
use prelie_core::rho_iso::rho;
use prelie_core::trees::{enumerate_trees, label_set, parse_tree, standard_labels};
use prelie_core::verify::{run_suite, Suite, VerifyConfig};
use prelie_core::{Error, Label};

/// Exact computations in the PreLie operad.
#[derive(Parser)]
#[command(name = "prelie", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the rooted trees on the labels 1..n.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Partial composition S ∘_pos T.
    Compose { s: String, pos: String, t: String },
    /// The pre-Lie product S ◁ T.
    Product { s: String, t: String },
    /// The bracket S ◁ T − T ◁ S.
    Bracket { s: String, t: String },
    /// Rewrite a tree as root-valence-1 trees plus δ₂ of a witness.
    #[command(name = "reduce-rv1")]
    ReduceRv1 { tree: String },
    /// Γ_b of a wedge such as "x ^ (y z)".
    Gamma {
        #[arg(long)]
        at: String,
        wedge: String,
    },
    /// Normal form of a wedge in CycPreLie.
    #[command(name = "cyc-normal")]
    CycNormal { wedge: String },
    /// A representative of ρ(x) for x given as "i | lincomb".
    Rho {
        #[arg(long)]
        cyc: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances per arity above the exhaustive range.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// θ(m₁ · m₂) for Lie words or combinations on disjoint labels.
    Theta { m1: String, m2: String },
    /// λ of a CycLie element given as "i | lie-lincomb".
    Lambda {
        #[arg(long)]
        cyc: String,
    },
    /// Dimensions of the suboperad generated by λ against Indec and the
    /// free operad on CycLie.
    Conjectures {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Dimension series and the identities relating them.
    Series {
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{}", text());
    }
}

fn perm_text(p: &PermCycElem) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.slots()
        .map(|(i, e)| format!("{i} ⊗ {e}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Returns whether the command passed; errors mean malformed input.
fn run(cli: Cli) -> Result<bool, Error> {
    let json = cli.json;
    let tv = TreeVector::parse;
    match cli.command {
        Command::Enumerate { n } => {
            if n == 0 {
                return Err(Error::ArityTooSmall { got: 0, min: 1 });
            }
            let trees = enumerate_trees(&label_set(&standard_labels(n)))?;
            let value = json!({ "n": n, "count": trees.len(), "trees": trees });
            emit(json, &value, || {
                trees.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n")
            });
        }
        Command::Compose { s, pos, t } => {
            let v = compose_partial(&tv(&s)?, &Label::new(&pos)?, &tv(&t)?)?;
            emit(json, &v, || v.to_string());
        }
        Command::Product { s, t } => {
            let v = prelie_product(&tv(&s)?, &tv(&t)?)?;
            emit(json, &v, || v.to_string());
        }
        Command::Bracket { s, t } => {
            let v = bracket(&tv(&s)?, &tv(&t)?)?;
            emit(json, &v, || v.to_string());
        }
        Command::ReduceRv1 { tree } => {
            let t = parse_tree(&tree)?;
            let (result, witness) = reduce_rv1(&t)?;
            let value = json!({ "input": t, "result": result, "witness": witness });
            emit(json, &value, || format!("{result}\nwitness: {witness}"));
        }
        Command::Gamma { at, wedge } => {
            let v = gamma(&Label::new(&at)?, &WedgeVector::parse(&wedge)?)?;
            emit(json, &v, || v.to_string());
        }
        Command::CycNormal { wedge } => {
            let e = cyc_normal(&WedgeVector::parse(&wedge)?);
            emit(json, &e, || e.to_string());
        }
        Command::Rho { cyc } => {
            let r = rho(&CycPreLieElem::parse(&cyc)?)?;
            emit(json, &r, || r.representative.to_string());
        }
        Command::Verify {
            suite,
            max_n,
            seed,
            samples,
        } => {
            let cfg = VerifyConfig { max_n, seed, samples };
            let r = run_suite(suite, &cfg)?;
            emit(json, &r, || {
                let mut lines = vec![format!(
                    "suite {suite}, max-n {max_n}: {} checks, {} failures",
                    r.checked,
                    r.failures.len()
                )];
                for (name, per_n) in &r.dims {
                    let cols: Vec<String> = per_n.iter().map(|(n, d)| format!("{n}:{d}")).collect();
                    lines.push(format!("  {name:<18} {}", cols.join(" ")));
                }
                lines.extend(r.failures.iter().map(|f| format!("FAIL {f}")));
                lines.join("\n")
            });
            return Ok(r.passed());
        }
        Command::Theta { m1, m2 } => {
            let img = theta(&LieVector::parse(&m1)?, &LieVector::parse(&m2)?)?;
            emit(json, &img, || perm_text(&img.value));
        }
        Command::Lambda { cyc } => {
            let v = lambda_map(&CycLieElem::parse(&cyc)?)?;
            emit(json, &v, || v.to_string());
        }
        Command::Conjectures { max_n } => {
            let r = conjecture_report(max_n)?;
            emit(json, &r, || {
                let mut lines = vec![format!("{:>3} {:>8} {:>10} {:>9}  match", "n", "dim M", "dim Indec", "dim free")];
                for row in &r.rows {
                    lines.push(format!(
                        "{:>3} {:>8} {:>10} {:>9}  {}",
                        row.n,
                        row.dim_m,
                        row.dim_indec,
                        row.dim_free,
                        if row.matches { "yes" } else { "NO" }
                    ));
                }
                for c in &r.certificate {
                    lines.push(format!(
                        "mismatch at n = {}: dim M = {}, dim π(M) = {}, dim Indec = {}, dim free = {}",
                        c.n,
                        c.dim_m,
                        c.dim_pi_m.map_or("-".into(), |d| d.to_string()),
                        c.dim_indec,
                        c.dim_free
                    ));
                }
                lines.push(format!("series residuals checked to order {}", r.series_residual_order));
                lines.join("\n")
            });
            return Ok(r.ok);
        }
        Command::Series { order } => {
            let res = series_residuals(order)?;
            let prelie = prelie_series(order).dims();
            let indec = indec_series(order)?.dims();
            let free = Egf::fixed_point_free_operad(&cyclie_series(order), order)?.dims();
            let ok = res.all_zero();
            let value = json!({
                "order": order,
                "prelie": prelie,
                "indec": indec,
                "free": free,
                "residuals": res,
                "ok": ok,
            });
            emit(json, &value, || {
                let mut lines = vec![format!("{:>3} {:>14} {:>14} {:>14}", "n", "PreLie", "Indec", "free")];
                for n in 1..=order {
                    lines.push(format!(
                        "{n:>3} {:>14} {:>14} {:>14}",
                        prelie[n].to_string(),
                        indec[n].to_string(),
                        free[n].to_string()
                    ));
                }
                lines.push(if ok { "all residuals zero".into() } else { "nonzero residuals".into() });
                lines.join("\n")
            });
            return Ok(ok);
        }
    }
    Ok(true)
}
