//! Command-line front end: reads JSON models, claims and strategies, prints
//! JSON reports, and optionally writes witnesses to files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use shortsale::experiments::{self, BsParams, LatticeKind, LatticeParams};
use shortsale::ftap::{self, Verdict};
use shortsale::io;
use shortsale::maximality::{classify_maximal, is_maximal_in_k};
use shortsale::numeraire::{na_after_numeraire_check, self_financing_transport};
use shortsale::rational::{format, parse};
use shortsale::{is_attainable, superhedge, superreplication_price, Claim, MarketModel};

#[derive(Parser)]
#[command(
    name = "shortsale",
    version,
    about = "Arbitrage and super-replication under short-sale constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the market admits arbitrage.
    CheckArbitrage {
        model: PathBuf,
        /// Write the measure or the arbitrage strategy here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Super-replication price of a nonnegative claim.
    Price {
        model: PathBuf,
        claim: PathBuf,
        /// Write the optimal measure here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Cheapest super-hedge: capital, strategy and consumption.
    Hedge {
        model: PathBuf,
        claim: PathBuf,
        #[arg(long)]
        strategy_out: Option<PathBuf>,
        #[arg(long)]
        consumption_out: Option<PathBuf>,
    },
    /// Maximality tests for a claim bounded below.
    Classify {
        model: PathBuf,
        claim: PathBuf,
        /// Directory for witness measures and strategies.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Change-of-numeraire checks.
    Numeraire {
        model: PathBuf,
        numeraire: PathBuf,
        #[arg(long, value_enum)]
        check: NumeraireCheck,
        /// Strategy with N + 2 components per node (for `transport`).
        #[arg(long)]
        strategy: Option<PathBuf>,
    },
    /// Floating-point and lattice experiments; CSV output.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NumeraireCheck {
    Transport,
    Na,
}

#[derive(Subcommand)]
enum Experiment {
    /// Reciprocal Black–Scholes stock under tilted measures.
    Bs {
        #[arg(long, default_value_t = 1.0)]
        s0: f64,
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        #[arg(long, default_value_t = 0.2)]
        sigma: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,1.5,2")]
        gammas: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        paths: usize,
        #[arg(long, default_value_t = experiments::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Stochastic-exponential claim exp(-R_T) under tilts and on lattices.
    Stochexp {
        #[arg(long, default_value_t = 1.0)]
        qv: f64,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4,5,6,7,8")]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
        depths: Vec<usize>,
        #[arg(long, default_value_t = experiments::DEFAULT_SEED)]
        seed: u64,
        /// Alpha table; the lattice-price table goes to `--sup-csv`.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        sup_csv: Option<PathBuf>,
    },
    /// Digital, put or reciprocal prices along binomial lattices.
    Lattice {
        #[arg(long)]
        kind: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8")]
        depths: Vec<usize>,
        #[arg(long, default_value = "1")]
        s0: String,
        #[arg(long, default_value = "1")]
        strike: String,
        /// Fixed up-factor (with `--down`); otherwise CRR from `--sigma`, `--t`.
        #[arg(long, requires = "down")]
        up: Option<String>,
        #[arg(long, requires = "up")]
        down: Option<String>,
        #[arg(long, default_value_t = 0.2)]
        sigma: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = experiments::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load(model: &Path, claim: &Path) -> Result<(MarketModel, Claim)> {
    let m = io::model_from_json(&read(model)?)?;
    let f = io::claim_from_json(m.tree(), &read(claim)?)?;
    Ok((m, f))
}

fn measure_value(m: &MarketModel, q: &shortsale::Measure) -> Result<Value> {
    Ok(serde_json::from_str(&io::measure_to_json(m.tree(), q)?)?)
}

fn strategy_value(h: &shortsale::Strategy) -> Result<Value> {
    Ok(serde_json::from_str(&io::strategy_to_json(h)?)?)
}

fn run(cli: Cli) -> Result<Value> {
    match cli.command {
        Command::CheckArbitrage { model, witness } => {
            let m = io::model_from_json(&read(&model)?)?;
            let (status, w) = match ftap::check(&m)? {
                Verdict::NoArbitrage(q) => ("NFLVR", measure_value(&m, &q)?),
                Verdict::Arbitrage(a) => ("ARBITRAGE", strategy_value(&a.strategy)?),
            };
            if let Some(p) = witness {
                write(&p, &serde_json::to_string_pretty(&w)?)?;
            }
            Ok(json!({"status": status, "witness": w}))
        }
        Command::Price {
            model,
            claim,
            witness,
        } => {
            let (m, f) = load(&model, &claim)?;
            let p = superreplication_price(&m, &f)?;
            let w = measure_value(&m, &p.witness_measure)?;
            if let Some(path) = witness {
                write(&path, &serde_json::to_string_pretty(&w)?)?;
            }
            Ok(json!({
                "price": format(&p.value),
                "attained_by_equivalent": p.attained_by_equivalent,
                "witness_measure": w,
            }))
        }
        Command::Hedge {
            model,
            claim,
            strategy_out,
            consumption_out,
        } => {
            let (m, f) = load(&model, &claim)?;
            let h = superhedge(&m, &f)?;
            let strategy = strategy_value(&h.strategy)?;
            let consumption: Value =
                serde_json::from_str(&io::node_values_to_json(&h.consumption.cumulative)?)?;
            if let Some(p) = strategy_out {
                write(&p, &serde_json::to_string_pretty(&strategy)?)?;
            }
            if let Some(p) = consumption_out {
                write(&p, &serde_json::to_string_pretty(&consumption)?)?;
            }
            Ok(json!({"x": format(&h.x), "strategy": strategy, "consumption": consumption}))
        }
        Command::Classify {
            model,
            claim,
            witness_dir,
        } => {
            let (m, f) = load(&model, &claim)?;
            let r = classify_maximal(&m, &f)?;
            let k = is_maximal_in_k(&m, &f)?;
            let attain = if f.min() >= shortsale::rational::zero() {
                Some(is_attainable(&m, &f)?.attainable)
            } else {
                None
            };
            if let Some(dir) = &witness_dir {
                fs::create_dir_all(dir)?;
                if let Some(q) = &r.condition_ii.r_star {
                    write(&dir.join("r_star.json"), &io::measure_to_json(m.tree(), q)?)?;
                }
                if let Some(h) = &r.condition_iii.strategy {
                    write(
                        &dir.join("replicating_strategy.json"),
                        &io::strategy_to_json(h)?,
                    )?;
                }
                if let Some(q) = &r.condition_iii.measure {
                    write(
                        &dir.join("martingale_measure.json"),
                        &io::measure_to_json(m.tree(), q)?,
                    )?;
                }
                if let Some(q) = &r.condition_iv.counterexample {
                    write(
                        &dir.join("counterexample.json"),
                        &io::measure_to_json(m.tree(), q)?,
                    )?;
                }
            }
            Ok(json!({
                "price": format(&r.price),
                "attainable": attain,
                "condition_ii": r.condition_ii.holds,
                "condition_iii": r.condition_iii.holds,
                "same_measure_certifies_ii_and_iii": r.condition_iii.certified_by_r_star,
                "condition_iv": {
                    "applicable": r.condition_iv.applicable,
                    "holds": r.condition_iv.holds,
                    "vertices_checked": r.condition_iv.vertices_checked,
                },
                "maximal_in_k": k.maximal,
            }))
        }
        Command::Numeraire {
            model,
            numeraire,
            check,
            strategy,
        } => {
            let m = io::model_from_json(&read(&model)?)?;
            let v = io::numeraire_from_json(&m, &read(&numeraire)?)?;
            match check {
                NumeraireCheck::Transport => {
                    let path =
                        strategy.context("--strategy is required for the transport check")?;
                    let h = io::strategy_from_json(m.tree(), m.n_assets() + 2, &read(&path)?)?;
                    let r = self_financing_transport(&m, &v, &h)?;
                    Ok(json!({
                        "self_financing_in_m": r.self_financing_in_m,
                        "self_financing_in_n": r.self_financing_in_n,
                        "first_violation_m": r.first_violation_m,
                        "first_violation_n": r.first_violation_n,
                        "agree": r.agree(),
                    }))
                }
                NumeraireCheck::Na => {
                    let r = na_after_numeraire_check(&m, &v)?;
                    Ok(json!({
                        "no_arbitrage_after_change": r.no_arbitrage_after_change,
                        "maximal_in_d": r.maximal_in_d,
                        "agree": r.agree(),
                        "box_bound": format(&r.box_bound),
                        "dominating": r.dominating.as_ref().map(strategy_value).transpose()?,
                    }))
                }
            }
        }
        Command::Experiment { which } => run_experiment(which),
    }
}

fn emit<T: serde::Serialize>(rows: &[T], csv: Option<PathBuf>) -> Result<Value> {
    match csv {
        Some(p) => {
            experiments::write_csv(&p, rows)?;
            Ok(json!({"rows": rows.len(), "csv": p.display().to_string()}))
        }
        None => Ok(Value::String(experiments::csv_string(rows)?)),
    }
}

fn run_experiment(which: Experiment) -> Result<Value> {
    match which {
        Experiment::Bs {
            s0,
            mu,
            sigma,
            t,
            gammas,
            paths,
            seed,
            csv,
        } => {
            let base = BsParams {
                s0,
                mu,
                sigma,
                gamma: mu / sigma,
                t,
                paths,
            };
            let rows = experiments::bs_gamma_grid(&base, &gammas, seed)?;
            emit(&rows, csv)
        }
        Experiment::Stochexp {
            qv,
            alphas,
            steps,
            depths,
            seed,
            csv,
            sup_csv,
        } => {
            let r = experiments::stochexp_alpha_curve(qv, &alphas, steps, &depths, seed)?;
            let a = emit(&r.alphas, csv)?;
            let s = emit(&r.sup, sup_csv)?;
            Ok(json!({"alphas": a, "sup": s}))
        }
        Experiment::Lattice {
            kind,
            depths,
            s0,
            strike,
            up,
            down,
            sigma,
            t,
            seed,
            csv,
        } => {
            let kind: LatticeKind = kind.parse()?;
            let (s0, strike) = (parse(&s0)?, parse(&strike)?);
            let params = match (up, down) {
                (Some(u), Some(d)) => LatticeParams::Fixed {
                    s0,
                    strike,
                    up: parse(&u)?,
                    down: parse(&d)?,
                },
                _ => LatticeParams::Crr {
                    s0,
                    strike,
                    sigma,
                    t,
                },
            };
            let rows = experiments::lattice_family_study(kind, &depths, &params, seed)?;
            emit(&rows, csv)
        }
    }
}

fn main() -> Result<()> {
    let report = run(Cli::parse())?;
    match report {
        Value::String(s) => print!("{s}"),
        other => println!("{}", serde_json::to_string_pretty(&other)?),
    }
    Ok(())
}
