//! `unionvals`: compute coalitional values, check properties, search for
//! counterexamples and print the property matrix.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use unionvals::axioms::{check, Axiom, AxiomReport, Verdict};
use unionvals::{
    axiom_matrix, parse_game, search_counterexample, serialize_game, sweep_counterexample,
    sweep_spaces, Allocation, AxiomMatrix, Base, BaseValue, CoalitionalValue, GameDocument,
    Rational, SearchSpace, UnionGame, WorthRange,
};

#[derive(Parser)]
#[command(
    name = "unionvals",
    version,
    about = "Egalitarian and Owen-type values for games with a priori unions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the allocation of one value.
    Compute {
        #[arg(long)]
        game: PathBuf,
        /// edu, esd1u … esd5u, owen, banzhaf-owen, or a base value: ed, esd,
        /// shapley, banzhaf.
        #[arg(long)]
        value: String,
        #[arg(long)]
        json: bool,
    },
    /// Check one property of one value on a game. Exits 1 when violated.
    Check {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        value: CoalitionalValue,
        #[arg(long)]
        axiom: Axiom,
        #[arg(long)]
        json: bool,
    },
    /// Search random games for a violation. Exits 1 when one is found.
    Search {
        #[arg(long)]
        value: CoalitionalValue,
        #[arg(long)]
        axiom: Axiom,
        /// Without --players, sweeps 3 to 5 players with every union count
        /// from 2 to players - 1.
        #[arg(long)]
        players: Option<usize>,
        /// Without --unions, sweeps every union count from 2 to players - 1.
        #[arg(long)]
        unions: Option<usize>,
        #[command(flatten)]
        budget: Budget,
        /// Write the witness game to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run every value against every property on one corpus of random games.
    Matrix {
        #[arg(long, default_value_t = 4)]
        players: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json: bool,
    },
    /// Emit the quotient game of the unions as a game document.
    Quotient {
        #[arg(long)]
        game: PathBuf,
        /// Use the quotient* game instead.
        #[arg(long)]
        star: bool,
    },
    /// Print all eight coalitional values, one row per player.
    Table {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Budget {
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "-10..10", allow_hyphen_values = true)]
    worth_range: WorthRange,
}

/// Input and usage failures; reported on stderr with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Compute { game, value, json } => compute(&game, &value, json),
        Command::Check {
            game,
            value,
            axiom,
            json,
        } => {
            let ug = load(&game)?;
            let report = check(value, axiom, &ug);
            print_report(&report, json);
            Ok(verdict_code(&report))
        }
        Command::Search {
            value,
            axiom,
            players,
            unions,
            budget,
            out,
            json,
        } => search(value, axiom, players, unions, &budget, out.as_deref(), json),
        Command::Matrix {
            players,
            budget,
            json,
        } => {
            let matrix =
                axiom_matrix::<Rational>(players, budget.trials, budget.seed, budget.worth_range)?;
            if json {
                print_json(&matrix_json(&matrix));
            } else {
                print!("{}", matrix.render());
            }
            let broken = !matrix.broken_claims().is_empty();
            Ok(if broken {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Quotient { game, star } => {
            let ug = load(&game)?;
            let quotient = if star {
                ug.quotient_star_game()
            } else {
                ug.quotient_game()
            };
            print!("{}", serialize_game(&UnionGame::trivial(quotient)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { game, json } => {
            let ug = load(&game)?;
            let columns: Vec<(String, Allocation<Rational>)> = CoalitionalValue::ALL
                .into_iter()
                .map(|v| (v.label().to_string(), v.evaluate(&ug)))
                .collect();
            if json {
                let values: Vec<Value> = CoalitionalValue::ALL
                    .into_iter()
                    .zip(&columns)
                    .map(|(v, (_, a))| json!({ "value": v.id(), "payoffs": payoffs_json(a) }))
                    .collect();
                print_json(&json!({ "players": ug.game.players(), "values": values }));
            } else {
                print!("{}", render_table(ug.game.players(), &columns));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(path: &Path) -> Result<UnionGame<Rational>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_game(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn compute(path: &Path, id: &str, json: bool) -> Outcome {
    let ug = load(path)?;
    let (label, allocation) = if let Ok(value) = id.parse::<CoalitionalValue>() {
        (value.label().to_string(), value.evaluate(&ug))
    } else if let Ok(base) = id.parse::<Base>() {
        (base.id().to_uppercase(), base.evaluate(&ug.game))
    } else {
        return Err(Failure(format!("unknown value {id:?}")));
    };
    if json {
        print_json(&json!({ "value": id, "payoffs": payoffs_json(&allocation) }));
    } else {
        let columns = vec![(label, allocation)];
        print!("{}", render_table(ug.game.players(), &columns));
    }
    Ok(ExitCode::SUCCESS)
}

fn search(
    value: CoalitionalValue,
    axiom: Axiom,
    players: Option<usize>,
    unions: Option<usize>,
    budget: &Budget,
    out: Option<&Path>,
    json: bool,
) -> Outcome {
    let worths = budget.worth_range;
    let spaces: Vec<SearchSpace> = match (players, unions) {
        (Some(n), Some(m)) => vec![SearchSpace::new(n, m, worths)?],
        (Some(n), None) => sweep_spaces(n, worths)?
            .into_iter()
            .filter(|s| s.players() == n)
            .collect(),
        (None, None) => sweep_spaces(5, worths)?,
        (None, Some(_)) => return Err(Failure("--unions needs --players".into())),
    };
    let (report, space) = if let [space] = spaces.as_slice() {
        let report =
            search_counterexample::<Rational>(value, axiom, space, budget.trials, budget.seed);
        let found = report.is_violated().then_some(*space);
        (report, found)
    } else {
        sweep_counterexample::<Rational>(value, axiom, &spaces, budget.trials, budget.seed)
    };
    if let (Some(path), Some(w)) = (out, report.witness.as_ref()) {
        fs::write(path, serialize_game(&w.game))
            .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    if json {
        let mut payload = report_json(&report);
        if let Some(space) = space {
            payload["players"] = json!(space.players());
            payload["unions"] = json!(space.unions());
        }
        print_json(&payload);
    } else {
        if let Some(space) = space {
            println!(
                "space: {} players, {} unions",
                space.players(),
                space.unions()
            );
        }
        print_report(&report, false);
        if let Some(w) = &report.witness {
            print!("{}", serialize_game(&w.game));
        }
    }
    Ok(verdict_code(&report))
}

fn verdict_code(report: &AxiomReport<Rational>) -> ExitCode {
    if report.is_violated() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

fn payoffs_json(allocation: &Allocation<Rational>) -> Value {
    Value::Array(
        allocation
            .iter()
            .map(|(p, v)| json!({ "player": p, "payoff": v.to_string() }))
            .collect(),
    )
}

fn verdict_id(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::Holds { .. } => "holds",
        Verdict::Violated => "violated",
        Verdict::NotApplicable => "not-applicable",
        Verdict::HoldsWithinBudget { .. } => "holds-within-budget",
    }
}

fn report_json(report: &AxiomReport<Rational>) -> Value {
    let mut out = json!({
        "value": report.value.id(),
        "axiom": report.axiom.id(),
        "verdict": verdict_id(&report.verdict),
    });
    match report.verdict {
        Verdict::Holds { vacuous } => out["vacuous"] = json!(vacuous),
        Verdict::HoldsWithinBudget { trials } => out["trials"] = json!(trials),
        _ => {}
    }
    if let Some(w) = &report.witness {
        let doc = GameDocument::from_union_game(&w.game);
        let names: Vec<&str> = w
            .players
            .iter()
            .map(|&i| w.game.game.player_name(i))
            .collect();
        out["witness"] = json!({
            "game": serde_json::to_value(&doc).expect("documents serialize"),
            "players": names,
            "union": w.block.map(|k| k + 1),
            "lhs": w.lhs.to_string(),
            "rhs": w.rhs.to_string(),
            "sides": w.note,
            "trial": w.trial,
        });
    }
    out
}

fn print_report(report: &AxiomReport<Rational>, json: bool) {
    if json {
        print_json(&report_json(report));
        return;
    }
    println!(
        "{} {}: {}",
        report.value.label(),
        report.axiom.label(),
        report.verdict
    );
    if let Some(w) = &report.witness {
        let names: Vec<&str> = w
            .players
            .iter()
            .map(|&i| w.game.game.player_name(i))
            .collect();
        match w.block {
            Some(k) => println!("  players: {} (union {})", names.join(", "), k + 1),
            None => println!("  players: {}", names.join(", ")),
        }
        if let Some(t) = w.trial {
            println!("  trial: {t}");
        }
        println!("  {}: {} != {}", w.note, w.lhs, w.rhs);
    }
}

fn render_table(players: &[String], columns: &[(String, Allocation<Rational>)]) -> String {
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("player".to_string())
        .chain(columns.iter().map(|(label, _)| label.clone()))
        .collect()];
    for (i, p) in players.iter().enumerate() {
        rows.push(
            std::iter::once(p.clone())
                .chain(columns.iter().map(|(_, a)| a[i].to_string()))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn matrix_json(matrix: &AxiomMatrix<Rational>) -> Value {
    let cells: Vec<Value> = matrix
        .cells
        .iter()
        .map(|c| {
            let mut cell = report_json(&c.report);
            cell["claimed"] = json!(c.claimed);
            cell["status"] = json!(format!("{:?}", c.status()).to_lowercase());
            cell["trials_run"] = json!(c.trials_run);
            cell["vacuous_trials"] = json!(c.vacuous_trials);
            cell
        })
        .collect();
    json!({
        "players": matrix.players,
        "trials": matrix.trials,
        "seed": matrix.seed,
        "worth_range": matrix.worths.to_string(),
        "cells": cells,
    })
}
