//! Seeded random union games, counterexample search and the property
//! matrix.
//!
//! Trial `t` of a search with seed `s` draws from a ChaCha8 stream keyed by
//! `(s, t)`, so every result is reproducible and independent of how rayon
//! schedules the trials.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::axioms::{check, Axiom, AxiomReport, Verdict};
use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::coalitional::CoalitionalValue;
use crate::game::{numbered_players, TuGame};
use crate::partition::{Partition, UnionGame};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search space: {0}")]
    InvalidSearchSpace(String),
}

/// Inclusive integer range for random worths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorthRange {
    pub lo: i64,
    pub hi: i64,
}

impl Default for WorthRange {
    fn default() -> Self {
        WorthRange { lo: -10, hi: 10 }
    }
}

impl fmt::Display for WorthRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for WorthRange {
    type Err = SearchError;

    /// Parses `LO..HI`, e.g. `-10..10`.
    fn from_str(s: &str) -> Result<Self, SearchError> {
        let bad = || SearchError::InvalidSearchSpace(format!("worth range {s:?} is not LO..HI"));
        let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
        let range = WorthRange {
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
        };
        if range.lo > range.hi {
            return Err(SearchError::InvalidSearchSpace(format!(
                "empty worth range {range}"
            )));
        }
        Ok(range)
    }
}

/// Player count, union count and worth range of randomly drawn games.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    players: usize,
    unions: usize,
    worths: WorthRange,
}

impl SearchSpace {
    pub fn new(players: usize, unions: usize, worths: WorthRange) -> Result<Self, SearchError> {
        let invalid = |msg: String| Err(SearchError::InvalidSearchSpace(msg));
        if !(2..=MAX_PLAYERS).contains(&players) {
            return invalid(format!(
                "players must be in 2..={MAX_PLAYERS}, got {players}"
            ));
        }
        if !(1..=players).contains(&unions) {
            return invalid(format!("unions must be in 1..={players}, got {unions}"));
        }
        if worths.lo > worths.hi {
            return invalid(format!("empty worth range {worths}"));
        }
        Ok(SearchSpace {
            players,
            unions,
            worths,
        })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn unions(&self) -> usize {
        self.unions
    }

    pub fn worths(&self) -> WorthRange {
        self.worths
    }
}

/// The generator for trial `trial` of a search seeded with `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Game on players `"1"…"n"` with worths uniform in `range`.
pub fn random_game<T: Scalar, R: Rng>(rng: &mut R, n: usize, range: WorthRange) -> TuGame<T> {
    TuGame::from_fn(numbered_players(n), |c| {
        if c.is_empty() {
            T::zero()
        } else {
            T::from_int(rng.random_range(range.lo..=range.hi))
        }
    })
    .expect("numbered roster is valid")
}

/// Uniform surjection onto `m` labels, resampled until every label is hit.
/// Block `k` holds the players labelled `k`.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize, m: usize) -> Partition {
    loop {
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..m)).collect();
        let blocks: Vec<Coalition> = (0..m)
            .map(|k| Coalition::from_members((0..n).filter(|&i| labels[i] == k)))
            .collect();
        if blocks.iter().all(|b| !b.is_empty()) {
            return Partition::new(blocks, n).expect("labels cover every player once");
        }
    }
}

pub fn random_union_game<T: Scalar>(space: &SearchSpace, seed: u64, trial: usize) -> UnionGame<T> {
    let mut rng = trial_rng(seed, trial);
    let game = random_game(&mut rng, space.players, space.worths);
    let partition = random_partition(&mut rng, space.players, space.unions);
    UnionGame::new(game, partition).expect("sizes agree")
}

/// Checks `axiom` for `value` on `trials` seeded random games and returns the
/// violation with the lowest trial index, if any.
pub fn search_counterexample<T: Scalar>(
    value: CoalitionalValue,
    axiom: Axiom,
    space: &SearchSpace,
    trials: usize,
    seed: u64,
) -> AxiomReport<T> {
    let outcomes = (0..trials).into_par_iter().map(|t| {
        let ug = random_union_game::<T>(space, seed, t);
        let mut report = check(value, axiom, &ug);
        if let Some(w) = report.witness.as_mut() {
            w.trial = Some(t);
        }
        report
    });
    let first = outcomes
        .clone()
        .find_map_first(|r| r.is_violated().then_some(r));
    if let Some(report) = first {
        return report;
    }
    let all_vacuous = trials > 0 && outcomes.all(|r| r.verdict == Verdict::Holds { vacuous: true });
    AxiomReport {
        axiom,
        value,
        verdict: if all_vacuous {
            Verdict::NotApplicable
        } else {
            Verdict::HoldsWithinBudget { trials }
        },
        witness: None,
    }
}

/// Spaces with `3..=max_players` players and `2..players` unions, in that
/// order.
pub fn sweep_spaces(
    max_players: usize,
    worths: WorthRange,
) -> Result<Vec<SearchSpace>, SearchError> {
    let mut spaces = Vec::new();
    for n in 3..=max_players {
        for m in 2..n {
            spaces.push(SearchSpace::new(n, m, worths)?);
        }
    }
    if spaces.is_empty() {
        return Err(SearchError::InvalidSearchSpace(format!(
            "a sweep needs at least 3 players, got {max_players}"
        )));
    }
    Ok(spaces)
}

/// Splits `budget` evenly over `spaces` and searches them in order. Returns
/// the first witness with the space it came from, or the budget verdict.
pub fn sweep_counterexample<T: Scalar>(
    value: CoalitionalValue,
    axiom: Axiom,
    spaces: &[SearchSpace],
    budget: usize,
    seed: u64,
) -> (AxiomReport<T>, Option<SearchSpace>) {
    let per_space = budget / spaces.len().max(1);
    let mut vacuous = true;
    for space in spaces {
        let report = search_counterexample::<T>(value, axiom, space, per_space, seed);
        match report.verdict {
            Verdict::Violated => return (report, Some(*space)),
            Verdict::NotApplicable => {}
            _ => vacuous = false,
        }
    }
    let verdict = if vacuous {
        Verdict::NotApplicable
    } else {
        Verdict::HoldsWithinBudget {
            trials: per_space * spaces.len(),
        }
    };
    let report = AxiomReport {
        axiom,
        value,
        verdict,
        witness: None,
    };
    (report, None)
}

/// Whether the property is asserted for the value: the checkmarks of the
/// classical table, coalitional consistency with the value's own base,
/// efficiency for every efficient value and block-order invariance for all.
pub fn claimed(value: CoalitionalValue, axiom: Axiom) -> bool {
    use Axiom::*;
    use CoalitionalValue::*;
    match axiom {
        Efficiency => value != BanzhafOwen,
        BlockOrderInvariance => true,
        _ => matches!(
            (value, axiom),
            (EdU, Ced | Qgp | Bcu)
                | (Esd1U, Cesd | Qgp | Eiu)
                | (Esd2U, Cesd | Qgp | Dmiviu)
                | (Esd3U, Cesd | QStarGp | Bcu)
                | (Esd4U, Cesd | Qgp | Bcpa)
                | (Esd5U, Cesd | Qgp | Bcu)
                | (Owen, Qgp | Bcu | CoalitionalShapley)
                | (BanzhafOwen, CoalitionalBanzhaf)
        ),
    }
}

/// Unclaimed cells that are expected to hold anyway.
pub fn known_discrepancy(value: CoalitionalValue, axiom: Axiom) -> bool {
    value == CoalitionalValue::EdU && axiom == Axiom::Eiu
}

/// Outcome of one matrix cell over the shared corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCell<T: Scalar> {
    pub value: CoalitionalValue,
    pub axiom: Axiom,
    pub claimed: bool,
    /// First violation, or the budget verdict.
    pub report: AxiomReport<T>,
    /// Trials whose verdict was a vacuous hold, among those run.
    pub vacuous_trials: usize,
    /// Trials run before the cell settled.
    pub trials_run: usize,
}

impl<T: Scalar> MatrixCell<T> {
    pub fn status(&self) -> CellStatus {
        match (self.claimed, self.report.is_violated()) {
            (true, false) => CellStatus::Confirmed,
            (true, true) => CellStatus::ClaimViolated,
            (false, true) => CellStatus::Refuted,
            (false, false) if known_discrepancy(self.value, self.axiom) => CellStatus::Discrepancy,
            (false, false) => CellStatus::Unrefuted,
        }
    }

    fn code(&self) -> String {
        let trial = || {
            self.report
                .witness
                .as_ref()
                .and_then(|w| w.trial)
                .map_or(String::new(), |t| t.to_string())
        };
        match self.status() {
            CellStatus::Confirmed => "ok".into(),
            CellStatus::ClaimViolated => format!("FAIL#{}", trial()),
            CellStatus::Refuted => format!("w#{}", trial()),
            CellStatus::Discrepancy => "held!".into(),
            CellStatus::Unrefuted => "held".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    /// Claimed and held on every trial.
    Confirmed,
    /// Claimed but violated.
    ClaimViolated,
    /// Not claimed and a witness was found.
    Refuted,
    /// Not claimed, no witness found, but asserted elsewhere.
    Discrepancy,
    /// Not claimed and no witness found within the budget.
    Unrefuted,
}

/// Grid of [`MatrixCell`]s, rows in [`CoalitionalValue::ALL`] order and
/// columns in [`AxiomMatrix::COLUMNS`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomMatrix<T: Scalar> {
    pub players: usize,
    pub trials: usize,
    pub seed: u64,
    pub worths: WorthRange,
    pub cells: Vec<MatrixCell<T>>,
}

/// Union count of trial `t` in a matrix over `n` players: cycles through
/// `2..=n−1`.
pub fn matrix_unions(n: usize, trial: usize) -> usize {
    2 + trial % (n - 2)
}

const CHUNK: usize = 64;

/// Runs every (value, property) cell over one shared corpus of `trials`
/// random games. Claimed cells are checked on every game; unclaimed cells
/// stop at their first witness.
pub fn axiom_matrix<T: Scalar>(
    players: usize,
    trials: usize,
    seed: u64,
    worths: WorthRange,
) -> Result<AxiomMatrix<T>, SearchError> {
    if players < 3 {
        return Err(SearchError::InvalidSearchSpace(format!(
            "the matrix needs at least 3 players, got {players}"
        )));
    }
    let spaces: Vec<SearchSpace> = (2..players)
        .map(|m| SearchSpace::new(players, m, worths))
        .collect::<Result<_, _>>()?;
    let game_at =
        |t: usize| random_union_game::<T>(&spaces[matrix_unions(players, t) - 2], seed, t);

    struct Tally<T: Scalar> {
        value: CoalitionalValue,
        axiom: Axiom,
        claimed: bool,
        violation: Option<AxiomReport<T>>,
        vacuous: usize,
        run: usize,
    }

    let mut tallies: Vec<Tally<T>> = CoalitionalValue::ALL
        .into_iter()
        .flat_map(|value| {
            AxiomMatrix::<T>::COLUMNS
                .into_iter()
                .map(move |axiom| Tally {
                    value,
                    axiom,
                    claimed: claimed(value, axiom),
                    violation: None,
                    vacuous: 0,
                    run: 0,
                })
        })
        .collect();

    let mut start = 0;
    while start < trials {
        let end = (start + CHUNK).min(trials);
        let open: Vec<usize> = (0..tallies.len())
            .filter(|&c| tallies[c].claimed || tallies[c].violation.is_none())
            .collect();
        if open.is_empty() {
            break;
        }
        let chunk: Vec<Vec<AxiomReport<T>>> = (start..end)
            .into_par_iter()
            .map(|t| {
                let ug = game_at(t);
                open.iter()
                    .map(|&c| {
                        let mut report = check(tallies[c].value, tallies[c].axiom, &ug);
                        if let Some(w) = report.witness.as_mut() {
                            w.trial = Some(t);
                        }
                        report
                    })
                    .collect()
            })
            .collect();
        for (slot, &c) in open.iter().enumerate() {
            let tally = &mut tallies[c];
            for reports in &chunk {
                let report = &reports[slot];
                tally.run += 1;
                if report.verdict == (Verdict::Holds { vacuous: true }) {
                    tally.vacuous += 1;
                }
                if report.is_violated() && tally.violation.is_none() {
                    tally.violation = Some(report.clone());
                    if !tally.claimed {
                        break;
                    }
                }
            }
        }
        start = end;
    }

    let cells = tallies
        .into_iter()
        .map(|t| MatrixCell {
            value: t.value,
            axiom: t.axiom,
            claimed: t.claimed,
            report: t.violation.unwrap_or(AxiomReport {
                axiom: t.axiom,
                value: t.value,
                verdict: if t.run > 0 && t.vacuous == t.run {
                    Verdict::NotApplicable
                } else {
                    Verdict::HoldsWithinBudget { trials: t.run }
                },
                witness: None,
            }),
            vacuous_trials: t.vacuous,
            trials_run: t.run,
        })
        .collect();
    Ok(AxiomMatrix {
        players,
        trials,
        seed,
        worths,
        cells,
    })
}

impl<T: Scalar> AxiomMatrix<T> {
    pub const COLUMNS: [Axiom; 12] = [
        Axiom::Ced,
        Axiom::Cesd,
        Axiom::Qgp,
        Axiom::QStarGp,
        Axiom::Bcu,
        Axiom::Eiu,
        Axiom::Dmiviu,
        Axiom::Bcpa,
        Axiom::Efficiency,
        Axiom::BlockOrderInvariance,
        Axiom::CoalitionalShapley,
        Axiom::CoalitionalBanzhaf,
    ];

    pub fn cell(&self, value: CoalitionalValue, axiom: Axiom) -> &MatrixCell<T> {
        self.cells
            .iter()
            .find(|c| c.value == value && c.axiom == axiom)
            .expect("every value/property pair has a cell")
    }

    /// Claimed cells that were violated. Empty when the implementation
    /// agrees with every claim.
    pub fn broken_claims(&self) -> Vec<&MatrixCell<T>> {
        self.cells
            .iter()
            .filter(|c| c.status() == CellStatus::ClaimViolated)
            .collect()
    }

    /// Deterministic text rendering: header, grid, legend and one note per
    /// unclaimed cell that held.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "players={} trials={} seed={} worths={} unions=2..{}\n\n",
            self.players,
            self.trials,
            self.seed,
            self.worths,
            self.players - 1
        ));
        let width = 8;
        out.push_str(&format!("{:<13}", "value"));
        for a in Self::COLUMNS {
            out.push_str(&format!("{:<width$}", a.label()));
        }
        out.push('\n');
        for v in CoalitionalValue::ALL {
            let mut line = format!("{:<13}", v.label());
            for a in Self::COLUMNS {
                line.push_str(&format!("{:<width$}", self.cell(v, a).code()));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out.push_str(
            "\nok: claimed, held on every trial\n\
             FAIL#t: claimed, violated at trial t\n\
             w#t: not claimed, witness at trial t\n\
             held: not claimed, no witness within budget\n\
             held!: not claimed in the table but asserted in the text, no witness within budget\n",
        );
        let notes: Vec<String> = self
            .cells
            .iter()
            .filter_map(|c| match c.status() {
                CellStatus::Discrepancy => Some(format!(
                    "{} {}: disputed cell, held on all {} trials",
                    c.value.label(),
                    c.axiom.label(),
                    c.trials_run
                )),
                CellStatus::Unrefuted => Some(format!(
                    "{} {}: not claimed, held on all {} trials",
                    c.value.label(),
                    c.axiom.label(),
                    c.trials_run
                )),
                CellStatus::ClaimViolated => Some(format!(
                    "{} {}: CLAIM VIOLATED, {}",
                    c.value.label(),
                    c.axiom.label(),
                    c.report.witness.as_ref().map_or(String::new(), |w| format!(
                        "{} = {} vs {}",
                        w.note, w.lhs, w.rhs
                    ))
                )),
                _ => None,
            })
            .collect();
        if !notes.is_empty() {
            out.push_str("\nnotes:\n");
            for n in notes {
                out.push_str(&format!("  {n}\n"));
            }
        }
        out
    }
}
