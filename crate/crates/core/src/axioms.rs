//! Executable checkers for properties of coalitional values.
//!
//! Every checker evaluates a [`CoalitionalValue`] on one game (and on the
//! derived games the property mentions) and decides the property's identity
//! with exact equality. A violation carries a [`Witness`] that reproduces it
//! when fed back through [`AxiomReport::recheck`].

use std::fmt;
use std::str::FromStr;

use crate::allocation::Allocation;
use crate::base::{Base, BaseValue};
use crate::coalition::Coalition;
use crate::coalitional::CoalitionalValue;
use crate::game::TuGame;
use crate::partition::UnionGame;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Coalitional equal division: `g(N, v, Pⁿ) = ED(N, v)`.
    Ced,
    /// Coalitional equal surplus division: `g(N, v, Pⁿ) = ESD(N, v)`.
    Cesd,
    /// Quotient game property.
    Qgp,
    /// Quotient* game property.
    QStarGp,
    /// Balanced contributions in the unions.
    Bcu,
    /// Equality inside unions.
    Eiu,
    /// Difference maintenance of individual values inside unions.
    Dmiviu,
    /// Balanced contributions due to the players' abandonment of the union.
    Bcpa,
    /// `Σ_i g_i = v(N)`.
    Efficiency,
    /// Reordering the blocks of `P` leaves the allocation unchanged.
    BlockOrderInvariance,
    /// Coalitional Shapley: `g(N, v, Pⁿ) = Sh(N, v)`.
    CoalitionalShapley,
    /// Coalitional Banzhaf: `g(N, v, Pⁿ) = Bz(N, v)`.
    CoalitionalBanzhaf,
}

impl Axiom {
    pub const ALL: [Axiom; 12] = [
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

    /// The eight columns of the classical property table.
    pub const TABLE: [Axiom; 8] = [
        Axiom::Ced,
        Axiom::Cesd,
        Axiom::Qgp,
        Axiom::QStarGp,
        Axiom::Bcu,
        Axiom::Eiu,
        Axiom::Dmiviu,
        Axiom::Bcpa,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::Ced => "ced",
            Axiom::Cesd => "cesd",
            Axiom::Qgp => "qgp",
            Axiom::QStarGp => "qsgp",
            Axiom::Bcu => "bcu",
            Axiom::Eiu => "eiu",
            Axiom::Dmiviu => "dmiviu",
            Axiom::Bcpa => "bcpa",
            Axiom::Efficiency => "efficiency",
            Axiom::BlockOrderInvariance => "block-order",
            Axiom::CoalitionalShapley => "csh",
            Axiom::CoalitionalBanzhaf => "cbz",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Axiom::Ced => "CED",
            Axiom::Cesd => "CESD",
            Axiom::Qgp => "QGP",
            Axiom::QStarGp => "Q*GP",
            Axiom::Bcu => "BCU",
            Axiom::Eiu => "EIU",
            Axiom::Dmiviu => "DMIVIU",
            Axiom::Bcpa => "BCPA",
            Axiom::Efficiency => "EFF",
            Axiom::BlockOrderInvariance => "ORDER",
            Axiom::CoalitionalShapley => "CSh",
            Axiom::CoalitionalBanzhaf => "CBz",
        }
    }

    /// Properties quantified over pairs of players sharing a union; these
    /// hold vacuously when every union is a singleton.
    pub fn is_pairwise(self) -> bool {
        matches!(self, Axiom::Bcu | Axiom::Eiu | Axiom::Dmiviu | Axiom::Bcpa)
    }

    /// For the coalitional-consistency properties, the base value the
    /// coalitional value must reproduce at `Pⁿ`.
    pub fn consistency_base(self) -> Option<Base> {
        match self {
            Axiom::Ced => Some(Base::Ed),
            Axiom::Cesd => Some(Base::Esd),
            Axiom::CoalitionalShapley => Some(Base::Shapley),
            Axiom::CoalitionalBanzhaf => Some(Base::Banzhaf),
            _ => None,
        }
    }

    fn for_base(base: Base) -> Axiom {
        match base {
            Base::Ed => Axiom::Ced,
            Base::Esd => Axiom::Cesd,
            Base::Shapley => Axiom::CoalitionalShapley,
            Base::Banzhaf => Axiom::CoalitionalBanzhaf,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The identity holds exactly. `vacuous` is set when the property had
    /// nothing to compare (no union with two or more members).
    Holds {
        vacuous: bool,
    },
    Violated,
    /// A search found no instance the property applies to.
    NotApplicable,
    /// A randomized search of `trials` games found no violation.
    HoldsWithinBudget {
        trials: usize,
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds { vacuous: false } => f.write_str("holds"),
            Verdict::Holds { vacuous: true } => f.write_str("holds (vacuously)"),
            Verdict::Violated => f.write_str("violated"),
            Verdict::NotApplicable => f.write_str("not applicable"),
            Verdict::HoldsWithinBudget { trials } => {
                write!(f, "holds within budget ({trials} trials)")
            }
        }
    }
}

/// A concrete instance on which an identity fails: `lhs ≠ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T: Scalar> {
    pub game: UnionGame<T>,
    /// Roster indices of the players involved.
    pub players: Vec<usize>,
    pub block: Option<usize>,
    pub lhs: T,
    pub rhs: T,
    /// Human-readable description of the two sides.
    pub note: String,
    /// Search trial that produced the game, when it came from a search.
    pub trial: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport<T: Scalar> {
    pub axiom: Axiom,
    pub value: CoalitionalValue,
    pub verdict: Verdict,
    pub witness: Option<Witness<T>>,
}

impl<T: Scalar> AxiomReport<T> {
    fn holds(axiom: Axiom, value: CoalitionalValue, vacuous: bool) -> Self {
        AxiomReport {
            axiom,
            value,
            verdict: Verdict::Holds { vacuous },
            witness: None,
        }
    }

    fn violated(axiom: Axiom, value: CoalitionalValue, witness: Witness<T>) -> Self {
        AxiomReport {
            axiom,
            value,
            verdict: Verdict::Violated,
            witness: Some(witness),
        }
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    /// Runs the checker again on the witness game.
    pub fn recheck(&self) -> Option<AxiomReport<T>> {
        self.witness
            .as_ref()
            .map(|w| check(self.value, self.axiom, &w.game))
    }
}

/// Dispatches to the checker for `axiom`.
pub fn check<T: Scalar>(
    value: CoalitionalValue,
    axiom: Axiom,
    ug: &UnionGame<T>,
) -> AxiomReport<T> {
    match axiom {
        Axiom::Qgp => check_qgp(value, ug),
        Axiom::QStarGp => check_qstar_gp(value, ug),
        Axiom::Bcu => check_bcu(value, ug),
        Axiom::Eiu => check_eiu(value, ug),
        Axiom::Dmiviu => check_dmiviu(value, ug),
        Axiom::Bcpa => check_bcpa(value, ug),
        Axiom::Efficiency => check_efficiency(value, ug),
        Axiom::BlockOrderInvariance => check_block_order(value, ug),
        Axiom::Ced | Axiom::Cesd | Axiom::CoalitionalShapley | Axiom::CoalitionalBanzhaf => {
            let base = axiom.consistency_base().expect("consistency axiom");
            let mut report = check_coalitional(value, base, &ug.game);
            if let Some(w) = report.witness.as_mut() {
                w.game = ug.clone();
            }
            report
        }
    }
}

fn witness<T: Scalar>(
    ug: &UnionGame<T>,
    players: Vec<usize>,
    block: Option<usize>,
    lhs: T,
    rhs: T,
    note: String,
) -> Witness<T> {
    Witness {
        game: ug.clone(),
        players,
        block,
        lhs,
        rhs,
        note,
        trial: None,
    }
}

fn block_sums<T: Scalar>(ug: &UnionGame<T>, alloc: &Allocation<T>) -> Vec<T> {
    ug.partition
        .blocks()
        .iter()
        .map(|b| b.members().map(|i| alloc[i].clone()).sum())
        .collect()
}

fn check_quotient_like<T: Scalar>(
    value: CoalitionalValue,
    axiom: Axiom,
    ug: &UnionGame<T>,
    quotient: TuGame<T>,
) -> AxiomReport<T> {
    let alloc = value.evaluate(ug);
    let outer = value.evaluate(&UnionGame::trivial(quotient));
    for (k, sum) in block_sums(ug, &alloc).into_iter().enumerate() {
        if sum != outer[k] {
            let members = ug.partition.blocks()[k].members().collect();
            let note = format!("sum over union {} vs its payoff in the quotient", k + 1);
            return AxiomReport::violated(
                axiom,
                value,
                witness(ug, members, Some(k), sum, outer[k].clone(), note),
            );
        }
    }
    AxiomReport::holds(axiom, value, false)
}

/// `Σ_{i∈P_k} g_i(N, v, P) = g_k(M, v/P, P^m)` for every union.
pub fn check_qgp<T: Scalar>(value: CoalitionalValue, ug: &UnionGame<T>) -> AxiomReport<T> {
    check_quotient_like(value, Axiom::Qgp, ug, ug.quotient_game())
}

/// As [`check_qgp`] with the quotient* game.
pub fn check_qstar_gp<T: Scalar>(value: CoalitionalValue, ug: &UnionGame<T>) -> AxiomReport<T> {
    check_quotient_like(value, Axiom::QStarGp, ug, ug.quotient_star_game())
}

/// Visits every pair `i < j` sharing a union until `test` reports a
/// violation. Returns the verdict for the whole game.
fn pairwise<T: Scalar>(
    axiom: Axiom,
    value: CoalitionalValue,
    ug: &UnionGame<T>,
    mut test: impl FnMut(usize, usize, usize) -> Option<(T, T, String)>,
) -> AxiomReport<T> {
    let mut vacuous = true;
    for (k, block) in ug.partition.blocks().iter().enumerate() {
        if block.len() < 2 {
            continue;
        }
        vacuous = false;
        let members: Vec<usize> = block.members().collect();
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if let Some((lhs, rhs, note)) = test(k, i, j) {
                    return AxiomReport::violated(
                        axiom,
                        value,
                        witness(ug, vec![i, j], Some(k), lhs, rhs, note),
                    );
                }
            }
        }
    }
    AxiomReport::holds(axiom, value, vacuous)
}

fn differ<T: Scalar>(lhs: T, rhs: T, note: impl FnOnce() -> String) -> Option<(T, T, String)> {
    (lhs != rhs).then(|| (lhs, rhs, note()))
}

/// `g_i(P) − g_i(P₋ⱼ) = g_j(P) − g_j(P₋ᵢ)` for `i, j` in the same union.
pub fn check_bcu<T: Scalar>(value: CoalitionalValue, ug: &UnionGame<T>) -> AxiomReport<T> {
    let alloc = value.evaluate(ug);
    let mut split: Vec<Option<Allocation<T>>> = vec![None; ug.game.n()];
    let mut split_alloc = |l: usize| -> Allocation<T> {
        split[l]
            .get_or_insert_with(|| {
                // i ≠ j in one block means the block has ≥ 2 members
                let parted = ug.split_off(l).expect("split of a non-singleton block");
                value.evaluate(&parted)
            })
            .clone()
    };
    pairwise(Axiom::Bcu, value, ug, |_, i, j| {
        let lhs = alloc[i].clone() - split_alloc(j)[i].clone();
        let rhs = alloc[j].clone() - split_alloc(i)[j].clone();
        differ(lhs, rhs, || {
            format!(
                "g_{i}(P) - g_{i}(P-{j}) vs g_{j}(P) - g_{j}(P-{i})",
                i = ug.game.player_name(i),
                j = ug.game.player_name(j)
            )
        })
    })
}

/// `g_i = g_j` for `i, j` in the same union.
pub fn check_eiu<T: Scalar>(value: CoalitionalValue, ug: &UnionGame<T>) -> AxiomReport<T> {
    let alloc = value.evaluate(ug);
    pairwise(Axiom::Eiu, value, ug, |_, i, j| {
        differ(alloc[i].clone(), alloc[j].clone(), || {
            "g_i vs g_j".to_string()
        })
    })
}

/// `g_i − g_j = v(i) − v(j)` for `i, j` in the same union.
pub fn check_dmiviu<T: Scalar>(value: CoalitionalValue, ug: &UnionGame<T>) -> AxiomReport<T> {
    let alloc = value.evaluate(ug);
    let g = &ug.game;
    pairwise(Axiom::Dmiviu, value, ug, |_, i, j| {
        let lhs = alloc[i].clone() - alloc[j].clone();
        let rhs = g.singleton_worth(i).clone() - g.singleton_worth(j).clone();
        differ(lhs, rhs, || "g_i - g_j vs v(i) - v(j)".to_string())
    })
}

/// `g_i(N, v, P) − g_i(reduced at i) = g_j(N, v, P) − g_j(reduced at j)`,
/// where the game reduced at `i` drops every other member of `i`'s union.
pub fn check_bcpa<T: Scalar>(value: CoalitionalValue, ug: &UnionGame<T>) -> AxiomReport<T> {
    let alloc = value.evaluate(ug);
    let grand = ug.game.grand_coalition();
    let reduced_payoff = |k: usize, i: usize| -> T {
        let reduced = ug.bcpa_reduction(k, i).expect("player belongs to block");
        let block = ug.partition.blocks()[k];
        let kept = grand.difference(block).with(i);
        let local = Coalition::from_bits(kept.bits() & ((1 << i) - 1)).len();
        value.evaluate(&reduced)[local].clone()
    };
    let mut cache: Vec<Option<T>> = vec![None; ug.game.n()];
    pairwise(Axiom::Bcpa, value, ug, |k, i, j| {
        let ri = cache[i].get_or_insert_with(|| reduced_payoff(k, i)).clone();
        let rj = cache[j].get_or_insert_with(|| reduced_payoff(k, j)).clone();
        let lhs = alloc[i].clone() - ri;
        let rhs = alloc[j].clone() - rj;
        differ(lhs, rhs, || {
            "g_i(P) - g_i(reduced at i) vs g_j(P) - g_j(reduced at j)".to_string()
        })
    })
}

/// `g(N, v, Pⁿ) = base(N, v)`.
pub fn check_coalitional<T: Scalar>(
    value: CoalitionalValue,
    base: Base,
    game: &TuGame<T>,
) -> AxiomReport<T> {
    let axiom = Axiom::for_base(base);
    let trivial = UnionGame::trivial(game.clone());
    let got = value.evaluate(&trivial);
    let want = base.evaluate(game);
    for i in 0..game.n() {
        if got[i] != want[i] {
            let note = format!(
                "{} at the trivial partition vs {}",
                value.label(),
                base.id()
            );
            return AxiomReport::violated(
                axiom,
                value,
                witness(
                    &trivial,
                    vec![i],
                    None,
                    got[i].clone(),
                    want[i].clone(),
                    note,
                ),
            );
        }
    }
    AxiomReport::holds(axiom, value, false)
}

/// `Σ_i g_i = v(N)`.
pub fn check_efficiency<T: Scalar>(value: CoalitionalValue, ug: &UnionGame<T>) -> AxiomReport<T> {
    let total = value.evaluate(ug).total();
    let grand = ug.game.grand_worth().clone();
    if total != grand {
        let players = (0..ug.game.n()).collect();
        let w = witness(
            ug,
            players,
            None,
            total,
            grand,
            "sum of payoffs vs v(N)".into(),
        );
        return AxiomReport::violated(Axiom::Efficiency, value, w);
    }
    AxiomReport::holds(Axiom::Efficiency, value, false)
}

/// Block orders tried by [`check_block_order`]: every permutation for up to
/// three blocks, otherwise every rotation and every reversed rotation.
pub fn block_orders(m: usize) -> Vec<Vec<usize>> {
    if m <= 3 {
        let mut out = Vec::new();
        permutations(&mut (0..m).collect(), 0, &mut out);
        out.retain(|p| p.iter().enumerate().any(|(i, &k)| i != k));
        return out;
    }
    let mut out = Vec::new();
    for shift in 0..m {
        let rotated: Vec<usize> = (0..m).map(|i| (i + shift) % m).collect();
        let mut reversed = rotated.clone();
        reversed.reverse();
        if shift > 0 {
            out.push(rotated);
        }
        out.push(reversed);
    }
    out
}

fn permutations(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

/// The allocation does not depend on the order in which blocks are listed.
pub fn check_block_order<T: Scalar>(value: CoalitionalValue, ug: &UnionGame<T>) -> AxiomReport<T> {
    let axiom = Axiom::BlockOrderInvariance;
    let alloc = value.evaluate(ug);
    let orders = block_orders(ug.m());
    for order in &orders {
        let other = value.evaluate(&ug.reordered(order));
        for i in 0..ug.game.n() {
            if alloc[i] != other[i] {
                let shown: Vec<String> = order.iter().map(|k| (k + 1).to_string()).collect();
                let note = format!(
                    "payoff with blocks as listed vs reordered [{}]",
                    shown.join(",")
                );
                let w = witness(ug, vec![i], None, alloc[i].clone(), other[i].clone(), note);
                return AxiomReport::violated(axiom, value, w);
            }
        }
    }
    AxiomReport::holds(axiom, value, orders.is_empty())
}
