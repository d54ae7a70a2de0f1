//! Values for plain TU-games: equal division, equal surplus division,
//! Shapley and Banzhaf.

use std::fmt;
use std::str::FromStr;

use crate::allocation::Allocation;
use crate::game::TuGame;
use crate::scalar::Scalar;

/// A value for TU-games, `f: (N, v) ↦ (f_i(N, v))_{i∈N}`.
///
/// Implementations must be deterministic and return one payoff per roster
/// player, in roster order.
pub trait BaseValue<T: Scalar>: Sync {
    fn evaluate(&self, game: &TuGame<T>) -> Allocation<T>;
}

impl<T: Scalar, F> BaseValue<T> for F
where
    F: Fn(&TuGame<T>) -> Allocation<T> + Sync,
{
    fn evaluate(&self, game: &TuGame<T>) -> Allocation<T> {
        self(game)
    }
}

/// The built-in base values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Ed,
    Esd,
    Shapley,
    Banzhaf,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::Ed, Base::Esd, Base::Shapley, Base::Banzhaf];

    pub fn id(self) -> &'static str {
        match self {
            Base::Ed => "ed",
            Base::Esd => "esd",
            Base::Shapley => "shapley",
            Base::Banzhaf => "banzhaf",
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Base {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Base::ALL
            .into_iter()
            .find(|b| b.id() == s)
            .ok_or_else(|| format!("unknown base value {s:?}"))
    }
}

impl<T: Scalar> BaseValue<T> for Base {
    fn evaluate(&self, game: &TuGame<T>) -> Allocation<T> {
        match self {
            Base::Ed => ed(game),
            Base::Esd => esd(game),
            Base::Shapley => shapley(game),
            Base::Banzhaf => banzhaf(game),
        }
    }
}

fn allocation<T: Scalar>(game: &TuGame<T>, payoffs: Vec<T>) -> Allocation<T> {
    Allocation::new(game.players().to_vec(), payoffs)
}

/// `ED_i = v(N) / n`.
pub fn ed<T: Scalar>(game: &TuGame<T>) -> Allocation<T> {
    let share = game.grand_worth().clone() / T::from_count(game.n());
    allocation(game, vec![share; game.n()])
}

/// `ESD_i = v(i) + (v(N) − Σ_j v(j)) / n`.
pub fn esd<T: Scalar>(game: &TuGame<T>) -> Allocation<T> {
    let n = game.n();
    let surplus = game.grand_worth().clone() - game.singleton_sum(game.grand_coalition());
    let share = surplus / T::from_count(n);
    let payoffs = (0..n)
        .map(|i| game.singleton_worth(i).clone() + share.clone())
        .collect();
    allocation(game, payoffs)
}

/// `s!(n−s−1)!/n!` for `s = 0, …, n−1`.
pub fn shapley_weights<T: Scalar>(n: usize) -> Vec<T> {
    // w(0) = 1/n and w(s+1) = w(s)·(s+1)/(n−s−1)
    let mut weights = Vec::with_capacity(n);
    let mut w = T::one() / T::from_count(n);
    for s in 0..n {
        weights.push(w.clone());
        if s + 1 < n {
            w = w * T::from_count(s + 1) / T::from_count(n - s - 1);
        }
    }
    weights
}

/// Shapley value by subset enumeration:
/// `φ_i = Σ_{S⊆N∖i} s!(n−s−1)!/n! · (v(S∪i) − v(S))`.
pub fn shapley<T: Scalar>(game: &TuGame<T>) -> Allocation<T> {
    let n = game.n();
    let weights = shapley_weights::<T>(n);
    let grand = game.grand_coalition();
    let payoffs = (0..n)
        .map(|i| {
            let mut total = T::zero();
            for s in grand.without(i).subsets() {
                let marginal = game.worth(s.with(i)).clone() - game.worth(s).clone();
                total += &(weights[s.len()].clone() * marginal);
            }
            total
        })
        .collect();
    allocation(game, payoffs)
}

/// Banzhaf value: `β_i = 2^{−(n−1)} Σ_{S⊆N∖i} (v(S∪i) − v(S))`.
pub fn banzhaf<T: Scalar>(game: &TuGame<T>) -> Allocation<T> {
    let n = game.n();
    let grand = game.grand_coalition();
    let scale = T::from_int(1i64 << (n - 1));
    let payoffs = (0..n)
        .map(|i| {
            let mut total = T::zero();
            for s in grand.without(i).subsets() {
                total += game.worth(s.with(i));
                total -= game.worth(s);
            }
            total / scale.clone()
        })
        .collect();
    allocation(game, payoffs)
}
