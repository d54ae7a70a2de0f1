//! Transferable-utility games over a named roster.

use std::collections::HashMap;
use std::fmt;

use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::GameError;
use crate::scalar::Scalar;

/// How [`TuGame::from_entries`] treats coalitions absent from the input.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum WorthMode<T> {
    /// Every nonempty coalition must be listed.
    #[default]
    Strict,
    /// Missing coalitions take the given worth.
    Sparse { default: T },
}

/// A game `(N, v)`: a roster plus one worth per coalition, `v(∅) = 0`.
#[derive(Clone, PartialEq)]
pub struct TuGame<T> {
    players: Vec<String>,
    worth: Vec<T>,
}

pub(crate) fn validate_roster(players: &[String]) -> Result<(), GameError> {
    if players.is_empty() {
        return Err(GameError::EmptyRoster);
    }
    if players.len() > MAX_PLAYERS {
        return Err(GameError::RosterTooLarge(players.len()));
    }
    let mut seen = HashMap::with_capacity(players.len());
    for name in players {
        if name.is_empty() {
            return Err(GameError::EmptyPlayerName);
        }
        if name.contains(',') {
            return Err(GameError::InvalidPlayerName(name.clone()));
        }
        if seen.insert(name.as_str(), ()).is_some() {
            return Err(GameError::DuplicatePlayer(name.clone()));
        }
    }
    Ok(())
}

/// Players named `"1"`, …, `"n"`.
pub fn numbered_players(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl<T: Scalar> TuGame<T> {
    /// Builds a game from a full worth table indexed by coalition bits.
    pub fn from_table<S: Into<String>>(
        players: impl IntoIterator<Item = S>,
        worth: Vec<T>,
    ) -> Result<Self, GameError> {
        let players: Vec<String> = players.into_iter().map(Into::into).collect();
        validate_roster(&players)?;
        let expected = 1usize << players.len();
        if worth.len() != expected {
            return Err(GameError::WorthTableSize {
                expected,
                found: worth.len(),
            });
        }
        if !worth[0].is_zero() {
            return Err(GameError::NonzeroEmptyWorth);
        }
        Ok(TuGame { players, worth })
    }

    /// Builds a game by evaluating `worth` on every coalition; the empty
    /// coalition is pinned to zero without calling `worth`.
    pub fn from_fn<S: Into<String>>(
        players: impl IntoIterator<Item = S>,
        mut worth: impl FnMut(Coalition) -> T,
    ) -> Result<Self, GameError> {
        let players: Vec<String> = players.into_iter().map(Into::into).collect();
        validate_roster(&players)?;
        let table = (0..1u32 << players.len())
            .map(|bits| match bits {
                0 => T::zero(),
                _ => worth(Coalition::from_bits(bits)),
            })
            .collect();
        Ok(TuGame {
            players,
            worth: table,
        })
    }

    /// Builds a game from coalitions given by member names.
    ///
    /// An entry for the empty coalition is accepted only with worth zero. In
    /// strict mode every nonempty coalition must appear exactly once.
    pub fn from_entries<P, C, N>(
        players: impl IntoIterator<Item = P>,
        entries: impl IntoIterator<Item = (C, T)>,
        mode: WorthMode<T>,
    ) -> Result<Self, GameError>
    where
        P: Into<String>,
        C: IntoIterator<Item = N>,
        N: AsRef<str>,
    {
        let players: Vec<String> = players.into_iter().map(Into::into).collect();
        validate_roster(&players)?;
        let index: HashMap<&str, usize> = players
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();

        let size = 1usize << players.len();
        let mut table: Vec<Option<T>> = vec![None; size];
        for (members, worth) in entries {
            let mut c = Coalition::EMPTY;
            for name in members {
                let name = name.as_ref();
                let &i = index
                    .get(name)
                    .ok_or_else(|| GameError::UnknownPlayerInCoalition(name.to_string()))?;
                c = c.with(i);
            }
            if c.is_empty() {
                if !worth.is_zero() {
                    return Err(GameError::NonzeroEmptyWorth);
                }
                continue;
            }
            let slot = &mut table[c.index()];
            if slot.is_some() {
                return Err(GameError::DuplicateCoalition(format_members(&players, c)));
            }
            *slot = Some(worth);
        }

        let mut worth = Vec::with_capacity(size);
        worth.push(T::zero());
        for (bits, slot) in table.into_iter().enumerate().skip(1) {
            let value = match (slot, &mode) {
                (Some(v), _) => v,
                (None, WorthMode::Sparse { default }) => default.clone(),
                (None, WorthMode::Strict) => {
                    let c = Coalition::from_bits(bits as u32);
                    return Err(GameError::MissingCoalition(format_members(&players, c)));
                }
            };
            worth.push(value);
        }
        Ok(TuGame { players, worth })
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn player_name(&self, i: usize) -> &str {
        &self.players[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, GameError> {
        self.players
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| GameError::UnknownPlayer(name.to_string()))
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::grand(self.n())
    }

    pub fn worth(&self, c: Coalition) -> &T {
        &self.worth[c.index()]
    }

    /// `v(N)`.
    pub fn grand_worth(&self) -> &T {
        self.worth(self.grand_coalition())
    }

    /// `v({i})`.
    pub fn singleton_worth(&self, i: usize) -> &T {
        self.worth(Coalition::singleton(i))
    }

    /// `Σ_{i∈S} v({i})`.
    pub fn singleton_sum(&self, c: Coalition) -> T {
        c.members().map(|i| self.singleton_worth(i).clone()).sum()
    }

    /// Worth table indexed by coalition bits.
    pub fn table(&self) -> &[T] {
        &self.worth
    }

    /// Maps every worth through `f`, keeping the roster.
    pub fn map_worth<U: Scalar>(&self, mut f: impl FnMut(Coalition, &T) -> U) -> TuGame<U> {
        TuGame {
            players: self.players.clone(),
            worth: self
                .worth
                .iter()
                .enumerate()
                .map(|(bits, w)| match bits {
                    0 => U::zero(),
                    _ => f(Coalition::from_bits(bits as u32), w),
                })
                .collect(),
        }
    }

    /// The zero-normalized game `v⁰(S) = v(S) − Σ_{i∈S} v({i})`.
    pub fn zero_normalized(&self) -> TuGame<T> {
        self.map_worth(|c, w| w.clone() - self.singleton_sum(c))
    }

    /// The subgame on `keep`, with `keep`'s members as the new roster in their
    /// original order.
    pub fn restrict_to(&self, keep: Coalition) -> Result<TuGame<T>, GameError> {
        if keep.is_empty() {
            return Err(GameError::EmptyRestriction);
        }
        let kept: Vec<usize> = keep.members().collect();
        let players = kept.iter().map(|&i| self.players[i].clone()).collect();
        let worth = (0..1u32 << kept.len())
            .map(|bits| self.worth(Coalition::from_bits(bits).expand(&kept)).clone())
            .collect();
        Ok(TuGame { players, worth })
    }

    /// Relabels the roster: player `i` of the result is player `order[i]` of
    /// `self`.
    pub fn permuted(&self, order: &[usize]) -> TuGame<T> {
        assert_eq!(order.len(), self.n(), "permutation length");
        let players = order.iter().map(|&i| self.players[i].clone()).collect();
        let worth = (0..1u32 << self.n())
            .map(|bits| self.worth(Coalition::from_bits(bits).expand(order)).clone())
            .collect();
        TuGame { players, worth }
    }

    /// Renders a coalition as comma-joined member names in roster order.
    pub fn coalition_key(&self, c: Coalition) -> String {
        format_members(&self.players, c)
    }
}

pub(crate) fn format_members(players: &[String], c: Coalition) -> String {
    c.members()
        .map(|i| players[i].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

impl<T: Scalar> fmt::Debug for TuGame<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for bits in 1..self.worth.len() {
            let c = Coalition::from_bits(bits as u32);
            map.entry(
                &format_args!("{{{}}}", self.coalition_key(c)),
                &format_args!("{}", self.worth[bits]),
            );
        }
        map.finish()
    }
}
