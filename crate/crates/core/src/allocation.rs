use std::fmt;
use std::ops::Index;

use crate::scalar::Scalar;

/// Payoff vector `(f_i)_{i∈N}` over a game's roster.
#[derive(Clone, PartialEq)]
pub struct Allocation<T> {
    players: Vec<String>,
    payoffs: Vec<T>,
}

impl<T: Scalar> Allocation<T> {
    pub fn new(players: Vec<String>, payoffs: Vec<T>) -> Self {
        assert_eq!(players.len(), payoffs.len(), "one payoff per player");
        Allocation { players, payoffs }
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn payoffs(&self) -> &[T] {
        &self.payoffs
    }

    pub fn into_payoffs(self) -> Vec<T> {
        self.payoffs
    }

    pub fn len(&self) -> usize {
        self.payoffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payoffs.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.players
            .iter()
            .position(|p| p == name)
            .map(|i| &self.payoffs[i])
    }

    pub fn total(&self) -> T {
        self.payoffs.iter().cloned().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.players
            .iter()
            .map(String::as_str)
            .zip(self.payoffs.iter())
    }
}

impl<T> Index<usize> for Allocation<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.payoffs[i]
    }
}

impl<T: Scalar> fmt::Debug for Allocation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().map(|(p, v)| (p, v.to_string())))
            .finish()
    }
}

impl<T: Scalar> fmt::Display for Allocation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.payoffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}
