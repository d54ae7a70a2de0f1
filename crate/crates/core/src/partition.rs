//! A priori unions: partitions of the roster and the games built on them.

use crate::coalition::Coalition;
use crate::error::GameError;
use crate::game::{numbered_players, TuGame};
use crate::scalar::Scalar;

/// An ordered partition of the roster `{0, …, n-1}` into nonempty blocks.
///
/// Block position matters only for naming (quotient-game players are the
/// block positions); every value in this crate is invariant under block
/// reordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Coalition>,
    n: usize,
}

impl Partition {
    pub fn new(blocks: Vec<Coalition>, n: usize) -> Result<Self, GameError> {
        let grand = Coalition::grand(n);
        let mut covered = Coalition::EMPTY;
        for (k, &block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(GameError::EmptyBlock(k));
            }
            if !block.is_subset_of(grand) {
                let stray = block.difference(grand).members().next().unwrap_or(n);
                return Err(GameError::UnknownPlayer(format!("#{stray}")));
            }
            if let Some(i) = block.intersection(covered).members().next() {
                return Err(GameError::OverlappingBlocks(format!("#{i}")));
            }
            covered = covered.union(block);
        }
        if let Some(i) = grand.difference(covered).members().next() {
            return Err(GameError::UncoveredPlayer(format!("#{i}")));
        }
        Ok(Partition { blocks, n })
    }

    /// `Pⁿ = {{1}, …, {n}}` in roster order.
    pub fn trivial(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(Coalition::singleton).collect(),
            n,
        }
    }

    /// The single-block partition `{N}`.
    pub fn grand(n: usize) -> Self {
        Partition {
            blocks: vec![Coalition::grand(n)],
            n,
        }
    }

    /// Number of blocks, `m`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> Result<Coalition, GameError> {
        self.blocks
            .get(k)
            .copied()
            .ok_or(GameError::BlockOutOfRange {
                index: k,
                blocks: self.blocks.len(),
            })
    }

    /// Index of the block containing player `i`.
    pub fn block_of(&self, i: usize) -> Result<usize, GameError> {
        self.blocks
            .iter()
            .position(|b| b.contains(i))
            .ok_or_else(|| GameError::UnknownPlayer(format!("#{i}")))
    }

    /// Block index for every player, indexed by player.
    pub fn owners(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for i in b.members() {
                owner[i] = k;
            }
        }
        owner
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Union of the blocks whose indices are the members of `blocks`.
    pub fn union_of(&self, blocks: Coalition) -> Coalition {
        blocks
            .members()
            .fold(Coalition::EMPTY, |acc, k| acc.union(self.blocks[k]))
    }

    /// `P₋ₗ`: player `l` leaves its block and stands alone right after it.
    pub fn split_off(&self, l: usize) -> Result<Partition, GameError> {
        let k = self.block_of(l)?;
        if self.blocks[k].len() < 2 {
            return Err(GameError::SingletonSplit(format!("#{l}")));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
        blocks.extend_from_slice(&self.blocks[..k]);
        blocks.push(self.blocks[k].without(l));
        blocks.push(Coalition::singleton(l));
        blocks.extend_from_slice(&self.blocks[k + 1..]);
        Ok(Partition { blocks, n: self.n })
    }

    /// Blocks reordered so that block `k` of the result is block `order[k]`.
    pub fn reordered(&self, order: &[usize]) -> Partition {
        assert_eq!(order.len(), self.blocks.len(), "block permutation length");
        Partition {
            blocks: order.iter().map(|&k| self.blocks[k]).collect(),
            n: self.n,
        }
    }
}

/// A game with a priori unions, `(N, v, P)`.
#[derive(Clone, PartialEq)]
pub struct UnionGame<T> {
    pub game: TuGame<T>,
    pub partition: Partition,
}

impl<T: Scalar> std::fmt::Debug for UnionGame<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let blocks: Vec<String> = self
            .partition
            .blocks()
            .iter()
            .map(|&b| format!("{{{}}}", self.game.coalition_key(b)))
            .collect();
        f.debug_struct("UnionGame")
            .field("game", &self.game)
            .field("partition", &blocks)
            .finish()
    }
}

impl<T: Scalar> UnionGame<T> {
    pub fn new(game: TuGame<T>, partition: Partition) -> Result<Self, GameError> {
        if partition.n() != game.n() {
            return Err(GameError::PartitionSizeMismatch {
                expected: game.n(),
                found: partition.n(),
            });
        }
        Ok(UnionGame { game, partition })
    }

    /// The game paired with `Pⁿ`.
    pub fn trivial(game: TuGame<T>) -> Self {
        let partition = Partition::trivial(game.n());
        UnionGame { game, partition }
    }

    /// Builds the partition from blocks of player names.
    pub fn with_named_blocks<S: AsRef<str>>(
        game: TuGame<T>,
        blocks: &[Vec<S>],
    ) -> Result<Self, GameError> {
        let mut coalitions = Vec::with_capacity(blocks.len());
        let mut seen = Coalition::EMPTY;
        for block in blocks {
            let mut c = Coalition::EMPTY;
            for name in block {
                let i = game.index_of(name.as_ref())?;
                if seen.contains(i) {
                    return Err(GameError::OverlappingBlocks(name.as_ref().to_string()));
                }
                seen = seen.with(i);
                c = c.with(i);
            }
            coalitions.push(c);
        }
        if let Some(i) = game.grand_coalition().difference(seen).members().next() {
            return Err(GameError::UncoveredPlayer(game.player_name(i).to_string()));
        }
        let n = game.n();
        Ok(UnionGame {
            game,
            partition: Partition::new(coalitions, n)?,
        })
    }

    pub fn m(&self) -> usize {
        self.partition.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.partition.blocks().iter().map(|b| b.len()).collect()
    }

    /// `v(P_k)` for every block.
    pub fn block_worths(&self) -> Vec<T> {
        self.partition
            .blocks()
            .iter()
            .map(|&b| self.game.worth(b).clone())
            .collect()
    }

    /// Block index of a named player.
    pub fn block_of_name(&self, name: &str) -> Result<usize, GameError> {
        self.partition.block_of(self.game.index_of(name)?)
    }

    /// The quotient game `(M, v/P)`, `(v/P)(R) = v(∪_{r∈R} P_r)`, with
    /// players named by block position `"1"`, …, `"m"`.
    pub fn quotient_game(&self) -> TuGame<T> {
        TuGame::from_fn(numbered_players(self.m()), |r| {
            self.game.worth(self.partition.union_of(r)).clone()
        })
        .expect("quotient roster is valid")
    }

    /// The quotient* game: a strict subset `R ⊂ M` is worth the sum of its
    /// members' singleton worths and `M` itself is worth `v(N)`.
    pub fn quotient_star_game(&self) -> TuGame<T> {
        let all = Coalition::grand(self.m());
        TuGame::from_fn(numbered_players(self.m()), |r| {
            if r == all {
                self.game.grand_worth().clone()
            } else {
                self.game.singleton_sum(self.partition.union_of(r))
            }
        })
        .expect("quotient roster is valid")
    }

    /// `(N, v, P₋ₗ)`.
    pub fn split_off(&self, l: usize) -> Result<UnionGame<T>, GameError> {
        let partition = self.partition.split_off(l).map_err(|e| self.rename(e))?;
        Ok(UnionGame {
            game: self.game.clone(),
            partition,
        })
    }

    /// `(N∖P_k ∪ {i}, v restricted, P∖P_k ∪ {{i}})`: every other member of
    /// block `k` leaves the game and `{i}` takes the block's position.
    pub fn bcpa_reduction(&self, k: usize, i: usize) -> Result<UnionGame<T>, GameError> {
        let block = self.partition.block(k)?;
        if !block.contains(i) {
            return Err(GameError::PlayerOutsideBlock {
                player: self.game.player_name(i).to_string(),
                block: k,
            });
        }
        let keep = self.game.grand_coalition().difference(block).with(i);
        let kept: Vec<usize> = keep.members().collect();
        let game = self.game.restrict_to(keep)?;
        let blocks = self
            .partition
            .blocks()
            .iter()
            .enumerate()
            .map(|(r, &b)| {
                let b = if r == k { Coalition::singleton(i) } else { b };
                b.compress(&kept)
            })
            .collect();
        let partition = Partition::new(blocks, kept.len())?;
        Ok(UnionGame { game, partition })
    }

    /// Same game with the block order permuted.
    pub fn reordered(&self, order: &[usize]) -> UnionGame<T> {
        UnionGame {
            game: self.game.clone(),
            partition: self.partition.reordered(order),
        }
    }

    // Partition errors carry roster indices; swap in player names.
    fn rename(&self, e: GameError) -> GameError {
        let name = |s: &str| {
            s.strip_prefix('#')
                .and_then(|i| i.parse::<usize>().ok())
                .and_then(|i| self.game.players().get(i).cloned())
                .unwrap_or_else(|| s.to_string())
        };
        match e {
            GameError::SingletonSplit(s) => GameError::SingletonSplit(name(&s)),
            GameError::UnknownPlayer(s) => GameError::UnknownPlayer(name(&s)),
            other => other,
        }
    }
}
