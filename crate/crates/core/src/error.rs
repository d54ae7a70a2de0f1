use thiserror::Error;

use crate::coalition::MAX_PLAYERS;

/// Validation failures for games, partitions and the transforms between them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("roster is empty")]
    EmptyRoster,
    #[error("roster has {0} players; at most {MAX_PLAYERS} are supported")]
    RosterTooLarge(usize),
    #[error("player name is empty")]
    EmptyPlayerName,
    #[error("player name {0:?} contains a comma")]
    InvalidPlayerName(String),
    #[error("duplicate player {0:?}")]
    DuplicatePlayer(String),
    #[error("unknown player {0:?}")]
    UnknownPlayer(String),
    #[error("coalition refers to unknown player {0:?}")]
    UnknownPlayerInCoalition(String),
    #[error("coalition {0} listed more than once")]
    DuplicateCoalition(String),
    #[error("no worth given for coalition {0}")]
    MissingCoalition(String),
    #[error("the empty coalition must have worth 0")]
    NonzeroEmptyWorth,
    #[error("worth table has {found} entries, expected {expected}")]
    WorthTableSize { expected: usize, found: usize },
    #[error("partition block {0} is empty")]
    EmptyBlock(usize),
    #[error("player {0:?} appears in more than one block")]
    OverlappingBlocks(String),
    #[error("player {0:?} is not covered by the partition")]
    UncoveredPlayer(String),
    #[error("partition covers {found} players but the game has {expected}")]
    PartitionSizeMismatch { expected: usize, found: usize },
    #[error("block index {index} out of range ({blocks} blocks)")]
    BlockOutOfRange { index: usize, blocks: usize },
    #[error("player {0:?} is alone in its block and cannot be split off")]
    SingletonSplit(String),
    #[error("cannot restrict a game to the empty coalition")]
    EmptyRestriction,
    #[error("coalition is not contained in block {0}")]
    CoalitionOutsideBlock(usize),
    #[error("player {player:?} is not a member of block {block}")]
    PlayerOutsideBlock { player: String, block: usize },
    #[error("no weight case applies to m={m}, p={p}, t={t}")]
    WeightUndefined { m: usize, p: usize, t: usize },
}
