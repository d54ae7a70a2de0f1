//! JSON game documents.
//!
//! ```json
//! {
//!   "players": ["1", "2", "3"],
//!   "mode": "strict",
//!   "coalitions": { "1": "0", "2": "2", "1,2": "4", "...": "..." },
//!   "partition": [["1", "2"], ["3"]]
//! }
//! ```
//!
//! Coalition keys list member names in roster order, joined by commas.
//! Worths are rational literals in strings (`"3/2"`). In `sparse` mode
//! absent coalitions take `default_worth` (zero when omitted); in `strict`
//! mode every nonempty coalition must be listed and unknown top-level fields
//! are rejected.

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::error::GameError;
use crate::game::{TuGame, WorthMode};
use crate::partition::UnionGame;
use crate::rational::{format_rational, parse_rational, RationalParseError};
use crate::Rational;

const FIELDS: [&str; 5] = [
    "players",
    "mode",
    "default_worth",
    "coalitions",
    "partition",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DocumentMode {
    #[default]
    Strict,
    Sparse,
}

impl DocumentMode {
    pub fn id(self) -> &'static str {
        match self {
            DocumentMode::Strict => "strict",
            DocumentMode::Sparse => "sparse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationReason {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Literal(#[from] RationalParseError),
    #[error("unknown field {0:?}")]
    UnknownField(String),
    #[error("unknown mode {0:?}; expected \"strict\" or \"sparse\"")]
    UnknownMode(String),
    #[error("default_worth is only allowed in sparse mode")]
    DefaultInStrictMode,
    #[error("the empty coalition is never listed")]
    EmptyKey,
    #[error("coalition key {key:?} is not canonical; write {canonical:?}")]
    NonCanonicalKey { key: String, canonical: String },
    #[error("{0}")]
    Structure(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid game document ({context}): {reason}")]
    Validation {
        context: String,
        reason: ValidationReason,
    },
}

fn invalid(context: impl Into<String>, reason: impl Into<ValidationReason>) -> DocumentError {
    DocumentError::Validation {
        context: context.into(),
        reason: reason.into(),
    }
}

/// The parsed but unvalidated content of a game file.
#[derive(Debug, Clone, PartialEq)]
pub struct GameDocument {
    pub players: Vec<String>,
    pub mode: DocumentMode,
    pub default_worth: Option<Rational>,
    /// Coalition key and worth, in document order.
    pub coalitions: Vec<(String, Rational)>,
    pub partition: Option<Vec<Vec<String>>>,
}

/// Ordered coalition map that refuses duplicate keys.
#[derive(Default)]
struct CoalitionTable(Vec<(String, String)>);

impl<'de> Deserialize<'de> for CoalitionTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TableVisitor;

        impl<'de> Visitor<'de> for TableVisitor {
            type Value = CoalitionTable;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping coalition keys to rational strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<CoalitionTable, A::Error> {
                let mut entries: Vec<(String, String)> = Vec::new();
                while let Some((key, value)) = map.next_entry::<String, String>()? {
                    if entries.iter().any(|(k, _)| *k == key) {
                        return Err(de::Error::custom(format!(
                            "duplicate coalition key {key:?}"
                        )));
                    }
                    entries.push((key, value));
                }
                Ok(CoalitionTable(entries))
            }
        }

        deserializer.deserialize_map(TableVisitor)
    }
}

#[derive(Deserialize)]
struct RawDocument {
    players: Vec<String>,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    default_worth: Option<String>,
    #[serde(default)]
    coalitions: CoalitionTable,
    #[serde(default)]
    partition: Option<Vec<Vec<String>>>,
}

fn json_error(err: serde_json::Error) -> DocumentError {
    use serde_json::error::Category;
    match err.classify() {
        Category::Syntax | Category::Eof | Category::Io => DocumentError::Syntax {
            line: err.line(),
            column: err.column(),
            message: strip_position(&err.to_string()),
        },
        Category::Data => invalid(
            format!("line {}, column {}", err.line(), err.column()),
            ValidationReason::Structure(strip_position(&err.to_string())),
        ),
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(at) => message[..at].to_string(),
        None => message.to_string(),
    }
}

impl GameDocument {
    /// Parses the document structure and its rational literals. Roster,
    /// coalition and partition checks happen in [`GameDocument::to_union_game`].
    pub fn from_text(text: &str) -> Result<Self, DocumentError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
        let object = value.as_object().ok_or_else(|| {
            invalid(
                "document",
                ValidationReason::Structure("expected a JSON object".into()),
            )
        })?;
        let raw: RawDocument = serde_json::from_str(text).map_err(json_error)?;

        let mode = match raw.mode.as_deref() {
            None | Some("strict") => DocumentMode::Strict,
            Some("sparse") => DocumentMode::Sparse,
            Some(other) => {
                return Err(invalid("mode", ValidationReason::UnknownMode(other.into())))
            }
        };
        if mode == DocumentMode::Strict {
            if let Some(key) = object.keys().find(|k| !FIELDS.contains(&k.as_str())) {
                return Err(invalid(
                    "document",
                    ValidationReason::UnknownField(key.clone()),
                ));
            }
        }
        let default_worth = raw
            .default_worth
            .map(|w| parse_rational(&w).map_err(|e| invalid("default_worth", e)))
            .transpose()?;
        if mode == DocumentMode::Strict && default_worth.is_some() {
            return Err(invalid(
                "default_worth",
                ValidationReason::DefaultInStrictMode,
            ));
        }
        let coalitions = raw
            .coalitions
            .0
            .into_iter()
            .map(|(key, literal)| {
                let worth = parse_rational(&literal)
                    .map_err(|e| invalid(format!("coalitions[{key:?}]"), e))?;
                Ok((key, worth))
            })
            .collect::<Result<_, DocumentError>>()?;
        Ok(GameDocument {
            players: raw.players,
            mode,
            default_worth,
            coalitions,
            partition: raw.partition,
        })
    }

    /// Pretty JSON in field order `players, mode, default_worth,
    /// coalitions, partition`, with a trailing newline.
    pub fn to_text(&self) -> String {
        fn quoted(s: &str) -> String {
            serde_json::to_string(s).expect("strings serialize")
        }
        fn names(list: &[String]) -> String {
            let items: Vec<String> = list.iter().map(|s| quoted(s)).collect();
            format!("[{}]", items.join(", "))
        }

        let mut fields = vec![
            format!("  \"players\": {}", names(&self.players)),
            format!("  \"mode\": {}", quoted(self.mode.id())),
        ];
        if let Some(w) = &self.default_worth {
            fields.push(format!(
                "  \"default_worth\": {}",
                quoted(&format_rational(w))
            ));
        }
        if self.coalitions.is_empty() {
            fields.push("  \"coalitions\": {}".to_string());
        } else {
            let entries: Vec<String> = self
                .coalitions
                .iter()
                .map(|(k, w)| format!("    {}: {}", quoted(k), quoted(&format_rational(w))))
                .collect();
            fields.push(format!(
                "  \"coalitions\": {{\n{}\n  }}",
                entries.join(",\n")
            ));
        }
        if let Some(blocks) = &self.partition {
            let blocks: Vec<String> = blocks.iter().map(|b| names(b)).collect();
            fields.push(format!("  \"partition\": [{}]", blocks.join(", ")));
        }
        format!("{{\n{}\n}}\n", fields.join(",\n"))
    }

    /// Validates the document and builds the game. A missing partition
    /// means every player stands alone.
    pub fn to_union_game(&self) -> Result<UnionGame<Rational>, DocumentError> {
        let players = &self.players;
        crate::game::validate_roster(players).map_err(|e| invalid("players", e))?;
        let mut entries = Vec::with_capacity(self.coalitions.len());
        for (key, worth) in &self.coalitions {
            let context = || format!("coalitions[{key:?}]");
            if key.is_empty() {
                return Err(invalid(context(), ValidationReason::EmptyKey));
            }
            let names: Vec<&str> = key.split(',').collect();
            let mut indices = Vec::with_capacity(names.len());
            for name in &names {
                let i = players.iter().position(|p| p == name).ok_or_else(|| {
                    invalid(
                        context(),
                        GameError::UnknownPlayerInCoalition(name.to_string()),
                    )
                })?;
                indices.push(i);
            }
            if indices.windows(2).any(|w| w[0] >= w[1]) {
                let mut sorted = indices.clone();
                sorted.sort_unstable();
                sorted.dedup();
                let canonical = sorted
                    .iter()
                    .map(|&i| players[i].as_str())
                    .collect::<Vec<_>>()
                    .join(",");
                return Err(invalid(
                    context(),
                    ValidationReason::NonCanonicalKey {
                        key: key.clone(),
                        canonical,
                    },
                ));
            }
            entries.push((names, worth.clone()));
        }
        let mode = match self.mode {
            DocumentMode::Strict => WorthMode::Strict,
            DocumentMode::Sparse => WorthMode::Sparse {
                default: self.default_worth.clone().unwrap_or_default(),
            },
        };
        let game = TuGame::from_entries(players.iter().cloned(), entries, mode)
            .map_err(|e| invalid("coalitions", e))?;
        match &self.partition {
            None => Ok(UnionGame::trivial(game)),
            Some(blocks) => {
                UnionGame::with_named_blocks(game, blocks).map_err(|e| invalid("partition", e))
            }
        }
    }

    /// Strict document listing every nonempty coalition, keys ordered by
    /// size and then by roster position, with the partition spelled out.
    pub fn from_union_game(ug: &UnionGame<Rational>) -> Self {
        let game = &ug.game;
        let mut coalitions: Vec<_> = game.grand_coalition().subsets().skip(1).collect();
        coalitions.sort_by_key(|c| (c.len(), c.members().collect::<Vec<_>>()));
        GameDocument {
            players: game.players().to_vec(),
            mode: DocumentMode::Strict,
            default_worth: None,
            coalitions: coalitions
                .into_iter()
                .map(|c| (game.coalition_key(c), game.worth(c).clone()))
                .collect(),
            partition: Some(
                ug.partition
                    .blocks()
                    .iter()
                    .map(|b| {
                        b.members()
                            .map(|i| game.player_name(i).to_string())
                            .collect()
                    })
                    .collect(),
            ),
        }
    }
}

impl Serialize for GameDocument {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Table<'a>(&'a [(String, Rational)]);

        impl Serialize for Table<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (key, worth) in self.0 {
                    map.serialize_entry(key, &format_rational(worth))?;
                }
                map.end()
            }
        }

        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("players", &self.players)?;
        map.serialize_entry("mode", self.mode.id())?;
        if let Some(w) = &self.default_worth {
            map.serialize_entry("default_worth", &format_rational(w))?;
        }
        map.serialize_entry("coalitions", &Table(&self.coalitions))?;
        if let Some(p) = &self.partition {
            map.serialize_entry("partition", p)?;
        }
        map.end()
    }
}

pub fn parse_game(text: &str) -> Result<UnionGame<Rational>, DocumentError> {
    GameDocument::from_text(text)?.to_union_game()
}

/// Canonical text of `ug`; byte-identical for equal games.
pub fn serialize_game(ug: &UnionGame<Rational>) -> String {
    GameDocument::from_union_game(ug).to_text()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{g1, q, qr};
    use proptest::prelude::*;

    const G1: &str = r#"{
  "players": ["1", "2", "3"],
  "coalitions": {
    "1": "0", "2": "2", "3": "2",
    "1,2": "4", "1,3": "3", "2,3": "5", "1,2,3": "12"
  },
  "partition": [["1", "2"], ["3"]]
}"#;

    fn reason(err: DocumentError) -> ValidationReason {
        match err {
            DocumentError::Validation { reason, .. } => reason,
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn parses_g1() {
        assert_eq!(parse_game(G1).unwrap(), g1());
    }

    #[test]
    fn missing_partition_means_singletons() {
        let text = G1.replace(",\n  \"partition\": [[\"1\", \"2\"], [\"3\"]]", "");
        let ug = parse_game(&text).unwrap();
        assert!(ug.partition.is_trivial());
        assert_eq!(ug.game, g1().game);
    }

    #[test]
    fn unsorted_key_is_rejected() {
        let text = G1.replace("\"1,2\": \"4\"", "\"2,1\": \"4\"");
        assert_eq!(
            reason(parse_game(&text).unwrap_err()),
            ValidationReason::NonCanonicalKey {
                key: "2,1".into(),
                canonical: "1,2".into()
            }
        );
    }

    #[test]
    fn structural_errors() {
        let dup = G1.replace("\"2\": \"2\",", "\"2\": \"2\", \"2\": \"3\",");
        assert!(matches!(
            reason(parse_game(&dup).unwrap_err()),
            ValidationReason::Structure(m) if m.contains("duplicate coalition key")
        ));
        let missing = G1.replace("\"2,3\": \"5\", ", "");
        assert_eq!(
            reason(parse_game(&missing).unwrap_err()),
            ValidationReason::Game(GameError::MissingCoalition("2,3".into()))
        );
        let bad_literal = G1.replace("\"12\"", "\"1.2\"");
        assert!(matches!(
            reason(parse_game(&bad_literal).unwrap_err()),
            ValidationReason::Literal(RationalParseError::Malformed(_))
        ));
        let extra = G1.replacen('{', "{ \"comment\": \"x\",", 1);
        assert_eq!(
            reason(parse_game(&extra).unwrap_err()),
            ValidationReason::UnknownField("comment".into())
        );
        let overlap = G1.replace("[\"3\"]]", "[\"2\", \"3\"]]");
        assert!(matches!(
            reason(parse_game(&overlap).unwrap_err()),
            ValidationReason::Game(GameError::OverlappingBlocks(_))
        ));
        assert!(matches!(
            parse_game("{\"players\": [\"1\"],").unwrap_err(),
            DocumentError::Syntax { line: 1, .. }
        ));
    }

    #[test]
    fn sparse_mode_fills_defaults_and_tolerates_extra_fields() {
        let text = r#"{"players": ["a", "b"], "mode": "sparse", "default_worth": "1/2",
                       "coalitions": {"a,b": "3"}, "note": "ignored"}"#;
        let ug = parse_game(text).unwrap();
        assert_eq!(ug.game.table(), &[q(0), qr(1, 2), qr(1, 2), q(3)]);
        let strict_default =
            r#"{"players": ["a"], "default_worth": "1", "coalitions": {"a": "1"}}"#;
        assert_eq!(
            reason(parse_game(strict_default).unwrap_err()),
            ValidationReason::DefaultInStrictMode
        );
    }

    #[test]
    fn canonical_serialization() {
        let text = serialize_game(&g1());
        assert!(text.ends_with("}\n"));
        let doc = GameDocument::from_text(&text).unwrap();
        let keys: Vec<&str> = doc.coalitions.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["1", "2", "3", "1,2", "1,3", "2,3", "1,2,3"]);
        assert_eq!(parse_game(&text).unwrap(), g1());
        assert_eq!(serialize_game(&parse_game(&text).unwrap()), text);
    }

    #[test]
    fn quotient_document() {
        let doc = GameDocument::from_union_game(&UnionGame::trivial(g1().quotient_game()));
        assert_eq!(doc.players, ["1", "2"]);
        assert_eq!(
            doc.coalitions,
            vec![
                ("1".into(), q(4)),
                ("2".into(), q(2)),
                ("1,2".into(), q(12))
            ]
        );
    }

    fn arbitrary_document() -> impl Strategy<Value = GameDocument> {
        (1usize..5)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec((-50i64..50, 1i64..7), (1 << n) - 1),
                    proptest::collection::vec(0..n, n),
                    any::<bool>(),
                )
            })
            .prop_map(|(n, worths, labels, sparse)| {
                let ug = UnionGame::trivial(
                    TuGame::from_fn(crate::game::numbered_players(n), |c| {
                        if c.is_empty() {
                            q(0)
                        } else {
                            let (a, b) = worths[c.index() - 1];
                            qr(a, b)
                        }
                    })
                    .unwrap(),
                );
                let mut doc = GameDocument::from_union_game(&ug);
                let mut blocks: Vec<Vec<String>> = Vec::new();
                for label in 0..n {
                    let block: Vec<String> = (0..n)
                        .filter(|&i| labels[i] == label)
                        .map(|i| (i + 1).to_string())
                        .collect();
                    if !block.is_empty() {
                        blocks.push(block);
                    }
                }
                doc.partition = Some(blocks);
                if sparse {
                    doc.mode = DocumentMode::Sparse;
                    doc.default_worth = Some(qr(-1, 3));
                    doc.coalitions.retain(|(k, _)| k.len() % 2 == 1);
                }
                doc
            })
    }

    proptest! {
        #[test]
        fn documents_round_trip(doc in arbitrary_document()) {
            let text = doc.to_text();
            let back = GameDocument::from_text(&text).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(back.to_text(), text);
            let ug = doc.to_union_game().unwrap();
            let canonical = serialize_game(&ug);
            prop_assert_eq!(serialize_game(&parse_game(&canonical).unwrap()), canonical.clone());
            prop_assert_eq!(parse_game(&canonical).unwrap(), ug);
        }
    }
}
