use num_traits::ToPrimitive;
use proptest::prelude::*;
use unionvals::axioms::{check, Axiom, Verdict};
use unionvals::{
    claimed, Base, BaseValue, Coalition, CoalitionalValue, Partition, Rational, Scalar, TuGame,
    UnionGame,
};

/// Union games with up to `max_n` players, integer worths in −10..=10 and a
/// partition taken from arbitrary labels.
fn union_game(max_n: usize) -> impl Strategy<Value = UnionGame<Rational>> {
    (2..=max_n)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(-10i64..=10, (1usize << n) - 1),
                proptest::collection::vec(0..n, n),
            )
        })
        .prop_map(|(worths, labels)| {
            let n = labels.len();
            let game = TuGame::from_fn(unionvals::game::numbered_players(n), |c| {
                if c.is_empty() {
                    Rational::from_int(0)
                } else {
                    Rational::from_int(worths[c.index() - 1])
                }
            })
            .unwrap();
            let blocks: Vec<Coalition> = (0..n)
                .map(|k| Coalition::from_members((0..n).filter(|&i| labels[i] == k)))
                .filter(|b| !b.is_empty())
                .collect();
            UnionGame::new(game, Partition::new(blocks, n).unwrap()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn efficient_values_distribute_the_grand_worth(ug in union_game(5)) {
        for v in CoalitionalValue::ALL {
            if v != CoalitionalValue::BanzhafOwen {
                prop_assert_eq!(v.evaluate(&ug).total(), ug.game.grand_worth().clone(), "{}", v);
            }
        }
    }

    #[test]
    fn claimed_properties_hold(ug in union_game(5)) {
        for v in CoalitionalValue::ALL {
            for a in Axiom::ALL {
                if claimed(v, a) {
                    let report = check(v, a, &ug);
                    prop_assert!(!report.is_violated(), "{} {}: {:?}", v, a, report.witness);
                }
            }
        }
    }

    #[test]
    fn values_at_singleton_unions_equal_their_base(ug in union_game(5)) {
        let trivial = UnionGame::trivial(ug.game.clone());
        for v in CoalitionalValue::ALL {
            prop_assert_eq!(v.evaluate(&trivial), v.trivial_base().evaluate(&ug.game), "{}", v);
        }
    }

    #[test]
    fn one_union_reduces_to_the_base_value(ug in union_game(5)) {
        // A single union receives v(N); ED^U, ESD2^U and Owen then act as
        // ED, ESD and Shapley on N.
        let whole = UnionGame::new(ug.game.clone(), Partition::grand(ug.game.n())).unwrap();
        prop_assert_eq!(CoalitionalValue::EdU.evaluate(&whole), Base::Ed.evaluate(&ug.game));
        prop_assert_eq!(CoalitionalValue::Esd2U.evaluate(&whole), Base::Esd.evaluate(&ug.game));
        prop_assert_eq!(CoalitionalValue::Owen.evaluate(&whole), Base::Shapley.evaluate(&ug.game));
    }

    #[test]
    fn esd5_balanced_contributions_with_large_unions(ug in union_game(6)) {
        let report = check(CoalitionalValue::Esd5U, Axiom::Bcu, &ug);
        prop_assert!(!report.is_violated(), "{:?}", report.witness);
    }

    #[test]
    fn witnesses_recheck(ug in union_game(4)) {
        for v in CoalitionalValue::ALL {
            for a in Axiom::ALL {
                let report = check(v, a, &ug);
                if report.is_violated() {
                    let again = report.recheck().unwrap();
                    prop_assert_eq!(again.verdict, Verdict::Violated);
                    prop_assert_eq!(again.witness, report.witness);
                }
            }
        }
    }

    #[test]
    fn float_values_track_exact_values(ug in union_game(5)) {
        let game = ug.game.map_worth(|_, w| w.to_f64().unwrap());
        let fug = UnionGame::new(game, ug.partition.clone()).unwrap();
        for v in CoalitionalValue::ALL {
            let exact = v.evaluate(&ug);
            let float = v.evaluate(&fug);
            for i in 0..ug.game.n() {
                prop_assert!((exact[i].to_f64().unwrap() - float[i]).abs() < 1e-9, "{}", v);
            }
        }
    }

    #[test]
    fn renaming_players_permutes_payoffs(ug in union_game(5), rot in 0usize..5) {
        let n = ug.game.n();
        let order: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let game = ug.game.permuted(&order);
        let blocks: Vec<Vec<String>> = ug
            .partition
            .blocks()
            .iter()
            .map(|b| b.members().map(|i| ug.game.player_name(i).to_string()).collect())
            .collect();
        let moved = UnionGame::with_named_blocks(game, &blocks).unwrap();
        for v in CoalitionalValue::ALL {
            let a = v.evaluate(&ug);
            let b = v.evaluate(&moved);
            for p in ug.game.players() {
                prop_assert_eq!(a.get(p), b.get(p), "{}", v);
            }
        }
    }
}
