//! Library values against brute-force evaluations written from the
//! definitions, on seeded random games.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use unionvals::coalitional::{
    banzhaf_owen, ed_u, esd1_u, esd2_u, esd3_u, esd4_u, owen, owen_procedure,
};
use unionvals::search::random_union_game;
use unionvals::{
    shapley, Base, Coalition, CoalitionalValue, Rational, Scalar, SearchSpace, UnionGame,
    WorthRange,
};

type Set = BTreeSet<usize>;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// A game on an explicit player list, worths given by a set function.
struct Naive<'a> {
    players: Vec<usize>,
    v: Box<dyn Fn(&Set) -> Rational + 'a>,
}

impl Naive<'_> {
    fn worth(&self, s: &Set) -> Rational {
        if s.is_empty() {
            Rational::zero()
        } else {
            (self.v)(s)
        }
    }

    fn grand(&self) -> Set {
        self.players.iter().copied().collect()
    }

    fn subsets_without(&self, i: usize) -> Vec<Set> {
        let others: Vec<usize> = self.players.iter().copied().filter(|&j| j != i).collect();
        (0..1u32 << others.len())
            .map(|mask| {
                others
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &j)| j)
                    .collect()
            })
            .collect()
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (k, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Payoff of each listed player, in the order of `game.players`.
fn naive_base(base: Base, game: &Naive) -> Vec<Rational> {
    let n = Rational::from_count(game.players.len());
    let grand = game.worth(&game.grand());
    let single = |i: usize| game.worth(&Set::from([i]));
    match base {
        Base::Ed => game
            .players
            .iter()
            .map(|_| grand.clone() / n.clone())
            .collect(),
        Base::Esd => {
            let standalone: Rational = game.players.iter().map(|&i| single(i)).sum();
            let share = (grand - standalone) / n;
            game.players
                .iter()
                .map(|&i| single(i) + share.clone())
                .collect()
        }
        Base::Shapley => {
            let orders = permutations(&game.players);
            let count = Rational::from_count(orders.len());
            game.players
                .iter()
                .map(|&i| {
                    let mut total = Rational::zero();
                    for order in &orders {
                        let before: Set = order.iter().copied().take_while(|&j| j != i).collect();
                        let mut with = before.clone();
                        with.insert(i);
                        total += &(game.worth(&with) - game.worth(&before));
                    }
                    total / count.clone()
                })
                .collect()
        }
        Base::Banzhaf => game
            .players
            .iter()
            .map(|&i| {
                let subsets = game.subsets_without(i);
                let count = Rational::from_count(subsets.len());
                let mut total = Rational::zero();
                for s in subsets {
                    let mut with = s.clone();
                    with.insert(i);
                    total += &(game.worth(&with) - game.worth(&s));
                }
                total / count
            })
            .collect(),
    }
}

fn worth_of(ug: &UnionGame<Rational>, s: &Set) -> Rational {
    ug.game
        .worth(Coalition::from_members(s.iter().copied()))
        .clone()
}

fn blocks_of(ug: &UnionGame<Rational>) -> Vec<Vec<usize>> {
    ug.partition
        .blocks()
        .iter()
        .map(|b| b.members().collect())
        .collect()
}

/// The two-step procedure from its definition: the modified game among
/// unions, the reduced game inside union `r`, then the base value again.
fn naive_two_step(ug: &UnionGame<Rational>, base: Base) -> Vec<Rational> {
    let blocks = blocks_of(ug);
    let m = blocks.len();
    let mut payoff = vec![Rational::zero(); ug.game.n()];
    for (r, block) in blocks.iter().enumerate() {
        let blocks = &blocks;
        let reduced = Naive {
            players: block.clone(),
            v: Box::new(move |s: &Set| {
                let modified = Naive {
                    players: (0..m).collect(),
                    v: Box::new(|h: &Set| {
                        let mut members: Set = Set::new();
                        for &k in h {
                            if k == r {
                                members.extend(s.iter().copied());
                            } else {
                                members.extend(blocks[k].iter().copied());
                            }
                        }
                        worth_of(ug, &members)
                    }),
                };
                naive_base(base, &modified)[r].clone()
            }),
        };
        for (slot, &i) in block.iter().enumerate() {
            payoff[i] = naive_base(base, &reduced)[slot].clone();
        }
    }
    payoff
}

/// Owen value as the average marginal contribution over orders in which
/// every union's members arrive consecutively.
fn naive_owen(ug: &UnionGame<Rational>) -> Vec<Rational> {
    let blocks = blocks_of(ug);
    let mut orders: Vec<Vec<usize>> = Vec::new();
    for block_order in permutations(&(0..blocks.len()).collect::<Vec<_>>()) {
        let mut partial: Vec<Vec<usize>> = vec![vec![]];
        for &k in &block_order {
            let inner = permutations(&blocks[k]);
            partial = partial
                .iter()
                .flat_map(|prefix| {
                    inner.iter().map(move |tail| {
                        let mut o = prefix.clone();
                        o.extend(tail);
                        o
                    })
                })
                .collect();
        }
        orders.extend(partial);
    }
    let count = Rational::from_count(orders.len());
    (0..ug.game.n())
        .map(|i| {
            let mut total = Rational::zero();
            for order in &orders {
                let before: Set = order.iter().copied().take_while(|&j| j != i).collect();
                let mut with = before.clone();
                with.insert(i);
                total += &(worth_of(ug, &with) - worth_of(ug, &before));
            }
            total / count.clone()
        })
        .collect()
}

/// Closed forms written out with explicit sums over the partition.
fn naive_closed(ug: &UnionGame<Rational>, value: CoalitionalValue) -> Vec<Rational> {
    let blocks = blocks_of(ug);
    let m = Rational::from_count(blocks.len());
    let all: Set = (0..ug.game.n()).collect();
    let vn = worth_of(ug, &all);
    let single = |i: usize| worth_of(ug, &Set::from([i]));
    let block_worth = |b: &Vec<usize>| worth_of(ug, &b.iter().copied().collect());
    let sum_blocks: Rational = blocks.iter().map(block_worth).sum();
    let sum_singles: Rational = (0..ug.game.n()).map(single).sum();
    let mut out = vec![Rational::zero(); ug.game.n()];
    for b in &blocks {
        let p = Rational::from_count(b.len());
        let inside: Rational = b.iter().map(|&j| single(j)).sum();
        for &i in b {
            out[i] = match value {
                CoalitionalValue::EdU => vn.clone() / (m.clone() * p.clone()),
                CoalitionalValue::Esd1U => {
                    block_worth(b) / p.clone()
                        + (vn.clone() - sum_blocks.clone()) / (m.clone() * p.clone())
                }
                CoalitionalValue::Esd2U => {
                    single(i)
                        + (block_worth(b) - inside.clone()) / p.clone()
                        + (vn.clone() - sum_blocks.clone()) / (m.clone() * p.clone())
                }
                CoalitionalValue::Esd3U => {
                    single(i) + (vn.clone() - sum_singles.clone()) / (m.clone() * p.clone())
                }
                _ => unreachable!("only the explicit closed forms"),
            };
        }
    }
    out
}

fn corpus(count: usize, seed: u64) -> Vec<UnionGame<Rational>> {
    let mut games = Vec::new();
    let mut t = 0;
    'outer: loop {
        for n in 2..=5usize {
            for m in 1..=n {
                if games.len() == count {
                    break 'outer;
                }
                let space = SearchSpace::new(n, m, WorthRange::default()).unwrap();
                games.push(random_union_game(&space, seed, t));
                t += 1;
            }
        }
    }
    games
}

#[test]
fn shapley_matches_permutation_average() {
    for ug in corpus(80, 11) {
        let naive = Naive {
            players: (0..ug.game.n()).collect(),
            v: Box::new(|s: &Set| worth_of(&ug, s)),
        };
        assert_eq!(
            shapley(&ug.game).into_payoffs(),
            naive_base(Base::Shapley, &naive),
            "{ug:?}"
        );
    }
}

#[test]
fn owen_matches_union_consistent_orders() {
    for ug in corpus(80, 12) {
        assert_eq!(owen(&ug).into_payoffs(), naive_owen(&ug), "{ug:?}");
    }
}

#[test]
fn procedure_matches_definition_for_every_base() {
    for ug in corpus(60, 13) {
        for base in Base::ALL {
            assert_eq!(
                owen_procedure(&ug, &base).into_payoffs(),
                naive_two_step(&ug, base),
                "{base} on {ug:?}"
            );
        }
    }
}

#[test]
fn closed_forms_match_definitions() {
    for ug in corpus(100, 14) {
        assert_eq!(
            ed_u(&ug).into_payoffs(),
            naive_closed(&ug, CoalitionalValue::EdU)
        );
        assert_eq!(
            esd1_u(&ug).into_payoffs(),
            naive_closed(&ug, CoalitionalValue::Esd1U)
        );
        assert_eq!(
            esd2_u(&ug).into_payoffs(),
            naive_closed(&ug, CoalitionalValue::Esd2U)
        );
        assert_eq!(
            esd3_u(&ug).into_payoffs(),
            naive_closed(&ug, CoalitionalValue::Esd3U)
        );
    }
}

#[test]
fn two_step_characterizations() {
    for ug in corpus(100, 15) {
        assert_eq!(ed_u(&ug).into_payoffs(), naive_two_step(&ug, Base::Ed));
        assert_eq!(esd4_u(&ug).into_payoffs(), naive_two_step(&ug, Base::Esd));
        assert_eq!(
            banzhaf_owen(&ug).into_payoffs(),
            naive_two_step(&ug, Base::Banzhaf)
        );
    }
}

#[test]
fn unit_game_shares() {
    // v(S) = 1 only for the grand coalition.
    let game = unionvals::TuGame::from_fn(["a", "b", "c", "d"], |c| {
        if c.len() == 4 {
            Rational::one()
        } else {
            q(0)
        }
    })
    .unwrap();
    let ug = UnionGame::with_named_blocks(game, &[vec!["a", "b", "c"], vec!["d"]]).unwrap();
    let third = Rational::ratio(1, 6);
    assert_eq!(
        ed_u(&ug).into_payoffs(),
        vec![third.clone(), third.clone(), third, Rational::ratio(1, 2)]
    );
    assert_eq!(owen(&ug).into_payoffs(), naive_owen(&ug));
}
