//! Values for games with a priori unions.
//!
//! Two routes are provided. [`owen_procedure`] is the generic two-step
//! construction: a base value is applied to the game among unions to build a
//! reduced game inside each union, and applied again to that reduced game.
//! The closed forms [`ed_u`] through [`esd5_u`] evaluate the egalitarian
//! coalitional values directly. The two routes meet at
//! `owen_procedure(·, ED) = ed_u` and `owen_procedure(·, ESD) = esd4_u`.

use std::fmt;
use std::str::FromStr;

use crate::allocation::Allocation;
use crate::base::{Base, BaseValue};
use crate::coalition::Coalition;
use crate::error::GameError;
use crate::game::{numbered_players, TuGame};
use crate::partition::UnionGame;
use crate::scalar::Scalar;

/// `u_{r,S}`: the game among unions in which union `r` is represented by
/// the coalition `s ⊆ P_r`.
pub fn modified_game<T: Scalar>(
    ug: &UnionGame<T>,
    r: usize,
    s: Coalition,
) -> Result<TuGame<T>, GameError> {
    let block = ug.partition.block(r)?;
    if !s.is_subset_of(block) {
        return Err(GameError::CoalitionOutsideBlock(r));
    }
    Ok(modified_game_unchecked(ug, r, s))
}

fn modified_game_unchecked<T: Scalar>(ug: &UnionGame<T>, r: usize, s: Coalition) -> TuGame<T> {
    TuGame::from_fn(numbered_players(ug.m()), |h| {
        let mut players = ug.partition.union_of(h.without(r));
        if h.contains(r) {
            players = players.union(s);
        }
        ug.game.worth(players).clone()
    })
    .expect("modified-game roster is valid")
}

/// The reduced game `(P_r, w_r)` with `w_r(S) = f_r(M, u_{r,S})`.
///
/// The roster is `P_r`'s members in roster order. `w_r(∅)` is pinned to zero
/// even when `f_r(M, u_{r,∅})` is not; none of the built-in base values reads
/// the empty worth, but a custom [`BaseValue`] could.
pub fn reduced_game<T: Scalar>(
    ug: &UnionGame<T>,
    r: usize,
    f: &(impl BaseValue<T> + ?Sized),
) -> Result<TuGame<T>, GameError> {
    let block = ug.partition.block(r)?;
    let members: Vec<usize> = block.members().collect();
    let names = members.iter().map(|&i| ug.game.player_name(i).to_string());
    TuGame::from_fn(names, |local| {
        let s = local.expand(&members);
        let payoff = f.evaluate(&modified_game_unchecked(ug, r, s));
        payoff[r].clone()
    })
}

/// Two-step value `g_i(N, v, P) = f_i(P_r, w_r)` for `i ∈ P_r`.
pub fn owen_procedure<T: Scalar>(
    ug: &UnionGame<T>,
    f: &(impl BaseValue<T> + ?Sized),
) -> Allocation<T> {
    let mut payoffs = vec![T::zero(); ug.game.n()];
    for (r, block) in ug.partition.blocks().iter().enumerate() {
        let reduced = reduced_game(ug, r, f).expect("block index in range");
        let inner = f.evaluate(&reduced);
        assert_eq!(
            inner.len(),
            block.len(),
            "base value returned a wrong-sized allocation"
        );
        for (slot, i) in block.members().enumerate() {
            payoffs[i] = inner[slot].clone();
        }
    }
    Allocation::new(ug.game.players().to_vec(), payoffs)
}

/// Owen value: the two-step procedure with the Shapley value.
pub fn owen<T: Scalar>(ug: &UnionGame<T>) -> Allocation<T> {
    owen_procedure(ug, &Base::Shapley)
}

/// Banzhaf-Owen value: the two-step procedure with the Banzhaf value.
pub fn banzhaf_owen<T: Scalar>(ug: &UnionGame<T>) -> Allocation<T> {
    owen_procedure(ug, &Base::Banzhaf)
}

/// Per-player quantities that every closed form shares.
struct Layout<T> {
    owner: Vec<usize>,
    sizes: Vec<T>,
    m: T,
    /// `v(N) − Σ_l v(P_l)`
    quotient_surplus: T,
}

impl<T: Scalar> Layout<T> {
    fn of(ug: &UnionGame<T>) -> Self {
        let block_total: T = ug.block_worths().into_iter().sum();
        Layout {
            owner: ug.partition.owners(),
            sizes: ug.block_sizes().into_iter().map(T::from_count).collect(),
            m: T::from_count(ug.m()),
            quotient_surplus: ug.game.grand_worth().clone() - block_total,
        }
    }

    /// `m · p_k` for player `i`'s block.
    fn m_p(&self, i: usize) -> T {
        self.m.clone() * self.sizes[self.owner[i]].clone()
    }
}

fn per_player<T: Scalar>(ug: &UnionGame<T>, f: impl FnMut(usize) -> T) -> Allocation<T> {
    Allocation::new(
        ug.game.players().to_vec(),
        (0..ug.game.n()).map(f).collect(),
    )
}

/// `ED^U_i = v(N) / (m p_k)`.
pub fn ed_u<T: Scalar>(ug: &UnionGame<T>) -> Allocation<T> {
    let layout = Layout::of(ug);
    per_player(ug, |i| ug.game.grand_worth().clone() / layout.m_p(i))
}

/// `ESD1^U_i = v(P_k)/p_k + (v(N) − Σ_l v(P_l)) / (m p_k)`.
pub fn esd1_u<T: Scalar>(ug: &UnionGame<T>) -> Allocation<T> {
    let layout = Layout::of(ug);
    let worths = ug.block_worths();
    per_player(ug, |i| {
        let k = layout.owner[i];
        worths[k].clone() / layout.sizes[k].clone()
            + layout.quotient_surplus.clone() / layout.m_p(i)
    })
}

/// `ESD2^U_i = v(i) + (v(P_k) − Σ_{j∈P_k} v(j))/p_k + (v(N) − Σ_l v(P_l))/(m p_k)`.
pub fn esd2_u<T: Scalar>(ug: &UnionGame<T>) -> Allocation<T> {
    let layout = Layout::of(ug);
    let inner_surplus: Vec<T> = ug
        .partition
        .blocks()
        .iter()
        .map(|&b| ug.game.worth(b).clone() - ug.game.singleton_sum(b))
        .collect();
    per_player(ug, |i| {
        let k = layout.owner[i];
        ug.game.singleton_worth(i).clone()
            + inner_surplus[k].clone() / layout.sizes[k].clone()
            + layout.quotient_surplus.clone() / layout.m_p(i)
    })
}

/// `ESD3^U_i = v(i) + (v(N) − Σ_{j∈N} v(j)) / (m p_k)`, i.e. `v(i)` plus
/// `ED^U` of the zero-normalized game.
pub fn esd3_u<T: Scalar>(ug: &UnionGame<T>) -> Allocation<T> {
    let layout = Layout::of(ug);
    let surplus = ug.game.grand_worth().clone() - ug.game.singleton_sum(ug.game.grand_coalition());
    per_player(ug, |i| {
        ug.game.singleton_worth(i).clone() + surplus.clone() / layout.m_p(i)
    })
}

/// `ESD4^U − ESD2^U`, per player:
/// `(1/m)(mean_{t∈P_k} v(t) − v(i)) + (1/m)(v(R ∪ i) − mean_{t∈P_k} v(R ∪ t))`
/// with `R = N ∖ P_k`. Both terms vanish on singleton blocks.
pub fn esd4_correction<T: Scalar>(ug: &UnionGame<T>) -> Vec<T> {
    let layout = Layout::of(ug);
    let g = &ug.game;
    let mut out = vec![T::zero(); g.n()];
    for &block in ug.partition.blocks() {
        let rest = g.grand_coalition().difference(block);
        let p = T::from_count(block.len());
        let mean_single = g.singleton_sum(block) / p.clone();
        let mean_joined = block
            .members()
            .map(|t| g.worth(rest.with(t)).clone())
            .sum::<T>()
            / p;
        for i in block.members() {
            let own = mean_single.clone() - g.singleton_worth(i).clone();
            let joined = g.worth(rest.with(i)).clone() - mean_joined.clone();
            out[i] = (own + joined) / layout.m.clone();
        }
    }
    out
}

/// The equal surplus division value obtained in two steps, in closed form:
/// `ESD2^U` plus [`esd4_correction`].
pub fn esd4_u<T: Scalar>(ug: &UnionGame<T>) -> Allocation<T> {
    let base = esd2_u(ug);
    let correction = esd4_correction(ug);
    per_player(ug, |i| base[i].clone() + correction[i].clone())
}

/// Which branch of the ESD5 weight definition applies to `(p, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightCase {
    /// `p = 2`, `t = 1`
    Pair,
    /// `p > 2`, `t = 1`
    Single,
    /// `p > 2`, `t = p − 1`
    AllButOne,
    /// `p > 3`, `t = p − z` with `z ∈ {2, …, p − 2}`
    Interior { z: usize },
}

/// Every branch whose guard accepts `(p, t)`. For `p ≥ 2` and
/// `1 ≤ t ≤ p − 1` this has exactly one element.
pub fn weight_cases(p: usize, t: usize) -> Vec<WeightCase> {
    let mut cases = Vec::new();
    if p == 2 && t == 1 {
        cases.push(WeightCase::Pair);
    }
    if p > 2 && t == 1 {
        cases.push(WeightCase::Single);
    }
    if p > 2 && t + 1 == p {
        cases.push(WeightCase::AllButOne);
    }
    if p > 3 && t < p {
        let z = p - t;
        if (2..=p - 2).contains(&z) {
            cases.push(WeightCase::Interior { z });
        }
    }
    cases
}

/// The weight `P^{m,p,t}` attached to a coalition of size `t` inside a union
/// of size `p` when there are `m` unions.
#[derive(Debug, Clone, PartialEq)]
pub struct Esd5Weight<T> {
    pub m: usize,
    pub p: usize,
    pub t: usize,
    pub case: WeightCase,
    pub value: T,
}

impl<T: Scalar> Esd5Weight<T> {
    pub fn new(m: usize, p: usize, t: usize) -> Result<Self, GameError> {
        Self::build(m, p, t, InteriorRule::Product)
    }

    fn build(m: usize, p: usize, t: usize, rule: InteriorRule) -> Result<Self, GameError> {
        let undefined = GameError::WeightUndefined { m, p, t };
        let cases = weight_cases(p, t);
        if m == 0 || cases.len() != 1 {
            return Err(undefined);
        }
        let case = cases[0];
        let c = T::from_count;
        let value = match case {
            WeightCase::Pair => T::ratio(1, 2),
            WeightCase::Single => {
                let harmonic: T = (1..=p - 2).map(|j| T::one() / c(m + j)).sum();
                (T::one() + harmonic) / c(p)
            }
            WeightCase::AllButOne => c(m) / (c(m + 1) * c(p)),
            WeightCase::Interior { z } => {
                let lead = c(m + z - 1) / (c(p - z + 1) * c(m + z));
                let factors = (0..=z - 2).map(|j| c(p - j - t) / c(p - j));
                let tail = match rule {
                    InteriorRule::Product => factors.fold(T::one(), |acc, x| acc * x),
                    InteriorRule::Sum => factors.sum(),
                };
                lead * tail
            }
        };
        Ok(Esd5Weight {
            m,
            p,
            t,
            case,
            value,
        })
    }
}

#[derive(Clone, Copy)]
enum InteriorRule {
    Product,
    Sum,
}

/// `P^{m,p,t}`.
///
/// The interior branch (`t = p − z`, `2 ≤ z ≤ p − 2`) is
/// `(m+z−1)/((p−z+1)(m+z)) · Π_{j=0}^{z−2} (p−j−t)/(p−j)`, the unique choice
/// satisfying `P^{m,p,t} = ((p−t)/p) · P^{m+1,p−1,t}`, which is what makes
/// [`esd5_u`] satisfy balanced contributions within unions.
pub fn esd5_weight<T: Scalar>(m: usize, p: usize, t: usize) -> Result<T, GameError> {
    Esd5Weight::new(m, p, t).map(|w| w.value)
}

/// Variant of [`esd5_weight`] whose interior branch adds the factors
/// `(p−j−t)/(p−j)` instead of multiplying them. It agrees with
/// [`esd5_weight`] whenever `z = 2` (unions of size four or less) and breaks
/// balanced contributions within unions for unions of size five or more.
pub fn esd5_weight_summed<T: Scalar>(m: usize, p: usize, t: usize) -> Result<T, GameError> {
    Esd5Weight::build(m, p, t, InteriorRule::Sum).map(|w| w.value)
}

/// `ESD5^U − ESD1^U`, per player:
/// `Σ_{T⊂P_k, i∈T} P^{m,p_k,t}/t · v(T) − Σ_{T⊂P_k, i∉T} P^{m,p_k,t}/(p_k−t) · v(T)`
/// over nonempty strict subsets `T`.
pub fn esd5_correction<T: Scalar>(ug: &UnionGame<T>) -> Vec<T> {
    esd5_correction_with(ug, esd5_weight::<T>)
}

/// [`esd5_correction`] with a caller-supplied weight function.
pub fn esd5_correction_with<T: Scalar>(
    ug: &UnionGame<T>,
    weight: impl Fn(usize, usize, usize) -> Result<T, GameError>,
) -> Vec<T> {
    let g = &ug.game;
    let m = ug.m();
    let mut out = vec![T::zero(); g.n()];
    for &block in ug.partition.blocks() {
        let p = block.len();
        if p < 2 {
            continue;
        }
        let weights: Vec<T> = (1..p)
            .map(|t| weight(m, p, t).expect("t in 1..p always has a weight"))
            .collect();
        for subset in block.subsets() {
            let t = subset.len();
            if t == 0 || t == p {
                continue;
            }
            let w = &weights[t - 1];
            let inside = w.clone() * g.worth(subset).clone() / T::from_count(t);
            let outside = w.clone() * g.worth(subset).clone() / T::from_count(p - t);
            for i in block.members() {
                if subset.contains(i) {
                    out[i] += &inside;
                } else {
                    out[i] -= &outside;
                }
            }
        }
    }
    out
}

/// The equal surplus division value satisfying the quotient game property
/// and balanced contributions within unions: `ESD1^U` plus
/// [`esd5_correction`].
pub fn esd5_u<T: Scalar>(ug: &UnionGame<T>) -> Allocation<T> {
    let base = esd1_u(ug);
    let correction = esd5_correction(ug);
    per_player(ug, |i| base[i].clone() + correction[i].clone())
}

/// The coalitional values this crate computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoalitionalValue {
    EdU,
    Esd1U,
    Esd2U,
    Esd3U,
    Esd4U,
    Esd5U,
    Owen,
    BanzhafOwen,
}

impl CoalitionalValue {
    pub const ALL: [CoalitionalValue; 8] = [
        CoalitionalValue::EdU,
        CoalitionalValue::Esd1U,
        CoalitionalValue::Esd2U,
        CoalitionalValue::Esd3U,
        CoalitionalValue::Esd4U,
        CoalitionalValue::Esd5U,
        CoalitionalValue::Owen,
        CoalitionalValue::BanzhafOwen,
    ];

    /// Identifier used on the command line.
    pub fn id(self) -> &'static str {
        match self {
            CoalitionalValue::EdU => "edu",
            CoalitionalValue::Esd1U => "esd1u",
            CoalitionalValue::Esd2U => "esd2u",
            CoalitionalValue::Esd3U => "esd3u",
            CoalitionalValue::Esd4U => "esd4u",
            CoalitionalValue::Esd5U => "esd5u",
            CoalitionalValue::Owen => "owen",
            CoalitionalValue::BanzhafOwen => "banzhaf-owen",
        }
    }

    /// Conventional notation.
    pub fn label(self) -> &'static str {
        match self {
            CoalitionalValue::EdU => "ED^U",
            CoalitionalValue::Esd1U => "ESD1^U",
            CoalitionalValue::Esd2U => "ESD2^U",
            CoalitionalValue::Esd3U => "ESD3^U",
            CoalitionalValue::Esd4U => "ESD4^U",
            CoalitionalValue::Esd5U => "ESD5^U",
            CoalitionalValue::Owen => "Owen",
            CoalitionalValue::BanzhafOwen => "Banzhaf-Owen",
        }
    }

    /// The base value this coalitional value reduces to at `Pⁿ`.
    pub fn trivial_base(self) -> Base {
        match self {
            CoalitionalValue::EdU => Base::Ed,
            CoalitionalValue::Owen => Base::Shapley,
            CoalitionalValue::BanzhafOwen => Base::Banzhaf,
            _ => Base::Esd,
        }
    }

    pub fn evaluate<T: Scalar>(self, ug: &UnionGame<T>) -> Allocation<T> {
        match self {
            CoalitionalValue::EdU => ed_u(ug),
            CoalitionalValue::Esd1U => esd1_u(ug),
            CoalitionalValue::Esd2U => esd2_u(ug),
            CoalitionalValue::Esd3U => esd3_u(ug),
            CoalitionalValue::Esd4U => esd4_u(ug),
            CoalitionalValue::Esd5U => esd5_u(ug),
            CoalitionalValue::Owen => owen(ug),
            CoalitionalValue::BanzhafOwen => banzhaf_owen(ug),
        }
    }
}

impl fmt::Display for CoalitionalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CoalitionalValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CoalitionalValue::ALL
            .into_iter()
            .find(|v| v.id() == s)
            .ok_or_else(|| format!("unknown coalitional value {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{ed, esd};
    use crate::partition::Partition;
    use crate::test_support::{g1, q, qr};
    use crate::Rational;

    fn payoffs(a: Allocation<Rational>) -> Vec<Rational> {
        a.into_payoffs()
    }

    #[test]
    fn modified_game_g1() {
        let ug = g1();
        let u = modified_game(&ug, 0, Coalition::singleton(0)).unwrap();
        assert_eq!(u.table(), &[q(0), q(0), q(2), q(3)]);

        let full = modified_game(&ug, 0, ug.partition.blocks()[0]).unwrap();
        assert_eq!(full, ug.quotient_game());

        let empty = modified_game(&ug, 0, Coalition::EMPTY).unwrap();
        assert_eq!(empty.table(), &[q(0), q(0), q(2), q(2)]);

        assert_eq!(
            modified_game(&ug, 0, Coalition::singleton(2)).unwrap_err(),
            GameError::CoalitionOutsideBlock(0)
        );
    }

    #[test]
    fn reduced_game_g1_esd() {
        let w = reduced_game(&g1(), 0, &Base::Esd).unwrap();
        assert_eq!(w.players(), ["1", "2"]);
        assert_eq!(w.table(), &[q(0), qr(1, 2), qr(5, 2), q(7)]);
    }

    #[test]
    fn reduced_game_singleton_block_is_quotient_payoff() {
        let ug = g1();
        let quotient = UnionGame::trivial(ug.quotient_game());
        for base in [Base::Ed, Base::Esd, Base::Shapley] {
            let w = reduced_game(&ug, 1, &base).unwrap();
            let expected = base.evaluate(&quotient.game)[1].clone();
            assert_eq!(w.table(), &[q(0), expected]);
        }
    }

    #[test]
    fn reduced_game_with_ed_is_scaled_worth() {
        let ug = g1();
        let w = reduced_game(&ug, 0, &Base::Ed).unwrap();
        let rest = Coalition::singleton(2);
        for local in 1..4u32 {
            let s = Coalition::from_bits(local).expand(&[0, 1]);
            assert_eq!(
                w.table()[local as usize],
                ug.game.worth(rest.union(s)).clone() / q(2)
            );
        }
    }

    #[test]
    fn two_step_examples_g1() {
        let ug = g1();
        assert_eq!(payoffs(owen(&ug)), vec![qr(5, 2), qr(9, 2), q(5)]);
        assert_eq!(
            payoffs(owen_procedure(&ug, &Base::Ed)),
            vec![q(3), q(3), q(6)]
        );
        assert_eq!(
            payoffs(owen_procedure(&ug, &Base::Esd)),
            vec![qr(5, 2), qr(9, 2), q(5)]
        );
        assert_eq!(banzhaf_owen(&ug), owen(&ug));
    }

    #[test]
    fn owen_procedure_accepts_closures() {
        let ug = g1();
        let f = |g: &TuGame<Rational>| ed(g);
        assert_eq!(owen_procedure(&ug, &f), ed_u(&ug));
    }

    #[test]
    fn closed_forms_g1() {
        let ug = g1();
        assert_eq!(payoffs(ed_u(&ug)), vec![q(3), q(3), q(6)]);
        assert_eq!(payoffs(esd1_u(&ug)), vec![qr(7, 2), qr(7, 2), q(5)]);
        assert_eq!(payoffs(esd2_u(&ug)), vec![qr(5, 2), qr(9, 2), q(5)]);
        assert_eq!(payoffs(esd3_u(&ug)), vec![q(2), q(4), q(6)]);
        assert_eq!(payoffs(esd4_u(&ug)), vec![qr(5, 2), qr(9, 2), q(5)]);
        assert_eq!(payoffs(esd5_u(&ug)), vec![qr(5, 2), qr(9, 2), q(5)]);
    }

    #[test]
    fn closed_forms_at_extreme_partitions() {
        let g = g1().game;
        let trivial = UnionGame::trivial(g.clone());
        let whole = UnionGame::new(g.clone(), Partition::grand(3)).unwrap();
        assert_eq!(ed_u(&trivial), ed(&g));
        assert_eq!(ed_u(&whole), ed(&g));
        for value in [esd1_u, esd2_u, esd3_u, esd4_u, esd5_u] {
            assert_eq!(value(&trivial), esd(&g));
        }
    }

    #[test]
    fn closed_form_degenerate_cases() {
        // v(P_l) = 0 for every block: ESD1^U collapses to ED^U
        let g = TuGame::from_table(
            ["1", "2", "3"],
            vec![q(0), q(1), q(-1), q(0), q(0), q(5), q(6), q(9)],
        )
        .unwrap();
        let ug = UnionGame::new(
            g,
            Partition::new(
                vec![Coalition::from_members([0, 1]), Coalition::singleton(2)],
                3,
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(esd1_u(&ug), ed_u(&ug));

        // zero-normalized: ESD2^U = ESD1^U
        let z = UnionGame::new(g1().game.zero_normalized(), g1().partition).unwrap();
        assert_eq!(esd2_u(&z), esd1_u(&z));

        // additive: ESD3^U pays v(i)
        let w = [2, -3, 5];
        let additive = UnionGame::new(
            TuGame::from_fn(["1", "2", "3"], |c| c.members().map(|i| q(w[i])).sum()).unwrap(),
            g1().partition,
        )
        .unwrap();
        assert_eq!(payoffs(esd3_u(&additive)), vec![q(2), q(-3), q(5)]);
    }

    #[test]
    fn esd5_without_intra_block_worth_is_esd1() {
        // blocks {1,2,3} and {4}; every strict nonempty subset of {1,2,3} worth 0
        let block = Coalition::from_members([0, 1, 2]);
        let g = TuGame::from_fn(["1", "2", "3", "4"], |c| {
            if c.is_subset_of(block) && c != block {
                q(0)
            } else {
                q(c.bits() as i64)
            }
        })
        .unwrap();
        let ug = UnionGame::new(
            g,
            Partition::new(vec![block, Coalition::singleton(3)], 4).unwrap(),
        )
        .unwrap();
        assert_eq!(esd5_u(&ug), esd1_u(&ug));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(esd5_weight::<Rational>(2, 2, 1).unwrap(), qr(1, 2));
        assert_eq!(esd5_weight::<Rational>(2, 3, 1).unwrap(), qr(4, 9));
        assert_eq!(esd5_weight::<Rational>(2, 3, 2).unwrap(), qr(2, 9));
        assert_eq!(esd5_weight::<Rational>(3, 4, 2).unwrap(), qr(2, 15));
    }

    #[test]
    fn weight_out_of_range_is_undefined() {
        for (m, p, t) in [(1, 1, 1), (1, 3, 0), (1, 3, 3), (0, 2, 1), (2, 5, 7)] {
            assert_eq!(
                esd5_weight::<Rational>(m, p, t).unwrap_err(),
                GameError::WeightUndefined { m, p, t }
            );
        }
    }

    #[test]
    fn summed_and_product_weights_agree_for_small_unions() {
        for m in 1..6 {
            for p in 2..=4 {
                for t in 1..p {
                    assert_eq!(
                        esd5_weight::<Rational>(m, p, t),
                        esd5_weight_summed::<Rational>(m, p, t)
                    );
                }
            }
        }
        // z = 3 first appears at p = 5, t = 2
        assert_ne!(
            esd5_weight::<Rational>(1, 5, 2),
            esd5_weight_summed::<Rational>(1, 5, 2)
        );
    }

    #[test]
    fn weight_recursion() {
        // P^{m,p,t} = ((p−t)/p) P^{m+1,p−1,t} for 2 ≤ t ≤ p−2
        for m in 1..7 {
            for p in 4..12 {
                for t in 2..=p - 2 {
                    let lhs = esd5_weight::<Rational>(m, p, t).unwrap();
                    let rhs = qr((p - t) as i64, p as i64)
                        * esd5_weight::<Rational>(m + 1, p - 1, t).unwrap();
                    assert_eq!(lhs, rhs, "m={m} p={p} t={t}");
                }
            }
        }
    }

    #[test]
    fn value_ids_round_trip() {
        for v in CoalitionalValue::ALL {
            assert_eq!(v.id().parse::<CoalitionalValue>().unwrap(), v);
        }
        assert!("esd6u".parse::<CoalitionalValue>().is_err());
    }
}
