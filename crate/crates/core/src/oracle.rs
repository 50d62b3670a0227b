//! Brute-force references and random instance generators.
//!
//! The exhaustive routines walk bitmaps directly and do not call into the
//! family, chain or language code they are used to check.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::language::{NestingFunction, Word};
use crate::linkage::LinkageSpec;
use crate::operator::{IsotoneScope, OperatorSpec};
use crate::subset::{Element, GroundSet, Subset};

/// Largest `n` accepted by the random operator generators.
pub const RANDOM_OPERATOR_LIMIT: usize = 8;
/// Largest `n` accepted by [`random_monotone_linkage`].
pub const RANDOM_LINKAGE_LIMIT: usize = 12;
const NON_ISOTONE_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_ground: usize,
    /// Cap on the words visited by [`brute_minimax_w`].
    pub max_words: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_ground: 20,
            max_words: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BruteMax {
    pub value: f64,
    /// Every set attaining `value`.
    pub argmax: SetFamily,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BruteMinimax {
    pub value: f64,
    /// Every length-`k` word attaining `value`, in word order.
    pub words: Vec<Word>,
}

fn check_budget(n: usize, budget: &OracleBudget, what: &'static str) -> Result<()> {
    if n > budget.max_ground {
        return Err(Error::ScopeTooLarge {
            what,
            n,
            limit: budget.max_ground,
            hint: "raise the oracle budget",
        });
    }
    Ok(())
}

/// Reachability from `∅` by single-element steps `X → X ∪ x`, `x ∈ Ψ(X)`,
/// indexed by bitmask.
fn feasible_bitmap(op: &OperatorSpec, budget: &OracleBudget) -> Result<Vec<bool>> {
    let n = op.ground().len();
    check_budget(n, budget, "brute-force feasible enumeration")?;
    let mut seen = vec![false; 1 << n];
    seen[0] = true;
    let mut stack = vec![0u64];
    while let Some(bits) = stack.pop() {
        let psi = op.evaluate(Subset::from_bits(bits)).bits();
        for i in 0..n {
            let bit = 1u64 << i;
            if psi & bit != 0 && !seen[(bits | bit) as usize] {
                seen[(bits | bit) as usize] = true;
                stack.push(bits | bit);
            }
        }
    }
    Ok(seen)
}

/// `maximal[m]` is true iff `m` is feasible and no strict superset is.
fn maximal_bitmap(feasible: &[bool], n: usize) -> Vec<bool> {
    let mut above: Vec<u32> = feasible.iter().map(|&f| f as u32).collect();
    for i in 0..n {
        let bit = 1usize << i;
        for m in 0..feasible.len() {
            if m & bit == 0 {
                above[m] += above[m | bit];
            }
        }
    }
    feasible.iter().zip(&above).map(|(&f, &a)| f && a == 1).collect()
}

/// `F(Ψ)` by exhaustive search.
pub fn enumerate_feasible(op: &OperatorSpec, budget: &OracleBudget) -> Result<SetFamily> {
    let feasible = feasible_bitmap(op, budget)?;
    let sets = (0..feasible.len() as u64)
        .filter(|&m| feasible[m as usize])
        .map(Subset::from_bits);
    SetFamily::new(op.ground().clone(), sets)
}

fn brute_max(
    op: &OperatorSpec,
    pi: &LinkageSpec,
    budget: &OracleBudget,
    skip_empty: bool,
) -> Result<Option<BruteMax>> {
    let n = op.ground().len();
    let feasible = feasible_bitmap(op, budget)?;
    let maximal = maximal_bitmap(&feasible, n);
    let mut best = f64::NEG_INFINITY;
    let mut argmax = Vec::new();
    for m in 0..feasible.len() {
        if !feasible[m] || maximal[m] || (skip_empty && m == 0) {
            continue;
        }
        let set = Subset::from_bits(m as u64);
        let psi = op.evaluate(set);
        if psi.is_empty() {
            return Err(Error::Stuck(set));
        }
        let mut value = f64::INFINITY;
        for x in psi {
            value = value.min(pi.value(x, set)?);
        }
        if value > best {
            best = value;
            argmax.clear();
        }
        if value == best {
            argmax.push(set);
        }
    }
    if argmax.is_empty() {
        return Ok(None);
    }
    Ok(Some(BruteMax {
        value: best,
        argmax: SetFamily::new(op.ground().clone(), argmax)?,
    }))
}

/// `max F_Ψ(X)` over the feasible sets that are not maximal.
///
/// Errors with [`Error::Stuck`] on a non-maximal feasible set where `Ψ` is
/// empty, and with [`Error::EmptyMinimum`] when `∅` is the only feasible set.
pub fn brute_max_f_psi(op: &OperatorSpec, pi: &LinkageSpec, budget: &OracleBudget) -> Result<BruteMax> {
    brute_max(op, pi, budget, false)?.ok_or(Error::EmptyMinimum(Subset::EMPTY))
}

/// As [`brute_max_f_psi`] restricted to non-empty sets; `None` when there is
/// no such set.
pub fn brute_max_f_psi_excluding_empty(
    op: &OperatorSpec,
    pi: &LinkageSpec,
    budget: &OracleBudget,
) -> Result<Option<BruteMax>> {
    brute_max(op, pi, budget, true)
}

/// `min W(α)` over the words of length `k` in `L(F(Ψ))`, by enumerating them.
pub fn brute_minimax_w<F: NestingFunction + ?Sized>(
    op: &OperatorSpec,
    f: &F,
    k: usize,
    budget: &OracleBudget,
) -> Result<BruteMinimax> {
    if k == 0 {
        return Err(Error::EmptyWord);
    }
    let n = op.ground().len();
    let feasible = feasible_bitmap(op, budget)?;
    let mut best = f64::INFINITY;
    let mut words: Vec<Word> = Vec::new();
    let mut visited = 0usize;
    // (letters, support bits, running max)
    let mut stack: Vec<(Vec<Element>, u64, f64)> = vec![(Vec::new(), 0, f64::NEG_INFINITY)];
    while let Some((letters, bits, running)) = stack.pop() {
        visited += 1;
        if visited > budget.max_words {
            return Err(Error::Budget(format!(
                "more than {} words visited",
                budget.max_words
            )));
        }
        if letters.len() == k {
            if running < best {
                best = running;
                words.clear();
            }
            if running == best {
                words.push(Word::new(letters));
            }
            continue;
        }
        for x in 1..=n {
            let bit = 1u64 << (x - 1);
            let next = bits | bit;
            if bits & bit != 0 || !feasible[next as usize] {
                continue;
            }
            let value = f.value(x, Subset::from_bits(next))?;
            let mut extended = letters.clone();
            extended.push(x);
            stack.push((extended, next, running.max(value)));
        }
    }
    if words.is_empty() {
        let rank = (0..feasible.len())
            .filter(|&m| feasible[m])
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0);
        return Err(Error::RankExceeded { k, rank });
    }
    words.sort();
    Ok(BruteMinimax { value: best, words })
}

fn check_random_n(n: usize, limit: usize) -> Result<GroundSet> {
    if n == 0 || n > limit {
        return Err(Error::InvalidArgument(format!(
            "random instances need 1 <= n <= {limit}, got {n}"
        )));
    }
    GroundSet::new(n)
}

/// Union-closed hull of the prefix supports of a few random words.
fn random_antimatroid(rng: &mut ChaCha8Rng, ground: &GroundSet) -> Result<SetFamily> {
    let n = ground.len();
    let mut sets = vec![Subset::EMPTY];
    let mut order: Vec<Element> = ground.elements().collect();
    for _ in 0..rng.gen_range(1..=n + 1) {
        order.shuffle(rng);
        let len = rng.gen_range(1..=n);
        let mut support = Subset::EMPTY;
        for &x in &order[..len] {
            support = support.with(x);
            sets.push(support);
        }
    }
    Ok(SetFamily::new(ground.clone(), sets)?.close_under_union())
}

/// A random isotone operator on `n ≤ 8` elements, stored as a table. Its
/// family is a random antimatroid and the operator is `X ↦ Γ(B_X)`.
pub fn random_isotone_operator(seed: u64, n: usize) -> Result<OperatorSpec> {
    let ground = check_random_n(n, RANDOM_OPERATOR_LIMIT)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = random_antimatroid(&mut rng, &ground)?;
    OperatorSpec::from_family(family)?.to_table()
}

/// A random operator on `n ≤ 8` elements with `Ψ(X) ≠ ∅` for every `X ≠ E`.
/// Usually not isotone.
pub fn random_operator(seed: u64, n: usize) -> Result<OperatorSpec> {
    let ground = check_random_n(n, RANDOM_OPERATOR_LIMIT)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = ground.full();
    let mut entries = Vec::new();
    for x in ground.all_subsets() {
        let rest: Vec<Element> = full.difference(x).iter().collect();
        if rest.is_empty() {
            continue;
        }
        let mut value: Subset = rest.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
        if value.is_empty() {
            value = value.with(*rest.choose(&mut rng).expect("non-empty"));
        }
        entries.push((x, value));
    }
    OperatorSpec::table(ground, entries)
}

/// A random operator as in [`random_operator`] that is not isotone on its
/// feasible sets (`3 ≤ n ≤ 8`; with `Ψ` non-empty below `E`, every operator
/// on two elements is isotone). Candidates are drawn from a seed sequence
/// starting at `seed` until one fails isotonicity.
pub fn random_non_isotone_operator(seed: u64, n: usize) -> Result<OperatorSpec> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "non-isotone samples need at least three elements".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..NON_ISOTONE_ATTEMPTS {
        let op = random_operator(rng.gen(), n)?;
        if op.check_isotone(IsotoneScope::FeasibleOnly)?.is_some() {
            return Ok(op);
        }
    }
    Err(Error::Budget(format!(
        "no non-isotone operator in {NON_ISOTONE_ATTEMPTS} draws"
    )))
}

/// A random accessible family on `n ≤ 8` elements: sometimes an
/// antimatroid, sometimes the prefix supports of random words (accessible,
/// rarely union-closed), sometimes the accessible part of a random family.
pub fn random_accessible_family(seed: u64, n: usize) -> Result<SetFamily> {
    let ground = check_random_n(n, RANDOM_OPERATOR_LIMIT)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match rng.gen_range(0..3) {
        0 => random_antimatroid(&mut rng, &ground),
        1 => {
            let mut sets = vec![Subset::EMPTY];
            let mut order: Vec<Element> = ground.elements().collect();
            for _ in 0..rng.gen_range(1..=n) {
                order.shuffle(&mut rng);
                let len = rng.gen_range(1..=n);
                let mut support = Subset::EMPTY;
                for &x in &order[..len] {
                    support = support.with(x);
                    sets.push(support);
                }
            }
            SetFamily::new(ground, sets)
        }
        _ => {
            let p: f64 = rng.gen_range(0.3..0.9);
            let mut keep = vec![false; 1 << n];
            keep[0] = true;
            // subsets come in order of size, so X − x is decided before X
            for x in ground.all_subsets().into_iter().skip(1) {
                let reachable = x.iter().any(|e| keep[x.without(e).bits() as usize]);
                keep[x.bits() as usize] = reachable && rng.gen_bool(p);
            }
            let sets = (0..keep.len() as u64)
                .filter(|&m| keep[m as usize])
                .map(Subset::from_bits);
            SetFamily::new(ground, sets)
        }
    }
}

/// A random monotone linkage function on `n ≤ 12` elements, stored as a table.
///
/// `π(x, X) = b_x + ℓ(x, X)` with a per-element offset `b_x` and an integer
/// level `ℓ < levels` that never increases along `X ⊂ X ∪ y`. With
/// `levels = 1` every `π(x, ·)` is constant.
pub fn random_monotone_linkage(seed: u64, n: usize, levels: usize) -> Result<LinkageSpec> {
    let ground = check_random_n(n, RANDOM_LINKAGE_LIMIT)?;
    if levels == 0 {
        return Err(Error::InvalidArgument("levels must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subsets = ground.all_subsets();
    let mut entries = Vec::new();
    for x in ground.elements() {
        let base = rng.gen_range(0..=n) as f64;
        // level cap by |X|, non-increasing
        let mut cap = Vec::with_capacity(n);
        let mut level = levels - 1;
        for _ in 0..n {
            cap.push(level);
            if level > 0 && rng.gen_bool(0.5) {
                level -= 1;
            }
        }
        let mut lvl = vec![usize::MAX; 1 << n];
        for &set in subsets.iter().filter(|s| !s.contains(x)) {
            let mut l = cap[set.len()];
            for y in set {
                l = l.min(lvl[set.without(y).bits() as usize]);
            }
            if l > 0 && rng.gen_bool(0.25) {
                l -= 1;
            }
            lvl[set.bits() as usize] = l;
            entries.push((x, set, base + l as f64));
        }
    }
    LinkageSpec::table(ground, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::bridge_f_from_pi;
    use crate::fixtures;
    use proptest::prelude::*;

    fn s(xs: &[Element]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    #[test]
    fn enumeration_matches_known_families() {
        let budget = OracleBudget::default();
        assert_eq!(enumerate_feasible(&fixtures::p3_operator(), &budget).unwrap(), fixtures::p3_family());
        let n3 = enumerate_feasible(&fixtures::n3_operator(), &budget).unwrap();
        assert_eq!(n3.len(), 7);
        assert!(!n3.contains(s(&[3])));
        let big = OperatorSpec::full(GroundSet::new(21).unwrap());
        assert!(matches!(enumerate_feasible(&big, &budget), Err(Error::ScopeTooLarge { .. })));
    }

    #[test]
    fn brute_max_on_p3() {
        let best = brute_max_f_psi(&fixtures::p3_operator(), &fixtures::w136(), &OracleBudget::default()).unwrap();
        assert_eq!(best.value, 4.0);
        assert_eq!(best.argmax.sets(), [s(&[1, 3])]);
    }

    #[test]
    fn brute_max_flags_an_early_dead_end() {
        let op = OperatorSpec::max_order(GroundSet::new(3).unwrap());
        let pi = fixtures::w136();
        assert_eq!(
            brute_max_f_psi(&op, &pi, &OracleBudget::default()),
            Err(Error::Stuck(s(&[3])))
        );
    }

    #[test]
    fn brute_minimax_on_p3() {
        let f = bridge_f_from_pi(&fixtures::w136()).unwrap();
        let op = fixtures::p3_operator();
        let budget = OracleBudget::default();
        let two = brute_minimax_w(&op, &f, 2, &budget).unwrap();
        assert_eq!((two.value, two.words.clone()), (2.0, vec![Word::new(vec![1, 3])]));
        let three = brute_minimax_w(&op, &f, 3, &budget).unwrap();
        assert_eq!(three.value, 4.0);
        assert_eq!(three.words, [Word::new(vec![1, 3, 2])]);
        assert_eq!(
            brute_minimax_w(&op, &f, 4, &budget),
            Err(Error::RankExceeded { k: 4, rank: 3 })
        );
        assert_eq!(brute_minimax_w(&op, &f, 0, &budget), Err(Error::EmptyWord));
        let tight = OracleBudget { max_ground: 20, max_words: 3 };
        assert!(matches!(brute_minimax_w(&op, &f, 3, &tight), Err(Error::Budget(_))));
    }

    #[test]
    fn generators_reject_bad_sizes() {
        assert!(random_isotone_operator(0, 0).is_err());
        assert!(random_isotone_operator(0, 9).is_err());
        assert!(random_monotone_linkage(0, 13, 2).is_err());
        assert!(random_monotone_linkage(0, 3, 0).is_err());
    }

    #[test]
    fn single_level_linkage_is_constant_per_element() {
        let pi = random_monotone_linkage(3, 4, 1).unwrap();
        for x in 1..=4 {
            let at_empty = pi.value(x, Subset::EMPTY).unwrap();
            for set in Subset::full(4).without(x).subsets() {
                assert_eq!(pi.value(x, set).unwrap(), at_empty);
            }
        }
    }

    proptest! {
        #[test]
        fn random_isotone_operators_are_isotone(seed in any::<u64>(), n in 1usize..=8) {
            let op = random_isotone_operator(seed, n).unwrap();
            prop_assert_eq!(op.check_isotone(IsotoneScope::AllSubsets).unwrap(), None);
            let family = enumerate_feasible(&op, &OracleBudget::default()).unwrap();
            prop_assert!(family.is_antimatroid());
            prop_assert_eq!(family, op.family());
        }

        #[test]
        fn random_linkages_are_monotone(seed in any::<u64>(), n in 1usize..=6, levels in 1usize..5) {
            let pi = random_monotone_linkage(seed, n, levels).unwrap();
            prop_assert_eq!(pi.check_monotone().unwrap(), None);
        }

        #[test]
        fn random_operators_never_empty_below_the_top(seed in any::<u64>(), n in 1usize..=6) {
            let op = random_operator(seed, n).unwrap();
            for x in GroundSet::new(n).unwrap().all_subsets() {
                prop_assert_eq!(op.evaluate(x).is_empty(), x == Subset::full(n));
            }
        }

        #[test]
        fn non_isotone_operators_have_witnesses(seed in any::<u64>(), n in 3usize..=6) {
            let op = random_non_isotone_operator(seed, n).unwrap();
            let w = op.check_isotone(IsotoneScope::FeasibleOnly).unwrap().unwrap();
            prop_assert!(op.is_witness(&w));
        }

        #[test]
        fn random_accessible_families_are_accessible(seed in any::<u64>(), n in 1usize..=6) {
            prop_assert!(random_accessible_family(seed, n).unwrap().is_accessible());
        }

        #[test]
        fn determinism(seed in any::<u64>(), n in 1usize..=5) {
            prop_assert_eq!(random_isotone_operator(seed, n).unwrap(), random_isotone_operator(seed, n).unwrap());
            prop_assert_eq!(random_monotone_linkage(seed, n, 3).unwrap(), random_monotone_linkage(seed, n, 3).unwrap());
        }
    }
}
