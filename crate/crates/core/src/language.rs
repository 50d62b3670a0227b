//! The ordered view: simple words and languages, antimatroid languages, the
//! conversions `F(L)` / `L(F)`, the maximum nesting function `W`, and the
//! greedy solver for the minimax nesting problem.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::operator::{OperatorSpec, TABLE_LIMIT};
use crate::subset::{Element, GroundSet, Subset};

/// Largest ground set whose language is materialized word by word.
pub const LANGUAGE_LIMIT: usize = 10;

/// A word over the ground set. Words order by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Element>);

impl Word {
    pub fn new(letters: Vec<Element>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Element] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `α̃`, the set of letters.
    pub fn support(&self) -> Subset {
        self.0.iter().copied().collect()
    }

    /// No repeated letters.
    pub fn is_simple(&self) -> bool {
        let mut seen = Subset::EMPTY;
        self.0.iter().all(|&x| {
            let fresh = !seen.contains(x);
            seen = seen.with(x);
            fresh
        })
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// `αx`.
    pub fn extended(&self, x: Element) -> Word {
        let mut letters = self.0.clone();
        letters.push(x);
        Word(letters)
    }
}

impl From<Vec<Element>> for Word {
    fn from(letters: Vec<Element>) -> Self {
        Word(letters)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Space-separated identifiers; the empty word renders as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A finite simple language containing the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleLanguage {
    ground: GroundSet,
    words: BTreeSet<Word>,
    prefix_closed: bool,
}

impl SimpleLanguage {
    pub fn new<I: IntoIterator<Item = Word>>(ground: GroundSet, words: I) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        for w in &words {
            if !w.is_simple() || w.letters().iter().any(|&x| ground.check_element(x).is_err()) {
                return Err(Error::BadWord(w.to_string()));
            }
        }
        if !words.contains(&Word::empty()) {
            return Err(Error::MissingEmptyWord);
        }
        let mut language = SimpleLanguage {
            ground,
            words,
            prefix_closed: false,
        };
        language.prefix_closed = language.prefix_violation().is_none();
        Ok(language)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_prefix_closed(&self) -> bool {
        self.prefix_closed
    }

    /// Length of the longest word.
    pub fn rank(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// First word `αx` whose prefix `α` is missing.
    pub fn prefix_violation(&self) -> Option<Word> {
        self.words
            .iter()
            .find(|w| !w.is_empty() && !self.words.contains(&w.prefix(w.len() - 1)))
            .cloned()
    }

    /// First pair `(α, β)` with `α̃ ⊄ β̃` and no `x ∈ α̃` such that `βx ∈ L`.
    pub fn exchange_violation(&self) -> Option<(Word, Word)> {
        for alpha in &self.words {
            let a = alpha.support();
            for beta in &self.words {
                let b = beta.support();
                if a.is_subset(b) {
                    continue;
                }
                if !a.difference(b).iter().any(|x| self.words.contains(&beta.extended(x))) {
                    return Some((alpha.clone(), beta.clone()));
                }
            }
        }
        None
    }

    /// Prefix-closed with the exchange property on supports.
    pub fn is_antimatroid_language(&self) -> bool {
        self.prefix_closed && self.exchange_violation().is_none()
    }

    /// `F(L) = {α̃ : α ∈ L}` of an antimatroid language.
    pub fn family(&self) -> Result<SetFamily> {
        if let Some(w) = self.prefix_violation() {
            return Err(Error::NotAntimatroidLanguage(format!("prefix of {w} is missing")));
        }
        if let Some((a, b)) = self.exchange_violation() {
            return Err(Error::NotAntimatroidLanguage(format!(
                "no letter of {a} extends {b}"
            )));
        }
        SetFamily::new(self.ground.clone(), self.words.iter().map(Word::support))
    }

    /// `L(F)`: every word whose prefix supports are all feasible
    /// (materialized for `n ≤ 10`).
    pub fn from_family(family: &SetFamily) -> Result<Self> {
        let n = family.ground().len();
        if n > LANGUAGE_LIMIT {
            return Err(Error::ScopeTooLarge {
                what: "language materialization",
                n,
                limit: LANGUAGE_LIMIT,
                hint: "test membership with family_accepts_word",
            });
        }
        if !family.is_antimatroid() {
            return Err(Error::NotAntimatroid(
                "L(F) is only formed for antimatroids".into(),
            ));
        }
        let mut words = BTreeSet::new();
        let mut stack = vec![Word::empty()];
        while let Some(w) = stack.pop() {
            let support = w.support();
            for x in family.ground().full().difference(support) {
                if family.contains(support.with(x)) {
                    stack.push(w.extended(x));
                }
            }
            words.insert(w);
        }
        Ok(SimpleLanguage {
            ground: family.ground().clone(),
            words,
            prefix_closed: true,
        })
    }
}

/// Membership in `L(F)` without materializing it.
pub fn family_accepts_word(family: &SetFamily, word: &Word) -> bool {
    if !word.is_simple() {
        return false;
    }
    let mut support = Subset::EMPTY;
    family.contains(support)
        && word.letters().iter().all(|&x| {
            if family.ground().check_element(x).is_err() {
                return false;
            }
            support = support.with(x);
            family.contains(support)
        })
}

/// `f(x, A)` for `x ∈ A ⊆ E`, expected antitone in `A`.
pub trait NestingFunction {
    fn value(&self, x: Element, set: Subset) -> Result<f64>;
}

impl<F> NestingFunction for F
where
    F: Fn(Element, Subset) -> f64,
{
    fn value(&self, x: Element, set: Subset) -> Result<f64> {
        Ok(self(x, set))
    }
}

/// `W` of every non-empty prefix: entry `i − 1` is
/// `max{f(x₁,{x₁}), …, f(x_i,{x₁,…,x_i})}`.
pub fn prefix_nesting<F: NestingFunction + ?Sized>(f: &F, word: &Word) -> Result<Vec<f64>> {
    let mut support = Subset::EMPTY;
    let mut running = f64::NEG_INFINITY;
    let mut out = Vec::with_capacity(word.len());
    for &x in word.letters() {
        support = support.with(x);
        running = running.max(f.value(x, support)?);
        out.push(running);
    }
    Ok(out)
}

/// The maximum nesting function `W(x₁ … x_k)`; undefined on the empty word.
pub fn nesting_w<F: NestingFunction + ?Sized>(f: &F, word: &Word) -> Result<f64> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(*prefix_nesting(f, word)?.last().expect("non-empty word"))
}

/// Greedy word of length `k` over `L(F(Ψ))`: each step appends the
/// continuation `x ∈ Ψ(X_i)` minimizing `f(x, X_i ∪ x)`, smallest identifier
/// on ties.
pub fn greedy_minimax<F: NestingFunction + ?Sized>(
    op: &OperatorSpec,
    f: &F,
    k: usize,
) -> Result<Word> {
    let mut word = Word::empty();
    let mut support = Subset::EMPTY;
    while word.len() < k {
        let mut best: Option<(Element, f64)> = None;
        for x in op.evaluate(support) {
            let value = f.value(x, support.with(x))?;
            if best.is_none_or(|(_, v)| value < v) {
                best = Some((x, value));
            }
        }
        let Some((x, _)) = best else {
            let n = op.ground().len();
            if k > n {
                return Err(Error::RankExceeded { k, rank: n });
            }
            if n <= TABLE_LIMIT {
                let rank = op.family().rank();
                if k > rank {
                    return Err(Error::RankExceeded { k, rank });
                }
            }
            return Err(Error::Stuck(support));
        };
        word = word.extended(x);
        support = support.with(x);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::bridge_f_from_pi;
    use crate::fixtures;
    use proptest::prelude::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn lang(n: usize, words: &[&[Element]]) -> SimpleLanguage {
        SimpleLanguage::new(g(n), words.iter().map(|w| Word::new(w.to_vec()))).unwrap()
    }

    fn p3_language() -> SimpleLanguage {
        lang(3, &[&[], &[1], &[1, 2], &[1, 3], &[1, 2, 3], &[1, 3, 2]])
    }

    #[test]
    fn word_basics() {
        let w = Word::new(vec![1, 3, 2]);
        assert_eq!(w.to_string(), "1 3 2");
        assert_eq!(Word::empty().to_string(), "-");
        assert!(w.is_simple());
        assert!(!Word::new(vec![1, 1]).is_simple());
        assert_eq!(w.support(), Subset::from_elements([1, 2, 3]));
        assert!(Word::new(vec![2]) < Word::new(vec![1, 2]));
        assert!(Word::new(vec![1, 2]) < Word::new(vec![1, 3]));
    }

    #[test]
    fn construction_rejects_bad_words() {
        assert!(matches!(
            SimpleLanguage::new(g(2), [Word::empty(), Word::new(vec![1, 1])]),
            Err(Error::BadWord(_))
        ));
        assert!(matches!(
            SimpleLanguage::new(g(2), [Word::empty(), Word::new(vec![3])]),
            Err(Error::BadWord(_))
        ));
        assert_eq!(
            SimpleLanguage::new(g(2), [Word::new(vec![1])]),
            Err(Error::MissingEmptyWord)
        );
    }

    #[test]
    fn antimatroid_language_examples() {
        assert!(p3_language().is_antimatroid_language());
        let missing_prefix = lang(2, &[&[], &[1, 2]]);
        assert!(!missing_prefix.is_prefix_closed());
        assert!(!missing_prefix.is_antimatroid_language());
        let no_exchange = lang(2, &[&[], &[1], &[2]]);
        assert!(no_exchange.is_prefix_closed());
        assert!(!no_exchange.is_antimatroid_language());
        assert_eq!(
            no_exchange.exchange_violation(),
            Some((Word::new(vec![1]), Word::new(vec![2])))
        );
    }

    #[test]
    fn family_from_language_examples() {
        assert_eq!(p3_language().family().unwrap(), fixtures::p3_family());
        assert_eq!(
            lang(2, &[&[]]).family().unwrap(),
            SetFamily::from_lists(g(2), &[&[]]).unwrap()
        );
        assert_eq!(
            lang(2, &[&[], &[1], &[2], &[1, 2], &[2, 1]]).family().unwrap(),
            SetFamily::power_set(g(2))
        );
        assert!(lang(2, &[&[], &[1, 2]]).family().is_err());
    }

    #[test]
    fn language_from_family_examples() {
        assert_eq!(SimpleLanguage::from_family(&fixtures::p3_family()).unwrap(), p3_language());
        let chain = SetFamily::from_lists(g(2), &[&[], &[1], &[1, 2]]).unwrap();
        assert_eq!(
            SimpleLanguage::from_family(&chain).unwrap(),
            lang(2, &[&[], &[1], &[1, 2]])
        );
        assert_eq!(
            SimpleLanguage::from_family(&SetFamily::power_set(g(2))).unwrap(),
            lang(2, &[&[], &[1], &[2], &[1, 2], &[2, 1]])
        );
        let bad = SetFamily::from_lists(g(2), &[&[], &[1], &[2]]).unwrap();
        assert!(SimpleLanguage::from_family(&bad).is_err());
        assert!(SimpleLanguage::from_family(&SetFamily::power_set(g(11))).is_err());
    }

    #[test]
    fn lazy_membership() {
        let p3 = fixtures::p3_family();
        assert!(family_accepts_word(&p3, &Word::new(vec![1, 3, 2])));
        assert!(!family_accepts_word(&p3, &Word::new(vec![2, 1])));
        assert!(!family_accepts_word(&p3, &Word::new(vec![1, 1])));
        assert!(!family_accepts_word(&p3, &Word::new(vec![4])));
        assert!(family_accepts_word(&p3, &Word::empty()));
        let big = OperatorSpec::chain(g(30)).family();
        assert!(family_accepts_word(&big, &Word::new((1..=30).collect())));
    }

    #[test]
    fn nesting_examples() {
        let f = bridge_f_from_pi(&fixtures::w136()).unwrap();
        assert_eq!(nesting_w(&f, &Word::new(vec![1, 3])).unwrap(), 2.0);
        assert_eq!(nesting_w(&f, &Word::new(vec![1, 3, 2])).unwrap(), 4.0);
        assert_eq!(nesting_w(&f, &Word::new(vec![2])).unwrap(), 6.0);
        assert_eq!(nesting_w(&f, &Word::empty()), Err(Error::EmptyWord));
        assert_eq!(
            prefix_nesting(&f, &Word::new(vec![1, 3, 2])).unwrap(),
            [1.0, 2.0, 4.0]
        );
    }

    #[test]
    fn greedy_examples() {
        let f = bridge_f_from_pi(&fixtures::w136()).unwrap();
        let p3 = fixtures::p3_operator();
        let w2 = greedy_minimax(&p3, &f, 2).unwrap();
        assert_eq!(w2, Word::new(vec![1, 3]));
        assert_eq!(nesting_w(&f, &w2).unwrap(), 2.0);
        let w3 = greedy_minimax(&p3, &f, 3).unwrap();
        assert_eq!(w3, Word::new(vec![1, 3, 2]));
        assert_eq!(nesting_w(&f, &w3).unwrap(), 4.0);
        assert_eq!(greedy_minimax(&p3, &f, 1).unwrap(), Word::new(vec![1]));
        assert_eq!(
            greedy_minimax(&p3, &f, 4),
            Err(Error::RankExceeded { k: 4, rank: 3 })
        );
        assert_eq!(
            greedy_minimax(&p3.truncated(1), &f, 3),
            Err(Error::RankExceeded { k: 3, rank: 2 })
        );
        // a plain closure works as a nesting function
        let by_id = |x: Element, _: Subset| x as f64;
        assert_eq!(
            greedy_minimax(&OperatorSpec::full(g(3)), &by_id, 3).unwrap(),
            Word::new(vec![1, 2, 3])
        );
    }

    #[test]
    fn greedy_reports_a_stuck_operator() {
        let op = OperatorSpec::max_order(g(3));
        let f = |x: Element, _: Subset| -(x as f64);
        assert_eq!(greedy_minimax(&op, &f, 2), Err(Error::Stuck(Subset::from_elements([3]))));
    }

    proptest! {
        #[test]
        fn round_trips_on_random_antimatroids(seed in any::<u64>(), n in 1usize..6) {
            let family = crate::oracle::random_isotone_operator(seed, n).unwrap().family();
            let language = SimpleLanguage::from_family(&family).unwrap();
            prop_assert!(language.is_antimatroid_language());
            prop_assert_eq!(language.family().unwrap(), family.clone());
            for w in language.words() {
                prop_assert!(family_accepts_word(&family, w));
            }
        }

        #[test]
        fn w_depends_only_on_prefix_supports(seed in any::<u64>(), n in 1usize..6) {
            let op = crate::oracle::random_isotone_operator(seed, n).unwrap();
            let pi = crate::oracle::random_monotone_linkage(seed ^ 1, n, 3).unwrap();
            let f = bridge_f_from_pi(&pi).unwrap();
            let language = SimpleLanguage::from_family(&op.family()).unwrap();
            for w in language.words().filter(|w| !w.is_empty()) {
                let mut support = Subset::EMPTY;
                let mut expected = f64::NEG_INFINITY;
                for &x in w.letters() {
                    expected = expected.max(pi.value(x, support).unwrap());
                    support = support.with(x);
                }
                prop_assert_eq!(nesting_w(&f, w).unwrap(), expected);
            }
        }
    }
}
