//! Exhaustive depth-first enumeration and counting of rich words.
//!
//! Every prefix of a rich word is rich, so the rich words of length n form
//! the depth-n slice of a tree of rich prefixes. The search walks that tree
//! with a single eertree, appending a letter on the way down and rolling
//! back on the way up; a branch dies the moment an append fails to create a
//! new palindrome. Cost is therefore proportional to the number of rich
//! prefixes, not to q^n.
//!
//! Counting additionally exploits letter-permutation symmetry: richness is
//! invariant under injective renaming, so it suffices to enumerate words
//! whose distinct letters first appear in increasing order and weight each
//! by the falling factorial q(q-1)...(q-k+1).

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::eertree::Eertree;
use crate::rich::ups_part_count;
use crate::words::{Alphabet, Letter, Word, WordError};

/// Counting strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Visit every rich word.
    #[default]
    Exact,
    /// Visit canonical representatives only and multiply by class size.
    SymmetryReduced,
}

/// Resource limits and worker layout for a search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub workers: usize,
    /// Prefix depth at which the DFS forest is split across workers.
    pub split_depth: usize,
    /// Cap on eertree appends across the whole call.
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { workers: 1, split_depth: 8, node_budget: None, time_budget: None }
    }
}

/// Arbitrary-precision counts R_0..R_nmax of rich words over q letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    q: u8,
    counts: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error(transparent)]
    Word(#[from] WordError),
    /// Node or time cap ran out. Table-producing operations attach every
    /// fully counted length; single-length operations attach nothing.
    #[error("search budget exceeded{}", .last_completed.map_or(String::new(), |n| format!("; lengths 0..={n} completed")))]
    BudgetExceeded { last_completed: Option<usize>, partial: Option<CountTable> },
}

impl CountTable {
    /// Wraps an existing table (used by tests and by bound checks that run
    /// against externally computed censuses). `counts[n]` must be R_n.
    pub fn from_counts(q: u8, counts: Vec<BigUint>) -> Result<Self, WordError> {
        Alphabet::new(q)?;
        assert!(!counts.is_empty(), "a count table holds at least R_0");
        Ok(CountTable { q, counts })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Largest length the table covers.
    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// R_n^(1/n); None for n = 0 or beyond the table.
    pub fn root(&self, n: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        self.counts.get(n).map(|r| (crate::bounds::ln_big(r) / n as f64).exp())
    }

    /// Every rich word extends to a rich word on the right, so counts never
    /// decrease. Returns the first offending n on failure.
    pub fn check_monotone(&self) -> Result<(), usize> {
        match self.counts.windows(2).position(|w| w[1] < w[0]) {
            None => Ok(()),
            Some(n) => Err(n),
        }
    }

    /// Factorial closure gives R_{n+m} <= R_n * R_m. Returns the first
    /// offending (n, m) on failure.
    pub fn check_submultiplicative(&self) -> Result<(), (usize, usize)> {
        for n in 0..=self.max_n() {
            for m in 0..=self.max_n() - n {
                if self.counts[n + m] > &self.counts[n] * &self.counts[m] {
                    return Err((n, m));
                }
            }
        }
        Ok(())
    }

    /// CSV rendering: header `n,R_n,root`, root with six decimals, empty at
    /// n = 0.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,R_n,root\n");
        for (n, r) in self.counts.iter().enumerate() {
            match self.root(n) {
                Some(root) => out.push_str(&format!("{n},{r},{root:.6}\n")),
                None => out.push_str(&format!("{n},{r},\n")),
            }
        }
        out
    }
}

/// Per-length enumeration statistics.
#[derive(Debug, Clone)]
pub struct LengthStats {
    pub n: usize,
    /// Maximum UPS part count over all rich words of length n.
    pub p_max: usize,
    /// Lexicographically first word attaining `p_max`.
    pub p_argmax: Word,
    /// Eertree appends performed while scanning this length.
    pub nodes_visited: u64,
    pub wall_time: Duration,
}

#[derive(Debug, Clone)]
pub struct EnumerationStats {
    pub q: u8,
    /// One entry per length, n = 1..=n_max in order.
    pub per_length: Vec<LengthStats>,
}

impl EnumerationStats {
    pub fn p_max_for(&self, n: usize) -> Option<usize> {
        self.per_length.iter().find(|s| s.n == n).map(|s| s.p_max)
    }
}

const BUDGET_CHUNK: u64 = 1024;

/// Shared budget accounting. Workers draw node allowances in chunks; the
/// deadline is re-checked on every draw, so overshoot is bounded by one
/// chunk per worker.
struct BudgetState {
    node_cap: u64,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    stopped: AtomicBool,
}

impl BudgetState {
    fn new(config: &SearchConfig) -> Self {
        BudgetState {
            node_cap: config.node_budget.unwrap_or(u64::MAX),
            deadline: config.time_budget.map(|d| Instant::now() + d),
            nodes: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
        }
    }

    /// Grants up to `BUDGET_CHUNK` more appends, or None once exhausted.
    fn draw(&self) -> Option<u64> {
        if self.stopped.load(Ordering::Relaxed) {
            return None;
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.stopped.store(true, Ordering::Relaxed);
                return None;
            }
        }
        let prev = self.nodes.fetch_add(BUDGET_CHUNK, Ordering::Relaxed);
        if prev >= self.node_cap {
            self.stopped.store(true, Ordering::Relaxed);
            None
        } else {
            Some(BUDGET_CHUNK.min(self.node_cap - prev))
        }
    }
}

/// Search aborted by the budget; converted to `EnumerateError` at the top.
struct Exhausted;

/// Leaf tallies of one (sub)search: in reduced mode `by_distinct[k]` counts
/// canonical leaves using exactly k distinct letters; in exact mode only
/// `plain` is used.
#[derive(Debug, Clone)]
struct LeafCounts {
    plain: u64,
    by_distinct: Vec<u64>,
}

impl LeafCounts {
    fn new(q: u8) -> Self {
        LeafCounts { plain: 0, by_distinct: vec![0; q as usize + 1] }
    }

    fn merge(&mut self, other: &LeafCounts) {
        self.plain += other.plain;
        for (a, b) in self.by_distinct.iter_mut().zip(&other.by_distinct) {
            *a += b;
        }
    }

    fn total(&self, q: u8, mode: Mode) -> BigUint {
        match mode {
            Mode::Exact => BigUint::from(self.plain),
            Mode::SymmetryReduced => {
                let mut sum = BigUint::zero();
                for (k, &leaves) in self.by_distinct.iter().enumerate() {
                    if leaves > 0 {
                        sum += BigUint::from(leaves) * falling_factorial(q, k as u8);
                    }
                }
                sum
            }
        }
    }
}

/// q(q-1)...(q-k+1): the number of injective letter renamings of a class
/// representative using k distinct letters.
pub fn falling_factorial(q: u8, k: u8) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(q - i);
    }
    acc
}

struct Searcher<'a> {
    tree: Eertree,
    q: u8,
    reduced: bool,
    budget: &'a BudgetState,
    allowance: u64,
    nodes_seen: u64,
}

impl<'a> Searcher<'a> {
    fn new(alphabet: &Alphabet, reduced: bool, budget: &'a BudgetState) -> Self {
        Searcher {
            tree: Eertree::new(alphabet),
            q: alphabet.size(),
            reduced,
            budget,
            allowance: 0,
            nodes_seen: 0,
        }
    }

    #[inline]
    fn charge(&mut self) -> Result<(), Exhausted> {
        if self.allowance == 0 {
            self.allowance = self.budget.draw().ok_or(Exhausted)?;
        }
        self.allowance -= 1;
        self.nodes_seen += 1;
        Ok(())
    }

    #[inline]
    fn letter_limit(&self, used: u8) -> u8 {
        if self.reduced {
            (used + 1).min(self.q)
        } else {
            self.q
        }
    }

    /// Replays a known-rich prefix; every append must create a palindrome.
    fn replay(&mut self, prefix: &[Letter]) -> Result<(), Exhausted> {
        for &x in prefix {
            self.charge()?;
            let out = self.tree.append(x).expect("seed letters are in range");
            debug_assert!(out.created_new, "seeds are rich by construction");
        }
        Ok(())
    }

    /// Counts rich extensions of the current buffer, `depth` letters deeper.
    fn count(&mut self, depth: usize, used: u8, leaves: &mut LeafCounts) -> Result<(), Exhausted> {
        if depth == 0 {
            if self.reduced {
                leaves.by_distinct[used as usize] += 1;
            } else {
                leaves.plain += 1;
            }
            return Ok(());
        }
        for x in 0..self.letter_limit(used) {
            self.charge()?;
            let created = self.tree.append(x).expect("letter < q").created_new;
            let result = if created {
                self.count(depth - 1, used + u8::from(x == used), leaves)
            } else {
                Ok(())
            };
            self.tree.undo().expect("journal matches appends");
            result?;
        }
        Ok(())
    }

    /// Visits every rich extension at exactly `depth` letters deeper,
    /// in lexicographic order.
    fn visit<F: FnMut(&[Letter], u8)>(
        &mut self,
        depth: usize,
        used: u8,
        f: &mut F,
    ) -> Result<(), Exhausted> {
        if depth == 0 {
            f(self.tree.buffer(), used);
            return Ok(());
        }
        for x in 0..self.letter_limit(used) {
            self.charge()?;
            let created = self.tree.append(x).expect("letter < q").created_new;
            let result = if created { self.visit(depth - 1, used + u8::from(x == used), f) } else { Ok(()) };
            self.tree.undo().expect("journal matches appends");
            result?;
        }
        Ok(())
    }
}

fn count_length(
    alphabet: &Alphabet,
    n: usize,
    mode: Mode,
    config: &SearchConfig,
    budget: &BudgetState,
) -> Result<BigUint, Exhausted> {
    let q = alphabet.size();
    if n == 0 {
        return Ok(BigUint::one());
    }
    let reduced = mode == Mode::SymmetryReduced;
    let split = config.split_depth.max(1);

    if config.workers <= 1 || n <= split {
        let mut leaves = LeafCounts::new(q);
        let mut searcher = Searcher::new(alphabet, reduced, budget);
        searcher.count(n, 0, &mut leaves)?;
        return Ok(leaves.total(q, mode));
    }

    // Split the forest: every rich (canonical) prefix of length `split`
    // seeds an independent sub-search with its own eertree.
    let mut seeds: Vec<(Vec<Letter>, u8)> = Vec::new();
    {
        let mut searcher = Searcher::new(alphabet, reduced, budget);
        searcher.visit(split, 0, &mut |buf, used| seeds.push((buf.to_vec(), used)))?;
    }

    let next = AtomicUsize::new(0);
    let results: Vec<Result<LeafCounts, Exhausted>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..config.workers)
            .map(|_| {
                let seeds = &seeds;
                let next = &next;
                scope.spawn(move || {
                    let mut local = LeafCounts::new(q);
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some((prefix, used)) = seeds.get(i) else { break };
                        let mut searcher = Searcher::new(alphabet, reduced, budget);
                        searcher.replay(prefix)?;
                        searcher.count(n - split, *used, &mut local)?;
                    }
                    Ok(local)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut leaves = LeafCounts::new(q);
    for r in results {
        leaves.merge(&r?);
    }
    Ok(leaves.total(q, mode))
}

/// Counts rich words of every length up to `n_max` with default limits.
pub fn count_rich(q: u8, n_max: usize, mode: Mode) -> Result<CountTable, EnumerateError> {
    count_rich_with(q, n_max, mode, &SearchConfig::default())
}

/// Counts rich words of every length up to `n_max`.
///
/// Lengths are enumerated one at a time so budget exhaustion leaves a
/// well-defined partial table: the error carries every fully completed
/// length. Exact and symmetry-reduced modes return identical tables; worker
/// count never changes the result (the merge is plain addition).
pub fn count_rich_with(
    q: u8,
    n_max: usize,
    mode: Mode,
    config: &SearchConfig,
) -> Result<CountTable, EnumerateError> {
    let alphabet = Alphabet::new(q)?;
    let budget = BudgetState::new(config);
    let mut counts: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        match count_length(&alphabet, n, mode, config, &budget) {
            Ok(c) => counts.push(c),
            Err(Exhausted) => {
                // Length 0 needs no appends, so `counts` is never empty here.
                let partial = CountTable { q, counts };
                return Err(EnumerateError::BudgetExceeded {
                    last_completed: Some(partial.max_n()),
                    partial: Some(partial),
                });
            }
        }
    }
    Ok(CountTable { q, counts })
}

/// Invokes `visitor` once per rich word of length exactly `n`, in
/// lexicographic order, and returns how many there were. Single-threaded.
pub fn enumerate_rich<F: FnMut(&Word)>(
    q: u8,
    n: usize,
    visitor: F,
) -> Result<u64, EnumerateError> {
    enumerate_rich_with(q, n, visitor, &SearchConfig::default())
}

pub fn enumerate_rich_with<F: FnMut(&Word)>(
    q: u8,
    n: usize,
    mut visitor: F,
    config: &SearchConfig,
) -> Result<u64, EnumerateError> {
    let alphabet = Alphabet::new(q)?;
    let budget = BudgetState::new(config);
    let mut count = 0u64;
    let mut searcher = Searcher::new(&alphabet, false, &budget);
    searcher
        .visit(n, 0, &mut |buf, _| {
            count += 1;
            visitor(&Word::from_raw(buf.to_vec()));
        })
        .map_err(|Exhausted| EnumerateError::BudgetExceeded {
            last_completed: None,
            partial: None,
        })?;
    Ok(count)
}

/// Maximum UPS part count over all rich words of length `n`, with the
/// lexicographically first witness.
///
/// Scans canonical representatives only: part counts are invariant under
/// injective letter renaming, and canonicalizing a word never increases it
/// lexicographically, so both the maximum and the first witness agree with
/// a full scan. For n = 0 the empty word gives (0, empty).
pub fn max_ups_parts(q: u8, n: usize) -> Result<(usize, Word), EnumerateError> {
    max_ups_parts_with(q, n, &SearchConfig::default())
}

pub fn max_ups_parts_with(
    q: u8,
    n: usize,
    config: &SearchConfig,
) -> Result<(usize, Word), EnumerateError> {
    let alphabet = Alphabet::new(q)?;
    let budget = BudgetState::new(config);
    let stats = length_stats(&alphabet, n, &budget).map_err(|Exhausted| {
        EnumerateError::BudgetExceeded { last_completed: None, partial: None }
    })?;
    Ok((stats.p_max, stats.p_argmax))
}

fn length_stats(
    alphabet: &Alphabet,
    n: usize,
    budget: &BudgetState,
) -> Result<LengthStats, Exhausted> {
    let started = Instant::now();
    let mut p_max = 0usize;
    let mut p_argmax = Word::empty();
    let mut searcher = Searcher::new(alphabet, true, budget);
    searcher.visit(n, 0, &mut |buf, _| {
        let word = Word::from_raw(buf.to_vec());
        let p = ups_part_count(&word).expect("enumerated words are rich");
        if p > p_max {
            p_max = p;
            p_argmax = word;
        }
    })?;
    Ok(LengthStats {
        n,
        p_max,
        p_argmax,
        nodes_visited: searcher.nodes_seen,
        wall_time: started.elapsed(),
    })
}

/// Per-length UPS statistics for n = 1..=n_max, for bound verification.
/// The budget in `config` covers the whole collection.
pub fn collect_stats(
    q: u8,
    n_max: usize,
    config: &SearchConfig,
) -> Result<EnumerationStats, EnumerateError> {
    let alphabet = Alphabet::new(q)?;
    let budget = BudgetState::new(config);
    let mut per_length = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        match length_stats(&alphabet, n, &budget) {
            Ok(stats) => per_length.push(stats),
            Err(Exhausted) => {
                return Err(EnumerateError::BudgetExceeded {
                    last_completed: per_length.last().map(|s| s.n),
                    partial: None,
                })
            }
        }
    }
    Ok(EnumerationStats { q, per_length })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rich::is_rich;

    fn parse(text: &str, q: u8) -> Word {
        Word::parse(text, &Alphabet::new(q).unwrap()).unwrap()
    }

    /// Independent census: test every word of length n for richness with
    /// the incremental checker (itself oracle-tested in `rich`).
    fn census(q: u8, n_max: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n_max + 1];
        for n in 0..=n_max {
            let total = (q as u64).pow(n as u32);
            for code in 0..total {
                let mut letters = Vec::with_capacity(n);
                let mut c = code;
                for _ in 0..n {
                    letters.push((c % q as u64) as Letter);
                    c /= q as u64;
                }
                if is_rich(&Word::from_raw(letters)) {
                    counts[n] += 1;
                }
            }
        }
        counts
    }

    fn as_u64s(table: &CountTable) -> Vec<u64> {
        use num_traits::ToPrimitive;
        table.counts().iter().map(|c| c.to_u64().unwrap()).collect()
    }

    #[test]
    fn count_examples() {
        assert_eq!(as_u64s(&count_rich(2, 4, Mode::Exact).unwrap()), vec![1, 2, 4, 8, 16]);
        assert_eq!(as_u64s(&count_rich(2, 0, Mode::Exact).unwrap()), vec![1]);
        assert_eq!(as_u64s(&count_rich(3, 2, Mode::Exact).unwrap()), vec![1, 3, 9]);
    }

    #[test]
    fn census_agreement_binary_up_to_11() {
        let expected = census(2, 11);
        assert_eq!(as_u64s(&count_rich(2, 11, Mode::Exact).unwrap()), expected);
        assert_eq!(as_u64s(&count_rich(2, 11, Mode::SymmetryReduced).unwrap()), expected);
    }

    #[test]
    fn census_agreement_ternary_up_to_7() {
        let expected = census(3, 7);
        assert_eq!(as_u64s(&count_rich(3, 7, Mode::Exact).unwrap()), expected);
        assert_eq!(as_u64s(&count_rich(3, 7, Mode::SymmetryReduced).unwrap()), expected);
    }

    #[test]
    fn mode_agreement_q4() {
        let exact = count_rich(4, 8, Mode::Exact).unwrap();
        let reduced = count_rich(4, 8, Mode::SymmetryReduced).unwrap();
        assert_eq!(exact, reduced);
    }

    #[test]
    fn parallel_matches_sequential() {
        let sequential = count_rich(2, 14, Mode::Exact).unwrap();
        for workers in [2usize, 3, 8] {
            let config = SearchConfig { workers, split_depth: 4, ..SearchConfig::default() };
            let parallel = count_rich_with(2, 14, Mode::Exact, &config).unwrap();
            assert_eq!(sequential, parallel, "workers = {workers}");
        }
        let reduced = SearchConfig { workers: 4, split_depth: 5, ..SearchConfig::default() };
        assert_eq!(sequential, count_rich_with(2, 14, Mode::SymmetryReduced, &reduced).unwrap());
    }

    #[test]
    fn enumerate_visits_all_length_2() {
        let mut seen = Vec::new();
        let count = enumerate_rich(2, 2, |w| seen.push(w.to_string())).unwrap();
        assert_eq!(count, 4);
        assert_eq!(seen, vec!["aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn enumerate_empty_word() {
        let mut seen = Vec::new();
        let count = enumerate_rich(2, 0, |w| seen.push(w.clone())).unwrap();
        assert_eq!(count, 1);
        assert_eq!(seen, vec![Word::empty()]);
    }

    #[test]
    fn enumerate_matches_bruteforce_length_5() {
        let mut visited = Vec::new();
        let count = enumerate_rich(2, 5, |w| visited.push(w.clone())).unwrap();
        let brute: Vec<Word> = (0u32..32)
            .map(|code| Word::from_raw((0..5).map(|i| ((code >> i) & 1) as Letter).collect()))
            .filter(is_rich)
            .collect();
        assert_eq!(count as usize, brute.len());
        let mut brute_sorted = brute.clone();
        brute_sorted.sort();
        assert_eq!(visited, brute_sorted, "lexicographic order, same set");
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let mut prev: Option<Word> = None;
        enumerate_rich(3, 4, |w| {
            if let Some(p) = &prev {
                assert!(p < w);
            }
            prev = Some(w.clone());
        })
        .unwrap();
    }

    #[test]
    fn max_parts_examples() {
        assert_eq!(max_ups_parts(2, 1).unwrap(), (1, parse("a", 2)));
        let (p, witness) = max_ups_parts(2, 3).unwrap();
        assert_eq!(p, 2);
        assert!(is_rich(&witness));
        assert_eq!(ups_part_count(&witness).unwrap(), 2);
        assert_eq!(max_ups_parts(3, 3).unwrap(), (3, parse("abc", 3)));
    }

    #[test]
    fn max_parts_matches_full_scan() {
        // Canonical-only scanning must agree with scanning every rich word.
        for (q, n_max) in [(2u8, 9usize), (3, 6)] {
            for n in 1..=n_max {
                let mut best = 0usize;
                let mut arg = Word::empty();
                enumerate_rich(q, n, |w| {
                    let p = ups_part_count(w).unwrap();
                    if p > best {
                        best = p;
                        arg = w.clone();
                    }
                })
                .unwrap();
                let (p, witness) = max_ups_parts(q, n).unwrap();
                assert_eq!((p, witness), (best, arg), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn table_structure_checks() {
        let table = count_rich(2, 12, Mode::Exact).unwrap();
        assert_eq!(table.get(0).unwrap(), &BigUint::one());
        assert_eq!(table.get(1).unwrap(), &BigUint::from(2u32));
        assert_eq!(table.get(2).unwrap(), &BigUint::from(4u32));
        table.check_monotone().unwrap();
        table.check_submultiplicative().unwrap();
    }

    #[test]
    fn submultiplicativity_detects_violation() {
        let bad = CountTable::from_counts(
            2,
            vec![BigUint::one(), BigUint::from(2u32), BigUint::from(5u32)],
        )
        .unwrap();
        assert_eq!(bad.check_submultiplicative(), Err((1, 1)));
    }

    #[test]
    fn node_budget_yields_partial_table() {
        let config = SearchConfig { node_budget: Some(50), ..SearchConfig::default() };
        let err = count_rich_with(2, 20, Mode::Exact, &config).unwrap_err();
        match err {
            EnumerateError::BudgetExceeded { last_completed: Some(done), partial: Some(partial) } => {
                assert!(done < 20);
                assert_eq!(partial.max_n(), done);
                // Whatever completed is correct.
                let reference = count_rich(2, done, Mode::Exact).unwrap();
                assert_eq!(partial, reference);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn time_budget_trips() {
        let config = SearchConfig {
            time_budget: Some(Duration::from_millis(0)),
            ..SearchConfig::default()
        };
        // Length 0 always completes; the first real length cannot.
        let err = count_rich_with(2, 30, Mode::Exact, &config).unwrap_err();
        assert!(matches!(
            err,
            EnumerateError::BudgetExceeded { last_completed: Some(0), .. }
        ));
    }

    #[test]
    fn csv_schema() {
        let table = count_rich(2, 2, Mode::Exact).unwrap();
        assert_eq!(table.to_csv(), "n,R_n,root\n0,1,\n1,2,2.000000\n2,4,2.000000\n");
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(4, 0), BigUint::one());
        assert_eq!(falling_factorial(4, 2), BigUint::from(12u32));
        assert_eq!(falling_factorial(3, 3), BigUint::from(6u32));
    }

    #[test]
    fn rejects_bad_alphabet() {
        assert!(matches!(count_rich(1, 3, Mode::Exact), Err(EnumerateError::Word(_))));
        assert!(matches!(count_rich(37, 3, Mode::Exact), Err(EnumerateError::Word(_))));
    }
}
