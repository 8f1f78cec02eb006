//! Executable forms of the inequalities, constants, and recurrences that
//! govern UPS part counts and rich-word growth: the explicit constant c and
//! the kappa ceiling, the packing bound on part counts, the geometric-sum
//! sandwich, the convolution recurrence upper-bounding R_n, the binomial
//! tail bound, and growth-rate certificates from computed tables.
//!
//! Integer statements run in exact bignum arithmetic. Real-valued
//! comparisons run in log space with an explicit tolerance band: anything
//! within 1e-9 of equality is reported as marginal rather than silently
//! passed or failed.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::enumerate::{CountTable, EnumerationStats};

/// Tolerance band for real-valued inequality checks.
pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("count table covers lengths 0..={have} but the check needs R_{need}")]
    InsufficientData { need: usize, have: usize },
    #[error("count table is for alphabet size {table_q}, not {expected_q}")]
    AlphabetMismatch { table_q: u8, expected_q: u8 },
    #[error("growth hypothesis fails on the table: R_{n} > K * h^{n}")]
    InvalidHypothesis { n: usize },
    #[error("value does not fit in the result type")]
    Overflow,
}

/// Verdict of a real-valued inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    /// Within the tolerance band of equality; neither side is trusted.
    Marginal,
    Violated,
}

impl CheckOutcome {
    pub fn holds(self) -> bool {
        self == CheckOutcome::Holds
    }

    fn and(self, other: CheckOutcome) -> CheckOutcome {
        use CheckOutcome::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Marginal, _) | (_, Marginal) => Marginal,
            _ => Holds,
        }
    }
}

/// Classifies `a <= b` with a tolerance relative to the larger magnitude.
fn le_rel(a: f64, b: f64) -> CheckOutcome {
    let scale = a.abs().max(b.abs()).max(1.0);
    le_abs(a, b, CHECK_TOLERANCE * scale)
}

/// Classifies `a <= b` with an absolute tolerance.
fn le_abs(a: f64, b: f64, tol: f64) -> CheckOutcome {
    if b - a >= tol {
        CheckOutcome::Holds
    } else if a - b >= tol {
        CheckOutcome::Violated
    } else {
        CheckOutcome::Marginal
    }
}

/// Natural log of a big integer, accurate to ~1 ulp even far beyond f64
/// range. ln(0) is -inf.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let top: BigUint = x >> shift;
    top.to_f64().expect("53 bits fit f64").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The explicit constant c = max(8 q^{3/2} ln q, 8 * 9^{3/2} ln 9) from the
/// part-count bound. Both branches coincide at q = 9.
pub fn constant_c(q: u8) -> f64 {
    debug_assert!(q >= 2);
    let own = 8.0 * (q as f64).powf(1.5) * (q as f64).ln();
    let nine = 8.0 * 27.0 * 9f64.ln();
    own.max(nine)
}

/// kappa_n = ceil(c * n / ln n), defined for n >= 2.
///
/// The ceiling snaps to integers within 1e-9 relative distance first:
/// some (n, q) pairs cancel exactly in real arithmetic (q = 16, n = 2 gives
/// exactly 4096) and a last-ulp excess must not bump them up.
pub fn kappa(n: u64, q: u8) -> Result<u64, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain("kappa needs n >= 2 (ln 1 = 0)"));
    }
    let v = constant_c(q) * n as f64 / (n as f64).ln();
    let nearest = v.round();
    let ceiled = if (v - nearest).abs() <= CHECK_TOLERANCE * nearest.max(1.0) {
        nearest
    } else {
        v.ceil()
    };
    if ceiled > u64::MAX as f64 {
        return Err(BoundsError::Overflow);
    }
    Ok(ceiled as u64)
}

/// Smallest t with sum_{i=1..t} i * q^{ceil(i/2)} >= n, in exact integer
/// arithmetic. The sum over i <= t is the total length of all palindromes
/// of length at most t. Returns 0 for n = 0.
pub fn minimal_t(n: u64, q: u8) -> u32 {
    debug_assert!(q >= 2);
    let target = BigUint::from(n);
    let mut acc = BigUint::zero();
    let mut t = 0u32;
    while acc < target {
        t += 1;
        acc += BigUint::from(t) * BigUint::from(q).pow(t.div_ceil(2));
    }
    t
}

/// Packing bound on the UPS part count: sum_{i=1..t} q^{ceil(i/2)} with
/// t = minimal_t(n, q), i.e. the number of palindromes of length <= t.
pub fn lemma_b_bound(n: u64, q: u8) -> BigUint {
    let t = minimal_t(n, q);
    let mut acc = BigUint::zero();
    for i in 1..=t {
        acc += BigUint::from(q).pow(i.div_ceil(2));
    }
    acc
}

/// Geometric-derivative sandwich: for x > 1 with N(x-1) >= 2,
/// N x^N / (2(x-1)) <= sum_{i=1..N} i x^{i-1} <= N x^N / (x-1).
/// The middle sum is evaluated directly, term by term.
pub fn check_lemma_c(n: u32, x: f64) -> Result<CheckOutcome, BoundsError> {
    if n < 1 {
        return Err(BoundsError::Domain("lemma C needs N >= 1"));
    }
    if !(x > 1.0) {
        return Err(BoundsError::Domain("lemma C needs x > 1"));
    }
    // Grid points like N = 10, x = 1.2 make N(x-1) exactly 2 in real
    // arithmetic but 1.999... in f64; the tolerance keeps them in-domain.
    if (n as f64) * (x - 1.0) < 2.0 - CHECK_TOLERANCE {
        return Err(BoundsError::Domain("lemma C needs N(x-1) >= 2"));
    }
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for i in 1..=n {
        let term = i as f64 * x.powi(i as i32 - 1);
        let y = term - compensation;
        let t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
    }
    let top = n as f64 * x.powi(n as i32);
    let lower = top / (2.0 * (x - 1.0));
    let upper = top / (x - 1.0);
    Ok(le_rel(lower, sum).and(le_rel(sum, upper)))
}

/// Number of compositions of n into exactly p positive parts:
/// binomial(n-1, p-1). Zero when p > n or p = 0 (with n >= 1).
pub fn composition_count(n: u64, p: u64) -> BigUint {
    debug_assert!(n >= 1);
    if p == 0 || p > n {
        return BigUint::zero();
    }
    binomial(n - 1, p - 1)
}

/// Right-hand side of the counting recurrence:
///
///   sum over p = 1..kappa_n, and over compositions n_1+...+n_p = n,
///   of R_{ceil(n_1/2)} * ... * R_{ceil(n_p/2)}.
///
/// Computed exactly by dynamic programming over p-fold convolutions of
/// b_m = R_{ceil(m/2)}. Compositions into positive parts force p <= n, so
/// truncating the outer sum at min(kappa_n, n) is exact, not approximate —
/// kappa_n dwarfs n for every desk-scale n.
pub fn theorem_d_rhs(n: usize, q: u8, table: &CountTable) -> Result<BigUint, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain("the recurrence is stated for n >= 2"));
    }
    if table.q() != q {
        return Err(BoundsError::AlphabetMismatch { table_q: table.q(), expected_q: q });
    }
    let half = n.div_ceil(2);
    if table.max_n() < half {
        return Err(BoundsError::InsufficientData { need: half, have: table.max_n() });
    }
    let b: Vec<BigUint> =
        (1..=n).map(|m| table.get(m.div_ceil(2)).expect("checked above").clone()).collect();

    let p_cap = kappa(n as u64, q)?.min(n as u64) as usize;

    // f[s] = sum over compositions of s into exactly p parts of the product
    // of b over the parts; rolled forward in p.
    let mut f: Vec<BigUint> = vec![BigUint::zero(); n + 1];
    for s in 1..=n {
        f[s] = b[s - 1].clone();
    }
    let mut total = f[n].clone();
    for p in 2..=p_cap {
        let mut g: Vec<BigUint> = vec![BigUint::zero(); n + 1];
        for s in p..=n {
            let mut acc = BigUint::zero();
            for j in 1..=s - (p - 1) {
                acc += &f[s - j] * &b[j - 1];
            }
            g[s] = acc;
        }
        f = g;
        total += &f[n];
    }
    Ok(total)
}

/// Exact tail sum of binomial coefficients against its log-space bound:
/// sum_{k=0..L} C(N,k) <= (eN/L)^L, compared as ln(LHS) vs L(1 + ln N - ln L).
pub fn binomial_tail_bound_check(n: u64, l: u64) -> Result<CheckOutcome, BoundsError> {
    if l < 1 || l > n {
        return Err(BoundsError::Domain("tail bound needs 1 <= L <= N"));
    }
    let mut lhs = BigUint::one(); // C(N, 0)
    let mut term = BigUint::one();
    for k in 1..=l {
        term = term * BigUint::from(n - k + 1) / BigUint::from(k);
        lhs += &term;
    }
    let rhs_log = l as f64 * (1.0 + (n as f64).ln() - (l as f64).ln());
    Ok(le_abs(ln_big(&lhs), rhs_log, CHECK_TOLERANCE))
}

/// An exponential envelope R_n <= K h^n, h > 1, K >= 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthHypothesis {
    h: f64,
    k: f64,
}

impl GrowthHypothesis {
    pub fn new(h: f64, k: f64) -> Result<Self, BoundsError> {
        if !(h > 1.0) {
            return Err(BoundsError::Domain("growth hypothesis needs h > 1"));
        }
        if !(k >= 1.0) {
            return Err(BoundsError::Domain("growth hypothesis needs K >= 1"));
        }
        Ok(GrowthHypothesis { h, k })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Checks R_m <= K h^m for every m the table covers, up to `n_max`.
    pub fn verify_against(&self, table: &CountTable, n_max: usize) -> Result<(), BoundsError> {
        for m in 0..=n_max.min(table.max_n()) {
            let lhs = ln_big(table.get(m).expect("within table"));
            let rhs = self.k.ln() + m as f64 * self.h.ln();
            if le_abs(lhs, rhs, CHECK_TOLERANCE) == CheckOutcome::Violated {
                return Err(BoundsError::InvalidHypothesis { n: m });
            }
        }
        Ok(())
    }
}

/// Result of the chained envelope bound at one n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropEChain {
    /// True iff kappa_n <= n, the regime where the binomial tail bound
    /// (which needs L <= N) actually applies. Desk-scale n are far below
    /// the threshold; see [`applicability_threshold_log10`].
    pub applicable: bool,
    /// The verdict on R_n <= K^kappa h^{(n+kappa)/2} (e n / kappa)^kappa,
    /// present only when applicable.
    pub outcome: Option<CheckOutcome>,
}

impl PropEChain {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, Some(CheckOutcome::Holds))
    }
}

/// ln of the chained bound K^kappa h^{(n+kappa)/2} (e n / kappa)^kappa.
pub fn prop_e_rhs_log(k_const: f64, h: f64, n: u64, kappa_n: u64) -> f64 {
    let kap = kappa_n as f64;
    kap * k_const.ln() + (n as f64 + kap) / 2.0 * h.ln() + kap * (1.0 + (n as f64).ln() - kap.ln())
}

/// Evaluates the chained bound R_n <= K^kappa_n h^{(n+kappa_n)/2} (en/kappa_n)^kappa_n
/// against a computed table. Errors if the hypothesis fails on the table;
/// reports `applicable = false` instead of stretching the tail bound
/// outside L <= N.
pub fn prop_e_chain_check(
    hyp: &GrowthHypothesis,
    table: &CountTable,
    n: usize,
) -> Result<PropEChain, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain("the chain is stated for n >= 2"));
    }
    if table.max_n() < n {
        return Err(BoundsError::InsufficientData { need: n, have: table.max_n() });
    }
    hyp.verify_against(table, n)?;
    let kappa_n = kappa(n as u64, table.q())?;
    if kappa_n > n as u64 {
        return Ok(PropEChain { applicable: false, outcome: None });
    }
    let lhs = ln_big(table.get(n).expect("within table"));
    let rhs = prop_e_rhs_log(hyp.k(), hyp.h(), n as u64, kappa_n);
    Ok(PropEChain { applicable: true, outcome: Some(le_abs(lhs, rhs, CHECK_TOLERANCE)) })
}

/// log10 of the smallest n at which kappa_n <= n. Since n is an integer,
/// ceil(c n / ln n) <= n iff c n / ln n <= n iff ln n >= c, so the
/// threshold is e^c — around 10^206 for small alphabets, far beyond any
/// enumeration.
pub fn applicability_threshold_log10(q: u8) -> f64 {
    constant_c(q) / std::f64::consts::LN_10
}

/// Growth-rate report entry: the n-th root of R_n and the best (smallest)
/// root seen so far, a certified upper bound on lim R_n^{1/n}.
#[derive(Debug, Clone, Copy)]
pub struct GrowthPoint {
    pub n: usize,
    pub root: f64,
    pub certificate: f64,
}

/// Roots and running certificates for n = 1..=max_n. The certificate at n
/// is min over 2 <= m <= n of root(m) (root(1) alone for n = 1); for a
/// factorial language each root upper-bounds the limit, so the running
/// minimum is a valid, non-increasing certificate.
pub fn growth_report(table: &CountTable) -> Vec<GrowthPoint> {
    let mut out = Vec::new();
    let mut best = f64::INFINITY;
    for n in 1..=table.max_n() {
        let root = table.root(n).expect("n >= 1 within table");
        if n >= 2 {
            best = best.min(root);
        }
        let certificate = if n == 1 { root } else { best };
        out.push(GrowthPoint { n, root, certificate });
    }
    out
}

/// Executed part-count bounds over collected statistics.
#[derive(Debug, Clone, Copy)]
pub struct TheoremAReport {
    /// max over n >= 2 of p_max(n) ln n / n.
    pub max_ratio: f64,
    /// True iff max_ratio <= c AND p_max(n) <= lemma_b_bound(n) for all
    /// n >= 1 AND p_max(n) <= kappa_n for all n >= 2.
    pub all_within: bool,
}

pub fn verify_theorem_a(stats: &EnumerationStats, q: u8) -> TheoremAReport {
    let c = constant_c(q);
    let mut max_ratio = 0.0f64;
    let mut all_within = true;
    for entry in &stats.per_length {
        if entry.n == 0 {
            continue;
        }
        let p = BigUint::from(entry.p_max);
        if p > lemma_b_bound(entry.n as u64, q) {
            all_within = false;
        }
        if entry.n >= 2 {
            let ratio = entry.p_max as f64 * (entry.n as f64).ln() / entry.n as f64;
            max_ratio = max_ratio.max(ratio);
            match kappa(entry.n as u64, q) {
                Ok(kap) => {
                    if entry.p_max as u64 > kap {
                        all_within = false;
                    }
                }
                Err(_) => all_within = false,
            }
        }
    }
    if max_ratio > c {
        all_within = false;
    }
    TheoremAReport { max_ratio, all_within }
}

/// One row of the bound report: everything the checks computed at one n.
/// Fields are None where the quantity is undefined (kappa and the
/// recurrence need n >= 2; t_min, the packing bound and p_max need n >= 1;
/// roots need n >= 1).
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub q: u8,
    pub n: usize,
    pub c: f64,
    pub kappa_n: Option<u64>,
    pub t_min: Option<u32>,
    pub lemma_b_bound: Option<BigUint>,
    pub p_max_observed: Option<usize>,
    pub theorem_d_rhs: Option<BigUint>,
    pub r_n: BigUint,
    pub root: Option<f64>,
    pub certificate: Option<f64>,
}

impl BoundReport {
    /// True iff every bound that applies at this n held:
    /// p_max <= packing bound, p_max <= kappa_n, R_n <= recurrence RHS.
    pub fn assertions_hold(&self) -> bool {
        if let (Some(p), Some(bound)) = (self.p_max_observed, &self.lemma_b_bound) {
            if &BigUint::from(p) > bound {
                return false;
            }
        }
        if let (Some(p), Some(kap)) = (self.p_max_observed, self.kappa_n) {
            if p as u64 > kap {
                return false;
            }
        }
        if let Some(rhs) = &self.theorem_d_rhs {
            if &self.r_n > rhs {
                return false;
            }
        }
        true
    }
}

/// Builds one report row per n = 0..=table.max_n(). `stats` must cover
/// n = 1..=table.max_n().
pub fn bound_reports(
    table: &CountTable,
    stats: &EnumerationStats,
) -> Result<Vec<BoundReport>, BoundsError> {
    let q = table.q();
    if stats.q != q {
        return Err(BoundsError::AlphabetMismatch { table_q: q, expected_q: stats.q });
    }
    for n in 1..=table.max_n() {
        if stats.p_max_for(n).is_none() {
            return Err(BoundsError::InsufficientData { need: n, have: 0 });
        }
    }
    let growth = growth_report(table);
    let mut rows = Vec::with_capacity(table.max_n() + 1);
    for n in 0..=table.max_n() {
        let kappa_n = if n >= 2 { Some(kappa(n as u64, q)?) } else { None };
        let rhs = if n >= 2 { Some(theorem_d_rhs(n, q, table)?) } else { None };
        let point = (n >= 1).then(|| growth[n - 1]);
        rows.push(BoundReport {
            q,
            n,
            c: constant_c(q),
            kappa_n,
            t_min: (n >= 1).then(|| minimal_t(n as u64, q)),
            lemma_b_bound: (n >= 1).then(|| lemma_b_bound(n as u64, q)),
            p_max_observed: stats.p_max_for(n),
            theorem_d_rhs: rhs,
            r_n: table.get(n).expect("within table").clone(),
            root: point.map(|g| g.root),
            certificate: point.map(|g| g.certificate),
        });
    }
    Ok(rows)
}

/// CSV rendering of bound reports:
/// `n,q,R_n,p_max,t_min,lemma_b_bound,kappa_n,theorem_d_rhs,root,certificate`,
/// with empty fields where a quantity is undefined.
pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
        v.as_ref().map_or(String::new(), |x| x.to_string())
    }
    fn opt6(v: &Option<f64>) -> String {
        v.map_or(String::new(), |x| format!("{x:.6}"))
    }
    let mut out = String::from("n,q,R_n,p_max,t_min,lemma_b_bound,kappa_n,theorem_d_rhs,root,certificate\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.q,
            r.r_n,
            opt(&r.p_max_observed),
            opt(&r.t_min),
            opt(&r.lemma_b_bound),
            opt(&r.kappa_n),
            opt(&r.theorem_d_rhs),
            opt6(&r.root),
            opt6(&r.certificate),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{collect_stats, count_rich, Mode, SearchConfig};

    fn table_from(q: u8, counts: &[u64]) -> CountTable {
        CountTable::from_counts(q, counts.iter().map(|&c| BigUint::from(c)).collect()).unwrap()
    }

    #[test]
    fn constant_c_branches() {
        let nine = 216.0 * 9f64.ln();
        assert!((constant_c(9) - nine).abs() < 1e-9);
        assert!((constant_c(2) - nine).abs() < 1e-9, "second branch dominates below q=9");
        assert!((constant_c(16) - 512.0 * 16f64.ln()).abs() < 1e-9);
        assert!(constant_c(16) > nine);
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(2, 2).unwrap(), 1370);
        assert_eq!(kappa(8, 2).unwrap(), 1826);
        // Exact cancellation: c(16) * 2 / ln 2 = 2048 ln 2 * 2 / ln 2 = 4096.
        assert_eq!(kappa(2, 16).unwrap(), 4096);
        assert!(kappa(1, 2).is_err());
        assert!(kappa(0, 2).is_err());
    }

    #[test]
    fn minimal_t_values() {
        assert_eq!(minimal_t(1, 2), 1);
        assert_eq!(minimal_t(3, 2), 2);
        assert_eq!(minimal_t(10, 2), 3);
        assert_eq!(minimal_t(0, 2), 0);
    }

    #[test]
    fn minimal_t_monotonicity() {
        // Non-decreasing in n, non-increasing in q.
        for q in 2u8..=6 {
            let mut prev = 0;
            for n in 1u64..=2000 {
                let t = minimal_t(n, q);
                assert!(t >= prev);
                prev = t;
            }
        }
        for n in [1u64, 5, 17, 100, 999] {
            let mut prev = u32::MAX;
            for q in 2u8..=12 {
                let t = minimal_t(n, q);
                assert!(t <= prev);
                prev = t;
            }
        }
    }

    #[test]
    fn lemma_b_values() {
        assert_eq!(lemma_b_bound(3, 2), BigUint::from(4u32));
        assert_eq!(lemma_b_bound(10, 2), BigUint::from(8u32));
        assert_eq!(lemma_b_bound(1, 5), BigUint::from(5u32));
        assert_eq!(lemma_b_bound(10, 3), BigUint::from(15u32));
    }

    #[test]
    fn lemma_c_examples() {
        assert!(check_lemma_c(2, 2.0).unwrap().holds()); // 4 <= 5 <= 8
        assert!(check_lemma_c(4, 1.5).unwrap().holds()); // 20.25 <= 24.25 <= 40.5
        assert!(check_lemma_c(50, 1.1).unwrap().holds());
        assert!(check_lemma_c(1, 1.05).is_err(), "N(x-1) < 2");
        assert!(check_lemma_c(3, 1.0).is_err(), "x must exceed 1");
    }

    #[test]
    fn lemma_c_full_grid() {
        // N <= 50, x = 1.05..=3.00 step 0.05, restricted to N(x-1) >= 2.
        let mut cases = 0;
        for n in 1u32..=50 {
            for i in 0..=39 {
                let x = (105 + 5 * i) as f64 / 100.0;
                if (n as f64) * (x - 1.0) < 2.0 - CHECK_TOLERANCE {
                    continue;
                }
                assert_eq!(check_lemma_c(n, x).unwrap(), CheckOutcome::Holds, "N={n} x={x}");
                cases += 1;
            }
        }
        assert!(cases > 1000, "grid unexpectedly small: {cases}");
    }

    #[test]
    fn composition_count_values() {
        assert_eq!(composition_count(4, 2), BigUint::from(3u32));
        assert_eq!(composition_count(7, 1), BigUint::one());
        assert_eq!(composition_count(5, 5), BigUint::one());
        assert_eq!(composition_count(3, 4), BigUint::zero());
    }

    #[test]
    fn composition_counts_sum_to_power_of_two() {
        for n in 1u64..=30 {
            let total: BigUint = (1..=n).map(|p| composition_count(n, p)).sum();
            assert_eq!(total, BigUint::from(2u8).pow(n as u32 - 1));
        }
    }

    /// Direct composition enumeration; the independent oracle for the DP.
    fn rhs_by_enumeration(n: usize, q: u8, table: &CountTable) -> BigUint {
        fn go(remaining: usize, parts_left: usize, table: &CountTable, acc: &mut BigUint, partial: BigUint) {
            if parts_left == 1 {
                *acc += partial * table.get(remaining.div_ceil(2)).unwrap();
                return;
            }
            for first in 1..=remaining - (parts_left - 1) {
                go(
                    remaining - first,
                    parts_left - 1,
                    table,
                    acc,
                    &partial * table.get(first.div_ceil(2)).unwrap(),
                );
            }
        }
        let p_cap = kappa(n as u64, q).unwrap().min(n as u64) as usize;
        let mut total = BigUint::zero();
        for p in 1..=p_cap {
            go(n, p, table, &mut total, BigUint::one());
        }
        total
    }

    #[test]
    fn theorem_d_hand_values() {
        let t2 = table_from(2, &[1, 2, 4, 8, 16, 32, 64, 128]);
        assert_eq!(theorem_d_rhs(2, 2, &t2).unwrap(), BigUint::from(6u32));
        assert_eq!(theorem_d_rhs(3, 2, &t2).unwrap(), BigUint::from(20u32));
        let t3 = table_from(3, &[1, 3, 9, 27, 75]);
        assert_eq!(theorem_d_rhs(2, 3, &t3).unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn theorem_d_matches_composition_enumeration() {
        let t2 = count_rich(2, 12, Mode::Exact).unwrap();
        let t3 = count_rich(3, 10, Mode::SymmetryReduced).unwrap();
        for n in 2usize..=10 {
            assert_eq!(theorem_d_rhs(n, 2, &t2).unwrap(), rhs_by_enumeration(n, 2, &t2), "q=2 n={n}");
            assert_eq!(theorem_d_rhs(n, 3, &t3).unwrap(), rhs_by_enumeration(n, 3, &t3), "q=3 n={n}");
        }
    }

    #[test]
    fn theorem_d_upper_bounds_counts() {
        let t2 = count_rich(2, 12, Mode::Exact).unwrap();
        for n in 2usize..=12 {
            assert!(table_leq_rhs(&t2, n), "R_{n} exceeds the recurrence RHS");
        }
    }

    fn table_leq_rhs(table: &CountTable, n: usize) -> bool {
        table.get(n).unwrap() <= &theorem_d_rhs(n, table.q(), table).unwrap()
    }

    #[test]
    fn theorem_d_error_paths() {
        let t2 = table_from(2, &[1, 2, 4]);
        assert!(matches!(theorem_d_rhs(1, 2, &t2), Err(BoundsError::Domain(_))));
        assert!(matches!(
            theorem_d_rhs(6, 2, &t2),
            Err(BoundsError::InsufficientData { need: 3, have: 2 })
        ));
        assert!(matches!(
            theorem_d_rhs(2, 3, &t2),
            Err(BoundsError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn binomial_tail_examples() {
        assert!(binomial_tail_bound_check(4, 2).unwrap().holds()); // 11 <= (2e)^2
        assert!(binomial_tail_bound_check(1, 1).unwrap().holds()); // 2 <= e
        assert!(binomial_tail_bound_check(60, 30).unwrap().holds());
        assert!(binomial_tail_bound_check(4, 0).is_err());
        assert!(binomial_tail_bound_check(4, 5).is_err());
    }

    #[test]
    fn binomial_tail_full_grid() {
        for n in 1u64..=60 {
            for l in 1..=n {
                assert_eq!(
                    binomial_tail_bound_check(n, l).unwrap(),
                    CheckOutcome::Holds,
                    "N={n} L={l}"
                );
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(60, 30), BigUint::parse_bytes(b"118264581564861424", 10).unwrap());
        assert_eq!(binomial(3, 7), BigUint::zero());
    }

    #[test]
    fn growth_hypothesis_validation() {
        assert!(GrowthHypothesis::new(1.0, 2.0).is_err());
        assert!(GrowthHypothesis::new(2.0, 0.5).is_err());
        let table = table_from(2, &[1, 2, 4, 8]);
        let good = GrowthHypothesis::new(2.0, 1.0).unwrap();
        good.verify_against(&table, 3).unwrap();
        let bad = GrowthHypothesis::new(1.5, 1.0).unwrap();
        assert_eq!(
            bad.verify_against(&table, 3),
            Err(BoundsError::InvalidHypothesis { n: 1 })
        );
    }

    #[test]
    fn prop_e_not_applicable_at_desk_scale() {
        let table = count_rich(2, 10, Mode::Exact).unwrap();
        let hyp = GrowthHypothesis::new(3.0, 10.0).unwrap();
        let chain = prop_e_chain_check(&hyp, &table, 10).unwrap();
        assert!(!chain.applicable, "kappa_10 = {} >> 10", kappa(10, 2).unwrap());
        assert!(chain.outcome.is_none());
        assert!(!chain.holds());
    }

    #[test]
    fn prop_e_rejects_failing_hypothesis() {
        let table = table_from(2, &[1, 2, 4, 8]);
        let hyp = GrowthHypothesis::new(1.5, 1.0).unwrap();
        assert!(matches!(
            prop_e_chain_check(&hyp, &table, 3),
            Err(BoundsError::InvalidHypothesis { .. })
        ));
    }

    #[test]
    fn prop_e_rhs_log_matches_direct_evaluation() {
        // Small synthetic kappa so the direct product stays in f64 range.
        for (k_const, h, n, kap) in
            [(1.0f64, 2.0f64, 10u64, 3u64), (2.5, 1.5, 20, 5), (10.0, 3.0, 7, 7)]
        {
            let direct = k_const.powf(kap as f64)
                * h.powf((n as f64 + kap as f64) / 2.0)
                * (std::f64::consts::E * n as f64 / kap as f64).powf(kap as f64);
            let log_space = prop_e_rhs_log(k_const, h, n, kap);
            assert!((log_space - direct.ln()).abs() < 1e-9, "{log_space} vs {}", direct.ln());
        }
    }

    #[test]
    fn applicability_threshold_is_huge() {
        let log10 = applicability_threshold_log10(2);
        assert!((log10 - 206.116).abs() < 0.01);
    }

    #[test]
    fn growth_report_shape() {
        let table = table_from(2, &[1, 2, 4, 8, 16, 32, 64, 128, 252]);
        let report = growth_report(&table);
        assert_eq!(report.len(), 8);
        assert!((report[0].root - 2.0).abs() < 1e-12);
        assert!((report[1].root - 2.0).abs() < 1e-12);
        assert!((report[3].root - 2.0).abs() < 1e-12);
        // 252^(1/8) < 2 pulls the certificate below 2 at n = 8.
        assert!(report[7].root < 2.0);
        assert_eq!(report[7].certificate, report[7].root);
        // Non-increasing, >= 1.
        for pair in report.windows(2) {
            assert!(pair[1].certificate <= pair[0].certificate + 1e-15);
        }
        assert!(report.iter().all(|g| g.certificate >= 1.0));
    }

    #[test]
    fn ln_big_accuracy() {
        let x = BigUint::from(2u8).pow(200);
        assert!((ln_big(&x) - 200.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert!((ln_big(&BigUint::from(1000u32)) - 1000f64.ln()).abs() < 1e-12);
        assert_eq!(ln_big(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn theorem_a_report_small() {
        let stats = collect_stats(2, 8, &SearchConfig::default()).unwrap();
        let report = verify_theorem_a(&stats, 2);
        assert!(report.all_within);
        // p_max(2) = 2 gives ratio 2 ln 2 / 2 = ln 2; larger n stay small.
        assert!(report.max_ratio >= std::f64::consts::LN_2 - 1e-12);
        assert!(report.max_ratio < constant_c(2));
    }

    #[test]
    fn bound_report_rows() {
        let table = count_rich(2, 6, Mode::Exact).unwrap();
        let stats = collect_stats(2, 6, &SearchConfig::default()).unwrap();
        let rows = bound_reports(&table, &stats).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(BoundReport::assertions_hold));

        let r0 = &rows[0];
        assert!(r0.kappa_n.is_none() && r0.t_min.is_none() && r0.root.is_none());
        let r1 = &rows[1];
        assert!(r1.kappa_n.is_none() && r1.theorem_d_rhs.is_none());
        assert_eq!(r1.t_min, Some(1));
        let r2 = &rows[2];
        assert_eq!(r2.kappa_n, Some(1370));
        assert_eq!(r2.theorem_d_rhs, Some(BigUint::from(6u32)));
        assert_eq!(r2.p_max_observed, Some(2));

        let csv = reports_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,q,R_n,p_max,t_min,lemma_b_bound,kappa_n,theorem_d_rhs,root,certificate"
        );
        assert_eq!(lines.next().unwrap(), "0,2,1,,,,,,,");
        assert_eq!(lines.next().unwrap(), "1,2,2,1,1,2,,,2.000000,2.000000");
        assert_eq!(lines.next().unwrap(), "2,2,4,2,1,2,1370,6,2.000000,2.000000");
    }
}
