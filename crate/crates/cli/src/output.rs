//! Per-command output records and rendering. Every format is deterministic:
//! fixed field order, no timestamps, no thread-dependent content.

use std::fmt::Write as _;

use serde::Serialize;

use richlang::bounds::{BoundReport, TheoremAReport};
use richlang::enumerate::CountTable;

pub const SCHEMA_VERSION: u32 = 1;

/// Shared note attached to growth reports.
pub fn certificate_note(q: u8) -> String {
    let mut note = String::from(
        "certificate = min over computed n >= 2 of R_n^(1/n), a rigorous upper bound on \
         lim R_n^(1/n) because the language is factorial.",
    );
    if q == 2 {
        note.push_str(
            " For q = 2 the count sequence is known through n = 60 (OEIS A216264), where \
             R_60^(1/60) < 1.605; lengths that far are beyond this tool's exhaustive \
             desk-scale enumeration, so the certificate printed here is looser.",
        );
    }
    note
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct AnalyzeOutput {
    pub schema_version: u32,
    pub command: &'static str,
    pub q: u8,
    pub word: String,
    pub n: usize,
    pub rich: bool,
    pub defect: usize,
    /// Distinct palindromic factors including the empty word.
    pub palindromic_factors: usize,
}

impl AnalyzeOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => format!(
                "word,n,q,rich,defect,palindromic_factors\n{},{},{},{},{},{}\n",
                self.word, self.n, self.q, self.rich, self.defect, self.palindromic_factors
            ),
            Format::Plain => format!(
                "word: {}\nn: {}\nq: {}\nrich: {}\ndefect: {}\npalindromic_factors: {}\n",
                self.word, self.n, self.q, self.rich, self.defect, self.palindromic_factors
            ),
        }
    }
}

#[derive(Serialize)]
pub struct FactorizeOutput {
    pub schema_version: u32,
    pub command: &'static str,
    pub q: u8,
    /// "ups" or "greedy-palindromic-suffix" (the --permissive fallback,
    /// which guarantees neither distinctness nor unioccurrence).
    pub method: &'static str,
    pub word: String,
    pub rich: bool,
    pub defect: usize,
    pub p: usize,
    pub parts: Vec<String>,
    pub n: usize,
}

impl FactorizeOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => format!(
                "word,n,q,method,rich,defect,p,parts\n{},{},{},{},{},{},{},{}\n",
                self.word,
                self.n,
                self.q,
                self.method,
                self.rich,
                self.defect,
                self.p,
                self.parts.join(" ")
            ),
            Format::Plain => {
                let title = match self.method {
                    "ups" => "UPS-factorization".to_string(),
                    _ => "greedy palindromic suffix factorization (distinctness not guaranteed)"
                        .to_string(),
                };
                format!(
                    "{title}\nword: {}\nn: {}\nq: {}\nrich: {}\ndefect: {}\np: {}\nparts: {}\n",
                    self.word,
                    self.n,
                    self.q,
                    self.rich,
                    self.defect,
                    self.p,
                    self.parts.join(" ")
                )
            }
        }
    }
}

#[derive(Serialize)]
pub struct CountRow {
    pub n: usize,
    pub r_n: String,
    pub root: Option<f64>,
}

#[derive(Serialize)]
pub struct CountOutput {
    pub schema_version: u32,
    pub command: &'static str,
    pub q: u8,
    pub max_n: usize,
    pub mode: &'static str,
    /// False when a budget truncated the table.
    pub complete: bool,
    pub rows: Vec<CountRow>,
    /// Best upper bound on lim R_n^(1/n) from the computed rows.
    pub certificate: Option<f64>,
    pub certificate_note: String,
}

impl CountOutput {
    pub fn from_table(
        q: u8,
        max_n: usize,
        mode: &'static str,
        complete: bool,
        table: &CountTable,
    ) -> Self {
        let rows = (0..=table.max_n())
            .map(|n| CountRow {
                n,
                r_n: table.get(n).expect("within table").to_string(),
                root: table.root(n),
            })
            .collect();
        let certificate = richlang::bounds::growth_report(table).last().map(|g| g.certificate);
        CountOutput {
            schema_version: SCHEMA_VERSION,
            command: "count",
            q,
            max_n,
            mode,
            complete,
            rows,
            certificate,
            certificate_note: certificate_note(q),
        }
    }

    pub fn render(&self, format: Format, table: &CountTable) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => table.to_csv(),
            Format::Plain => {
                let mut out = format!(
                    "rich-word counts: q={}, mode={}, lengths 0..={}{}\n",
                    self.q,
                    self.mode,
                    table.max_n(),
                    if self.complete { "" } else { " (PARTIAL: budget exhausted)" }
                );
                let _ = writeln!(out, "{:>4}  {:>24}  {:>10}", "n", "R_n", "root");
                for row in &self.rows {
                    let root =
                        row.root.map_or_else(|| "-".to_string(), |r| format!("{r:.6}"));
                    let _ = writeln!(out, "{:>4}  {:>24}  {:>10}", row.n, row.r_n, root);
                }
                if let Some(cert) = self.certificate {
                    let _ = writeln!(out, "certificate: {cert:.6}");
                }
                let _ = writeln!(out, "note: {}", self.certificate_note);
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct BoundsRow {
    pub n: usize,
    pub r_n: String,
    pub p_max: Option<usize>,
    pub t_min: Option<u32>,
    pub lemma_b_bound: Option<String>,
    pub kappa_n: Option<u64>,
    pub theorem_d_rhs: Option<String>,
    pub root: Option<f64>,
    pub certificate: Option<f64>,
}

#[derive(Serialize)]
pub struct BoundsOutput {
    pub schema_version: u32,
    pub command: &'static str,
    pub q: u8,
    pub max_n: usize,
    /// The explicit part-count constant for this alphabet.
    pub c: f64,
    /// Largest observed p_max(n) ln n / n, to compare against c.
    pub max_ratio: f64,
    pub all_bounds_hold: bool,
    pub rows: Vec<BoundsRow>,
    pub certificate_note: String,
}

impl BoundsOutput {
    pub fn new(q: u8, max_n: usize, report: TheoremAReport, rows: &[BoundReport], all_hold: bool) -> Self {
        BoundsOutput {
            schema_version: SCHEMA_VERSION,
            command: "bounds",
            q,
            max_n,
            c: richlang::bounds::constant_c(q),
            max_ratio: report.max_ratio,
            all_bounds_hold: all_hold,
            rows: rows
                .iter()
                .map(|r| BoundsRow {
                    n: r.n,
                    r_n: r.r_n.to_string(),
                    p_max: r.p_max_observed,
                    t_min: r.t_min,
                    lemma_b_bound: r.lemma_b_bound.as_ref().map(|b| b.to_string()),
                    kappa_n: r.kappa_n,
                    theorem_d_rhs: r.theorem_d_rhs.as_ref().map(|b| b.to_string()),
                    root: r.root,
                    certificate: r.certificate,
                })
                .collect(),
            certificate_note: certificate_note(q),
        }
    }

    pub fn render(&self, format: Format, reports: &[BoundReport]) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => richlang::bounds::reports_to_csv(reports),
            Format::Plain => {
                let mut out = format!("bound report: q={}, lengths 0..={}\n", self.q, self.max_n);
                let _ = writeln!(
                    out,
                    "{:>4} {:>14} {:>6} {:>6} {:>8} {:>8} {:>20} {:>9} {:>9}",
                    "n", "R_n", "p_max", "t_min", "lemma_b", "kappa_n", "thm_d_rhs", "root", "cert"
                );
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "{:>4} {:>14} {:>6} {:>6} {:>8} {:>8} {:>20} {:>9} {:>9}",
                        r.n,
                        r.r_n,
                        opt_str(&r.p_max),
                        opt_str(&r.t_min),
                        opt_str(&r.lemma_b_bound),
                        opt_str(&r.kappa_n),
                        opt_str(&r.theorem_d_rhs),
                        opt6(r.root),
                        opt6(r.certificate),
                    );
                }
                let _ = writeln!(out, "c: {:.6}", self.c);
                let _ = writeln!(out, "max observed p_max*ln(n)/n: {:.6}", self.max_ratio);
                let _ = writeln!(out, "all bound assertions hold: {}", self.all_bounds_hold);
                let _ = writeln!(out, "note: {}", self.certificate_note);
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

#[derive(Serialize)]
pub struct VerifyOutput {
    pub schema_version: u32,
    pub command: &'static str,
    pub q: u8,
    pub max_n: usize,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub info: Vec<String>,
    pub pass: bool,
}

impl VerifyOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = String::from("suite,checks,failures\n");
                for s in &self.suites {
                    let _ = writeln!(out, "{},{},{}", s.name, s.checks, s.failures.len());
                }
                out
            }
            Format::Plain => {
                let mut out = String::new();
                for s in &self.suites {
                    let _ = writeln!(
                        out,
                        "suite {}: {} checks, {} failures",
                        s.name,
                        s.checks,
                        s.failures.len()
                    );
                    for f in &s.failures {
                        let _ = writeln!(out, "  FAIL: {f}");
                    }
                }
                for line in &self.info {
                    let _ = writeln!(out, "info: {line}");
                }
                let checks: u64 = self.suites.iter().map(|s| s.checks).sum();
                let failures: usize = self.suites.iter().map(|s| s.failures.len()).sum();
                let _ = writeln!(
                    out,
                    "result: {} ({checks} checks, {failures} failures)",
                    if self.pass { "PASS" } else { "FAIL" }
                );
                out
            }
        }
    }
}

fn opt_str<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn opt6(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output structs always serialize");
    s.push('\n');
    s
}
