use std::fmt::Write as _;
use std::fs;

use madcert::choosability::{
    chromatic_index_with_limit, criticality_filter, find_bad_assignment, is_l_colorable_with_limit,
    is_proper, list_chromatic_index, ChoosabilityError, Color, CriticalityReport, EdgeColoring,
    ListAssignment, ListChromaticIndex, Limits, SearchBudget, SearchOutcome,
};
use madcert::density::mad_exact;
use madcert::discharging::{
    closed_form_identities, threshold, verify_discharging, IdentityReport, VerificationReport,
};
use madcert::graph::Graph;
use madcert::lp::{certificate_from_paper, soundness, verify_certificate, LpSolution, SoundnessReport};
use madcert::rational::{decimal, exact, ratio};
use madcert::Rational;
use rayon::prelude::*;
use serde::Serialize;

use crate::input::load_graph;
use crate::verdict::{join, theorem_verdict, Verdict};
use crate::{Cli, CliError, Command, DeltaRange, Format, GlobalOptions};

pub(crate) struct Done {
    pub passed: bool,
    pub stdout: String,
}

pub(crate) fn execute(cli: &Cli) -> Result<Done, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.options.jobs)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    let opts = &cli.options;
    pool.install(|| match &cli.command {
        Command::Mad { inputs } => per_input(opts, "mad", inputs, mad_entry),
        Command::Threshold { delta } => threshold_table(opts, *delta),
        Command::Verify { inputs } => per_input(opts, "verify", inputs, verify_entry),
        Command::Discharge { delta } => discharge(opts, *delta),
        Command::Lp { delta } => lp(opts, *delta),
        Command::Choosability { inputs, k, lists } => {
            let lists = match lists {
                Some(path) => Some(read_lists(path)?),
                None => None,
            };
            per_input(opts, "choosability", inputs, |g, o| {
                choosability_entry(g, o, *k, lists.as_ref())
            })
        }
        Command::Filter { inputs } => per_input(opts, "filter", inputs, filter_entry),
    })
}

/// A per-input result: its JSON form and its text block.
trait Entry: Serialize + Send {
    fn text(&self) -> String;
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    command: &'a str,
    passed: bool,
    results: &'a [T],
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Compute(e.to_string()))
}

#[derive(Serialize)]
struct Named<T: Serialize> {
    input: String,
    #[serde(flatten)]
    body: T,
}

/// Runs `f` on every input in parallel and merges the results in input
/// order; the first failing input (in input order) aborts the run.
fn per_input<T, F>(opts: &GlobalOptions, command: &str, inputs: &[String], f: F) -> Result<Done, CliError>
where
    T: Entry,
    F: Fn(&Graph, &GlobalOptions) -> Result<T, CliError> + Sync,
{
    let results: Vec<Result<Named<T>, CliError>> = inputs
        .par_iter()
        .map(|input| {
            let g = load_graph(input, opts.input_format)?;
            let body = f(&g, opts).map_err(|e| match e {
                CliError::Compute(message) => CliError::Input {
                    input: input.clone(),
                    message,
                },
                other => other,
            })?;
            Ok(Named {
                input: input.clone(),
                body,
            })
        })
        .collect();
    let entries: Vec<Named<T>> = results.into_iter().collect::<Result<_, _>>()?;
    let stdout = match opts.format {
        Format::Json => to_json(&Document {
            command,
            passed: true,
            results: &entries,
        })?,
        Format::Text => entries
            .iter()
            .map(|e| format!("input: {}\n{}", e.input, e.body.text()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Done {
        passed: true,
        stdout,
    })
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Serialize)]
struct MadEntry {
    n: usize,
    edges: usize,
    #[serde(with = "madcert::rational::serde_exact")]
    mad: Rational,
    mad_decimal: String,
    witness: Vec<usize>,
}

impl Entry for MadEntry {
    fn text(&self) -> String {
        format!(
            "n: {}\nedges: {}\nmad: {} ({})\nwitness: {}\n",
            self.n,
            self.edges,
            exact(&self.mad),
            self.mad_decimal,
            join(&self.witness)
        )
    }
}

fn mad_entry(g: &Graph, _: &GlobalOptions) -> Result<MadEntry, CliError> {
    let w = mad_exact(g).map_err(compute)?;
    Ok(MadEntry {
        n: g.n(),
        edges: g.edge_count(),
        mad_decimal: decimal(&w.density, 6),
        mad: w.density,
        witness: w.vertices,
    })
}

impl Entry for Verdict {
    fn text(&self) -> String {
        self.to_text()
    }
}

fn verify_entry(g: &Graph, _: &GlobalOptions) -> Result<Verdict, CliError> {
    theorem_verdict(g).map_err(compute)
}

impl Entry for CriticalityReport {
    fn text(&self) -> String {
        self.to_text()
    }
}

fn filter_entry(g: &Graph, _: &GlobalOptions) -> Result<CriticalityReport, CliError> {
    Ok(criticality_filter(g))
}

#[derive(Serialize)]
struct ThresholdRow {
    delta: usize,
    c: usize,
    #[serde(with = "madcert::rational::serde_exact")]
    m: Rational,
    m_decimal: String,
    /// `m − Δ/4`.
    #[serde(with = "madcert::rational::serde_exact")]
    gap: Rational,
}

#[derive(Serialize)]
struct RangeDocument<'a, T: Serialize> {
    command: &'a str,
    delta: String,
    passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failed: Vec<usize>,
    rows: &'a [T],
}

fn threshold_table(opts: &GlobalOptions, range: DeltaRange) -> Result<Done, CliError> {
    let rows: Vec<ThresholdRow> = range
        .iter()
        .map(|delta| {
            let t = threshold(delta).map_err(compute)?;
            Ok(ThresholdRow {
                delta,
                c: t.c,
                m_decimal: decimal(&t.m, 6),
                gap: &t.m - ratio(delta as i64, 4),
                m: t.m,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let stdout = match opts.format {
        Format::Json => to_json(&RangeDocument {
            command: "threshold",
            delta: range.to_string(),
            passed: true,
            failed: Vec::new(),
            rows: &rows,
        })?,
        Format::Text => {
            let mut out = format!("{:>5} {:>4} {:>10} {:>12} {:>10}\n", "delta", "c", "m", "m_decimal", "gap");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>5} {:>4} {:>10} {:>12} {:>10}",
                    r.delta,
                    r.c,
                    exact(&r.m),
                    r.m_decimal,
                    exact(&r.gap)
                );
            }
            out
        }
    };
    Ok(Done {
        passed: true,
        stdout,
    })
}

/// `[14, 15, 16, 20]` → `14..16, 20`.
fn compact(values: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i;
        while j + 1 < values.len() && values[j + 1] == values[j] + 1 {
            j += 1;
        }
        parts.push(if i == j {
            values[i].to_string()
        } else {
            format!("{}..{}", values[i], values[j])
        });
        i = j + 1;
    }
    parts.join(", ")
}

fn summary(total: usize, failed: &[usize]) -> String {
    if failed.is_empty() {
        format!("summary: {total} of {total} passed\n")
    } else {
        format!(
            "summary: {} of {total} passed; failed: {}\n",
            total - failed.len(),
            compact(failed)
        )
    }
}

#[derive(Serialize)]
struct DischargeRow {
    delta: usize,
    passed: bool,
    verification: VerificationReport,
    identities: Option<IdentityReport>,
}

fn discharge(opts: &GlobalOptions, range: DeltaRange) -> Result<Done, CliError> {
    let rows: Vec<DischargeRow> = range
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&delta| {
            let verification = verify_discharging(delta).map_err(compute)?;
            let identities = if delta >= 8 {
                Some(closed_form_identities(delta).map_err(compute)?)
            } else {
                None
            };
            let passed = verification.passed && identities.as_ref().is_none_or(|i| i.matches);
            Ok(DischargeRow {
                delta,
                passed,
                verification,
                identities,
            })
        })
        .collect::<Vec<Result<_, CliError>>>()
        .into_iter()
        .collect::<Result<_, _>>()?;
    let failed: Vec<usize> = rows.iter().filter(|r| !r.passed).map(|r| r.delta).collect();
    let stdout = match opts.format {
        Format::Json => to_json(&RangeDocument {
            command: "discharge",
            delta: range.to_string(),
            passed: failed.is_empty(),
            failed: failed.clone(),
            rows: &rows,
        })?,
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                out.push_str(&r.verification.to_text());
                if let Some(i) = &r.identities {
                    let _ = writeln!(out, "closed_form: {} = {}", i.closed_form_text, exact(&i.closed_form));
                    let _ = writeln!(out, "closed_form_matches: {}", i.matches);
                    let _ = writeln!(out, "gap: {}", exact(&i.gap));
                    if i.asymptote_discrepancy {
                        let _ = writeln!(
                            out,
                            "asymptote_discrepancy: derived constant {} differs from stated {}",
                            exact(&i.derived_asymptote_constant),
                            exact(&i.stated_asymptote_constant)
                        );
                    }
                }
                out.push('\n');
            }
            out.push_str(&summary(rows.len(), &failed));
            out
        }
    };
    Ok(Done {
        passed: failed.is_empty(),
        stdout,
    })
}

#[derive(Serialize)]
struct CertificateCheck {
    valid: bool,
    error: Option<String>,
}

#[derive(Serialize)]
struct LpRow {
    delta: usize,
    passed: bool,
    soundness: SoundnessReport,
    solution: LpSolution,
    closed_form_certificate: CertificateCheck,
}

fn lp(opts: &GlobalOptions, range: DeltaRange) -> Result<Done, CliError> {
    let rows: Vec<LpRow> = range
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&delta| {
            let (solution, report) = soundness(delta).map_err(compute)?;
            let closed_form_certificate = match certificate_from_paper(delta) {
                Ok((lam, m)) => CertificateCheck {
                    valid: verify_certificate(delta, &lam, &m).map_err(compute)?,
                    error: None,
                },
                Err(e) => CertificateCheck {
                    valid: false,
                    error: Some(e.to_string()),
                },
            };
            Ok(LpRow {
                delta,
                passed: report.sound && report.duality.holds() && closed_form_certificate.valid,
                soundness: report,
                solution,
                closed_form_certificate,
            })
        })
        .collect::<Vec<Result<_, CliError>>>()
        .into_iter()
        .collect::<Result<_, _>>()?;
    let failed: Vec<usize> = rows.iter().filter(|r| !r.passed).map(|r| r.delta).collect();
    let stdout = match opts.format {
        Format::Json => to_json(&RangeDocument {
            command: "lp",
            delta: range.to_string(),
            passed: failed.is_empty(),
            failed: failed.clone(),
            rows: &rows,
        })?,
        Format::Text => {
            let mut out = format!(
                "{:>5} {:>10} {:>10} {:>10} {:>6} {:>8} {:>11}\n",
                "delta", "m", "m_star", "gap", "sound", "duality", "certificate"
            );
            for r in &rows {
                let s = &r.soundness;
                let _ = writeln!(
                    out,
                    "{:>5} {:>10} {:>10} {:>10} {:>6} {:>8} {:>11}",
                    r.delta,
                    exact(&s.m),
                    exact(&s.m_star),
                    exact(&s.gap),
                    s.sound,
                    s.duality.holds(),
                    if r.closed_form_certificate.valid { "valid" } else { "invalid" }
                );
            }
            for r in &rows {
                let s = &r.soundness;
                if let (Some(p), Some(avg)) = (&s.strict_counterexample, &s.counterexample_average) {
                    let _ = writeln!(
                        out,
                        "delta {}: profile {p} satisfies every row strictly with average {} < m = {}",
                        r.delta,
                        exact(avg),
                        exact(&s.m)
                    );
                }
                if let Some(e) = &r.closed_form_certificate.error {
                    let _ = writeln!(out, "delta {}: closed-form certificate rejected: {e}", r.delta);
                }
            }
            out.push_str(&summary(rows.len(), &failed));
            out
        }
    };
    Ok(Done {
        passed: failed.is_empty(),
        stdout,
    })
}

fn read_lists(path: &str) -> Result<ListAssignment, CliError> {
    let fail = |message: String| CliError::Input {
        input: path.to_string(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| fail(format!("cannot read: {e}")))?;
    ListAssignment::parse(&text).map_err(|e| fail(e.to_string()))
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum KOutcome {
    Found,
    NoneBad,
    BudgetExhausted,
}

#[derive(Serialize)]
struct KSearch {
    k: usize,
    outcome: KOutcome,
    explored: Option<u64>,
    bad_assignment: Option<ListAssignment>,
}

#[derive(Serialize)]
struct ListsCheck {
    colorable: bool,
    /// `[u, v, color]` per edge.
    coloring: Option<Vec<(usize, usize, Color)>>,
}

#[derive(Serialize)]
struct ChoosabilityEntry {
    delta: usize,
    edges: usize,
    chromatic_index: Option<usize>,
    list_chromatic_index: Option<ListChromaticIndex>,
    k_search: Option<KSearch>,
    lists_check: Option<ListsCheck>,
    skipped: Vec<String>,
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

impl Entry for ChoosabilityEntry {
    fn text(&self) -> String {
        let mut out = format!("delta: {}\nedges: {}\n", self.delta, self.edges);
        if let Some(chi) = self.chromatic_index {
            let _ = writeln!(out, "chromatic_index: {chi}");
        }
        if let Some(l) = &self.list_chromatic_index {
            if l.exact {
                let _ = writeln!(out, "list_chromatic_index: {} (exact, explored {})", l.value, l.explored);
            } else {
                let _ = writeln!(out, "list_chromatic_index: >= {} (search incomplete, explored {})", l.value, l.explored);
            }
            if let Some(w) = &l.witness_below {
                let _ = write!(out, "bad_assignment_k{}:\n{}", l.value - 1, indent(&w.to_text()));
            }
        }
        if let Some(s) = &self.k_search {
            let outcome = match s.outcome {
                KOutcome::Found => "found",
                KOutcome::NoneBad => "none_bad",
                KOutcome::BudgetExhausted => "budget_exhausted",
            };
            let _ = write!(out, "k_search: k={} {outcome}", s.k);
            if let Some(n) = s.explored {
                let _ = write!(out, " (explored {n})");
            }
            out.push('\n');
            if let Some(w) = &s.bad_assignment {
                let _ = write!(out, "bad_assignment_k{}:\n{}", s.k, indent(&w.to_text()));
            }
        }
        if let Some(c) = &self.lists_check {
            let _ = writeln!(out, "lists_colorable: {}", c.colorable);
            if let Some(col) = &c.coloring {
                let parts: Vec<String> = col.iter().map(|(u, v, c)| format!("{u}-{v}:{c}")).collect();
                let _ = writeln!(out, "coloring: {}", parts.join(" "));
            }
        }
        for s in &self.skipped {
            let _ = writeln!(out, "skipped: {s}");
        }
        out
    }
}

fn is_limit(e: &ChoosabilityError) -> bool {
    matches!(
        e,
        ChoosabilityError::TooManyEdges { .. } | ChoosabilityError::ListSizeTooLarge { .. }
    )
}

fn checked_coloring(
    g: &Graph,
    lists: &ListAssignment,
    col: EdgeColoring,
) -> Result<Vec<(usize, usize, Color)>, CliError> {
    let proper = is_proper(g, &col).map_err(compute)?;
    let within = col.colors.iter().all(|(e, c)| lists.lists[e].contains(c));
    if !proper || !within {
        return Err(CliError::Compute("internal error: coloring failed verification".into()));
    }
    Ok(col.colors.into_iter().map(|(e, c)| (e.0, e.1, c)).collect())
}

fn choosability_entry(
    g: &Graph,
    opts: &GlobalOptions,
    k: Option<usize>,
    lists: Option<&ListAssignment>,
) -> Result<ChoosabilityEntry, CliError> {
    let limits = Limits {
        max_edges: opts.limit_edges,
        max_k: opts.limit_k,
        coloring_edges: opts.limit_coloring_edges,
    };
    let budget = SearchBudget {
        max_nodes: opts.limit_nodes,
    };
    let mut entry = ChoosabilityEntry {
        delta: g.max_degree(),
        edges: g.edge_count(),
        chromatic_index: None,
        list_chromatic_index: None,
        k_search: None,
        lists_check: None,
        skipped: Vec::new(),
    };
    match chromatic_index_with_limit(g, limits.coloring_edges) {
        Ok(chi) => entry.chromatic_index = Some(chi),
        Err(e) if is_limit(&e) => entry.skipped.push(format!("chromatic_index: {e}")),
        Err(e) => return Err(compute(e)),
    }
    match k {
        Some(k) => match find_bad_assignment(g, k, budget, limits) {
            Ok(outcome) => {
                entry.k_search = Some(match outcome {
                    SearchOutcome::Found(l) => KSearch {
                        k,
                        outcome: KOutcome::Found,
                        explored: None,
                        bad_assignment: Some(l),
                    },
                    SearchOutcome::NoneComplete { explored } => KSearch {
                        k,
                        outcome: KOutcome::NoneBad,
                        explored: Some(explored),
                        bad_assignment: None,
                    },
                    SearchOutcome::Exhausted { explored } => KSearch {
                        k,
                        outcome: KOutcome::BudgetExhausted,
                        explored: Some(explored),
                        bad_assignment: None,
                    },
                })
            }
            Err(e) if is_limit(&e) => entry.skipped.push(format!("k_search: {e}")),
            Err(e) => return Err(compute(e)),
        },
        None if entry.chromatic_index.is_some() => match list_chromatic_index(g, budget, limits) {
            Ok(l) => entry.list_chromatic_index = Some(l),
            Err(e) if is_limit(&e) => entry.skipped.push(format!("list_chromatic_index: {e}")),
            Err(e) => return Err(compute(e)),
        },
        None => {}
    }
    if let Some(lists) = lists {
        match is_l_colorable_with_limit(g, lists, limits.coloring_edges) {
            Ok(col) => {
                let coloring = col.map(|c| checked_coloring(g, lists, c)).transpose()?;
                entry.lists_check = Some(ListsCheck {
                    colorable: coloring.is_some(),
                    coloring,
                });
            }
            Err(e) if is_limit(&e) => entry.skipped.push(format!("lists: {e}")),
            Err(e) => return Err(compute(e)),
        }
    }
    Ok(entry)
}
