//! Search reports as JSON documents. Everything except `timing` and the
//! per-level `elapsedMs` is a pure function of the job, so reports diff
//! cleanly across runs and worker counts.

use serde::Serialize;
use serde_json::Value;

use diffset::search::{SearchReport, SearchStatus, Verdict};
use diffset::{Lambda, Parameters};

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDoc {
    pub group: GroupDoc,
    pub parameters: ParamsDoc,
    pub chain: ChainDoc,
    pub reduction_mode: &'static str,
    pub per_level: Vec<LevelDoc>,
    pub final_sets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_candidates: Option<Vec<Vec<u16>>>,
    pub md: Vec<usize>,
    pub status: &'static str,
    pub verdict: &'static str,
    pub verdict_detail: String,
    pub symmetry_fallback: bool,
    pub nodes: u64,
    pub notes: Vec<String>,
    pub timing: TimingDoc,
}

#[derive(Serialize)]
pub struct GroupDoc {
    pub name: String,
    pub order: usize,
}

#[derive(Serialize)]
pub struct ParamsDoc {
    pub v: usize,
    pub k: u64,
    pub lambda: Value,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainDoc {
    pub subgroup_orders: Vec<usize>,
    pub indices: Vec<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelDoc {
    pub level: usize,
    pub subgroup_order: usize,
    pub points: usize,
    pub colors: usize,
    pub lambda: Value,
    pub value_bound: usize,
    pub lift_count: usize,
    pub raw_count: usize,
    pub reduced_count: usize,
    pub symmetry_order: Option<usize>,
    pub automorphisms_fixing: Option<usize>,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<Vec<u16>>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TimingDoc {
    pub total_ms: f64,
}

pub fn lambda_value(l: Lambda) -> Value {
    if l.is_integer() {
        Value::from(l.to_integer())
    } else {
        Value::from(format!("{}/{}", l.numer(), l.denom()))
    }
}

pub fn params_doc(p: Parameters) -> ParamsDoc {
    ParamsDoc { v: p.v, k: p.k, lambda: lambda_value(p.lambda) }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::ParameterInfeasible => "parameter-infeasible",
        Verdict::Nonexistent { .. } => "nonexistent",
        Verdict::Found { .. } => "found",
        Verdict::Undecided => "undecided",
        Verdict::Incomplete => "incomplete",
    }
}

fn verdict_detail(r: &SearchReport) -> String {
    let p = r.params;
    match r.verdict {
        Verdict::ParameterInfeasible => format!("{p}: k(k - 1) differs from λ(v - 1); nothing searched"),
        Verdict::Nonexistent { level } => {
            format!("no {p}-difference set in {}: level {level} has no candidates", r.group_name)
        }
        Verdict::Found { count } => {
            let what = if r.reduction { "inequivalent " } else { "" };
            format!("{count} {what}{p}-difference sets in {}", r.group_name)
        }
        Verdict::Undecided => format!(
            "the chain stops at a subgroup of order {} with {} multi difference sets left; no claim about difference sets",
            r.subgroup_orders.last().copied().unwrap_or(1),
            r.final_candidates.len()
        ),
        Verdict::Incomplete => "node budget exhausted; no claim".to_string(),
    }
}

fn ms(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

pub fn build(r: &SearchReport, emit_candidates: bool) -> ReportDoc {
    let orders = &r.subgroup_orders;
    let mut notes = Vec::new();
    if r.reduction {
        notes.push(
            "reducedCount is relative to the chain and to the lex-least representatives kept at each level; \
             only the final verdict is independent of these choices"
                .to_string(),
        );
        notes.push(
            "rawCount counts every function equivalent to a lift of the previous level's representatives".to_string(),
        );
    }
    if r.symmetry_fallback {
        notes.push("automorphism enumeration hit its budget somewhere; translations only were used there".to_string());
    }
    ReportDoc {
        group: GroupDoc { name: r.group_name.clone(), order: r.group_order },
        parameters: params_doc(r.params),
        chain: ChainDoc {
            subgroup_orders: orders.clone(),
            indices: orders.iter().map(|o| r.group_order / o).collect(),
        },
        reduction_mode: if r.reduction { "equivalence" } else { "none" },
        per_level: r
            .levels
            .iter()
            .map(|l| LevelDoc {
                level: l.level,
                subgroup_order: l.subgroup_order,
                points: l.points,
                colors: l.colors,
                lambda: lambda_value(l.params.lambda),
                value_bound: l.subgroup_order,
                lift_count: l.lift_count,
                raw_count: l.raw_count,
                reduced_count: l.reduced_count,
                symmetry_order: l.symmetry_order,
                automorphisms_fixing: l.automorphisms_used,
                elapsed_ms: ms(l.elapsed),
                candidates: l.candidates.as_ref().map(|c| c.iter().map(|g| g.values().to_vec()).collect()),
            })
            .collect(),
        final_sets: r.final_sets.clone(),
        final_candidates: emit_candidates
            .then(|| r.final_candidates.iter().map(|g| g.values().to_vec()).collect()),
        md: r.counts(),
        status: match r.status {
            SearchStatus::Completed => "completed",
            SearchStatus::BudgetExhausted => "budget-exhausted",
        },
        verdict: verdict_name(r.verdict),
        verdict_detail: verdict_detail(r),
        symmetry_fallback: r.symmetry_fallback,
        nodes: r.nodes,
        notes,
        timing: TimingDoc { total_ms: ms(r.elapsed) },
    }
}

/// The report with `timing` and every `perLevel[].elapsedMs` removed, for
/// comparisons.
pub fn without_timing(doc: &ReportDoc) -> Value {
    let mut v = serde_json::to_value(doc).expect("reports serialize");
    if let Value::Object(m) = &mut v {
        m.remove("timing");
        if let Some(Value::Array(levels)) = m.get_mut("perLevel") {
            for level in levels {
                if let Value::Object(l) = level {
                    l.remove("elapsedMs");
                }
            }
        }
    }
    v
}
