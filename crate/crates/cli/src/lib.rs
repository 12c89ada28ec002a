//! Command implementations behind the `diffset` binary.

pub mod report;
pub mod spec;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use diffset::equidist::{inner_distribution, is_equidistributed, MultiFunction};
use diffset::group::{builtin_group, reference_chain, BuiltinGroup};
use diffset::scheme::schurian_scheme;
use diffset::search::{run_tower_search, SearchConfig, SearchReport, SearchStatus};
use diffset::symmetry::{automorphisms, automorphisms_fixing, point_symmetries, DEFAULT_AUTOMORPHISM_BUDGET};
use diffset::{FiniteGroup, Lambda, Parameters, Subgroup, SubgroupChain};

use report::{lambda_value, params_doc, ReportDoc};
use spec::{ElementJson, GroupSpec, Job};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Spec(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<diffset::Error> for CliError {
    fn from(e: diffset::Error) -> Self {
        match e {
            diffset::Error::Argument(m) => CliError::Spec(m),
            diffset::Error::Resource(m) => CliError::Resource(m),
        }
    }
}

/// What a command prints, and the process exit status.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

/// Flags that override a job's `config`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub no_reduction: bool,
    pub workers: Option<usize>,
    pub emit_candidates: bool,
    pub node_budget: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, config: &mut SearchConfig) -> Result<(), CliError> {
        if self.no_reduction {
            config.reduce_by_equivalence = false;
        }
        if let Some(w) = self.workers {
            if w == 0 {
                return Err(CliError::Spec("--workers must be at least 1".into()));
            }
            config.workers = w;
        }
        if self.emit_candidates {
            config.emit_candidates = true;
        }
        if self.node_budget.is_some() {
            config.node_budget = self.node_budget;
        }
        Ok(())
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn exit_for(r: &SearchReport) -> i32 {
    match r.status {
        SearchStatus::Completed => 0,
        SearchStatus::BudgetExhausted => 3,
    }
}

pub fn run_job(job: &Job) -> Result<(SearchReport, ReportDoc), CliError> {
    let r = run_tower_search(&job.group, &job.chain, job.params, &job.config)?;
    let doc = report::build(&r, job.config.emit_candidates);
    Ok((r, doc))
}

/// `search --spec`: the report document and a one-line verdict.
pub fn cmd_search(spec_text: &str, overrides: &Overrides) -> Result<(ReportDoc, String, i32), CliError> {
    let spec = spec::JobSpec::from_json(spec_text)?;
    let mut job = spec.resolve()?;
    overrides.apply(&mut job.config)?;
    let (r, doc) = run_job(&job)?;
    let line = format!("{}: {}", doc.verdict, doc.verdict_detail);
    Ok((doc, line, exit_for(&r)))
}

pub fn search_output(spec_text: &str, overrides: &Overrides) -> Result<Output, CliError> {
    let (doc, _, code) = cmd_search(spec_text, overrides)?;
    Ok(Output { text: to_json(&doc), code })
}

/// The job for one built-in group with its built-in chain and
/// `(120, 35, 10)`.
pub fn reference_job(which: BuiltinGroup, config: SearchConfig) -> Result<Job, CliError> {
    let group = builtin_group(which)?;
    let mut subgroups = vec![group.whole()];
    for gens in reference_chain(which) {
        let elems = gens.iter().map(|s| group.resolve_str(s)).collect::<diffset::Result<Vec<_>>>()?;
        subgroups.push(group.subgroup(&elems));
    }
    let chain = SubgroupChain::new(&group, subgroups)?;
    Ok(Job { group, chain, params: Parameters::new(120, 35, 10), config })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// `search --preset paper-120`: a summary table and every report.
pub fn cmd_preset(only: &[BuiltinGroup], overrides: &Overrides) -> Result<(String, Vec<ReportDoc>, i32), CliError> {
    let groups: Vec<BuiltinGroup> = if only.is_empty() { BuiltinGroup::ALL.to_vec() } else { only.to_vec() };
    let mut table = String::new();
    writeln!(
        table,
        "{:<7} {:<12} {:<18} {:<5} {:<13} {:<22} {:>10}",
        "group", "|H_i|", "MD_i", "sets", "verdict", "symmetry orders", "seconds"
    )
    .unwrap();
    let mut docs = Vec::new();
    let mut code = 0;
    for which in groups {
        let mut config = SearchConfig::default();
        overrides.apply(&mut config)?;
        let job = reference_job(which, config)?;
        let (r, doc) = run_job(&job)?;
        code = code.max(exit_for(&r));
        let sym: Vec<String> =
            doc.per_level.iter().map(|l| l.symmetry_order.map_or("-".to_string(), |o| o.to_string())).collect();
        writeln!(
            table,
            "{:<7} {:<12} {:<18} {:<5} {:<13} {:<22} {:>10.1}",
            which.name(),
            join(&doc.chain.subgroup_orders),
            join(&doc.md),
            doc.final_sets.len(),
            doc.verdict,
            sym.join(","),
            doc.timing.total_ms / 1e3
        )
        .unwrap();
        docs.push(doc);
    }
    Ok((table, docs, code))
}

fn function_on(points: usize, values: &[u64]) -> Result<MultiFunction<u64>, CliError> {
    if values.len() != points {
        return Err(CliError::Spec(format!("function: {} values for {points} points", values.len())));
    }
    Ok(MultiFunction::new(values.to_vec()))
}

/// `check`: is a set (or a nonnegative function on `G/H`) equi-distributed?
pub fn cmd_check(
    group: &FiniteGroup,
    subgroup: Option<&Subgroup>,
    set: Option<&[ElementJson]>,
    function: Option<&[u64]>,
    expected: Option<Parameters>,
) -> Result<Output, CliError> {
    let h = subgroup.cloned().unwrap_or_else(|| group.trivial_subgroup());
    let rp = schurian_scheme(group, &h);
    let (g, set_doc) = match (set, function) {
        (Some(elems), None) => {
            if !h.is_trivial() {
                return Err(CliError::Spec("--set needs the trivial subgroup; use --function on G/H".into()));
            }
            let mut ids = spec::resolve_elements(group, "set", elems)?;
            ids.sort_unstable();
            if ids.windows(2).any(|w| w[0] == w[1]) {
                return Err(CliError::Spec("set: repeated element".into()));
            }
            let chi = MultiFunction::<u64>::characteristic(group.order(), &ids)?;
            (chi, json!(ids))
        }
        (None, Some(values)) => (function_on(rp.points(), values)?, json!(values)),
        _ => return Err(CliError::Spec("give exactly one of --set and --function".into())),
    };
    let dist = inner_distribution(&rp, &g)?;
    let eq = is_equidistributed(&rp, &g)?;
    let non_unit: Vec<(usize, Lambda)> = dist.non_unit().collect();
    let reference = match (expected, eq) {
        (Some(p), _) => Some(p.lambda),
        (None, Some(e)) => Some(e.params.lambda),
        (None, None) => most_common(&non_unit),
    };
    let offending: Vec<Value> = non_unit
        .iter()
        .filter(|(_, l)| Some(*l) != reference)
        .map(|(c, l)| json!({"color": c, "lambda": lambda_value(*l)}))
        .collect();
    let params = eq.map(|e| e.params);
    let matches = expected.map(|p| params == Some(p));
    let trivial = params.is_some_and(|p| p.is_trivial());
    let verdict = match (params, matches) {
        (Some(_), Some(false)) => "equi-distributed with other parameters",
        (Some(_), _) if h.is_trivial() && g.is_characteristic() => "difference set",
        (Some(_), _) => "equi-distributed",
        (None, _) => "not equi-distributed",
    };
    let doc = json!({
        "group": {"name": group.name(), "order": group.order()},
        "subgroupOrder": h.order(),
        "points": rp.points(),
        "input": set_doc,
        "mass": g.mass(),
        "innerDistribution": {
            "unit": lambda_value(dist.per_color()[dist.unit()]),
            "nonUnit": non_unit.iter().map(|(c, l)| json!({"color": c, "lambda": lambda_value(*l)})).collect::<Vec<_>>(),
        },
        "equidistributed": params.is_some(),
        "parameters": params.map(params_doc),
        "trivial": trivial,
        "matchesExpected": matches,
        "offending": offending,
        "verdict": verdict,
    });
    let code = if matches == Some(false) { 1 } else { 0 };
    Ok(Output { text: to_json(&doc), code })
}

fn most_common(xs: &[(usize, Lambda)]) -> Option<Lambda> {
    let mut counts: Vec<(Lambda, usize)> = Vec::new();
    for (_, l) in xs {
        match counts.iter_mut().find(|(m, _)| m == l) {
            Some(slot) => slot.1 += 1,
            None => counts.push((*l, 1)),
        }
    }
    counts.into_iter().max_by_key(|&(_, n)| n).map(|(l, _)| l)
}

/// `scheme`: the Schurian scheme on `G/H`.
pub fn cmd_scheme(group: &FiniteGroup, subgroup: Option<&Subgroup>) -> Result<Output, CliError> {
    let h = subgroup.cloned().unwrap_or_else(|| group.trivial_subgroup());
    let rp = schurian_scheme(group, &h);
    let kind = if h.is_trivial() {
        "thin scheme (colors are group elements)"
    } else if h.order() == group.order() {
        "one-point scheme"
    } else {
        "Schurian scheme on left cosets"
    };
    let n = rp.points();
    let table: Vec<&[u16]> = (0..n).map(|x| rp.row(x)).collect();
    let doc = json!({
        "group": {"name": group.name(), "order": group.order()},
        "subgroupOrder": h.order(),
        "kind": kind,
        "points": n,
        "colors": rp.colors(),
        "unit": rp.unit(),
        "relSize": rp.rel_sizes(),
        "valencies": rp.valencies(),
        "colorOf": table,
    });
    Ok(Output { text: to_json(&doc), code: 0 })
}

/// `auts`: `|Aut(G)|`, and for each subgroup the automorphisms fixing it
/// and the point group used for reduction on `G/H`.
pub fn cmd_auts(group: &FiniteGroup, subgroups: &[Subgroup]) -> Result<Output, CliError> {
    let (auts, fallback) = match automorphisms(group, DEFAULT_AUTOMORPHISM_BUDGET) {
        Ok(a) => (Some(a), false),
        Err(diffset::Error::Resource(_)) => (None, true),
        Err(e) => return Err(e.into()),
    };
    let mut levels = Vec::new();
    for h in subgroups {
        let fixing = auts.as_deref().map(|a| automorphisms_fixing(a, h)).unwrap_or_default();
        let sym = point_symmetries(group, h, &fixing, diffset::symmetry::DEFAULT_SYMMETRY_CAP)?;
        levels.push(json!({
            "subgroupOrder": h.order(),
            "points": group.order() / h.order(),
            "automorphismsFixing": auts.as_ref().map(|_| fixing.len()),
            "pointSymmetryOrder": sym.order(),
        }));
    }
    let mut doc = json!({
        "group": {"name": group.name(), "order": group.order()},
        "automorphisms": auts.as_ref().map(Vec::len),
        "subgroups": levels,
    });
    if fallback {
        doc["notice"] = json!("automorphism enumeration exceeded its budget; translations only");
    }
    Ok(Output { text: to_json(&doc), code: 0 })
}

/// Group and optional subgroup from command-line arguments.
pub fn group_and_subgroup(group: &str, subgroup: Option<&str>) -> Result<(FiniteGroup, Option<Subgroup>), CliError> {
    let spec: GroupSpec = spec::group_from_arg(group)?;
    let g = spec.build()?;
    let h = match subgroup {
        Some(text) => Some(spec::resolve_subgroup(&g, "subgroup", &spec::elements_from_arg("subgroup", text)?)?),
        None => None,
    };
    Ok((g, h))
}

pub fn parse_params(text: &str) -> Result<Parameters, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Spec(format!("--params: expected v,k,lambda, got {text:?}"));
    let [v, k, l] = parts.as_slice() else {
        return Err(bad());
    };
    Ok(Parameters {
        v: v.parse().map_err(|_| bad())?,
        k: k.parse().map_err(|_| bad())?,
        lambda: spec::parse_lambda(l)?,
    })
}
