//! Level-by-level search for difference sets along a subgroup chain.
//!
//! Level `i` is the Schurian scheme on `G/H_i`. A difference set with
//! parameters `(v, k, λ)` pushes down to an equi-distributed function on
//! every level with parameters `(e_i, k, |H_i|·λ)` and values at most
//! `|H_i|`, so the candidates at each level are the equi-distributed lifts
//! of the previous level's candidates.

mod brute;
mod lift;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::equidist::{is_equidistributed, pushout, Lambda, MultiFunction, Parameters};
use crate::error::{arg, Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupChain};
use crate::scheme::{quotient_between, schurian_scheme, QuotientMorphism, RelationPartition};
use crate::symmetry::{
    automorphisms, automorphisms_fixing, orbit, point_symmetries, reduce_to_representatives, Automorphism,
    PointSymmetryGroup, DEFAULT_AUTOMORPHISM_BUDGET, DEFAULT_SYMMETRY_CAP,
};

pub use brute::{brute_force_difference_sets, variance_feasible, BRUTE_FORCE_LIMIT};
use lift::{lifts_of, Budget, LiftPlan};

/// Candidate functions carried between levels.
pub type Multiset = MultiFunction<u16>;

/// One level of the tower: the scheme on `G/H_i` and the parameters its
/// candidates must carry.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub index: usize,
    pub subgroup: Subgroup,
    pub scheme: Arc<RelationPartition>,
    /// Quotient onto the previous level; `None` at the root.
    pub to_previous: Option<QuotientMorphism>,
    pub params: Parameters,
    /// Largest value a candidate may take, `|H_i|`.
    pub value_bound: u64,
    /// The scheme has no non-unit color, so `λ` imposes nothing.
    pub vacuous: bool,
}

impl TowerLevel {
    pub fn points(&self) -> usize {
        self.scheme.points()
    }

    /// Required `(A_j g, g)` for every color `j`; `None` if some value is
    /// not a nonnegative integer.
    pub fn color_targets(&self) -> Option<Vec<i64>> {
        let rp = &self.scheme;
        let unit = rp.unit()?;
        let e = rp.points() as i64;
        let k = self.params.k as i64;
        let mut targets = Vec::with_capacity(rp.colors());
        for j in 0..rp.colors() {
            let t = if j == unit {
                Lambda::from_integer(k * k) - self.params.lambda * (e - 1)
            } else {
                self.params.lambda * rp.rel_size(j) as i64 / e
            };
            if !t.is_integer() || *t.numer() < 0 {
                return None;
            }
            targets.push(t.to_integer());
        }
        Some(targets)
    }
}

/// Builds levels `0..=n` for the chain `G = H_0 > H_1 > ... > H_n`.
pub fn build_tower(group: &FiniteGroup, chain: &SubgroupChain, p: Parameters) -> Result<Vec<TowerLevel>> {
    if p.v != group.order() {
        return arg(format!("parameters have v = {} but the group has order {}", p.v, group.order()));
    }
    if !p.satisfies_counting_constraint() {
        return arg(format!("parameters {p} violate k(k - 1) = λ(v - 1)"));
    }
    if p.k > p.v as u64 {
        return arg(format!("k = {} exceeds v = {}", p.k, p.v));
    }
    let subgroups = chain.subgroups();
    let mut levels: Vec<TowerLevel> = Vec::with_capacity(subgroups.len());
    for (i, h) in subgroups.iter().enumerate() {
        let order = h.order() as i64;
        let e = group.order() / h.order();
        let params = Parameters { v: e, k: p.k, lambda: p.lambda * order };
        let (scheme, to_previous) = if i == 0 {
            (Arc::new(schurian_scheme(group, h)), None)
        } else {
            let m = quotient_between(group, &subgroups[i - 1], h)?;
            debug_assert_eq!(
                crate::equidist::pushed_parameters(params, levels[i - 1].points())?.lambda,
                levels[i - 1].params.lambda
            );
            (m.source().clone(), Some(m))
        };
        levels.push(TowerLevel {
            index: i,
            subgroup: h.clone(),
            vacuous: scheme.colors() <= 1,
            scheme,
            to_previous,
            params,
            value_bound: h.order() as u64,
        });
    }
    Ok(levels)
}

/// Cheap necessary conditions for a level to carry any candidate: integral
/// color targets, and some `e_i` values in `[0, |H_i|]` with sum `k` and the
/// required `Σ g²`. Returns true (possibly feasible) when the second test
/// would cost more than its work cap.
pub fn integrality_prune(level: &TowerLevel) -> bool {
    if level.vacuous {
        return true;
    }
    let Some(targets) = level.color_targets() else {
        return false;
    };
    let unit = level.scheme.unit().expect("schurian schemes are unital");
    variance_feasible(level.points(), level.params.k, targets[unit] as u64, level.value_bound, 1 << 27)
        .unwrap_or(true)
}

/// The single candidate on the one-point root scheme: the constant `k`.
pub fn root_candidates(p: Parameters) -> Result<Vec<Multiset>> {
    let k = u16::try_from(p.k).map_err(|_| Error::Resource(format!("k = {} does not fit u16", p.k)))?;
    Ok(vec![MultiFunction::constant(1, k)])
}

/// Every function on `level` that is equi-distributed with the level's
/// parameters, bounded by the level's value cap, and pushes to `parent`.
pub fn enumerate_lifts(level: &TowerLevel, parent: &Multiset) -> Result<Vec<Multiset>> {
    let budget = Budget::new(None);
    let plan = plan_for(level)?;
    match plan {
        Some(plan) => Ok(lifts_of(&plan, parent.values(), &budget).unwrap_or_default()),
        None => Ok(Vec::new()),
    }
}

fn plan_for(level: &TowerLevel) -> Result<Option<LiftPlan<'_>>> {
    let Some(m) = &level.to_previous else {
        return arg("the root level has no lifts");
    };
    let Some(targets) = level.color_targets() else {
        return Ok(None);
    };
    let cap = u32::try_from(level.value_bound.min(u16::MAX as u64)).expect("bounded above");
    Ok(Some(LiftPlan { scheme: &level.scheme, fibers: m.fibers(), targets, cap }))
}

/// Search settings.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Keep one representative per equivalence class at every level.
    pub reduce_by_equivalence: bool,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// Backtracking nodes allowed across all levels.
    pub node_budget: Option<u64>,
    /// Keep every level's surviving candidates in the report.
    pub emit_candidates: bool,
    pub automorphism_budget: u64,
    pub symmetry_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            reduce_by_equivalence: true,
            workers: 0,
            node_budget: None,
            emit_candidates: false,
            automorphism_budget: DEFAULT_AUTOMORPHISM_BUDGET,
            symmetry_cap: DEFAULT_SYMMETRY_CAP,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchStatus {
    Completed,
    BudgetExhausted,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// `k(k − 1) ≠ λ(v − 1)`; nothing was searched.
    ParameterInfeasible,
    /// Level `level` has no candidates, so no difference set exists.
    Nonexistent { level: usize },
    /// The chain ends at the trivial subgroup and this many sets were found.
    Found { count: usize },
    /// The chain stops above the trivial subgroup with candidates left.
    Undecided,
    /// The node budget ran out.
    Incomplete,
}

/// What happened at one level.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub level: usize,
    pub subgroup_order: usize,
    pub points: usize,
    pub colors: usize,
    pub params: Parameters,
    /// Functions lifted from the previous level's survivors.
    pub lift_count: usize,
    /// Candidates on this level accounted for: the lifts together with
    /// everything equivalent to them. Equals `lift_count` without reduction.
    pub raw_count: usize,
    pub reduced_count: usize,
    /// Order of the point group used for reduction, if any.
    pub symmetry_order: Option<usize>,
    /// Automorphisms of `G` fixing `H_i` that fed the point group.
    pub automorphisms_used: Option<usize>,
    pub elapsed: Duration,
    pub candidates: Option<Vec<Multiset>>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub group_name: String,
    pub group_order: usize,
    pub params: Parameters,
    pub subgroup_orders: Vec<usize>,
    pub levels: Vec<LevelReport>,
    /// Difference sets, as sorted element lists, when the chain reaches
    /// the trivial subgroup.
    pub final_sets: Vec<Vec<usize>>,
    /// Candidates on the last level reached.
    pub final_candidates: Vec<Multiset>,
    pub status: SearchStatus,
    pub verdict: Verdict,
    pub reduction: bool,
    /// Automorphism enumeration ran out of budget and only translations
    /// were used.
    pub symmetry_fallback: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl SearchReport {
    /// `MD_0, MD_1, ...`: surviving candidates per level.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.reduced_count).collect()
    }
}

/// Runs the whole tower search.
pub fn run_tower_search(
    group: &FiniteGroup,
    chain: &SubgroupChain,
    p: Parameters,
    config: &SearchConfig,
) -> Result<SearchReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    pool.install(|| search_in_pool(group, chain, p, config))
}

fn search_in_pool(
    group: &FiniteGroup,
    chain: &SubgroupChain,
    p: Parameters,
    config: &SearchConfig,
) -> Result<SearchReport> {
    let start = Instant::now();
    let mut report = SearchReport {
        group_name: group.name().to_string(),
        group_order: group.order(),
        params: p,
        subgroup_orders: chain.orders(),
        levels: Vec::new(),
        final_sets: Vec::new(),
        final_candidates: Vec::new(),
        status: SearchStatus::Completed,
        verdict: Verdict::ParameterInfeasible,
        reduction: config.reduce_by_equivalence,
        symmetry_fallback: false,
        nodes: 0,
        elapsed: Duration::ZERO,
    };
    if p.v != group.order() {
        return arg(format!("parameters have v = {} but the group has order {}", p.v, group.order()));
    }
    if !p.satisfies_counting_constraint() {
        report.elapsed = start.elapsed();
        return Ok(report);
    }
    let tower = build_tower(group, chain, p)?;

    let auts: Option<Vec<Automorphism>> = if config.reduce_by_equivalence {
        match automorphisms(group, config.automorphism_budget) {
            Ok(a) => Some(a),
            Err(Error::Resource(_)) => {
                report.symmetry_fallback = true;
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let budget = Budget::new(config.node_budget);
    let level_start = Instant::now();
    let mut current = root_candidates(p)?;
    report.levels.push(LevelReport {
        level: 0,
        subgroup_order: tower[0].subgroup.order(),
        points: tower[0].points(),
        colors: tower[0].scheme.colors(),
        params: tower[0].params,
        lift_count: 1,
        raw_count: 1,
        reduced_count: 1,
        symmetry_order: None,
        automorphisms_used: None,
        elapsed: level_start.elapsed(),
        candidates: config.emit_candidates.then(|| current.clone()),
    });

    for level in &tower[1..] {
        let level_start = Instant::now();
        let lifts = if integrality_prune(level) {
            match plan_for(level)? {
                Some(plan) => {
                    let per_parent: Vec<Option<Vec<Multiset>>> =
                        current.par_iter().map(|h| lifts_of(&plan, h.values(), &budget)).collect();
                    if budget.is_exhausted() || per_parent.iter().any(Option::is_none) {
                        report.status = SearchStatus::BudgetExhausted;
                        report.verdict = Verdict::Incomplete;
                        report.nodes = budget.used();
                        report.final_candidates = current;
                        report.elapsed = start.elapsed();
                        return Ok(report);
                    }
                    let mut all: Vec<Multiset> = per_parent.into_iter().flatten().flatten().collect();
                    all.par_sort();
                    all.dedup();
                    all
                }
                None => Vec::new(),
            }
        } else {
            Vec::new()
        };
        if cfg!(debug_assertions) {
            check_lifts(level, &current, &lifts)?;
        }
        let lift_count = lifts.len();
        let (reduced, raw_count, symmetry_order, automorphisms_used) = if config.reduce_by_equivalence {
            let sym = level_symmetry(group, &level.subgroup, auts.as_deref(), config.symmetry_cap, &mut report)?;
            let reps = reduce_to_representatives(&lifts, &sym);
            let closure: usize = reps.par_iter().map(|r| orbit(r, &sym).len()).sum();
            (reps, closure, Some(sym.order()), Some(sym.automorphisms_used()))
        } else {
            (lifts, lift_count, None, None)
        };
        report.levels.push(LevelReport {
            level: level.index,
            subgroup_order: level.subgroup.order(),
            points: level.points(),
            colors: level.scheme.colors(),
            params: level.params,
            lift_count,
            raw_count,
            reduced_count: reduced.len(),
            symmetry_order,
            automorphisms_used,
            elapsed: level_start.elapsed(),
            candidates: config.emit_candidates.then(|| reduced.clone()),
        });
        current = reduced;
        if current.is_empty() {
            report.verdict = Verdict::Nonexistent { level: level.index };
            break;
        }
    }

    let last = tower.last().expect("chains are nonempty");
    if !current.is_empty() {
        if last.subgroup.is_trivial() {
            report.final_sets = current.iter().filter(|g| g.is_characteristic()).map(|g| g.support()).collect();
            report.final_sets.sort();
            report.verdict = if report.final_sets.is_empty() {
                Verdict::Nonexistent { level: last.index }
            } else {
                Verdict::Found { count: report.final_sets.len() }
            };
        } else {
            report.verdict = Verdict::Undecided;
        }
    }
    report.final_candidates = current;
    report.nodes = budget.used();
    report.elapsed = start.elapsed();
    Ok(report)
}

fn level_symmetry(
    group: &FiniteGroup,
    h: &Subgroup,
    auts: Option<&[Automorphism]>,
    cap: usize,
    report: &mut SearchReport,
) -> Result<PointSymmetryGroup> {
    let fixing = auts.map(|a| automorphisms_fixing(a, h)).unwrap_or_default();
    match point_symmetries(group, h, &fixing, cap) {
        Ok(sym) => Ok(sym),
        Err(Error::Resource(_)) => {
            report.symmetry_fallback = true;
            point_symmetries(group, h, &[], cap).or_else(|_| {
                Ok(PointSymmetryGroup::trivial(group.order() / h.order()))
            })
        }
        Err(e) => Err(e),
    }
}

/// Every lift is equi-distributed with the level's parameters, within the
/// value cap, and pushes to some parent.
fn check_lifts(level: &TowerLevel, parents: &[Multiset], lifts: &[Multiset]) -> Result<()> {
    let m = level.to_previous.as_ref().expect("non-root level");
    let mut sorted_parents = parents.to_vec();
    sorted_parents.sort();
    for g in lifts {
        let eq = is_equidistributed(&level.scheme, g)?;
        let ok = eq.is_some_and(|e| e.vacuous || e.params == level.params);
        assert!(ok, "lift {g} is not equi-distributed with {}", level.params);
        assert!(g.max_value() <= level.value_bound, "lift {g} exceeds the value cap");
        let down = pushout(m, g)?;
        assert!(sorted_parents.binary_search(&down).is_ok(), "lift {g} does not push to a parent");
    }
    Ok(())
}

/// Indices `[G:H_i]` sorted from largest to smallest.
pub fn descending_index_order(mut indices: Vec<usize>) -> Vec<usize> {
    indices.sort_unstable_by(|a, b| b.cmp(a));
    indices
}

#[cfg(test)]
mod tests;
