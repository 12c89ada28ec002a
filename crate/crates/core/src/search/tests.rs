use super::*;
use crate::group::{builtin_group, cyclic_group, reference_chain, BuiltinGroup};

fn no_reduction() -> SearchConfig {
    SearchConfig { reduce_by_equivalence: false, ..SearchConfig::default() }
}

fn builtin_chain(which: BuiltinGroup) -> (FiniteGroup, SubgroupChain) {
    let g = builtin_group(which).unwrap();
    let gens: Vec<Vec<usize>> = reference_chain(which)
        .iter()
        .map(|level| level.iter().map(|s| g.resolve_str(s).unwrap()).collect())
        .collect();
    let chain = SubgroupChain::from_generators(&g, &gens).unwrap();
    (g, chain)
}

#[test]
fn tower_parameters() {
    let (g, chain) = builtin_chain(BuiltinGroup::S5);
    let tower = build_tower(&g, &chain, Parameters::new(120, 35, 10)).unwrap();
    let points: Vec<usize> = tower.iter().map(TowerLevel::points).collect();
    assert_eq!(points, [1, 5, 15, 30]);
    let lambdas: Vec<i64> = tower.iter().map(|l| l.params.lambda.to_integer()).collect();
    assert_eq!(lambdas, [1200, 240, 80, 40]);
    assert!(tower[0].vacuous);
    let unit_targets: Vec<i64> = tower[1..]
        .iter()
        .map(|l| l.color_targets().unwrap()[l.scheme.unit().unwrap()])
        .collect();
    assert_eq!(unit_targets, [265, 105, 65]);
    assert!(tower.iter().all(integrality_prune));
}

#[test]
fn tower_rejects_bad_parameters() {
    let c7 = cyclic_group(7).unwrap();
    let chain = SubgroupChain::new(&c7, vec![c7.whole(), c7.trivial_subgroup()]).unwrap();
    assert!(build_tower(&c7, &chain, Parameters::new(7, 3, 2)).is_err());
    assert!(build_tower(&c7, &chain, Parameters::new(8, 3, 1)).is_err());
    let report = run_tower_search(&c7, &chain, Parameters::new(7, 3, 2), &SearchConfig::default()).unwrap();
    assert_eq!(report.verdict, Verdict::ParameterInfeasible);
    assert!(report.levels.is_empty());
}

#[test]
fn cyclic_towers_match_brute_force() {
    for (v, k, lambda, expected) in [(7, 3, 1, 14), (11, 5, 2, 22), (13, 4, 1, 52)] {
        let g = cyclic_group(v).unwrap();
        let chain = SubgroupChain::new(&g, vec![g.whole(), g.trivial_subgroup()]).unwrap();
        let report = run_tower_search(&g, &chain, Parameters::new(v, k as u64, lambda), &no_reduction()).unwrap();
        let brute = brute_force_difference_sets(&g, k).unwrap();
        assert_eq!(brute.len(), expected);
        assert_eq!(report.final_sets, brute);
        assert_eq!(report.verdict, Verdict::Found { count: expected });
    }
}

#[test]
fn three_level_tower_on_c15() {
    let g = cyclic_group(15).unwrap();
    let c5 = g.subgroup(&[3]);
    let chain = SubgroupChain::new(&g, vec![g.whole(), c5, g.trivial_subgroup()]).unwrap();
    let report = run_tower_search(&g, &chain, Parameters::new(15, 7, 3), &no_reduction()).unwrap();
    assert_eq!(report.final_sets, brute_force_difference_sets(&g, 7).unwrap());
    assert_eq!(report.final_sets.len(), 30);

    let reduced = run_tower_search(&g, &chain, Parameters::new(15, 7, 3), &SearchConfig::default()).unwrap();
    // Translations and the 8 automorphisms act freely on the 30 sets, up to
    // the multiplier group fixing each one.
    assert!(reduced.final_sets.len() < 30 && !reduced.final_sets.is_empty());
}

#[test]
fn nonexistence_is_reported() {
    // (16, 6, 2) has no difference set in Z/16.
    let g = cyclic_group(16).unwrap();
    let chain = SubgroupChain::new(&g, vec![g.whole(), g.subgroup(&[4]), g.trivial_subgroup()]).unwrap();
    let report = run_tower_search(&g, &chain, Parameters::new(16, 6, 2), &SearchConfig::default()).unwrap();
    assert!(matches!(report.verdict, Verdict::Nonexistent { .. }));
    assert!(brute_force_difference_sets(&g, 6).unwrap().is_empty());
}

#[test]
fn enumerate_lifts_by_hand() {
    let g = cyclic_group(7).unwrap();
    let chain = SubgroupChain::new(&g, vec![g.whole(), g.trivial_subgroup()]).unwrap();
    let tower = build_tower(&g, &chain, Parameters::new(7, 3, 1)).unwrap();
    let root = root_candidates(tower[0].params).unwrap();
    let lifts = enumerate_lifts(&tower[1], &root[0]).unwrap();
    assert_eq!(lifts.len(), 14);
    assert!(enumerate_lifts(&tower[0], &root[0]).is_err());
}

#[test]
fn budget_exhaustion() {
    let (g, chain) = builtin_chain(BuiltinGroup::S5);
    let config = SearchConfig { node_budget: Some(50), ..SearchConfig::default() };
    let report = run_tower_search(&g, &chain, Parameters::new(120, 35, 10), &config).unwrap();
    assert_eq!(report.status, SearchStatus::BudgetExhausted);
    assert_eq!(report.verdict, Verdict::Incomplete);
}

#[test]
fn first_level_multisets_for_s5() {
    let (g, chain) = builtin_chain(BuiltinGroup::S5);
    let tower = build_tower(&g, &chain, Parameters::new(120, 35, 10)).unwrap();
    let root = root_candidates(tower[0].params).unwrap();
    let lifts = enumerate_lifts(&tower[1], &root[0]).unwrap();
    let sym = point_symmetries(&g, &tower[1].subgroup, &[], DEFAULT_SYMMETRY_CAP).unwrap();
    let reps: Vec<Vec<u16>> =
        reduce_to_representatives(&lifts, &sym).into_iter().map(MultiFunction::into_values).collect();
    assert_eq!(reps, vec![vec![3, 8, 8, 8, 8], vec![4, 6, 7, 8, 10], vec![6, 6, 6, 6, 11]]);
}

#[test]
fn index_order() {
    assert_eq!(descending_index_order(vec![5, 30, 15, 1]), vec![30, 15, 5, 1]);
}
