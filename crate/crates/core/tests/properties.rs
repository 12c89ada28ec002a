use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use diffset::equidist::{inner_distribution, is_equidistributed, pushed_parameters, pushout, variance_identity_holds};
use diffset::group::catalog::small_groups;
use diffset::scheme::{quotient_between, schurian_scheme, thin_scheme};
use diffset::search::{brute_force_difference_sets, run_tower_search, SearchConfig, Verdict};
use diffset::symmetry::{automorphisms, automorphisms_fixing, canonical_form, orbit, point_symmetries};
use diffset::{FiniteGroup, MultiFunction, Parameters, Subgroup, SubgroupChain};

/// Every group of order at most 12 with all of its subgroups.
fn groups() -> &'static [(FiniteGroup, Vec<Subgroup>)] {
    static CELL: OnceLock<Vec<(FiniteGroup, Vec<Subgroup>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        small_groups(12)
            .unwrap()
            .into_iter()
            .filter(|g| g.order() > 1)
            .map(|g| {
                let subs = g.all_subgroups();
                (g, subs)
            })
            .collect()
    })
}

/// Picks `(G, K, H)` with `K ≤ H`.
fn pick(gi: usize, a: usize, b: usize) -> (&'static FiniteGroup, &'static Subgroup, &'static Subgroup) {
    let (g, subs) = &groups()[gi % groups().len()];
    let k = &subs[a % subs.len()];
    let over: Vec<&Subgroup> = subs.iter().filter(|h| k.is_subgroup_of(h)).collect();
    (g, k, over[b % over.len()])
}

fn function(points: usize, seed: &[u16]) -> MultiFunction<u16> {
    MultiFunction::new((0..points).map(|i| seed[i % seed.len()]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pushout_keeps_mass_and_fibers_are_even(gi in 0usize..64, a in 0usize..64, b in 0usize..64,
                                              seed in prop::collection::vec(0u16..6, 1..13)) {
        let (g, k, h) = pick(gi, a, b);
        let m = quotient_between(g, h, k).unwrap();
        let size = h.order() / k.order();
        prop_assert!(m.fibers().iter().all(|f| f.len() == size));
        let f = function(m.source().points(), &seed);
        prop_assert_eq!(pushout(&m, &f).unwrap().mass(), f.mass());
    }

    #[test]
    fn color_forms_push_forward(gi in 0usize..64, a in 0usize..64, b in 0usize..64,
                                s in prop::collection::vec(-5i64..6, 1..13),
                                t in prop::collection::vec(-5i64..6, 1..13)) {
        let (g, k, h) = pick(gi, a, b);
        let m = quotient_between(g, h, k).unwrap();
        let n = m.source().points();
        let gv: Vec<i64> = (0..n).map(|i| s[i % s.len()]).collect();
        let hv: Vec<i64> = (0..n).map(|i| t[(i * 7 + 3) % t.len()]).collect();
        let push = |v: &[i64]| -> Vec<i64> {
            m.fibers().iter().map(|f| f.iter().map(|&x| v[x]).sum()).collect()
        };
        let fine = m.source().color_forms(&gv, &hv).unwrap();
        let coarse = m.target().color_forms(&push(&gv), &push(&hv)).unwrap();
        let mut summed = vec![0i64; coarse.len()];
        for (i, &f) in fine.iter().enumerate() {
            summed[m.color_map()[i]] += f;
        }
        prop_assert_eq!(summed, coarse);
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(gi in 0usize..64, a in 0usize..64,
                                            seed in prop::collection::vec(0u16..4, 1..13),
                                            pick_perm in 0usize..1000) {
        let (g, subs) = &groups()[gi % groups().len()];
        let h = &subs[a % subs.len()];
        let auts = automorphisms(g, 1 << 20).unwrap();
        let sym = point_symmetries(g, h, &automorphisms_fixing(&auts, h), 1 << 16).unwrap();
        let f = function(sym.points(), &seed);
        let c = canonical_form(&f, &sym);
        prop_assert_eq!(&canonical_form(&c, &sym), &c);
        let p = &sym.perms()[pick_perm % sym.order()];
        prop_assert_eq!(&canonical_form(&f.compose(p), &sym), &c);
        let orb = orbit(&f, &sym);
        prop_assert_eq!(orb.first(), Some(&c));
        prop_assert_eq!(sym.order() % orb.len(), 0);
    }

    #[test]
    fn symmetries_keep_equidistribution(gi in 0usize..64, a in 0usize..64,
                                        seed in prop::collection::vec(0u16..3, 1..13),
                                        pick_perm in 0usize..1000) {
        let (g, subs) = &groups()[gi % groups().len()];
        let h = &subs[a % subs.len()];
        let auts = automorphisms(g, 1 << 20).unwrap();
        let sym = point_symmetries(g, h, &automorphisms_fixing(&auts, h), 1 << 16).unwrap();
        let rp = schurian_scheme(g, h);
        let f = function(rp.points(), &seed);
        let p = &sym.perms()[pick_perm % sym.order()];
        let before = is_equidistributed(&rp, &f).unwrap().map(|e| e.params);
        let after = is_equidistributed(&rp, &f.compose(p)).unwrap().map(|e| e.params);
        prop_assert_eq!(before, after);
        let mut d0: Vec<_> = inner_distribution(&rp, &f).unwrap().per_color().to_vec();
        let mut d1: Vec<_> = inner_distribution(&rp, &f.compose(p)).unwrap().per_color().to_vec();
        d0.sort();
        d1.sort();
        prop_assert_eq!(d0, d1);
    }

    #[test]
    fn automorphisms_form_a_group(gi in 0usize..64) {
        let (g, _) = &groups()[gi % groups().len()];
        let auts = automorphisms(g, 1 << 20).unwrap();
        let set: BTreeSet<Vec<usize>> = auts.iter().map(|a| a.images().to_vec()).collect();
        prop_assert_eq!(set.len(), auts.len());
        for a in auts.iter().take(6) {
            prop_assert!(set.contains(a.inverse().images()));
            for b in auts.iter().take(6) {
                prop_assert!(set.contains(a.then(b).images()));
            }
        }
        for a in &auts {
            for x in 0..g.order() {
                for y in 0..g.order() {
                    prop_assert_eq!(a.apply(g.mul(x, y)), g.mul(a.apply(x), a.apply(y)));
                }
            }
        }
    }
}

/// `(G, k, λ)` with integral `λ` and `2 ≤ k ≤ v/2`, over groups of order
/// at most 12, together with the difference sets from the oracle.
fn difference_set_cases() -> Vec<(&'static FiniteGroup, Parameters, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for (g, _) in groups() {
        let v = g.order();
        for k in 2..=v / 2 {
            if (k * (k - 1)) % (v - 1) != 0 {
                continue;
            }
            let lambda = (k * (k - 1) / (v - 1)) as i64;
            let sets = brute_force_difference_sets(g, k).unwrap();
            out.push((g, Parameters::new(v, k as u64, lambda), sets));
        }
    }
    out
}

#[test]
fn pushouts_satisfy_variance_and_lambda_rules() {
    for (g, p, sets) in difference_set_cases() {
        let subs = g.all_subgroups();
        let thin = Arc::new(thin_scheme(g));
        for d in &sets {
            let chi = MultiFunction::<u16>::characteristic(g.order(), d).unwrap();
            assert!(variance_identity_holds(p, &chi));
            for h in &subs {
                let m = quotient_between(g, h, &g.trivial_subgroup()).unwrap();
                assert_eq!(m.source().points(), thin.points());
                let pushed = pushout(&m, &chi).unwrap();
                let e = g.order() / h.order();
                let expected = pushed_parameters(p, e).unwrap();
                assert!(variance_identity_holds(expected, &pushed));
                let found = is_equidistributed(m.target(), &pushed).unwrap().unwrap();
                if !found.vacuous {
                    assert_eq!(found.params, expected, "{} with |H| = {}", g.name(), h.order());
                }
            }
        }
    }
}

/// With reduction, the final representatives meet every class of the
/// oracle's difference sets, and without it the lists coincide.
#[test]
fn two_level_towers_agree_with_the_oracle() {
    for (g, p, sets) in difference_set_cases() {
        let auts = automorphisms(g, 1 << 20).unwrap();
        let trivial = g.trivial_subgroup();
        let full = point_symmetries(g, &trivial, &auts, 1 << 20).unwrap();
        let expected_classes: BTreeSet<Vec<u16>> = sets
            .iter()
            .map(|d| canonical_form(&MultiFunction::<u16>::characteristic(g.order(), d).unwrap(), &full).into_values())
            .collect();
        for h in g.all_subgroups() {
            if h.order() == 1 || h.order() == g.order() {
                continue;
            }
            let chain = SubgroupChain::new(g, vec![g.whole(), h.clone(), trivial.clone()]).unwrap();
            let plain = SearchConfig { reduce_by_equivalence: false, workers: 1, ..SearchConfig::default() };
            let r = run_tower_search(g, &chain, p, &plain).unwrap();
            assert_eq!(r.final_sets, sets, "{} {p} via |H| = {}", g.name(), h.order());

            let reduced = SearchConfig { workers: 1, ..SearchConfig::default() };
            let r = run_tower_search(g, &chain, p, &reduced).unwrap();
            let got: BTreeSet<Vec<u16>> = r
                .final_sets
                .iter()
                .map(|d| canonical_form(&MultiFunction::<u16>::characteristic(g.order(), d).unwrap(), &full).into_values())
                .collect();
            assert_eq!(got, expected_classes, "{} {p} via |H| = {}", g.name(), h.order());
            match r.verdict {
                Verdict::Nonexistent { .. } => assert!(sets.is_empty()),
                Verdict::Found { count } => assert_eq!(count, r.final_sets.len()),
                other => panic!("unexpected verdict {other:?}"),
            }
        }
    }
}
