//! Invariant checks over seeded random classes: version-space algebra,
//! metric structure, dimension chains, compact-set hygiene, and the
//! structural closure of the preference families.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use teachdim::class::{restrict_patterns, ClassRef, LabeledExample, VersionSpace};
use teachdim::corpus;
use teachdim::dims::{self, NctdCaps};
use teachdim::prefs::{self, candidate_set, evaluate, CollusionCaps, PreferenceFunction};
use teachdim::teach::{self, Cost, CostOptions, TieMode};

fn random_class(rng: &mut ChaCha8Rng, max_hyps: usize, max_inst: usize) -> ClassRef {
    loop {
        let n = rng.gen_range(1..=max_inst);
        let limit = (1usize << n.min(20)).min(max_hyps);
        if limit < 2 {
            continue;
        }
        let m = rng.gen_range(2..=limit);
        if let Ok(class) = corpus::random_class(rng, m, n) {
            return class;
        }
    }
}

fn random_examples(rng: &mut ChaCha8Rng, class: &ClassRef, len: usize) -> Vec<LabeledExample> {
    (0..len)
        .map(|_| LabeledExample::new(rng.gen_range(0..class.num_instances()), rng.gen()))
        .collect()
}

#[test]
fn version_space_is_an_intersection_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let class = random_class(&mut rng, 10, 6);
        let len1 = rng.gen_range(0..4);
        let len2 = rng.gen_range(0..4);
        let z1 = random_examples(&mut rng, &class, len1);
        let z2 = random_examples(&mut rng, &class, len2);
        let both: Vec<LabeledExample> = z1.iter().chain(&z2).copied().collect();
        let v1 = VersionSpace::from_examples(&class, &z1).unwrap();
        let v2 = VersionSpace::from_examples(&class, &z2).unwrap();
        let v12 = VersionSpace::from_examples(&class, &both).unwrap();
        assert_eq!(v12.to_indices(), v1.intersect(&v2).unwrap().to_indices());
        // Antitone: more examples never grow the space.
        assert!(v12.members().is_subset_of(v1.members()));
        assert!(v12.members().is_subset_of(v2.members()));
    }
}

#[test]
fn full_projection_separates_distinct_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let class = random_class(&mut rng, 12, 6);
        let full = VersionSpace::full(&class);
        let all: Vec<usize> = (0..class.num_instances()).collect();
        let patterns = restrict_patterns(&full, &all).unwrap();
        assert_eq!(patterns.len(), class.num_hypotheses());
    }
}

#[test]
fn hamming_is_a_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let class = random_class(&mut rng, 8, 6);
        let m = class.num_hypotheses();
        for a in 0..m {
            assert_eq!(teachdim::hamming(&class, a, a).unwrap(), 0);
            for b in 0..m {
                let ab = teachdim::hamming(&class, a, b).unwrap();
                assert_eq!(ab, teachdim::hamming(&class, b, a).unwrap());
                if a != b {
                    assert!(ab >= 1);
                }
                for c in 0..m {
                    let ac = teachdim::hamming(&class, a, c).unwrap();
                    let cb = teachdim::hamming(&class, c, b).unwrap();
                    assert!(ab <= ac + cb, "triangle inequality");
                }
            }
        }
    }
}

#[test]
fn dimension_chain_nctd_rtd_td() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..60 {
        let class = random_class(&mut rng, 10, 5);
        let full = VersionSpace::full(&class);
        let td = dims::td(&full).unwrap();
        let rtd = dims::rtd(&full).unwrap();
        let (nctd, witness) = dims::nctd(&full, NctdCaps::default()).unwrap();
        assert!(nctd <= rtd, "nctd {nctd} <= rtd {rtd} on {class:?}");
        assert!(rtd <= td, "rtd {rtd} <= td {td} on {class:?}");
        assert!(dims::is_non_clashing(&witness, &full).unwrap());
    }
}

#[test]
fn vcd_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let class = random_class(&mut rng, 10, 6);
        let full = VersionSpace::full(&class);
        let all: Vec<usize> = (0..class.num_instances()).collect();
        let d_full = dims::vcd(&full, &all).unwrap();

        // Hypothesis subset.
        let kept: Vec<usize> = (0..class.num_hypotheses())
            .filter(|_| rng.gen_bool(0.7))
            .collect();
        if !kept.is_empty() {
            let sub = VersionSpace::from_indices(&class, &kept).unwrap();
            assert!(dims::vcd(&sub, &all).unwrap() <= d_full);
        }

        // Instance subset.
        let cols: Vec<usize> = all.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
        if !cols.is_empty() {
            assert!(dims::vcd(&full, &cols).unwrap() <= d_full);
        }
    }
}

#[test]
fn compact_sets_have_no_redundant_columns() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..80 {
        let class = random_class(&mut rng, 10, 6);
        let full = VersionSpace::full(&class);
        let all: Vec<usize> = (0..class.num_instances()).collect();
        let compact = dims::compact_distinguishable_set(&full, &all).unwrap();
        assert!(dims::is_distinguishable(&compact, &full).unwrap());
        // Minimality: every proper subset fails (brute force).
        for drop in 0..compact.len() {
            let mut trial = compact.clone();
            trial.remove(drop);
            let ok = if trial.is_empty() {
                full.len() <= 1
            } else {
                dims::is_distinguishable(&trial, &full).unwrap()
            };
            assert!(!ok, "dropping {} keeps the set distinguishing", compact[drop]);
        }
        // No constant columns, no duplicate or complementary pairs.
        let members: Vec<usize> = full.iter().collect();
        for &x in &compact {
            let column: Vec<bool> = members.iter().map(|&h| class.label(h, x)).collect();
            assert!(
                column.iter().any(|&b| b) && column.iter().any(|&b| !b),
                "column {x} is constant on the class"
            );
        }
        for (&a, &b) in compact.iter().tuple_combinations() {
            let same = members.iter().all(|&h| class.label(h, a) == class.label(h, b));
            let complement = members.iter().all(|&h| class.label(h, a) != class.label(h, b));
            assert!(!same && !complement, "columns {a},{b} are redundant");
        }
    }
}

#[test]
fn minimal_teaching_sets_are_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let class = random_class(&mut rng, 8, 5);
        let full = VersionSpace::full(&class);
        for h in 0..class.num_hypotheses() {
            let set = dims::minimal_teaching_set(h, &full).unwrap();
            // It works.
            let induced = VersionSpace::from_examples(&class, &set).unwrap();
            assert_eq!(
                induced.intersect(&full).unwrap().to_indices(),
                vec![h],
                "teaching set identifies {h}"
            );
            // Nothing smaller works: exhaustive enumeration below its size.
            let n = class.num_instances();
            for size in 0..set.len() {
                for subset in (0..n).combinations(size) {
                    let examples: Vec<LabeledExample> = subset
                        .iter()
                        .map(|&x| LabeledExample::new(x, class.label(h, x)))
                        .collect();
                    let vs = VersionSpace::from_examples(&class, &examples).unwrap();
                    assert_ne!(vs.to_indices(), vec![h], "smaller set suffices for {h}");
                }
            }
        }
    }
}

#[test]
fn constant_preference_candidates_are_the_consistent_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let konst = PreferenceFunction::Const { rank: 0 };
    for _ in 0..50 {
        let class = random_class(&mut rng, 10, 5);
        let full = VersionSpace::full(&class);
        let z = LabeledExample::new(rng.gen_range(0..class.num_instances()), rng.gen());
        let h = rng.gen_range(0..class.num_hypotheses());
        let candidates = candidate_set(&konst, &full, h, z).unwrap();
        let consistent = full.refine(z).unwrap();
        assert_eq!(candidates.to_indices(), consistent.to_indices());
    }
}

#[test]
fn global_tables_ignore_space_and_current() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let class = random_class(&mut rng, 8, 5);
    let ranks: Vec<u32> = (0..class.num_hypotheses() as u32).collect();
    let sigma = PreferenceFunction::Global { ranks };
    let spaces = prefs::reachable_version_spaces(&class, CollusionCaps::default()).unwrap();
    let full = VersionSpace::full(&class);
    for vs in &spaces {
        for h_prime in vs.iter() {
            let base = evaluate(&sigma, h_prime, &full, 0).unwrap();
            for h in 0..class.num_hypotheses() {
                assert_eq!(evaluate(&sigma, h_prime, vs, h).unwrap(), base);
            }
        }
    }
}

/// Structural closure: a tabulated preference that ignores both the version
/// space and the current hypothesis is reproduced exactly by a global table;
/// one that depends on the current hypothesis (the Hamming table) is not
/// space-dependent but fails the current-hypothesis invariance, so no global
/// table is claimed.
#[test]
fn family_intersection_collapses_to_global() {
    let warmuth = corpus::warmuth_class();
    let spaces = prefs::reachable_version_spaces(&warmuth, CollusionCaps::default()).unwrap();
    let full = VersionSpace::full(&warmuth);

    let invariant_both = |sigma: &PreferenceFunction| -> bool {
        spaces.iter().all(|vs| {
            vs.iter().all(|h_prime| {
                let base = evaluate(sigma, h_prime, vs, 0).unwrap();
                (0..warmuth.num_hypotheses())
                    .all(|h| evaluate(sigma, h_prime, vs, h).unwrap() == base)
            })
        }) && spaces.iter().all(|vs| {
            vs.iter().all(|h_prime| {
                evaluate(sigma, h_prime, vs, 0).unwrap()
                    == evaluate(sigma, h_prime, &full, 0).unwrap()
            })
        })
    };

    // Hamming table: current-hypothesis-dependent, hence not collapsible.
    let local = prefs::hamming_local(&warmuth);
    assert!(!invariant_both(&local));

    // The curated gvs table is space-dependent.
    assert!(!invariant_both(&corpus::warmuth_gvs_sigma()));

    // A constant table is both-invariant; the reconstructed global table
    // reproduces it everywhere.
    let konst = PreferenceFunction::Const { rank: 0 };
    assert!(invariant_both(&konst));
    let table: Vec<u32> = (0..warmuth.num_hypotheses())
        .map(|h_prime| evaluate(&konst, h_prime, &full, 0).unwrap())
        .collect();
    let global = PreferenceFunction::Global { ranks: table };
    for vs in &spaces {
        for h_prime in vs.iter() {
            for h in 0..warmuth.num_hypotheses() {
                assert_eq!(
                    evaluate(&global, h_prime, vs, h).unwrap(),
                    evaluate(&konst, h_prime, vs, h).unwrap()
                );
            }
        }
    }
}

#[test]
fn cost_is_at_least_one_even_at_the_target() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..30 {
        let class = random_class(&mut rng, 6, 4);
        let full = VersionSpace::full(&class);
        let sigma = PreferenceFunction::Const { rank: 0 };
        for h in 0..class.num_hypotheses() {
            let cost = teach::d_sigma(&sigma, &full, h, h, CostOptions::default()).unwrap();
            assert!(matches!(cost, Cost::Finite(c) if c >= 1));
        }
    }
}

#[test]
fn extracted_plans_replay_to_their_cost() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let class = random_class(&mut rng, 7, 5);
        let h0 = rng.gen_range(0..class.num_hypotheses());
        let sigmas = [
            PreferenceFunction::Const { rank: 0 },
            prefs::hamming_local(&class),
        ];
        for sigma in sigmas {
            for target in 0..class.num_hypotheses() {
                let plan = teach::extract_plan(&sigma, &class, h0, target, CostOptions::default())
                    .unwrap();
                let cost = teach::d_sigma(
                    &sigma,
                    &VersionSpace::full(&class),
                    h0,
                    target,
                    CostOptions::default(),
                )
                .unwrap();
                assert_eq!(Cost::Finite(plan.cost), cost);
                assert_eq!(plan.steps.len() as u32, plan.cost);
                let trace = teach::simulate(
                    &sigma,
                    &class,
                    h0,
                    &plan.steps,
                    TieMode::AdversarialVsTarget(target),
                )
                .unwrap();
                assert_eq!(trace.final_hypothesis(), target);
                assert_eq!(trace.hypotheses, plan.trace);
            }
        }
    }
}

#[test]
fn constant_preference_is_collusion_free_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let konst = PreferenceFunction::Const { rank: 0 };
    for _ in 0..30 {
        let class = random_class(&mut rng, 8, 5);
        let report = prefs::collusion_free_check(&konst, &class, CollusionCaps::default()).unwrap();
        assert!(report.collusion_free);
    }
}

/// A collusion-free verdict means a taught learner stays put: replay a plan
/// to its target, then append arbitrary target-consistent examples and check
/// the learner never moves off it.
#[test]
fn collusion_free_plans_survive_consistent_suffixes() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let class = random_class(&mut rng, 8, 5);
        let h0 = rng.gen_range(0..class.num_hypotheses());
        let built = teachdim::build_sigma_lvs(&class, h0).unwrap();
        let report =
            prefs::collusion_free_check(&built.sigma, &class, CollusionCaps::default()).unwrap();
        assert!(report.collusion_free);
        for plan in &built.plans {
            let mut steps = plan.steps.clone();
            for _ in 0..3 {
                let x = rng.gen_range(0..class.num_instances());
                steps.push(LabeledExample::new(x, class.label(plan.target, x)));
            }
            let trace = teach::simulate(
                &built.sigma,
                &class,
                h0,
                &steps,
                TieMode::AdversarialVsTarget(plan.target),
            )
            .unwrap();
            assert_eq!(trace.final_hypothesis(), plan.target);
            // Once reached, never left.
            let arrived = trace
                .hypotheses
                .iter()
                .position(|&h| h == plan.target)
                .unwrap();
            assert!(trace.hypotheses[arrived..].iter().all(|&h| h == plan.target));
        }
    }
}

#[test]
fn class_formats_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let class = random_class(&mut rng, 10, 6);
        let csv = teachdim::class_to_csv(&class);
        let from_csv = teachdim::class_from_csv(&csv).unwrap();
        assert_eq!(teachdim::class_to_csv(&from_csv), csv);
        let json = teachdim::class_to_json(&class);
        let from_json = teachdim::class_from_json(&json).unwrap();
        assert_eq!(teachdim::class_to_json(&from_json), json);
    }
}
