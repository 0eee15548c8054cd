//! Acceptance suite: one test per criterion, each printing a pass line with
//! the quantities it checked. Random-class criteria use fixed seeds.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use teachdim::class::{ClassRef, LabeledExample, VersionSpace};
use teachdim::corpus;
use teachdim::dims::{self, NctdCaps};
use teachdim::prefs::{self, CollusionCaps, PreferenceFunction, Rank};
use teachdim::teach::{self, Cost, CostOptions, TieMode};
use teachdim::{construct, RecursionRecord};

fn pass(criterion: u32, message: &str) {
    println!("[PASS] criterion {criterion:02}: {message}");
}

/// Random class with at least two hypotheses (singleton classes have
/// td = rtd = 0 while the cost recurrence charges one example, so the
/// equality criteria exclude them by construction).
fn random_class(rng: &mut ChaCha8Rng, max_hyps: usize, max_inst: usize) -> ClassRef {
    loop {
        let n = rng.gen_range(1..=max_inst);
        let limit = (1usize << n).min(max_hyps);
        if limit < 2 {
            continue;
        }
        let m = rng.gen_range(2..=limit);
        if let Ok(class) = corpus::random_class(rng, m, n) {
            return class;
        }
    }
}

#[test]
fn criterion_01_warmuth_dimensions() {
    let start = Instant::now();
    let warmuth = corpus::warmuth_class();
    let report = dims::dimension_report(&warmuth, NctdCaps::default()).unwrap();
    assert_eq!(report.td, 3);
    assert_eq!(report.rtd, 3);
    assert_eq!(report.nctd, 2);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "dimension report took {elapsed:?}, budget 5s"
    );
    pass(1, &format!("warmuth td=3 rtd=3 nctd=2 exact in {elapsed:?}"));
}

#[test]
fn criterion_02_warmuth_vcd() {
    let warmuth = corpus::warmuth_class();
    let full = VersionSpace::full(&warmuth);
    let vcd = dims::vcd_full(&full).unwrap();
    assert_eq!(vcd, 2);
    // Exhaustive shattering cross-check: some pair shattered, no triple.
    let mut pair_shattered = false;
    for a in 0..5 {
        for b in a + 1..5 {
            let mut patterns = std::collections::HashSet::new();
            for h in 0..10 {
                patterns.insert((warmuth.label(h, a), warmuth.label(h, b)));
            }
            if patterns.len() == 4 {
                pair_shattered = true;
            }
        }
    }
    assert!(pair_shattered);
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                let mut patterns = std::collections::HashSet::new();
                for h in 0..10 {
                    patterns.insert((
                        warmuth.label(h, a),
                        warmuth.label(h, b),
                        warmuth.label(h, c),
                    ));
                }
                assert!(patterns.len() < 8, "triple ({a},{b},{c}) shattered");
            }
        }
    }
    let rtd = dims::rtd(&full).unwrap();
    assert!(rtd > vcd, "rtd {rtd} must exceed vcd {vcd}");
    pass(2, "warmuth vcd=2 by exhaustive shattering; rtd=3 > vcd");
}

#[test]
fn criterion_03_gap6_dimensions() {
    let gap6 = corpus::gap6_class();
    let report = dims::dimension_report(&gap6, NctdCaps::default()).unwrap();
    assert_eq!(report.td, 3);
    assert_eq!(report.rtd, 2);
    assert_eq!(report.nctd, 1);
    let full = VersionSpace::full(&gap6);
    assert!(dims::is_non_clashing(&report.nctd_map, &full).unwrap());
    pass(3, "gap6 td=3 rtd=2 nctd=1 exact; witness map is non-clashing");
}

#[test]
fn criterion_04_warmuth_recursive_construction() {
    let warmuth = corpus::warmuth_class();
    let built = construct::build_sigma_lvs(&warmuth, 0).unwrap();
    let td = teach::td_sigma(&built.sigma, &warmuth, 0, CostOptions::default()).unwrap();
    assert_eq!(td, Cost::Finite(2));
    let vcd = dims::vcd_full(&VersionSpace::full(&warmuth)).unwrap();
    assert_eq!(vcd, 2);
    assert!(matches!(td, Cost::Finite(c) if c as usize <= vcd));
    let collusion =
        prefs::collusion_free_check(&built.sigma, &warmuth, CollusionCaps::default()).unwrap();
    assert!(collusion.collusion_free);
    for plan in &built.plans {
        let trace = teach::simulate(
            &built.sigma,
            &warmuth,
            0,
            &plan.steps,
            TieMode::AdversarialVsTarget(plan.target),
        )
        .unwrap();
        assert_eq!(trace.final_hypothesis(), plan.target);
        assert!(trace.contradiction_at.is_none());
    }
    pass(
        4,
        "recursive construction on warmuth: td_sigma=2 <= vcd=2, collusion-free, all plans replay",
    );
}

#[test]
fn criterion_05_curated_lvs_teaches_in_one() {
    let warmuth = corpus::warmuth_class();
    let sigma = corpus::warmuth_lvs_sigma();
    let td = teach::td_sigma(&sigma, &warmuth, 0, CostOptions::default()).unwrap();
    assert_eq!(td, Cost::Finite(1));
    pass(5, "curated lvs preference teaches every warmuth target in 1 example");
}

#[test]
fn criterion_06_const_equals_worst_case_td() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5106);
    let konst = PreferenceFunction::Const { rank: 0 };
    let mut checked = 0usize;
    for _ in 0..200 {
        let class = random_class(&mut rng, 8, 6);
        let td = dims::td(&VersionSpace::full(&class)).unwrap();
        for h0 in 0..class.num_hypotheses() {
            let cost = teach::td_sigma(&konst, &class, h0, CostOptions::default()).unwrap();
            assert_eq!(
                cost,
                Cost::Finite(td as u32),
                "constant-preference cost must equal td on {class:?} from {h0}"
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "suite took {elapsed:?}");
    pass(
        6,
        &format!("td_sigma(const)=td on 200 random classes, {checked} start states, {elapsed:?}"),
    );
}

#[test]
fn criterion_07_global_bruteforce_equals_rtd() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5107);
    for _ in 0..50 {
        let class = random_class(&mut rng, 6, 5);
        let rtd = dims::rtd(&VersionSpace::full(&class)).unwrap();
        let h0 = rng.gen_range(0..class.num_hypotheses());
        let best =
            teach::sigma_td_global_bruteforce(&class, h0, teach::GlobalOracleCaps::default())
                .unwrap();
        assert_eq!(
            best,
            Cost::Finite(rtd as u32),
            "global brute force must equal rtd on {class:?}"
        );
    }
    pass(7, "global-family brute force equals rtd on 50 random classes");
}

fn check_partition_records(class: &ClassRef, records: &[RecursionRecord]) {
    for record in records {
        let search = VersionSpace::from_indices(class, &record.search_space).unwrap();
        let parent_vcd = dims::vcd(&search, &record.compact).unwrap();
        let mut seen: Vec<usize> = Vec::new();
        for block in &record.blocks {
            assert!(!block.members.is_empty(), "blocks are non-empty");
            for &h in &block.members {
                assert!(!seen.contains(&h), "blocks are disjoint");
                seen.push(h);
                // Property (ii): members carry the opposite of the
                // reference's label on the pivot.
                assert_eq!(
                    class.label(h, block.pivot),
                    block.label,
                    "pivot label uniform on block"
                );
            }
            assert_ne!(
                class.label(record.reference, block.pivot),
                block.label,
                "pivot label opposes the reference"
            );
            // Property (i): the block admits a compact set of lower VC
            // dimension within the remaining instances.
            let members = VersionSpace::from_indices(class, &block.members).unwrap();
            let remaining: Vec<usize> = record
                .compact
                .iter()
                .copied()
                .filter(|&x| x != block.pivot)
                .collect();
            let block_compact = dims::compact_distinguishable_set(&members, &remaining).unwrap();
            let block_vcd = if block_compact.is_empty() {
                0
            } else {
                dims::vcd(&members, &block_compact).unwrap()
            };
            // Records only exist for search spaces of two or more
            // hypotheses, whose vcd on a compact set is at least 1.
            assert!(
                block_vcd < parent_vcd,
                "vcd must descend: block {block_vcd} vs parent {parent_vcd}"
            );
        }
        // Final block: the reference alone; union covers the search space.
        seen.push(record.reference);
        let mut sorted = seen.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, record.search_space, "blocks partition the space");
    }
}

#[test]
fn criterion_08_construction_bounded_by_vcd() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5108);
    for round in 0..200 {
        let class = random_class(&mut rng, 10, 6);
        let h0 = rng.gen_range(0..class.num_hypotheses());
        let built = construct::build_sigma_lvs(&class, h0).unwrap();
        let vcd = dims::vcd_full(&VersionSpace::full(&class)).unwrap();
        let td = teach::td_sigma(&built.sigma, &class, h0, CostOptions::default()).unwrap();
        match td {
            Cost::Finite(c) => assert!(
                c as usize <= vcd,
                "round {round}: cost {c} exceeds vcd {vcd} on {class:?}"
            ),
            Cost::Unreachable => panic!("round {round}: construction unreachable"),
        }
        check_partition_records(&class, &built.records);
    }
    pass(
        8,
        "recursive construction stays within vcd on 200 random classes; partition invariants hold at every level",
    );
}

#[test]
fn criterion_09_powerset_bounds_and_tree() {
    for k in [2usize, 3, 4] {
        let class = corpus::powerset_class(k).unwrap();
        let (nctd, map) = dims::nctd(&VersionSpace::full(&class), NctdCaps::default()).unwrap();
        assert!(dims::is_non_clashing(&map, &VersionSpace::full(&class)).unwrap());
        assert!(
            nctd >= k.div_ceil(2),
            "nctd(powerset-{k}) = {nctd} below ceil(k/2)"
        );
    }
    let built = construct::build_sigma_local_powerset(7, 0).unwrap();
    let td = teach::td_sigma(&built.sigma, &built.class, 0, CostOptions::default()).unwrap();
    assert_eq!(td, Cost::Finite(3));
    // Left-branch anchors: rows 1000000, 1100000, 1110000.
    assert_eq!(built.plans[64].steps, vec![LabeledExample::new(0, true)]);
    assert_eq!(
        built.plans[96].steps,
        vec![LabeledExample::new(0, true), LabeledExample::new(1, true)]
    );
    assert_eq!(
        built.plans[112].steps,
        vec![LabeledExample::new(0, true), LabeledExample::new(2, true)]
    );
    pass(
        9,
        "nctd(powerset k) >= ceil(k/2) for k=2,3,4 (exact values); powerset-7 local tree reaches td_sigma=3 with anchored plans",
    );
}

#[test]
fn criterion_10_counting_bound() {
    for d in 1..=20u32 {
        let k = dims::sigma_td_lower_bound(d).unwrap();
        let target = 1u128 << d;
        let base = 2u128 * u128::from(d);
        let upper = base.pow(k + 1);
        assert!(
            target <= upper,
            "d={d}: 2^d must not exceed (2d)^(k+1) at k={k}"
        );
        // Strictness holds except where the two sides coincide exactly
        // (d = 1, 2, 8 give 2^d = (2d)^(k+1)).
        if ![1, 2, 8].contains(&d) {
            assert!(target < upper, "d={d}: bound must be strict");
        }
        // Minimality: k itself is not enough.
        assert!(target > base.pow(k), "d={d}: k={k} is not minimal");
    }
    // Computed global-family dimensions of small powerset classes respect
    // the bound: brute force up to 8 hypotheses, the rtd equivalence above.
    for d in 1..=3usize {
        let class = corpus::powerset_class(d).unwrap();
        let best =
            teach::sigma_td_global_bruteforce(&class, 0, teach::GlobalOracleCaps::default())
                .unwrap();
        let bound = dims::sigma_td_lower_bound(d as u32).unwrap();
        match best {
            Cost::Finite(c) => assert!(c >= bound, "d={d}: computed {c} below bound {bound}"),
            Cost::Unreachable => panic!("d={d}: unreachable"),
        }
    }
    let p4 = corpus::powerset_class(4).unwrap();
    let rtd = dims::rtd(&VersionSpace::full(&p4)).unwrap() as u32;
    assert!(rtd >= dims::sigma_td_lower_bound(4).unwrap());
    pass(
        10,
        "counting bound verified for d=1..20 (equality exactly at d=1,2,8); small powerset dimensions respect it",
    );
}

/// Random preference function of each family for the oracle-equivalence and
/// collusion suites; uses small ranks so ties occur.
fn random_sigmas(rng: &mut ChaCha8Rng, class: &ClassRef) -> Vec<PreferenceFunction> {
    let m = class.num_hypotheses();
    let konst = PreferenceFunction::Const { rank: 0 };
    let mut global_ranks: Vec<Rank> = (0..m as Rank).collect();
    for i in (1..global_ranks.len()).rev() {
        global_ranks.swap(i, rng.gen_range(0..=i));
    }
    let global = PreferenceFunction::Global { ranks: global_ranks };
    let local = PreferenceFunction::Local {
        ranks: (0..m)
            .map(|_| (0..m).map(|_| rng.gen_range(0..3 as Rank)).collect())
            .collect(),
    };
    let mut gvs_entries = std::collections::HashMap::new();
    for _ in 0..3 {
        let mut vs: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
        if vs.is_empty() {
            vs.push(rng.gen_range(0..m));
        }
        let h = vs[rng.gen_range(0..vs.len())];
        gvs_entries
            .entry(vs)
            .or_insert_with(BTreeMap::new)
            .insert(h, 0 as Rank);
    }
    let gvs = PreferenceFunction::Gvs {
        default: 1,
        entries: gvs_entries,
    };
    let mut lvs_entries = std::collections::HashMap::new();
    for _ in 0..3 {
        let mut vs: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
        if vs.is_empty() {
            vs.push(rng.gen_range(0..m));
        }
        let h = rng.gen_range(0..m);
        let target = vs[rng.gen_range(0..vs.len())];
        lvs_entries
            .entry((vs, h))
            .or_insert_with(BTreeMap::new)
            .insert(target, rng.gen_range(1..3 as Rank));
    }
    let lvs = PreferenceFunction::Lvs {
        self_default: if rng.gen_bool(0.5) { 0 } else { m as Rank + 1 },
        other_default: m as Rank + 1,
        entries: lvs_entries,
    };
    vec![konst, global, local, gvs, lvs]
}

#[test]
fn criterion_11_memoized_equals_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5111);
    let mut comparisons = 0usize;
    for _ in 0..100 {
        let class = random_class(&mut rng, 5, 4);
        let full = VersionSpace::full(&class);
        for sigma in random_sigmas(&mut rng, &class) {
            for h0 in 0..class.num_hypotheses() {
                for target in 0..class.num_hypotheses() {
                    let memoized =
                        teach::d_sigma(&sigma, &full, h0, target, CostOptions::default()).unwrap();
                    let naive =
                        teach::d_sigma_naive(&sigma, &full, h0, target, CostOptions::default())
                            .unwrap();
                    assert_eq!(
                        memoized,
                        naive,
                        "family {} h0={h0} target={target} on {class:?}",
                        sigma.family_name()
                    );
                    comparisons += 1;
                }
            }
        }
    }
    pass(
        11,
        &format!("memoized cost equals naive game-tree descent ({comparisons} comparisons, all five families)"),
    );
}

/// Exhaustive collusion oracle: enumerates every consistent refinement set S
/// (all subsets of the preferred hypothesis's examples), not just single
/// steps.
fn collusion_free_exhaustive(sigma: &PreferenceFunction, class: &ClassRef) -> bool {
    let spaces = prefs::reachable_version_spaces(class, CollusionCaps::default()).unwrap();
    let n = class.num_instances();
    for vs in &spaces {
        for h in 0..class.num_hypotheses() {
            let preferred = argmin_set(sigma, vs, h);
            let [p] = preferred.as_slice() else {
                continue;
            };
            let p = *p;
            for subset in 0..(1usize << n) {
                let examples: Vec<LabeledExample> = (0..n)
                    .filter(|x| subset >> x & 1 == 1)
                    .map(|x| LabeledExample::new(x, class.label(p, x)))
                    .collect();
                let mut refined = vs.clone();
                for &z in &examples {
                    refined = refined.refine(z).unwrap();
                }
                if argmin_set(sigma, &refined, p) != vec![p] {
                    return false;
                }
            }
        }
    }
    true
}

fn argmin_set(sigma: &PreferenceFunction, vs: &VersionSpace, h: usize) -> Vec<usize> {
    let mut best: Option<Rank> = None;
    let mut out = Vec::new();
    for candidate in vs.iter() {
        let rank = prefs::evaluate(sigma, candidate, vs, h).unwrap();
        match best {
            Some(b) if rank > b => {}
            Some(b) if rank == b => out.push(candidate),
            _ => {
                best = Some(rank);
                out = vec![candidate];
            }
        }
    }
    out
}

#[test]
fn criterion_12_collusion_checker_equals_exhaustive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5112);
    let mut verdicts = [0usize; 2];
    for _ in 0..50 {
        let class = random_class(&mut rng, 6, 4);
        for sigma in random_sigmas(&mut rng, &class) {
            let fast = prefs::collusion_free_check(&sigma, &class, CollusionCaps::default())
                .unwrap()
                .collusion_free;
            let slow = collusion_free_exhaustive(&sigma, &class);
            assert_eq!(
                fast,
                slow,
                "checker disagrees with oracle for {} on {class:?}",
                sigma.family_name()
            );
            verdicts[usize::from(fast)] += 1;
        }
        // The recursive construction's output is always collusion-free.
        let h0 = rng.gen_range(0..class.num_hypotheses());
        let built = construct::build_sigma_lvs(&class, h0).unwrap();
        let report =
            prefs::collusion_free_check(&built.sigma, &class, CollusionCaps::default()).unwrap();
        assert!(report.collusion_free, "construction output must be collusion-free");
    }
    assert!(verdicts[0] > 0, "suite never exercised a violation");
    assert!(verdicts[1] > 0, "suite never exercised a clean verdict");
    pass(
        12,
        &format!(
            "single-step checker equals exhaustive oracle on 50 random classes ({} violations, {} clean); construction outputs always collusion-free",
            verdicts[0], verdicts[1]
        ),
    );
}
