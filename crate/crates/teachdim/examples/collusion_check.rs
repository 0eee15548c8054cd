//! Collusion-freeness checks: once a learner's preferred set is a unique
//! hypothesis, consistent follow-up examples must never move it.
//!
//! ```bash
//! cargo run --example collusion_check
//! ```

use teachdim::corpus;
use teachdim::prefs::{collusion_free_check, CollusionCaps, PreferenceFunction};

fn main() -> teachdim::Result<()> {
    let warmuth = corpus::warmuth_class();
    let caps = CollusionCaps::default();

    // Constant preferences are trivially collusion-free.
    let report = collusion_free_check(&corpus::const_sigma(), &warmuth, caps)?;
    println!(
        "const on warmuth: collusion_free={} ({} states)",
        report.collusion_free, report.states_explored
    );

    // The recursive construction's output prefers its current hypothesis
    // whenever consistent, which makes it collusion-free by design.
    let built = teachdim::build_sigma_lvs(&warmuth, 0)?;
    let report = collusion_free_check(&built.sigma, &warmuth, caps)?;
    println!(
        "constructed lvs on warmuth: collusion_free={}",
        report.collusion_free
    );

    // The curated one-example lvs table is NOT collusion-free: after x1
    // positive pins h1 uniquely, the h1-consistent example x2 positive
    // leaves {h1,h6} tied.
    let report = collusion_free_check(&corpus::warmuth_lvs_sigma(), &warmuth, caps)?;
    println!(
        "curated lvs on warmuth: collusion_free={}",
        report.collusion_free
    );
    if let Some(cx) = &report.counterexample {
        println!(
            "  counterexample: space {:?}, current {}, preferred {}, example {:?} -> {:?}",
            cx.version_space
                .iter()
                .map(|&h| warmuth.hypothesis_name(h))
                .collect::<Vec<_>>(),
            warmuth.hypothesis_name(cx.current),
            warmuth.hypothesis_name(cx.preferred),
            cx.example
                .map(|z| format!("({},{})", warmuth.instance_name(z.instance), u8::from(z.label))),
            cx.resulting_preferred
                .iter()
                .map(|&h| warmuth.hypothesis_name(h))
                .collect::<Vec<_>>(),
        );
    }

    // A two-hypothesis class where each prefers the other: caught at once.
    let tiny = teachdim::HypothesisClass::new(
        vec![vec![false, false], vec![false, true]],
        None,
        None,
    )?;
    let anti = PreferenceFunction::Local {
        ranks: vec![vec![1, 0], vec![0, 1]],
    };
    let report = collusion_free_check(&anti, &tiny, caps)?;
    println!("anti-preference on a 2x2 class: collusion_free={}", report.collusion_free);
    Ok(())
}
