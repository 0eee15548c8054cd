//! Replay the sequential learner over a fixed example stream and watch the
//! version space shrink.
//!
//! ```bash
//! cargo run --example learner_simulation
//! ```

use teachdim::class::LabeledExample;
use teachdim::corpus;
use teachdim::prefs::hamming_local;
use teachdim::teach::{simulate, TieMode};

fn main() -> teachdim::Result<()> {
    let warmuth = corpus::warmuth_class();
    let sigma = hamming_local(&warmuth);

    // Steer the Hamming learner from h1 to h3: first x3 positive (the
    // learner hops to its nearest consistent hypothesis h2), then x4
    // positive.
    let steps = [LabeledExample::new(2, true), LabeledExample::new(3, true)];
    let trace = simulate(&sigma, &warmuth, 0, &steps, TieMode::AdversarialVsTarget(2))?;
    for (i, step) in trace.steps.iter().enumerate() {
        println!(
            "step {}: example ({},{}) space {:?} candidates {:?} -> {}",
            i + 1,
            warmuth.instance_name(step.example.instance),
            u8::from(step.example.label),
            step.version_space
                .iter()
                .map(|&h| warmuth.hypothesis_name(h))
                .collect::<Vec<_>>(),
            step.candidates
                .iter()
                .map(|&h| warmuth.hypothesis_name(h))
                .collect::<Vec<_>>(),
            warmuth.hypothesis_name(step.chosen)
        );
    }
    println!(
        "final hypothesis: {}",
        warmuth.hypothesis_name(trace.final_hypothesis())
    );

    // A contradictory stream halts with a flag.
    let bad = [LabeledExample::new(0, true), LabeledExample::new(0, false)];
    let trace = simulate(&sigma, &warmuth, 0, &bad, TieMode::LowestIndex)?;
    println!("contradiction flagged at step: {:?}", trace.contradiction_at);
    Ok(())
}
