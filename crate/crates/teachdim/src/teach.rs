//! Worst-case teaching cost under a fixed preference function: the cost
//! recurrence, plan extraction, the interaction-protocol simulator, and the
//! brute-force oracle over global preference tables.
//!
//! The cost of steering a learner from `h` to `h_star` inside version space
//! `H` is 1 when one example makes the candidate set exactly `{h_star}`, and
//! otherwise `1 + min over examples of max over candidates of the recursive
//! cost`. Teacher moves are the examples labeled by the target; moves that
//! empty the candidate set or drop the target are excluded. Cycles (states a
//! teacher cannot force progress from) evaluate to `Unreachable`.

use std::collections::HashMap;

use itertools::Itertools;

use crate::bits::IndexSet;
use crate::class::{ClassRef, LabeledExample, VersionSpace};
use crate::error::{Error, Result};
use crate::prefs::{preferred_set, PreferenceFunction, Rank};

/// A teaching cost: a finite example count or unreachable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cost {
    Finite(u32),
    Unreachable,
}

impl Cost {
    pub fn finite(self) -> Option<u32> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.cmp(b),
            (Cost::Finite(_), Cost::Unreachable) => std::cmp::Ordering::Less,
            (Cost::Unreachable, Cost::Finite(_)) => std::cmp::Ordering::Greater,
            (Cost::Unreachable, Cost::Unreachable) => std::cmp::Ordering::Equal,
        }
    }
}

/// Evaluation options. The recurrence charges at least one example even when
/// the learner already holds the target; `zero_cost_at_target` switches to
/// 0-cost for that state instead.
#[derive(Clone, Copy, Debug, Default)]
pub struct CostOptions {
    pub zero_cost_at_target: bool,
}

/// Memoized cost evaluator for one (class, sigma, target) triple. The memo is
/// keyed by version space and holds the cost vector over current hypotheses;
/// within one version space the mutually-dependent states (reachable through
/// redundant examples that leave the space unchanged) are solved to their
/// least fixed point by sweeping.
pub struct CostTable<'a> {
    class: ClassRef,
    sigma: &'a PreferenceFunction,
    target: usize,
    options: CostOptions,
    memo: HashMap<IndexSet, Vec<Cost>>,
}

impl<'a> CostTable<'a> {
    pub fn new(
        class: &ClassRef,
        sigma: &'a PreferenceFunction,
        target: usize,
        options: CostOptions,
    ) -> Result<Self> {
        class.check_hypothesis(target)?;
        sigma.validate_for(class)?;
        Ok(CostTable {
            class: class.clone(),
            sigma,
            target,
            options,
            memo: HashMap::new(),
        })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Cost from `(vs, h)`; `h` and the target must be members of `vs`.
    pub fn cost(&mut self, vs: &VersionSpace, h: usize) -> Result<Cost> {
        vs.check_member(h)?;
        vs.check_member(self.target)?;
        let vec = self.eval_space(vs.members());
        Ok(vec[h])
    }

    pub(crate) fn cost_unchecked(&mut self, members: &IndexSet, h: usize) -> Cost {
        self.eval_space(members)[h]
    }

    /// Teacher moves from a space: one example per instance, labeled by the
    /// target (anything else eliminates it).
    fn moves(&self, members: &IndexSet) -> Vec<(LabeledExample, IndexSet)> {
        let n = self.class.num_instances();
        let mut out = Vec::with_capacity(n);
        for x in 0..n {
            let z = LabeledExample::new(x, self.class.label(self.target, x));
            let mut refined = IndexSet::empty(self.class.num_hypotheses());
            for g in members.iter() {
                if self.class.label(g, z.instance) == z.label {
                    refined.insert(g);
                }
            }
            out.push((z, refined));
        }
        out
    }

    fn eval_space(&mut self, members: &IndexSet) -> Vec<Cost> {
        if let Some(v) = self.memo.get(members) {
            return v.clone();
        }
        let m = self.class.num_hypotheses();
        let moves = self.moves(members);

        // Child spaces first: strict refinements recurse (the space only ever
        // shrinks), same-space moves join the fixed-point sweep below.
        let mut child_costs: Vec<Option<Vec<Cost>>> = Vec::with_capacity(moves.len());
        for (_, refined) in &moves {
            if refined == members {
                child_costs.push(None);
            } else {
                child_costs.push(Some(self.eval_space(refined)));
            }
        }

        // Candidate sets per (move, current hypothesis) are fixed; compute
        // them once.
        let mut candidates: Vec<Vec<Vec<usize>>> = Vec::with_capacity(moves.len());
        for (_, refined) in &moves {
            let refined_vs = VersionSpace::from_members(&self.class, refined.clone());
            let per_h: Vec<Vec<usize>> = (0..m)
                .map(|h| {
                    if !members.contains(h) {
                        Vec::new()
                    } else {
                        preferred_set(self.sigma, &refined_vs, h).to_indices()
                    }
                })
                .collect();
            candidates.push(per_h);
        }

        let mut costs = vec![Cost::Unreachable; m];
        if self.options.zero_cost_at_target && members.contains(self.target) {
            costs[self.target] = Cost::Finite(0);
        }
        // Least-fixed-point sweep: values only decrease from Unreachable.
        loop {
            let mut changed = false;
            for h in members.iter() {
                if self.options.zero_cost_at_target && h == self.target {
                    continue;
                }
                let mut best = Cost::Unreachable;
                for (mi, (_, refined)) in moves.iter().enumerate() {
                    if !refined.contains(self.target) {
                        continue;
                    }
                    let cand = &candidates[mi][h];
                    if cand.is_empty() {
                        continue;
                    }
                    if cand.len() == 1 && cand[0] == self.target {
                        best = best.min(Cost::Finite(1));
                        continue;
                    }
                    let mut worst = Cost::Finite(0);
                    for &g in cand {
                        let sub = match &child_costs[mi] {
                            Some(vec) => vec[g],
                            None => costs[g],
                        };
                        worst = worst.max(sub);
                        if worst == Cost::Unreachable {
                            break;
                        }
                    }
                    if let Cost::Finite(w) = worst {
                        best = best.min(Cost::Finite(w + 1));
                    }
                }
                if best < costs[h] {
                    costs[h] = best;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.memo.insert(members.clone(), costs.clone());
        costs
    }
}

/// Worst-case optimal cost for steering the learner from `h` to `h_star`
/// within `vs`, memoized.
pub fn d_sigma(
    sigma: &PreferenceFunction,
    vs: &VersionSpace,
    h: usize,
    h_star: usize,
    options: CostOptions,
) -> Result<Cost> {
    vs.check_member(h)?;
    vs.check_member(h_star)?;
    let mut table = CostTable::new(vs.class(), sigma, h_star, options)?;
    table.cost(vs, h)
}

/// Worst-case optimal cost for teaching any target from `h0`; unreachable for
/// any target makes the whole dimension unreachable.
pub fn td_sigma(
    sigma: &PreferenceFunction,
    class: &ClassRef,
    h0: usize,
    options: CostOptions,
) -> Result<Cost> {
    class.check_hypothesis(h0)?;
    let full = VersionSpace::full(class);
    let mut worst = Cost::Finite(0);
    for target in 0..class.num_hypotheses() {
        let mut table = CostTable::new(class, sigma, target, options)?;
        let cost = table.cost(&full, h0)?;
        worst = worst.max(cost);
        if worst == Cost::Unreachable {
            break;
        }
    }
    Ok(worst)
}

/// Reference implementation of the cost recurrence: direct game-tree descent
/// with no memoization; states repeated along the current line evaluate as
/// unreachable. Exponential; oracle use only.
pub fn d_sigma_naive(
    sigma: &PreferenceFunction,
    vs: &VersionSpace,
    h: usize,
    h_star: usize,
    options: CostOptions,
) -> Result<Cost> {
    vs.check_member(h)?;
    vs.check_member(h_star)?;
    sigma.validate_for(vs.class())?;
    let mut path: Vec<(IndexSet, usize)> = Vec::new();
    Ok(naive_rec(
        sigma,
        vs.class(),
        vs.members(),
        h,
        h_star,
        options,
        &mut path,
    ))
}

fn naive_rec(
    sigma: &PreferenceFunction,
    class: &ClassRef,
    members: &IndexSet,
    h: usize,
    h_star: usize,
    options: CostOptions,
    path: &mut Vec<(IndexSet, usize)>,
) -> Cost {
    if options.zero_cost_at_target && h == h_star {
        return Cost::Finite(0);
    }
    if path.iter().any(|(m, g)| m == members && *g == h) {
        return Cost::Unreachable;
    }
    let n = class.num_instances();
    let space = VersionSpace::from_members(class, members.clone());
    let mut refined_sets = Vec::with_capacity(n);
    for x in 0..n {
        let z = LabeledExample::new(x, class.label(h_star, x));
        let refined = space.refine(z).expect("index in range");
        refined_sets.push(refined);
    }
    // Base case first: some example pins the candidate set to the target.
    for refined in &refined_sets {
        if !refined.contains(h_star) {
            continue;
        }
        let cand = preferred_set(sigma, refined, h);
        if cand.members().sole_member() == Some(h_star) {
            return Cost::Finite(1);
        }
    }
    path.push((members.clone(), h));
    let mut best = Cost::Unreachable;
    for refined in &refined_sets {
        if !refined.contains(h_star) {
            continue;
        }
        let cand = preferred_set(sigma, refined, h);
        if cand.is_empty() {
            continue;
        }
        let mut worst = Cost::Finite(0);
        for g in cand.iter() {
            let sub = naive_rec(sigma, class, refined.members(), g, h_star, options, path);
            worst = worst.max(sub);
            if worst == Cost::Unreachable {
                break;
            }
        }
        if let Cost::Finite(w) = worst {
            best = best.min(Cost::Finite(w + 1));
        }
    }
    path.pop();
    best
}

/// A teaching plan: the example sequence for one target plus the hypothesis
/// trace expected under adversarial tie resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeachingPlan {
    pub target: usize,
    pub steps: Vec<LabeledExample>,
    pub trace: Vec<usize>,
    pub cost: u32,
}

impl TeachingPlan {
    pub fn to_json_value(&self, class: &ClassRef) -> serde_json::Value {
        serde_json::json!({
            "target": class.hypothesis_name(self.target),
            "steps": self.steps.iter().map(|z| {
                serde_json::json!([class.instance_name(z.instance), u8::from(z.label)])
            }).collect::<Vec<_>>(),
            "trace": self.trace.iter().map(|&h| class.hypothesis_name(h)).collect::<Vec<_>>(),
            "cost": self.cost,
        })
    }
}

/// Extracts a plan achieving the optimal cost: at each state the
/// lexicographically first example attaining the minimum is chosen, and the
/// adversarial-worst candidate (ties to the lowest index) is followed.
pub fn extract_plan(
    sigma: &PreferenceFunction,
    class: &ClassRef,
    h0: usize,
    h_star: usize,
    options: CostOptions,
) -> Result<TeachingPlan> {
    let full = VersionSpace::full(class);
    full.check_member(h0)?;
    full.check_member(h_star)?;
    let mut table = CostTable::new(class, sigma, h_star, options)?;
    let total = match table.cost(&full, h0)? {
        Cost::Finite(c) => c,
        Cost::Unreachable => {
            return Err(Error::Unreachable(format!(
                "no strategy teaches {} from {} under this preference function",
                class.hypothesis_name(h_star),
                class.hypothesis_name(h0)
            )))
        }
    };
    let mut steps = Vec::new();
    let mut trace = vec![h0];
    let mut space = full;
    let mut current = h0;
    let mut remaining = total;
    while remaining > 0 {
        let (z, next_space, follower) =
            best_move(&mut table, sigma, &space, current, h_star, remaining)?;
        steps.push(z);
        trace.push(follower);
        space = next_space;
        current = follower;
        remaining -= 1;
    }
    debug_assert_eq!(current, h_star);
    Ok(TeachingPlan {
        target: h_star,
        steps,
        trace,
        cost: total,
    })
}

/// Picks the lexicographically first example whose branch value equals the
/// state's cost and the adversarial candidate that follows it.
fn best_move(
    table: &mut CostTable<'_>,
    sigma: &PreferenceFunction,
    space: &VersionSpace,
    current: usize,
    h_star: usize,
    remaining: u32,
) -> Result<(LabeledExample, VersionSpace, usize)> {
    let class = space.class().clone();
    for x in 0..class.num_instances() {
        let z = LabeledExample::new(x, class.label(h_star, x));
        let refined = space.refine(z)?;
        if !refined.contains(h_star) {
            continue;
        }
        let cand = preferred_set(sigma, &refined, current);
        if cand.is_empty() {
            continue;
        }
        if remaining == 1 {
            if cand.members().sole_member() == Some(h_star) {
                return Ok((z, refined, h_star));
            }
            continue;
        }
        // Branch value: 1 + worst candidate cost must equal `remaining`.
        let mut worst = Cost::Finite(0);
        let mut follower = None;
        for g in cand.iter() {
            let sub = table.cost_unchecked(refined.members(), g);
            if follower.is_none() || sub > worst {
                worst = sub;
                follower = Some(g);
            }
        }
        if let (Cost::Finite(w), Some(g)) = (worst, follower) {
            if w + 1 == remaining {
                return Ok((z, refined, g));
            }
        }
    }
    Err(Error::Construction(format!(
        "no move preserves the computed cost from {} (internal invariant)",
        class.hypothesis_name(current)
    )))
}

/// Tie resolution for the simulator.
#[derive(Clone, Copy, Debug)]
pub enum TieMode {
    /// Pick the lowest hypothesis index among the most preferred.
    LowestIndex,
    /// Pick the candidate that maximizes the remaining teaching cost toward
    /// the given target (ties to the lowest index); candidates from which the
    /// target is unreachable are worst of all.
    AdversarialVsTarget(usize),
}

/// One simulator step: the example received, the refined version space, the
/// learner's candidate set, and the hypothesis picked.
#[derive(Clone, Debug)]
pub struct SimStep {
    pub example: LabeledExample,
    pub version_space: Vec<usize>,
    pub candidates: Vec<usize>,
    pub chosen: usize,
}

/// Replay record of an interaction.
#[derive(Clone, Debug)]
pub struct SimTrace {
    pub start: usize,
    pub steps: Vec<SimStep>,
    /// Hypothesis sequence including the start.
    pub hypotheses: Vec<usize>,
    /// Index of the step whose example emptied the version space, if any;
    /// the simulation halts there.
    pub contradiction_at: Option<usize>,
}

impl SimTrace {
    pub fn final_hypothesis(&self) -> usize {
        *self.hypotheses.last().expect("always contains the start")
    }

    pub fn to_json_value(&self, class: &ClassRef) -> serde_json::Value {
        serde_json::json!({
            "start": class.hypothesis_name(self.start),
            "trace": self.hypotheses.iter().map(|&h| class.hypothesis_name(h)).collect::<Vec<_>>(),
            "steps": self.steps.iter().map(|s| serde_json::json!({
                "example": [class.instance_name(s.example.instance), u8::from(s.example.label)],
                "version_space": s.version_space.iter().map(|&h| class.hypothesis_name(h)).collect::<Vec<_>>(),
                "candidates": s.candidates.iter().map(|&h| class.hypothesis_name(h)).collect::<Vec<_>>(),
                "chosen": class.hypothesis_name(s.chosen),
            })).collect::<Vec<_>>(),
            "contradiction_at": self.contradiction_at,
        })
    }
}

/// Replays the learner's update rule over a fixed example stream. Each step
/// refines the version space and moves to a most-preferred member, resolving
/// ties per `tie_mode`. A contradictory stream (empty refined space) flags
/// the step and halts.
pub fn simulate(
    sigma: &PreferenceFunction,
    class: &ClassRef,
    h0: usize,
    steps: &[LabeledExample],
    tie_mode: TieMode,
) -> Result<SimTrace> {
    class.check_hypothesis(h0)?;
    sigma.validate_for(class)?;
    let mut adversary = match tie_mode {
        TieMode::LowestIndex => None,
        TieMode::AdversarialVsTarget(target) => {
            Some(CostTable::new(class, sigma, target, CostOptions::default())?)
        }
    };
    let mut space = VersionSpace::full(class);
    let mut current = h0;
    let mut trace = SimTrace {
        start: h0,
        steps: Vec::new(),
        hypotheses: vec![h0],
        contradiction_at: None,
    };
    for (i, &z) in steps.iter().enumerate() {
        let refined = space.refine(z)?;
        if refined.is_empty() {
            trace.contradiction_at = Some(i);
            break;
        }
        let cand = preferred_set(sigma, &refined, current);
        let chosen = match &mut adversary {
            None => cand.iter().next().expect("non-empty candidates"),
            Some(table) => {
                let mut pick = None;
                let mut worst = Cost::Finite(0);
                for g in cand.iter() {
                    let value = table.cost_unchecked(refined.members(), g);
                    if pick.is_none() || value > worst {
                        pick = Some(g);
                        worst = value;
                    }
                }
                pick.expect("non-empty candidates")
            }
        };
        trace.steps.push(SimStep {
            example: z,
            version_space: refined.to_indices(),
            candidates: cand.to_indices(),
            chosen,
        });
        trace.hypotheses.push(chosen);
        space = refined;
        current = chosen;
    }
    Ok(trace)
}

/// Caps for the global brute-force oracle.
#[derive(Clone, Copy, Debug)]
pub struct GlobalOracleCaps {
    pub max_hypotheses: usize,
}

impl Default for GlobalOracleCaps {
    fn default() -> Self {
        GlobalOracleCaps { max_hypotheses: 8 }
    }
}

/// Minimum of `td_sigma` over every global preference table, by enumerating
/// all total orders of the hypotheses. Exact and factorial; capped.
pub fn sigma_td_global_bruteforce(
    class: &ClassRef,
    h0: usize,
    caps: GlobalOracleCaps,
) -> Result<Cost> {
    class.check_hypothesis(h0)?;
    let m = class.num_hypotheses();
    if m > caps.max_hypotheses {
        return Err(Error::capacity(format!(
            "global brute force capped at {} hypotheses, class has {m}",
            caps.max_hypotheses
        )));
    }
    let mut best = Cost::Unreachable;
    for perm in (0..m).permutations(m) {
        let mut ranks = vec![0 as Rank; m];
        for (rank, &h) in perm.iter().enumerate() {
            ranks[h] = rank as Rank;
        }
        let sigma = PreferenceFunction::Global { ranks };
        let value = td_sigma(&sigma, class, h0, CostOptions::default())?;
        best = best.min(value);
        if best == Cost::Finite(1) {
            break; // cannot do better: the recurrence charges at least one example
        }
    }
    Ok(best)
}
