//! Preference functions over hypotheses: the five families (constant,
//! global, global-version-space, local, local-version-space), candidate-set
//! computation, and the sequential collusion-freeness checker.
//!
//! A preference function sigma(h'; H, h) ranks candidate hypothesis h' given
//! the learner's version space H and current hypothesis h; lower rank wins.
//! Ranks are integers throughout: every table in play uses small integer
//! ranks and exact comparisons avoid tolerance questions.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::bits::IndexSet;
use crate::class::{ClassRef, LabeledExample, VersionSpace};
use crate::error::{Error, Result};

pub type Rank = u32;

/// Sparse key for version-space-dependent tables: the canonical sorted
/// member list.
pub type VsKey = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreferenceFunction {
    /// One rank for everything.
    Const { rank: Rank },
    /// Rank per candidate hypothesis, ignoring version space and current
    /// hypothesis.
    Global { ranks: Vec<Rank> },
    /// Rank matrix indexed `(h_prime, h)`: depends on the candidate and the
    /// learner's current hypothesis only.
    Local { ranks: Vec<Vec<Rank>> },
    /// Sparse map keyed by canonical version space; rank per candidate with
    /// a default for missing entries. Ignores the current hypothesis.
    Gvs {
        default: Rank,
        entries: HashMap<VsKey, BTreeMap<usize, Rank>>,
    },
    /// Sparse map keyed by (canonical version space, current hypothesis);
    /// rank per candidate with separate defaults for the self candidate
    /// (h' = h) and everything else.
    Lvs {
        self_default: Rank,
        other_default: Rank,
        entries: HashMap<(VsKey, usize), BTreeMap<usize, Rank>>,
    },
}

impl PreferenceFunction {
    pub fn family_name(&self) -> &'static str {
        match self {
            PreferenceFunction::Const { .. } => "const",
            PreferenceFunction::Global { .. } => "global",
            PreferenceFunction::Local { .. } => "local",
            PreferenceFunction::Gvs { .. } => "gvs",
            PreferenceFunction::Lvs { .. } => "lvs",
        }
    }

    /// Cheap structural validation against a class: dense tables must match
    /// the hypothesis count, sparse keys must hold valid indices.
    pub fn validate_for(&self, class: &ClassRef) -> Result<()> {
        let m = class.num_hypotheses();
        match self {
            PreferenceFunction::Const { .. } => Ok(()),
            PreferenceFunction::Global { ranks } => {
                if ranks.len() != m {
                    return Err(Error::invalid(format!(
                        "global rank table has {} entries, class has {m} hypotheses",
                        ranks.len()
                    )));
                }
                Ok(())
            }
            PreferenceFunction::Local { ranks } => {
                if ranks.len() != m || ranks.iter().any(|row| row.len() != m) {
                    return Err(Error::invalid(format!(
                        "local rank matrix must be {m}x{m} for this class"
                    )));
                }
                Ok(())
            }
            PreferenceFunction::Gvs { entries, .. } => {
                for (vs, ranks) in entries {
                    if vs.iter().any(|&h| h >= m) || ranks.keys().any(|&h| h >= m) {
                        return Err(Error::invalid("gvs entry references an unknown hypothesis"));
                    }
                }
                Ok(())
            }
            PreferenceFunction::Lvs { entries, .. } => {
                for ((vs, h), ranks) in entries {
                    if *h >= m || vs.iter().any(|&g| g >= m) || ranks.keys().any(|&g| g >= m) {
                        return Err(Error::invalid("lvs entry references an unknown hypothesis"));
                    }
                }
                Ok(())
            }
        }
    }
}

/// sigma(h'; H, h). `h_prime` must be a member of `vs`; Gvs/Lvs tables fall
/// back to their defaults on missing keys.
pub fn evaluate(
    sigma: &PreferenceFunction,
    h_prime: usize,
    vs: &VersionSpace,
    h: usize,
) -> Result<Rank> {
    vs.check_member(h_prime)?;
    vs.class().check_hypothesis(h)?;
    Ok(evaluate_unchecked(sigma, h_prime, vs, h))
}

pub(crate) fn evaluate_unchecked(
    sigma: &PreferenceFunction,
    h_prime: usize,
    vs: &VersionSpace,
    h: usize,
) -> Rank {
    match sigma {
        PreferenceFunction::Const { rank } => *rank,
        PreferenceFunction::Global { ranks } => ranks[h_prime],
        PreferenceFunction::Local { ranks } => ranks[h_prime][h],
        PreferenceFunction::Gvs { default, entries } => entries
            .get(&vs.to_indices())
            .and_then(|m| m.get(&h_prime))
            .copied()
            .unwrap_or(*default),
        PreferenceFunction::Lvs {
            self_default,
            other_default,
            entries,
        } => entries
            .get(&(vs.to_indices(), h))
            .and_then(|m| m.get(&h_prime))
            .copied()
            .unwrap_or(if h_prime == h {
                *self_default
            } else {
                *other_default
            }),
    }
}

/// The candidate set C(H, h, z): the most preferred hypotheses in
/// H intersect consistent(z), judged with the refined space as sigma's
/// version-space argument. An empty refined space yields an empty set (an
/// invalid teaching move for the caller).
pub fn candidate_set(
    sigma: &PreferenceFunction,
    vs: &VersionSpace,
    h: usize,
    z: LabeledExample,
) -> Result<VersionSpace> {
    vs.class().check_hypothesis(h)?;
    let refined = vs.refine(z)?;
    Ok(preferred_set(sigma, &refined, h))
}

/// argmin over the members of `vs` of sigma(.; vs, h); empty when `vs` is.
pub(crate) fn preferred_set(sigma: &PreferenceFunction, vs: &VersionSpace, h: usize) -> VersionSpace {
    let mut best: Option<Rank> = None;
    let mut members = IndexSet::empty(vs.class().num_hypotheses());
    for candidate in vs.iter() {
        let rank = evaluate_unchecked(sigma, candidate, vs, h);
        match best {
            Some(b) if rank > b => {}
            Some(b) if rank == b => members.insert(candidate),
            _ => {
                best = Some(rank);
                members = IndexSet::empty(vs.class().num_hypotheses());
                members.insert(candidate);
            }
        }
    }
    VersionSpace::from_members(vs.class(), members)
}

/// Local preference ranking candidates by Hamming distance from the current
/// hypothesis.
pub fn hamming_local(class: &ClassRef) -> PreferenceFunction {
    let m = class.num_hypotheses();
    let ranks = (0..m)
        .map(|h_prime| {
            (0..m)
                .map(|h| class.row(h_prime).hamming(class.row(h)) as Rank)
                .collect()
        })
        .collect();
    PreferenceFunction::Local { ranks }
}

/// Outcome of the collusion-freeness check.
#[derive(Clone, Debug)]
pub struct CollusionReport {
    pub collusion_free: bool,
    pub counterexample: Option<CollusionCounterexample>,
    pub states_explored: usize,
}

/// A state where a uniquely preferred hypothesis failed to stay preferred
/// under an example consistent with it. `example` is `None` when the failure
/// already occurs with no additional example (the learner re-evaluating at
/// its new hypothesis).
#[derive(Clone, Debug)]
pub struct CollusionCounterexample {
    pub version_space: Vec<usize>,
    pub current: usize,
    pub preferred: usize,
    pub example: Option<LabeledExample>,
    pub resulting_preferred: Vec<usize>,
}

/// Caps for the collusion checker's state enumeration.
#[derive(Clone, Copy, Debug)]
pub struct CollusionCaps {
    pub max_states: usize,
}

impl Default for CollusionCaps {
    fn default() -> Self {
        CollusionCaps { max_states: 1_000_000 }
    }
}

/// Enumerates every version space reachable from the full class by
/// single-example refinements (the spaces expressible as H(Z)), capped.
pub fn reachable_version_spaces(class: &ClassRef, caps: CollusionCaps) -> Result<Vec<VersionSpace>> {
    let full = VersionSpace::full(class);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(full.to_indices());
    queue.push_back(full.clone());
    out.push(full);
    while let Some(vs) = queue.pop_front() {
        for x in 0..class.num_instances() {
            for label in [false, true] {
                let refined = vs.refine(LabeledExample::new(x, label))?;
                if refined.is_empty() {
                    continue;
                }
                if seen.insert(refined.to_indices()) {
                    if out.len() >= caps.max_states {
                        return Err(Error::capacity(format!(
                            "collusion check exceeded {} version spaces",
                            caps.max_states
                        )));
                    }
                    queue.push_back(refined.clone());
                    out.push(refined);
                }
            }
        }
    }
    Ok(out)
}

/// Checks collusion-freeness by single-step induction: for every reachable
/// version space H and every current hypothesis h, whenever the preferred set
/// is a unique {p}, both the empty refinement and every single example
/// consistent with p must leave the preferred set (judged from p) exactly
/// {p}. Each refined state re-satisfies the premise, so the check extends to
/// arbitrary consistent example sets by induction.
pub fn collusion_free_check(
    sigma: &PreferenceFunction,
    class: &ClassRef,
    caps: CollusionCaps,
) -> Result<CollusionReport> {
    sigma.validate_for(class)?;
    let spaces = reachable_version_spaces(class, caps)?;
    let mut states = 0usize;
    for vs in &spaces {
        for h in 0..class.num_hypotheses() {
            states += 1;
            let preferred = preferred_set(sigma, vs, h);
            let Some(p) = preferred.members().sole_member() else {
                continue;
            };
            // Empty refinement: the learner now sits at p and must still
            // uniquely prefer it within the same space.
            let again = preferred_set(sigma, vs, p);
            if again.members().sole_member() != Some(p) {
                return Ok(CollusionReport {
                    collusion_free: false,
                    counterexample: Some(CollusionCounterexample {
                        version_space: vs.to_indices(),
                        current: h,
                        preferred: p,
                        example: None,
                        resulting_preferred: again.to_indices(),
                    }),
                    states_explored: states,
                });
            }
            for x in 0..class.num_instances() {
                let z = LabeledExample::new(x, class.label(p, x));
                let refined = vs.refine(z)?;
                let next = preferred_set(sigma, &refined, p);
                if next.members().sole_member() != Some(p) {
                    return Ok(CollusionReport {
                        collusion_free: false,
                        counterexample: Some(CollusionCounterexample {
                            version_space: vs.to_indices(),
                            current: h,
                            preferred: p,
                            example: Some(z),
                            resulting_preferred: next.to_indices(),
                        }),
                        states_explored: states,
                    });
                }
            }
        }
    }
    Ok(CollusionReport {
        collusion_free: true,
        counterexample: None,
        states_explored: states,
    })
}

// ---------------------------------------------------------------------------
// JSON format
// ---------------------------------------------------------------------------

/// Serializes a preference function to its JSON wire format. Local and global
/// tables are dense arrays; gvs/lvs entries are sparse with canonical sorted
/// version-space keys.
pub fn sigma_to_json(sigma: &PreferenceFunction) -> String {
    let value = match sigma {
        PreferenceFunction::Const { rank } => serde_json::json!({
            "family": "const",
            "rank": rank,
        }),
        PreferenceFunction::Global { ranks } => serde_json::json!({
            "family": "global",
            "ranks": ranks,
        }),
        PreferenceFunction::Local { ranks } => serde_json::json!({
            "family": "local",
            "ranks": ranks,
        }),
        PreferenceFunction::Gvs { default, entries } => {
            let mut sorted: Vec<_> = entries.iter().collect();
            sorted.sort_by(|a, b| a.0.cmp(b.0));
            serde_json::json!({
                "family": "gvs",
                "default": default,
                "entries": sorted.iter().map(|(vs, ranks)| serde_json::json!({
                    "vs": vs,
                    "ranks": ranks.iter().map(|(h, r)| (h.to_string(), *r)).collect::<BTreeMap<_, _>>(),
                })).collect::<Vec<_>>(),
            })
        }
        PreferenceFunction::Lvs {
            self_default,
            other_default,
            entries,
        } => {
            let mut sorted: Vec<_> = entries.iter().collect();
            sorted.sort_by(|a, b| a.0.cmp(b.0));
            serde_json::json!({
                "family": "lvs",
                "defaults": { "self": self_default, "other": other_default },
                "entries": sorted.iter().map(|((vs, h), ranks)| serde_json::json!({
                    "vs": vs,
                    "h": h,
                    "ranks": ranks.iter().map(|(g, r)| (g.to_string(), *r)).collect::<BTreeMap<_, _>>(),
                })).collect::<Vec<_>>(),
            })
        }
    };
    serde_json::to_string_pretty(&value).expect("sigma serialization cannot fail")
}

pub fn sigma_from_json(text: &str) -> Result<PreferenceFunction> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::format(format!("sigma json: {e}")))?;
    let family = value
        .get("family")
        .and_then(|f| f.as_str())
        .ok_or_else(|| Error::format("sigma json: missing \"family\""))?;
    let rank_at = |v: &serde_json::Value, what: &str| -> Result<Rank> {
        v.as_u64()
            .and_then(|r| Rank::try_from(r).ok())
            .ok_or_else(|| Error::format(format!("sigma json: {what} must be a small non-negative integer")))
    };
    match family {
        "const" => Ok(PreferenceFunction::Const {
            rank: rank_at(
                value.get("rank").ok_or_else(|| Error::format("sigma json: const needs \"rank\""))?,
                "rank",
            )?,
        }),
        "global" => {
            let ranks = value
                .get("ranks")
                .and_then(|r| r.as_array())
                .ok_or_else(|| Error::format("sigma json: global needs \"ranks\" array"))?
                .iter()
                .map(|v| rank_at(v, "rank"))
                .collect::<Result<Vec<_>>>()?;
            Ok(PreferenceFunction::Global { ranks })
        }
        "local" => {
            let ranks = value
                .get("ranks")
                .and_then(|r| r.as_array())
                .ok_or_else(|| Error::format("sigma json: local needs \"ranks\" matrix"))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::format("sigma json: local ranks must be a matrix"))?
                        .iter()
                        .map(|v| rank_at(v, "rank"))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PreferenceFunction::Local { ranks })
        }
        "gvs" => {
            let default = rank_at(
                value.get("default").ok_or_else(|| Error::format("sigma json: gvs needs \"default\""))?,
                "default",
            )?;
            let mut entries = HashMap::new();
            for entry in value
                .get("entries")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::format("sigma json: gvs needs \"entries\""))?
            {
                let vs = parse_vs_key(entry.get("vs"))?;
                let ranks = parse_rank_map(entry.get("ranks"))?;
                entries.insert(vs, ranks);
            }
            Ok(PreferenceFunction::Gvs { default, entries })
        }
        "lvs" => {
            let defaults = value
                .get("defaults")
                .ok_or_else(|| Error::format("sigma json: lvs needs \"defaults\""))?;
            let self_default = rank_at(
                defaults.get("self").ok_or_else(|| Error::format("sigma json: lvs defaults need \"self\""))?,
                "self default",
            )?;
            let other_default = rank_at(
                defaults.get("other").ok_or_else(|| Error::format("sigma json: lvs defaults need \"other\""))?,
                "other default",
            )?;
            let mut entries = HashMap::new();
            for entry in value
                .get("entries")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::format("sigma json: lvs needs \"entries\""))?
            {
                let vs = parse_vs_key(entry.get("vs"))?;
                let h = entry
                    .get("h")
                    .and_then(|h| h.as_u64())
                    .ok_or_else(|| Error::format("sigma json: lvs entry needs \"h\""))?
                    as usize;
                let ranks = parse_rank_map(entry.get("ranks"))?;
                entries.insert((vs, h), ranks);
            }
            Ok(PreferenceFunction::Lvs {
                self_default,
                other_default,
                entries,
            })
        }
        other => Err(Error::format(format!("sigma json: unknown family {other:?}"))),
    }
}

fn parse_vs_key(value: Option<&serde_json::Value>) -> Result<VsKey> {
    let mut vs: Vec<usize> = value
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::format("sigma json: entry needs \"vs\" array"))?
        .iter()
        .map(|v| {
            v.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| Error::format("sigma json: vs entries must be indices"))
        })
        .collect::<Result<_>>()?;
    vs.sort_unstable();
    vs.dedup();
    Ok(vs)
}

fn parse_rank_map(value: Option<&serde_json::Value>) -> Result<BTreeMap<usize, Rank>> {
    let obj = value
        .and_then(|v| v.as_object())
        .ok_or_else(|| Error::format("sigma json: entry needs \"ranks\" object"))?;
    let mut out = BTreeMap::new();
    for (k, v) in obj {
        let h: usize = k
            .parse()
            .map_err(|_| Error::format(format!("sigma json: rank key {k:?} is not an index")))?;
        let r = v
            .as_u64()
            .and_then(|r| Rank::try_from(r).ok())
            .ok_or_else(|| Error::format("sigma json: rank values must be small integers"))?;
        out.insert(h, r);
    }
    Ok(out)
}
