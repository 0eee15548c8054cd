//! Classical teaching/learning dimensions over a version space: VC dimension,
//! worst-case teaching dimension, recursive teaching dimension, non-clashing
//! teaching dimension, plus distinguishable-set machinery and the counting
//! lower bound.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::class::{pattern_count, ClassRef, LabeledExample, VersionSpace};
use crate::error::{Error, Result};

/// A teacher mapping: one labeled-example sequence per covered hypothesis.
/// Order matters only for sequential replay; the batch checks below use set
/// semantics.
#[derive(Clone, Debug)]
pub struct TeacherMap {
    class: ClassRef,
    sets: BTreeMap<usize, Vec<LabeledExample>>,
}

impl TeacherMap {
    /// Validates that each sequence is consistent with its own hypothesis and
    /// repeats no instance.
    pub fn new(class: &ClassRef, sets: BTreeMap<usize, Vec<LabeledExample>>) -> Result<Self> {
        for (&h, seq) in &sets {
            class.check_hypothesis(h)?;
            let mut seen = std::collections::HashSet::new();
            for &z in seq {
                if !class.consistent(h, z)? {
                    return Err(Error::invalid(format!(
                        "teaching set for {} contains an example inconsistent with it",
                        class.hypothesis_name(h)
                    )));
                }
                if !seen.insert(z.instance) {
                    return Err(Error::invalid(format!(
                        "teaching set for {} repeats instance {}",
                        class.hypothesis_name(h),
                        class.instance_name(z.instance)
                    )));
                }
            }
        }
        Ok(TeacherMap {
            class: class.clone(),
            sets,
        })
    }

    pub fn class(&self) -> &ClassRef {
        &self.class
    }

    pub fn get(&self, h: usize) -> Option<&[LabeledExample]> {
        self.sets.get(&h).map(|v| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[LabeledExample])> {
        self.sets.iter().map(|(&h, v)| (h, v.as_slice()))
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.values().map(|v| v.len()).max().unwrap_or(0)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let sets: serde_json::Map<String, serde_json::Value> = self
            .sets
            .iter()
            .map(|(&h, seq)| {
                (
                    self.class.hypothesis_name(h).to_string(),
                    examples_to_json(&self.class, seq),
                )
            })
            .collect();
        serde_json::Value::Object(sets)
    }
}

pub(crate) fn examples_to_json(class: &ClassRef, seq: &[LabeledExample]) -> serde_json::Value {
    serde_json::Value::Array(
        seq.iter()
            .map(|z| {
                serde_json::json!([class.instance_name(z.instance), u8::from(z.label)])
            })
            .collect(),
    )
}

/// A clashing pair: each hypothesis is consistent with the other's teaching set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClashWitness {
    pub first: usize,
    pub second: usize,
}

/// VC dimension of `vs` w.r.t. the instance subset `columns`: the size of the
/// largest shattered subset. Exhaustive over subsets, pruned by
/// `2^s <= |vs|`.
pub fn vcd(vs: &VersionSpace, columns: &[usize]) -> Result<usize> {
    if vs.is_empty() {
        return Err(Error::invalid("vcd of an empty version space"));
    }
    let mut cols: Vec<usize> = columns.to_vec();
    cols.sort_unstable();
    cols.dedup();
    for &x in &cols {
        if x >= vs.class().num_instances() {
            return Err(Error::invalid(format!("instance index {x} out of range")));
        }
    }
    let n = vs.len();
    let mut bound = 0usize;
    while (1usize << (bound + 1)) <= n && bound < cols.len() {
        bound += 1;
    }
    for size in (1..=bound).rev() {
        for subset in cols.iter().copied().combinations(size) {
            if pattern_count(vs, &subset) == 1 << size {
                return Ok(size);
            }
        }
    }
    Ok(0)
}

/// VC dimension w.r.t. the full instance set.
pub fn vcd_full(vs: &VersionSpace) -> Result<usize> {
    let cols: Vec<usize> = (0..vs.class().num_instances()).collect();
    vcd(vs, &cols)
}

/// A witness shattered set of maximum size (empty when vcd = 0).
pub fn shattered_witness(vs: &VersionSpace) -> Result<Vec<usize>> {
    let d = vcd_full(vs)?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let cols: Vec<usize> = (0..vs.class().num_instances()).collect();
    for subset in cols.into_iter().combinations(d) {
        if pattern_count(vs, &subset) == 1 << d {
            return Ok(subset);
        }
    }
    unreachable!("vcd returned a size with no witness")
}

/// A minimum-cardinality example set consistent with `h` whose induced
/// version space intersected with `vs` is exactly `{h}`. Ties break to the
/// lexicographically smallest instance-index set; a singleton space teaches
/// with the empty set.
pub fn minimal_teaching_set(h: usize, vs: &VersionSpace) -> Result<Vec<LabeledExample>> {
    vs.check_member(h)?;
    if vs.len() == 1 {
        return Ok(Vec::new());
    }
    let class = vs.class();
    let n = class.num_instances();
    let others: Vec<usize> = vs.iter().filter(|&g| g != h).collect();
    for size in 1..=n {
        for subset in (0..n).combinations(size) {
            // h's own labels on the subset; eliminating all others means the
            // induced space meets vs exactly in {h}.
            let eliminates_all = others
                .iter()
                .all(|&g| subset.iter().any(|&x| class.label(g, x) != class.label(h, x)));
            if eliminates_all {
                return Ok(subset
                    .into_iter()
                    .map(|x| LabeledExample::new(x, class.label(h, x)))
                    .collect());
            }
        }
    }
    unreachable!("distinct rows guarantee the full instance set teaches")
}

/// Worst-case teaching dimension: max over members of the minimal teaching
/// set size.
pub fn td(vs: &VersionSpace) -> Result<usize> {
    if vs.is_empty() {
        return Err(Error::invalid("td of an empty version space"));
    }
    let mut worst = 0;
    for h in vs.iter() {
        worst = worst.max(minimal_teaching_set(h, vs)?.len());
    }
    Ok(worst)
}

/// One peeling stage of the recursive teaching dimension computation.
#[derive(Clone, Debug, Serialize)]
pub struct RtdStage {
    pub size: usize,
    pub removed: Vec<usize>,
}

/// Recursive teaching dimension via canonical peeling: repeatedly remove
/// every hypothesis whose minimal teaching set w.r.t. the remaining class has
/// the stage-minimum size; the answer is the largest stage minimum.
pub fn rtd(vs: &VersionSpace) -> Result<usize> {
    Ok(rtd_stages(vs)?.iter().map(|s| s.size).max().unwrap_or(0))
}

pub fn rtd_stages(vs: &VersionSpace) -> Result<Vec<RtdStage>> {
    if vs.is_empty() {
        return Err(Error::invalid("rtd of an empty version space"));
    }
    let mut remaining = vs.clone();
    let mut stages = Vec::new();
    while !remaining.is_empty() {
        let sizes: Vec<(usize, usize)> = remaining
            .iter()
            .map(|h| Ok((h, minimal_teaching_set(h, &remaining)?.len())))
            .collect::<Result<_>>()?;
        let stage_min = sizes.iter().map(|&(_, s)| s).min().expect("non-empty");
        let removed: Vec<usize> = sizes
            .iter()
            .filter(|&&(_, s)| s == stage_min)
            .map(|&(h, _)| h)
            .collect();
        let mut members = remaining.members().clone();
        for &h in &removed {
            members.remove(h);
        }
        remaining = VersionSpace::from_members(vs.class(), members);
        stages.push(RtdStage {
            size: stage_min,
            removed,
        });
    }
    Ok(stages)
}

/// True iff `map` is non-clashing on `vs`: no distinct pair where each
/// teaching set is consistent with the other hypothesis. Returns the
/// offending pair otherwise. Errors if `map` misses a member of `vs`.
pub fn find_clash(map: &TeacherMap, vs: &VersionSpace) -> Result<Option<ClashWitness>> {
    vs.check_same_class(&VersionSpace::full(map.class()))?;
    let class = vs.class();
    let members: Vec<usize> = vs.iter().collect();
    for &h in &members {
        if map.get(h).is_none() {
            return Err(Error::invalid(format!(
                "teacher map does not cover {}",
                class.hypothesis_name(h)
            )));
        }
    }
    let consistent_with = |seq: &[LabeledExample], g: usize| {
        seq.iter().all(|&z| class.label(g, z.instance) == z.label)
    };
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let ta = map.get(a).expect("checked above");
            let tb = map.get(b).expect("checked above");
            if consistent_with(ta, b) && consistent_with(tb, a) {
                return Ok(Some(ClashWitness { first: a, second: b }));
            }
        }
    }
    Ok(None)
}

pub fn is_non_clashing(map: &TeacherMap, vs: &VersionSpace) -> Result<bool> {
    Ok(find_clash(map, vs)?.is_none())
}

/// Search caps for the exact NCTD backtracking search.
#[derive(Clone, Copy, Debug)]
pub struct NctdCaps {
    /// Refuse classes larger than this many hypotheses.
    pub max_hypotheses: usize,
}

impl Default for NctdCaps {
    fn default() -> Self {
        NctdCaps { max_hypotheses: 16 }
    }
}

/// Exact non-clashing teaching dimension with one witness map. Iterative
/// deepening on the per-hypothesis set-size bound guarantees minimality;
/// within a bound, backtracking with forward checking over per-hypothesis
/// candidate sets. Desk scale only.
pub fn nctd(vs: &VersionSpace, caps: NctdCaps) -> Result<(usize, TeacherMap)> {
    if vs.is_empty() {
        return Err(Error::invalid("nctd of an empty version space"));
    }
    if vs.len() > caps.max_hypotheses {
        return Err(Error::capacity(format!(
            "nctd search capped at {} hypotheses, class has {}",
            caps.max_hypotheses,
            vs.len()
        )));
    }
    let class = vs.class();
    let members: Vec<usize> = vs.iter().collect();
    if members.len() == 1 {
        let map = TeacherMap::new(class, BTreeMap::from([(members[0], Vec::new())]))?;
        return Ok((0, map));
    }
    let n = class.num_instances();
    for bound in 1..=n {
        if let Some(assignment) = search_non_clashing(vs, &members, bound) {
            let sets = members
                .iter()
                .zip(assignment)
                .map(|(&h, subset)| {
                    (
                        h,
                        subset
                            .into_iter()
                            .map(|x| LabeledExample::new(x, class.label(h, x)))
                            .collect(),
                    )
                })
                .collect();
            return Ok((bound, TeacherMap::new(class, sets)?));
        }
    }
    unreachable!("the full-row teacher map is always non-clashing")
}

/// Candidate teaching sets are instance subsets (labels come from the owning
/// hypothesis). Two assignments clash iff each is consistent with the other's
/// hypothesis.
fn search_non_clashing(
    vs: &VersionSpace,
    members: &[usize],
    bound: usize,
) -> Option<Vec<Vec<usize>>> {
    let class = vs.class();
    let n = class.num_instances();
    let m = members.len();

    // Candidate instance subsets, smallest first then lexicographic.
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new()];
    for size in 1..=bound.min(n) {
        candidates.extend((0..n).combinations(size));
    }

    // consistent[c][j]: candidate c (labeled by any owner) consistent with
    // member j depends on the owner's labels, so precompute per (owner, c).
    let owner_consistent = |owner: usize, cand: &[usize], other: usize| {
        cand.iter()
            .all(|&x| class.label(other, x) == class.label(owner, x))
    };

    // domains[i] = indices into `candidates` still viable for members[i].
    let mut domains: Vec<Vec<usize>> = vec![(0..candidates.len()).collect(); m];
    let mut assignment: Vec<Option<usize>> = vec![None; m];

    fn pick_next(domains: &[Vec<usize>], assignment: &[Option<usize>]) -> Option<usize> {
        assignment
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_none())
            .map(|(i, _)| i)
            .min_by_key(|&i| domains[i].len())
    }

    fn backtrack(
        members: &[usize],
        candidates: &[Vec<usize>],
        owner_consistent: &impl Fn(usize, &[usize], usize) -> bool,
        domains: &mut Vec<Vec<usize>>,
        assignment: &mut Vec<Option<usize>>,
    ) -> bool {
        let Some(i) = pick_next(domains, assignment) else {
            return true;
        };
        let my_domain = domains[i].clone();
        for &ci in &my_domain {
            assignment[i] = Some(ci);
            // Forward check: prune candidates of unassigned members that
            // would clash with this choice.
            let mut pruned: Vec<(usize, Vec<usize>)> = Vec::new();
            let mut dead = false;
            for j in 0..members.len() {
                if assignment[j].is_some() {
                    continue;
                }
                let i_hits_j = owner_consistent(members[i], &candidates[ci], members[j]);
                if !i_hits_j {
                    continue; // no clash possible regardless of j's choice
                }
                let before = std::mem::take(&mut domains[j]);
                let after: Vec<usize> = before
                    .iter()
                    .copied()
                    .filter(|&cj| !owner_consistent(members[j], &candidates[cj], members[i]))
                    .collect();
                domains[j] = after;
                pruned.push((j, before));
                if domains[j].is_empty() {
                    dead = true;
                    break;
                }
            }
            if !dead
                && backtrack(members, candidates, owner_consistent, domains, assignment)
            {
                return true;
            }
            for (j, before) in pruned {
                domains[j] = before;
            }
            assignment[i] = None;
        }
        false
    }

    // Seed: prune candidates that clash with already-fixed... nothing fixed;
    // but check pairwise-assigned clashes as part of forward checking above.
    if backtrack(
        members,
        &candidates,
        &owner_consistent,
        &mut domains,
        &mut assignment,
    ) {
        Some(
            assignment
                .into_iter()
                .map(|ci| candidates[ci.expect("complete")].clone())
                .collect(),
        )
    } else {
        None
    }
}

/// True iff the patterns of `vs` on `columns` separate all members. The empty
/// column set distinguishes only trivial spaces.
pub fn is_distinguishable(columns: &[usize], vs: &VersionSpace) -> Result<bool> {
    for &x in columns {
        if x >= vs.class().num_instances() {
            return Err(Error::invalid(format!("instance index {x} out of range")));
        }
    }
    if columns.is_empty() {
        return Ok(vs.len() <= 1);
    }
    Ok(pattern_count(vs, columns) == vs.len())
}

/// Shrinks a distinguishable instance set to a compact one: scans candidates
/// in ascending index order and drops any instance whose removal preserves
/// distinguishability. Errors if `columns` does not distinguish `vs`.
pub fn compact_distinguishable_set(vs: &VersionSpace, columns: &[usize]) -> Result<Vec<usize>> {
    if !is_distinguishable(columns, vs)? {
        return Err(Error::invalid(
            "instance set does not distinguish the version space",
        ));
    }
    let mut kept: Vec<usize> = columns.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        let still = if trial.is_empty() {
            vs.len() <= 1
        } else {
            pattern_count(vs, &trial) == vs.len()
        };
        if still {
            kept = trial;
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// Smallest k such that 2^d <= (2d)^(k+1): the counting-argument lower bound
/// on the teaching dimension of any preference family over the size-d
/// powerset class (at most sum_{i<=k} (2d)^i < (2d)^{k+1} distinct teaching
/// sequences of length <= k exist, and 2^d hypotheses need distinct ones).
pub fn sigma_td_lower_bound(d: u32) -> Result<u32> {
    if d == 0 || d > 127 {
        return Err(Error::invalid("the bound needs 1 <= d <= 127"));
    }
    let target: u128 = 1u128 << d;
    let base = 2u128 * u128::from(d);
    let mut power = base; // (2d)^(k+1) at k = 0
    let mut k = 0u32;
    while power < target {
        power = power.saturating_mul(base);
        k += 1;
    }
    Ok(k)
}

/// Dimension summary for one class, with witnesses.
#[derive(Debug)]
pub struct DimensionReport {
    pub vcd: usize,
    pub td: usize,
    pub rtd: usize,
    pub nctd: usize,
    pub shattered: Vec<usize>,
    pub teaching_sets: BTreeMap<usize, Vec<LabeledExample>>,
    pub rtd_stages: Vec<RtdStage>,
    pub nctd_map: TeacherMap,
}

/// Computes every dimension of the full class. The chain
/// `nctd <= rtd <= td` holds for the outputs.
pub fn dimension_report(class: &ClassRef, caps: NctdCaps) -> Result<DimensionReport> {
    let vs = VersionSpace::full(class);
    let mut teaching_sets = BTreeMap::new();
    for h in vs.iter() {
        teaching_sets.insert(h, minimal_teaching_set(h, &vs)?);
    }
    let td = teaching_sets.values().map(|s| s.len()).max().unwrap_or(0);
    let stages = rtd_stages(&vs)?;
    let rtd = stages.iter().map(|s| s.size).max().unwrap_or(0);
    let (nctd, nctd_map) = nctd_search_entry(&vs, caps)?;
    Ok(DimensionReport {
        vcd: vcd_full(&vs)?,
        td,
        rtd,
        shattered: shattered_witness(&vs)?,
        teaching_sets,
        rtd_stages: stages,
        nctd,
        nctd_map,
    })
}

fn nctd_search_entry(vs: &VersionSpace, caps: NctdCaps) -> Result<(usize, TeacherMap)> {
    nctd(vs, caps)
}

impl DimensionReport {
    pub fn to_json_value(&self, class: &ClassRef) -> serde_json::Value {
        let teaching_sets: serde_json::Map<String, serde_json::Value> = self
            .teaching_sets
            .iter()
            .map(|(&h, seq)| {
                (
                    class.hypothesis_name(h).to_string(),
                    examples_to_json(class, seq),
                )
            })
            .collect();
        serde_json::json!({
            "vcd": self.vcd,
            "td": self.td,
            "rtd": self.rtd,
            "nctd": self.nctd,
            "witnesses": {
                "shattered": self.shattered.iter().map(|&x| class.instance_name(x)).collect::<Vec<_>>(),
                "teaching_sets": teaching_sets,
                "rtd_stages": self.rtd_stages.iter().map(|s| serde_json::json!({
                    "size": s.size,
                    "removed": s.removed.iter().map(|&h| class.hypothesis_name(h)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "nctd_map": self.nctd_map.to_json_value(),
            },
        })
    }
}
