//! Constructive procedures: partitioning a class along a compact
//! distinguishable set, the recursive construction of a
//! local-and-version-space preference whose teaching cost is bounded by the
//! VC dimension, and the powerset local-preference tree builder.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::bits::{BitRow, IndexSet};
use crate::class::{ClassRef, LabeledExample, VersionSpace};
use crate::corpus::{powerset_bit, powerset_class, powerset_flip};
use crate::dims::compact_distinguishable_set;
use crate::error::{Error, Result};
use crate::prefs::{PreferenceFunction, Rank, VsKey};
use crate::teach::{simulate, CostOptions, TeachingPlan, TieMode};

/// One block of a partition: its members, and the pivot example that
/// separates it (absent for the final reference block).
#[derive(Clone, Debug)]
pub struct PartitionBlock {
    pub members: Vec<usize>,
    pub pivot: Option<LabeledExample>,
}

/// A partition of a version space along a compact distinguishable set:
/// pairwise disjoint blocks covering the space, each non-final block tagged
/// with the pivot instance whose opposite-of-reference label its members
/// share, the final block being the reference hypothesis alone.
#[derive(Clone, Debug)]
pub struct Partition {
    pub reference: usize,
    pub compact_set: Vec<usize>,
    pub blocks: Vec<PartitionBlock>,
}

/// Partitions `vs` along `compact`, which must be compact-distinguishable on
/// it, with `h_ref` as the reference hypothesis.
pub fn partition_class(vs: &VersionSpace, compact: &[usize], h_ref: usize) -> Result<Partition> {
    vs.check_member(h_ref)?;
    let mut sorted = compact.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    check_compact(vs, &sorted)?;
    let blocks = partition_blocks(vs.class(), vs.members(), &sorted, h_ref)?;
    Ok(Partition {
        reference: h_ref,
        compact_set: sorted,
        blocks: blocks
            .into_iter()
            .map(|(members, pivot)| PartitionBlock {
                members: members.to_indices(),
                pivot,
            })
            .collect(),
    })
}

fn check_compact(vs: &VersionSpace, columns: &[usize]) -> Result<()> {
    if !crate::dims::is_distinguishable(columns, vs)? {
        return Err(Error::invalid(
            "instance set does not distinguish the version space",
        ));
    }
    for i in 0..columns.len() {
        let mut trial = columns.to_vec();
        trial.remove(i);
        let still = if trial.is_empty() {
            vs.len() <= 1
        } else {
            crate::dims::is_distinguishable(&trial, vs)?
        };
        if still {
            return Err(Error::invalid(format!(
                "instance set is not compact: removing {} preserves distinguishability",
                vs.class().instance_name(columns[i])
            )));
        }
    }
    Ok(())
}

/// Refinements induced by (pivot, label) pairs over a compact set are
/// pairwise distinct subsets of the space; a violation means the set is not
/// actually compact and aborts with diagnostics.
fn check_refinement_uniqueness(
    class: &ClassRef,
    members: &IndexSet,
    compact: &[usize],
) -> Result<()> {
    let mut seen: HashMap<Vec<usize>, (usize, bool)> = HashMap::new();
    for &x in compact {
        for label in [false, true] {
            let subset: Vec<usize> = members
                .iter()
                .filter(|&h| class.label(h, x) == label)
                .collect();
            if let Some(&(px, plabel)) = seen.get(&subset) {
                return Err(Error::Construction(format!(
                    "refinements ({}, {}) and ({}, {}) induce the same subset {:?}",
                    class.instance_name(px),
                    u8::from(plabel),
                    class.instance_name(x),
                    u8::from(label),
                    subset
                )));
            }
            seen.insert(subset, (x, label));
        }
    }
    Ok(())
}

/// Core partition loop. Iterates pivots in ascending order; at each pivot the
/// block is the set of remaining hypotheses whose single-flip pattern at the
/// pivot still occurs among the remaining patterns and whose pivot label is
/// the opposite of the reference's. Returns the blocks with their pivots plus
/// the final reference block.
fn partition_blocks(
    class: &ClassRef,
    members: &IndexSet,
    compact: &[usize],
    h_ref: usize,
) -> Result<Vec<(IndexSet, Option<LabeledExample>)>> {
    check_refinement_uniqueness(class, members, compact)?;
    let mut rest = members.clone();
    let mut x_rest: Vec<usize> = compact.to_vec();
    let mut blocks = Vec::new();
    for &x in compact {
        let pos = x_rest
            .iter()
            .position(|&c| c == x)
            .expect("pivot still available");
        let patterns: HashSet<BitRow> = rest.iter().map(|h| class.row(h).project(&x_rest)).collect();
        let y = !class.label(h_ref, x);
        let mut block = IndexSet::empty(class.num_hypotheses());
        for h in rest.iter() {
            let mut flipped = class.row(h).project(&x_rest);
            flipped.flip(pos);
            if patterns.contains(&flipped) && class.label(h, x) == y {
                block.insert(h);
            }
        }
        if block.is_empty() {
            return Err(Error::Construction(format!(
                "empty block at pivot {} (set not compact on the remainder)",
                class.instance_name(x)
            )));
        }
        rest = rest.difference(&block);
        x_rest.retain(|&c| c != x);
        blocks.push((block, Some(LabeledExample::new(x, y))));
    }
    if rest.to_indices() != vec![h_ref] {
        return Err(Error::Construction(format!(
            "partition remainder is {:?}, expected the reference alone",
            rest.to_indices()
        )));
    }
    blocks.push((rest, None));
    Ok(blocks)
}

/// One recursion level of the preference construction, for inspection and
/// invariant checking.
#[derive(Clone, Debug)]
pub struct RecursionRecord {
    pub depth: usize,
    /// The learner's version space at this level.
    pub version_space: Vec<usize>,
    /// The search space being partitioned.
    pub search_space: Vec<usize>,
    /// Instances available to this level.
    pub available: Vec<usize>,
    /// The compact distinguishable set chosen.
    pub compact: Vec<usize>,
    /// The reference (current) hypothesis.
    pub reference: usize,
    pub blocks: Vec<BlockRecord>,
}

#[derive(Clone, Debug)]
pub struct BlockRecord {
    pub members: Vec<usize>,
    pub pivot: usize,
    pub label: bool,
    /// The refined version space the pivot example induces.
    pub version_space_next: Vec<usize>,
}

/// Output of the recursive construction.
pub struct LvsConstruction {
    pub sigma: PreferenceFunction,
    /// One plan per hypothesis, indexed by hypothesis.
    pub plans: Vec<TeachingPlan>,
    /// The bijection the rank entries use: hypothesis h gets index h+1 (row
    /// order).
    pub index_map: Vec<Rank>,
    pub root_compact: Vec<usize>,
    pub records: Vec<RecursionRecord>,
    /// Set when the class is a single hypothesis (the construction degenerates
    /// to defaults plus one self-confirming example).
    pub root_singleton: bool,
}

/// Recursively builds a local-and-version-space preference for `class` with
/// start `h0`, deriving the root compact set deterministically.
pub fn build_sigma_lvs(class: &ClassRef, h0: usize) -> Result<LvsConstruction> {
    build_lvs_inner(class, h0, None)
}

/// Same construction with an explicit root compact-distinguishable set
/// (useful to reproduce a specific curated run; deeper levels still derive
/// their own sets).
pub fn build_sigma_lvs_with_root(
    class: &ClassRef,
    h0: usize,
    root_compact: &[usize],
) -> Result<LvsConstruction> {
    build_lvs_inner(class, h0, Some(root_compact))
}

struct LvsBuilder {
    class: ClassRef,
    entries: HashMap<(VsKey, usize), BTreeMap<usize, Rank>>,
    plans: Vec<Option<Vec<LabeledExample>>>,
    records: Vec<RecursionRecord>,
}

fn build_lvs_inner(
    class: &ClassRef,
    h0: usize,
    root_compact: Option<&[usize]>,
) -> Result<LvsConstruction> {
    class.check_hypothesis(h0)?;
    let m = class.num_hypotheses();
    let mut builder = LvsBuilder {
        class: class.clone(),
        entries: HashMap::new(),
        plans: vec![None; m],
        records: Vec::new(),
    };
    let all_instances: Vec<usize> = (0..class.num_instances()).collect();
    let full = IndexSet::full(m);
    let root_set = builder.set_preference(
        &full,
        &full,
        &all_instances,
        h0,
        0,
        &[],
        root_compact,
    )?;

    // The start hypothesis keeps the learner in place with one
    // self-consistent example on the first pivot (or the first instance for
    // a singleton class).
    let root_singleton = m == 1;
    let anchor = root_set.first().copied().unwrap_or(0);
    builder.plans[h0] = Some(vec![LabeledExample::new(anchor, class.label(h0, anchor))]);

    let sigma = PreferenceFunction::Lvs {
        self_default: 0,
        other_default: (m + 1) as Rank,
        entries: builder.entries,
    };

    // Materialize plans with adversarial replay traces; every plan must land
    // on its target.
    let mut plans = Vec::with_capacity(m);
    for (target, steps) in builder.plans.into_iter().enumerate() {
        let steps = steps.ok_or_else(|| {
            Error::Construction(format!(
                "no plan emitted for {}",
                class.hypothesis_name(target)
            ))
        })?;
        let trace = simulate(
            &sigma,
            class,
            h0,
            &steps,
            TieMode::AdversarialVsTarget(target),
        )?;
        if trace.final_hypothesis() != target || trace.contradiction_at.is_some() {
            return Err(Error::Construction(format!(
                "plan for {} replays to {}",
                class.hypothesis_name(target),
                class.hypothesis_name(trace.final_hypothesis())
            )));
        }
        plans.push(TeachingPlan {
            target,
            cost: steps.len() as u32,
            steps,
            trace: trace.hypotheses,
        });
    }

    Ok(LvsConstruction {
        sigma,
        plans,
        index_map: (1..=m as Rank).collect(),
        root_compact: root_set,
        records: builder.records,
        root_singleton,
    })
}

impl LvsBuilder {
    /// Partitions `search` inside learner space `version`, writes the rank
    /// entries for each block's refined space, and recurses. Returns the
    /// compact set used at this level.
    #[allow(clippy::too_many_arguments)]
    fn set_preference(
        &mut self,
        version: &IndexSet,
        search: &IndexSet,
        available: &[usize],
        h_cur: usize,
        depth: usize,
        path: &[LabeledExample],
        forced_compact: Option<&[usize]>,
    ) -> Result<Vec<usize>> {
        if search.len() <= 1 {
            if let Some(sole) = search.sole_member() {
                self.plans[sole] = Some(path.to_vec());
            }
            return Ok(Vec::new());
        }
        let class = self.class.clone();
        let search_vs = VersionSpace::from_members(&class, search.clone());
        let compact = match forced_compact {
            Some(set) => {
                let mut sorted = set.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                check_compact(&search_vs, &sorted)?;
                sorted
            }
            None => compact_distinguishable_set(&search_vs, available)?,
        };
        let blocks = partition_blocks(&class, search, &compact, h_cur)?;

        let mut record = RecursionRecord {
            depth,
            version_space: version.to_indices(),
            search_space: search.to_indices(),
            available: available.to_vec(),
            compact: compact.clone(),
            reference: h_cur,
            blocks: Vec::new(),
        };

        // First pass: rank entries and the level record; the learner's space
        // is refined by the pivot example over the full class, not just the
        // search space.
        let mut refined: Vec<(IndexSet, usize)> = Vec::new();
        for (block, pivot) in &blocks {
            let Some(z) = pivot else {
                continue; // final reference block: its plan is this level's path
            };
            let mut v_next = IndexSet::empty(class.num_hypotheses());
            for h in version.iter() {
                if class.label(h, z.instance) == z.label {
                    v_next.insert(h);
                }
            }
            let key = (v_next.to_indices(), h_cur);
            let ranks = self.entries.entry(key).or_default();
            for h in block.iter() {
                ranks.insert(h, (h + 1) as Rank);
            }
            record.blocks.push(BlockRecord {
                members: block.to_indices(),
                pivot: z.instance,
                label: z.label,
                version_space_next: v_next.to_indices(),
            });
            let h_next = block.iter().next().expect("blocks are non-empty");
            refined.push((v_next, h_next));
        }
        self.records.push(record);

        // Second pass: recurse block by block in pivot order.
        for ((block, pivot), (v_next, h_next)) in blocks.iter().zip(&refined) {
            let z = pivot.expect("refined entries exist only for pivoted blocks");
            let child_available: Vec<usize> =
                compact.iter().copied().filter(|&c| c != z.instance).collect();
            let mut child_path = path.to_vec();
            child_path.push(z);
            self.set_preference(v_next, block, &child_available, *h_next, depth + 1, &child_path, None)?;
        }
        // The reference hypothesis survives as the final block; its plan is
        // the path into this level.
        if let Some(sole) = blocks.last().and_then(|(b, _)| b.sole_member()) {
            self.plans[sole] = Some(path.to_vec());
        }
        Ok(compact)
    }
}

/// Output of the powerset local-preference tree builder.
pub struct LocalTreeConstruction {
    pub class: ClassRef,
    pub sigma: PreferenceFunction,
    /// One plan per hypothesis row.
    pub plans: Vec<TeachingPlan>,
    /// Deepest plan length.
    pub depth: usize,
}

/// Builds a local preference over the size-`k` powerset class whose induced
/// teaching tree is rooted at `h0` with branching factor k at depth 1, k-1 at
/// depth 2, and so on, covering all 2^k hypotheses. Each tree edge flips the
/// current hypothesis's label on one unused instance; a node's children are
/// ranked in pivot order right after the node itself, so each edge's refined
/// space has a unique most-preferred hypothesis.
pub fn build_sigma_local_powerset(k: usize, h0: usize) -> Result<LocalTreeConstruction> {
    if !(2..=8).contains(&k) {
        return Err(Error::invalid("powerset tree builder supports 2 <= k <= 8"));
    }
    let class = powerset_class(k)?;
    let m = class.num_hypotheses();
    class.check_hypothesis(h0)?;

    let big = (m + 1) as Rank;
    let mut ranks = vec![vec![big; m]; m]; // ranks[candidate][current]
    for (h, row) in ranks.iter_mut().enumerate() {
        row[h] = 0;
    }

    let mut paths: Vec<Option<Vec<LabeledExample>>> = vec![None; m];
    paths[h0] = Some(vec![LabeledExample::new(0, powerset_bit(h0, 0, k))]);

    let mut used: HashSet<usize> = HashSet::from([h0]);
    let mut queue: std::collections::VecDeque<(usize, Vec<LabeledExample>, Vec<usize>, usize)> =
        std::collections::VecDeque::from([(h0, Vec::new(), Vec::new(), 0)]);
    let mut deepest = 0usize;

    while let Some((node, path, fixed, depth)) = queue.pop_front() {
        if used.len() == m {
            break;
        }
        let mut child_rank: Rank = 1;
        for pivot in 0..k {
            if fixed.contains(&pivot) {
                continue;
            }
            if used.len() == m {
                break;
            }
            let edge_label = !powerset_bit(node, pivot, k);
            // Preferred candidate: at the root, the single flip; deeper, flip
            // every unfixed instance up to and including the pivot.
            let preferred = if depth == 0 {
                powerset_flip(node, pivot, k)
            } else {
                let mut c = node;
                for j in 0..=pivot {
                    if !fixed.contains(&j) {
                        c = powerset_flip(c, j, k);
                    }
                }
                c
            };
            let child = if !used.contains(&preferred) {
                Some(preferred)
            } else {
                // Fallback: smallest unused row consistent with the path plus
                // the edge and agreeing with the node beyond the pivot (so
                // later sibling edges exclude it).
                (0..m).find(|&r| {
                    !used.contains(&r)
                        && powerset_bit(r, pivot, k) == edge_label
                        && path
                            .iter()
                            .all(|z| powerset_bit(r, z.instance, k) == z.label)
                        && (pivot + 1..k).all(|j| {
                            fixed.contains(&j) || powerset_bit(r, j, k) == powerset_bit(node, j, k)
                        })
                })
            };
            let Some(child) = child else {
                continue;
            };
            ranks[child][node] = child_rank;
            child_rank += 1;
            used.insert(child);
            let mut child_path = path.clone();
            child_path.push(LabeledExample::new(pivot, edge_label));
            paths[child] = Some(child_path.clone());
            deepest = deepest.max(depth + 1);
            let mut child_fixed = fixed.clone();
            child_fixed.push(pivot);
            queue.push_back((child, child_path, child_fixed, depth + 1));
        }
    }

    if used.len() != m {
        return Err(Error::Construction(format!(
            "tree covered {} of {m} hypotheses (builder invariant)",
            used.len()
        )));
    }

    let sigma = PreferenceFunction::Local { ranks };
    let mut plans = Vec::with_capacity(m);
    for (target, steps) in paths.into_iter().enumerate() {
        let steps = steps.expect("coverage checked above");
        let trace = simulate(
            &sigma,
            &class,
            h0,
            &steps,
            TieMode::AdversarialVsTarget(target),
        )?;
        if trace.final_hypothesis() != target {
            return Err(Error::Construction(format!(
                "powerset plan for row {target} replays to {}",
                trace.final_hypothesis()
            )));
        }
        plans.push(TeachingPlan {
            target,
            cost: steps.len() as u32,
            steps,
            trace: trace.hypotheses,
        });
    }

    Ok(LocalTreeConstruction {
        class,
        sigma,
        plans,
        depth: deepest,
    })
}

/// Convenience: worst-case teaching cost of a construction over all targets.
pub fn construction_td_sigma(
    sigma: &PreferenceFunction,
    class: &ClassRef,
    h0: usize,
) -> Result<crate::teach::Cost> {
    crate::teach::td_sigma(sigma, class, h0, CostOptions::default())
}
