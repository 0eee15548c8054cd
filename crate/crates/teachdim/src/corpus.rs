//! Built-in hypothesis classes, curated preference functions and teaching
//! sequences, plus the random-class generator the property suites use.
//!
//! Two curated classes ship with the crate: the Warmuth class (the smallest
//! class whose recursive teaching dimension exceeds its VC dimension) and
//! "gap6", a six-hypothesis class exhibiting the gap td=3, rtd=2, nctd=1.
//! The preference tables bundled for them achieve the known optima of their
//! families.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::class::{class_from_csv, class_from_json, ClassRef, HypothesisClass, LabeledExample};
use crate::dims::TeacherMap;
use crate::error::{Error, Result};
use crate::prefs::{PreferenceFunction, Rank, VsKey};

/// The 10x5 Warmuth class. Calls share one instance so that version spaces,
/// teacher maps, and preference tables built from it interoperate.
pub fn warmuth_class() -> ClassRef {
    static CLASS: std::sync::OnceLock<ClassRef> = std::sync::OnceLock::new();
    CLASS
        .get_or_init(|| {
            let rows = [
                [1, 1, 0, 0, 0], // h1
                [0, 1, 1, 0, 0], // h2
                [0, 0, 1, 1, 0], // h3
                [0, 0, 0, 1, 1], // h4
                [1, 0, 0, 0, 1], // h5
                [1, 1, 0, 1, 0], // h6
                [0, 1, 1, 0, 1], // h7
                [1, 0, 1, 1, 0], // h8
                [0, 1, 0, 1, 1], // h9
                [1, 0, 1, 0, 1], // h10
            ];
            build_class(&rows, "x", "h")
        })
        .clone()
}

/// The 6x6 class with td = 3, rtd = 2, nctd = 1. Shared instance, like
/// [`warmuth_class`].
pub fn gap6_class() -> ClassRef {
    static CLASS: std::sync::OnceLock<ClassRef> = std::sync::OnceLock::new();
    CLASS
        .get_or_init(|| {
            let rows = [
                [1, 0, 0, 0, 0, 1], // h1
                [0, 1, 0, 0, 0, 1], // h2
                [1, 1, 1, 0, 0, 0], // h3
                [1, 1, 1, 1, 0, 0], // h4
                [1, 1, 1, 0, 1, 0], // h5
                [0, 0, 0, 1, 1, 1], // h6
            ];
            build_class(&rows, "x", "h")
        })
        .clone()
}

fn build_class<const N: usize>(rows: &[[u8; N]], x_prefix: &str, h_prefix: &str) -> ClassRef {
    let bools: Vec<Vec<bool>> = rows
        .iter()
        .map(|r| r.iter().map(|&b| b == 1).collect())
        .collect();
    let instances = (1..=N).map(|i| format!("{x_prefix}{i}")).collect();
    let hypotheses = (1..=rows.len()).map(|i| format!("{h_prefix}{i}")).collect();
    HypothesisClass::new(bools, Some(instances), Some(hypotheses))
        .expect("curated classes are valid")
}

/// All 2^k boolean rows over k instances, in ascending binary order with the
/// first instance as the most significant bit. Instances are named x0..,
/// hypotheses h0.. in row order.
pub fn powerset_class(k: usize) -> Result<ClassRef> {
    if k == 0 || k > 20 {
        return Err(Error::invalid("powerset class supports 1 <= k <= 20"));
    }
    let m = 1usize << k;
    let rows: Vec<Vec<bool>> = (0..m)
        .map(|r| (0..k).map(|j| powerset_bit(r, j, k)).collect())
        .collect();
    let instances = (0..k).map(|j| format!("x{j}")).collect();
    let hypotheses = (0..m).map(|r| format!("h{r}")).collect();
    HypothesisClass::new(rows, Some(instances), Some(hypotheses))
}

/// Label of powerset row `r` on instance `j` (most significant bit first).
pub fn powerset_bit(r: usize, j: usize, k: usize) -> bool {
    (r >> (k - 1 - j)) & 1 == 1
}

/// Powerset row index with instance `j` flipped.
pub fn powerset_flip(r: usize, j: usize, k: usize) -> usize {
    r ^ (1 << (k - 1 - j))
}

// ---------------------------------------------------------------------------
// Curated preference functions
// ---------------------------------------------------------------------------

/// Constant preference (rank 0 everywhere); the optimum of its family for
/// both curated classes.
pub fn const_sigma() -> PreferenceFunction {
    PreferenceFunction::Const { rank: 0 }
}

/// Curated global preference for the Warmuth class: the trivial all-zero
/// table (no global ordering beats the worst-case dimension there).
pub fn warmuth_global_sigma() -> PreferenceFunction {
    PreferenceFunction::Global { ranks: vec![0; 10] }
}

/// Curated global preference for gap6: prefer h3, everything else tied.
pub fn gap6_global_sigma() -> PreferenceFunction {
    PreferenceFunction::Global {
        ranks: vec![1, 1, 0, 1, 1, 1],
    }
}

/// Curated version-space preference for the Warmuth class: rank 0 exactly on
/// the paired two-element spaces and the singletons, default 1. Its teaching
/// sequences have length two.
pub fn warmuth_gvs_sigma() -> PreferenceFunction {
    // (hypothesis, partner) pairs: {h_i, partner} gets rank 0 for h_i.
    let partners = [5usize, 6, 7, 8, 9, 8, 9, 5, 6, 7];
    let mut entries: HashMap<VsKey, BTreeMap<usize, Rank>> = HashMap::new();
    for (h, &p) in partners.iter().enumerate() {
        let mut pair = vec![h, p];
        pair.sort_unstable();
        entries.entry(pair).or_default().insert(h, 0);
        entries.entry(vec![h]).or_default().insert(h, 0);
    }
    PreferenceFunction::Gvs { default: 1, entries }
}

/// Curated version-space preference for gap6: rank 0 on the listed spaces,
/// default 1. Its teaching sequences are singletons.
pub fn gap6_gvs_sigma() -> PreferenceFunction {
    let zero_sets: [(usize, &[&[usize]]); 6] = [
        (0, &[&[0, 2, 3, 4], &[0, 2, 3], &[0, 2, 4], &[0]]),
        (1, &[&[1, 2, 3, 4], &[1, 2, 3], &[1, 2, 4], &[1]]),
        (2, &[&[2, 3, 4], &[2, 3], &[2, 4], &[2]]),
        (3, &[&[3, 5], &[3]]),
        (4, &[&[4, 5], &[4]]),
        (5, &[&[0, 1, 5], &[0, 5], &[1, 5], &[5]]),
    ];
    let mut entries: HashMap<VsKey, BTreeMap<usize, Rank>> = HashMap::new();
    for (h, sets) in zero_sets {
        for set in sets {
            entries.entry(set.to_vec()).or_default().insert(h, 0);
        }
    }
    PreferenceFunction::Gvs { default: 1, entries }
}

/// Curated local-and-version-space preference for the Warmuth class,
/// achieving teaching complexity 1 from start h1. For each hypothesis g
/// there is a four-element companion set E(g): rank 0 applies to g whenever
/// the version space is {g} plus any subset of E(g) and the current
/// hypothesis is h1 or g itself. Everything else, the current hypothesis
/// included, falls to rank 11.
pub fn warmuth_lvs_sigma() -> PreferenceFunction {
    let companions: [&[usize]; 10] = [
        &[4, 5, 7, 9], // E(h1) = {h5,h6,h8,h10}
        &[0, 5, 6, 8], // E(h2) = {h1,h6,h7,h9}
        &[1, 6, 7, 9], // E(h3) = {h2,h7,h8,h10}
        &[2, 5, 7, 8], // E(h4) = {h3,h6,h8,h9}
        &[3, 6, 8, 9], // E(h5) = {h4,h7,h9,h10}
        &[0, 3, 4, 8], // E(h6) = {h1,h4,h5,h9}
        &[0, 1, 4, 9], // E(h7) = {h1,h2,h5,h10}
        &[0, 1, 2, 5], // E(h8) = {h1,h2,h3,h6}
        &[1, 2, 3, 6], // E(h9) = {h2,h3,h4,h7}
        &[2, 3, 4, 7], // E(h10) = {h3,h4,h5,h8}
    ];
    let mut entries: HashMap<(VsKey, usize), BTreeMap<usize, Rank>> = HashMap::new();
    for (g, extras) in companions.iter().enumerate() {
        for subset_bits in 0..(1u32 << extras.len()) {
            let mut vs: Vec<usize> = vec![g];
            for (i, &e) in extras.iter().enumerate() {
                if subset_bits >> i & 1 == 1 {
                    vs.push(e);
                }
            }
            vs.sort_unstable();
            for h in [0usize, g] {
                entries
                    .entry((vs.clone(), h))
                    .or_default()
                    .insert(g, 0);
            }
        }
    }
    PreferenceFunction::Lvs {
        self_default: 11,
        other_default: 11,
        entries,
    }
}

/// Curated local-and-version-space preference for gap6 (the recursive
/// construction's output for root set {x2,x3,x4,x5} and start h1, with its
/// curated rank values).
pub fn gap6_lvs_sigma() -> PreferenceFunction {
    let mut entries: HashMap<(VsKey, usize), BTreeMap<usize, Rank>> = HashMap::new();
    let mut put = |vs: &[usize], h: usize, ranks: &[(usize, Rank)]| {
        entries.insert((vs.to_vec(), h), ranks.iter().copied().collect());
    };
    // Ranked entries carry the target's index value; unlisted members of the
    // listed spaces sit at 7.
    put(&[1, 2, 3, 4], 0, &[(1, 2), (2, 7), (3, 7), (4, 7)]);
    put(&[2, 3, 4], 0, &[(2, 3), (3, 7), (4, 7)]);
    put(&[3, 5], 0, &[(3, 4), (5, 6)]);
    put(&[4, 5], 0, &[(4, 5), (5, 7)]);
    put(&[5], 3, &[(5, 6)]);
    PreferenceFunction::Lvs {
        self_default: 0,
        other_default: 8,
        entries,
    }
}

// ---------------------------------------------------------------------------
// Curated teaching sequences
// ---------------------------------------------------------------------------

fn teacher_map(class: &ClassRef, sets: &[&[usize]]) -> TeacherMap {
    let mapped: BTreeMap<usize, Vec<LabeledExample>> = sets
        .iter()
        .enumerate()
        .map(|(h, instances)| {
            (
                h,
                instances
                    .iter()
                    .map(|&x| LabeledExample::new(x, class.label(h, x)))
                    .collect(),
            )
        })
        .collect();
    TeacherMap::new(class, mapped).expect("curated sequences are consistent")
}

/// Warmuth teaching sequences for the constant/global families (size-3 sets).
pub fn warmuth_const_sequences() -> TeacherMap {
    let sets: [&[usize]; 10] = [
        &[0, 1, 3],
        &[1, 2, 4],
        &[0, 2, 3],
        &[1, 3, 4],
        &[0, 2, 4],
        &[0, 1, 3],
        &[1, 2, 4],
        &[0, 2, 3],
        &[1, 3, 4],
        &[0, 2, 4],
    ];
    teacher_map(&warmuth_class(), &sets)
}

/// Warmuth teaching sequences for the version-space family (size-2,
/// non-clashing).
pub fn warmuth_gvs_sequences() -> TeacherMap {
    let sets: [&[usize]; 10] = [
        &[0, 1],
        &[1, 2],
        &[2, 3],
        &[3, 4],
        &[0, 4],
        &[1, 3],
        &[2, 4],
        &[0, 3],
        &[1, 4],
        &[0, 2],
    ];
    teacher_map(&warmuth_class(), &sets)
}

/// Warmuth teaching sequences for the local family (order matters).
pub fn warmuth_local_sequences() -> TeacherMap {
    let sets: [&[usize]; 10] = [
        &[0],
        &[2],
        &[2, 3],
        &[4, 3],
        &[4],
        &[3],
        &[2, 4],
        &[3, 2],
        &[3, 4],
        &[4, 2],
    ];
    teacher_map(&warmuth_class(), &sets)
}

/// Warmuth teaching sequences for the curated lvs preference (singletons).
pub fn warmuth_lvs_sequences() -> TeacherMap {
    let sets: [&[usize]; 10] = [&[0], &[1], &[2], &[3], &[4], &[2], &[3], &[4], &[0], &[1]];
    teacher_map(&warmuth_class(), &sets)
}

/// gap6 teaching sequences for the constant family.
pub fn gap6_const_sequences() -> TeacherMap {
    let sets: [&[usize]; 6] = [&[0, 5], &[1, 5], &[2, 3, 4], &[3, 4], &[3, 4], &[3, 4]];
    teacher_map(&gap6_class(), &sets)
}

/// gap6 teaching sequences for the global family.
pub fn gap6_global_sequences() -> TeacherMap {
    let sets: [&[usize]; 6] = [&[0, 5], &[1, 5], &[0], &[3, 4], &[3, 4], &[3, 4]];
    teacher_map(&gap6_class(), &sets)
}

/// gap6 teaching sequences for the version-space family (singletons).
pub fn gap6_gvs_sequences() -> TeacherMap {
    let sets: [&[usize]; 6] = [&[0], &[1], &[2], &[3], &[4], &[5]];
    teacher_map(&gap6_class(), &sets)
}

/// gap6 teaching sequences emitted by the recursive lvs construction with
/// root set {x2,x3,x4,x5}.
pub fn gap6_lvs_sequences() -> TeacherMap {
    let class = gap6_class();
    let with_labels: [&[(usize, bool)]; 6] = [
        &[(1, false)],
        &[(1, true)],
        &[(2, true)],
        &[(3, true)],
        &[(4, true)],
        &[(3, true), (4, true)],
    ];
    let mapped: BTreeMap<usize, Vec<LabeledExample>> = with_labels
        .iter()
        .enumerate()
        .map(|(h, seq)| {
            (
                h,
                seq.iter()
                    .map(|&(x, label)| LabeledExample::new(x, label))
                    .collect(),
            )
        })
        .collect();
    TeacherMap::new(&class, mapped).expect("curated sequences are consistent")
}

// ---------------------------------------------------------------------------
// Artifact registry
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    Class,
    Sigma,
    TeacherMap,
}

pub enum ArtifactPayload {
    Class(ClassRef),
    Sigma(PreferenceFunction),
    TeacherMap(TeacherMap),
}

pub struct NamedArtifact {
    pub kind: ArtifactKind,
    pub name: &'static str,
    pub payload: ArtifactPayload,
}

/// Every bundled preference function, by name.
pub fn bundled_sigmas() -> Vec<NamedArtifact> {
    let warmuth = warmuth_class();
    let gap6 = gap6_class();
    let sigma = |name, payload| NamedArtifact {
        kind: ArtifactKind::Sigma,
        name,
        payload: ArtifactPayload::Sigma(payload),
    };
    vec![
        sigma("warmuth-const", const_sigma()),
        sigma("warmuth-global", warmuth_global_sigma()),
        sigma("warmuth-local-hamming", crate::prefs::hamming_local(&warmuth)),
        sigma("warmuth-gvs", warmuth_gvs_sigma()),
        sigma("warmuth-lvs", warmuth_lvs_sigma()),
        sigma("gap6-const", const_sigma()),
        sigma("gap6-global", gap6_global_sigma()),
        sigma("gap6-local-hamming", crate::prefs::hamming_local(&gap6)),
        sigma("gap6-gvs", gap6_gvs_sigma()),
        sigma("gap6-lvs", gap6_lvs_sigma()),
    ]
}

/// Every bundled teacher map, by name.
pub fn bundled_teacher_maps() -> Vec<NamedArtifact> {
    let map = |name, payload| NamedArtifact {
        kind: ArtifactKind::TeacherMap,
        name,
        payload: ArtifactPayload::TeacherMap(payload),
    };
    vec![
        map("warmuth-s-const", warmuth_const_sequences()),
        map("warmuth-s-gvs", warmuth_gvs_sequences()),
        map("warmuth-s-local", warmuth_local_sequences()),
        map("warmuth-s-lvs", warmuth_lvs_sequences()),
        map("gap6-s-const", gap6_const_sequences()),
        map("gap6-s-global", gap6_global_sequences()),
        map("gap6-s-gvs", gap6_gvs_sequences()),
        map("gap6-s-lvs", gap6_lvs_sequences()),
    ]
}

/// Bundled classes, by name. `powerset-<k>` is also accepted by
/// [`class_by_name`].
pub fn bundled_classes() -> Vec<NamedArtifact> {
    vec![
        NamedArtifact {
            kind: ArtifactKind::Class,
            name: "warmuth",
            payload: ArtifactPayload::Class(warmuth_class()),
        },
        NamedArtifact {
            kind: ArtifactKind::Class,
            name: "gap6",
            payload: ArtifactPayload::Class(gap6_class()),
        },
    ]
}

/// Resolves a class by builtin name (`warmuth`, `gap6`, `powerset-<k>`) or by
/// file path (`.json` or `.csv`).
pub fn class_by_name(name: &str) -> Result<ClassRef> {
    match name {
        "warmuth" => Ok(warmuth_class()),
        "gap6" => Ok(gap6_class()),
        _ => {
            if let Some(k) = name.strip_prefix("powerset-") {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad powerset size in {name:?}")))?;
                return powerset_class(k);
            }
            let path = std::path::Path::new(name);
            if path.exists() {
                let text = std::fs::read_to_string(path)?;
                if name.ends_with(".csv") {
                    class_from_csv(&text)
                } else {
                    class_from_json(&text)
                }
            } else {
                Err(Error::invalid(format!(
                    "unknown class {name:?}: not a builtin and not a file"
                )))
            }
        }
    }
}

/// Resolves a sigma by builtin name or file path.
pub fn sigma_by_name(name: &str) -> Result<PreferenceFunction> {
    for artifact in bundled_sigmas() {
        if artifact.name == name {
            if let ArtifactPayload::Sigma(s) = artifact.payload {
                return Ok(s);
            }
        }
    }
    let path = std::path::Path::new(name);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        crate::prefs::sigma_from_json(&text)
    } else {
        Err(Error::invalid(format!(
            "unknown sigma {name:?}: not a builtin and not a file"
        )))
    }
}

// ---------------------------------------------------------------------------
// Random classes for the property suites
// ---------------------------------------------------------------------------

/// Uniformly samples a class with the given dimensions, rejecting duplicate
/// rows. `num_hypotheses` must fit: at most 2^num_instances distinct rows
/// exist.
pub fn random_class(
    rng: &mut impl Rng,
    num_hypotheses: usize,
    num_instances: usize,
) -> Result<ClassRef> {
    if num_hypotheses == 0 || num_instances == 0 {
        return Err(Error::invalid("random class needs at least 1x1"));
    }
    if num_instances < 63 && num_hypotheses > (1usize << num_instances) {
        return Err(Error::invalid(
            "more hypotheses requested than distinct rows exist",
        ));
    }
    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(num_hypotheses);
    let mut seen = std::collections::HashSet::new();
    while rows.len() < num_hypotheses {
        let row: Vec<bool> = (0..num_instances).map(|_| rng.gen()).collect();
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    HypothesisClass::new(rows, None, None)
}
