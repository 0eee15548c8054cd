//! Hypothesis classes as bit matrices, labeled examples, version-space
//! algebra, and pattern restriction.
//!
//! A [`HypothesisClass`] is a set of distinct boolean functions over a finite
//! instance set, stored row-per-hypothesis. A [`VersionSpace`] is a subset of
//! hypothesis indices tied to the identity of its class; the canonical form
//! of a version space is its sorted index list, which is what the sparse
//! preference tables and memo keys use. Everything here is immutable after
//! construction and freely shareable.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::{BitRow, IndexSet};
use crate::error::{Error, Result};

static NEXT_CLASS_ID: AtomicU64 = AtomicU64::new(1);

/// Shared handle to an immutable hypothesis class.
pub type ClassRef = Arc<HypothesisClass>;

/// A finite class of distinct boolean hypotheses over a finite instance set.
pub struct HypothesisClass {
    id: u64,
    num_instances: usize,
    rows: Vec<BitRow>,
    instance_names: Vec<String>,
    hypothesis_names: Vec<String>,
}

/// One labeled example: an instance index paired with a boolean label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledExample {
    pub instance: usize,
    pub label: bool,
}

impl LabeledExample {
    pub fn new(instance: usize, label: bool) -> Self {
        LabeledExample { instance, label }
    }
}

impl HypothesisClass {
    /// Builds a class from label rows. Rows must be non-empty, equal length,
    /// and pairwise distinct; duplicates are a hard error, not a merge.
    pub fn new(
        rows: Vec<Vec<bool>>,
        instance_names: Option<Vec<String>>,
        hypothesis_names: Option<Vec<String>>,
    ) -> Result<ClassRef> {
        if rows.is_empty() {
            return Err(Error::invalid("a hypothesis class needs at least one hypothesis"));
        }
        let num_instances = rows[0].len();
        if num_instances == 0 {
            return Err(Error::invalid("a hypothesis class needs at least one instance"));
        }
        if rows.iter().any(|r| r.len() != num_instances) {
            return Err(Error::invalid("ragged rows: all hypotheses must label every instance"));
        }
        let bit_rows: Vec<BitRow> = rows.iter().map(|r| BitRow::from_bools(r)).collect();
        let mut seen = HashSet::new();
        for (i, row) in bit_rows.iter().enumerate() {
            if !seen.insert(row.clone()) {
                return Err(Error::invalid(format!(
                    "duplicate hypothesis row at index {i}: hypotheses must be distinct functions"
                )));
            }
        }
        let instance_names = match instance_names {
            Some(names) => {
                if names.len() != num_instances {
                    return Err(Error::invalid("instance name count does not match columns"));
                }
                names
            }
            None => (0..num_instances).map(|i| format!("x{i}")).collect(),
        };
        let hypothesis_names = match hypothesis_names {
            Some(names) => {
                if names.len() != bit_rows.len() {
                    return Err(Error::invalid("hypothesis name count does not match rows"));
                }
                names
            }
            None => (0..bit_rows.len()).map(|i| format!("h{i}")).collect(),
        };
        for (names, what) in [(&instance_names, "instance"), (&hypothesis_names, "hypothesis")] {
            let mut seen = HashSet::new();
            for n in names.iter() {
                if !seen.insert(n) {
                    return Err(Error::invalid(format!("duplicate {what} name: {n}")));
                }
            }
        }
        Ok(Arc::new(HypothesisClass {
            id: NEXT_CLASS_ID.fetch_add(1, Ordering::Relaxed),
            num_instances,
            rows: bit_rows,
            instance_names,
            hypothesis_names,
        }))
    }

    pub fn num_instances(&self) -> usize {
        self.num_instances
    }

    pub fn num_hypotheses(&self) -> usize {
        self.rows.len()
    }

    /// The label hypothesis `h` assigns to instance `x`.
    pub fn label(&self, h: usize, x: usize) -> bool {
        self.rows[h].get(x)
    }

    pub fn row(&self, h: usize) -> &BitRow {
        &self.rows[h]
    }

    pub fn instance_name(&self, x: usize) -> &str {
        &self.instance_names[x]
    }

    pub fn hypothesis_name(&self, h: usize) -> &str {
        &self.hypothesis_names[h]
    }

    pub fn instance_names(&self) -> &[String] {
        &self.instance_names
    }

    pub fn hypothesis_names(&self) -> &[String] {
        &self.hypothesis_names
    }

    pub fn instance_by_name(&self, name: &str) -> Option<usize> {
        self.instance_names.iter().position(|n| n == name)
    }

    pub fn hypothesis_by_name(&self, name: &str) -> Option<usize> {
        self.hypothesis_names.iter().position(|n| n == name)
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    fn check_instance(&self, x: usize) -> Result<()> {
        if x >= self.num_instances {
            return Err(Error::invalid(format!(
                "instance index {x} out of range (class has {} instances)",
                self.num_instances
            )));
        }
        Ok(())
    }

    pub(crate) fn check_hypothesis(&self, h: usize) -> Result<()> {
        if h >= self.rows.len() {
            return Err(Error::invalid(format!(
                "hypothesis index {h} out of range (class has {} hypotheses)",
                self.rows.len()
            )));
        }
        Ok(())
    }

    /// True iff hypothesis `h` agrees with the labeled example.
    pub fn consistent(&self, h: usize, z: LabeledExample) -> Result<bool> {
        self.check_hypothesis(h)?;
        self.check_instance(z.instance)?;
        Ok(self.rows[h].get(z.instance) == z.label)
    }
}

impl std::fmt::Debug for HypothesisClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HypothesisClass")
            .field("hypotheses", &self.rows.len())
            .field("instances", &self.num_instances)
            .finish()
    }
}

/// A subset of a class's hypotheses, tied to the identity of that class.
#[derive(Clone)]
pub struct VersionSpace {
    class: ClassRef,
    members: IndexSet,
}

impl VersionSpace {
    /// The full class as a version space (the empty example set induces it).
    pub fn full(class: &ClassRef) -> Self {
        VersionSpace {
            class: class.clone(),
            members: IndexSet::full(class.num_hypotheses()),
        }
    }

    pub fn from_members(class: &ClassRef, members: IndexSet) -> Self {
        assert_eq!(members.capacity(), class.num_hypotheses());
        VersionSpace {
            class: class.clone(),
            members,
        }
    }

    pub fn from_indices(class: &ClassRef, indices: &[usize]) -> Result<Self> {
        for &h in indices {
            class.check_hypothesis(h)?;
        }
        Ok(VersionSpace {
            class: class.clone(),
            members: IndexSet::from_indices(class.num_hypotheses(), indices),
        })
    }

    /// Hypotheses consistent with every example in `examples`. The empty set
    /// induces the full class; contradictory examples induce the empty space.
    pub fn from_examples(class: &ClassRef, examples: &[LabeledExample]) -> Result<Self> {
        let mut vs = Self::full(class);
        for &z in examples {
            vs = vs.refine(z)?;
        }
        Ok(vs)
    }

    /// Intersects with the hypotheses consistent with one more example.
    pub fn refine(&self, z: LabeledExample) -> Result<Self> {
        self.class.check_instance(z.instance)?;
        let mut members = IndexSet::empty(self.members.capacity());
        for h in self.members.iter() {
            if self.class.label(h, z.instance) == z.label {
                members.insert(h);
            }
        }
        Ok(VersionSpace {
            class: self.class.clone(),
            members,
        })
    }

    pub fn class(&self) -> &ClassRef {
        &self.class
    }

    pub fn members(&self) -> &IndexSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.members.contains(h)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    /// Canonical form: the sorted member index list.
    pub fn to_indices(&self) -> Vec<usize> {
        self.members.to_indices()
    }

    pub fn intersect(&self, other: &VersionSpace) -> Result<VersionSpace> {
        self.check_same_class(other)?;
        Ok(VersionSpace {
            class: self.class.clone(),
            members: self.members.intersection(&other.members),
        })
    }

    pub(crate) fn check_same_class(&self, other: &VersionSpace) -> Result<()> {
        if self.class.id() != other.class.id() {
            return Err(Error::invalid(
                "version spaces belong to different hypothesis classes",
            ));
        }
        Ok(())
    }

    pub(crate) fn check_member(&self, h: usize) -> Result<()> {
        self.class.check_hypothesis(h)?;
        if !self.members.contains(h) {
            return Err(Error::invalid(format!(
                "hypothesis {} is not in the version space",
                self.class.hypothesis_name(h)
            )));
        }
        Ok(())
    }
}

impl std::fmt::Debug for VersionSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set()
            .entries(self.members.iter().map(|h| self.class.hypothesis_name(h)))
            .finish()
    }
}

/// Distinct label patterns of a version space restricted to an instance
/// subset, read in ascending instance order.
pub struct PatternSet {
    columns: Vec<usize>,
    patterns: HashSet<BitRow>,
}

impl PatternSet {
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, pattern: &BitRow) -> bool {
        self.patterns.contains(pattern)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BitRow> {
        self.patterns.iter()
    }
}

/// Projects the members of `vs` onto the instances `columns`; errors on an
/// empty column set.
pub fn restrict_patterns(vs: &VersionSpace, columns: &[usize]) -> Result<PatternSet> {
    if columns.is_empty() {
        return Err(Error::invalid("pattern restriction needs a non-empty instance set"));
    }
    let mut sorted: Vec<usize> = columns.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &x in &sorted {
        if x >= vs.class().num_instances() {
            return Err(Error::invalid(format!("instance index {x} out of range")));
        }
    }
    let patterns = project_members(vs, &sorted);
    Ok(PatternSet {
        columns: sorted,
        patterns,
    })
}

/// Projection without the non-empty guard; internal callers treat the empty
/// column set as "all patterns equal".
pub(crate) fn project_members(vs: &VersionSpace, columns: &[usize]) -> HashSet<BitRow> {
    vs.iter()
        .map(|h| vs.class().row(h).project(columns))
        .collect()
}

/// Number of distinct patterns of `vs` on `columns` (0 columns -> 1 pattern
/// when non-empty).
pub(crate) fn pattern_count(vs: &VersionSpace, columns: &[usize]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    if columns.is_empty() {
        return 1;
    }
    project_members(vs, columns).len()
}

/// Hamming distance between two hypothesis rows.
pub fn hamming(class: &HypothesisClass, a: usize, b: usize) -> Result<usize> {
    class.check_hypothesis(a)?;
    class.check_hypothesis(b)?;
    Ok(class.row(a).hamming(class.row(b)))
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ClassJson {
    instances: Vec<String>,
    hypotheses: Vec<HypothesisJson>,
}

#[derive(Serialize, Deserialize)]
struct HypothesisJson {
    name: String,
    labels: Vec<u8>,
}

/// Parses the JSON class format:
/// `{"instances":[...], "hypotheses":[{"name":..., "labels":[0,1,...]}]}`.
pub fn class_from_json(text: &str) -> Result<ClassRef> {
    let parsed: ClassJson =
        serde_json::from_str(text).map_err(|e| Error::format(format!("class json: {e}")))?;
    let mut rows = Vec::with_capacity(parsed.hypotheses.len());
    let mut names = Vec::with_capacity(parsed.hypotheses.len());
    for h in &parsed.hypotheses {
        let mut row = Vec::with_capacity(h.labels.len());
        for &b in &h.labels {
            match b {
                0 => row.push(false),
                1 => row.push(true),
                other => {
                    return Err(Error::format(format!(
                        "hypothesis {}: label {other} is not 0/1",
                        h.name
                    )))
                }
            }
        }
        rows.push(row);
        names.push(h.name.clone());
    }
    HypothesisClass::new(rows, Some(parsed.instances), Some(names))
}

pub fn class_to_json(class: &HypothesisClass) -> String {
    let doc = ClassJson {
        instances: class.instance_names.clone(),
        hypotheses: (0..class.num_hypotheses())
            .map(|h| HypothesisJson {
                name: class.hypothesis_names[h].clone(),
                labels: (0..class.num_instances())
                    .map(|x| u8::from(class.label(h, x)))
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("class serialization cannot fail")
}

/// Parses the CSV class format: header row `x1,...,xn`, then one row
/// `h_name,b1,...,bn` per hypothesis with b in {0,1}.
pub fn class_from_csv(text: &str) -> Result<ClassRef> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::format("csv class: missing header row"))?;
    let instance_names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    if instance_names.iter().any(|n| n.is_empty()) {
        return Err(Error::format("csv class: empty instance name in header"));
    }
    let n = instance_names.len();
    let mut rows = Vec::new();
    let mut names = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(|s| s.trim()).collect();
        if fields.len() != n + 1 {
            return Err(Error::format(format!(
                "csv class: row {} has {} fields, expected {}",
                lineno + 2,
                fields.len(),
                n + 1
            )));
        }
        names.push(fields[0].to_string());
        let mut row = Vec::with_capacity(n);
        for f in &fields[1..] {
            match *f {
                "0" => row.push(false),
                "1" => row.push(true),
                other => {
                    return Err(Error::format(format!(
                        "csv class: row {}: label {other:?} is not 0/1",
                        lineno + 2
                    )))
                }
            }
        }
        rows.push(row);
    }
    HypothesisClass::new(rows, Some(instance_names), Some(names))
}

pub fn class_to_csv(class: &HypothesisClass) -> String {
    let mut out = class.instance_names.join(",");
    out.push('\n');
    for h in 0..class.num_hypotheses() {
        out.push_str(&class.hypothesis_names[h]);
        for x in 0..class.num_instances() {
            out.push(',');
            out.push(if class.label(h, x) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}
