//! Exact teaching-complexity toolkit for finite boolean hypothesis classes.
//!
//! The crate computes and cross-validates the classical batch teaching
//! measures (worst-case, recursive, and non-clashing teaching dimension, VC
//! dimension) and the sequential preference-based model in which a learner
//! moves through its version space by always adopting a most-preferred
//! consistent hypothesis. Preference functions come in five families,
//! depending on which arguments of sigma(h'; H, h) they may read: constant,
//! global (h' only), global-version-space (h', H), local (h', h), and
//! local-version-space (all three). The worst-case number of examples needed
//! to steer the learner to any target under a fixed preference function is an
//! exact min-max quantity computed here by memoized game-tree search, and the
//! crate ships two constructions: a recursive builder whose output teaches
//! any class with cost at most its VC dimension, and a powerset tree builder
//! giving a local preference with cost 3 over the 128-hypothesis cube.
//!
//! Start with the runnable examples (`cargo run --example dimensions`) or the
//! `teachdim` binary (`teachdim dims --class warmuth`).

pub mod bits;
pub mod class;
pub mod construct;
pub mod corpus;
pub mod dims;
pub mod error;
pub mod prefs;
pub mod repro;
pub mod teach;

pub use class::{
    class_from_csv, class_from_json, class_to_csv, class_to_json, hamming, restrict_patterns,
    ClassRef, HypothesisClass, LabeledExample, PatternSet, VersionSpace,
};
pub use construct::{
    build_sigma_local_powerset, build_sigma_lvs, build_sigma_lvs_with_root, partition_class,
    LocalTreeConstruction, LvsConstruction, Partition, PartitionBlock, RecursionRecord,
};
pub use dims::{
    compact_distinguishable_set, dimension_report, find_clash, is_distinguishable,
    is_non_clashing, minimal_teaching_set, nctd, rtd, sigma_td_lower_bound, td, vcd, vcd_full,
    DimensionReport, NctdCaps, TeacherMap,
};
pub use error::{Error, Result};
pub use prefs::{
    candidate_set, collusion_free_check, evaluate, hamming_local, reachable_version_spaces,
    sigma_from_json, sigma_to_json, CollusionCaps, CollusionReport, PreferenceFunction, Rank,
};
pub use teach::{
    d_sigma, d_sigma_naive, extract_plan, sigma_td_global_bruteforce, simulate, td_sigma, Cost,
    CostOptions, GlobalOracleCaps, SimTrace, TeachingPlan, TieMode,
};
