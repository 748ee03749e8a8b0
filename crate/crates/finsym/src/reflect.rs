//! The spiny reflection: repeatedly merge cells that share a
//! consecutive-edge tuple, saturating the congruence after every pass,
//! until the quotient is spiny. Colimits of partial groupoids and partial
//! groups are the reflections of the corresponding presheaf colimits.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::exec::{map_range, Exec};
use crate::spiny::{is_spiny_with, spine_tuple, SpineChoice};
use crate::simplexcat::Spine;
use crate::symset::{colimit_sym, quotient, reduce, Congruence, DiagramData, SymMap, TruncSymSet};
use crate::{Error, Result};

/// One flattening pass: for every level, group the congruence's class
/// representatives by their edge tuple taken in the current quotient, seed
/// a merge for every group, and saturate. Tuples are read against a frozen
/// snapshot of the congruence, so the pass is a simultaneous, not a
/// cascading, identification. Returns the effective merge count per level.
///
/// The congruence must be saturated on entry (the identity congruence and
/// any output of saturation qualify); it is saturated again on exit.
pub fn flat_step_with(x: &TruncSymSet, cong: &mut Congruence, exec: Exec) -> Vec<usize> {
    cong.canonical();
    let frozen = cong.clone();
    let mut seeds: Vec<(usize, usize, usize)> = Vec::new();
    for n in 2..=x.trunc() {
        let roots: Vec<usize> = (0..x.level_size(n)).filter(|&c| frozen.root(n, c) == c).collect();
        let spine = Spine::standard(n);
        let tuples = map_range(exec, roots.len(), |k| {
            let t = spine_tuple(x, n, roots[k], &spine).expect("standard spines stay in range");
            t.into_iter().map(|e| frozen.root(1, e)).collect::<Vec<usize>>()
        });
        let mut first: HashMap<Vec<usize>, usize> = HashMap::new();
        for (k, t) in tuples.into_iter().enumerate() {
            match first.entry(t) {
                Entry::Occupied(o) => seeds.push((n, *o.get(), roots[k])),
                Entry::Vacant(v) => {
                    v.insert(roots[k]);
                }
            }
        }
    }
    cong.merge_and_saturate(x, seeds)
}

/// Outcome summary of a reflection run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectReport {
    /// Number of effective passes (passes that merged something).
    pub iterations: usize,
    /// Per-pass, per-level effective merge counts.
    pub merges: Vec<Vec<usize>>,
    /// Whether a final pass observed no merges. Requires budget for one
    /// confirming pass beyond the effective ones.
    pub stabilized: bool,
    /// Whether either of the last two effective passes merged cells at the
    /// top level: a hint that the truncation may have cut off further
    /// propagation.
    pub boundary_merges: bool,
}

pub fn reflect(x: &TruncSymSet) -> Result<(TruncSymSet, SymMap, ReflectReport)> {
    reflect_with(x, None, Exec::default())
}

/// Iterates [`flat_step_with`] from the identity congruence until a pass
/// merges nothing, then quotients. `max_iters` bounds the number of passes
/// (the default, one more than the total cell count, always suffices);
/// hitting the bound leaves `stabilized` false but still returns the
/// quotient reached.
pub fn reflect_with(
    x: &TruncSymSet,
    max_iters: Option<usize>,
    exec: Exec,
) -> Result<(TruncSymSet, SymMap, ReflectReport)> {
    let total: usize = (0..=x.trunc()).map(|n| x.level_size(n)).sum();
    let cap = max_iters.unwrap_or(total + 1);
    let mut cong = Congruence::identity(x);
    let mut merges: Vec<Vec<usize>> = Vec::new();
    let mut stabilized = false;
    loop {
        if merges.len() >= cap {
            break;
        }
        let counts = flat_step_with(x, &mut cong, exec);
        if counts.iter().all(|&k| k == 0) {
            stabilized = true;
            break;
        }
        merges.push(counts);
    }
    let iterations = merges.len();
    let boundary_merges = merges.iter().rev().take(2).any(|c| c[x.trunc()] > 0);
    let (q, proj) = quotient(x, &cong)?;
    Ok((q, proj, ReflectReport { iterations, merges, stabilized, boundary_merges }))
}

/// The two reflective subcategories colimits can be computed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialCategory {
    /// Partial groupoids: spiny symmetric sets.
    Pgpd,
    /// Partial groups: reduced spiny symmetric sets.
    Pgrp,
}

pub fn colimit_partial(
    d: &DiagramData,
    cat: PartialCategory,
) -> Result<(TruncSymSet, Vec<SymMap>, ReflectReport)> {
    colimit_partial_with(d, cat, Exec::default())
}

/// Colimit in a reflective subcategory: every diagram object must already
/// live there (spiny, and reduced for partial groups); the colimit is the
/// reflection of the presheaf colimit (reduced first for partial groups),
/// with the legs composed through the projections.
pub fn colimit_partial_with(
    d: &DiagramData,
    cat: PartialCategory,
    exec: Exec,
) -> Result<(TruncSymSet, Vec<SymMap>, ReflectReport)> {
    for (k, obj) in d.objects().iter().enumerate() {
        let report = is_spiny_with(obj, &SpineChoice::Standard, exec)?;
        if !report.pass {
            let (a, b) = report.witness.expect("failing reports carry a witness");
            return Err(Error::NotSpiny(format!(
                "diagram object {k}: cells {a} and {b} share a spine at level {}",
                report.level.expect("failing reports carry a level")
            )));
        }
        if cat == PartialCategory::Pgrp && !obj.is_reduced() {
            return Err(Error::NotReduced(format!(
                "diagram object {k} has {} vertices",
                obj.level_size(0)
            )));
        }
    }
    let (colim, legs) = colimit_sym(d)?;
    let (base, legs) = match cat {
        PartialCategory::Pgpd => (colim, legs),
        PartialCategory::Pgrp => {
            let (red, rproj) = reduce(&colim);
            let legs: Result<Vec<SymMap>> = legs.iter().map(|l| l.then(&rproj)).collect();
            (red, legs?)
        }
    };
    let (refl, proj, report) = reflect_with(&base, None, exec)?;
    let legs: Result<Vec<SymMap>> = legs.iter().map(|l| l.then(&proj)).collect();
    Ok((refl, legs?, report))
}
