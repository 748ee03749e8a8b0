//! Morphism search: checking a candidate map, and enumerating all maps
//! between two truncated symmetric sets. Spiny targets admit a fast path
//! (vertex and edge images determine everything above); general targets
//! fall back to orbit-aware cell-by-cell backtracking. The search is
//! sequential by design: its branching is too irregular to split evenly.

use std::collections::HashMap;

use crate::spiny::{edge_tuple, is_spiny, SpineChoice};
use crate::symset::{SymMap, TruncSymSet};
use crate::{Error, Result};

/// Outcome of checking one candidate map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub pass: bool,
    pub detail: Option<String>,
}

/// Checks that `f` is a morphism from `src` to `tgt`: right shape, and
/// commuting with every face, degeneracy, and swap at every cell.
pub fn is_hom(f: &SymMap, src: &TruncSymSet, tgt: &TruncSymSet) -> HomReport {
    if let Err(e) = f.shape_check(src, tgt) {
        return HomReport { pass: false, detail: Some(e.to_string()) };
    }
    match f.naturality_violation(src, tgt) {
        Some(v) => HomReport {
            pass: false,
            detail: Some(format!(
                "naturality fails at level {}, cell {}, generator {}",
                v.level, v.cell, v.generator
            )),
        },
        None => HomReport { pass: true, detail: None },
    }
}

/// Branch budget for the enumeration, from `FINSYM_SEARCH_CAP` when set.
fn search_cap() -> u64 {
    std::env::var("FINSYM_SEARCH_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000)
}

struct Search<'a> {
    src: &'a TruncSymSet,
    tgt: &'a TruncSymSet,
    cap: u64,
    tried: u64,
    out: Vec<SymMap>,
}

impl<'a> Search<'a> {
    fn spend(&mut self) -> Result<()> {
        self.tried += 1;
        if self.tried > self.cap {
            return Err(Error::SearchCapExceeded { cap: self.cap });
        }
        Ok(())
    }

    fn record(&mut self, levels: Vec<Vec<usize>>) {
        let f = SymMap::new(levels);
        if f.check(self.src, self.tgt).is_ok() {
            self.out.push(f);
        }
    }
}

/// Fast path: with a spiny target, a morphism is determined by its vertex
/// and edge images, and every higher cell's image is the unique target
/// cell carrying the mapped edge tuple.
struct SpinySearch<'a> {
    base: Search<'a>,
    by_ends: HashMap<(usize, usize), Vec<usize>>,
    tuple_index: Vec<HashMap<Vec<usize>, usize>>,
    src_tuples: Vec<Vec<Vec<usize>>>,
    vasg: Vec<usize>,
    easg: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl<'a> SpinySearch<'a> {
    fn new(src: &'a TruncSymSet, tgt: &'a TruncSymSet, cap: u64) -> Self {
        let trunc = src.trunc();
        let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        if trunc >= 1 {
            for e in 0..tgt.level_size(1) {
                by_ends.entry((tgt.face(1, 1, e), tgt.face(1, 0, e))).or_default().push(e);
            }
        }
        let mut tuple_index = vec![HashMap::new(); trunc + 1];
        let mut src_tuples = vec![Vec::new(); trunc + 1];
        for n in 2..=trunc {
            for c in 0..tgt.level_size(n) {
                let t = edge_tuple(tgt, n, c).expect("edges stay within the level");
                tuple_index[n].insert(t, c);
            }
            src_tuples[n] = (0..src.level_size(n))
                .map(|c| edge_tuple(src, n, c).expect("edges stay within the level"))
                .collect();
        }
        let vasg = vec![UNSET; src.level_size(0)];
        let easg = vec![UNSET; if trunc >= 1 { src.level_size(1) } else { 0 }];
        SpinySearch { base: Search { src, tgt, cap, tried: 0, out: Vec::new() }, by_ends, tuple_index, src_tuples, vasg, easg }
    }

    fn run(mut self) -> Result<Vec<SymMap>> {
        self.vertices(0)?;
        Ok(self.base.out)
    }

    fn vertices(&mut self, k: usize) -> Result<()> {
        if k == self.vasg.len() {
            // Degenerate edges are forced by the vertices.
            let src = self.base.src;
            let tgt = self.base.tgt;
            if src.trunc() >= 1 {
                for v in 0..self.vasg.len() {
                    self.easg[src.deg(0, 0, v)] = tgt.deg(0, 0, self.vasg[v]);
                }
            }
            return self.edges(0);
        }
        for tv in 0..self.base.tgt.level_size(0) {
            self.base.spend()?;
            self.vasg[k] = tv;
            self.vertices(k + 1)?;
        }
        self.vasg[k] = UNSET;
        Ok(())
    }

    fn edges(&mut self, e: usize) -> Result<()> {
        let src = self.base.src;
        let tgt = self.base.tgt;
        if src.trunc() == 0 || e == self.easg.len() {
            return self.ascend();
        }
        if self.easg[e] != UNSET {
            return self.edges(e + 1);
        }
        let ends = (self.vasg[src.face(1, 1, e)], self.vasg[src.face(1, 0, e)]);
        let mirror = src.swap(1, 1, e);
        let empty = Vec::new();
        let candidates = self.by_ends.get(&ends).unwrap_or(&empty).clone();
        for cand in candidates {
            self.base.spend()?;
            if mirror == e && tgt.swap(1, 1, cand) != cand {
                continue;
            }
            self.easg[e] = cand;
            if mirror != e {
                self.easg[mirror] = tgt.swap(1, 1, cand);
            }
            self.edges(e + 1)?;
            self.easg[e] = UNSET;
            if mirror != e {
                self.easg[mirror] = UNSET;
            }
        }
        Ok(())
    }

    fn ascend(&mut self) -> Result<()> {
        let src = self.base.src;
        let trunc = src.trunc();
        let mut levels = Vec::with_capacity(trunc + 1);
        levels.push(self.vasg.clone());
        if trunc >= 1 {
            levels.push(self.easg.clone());
        }
        for n in 2..=trunc {
            let mut row = Vec::with_capacity(src.level_size(n));
            for c in 0..src.level_size(n) {
                let image: Vec<usize> =
                    self.src_tuples[n][c].iter().map(|&e| self.easg[e]).collect();
                match self.tuple_index[n].get(&image) {
                    Some(&x) => row.push(x),
                    None => return Ok(()),
                }
            }
            levels.push(row);
        }
        self.base.record(levels);
        Ok(())
    }
}

/// Fallback: level-by-level backtracking. Choosing a cell's image forces
/// its whole swap orbit; candidates are filtered by face images before
/// recursing.
struct GeneralSearch<'a> {
    base: Search<'a>,
    asg: Vec<Vec<usize>>,
}

impl<'a> GeneralSearch<'a> {
    fn new(src: &'a TruncSymSet, tgt: &'a TruncSymSet, cap: u64) -> Self {
        let asg = (0..=src.trunc()).map(|n| vec![UNSET; src.level_size(n)]).collect();
        GeneralSearch { base: Search { src, tgt, cap, tried: 0, out: Vec::new() }, asg }
    }

    fn run(mut self) -> Result<Vec<SymMap>> {
        self.level(0)?;
        Ok(self.base.out)
    }

    fn level(&mut self, n: usize) -> Result<()> {
        let src = self.base.src;
        let tgt = self.base.tgt;
        if n > src.trunc() {
            self.base.record(self.asg.clone());
            return Ok(());
        }
        // Images of degenerate cells are forced by the level below.
        let mut forced: Vec<usize> = Vec::new();
        if n >= 1 {
            for b in 0..src.level_size(n - 1) {
                for i in 0..n {
                    let c = src.deg(n - 1, i, b);
                    let want = tgt.deg(n - 1, i, self.asg[n - 1][b]);
                    if self.asg[n][c] == UNSET {
                        self.asg[n][c] = want;
                        forced.push(c);
                    } else if self.asg[n][c] != want {
                        for &f in &forced {
                            self.asg[n][f] = UNSET;
                        }
                        return Ok(());
                    }
                }
            }
        }
        let r = self.cell(n, 0);
        for &f in &forced {
            self.asg[n][f] = UNSET;
        }
        r
    }

    fn cell(&mut self, n: usize, c: usize) -> Result<()> {
        let src = self.base.src;
        let tgt = self.base.tgt;
        if c == src.level_size(n) {
            return self.level(n + 1);
        }
        if self.asg[n][c] != UNSET {
            return self.cell(n, c + 1);
        }
        'cand: for x in 0..tgt.level_size(n) {
            self.base.spend()?;
            if n >= 1 {
                for i in 0..=n {
                    if tgt.face(n, i, x) != self.asg[n - 1][src.face(n, i, c)] {
                        continue 'cand;
                    }
                }
            }
            // Force the whole swap orbit of c, checking consistency.
            let mut set: Vec<usize> = vec![c];
            self.asg[n][c] = x;
            let mut stack = vec![(c, x)];
            let mut ok = true;
            while let Some((sc, sx)) = stack.pop() {
                for i in 1..=n {
                    let (oc, ox) = (src.swap(n, i, sc), tgt.swap(n, i, sx));
                    if self.asg[n][oc] == UNSET {
                        self.asg[n][oc] = ox;
                        set.push(oc);
                        stack.push((oc, ox));
                    } else if self.asg[n][oc] != ox {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                self.cell(n, c + 1)?;
            }
            for &s in &set {
                self.asg[n][s] = UNSET;
            }
        }
        Ok(())
    }
}

/// Enumerates every morphism with an explicit branch budget, failing with
/// [`Error::SearchCapExceeded`] when more candidates would be tried.
/// Results are sorted by their level tables.
pub fn enumerate_homs_capped(
    src: &TruncSymSet,
    tgt: &TruncSymSet,
    cap: u64,
) -> Result<Vec<SymMap>> {
    if src.trunc() != tgt.trunc() {
        return Err(Error::TruncMismatch { left: src.trunc(), right: tgt.trunc() });
    }
    let mut found = if is_spiny(tgt, &SpineChoice::Standard)?.pass {
        SpinySearch::new(src, tgt, cap).run()?
    } else {
        GeneralSearch::new(src, tgt, cap).run()?
    };
    found.sort_by(|a, b| a.levels().cmp(b.levels()));
    Ok(found)
}

/// [`enumerate_homs_capped`] with the budget from `FINSYM_SEARCH_CAP`
/// (default one million).
pub fn enumerate_homs(src: &TruncSymSet, tgt: &TruncSymSet) -> Result<Vec<SymMap>> {
    enumerate_homs_capped(src, tgt, search_cap())
}

pub fn count_homs(src: &TruncSymSet, tgt: &TruncSymSet) -> Result<u64> {
    Ok(enumerate_homs(src, tgt)?.len() as u64)
}

/// Verifies the classification property on a reduced object: morphisms
/// out of the level-`m` word classifier correspond one-to-one with the
/// level-`m` cells, read off by evaluating at the generic word.
pub fn verify_word_classifier(x: &TruncSymSet, m: usize) -> Result<bool> {
    if !x.is_reduced() {
        return Err(Error::NotReduced(format!(
            "classification needs one vertex, found {}",
            x.level_size(0)
        )));
    }
    let w = crate::constructions::word_classifier(m, x.trunc())?;
    let generic_name = {
        let vals: Vec<String> = (0..=m).map(|v| v.to_string()).collect();
        format!("({})", vals.join(","))
    };
    let generic = w.cell_index(m, &generic_name).expect("the generic word survives reduction");
    let homs = enumerate_homs(&w, x)?;
    if homs.len() != x.level_size(m) {
        return Ok(false);
    }
    let mut seen = vec![false; x.level_size(m)];
    for h in &homs {
        let v = h.apply(m, generic);
        if seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }
    Ok(seen.iter().all(|&b| b))
}
