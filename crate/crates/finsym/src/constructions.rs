//! Named constructions: word classifiers and the maps they classify,
//! lower central series, the nilpotency-filtered subobjects of group
//! nerves, partial groups from groupoids, and the ladder family whose
//! reflection takes arbitrarily many passes.

use std::collections::HashMap;

use crate::exec::{map_range, Exec};
use crate::group::{FiniteGroup, FiniteGroupoid};
use crate::simplexcat::UMap;
use crate::symset::{nerve, nerve_group, reduce, representable, SymMap, TruncSymSet};
use crate::{Error, Result};

fn decode(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0usize; len];
    for slot in (0..len).rev() {
        digits[slot] = idx % base;
        idx /= base;
    }
    digits
}

/// The reduction of the level-`m` representable: its level-`n` cells are
/// the words of length `n + 1` in `m + 1` letters up to the collapse of
/// repeated-letter padding. Classifies level-`m` cells of reduced objects.
pub fn word_classifier(m: usize, trunc: usize) -> Result<TruncSymSet> {
    if trunc < m {
        return Err(Error::TruncationExceeded { level: m, trunc });
    }
    Ok(reduce(&representable(m, trunc)).0)
}

/// The map out of the word classifier picking out a level-`m` cell of a
/// reduced object: a word class maps to the action of any representative
/// word on the cell. Returns the classifier together with the map; the
/// map is checked for naturality before being returned.
pub fn classifying_map(x: &TruncSymSet, m: usize, cell: usize) -> Result<(TruncSymSet, SymMap)> {
    if !x.is_reduced() {
        return Err(Error::NotReduced(format!(
            "classification needs one vertex, found {}",
            x.level_size(0)
        )));
    }
    if m > x.trunc() {
        return Err(Error::TruncationExceeded { level: m, trunc: x.trunc() });
    }
    assert!(cell < x.level_size(m), "cell index out of range");
    let y = representable(m, x.trunc());
    let (w, proj) = reduce(&y);
    let base = m + 1;
    let mut levels = Vec::with_capacity(x.trunc() + 1);
    for n in 0..=x.trunc() {
        let mut rep = vec![usize::MAX; w.level_size(n)];
        for c in 0..y.level_size(n) {
            let k = proj.apply(n, c);
            if rep[k] == usize::MAX {
                rep[k] = c;
            }
        }
        let mut row = Vec::with_capacity(rep.len());
        for &c in &rep {
            let word = decode(c, base, n + 1);
            row.push(x.act(&UMap::new(m, word)?, cell)?);
        }
        levels.push(row);
    }
    let f = SymMap::new(levels);
    f.check(&w, x)?;
    Ok((w, f))
}

/// The lower central series of a finite group, recorded as sorted element
/// lists, starting from the whole group and stopping as soon as a term
/// repeats (the repeated tail is represented by the last stored term).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCentralSeries {
    terms: Vec<Vec<usize>>,
}

impl LowerCentralSeries {
    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    /// The `q`-th term, 1-indexed (`term(1)` is the whole group); indices
    /// past the stable tail clamp to the last term.
    pub fn term(&self, q: usize) -> &[usize] {
        assert!(q >= 1, "the series starts at term 1");
        &self.terms[(q - 1).min(self.terms.len() - 1)]
    }

    /// Whether the series reached the trivial subgroup.
    pub fn reaches_trivial(&self) -> bool {
        self.terms.last().map(|t| t.len() == 1).unwrap_or(false)
    }
}

fn commutator_step(g: &FiniteGroup, cur: &[usize], against: &[usize]) -> Vec<usize> {
    let mut gens = Vec::with_capacity(cur.len() * against.len());
    for &x in cur {
        for &y in against {
            gens.push(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
        }
    }
    g.subgroup_closure(&gens)
}

pub fn lower_central_series(g: &FiniteGroup) -> LowerCentralSeries {
    let whole: Vec<usize> = (0..g.order()).collect();
    let mut terms = vec![whole.clone()];
    loop {
        let next = commutator_step(g, terms.last().expect("nonempty"), &whole);
        if Some(&next) == terms.last() {
            break;
        }
        terms.push(next);
    }
    LowerCentralSeries { terms }
}

/// Whether the subgroup `h` (given as its full sorted element list) has
/// trivial `q`-th lower-central term.
fn lcs_term_trivial(g: &FiniteGroup, h: &[usize], q: usize) -> bool {
    let mut cur: Vec<usize> = h.to_vec();
    for _ in 1..q {
        if cur.len() == 1 {
            return true;
        }
        let next = commutator_step(g, &cur, h);
        if next == cur {
            return false;
        }
        cur = next;
    }
    cur.len() == 1
}

pub fn b_q(g: &FiniteGroup, q: usize, trunc: usize) -> (TruncSymSet, SymMap) {
    b_q_with(g, q, trunc, Exec::default())
}

/// The subobject of the group nerve spanned by the chains whose entries
/// generate a subgroup of nilpotency class below `q` (trivial `q`-th
/// lower-central term). `q = 2` keeps the pairwise-commuting chains.
/// Returns the subobject and its inclusion into the nerve.
pub fn b_q_with(g: &FiniteGroup, q: usize, trunc: usize, exec: Exec) -> (TruncSymSet, SymMap) {
    assert!(q >= 1, "the series starts at term 1");
    let ambient = nerve_group(g, trunc);
    let order = g.order();
    let mut kept: Vec<Vec<usize>> = vec![vec![0]];
    for n in 1..=trunc {
        let flags = map_range(exec, ambient.level_size(n), |c| {
            let digits = decode(c, order, n);
            lcs_term_trivial(g, &g.subgroup_closure(&digits), q)
        });
        kept.push(flags.iter().enumerate().filter(|(_, &f)| f).map(|(c, _)| c).collect());
    }
    let mut back = Vec::with_capacity(trunc + 1);
    for (n, level) in kept.iter().enumerate() {
        let mut b = vec![usize::MAX; ambient.level_size(n)];
        for (k, &c) in level.iter().enumerate() {
            b[c] = k;
        }
        back.push(b);
    }
    let sub = |n: usize, c: usize| -> usize {
        let k = back[n][c];
        assert_ne!(k, usize::MAX, "nilpotency-filtered chains are generator-closed");
        k
    };
    let cells: Vec<Vec<String>> = kept
        .iter()
        .enumerate()
        .map(|(n, level)| level.iter().map(|&c| ambient.cell_name(n, c).to_string()).collect())
        .collect();
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 0..=trunc {
        if n >= 1 {
            face[n] = (0..=n)
                .map(|i| kept[n].iter().map(|&c| sub(n - 1, ambient.face(n, i, c))).collect())
                .collect();
            swap[n] = (1..=n)
                .map(|i| kept[n].iter().map(|&c| sub(n, ambient.swap(n, i, c))).collect())
                .collect();
        }
        if n < trunc {
            deg[n] = (0..=n)
                .map(|i| kept[n].iter().map(|&c| sub(n + 1, ambient.deg(n, i, c))).collect())
                .collect();
        }
    }
    let object = TruncSymSet::from_tables(cells, face, deg, swap)
        .expect("restricting closed tables preserves all shapes");
    let inclusion = SymMap::new(kept);
    (object, inclusion)
}

/// The pairwise-commuting chains: [`b_q`] at `q = 2`.
pub fn b_com(g: &FiniteGroup, trunc: usize) -> (TruncSymSet, SymMap) {
    b_q(g, 2, trunc)
}

/// The partial group of a groupoid: the reduction of its nerve, with the
/// projection from the nerve.
pub fn groupoid_to_partial_group(gpd: &FiniteGroupoid, trunc: usize) -> (TruncSymSet, SymMap) {
    reduce(&nerve(gpd, trunc))
}

fn tuple_ok(f: &[usize]) -> bool {
    let mut nz: Vec<usize> = f.iter().copied().filter(|&v| v != 0).collect();
    nz.sort_unstable();
    nz.dedup();
    match nz.len() {
        0 | 1 => true,
        2 => nz[1] == nz[0] + 1,
        _ => false,
    }
}

fn diameter(f: &[usize]) -> usize {
    let max = f.iter().copied().max().unwrap_or(0);
    let min = f.iter().copied().min().unwrap_or(0);
    max - min
}

fn rung_label(tag: u8, f: &[usize]) -> String {
    let vals: Vec<String> = f.iter().map(|v| v.to_string()).collect();
    format!("{}({})", tag as char, vals.join(","))
}

/// The `k`-rung ladder on posts `0..=k+1`: cells are tuples of posts whose
/// nonzero values span at most two adjacent posts; tuples of diameter at
/// least two exist in two parallel copies (`u` and `v`) sharing all their
/// faces of diameter below two. Its reflection needs exactly `k` passes,
/// merging one rung's copies per pass.
pub fn ladder(k: usize, trunc: usize) -> Result<TruncSymSet> {
    if k == 0 {
        return Err(Error::Unsupported("a ladder needs at least one doubled rung".into()));
    }
    let base = k + 2;
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(trunc + 1);
    let mut tags: Vec<Vec<(u8, Vec<usize>)>> = Vec::with_capacity(trunc + 1);
    let mut index: Vec<HashMap<(u8, Vec<usize>), usize>> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut level_cells = Vec::new();
        let mut level_tags: Vec<(u8, Vec<usize>)> = Vec::new();
        let mut level_index = HashMap::new();
        for raw in 0..base.pow(n as u32 + 1) {
            let f = decode(raw, base, n + 1);
            if !tuple_ok(&f) {
                continue;
            }
            let here: &[u8] = if diameter(&f) <= 1 { b"*" } else { b"uv" };
            for &t in here {
                level_index.insert((t, f.clone()), level_cells.len());
                level_cells.push(rung_label(t, &f));
                level_tags.push((t, f.clone()));
            }
        }
        cells.push(level_cells);
        tags.push(level_tags);
        index.push(level_index);
    }
    let lookup = |n: usize, tag: u8, f: Vec<usize>| -> usize {
        let t = if diameter(&f) <= 1 { b'*' } else { tag };
        index[n][&(t, f)]
    };
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 0..=trunc {
        if n >= 1 {
            face[n] = (0..=n)
                .map(|i| {
                    tags[n]
                        .iter()
                        .map(|(t, f)| {
                            let mut g = f.clone();
                            g.remove(i);
                            lookup(n - 1, *t, g)
                        })
                        .collect()
                })
                .collect();
            swap[n] = (1..=n)
                .map(|i| {
                    tags[n]
                        .iter()
                        .map(|(t, f)| {
                            let mut g = f.clone();
                            g.swap(i - 1, i);
                            lookup(n, *t, g)
                        })
                        .collect()
                })
                .collect();
        }
        if n < trunc {
            deg[n] = (0..=n)
                .map(|i| {
                    tags[n]
                        .iter()
                        .map(|(t, f)| {
                            let mut g = f.clone();
                            g.insert(i, f[i]);
                            lookup(n + 1, *t, g)
                        })
                        .collect()
                })
                .collect();
        }
    }
    TruncSymSet::from_tables(cells, face, deg, swap)
}
