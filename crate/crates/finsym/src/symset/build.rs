//! Constructors: representables, nerves of groupoids, terminal and empty
//! objects.

use std::collections::HashMap;

use super::{SymMap, TruncSymSet};
use crate::group::{FiniteGroup, FiniteGroupoid, GroupHom};
use crate::simplexcat::UMap;
use crate::{Error, Result};

/// One cell at every level; every table is constant.
pub fn terminal(trunc: usize) -> TruncSymSet {
    let cells = vec![vec!["*".to_string()]; trunc + 1];
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 0..=trunc {
        if n >= 1 {
            face[n] = vec![vec![0]; n + 1];
            swap[n] = vec![vec![0]; n];
        }
        if n < trunc {
            deg[n] = vec![vec![0]; n + 1];
        }
    }
    TruncSymSet::from_tables(cells, face, deg, swap).expect("terminal tables are consistent")
}

/// No cells at any level.
pub fn empty(trunc: usize) -> TruncSymSet {
    let cells = vec![Vec::new(); trunc + 1];
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 0..=trunc {
        if n >= 1 {
            face[n] = vec![Vec::new(); n + 1];
            swap[n] = vec![Vec::new(); n];
        }
        if n < trunc {
            deg[n] = vec![Vec::new(); n + 1];
        }
    }
    TruncSymSet::from_tables(cells, face, deg, swap).expect("empty tables are consistent")
}

/// The symmetric set represented by level `m`: a level-`n` cell is any
/// tuple of `n + 1` values in `0..=m`, listed in lexicographic order, and
/// every map acts by direct precomposition. Cell names spell the tuple,
/// as in `"(0,2,1)"`.
pub fn representable(m: usize, trunc: usize) -> TruncSymSet {
    let base = m + 1;
    let size = |n: usize| base.pow(n as u32 + 1);
    let decode = |n: usize, mut idx: usize| {
        let mut t = vec![0usize; n + 1];
        for slot in (0..=n).rev() {
            t[slot] = idx % base;
            idx /= base;
        }
        t
    };
    let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &v| acc * base + v);
    let pre = |phi: &UMap, c: usize| {
        let t = decode(phi.cod_level(), c);
        let img: Vec<usize> = phi.values().iter().map(|&v| t[v]).collect();
        encode(&img)
    };
    let mut cells = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        cells.push(
            (0..size(n))
                .map(|c| {
                    let words: Vec<String> =
                        decode(n, c).iter().map(|v| v.to_string()).collect();
                    format!("({})", words.join(","))
                })
                .collect(),
        );
    }
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 0..=trunc {
        if n >= 1 {
            face[n] = (0..=n)
                .map(|i| {
                    let phi = UMap::coface(i, n - 1);
                    (0..size(n)).map(|c| pre(&phi, c)).collect()
                })
                .collect();
            swap[n] = (1..=n)
                .map(|i| {
                    let phi = UMap::transposition(i, n);
                    (0..size(n)).map(|c| pre(&phi, c)).collect()
                })
                .collect();
        }
        if n < trunc {
            deg[n] = (0..=n)
                .map(|i| {
                    let phi = UMap::codegeneracy(i, n);
                    (0..size(n)).map(|c| pre(&phi, c)).collect()
                })
                .collect();
        }
    }
    TruncSymSet::from_tables(cells, face, deg, swap).expect("representable tables are consistent")
}

fn uniquify(mut names: Vec<String>) -> Vec<String> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    for name in names.iter_mut() {
        match seen.get(name.as_str()).copied() {
            None => {
                seen.insert(name.clone(), 1);
            }
            Some(count) => {
                let base = name.clone();
                let mut k = count + 1;
                loop {
                    let candidate = format!("{base}#{k}");
                    if !seen.contains_key(&candidate) {
                        seen.insert(base.clone(), k);
                        seen.insert(candidate.clone(), 1);
                        *name = candidate;
                        break;
                    }
                    k += 1;
                }
            }
        }
    }
    names
}

/// Nerve of a finite groupoid: level-`n` cells are composable chains of
/// `n` morphisms, named `"(f1|f2|...)"`, vertices are the objects, and a
/// map `phi` acts through the matrix of composites between the chain's
/// vertices (inverting where `phi` runs backwards).
pub fn nerve(gpd: &FiniteGroupoid, trunc: usize) -> TruncSymSet {
    let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for n in 1..=trunc {
        let mut level = Vec::new();
        if n == 1 {
            for m in 0..gpd.morphism_count() {
                level.push(vec![m]);
            }
        } else {
            for ch in &chains[n - 1] {
                let tail = gpd.morphism(*ch.last().unwrap()).tgt;
                for m in 0..gpd.morphism_count() {
                    if gpd.morphism(m).src == tail {
                        let mut ext = ch.clone();
                        ext.push(m);
                        level.push(ext);
                    }
                }
            }
        }
        chains.push(level);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = chains
        .iter()
        .map(|lvl| lvl.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect())
        .collect();
    let size = |n: usize| if n == 0 { gpd.object_count() } else { chains[n].len() };
    let vertex = |n: usize, c: usize, t: usize| {
        if n == 0 {
            c
        } else if t == 0 {
            gpd.morphism(chains[n][c][0]).src
        } else {
            gpd.morphism(chains[n][c][t - 1]).tgt
        }
    };
    // The composite from vertex i to vertex j of a chain.
    let entry = |n: usize, c: usize, i: usize, j: usize| {
        if i == j {
            return gpd.identity(vertex(n, c, i));
        }
        let (a, b, invert) = if i < j { (i, j, false) } else { (j, i, true) };
        let chain = &chains[n][c];
        let mut acc = chain[a];
        for &step in &chain[a + 1..b] {
            acc = gpd.compose(step, acc);
        }
        if invert {
            gpd.inverse(acc)
        } else {
            acc
        }
    };
    let act_cell = |n: usize, c: usize, phi: &UMap| {
        let m = phi.dom_level();
        if m == 0 {
            return vertex(n, c, phi.apply(0));
        }
        let img: Vec<usize> =
            (1..=m).map(|t| entry(n, c, phi.apply(t - 1), phi.apply(t))).collect();
        index[m][&img]
    };
    let mut cells = Vec::with_capacity(trunc + 1);
    cells.push(uniquify(
        (0..gpd.object_count()).map(|o| gpd.object_name(o).to_string()).collect(),
    ));
    for level_chains in &chains[1..=trunc] {
        cells.push(uniquify(
            level_chains
                .iter()
                .map(|ch| {
                    let parts: Vec<&str> =
                        ch.iter().map(|&m| gpd.morphism(m).name.as_str()).collect();
                    format!("({})", parts.join("|"))
                })
                .collect(),
        ));
    }
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 0..=trunc {
        if n >= 1 {
            face[n] = (0..=n)
                .map(|i| {
                    let phi = UMap::coface(i, n - 1);
                    (0..size(n)).map(|c| act_cell(n, c, &phi)).collect()
                })
                .collect();
            swap[n] = (1..=n)
                .map(|i| {
                    let phi = UMap::transposition(i, n);
                    (0..size(n)).map(|c| act_cell(n, c, &phi)).collect()
                })
                .collect();
        }
        if n < trunc {
            deg[n] = (0..=n)
                .map(|i| {
                    let phi = UMap::codegeneracy(i, n);
                    (0..size(n)).map(|c| act_cell(n, c, &phi)).collect()
                })
                .collect();
        }
    }
    TruncSymSet::from_tables(cells, face, deg, swap).expect("nerve tables are consistent")
}

/// Nerve of a group, seen as a one-object groupoid.
pub fn nerve_group(g: &FiniteGroup, trunc: usize) -> TruncSymSet {
    nerve(&g.to_groupoid(), trunc)
}

/// The map of nerves induced by a group homomorphism: a chain maps to the
/// chain of images. `hom` must have been built for `(src, tgt)`.
pub fn nerve_group_map(
    hom: &GroupHom,
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    trunc: usize,
) -> SymMap {
    let bs = src.order();
    let bt = tgt.order();
    let mut levels = vec![vec![0usize]];
    for n in 1..=trunc {
        levels.push(
            (0..bs.pow(n as u32))
                .map(|mut idx| {
                    let mut digits = vec![0usize; n];
                    for slot in (0..n).rev() {
                        digits[slot] = idx % bs;
                        idx /= bs;
                    }
                    digits.iter().fold(0usize, |acc, &g| acc * bt + hom.apply(g))
                })
                .collect(),
        );
    }
    SymMap::new(levels)
}

/// The map from the terminal object picking out `vertex` and its fully
/// degenerate tower.
pub fn vertex_inclusion(x: &TruncSymSet, vertex: usize) -> Result<SymMap> {
    if vertex >= x.level_size(0) {
        return Err(Error::ValueOutOfRange { value: vertex, bound: x.level_size(0) });
    }
    let mut levels = vec![vec![vertex]];
    let mut cur = vertex;
    for n in 1..=x.trunc() {
        cur = x.deg(n - 1, 0, cur);
        levels.push(vec![cur]);
    }
    Ok(SymMap::new(levels))
}
