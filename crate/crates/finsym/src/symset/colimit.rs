//! Levelwise colimits and products of symmetric sets. Pushouts and
//! coequalizers are computed as a coproduct followed by a saturated
//! congruence quotient.

use super::{quotient, Congruence, SymMap, TruncSymSet};
use crate::{Error, Result};

/// Disjoint union. Cells of the `k`-th summand are renamed `"k:name"`.
/// Returns the coproduct and one inclusion leg per summand.
pub fn coproduct_sym(parts: &[&TruncSymSet]) -> Result<(TruncSymSet, Vec<SymMap>)> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Unsupported("coproduct of an empty family has no truncation".into()))?;
    let trunc = first.trunc();
    for p in parts {
        if p.trunc() != trunc {
            return Err(Error::TruncMismatch { left: trunc, right: p.trunc() });
        }
    }
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut level = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in parts {
            level.push(acc);
            acc += p.level_size(n);
        }
        offsets.push(level);
    }
    let mut cells = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut names = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            names.extend(p.names(n).iter().map(|name| format!("{k}:{name}")));
        }
        cells.push(names);
    }
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 0..=trunc {
        if n >= 1 {
            face[n] = (0..=n)
                .map(|i| {
                    let mut row = Vec::new();
                    for (k, p) in parts.iter().enumerate() {
                        row.extend(
                            (0..p.level_size(n)).map(|c| offsets[n - 1][k] + p.face(n, i, c)),
                        );
                    }
                    row
                })
                .collect();
            swap[n] = (1..=n)
                .map(|i| {
                    let mut row = Vec::new();
                    for (k, p) in parts.iter().enumerate() {
                        row.extend((0..p.level_size(n)).map(|c| offsets[n][k] + p.swap(n, i, c)));
                    }
                    row
                })
                .collect();
        }
        if n < trunc {
            deg[n] = (0..=n)
                .map(|i| {
                    let mut row = Vec::new();
                    for (k, p) in parts.iter().enumerate() {
                        row.extend(
                            (0..p.level_size(n)).map(|c| offsets[n + 1][k] + p.deg(n, i, c)),
                        );
                    }
                    row
                })
                .collect();
        }
    }
    let legs = (0..parts.len())
        .map(|k| {
            SymMap::new(
                (0..=trunc)
                    .map(|n| (0..parts[k].level_size(n)).map(|c| offsets[n][k] + c).collect())
                    .collect(),
            )
        })
        .collect();
    let x = TruncSymSet::from_tables(cells, face, deg, swap)
        .expect("coproduct tables are consistent");
    Ok((x, legs))
}

/// Pushout of `left <- apex -> right`: the coproduct of the outer objects
/// with the two images of each apex cell identified, then saturated.
/// Returns the pushout and the legs from `left` and `right`.
pub fn pushout_sym(
    apex: &TruncSymSet,
    to_left: &SymMap,
    left: &TruncSymSet,
    to_right: &SymMap,
    right: &TruncSymSet,
) -> Result<(TruncSymSet, Vec<SymMap>)> {
    to_left.check(apex, left)?;
    to_right.check(apex, right)?;
    let (cop, legs) = coproduct_sym(&[left, right])?;
    let mut cong = Congruence::identity(&cop);
    let mut seeds = Vec::new();
    for n in 0..=apex.trunc() {
        for t in 0..apex.level_size(n) {
            seeds.push((
                n,
                legs[0].apply(n, to_left.apply(n, t)),
                legs[1].apply(n, to_right.apply(n, t)),
            ));
        }
    }
    cong.merge_and_saturate(&cop, seeds);
    let (q, proj) = quotient(&cop, &cong)?;
    Ok((q, vec![legs[0].then(&proj)?, legs[1].then(&proj)?]))
}

/// Coequalizer of a parallel pair `f, g: src -> tgt`. Returns the
/// coequalizer and the leg from `tgt`.
pub fn coequalizer_sym(
    src: &TruncSymSet,
    tgt: &TruncSymSet,
    f: &SymMap,
    g: &SymMap,
) -> Result<(TruncSymSet, Vec<SymMap>)> {
    f.check(src, tgt)?;
    g.check(src, tgt)?;
    let mut cong = Congruence::identity(tgt);
    let mut seeds = Vec::new();
    for n in 0..=src.trunc() {
        for c in 0..src.level_size(n) {
            seeds.push((n, f.apply(n, c), g.apply(n, c)));
        }
    }
    cong.merge_and_saturate(tgt, seeds);
    let (q, proj) = quotient(tgt, &cong)?;
    Ok((q, vec![proj]))
}

/// Levelwise product, with cells named `"(a,b)"` for a pair of cell names
/// and the first factor varying slowest. Returns the product and the two
/// projections.
pub fn product_sym(x: &TruncSymSet, y: &TruncSymSet) -> Result<(TruncSymSet, Vec<SymMap>)> {
    if x.trunc() != y.trunc() {
        return Err(Error::TruncMismatch { left: x.trunc(), right: y.trunc() });
    }
    let trunc = x.trunc();
    let pair = |n: usize, cx: usize, cy: usize| cx * y.level_size(n) + cy;
    let mut cells = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut names = Vec::with_capacity(x.level_size(n) * y.level_size(n));
        for a in x.names(n) {
            for b in y.names(n) {
                names.push(format!("({a},{b})"));
            }
        }
        cells.push(names);
    }
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    let table = |n: usize, m: usize, fx: &dyn Fn(usize) -> usize, fy: &dyn Fn(usize) -> usize| {
        let mut row = Vec::with_capacity(x.level_size(n) * y.level_size(n));
        for cx in 0..x.level_size(n) {
            for cy in 0..y.level_size(n) {
                row.push(pair(m, fx(cx), fy(cy)));
            }
        }
        row
    };
    for n in 0..=trunc {
        if n >= 1 {
            face[n] = (0..=n)
                .map(|i| table(n, n - 1, &|c| x.face(n, i, c), &|c| y.face(n, i, c)))
                .collect();
            swap[n] = (1..=n)
                .map(|i| table(n, n, &|c| x.swap(n, i, c), &|c| y.swap(n, i, c)))
                .collect();
        }
        if n < trunc {
            deg[n] = (0..=n)
                .map(|i| table(n, n + 1, &|c| x.deg(n, i, c), &|c| y.deg(n, i, c)))
                .collect();
        }
    }
    let mut proj_x = Vec::with_capacity(trunc + 1);
    let mut proj_y = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut px = Vec::new();
        let mut py = Vec::new();
        for cx in 0..x.level_size(n) {
            for cy in 0..y.level_size(n) {
                px.push(cx);
                py.push(cy);
            }
        }
        proj_x.push(px);
        proj_y.push(py);
    }
    let p = TruncSymSet::from_tables(cells, face, deg, swap)
        .expect("product tables are consistent");
    Ok((p, vec![SymMap::new(proj_x), SymMap::new(proj_y)]))
}

/// A finite colimit shape with its objects and arrows.
pub enum DiagramData<'a> {
    Coproduct(Vec<&'a TruncSymSet>),
    Pushout {
        apex: &'a TruncSymSet,
        left: &'a TruncSymSet,
        right: &'a TruncSymSet,
        to_left: &'a SymMap,
        to_right: &'a SymMap,
    },
    Coequalizer {
        src: &'a TruncSymSet,
        tgt: &'a TruncSymSet,
        f: &'a SymMap,
        g: &'a SymMap,
    },
}

impl<'a> DiagramData<'a> {
    /// The objects of the diagram, in a fixed order.
    pub fn objects(&self) -> Vec<&'a TruncSymSet> {
        match self {
            DiagramData::Coproduct(parts) => parts.clone(),
            DiagramData::Pushout { apex, left, right, .. } => vec![apex, left, right],
            DiagramData::Coequalizer { src, tgt, .. } => vec![src, tgt],
        }
    }
}

/// Colimit of the diagram, with the legs from the non-apex objects: one
/// per summand for a coproduct, from `left` and `right` for a pushout,
/// from `tgt` for a coequalizer.
pub fn colimit_sym(d: &DiagramData) -> Result<(TruncSymSet, Vec<SymMap>)> {
    match d {
        DiagramData::Coproduct(parts) => coproduct_sym(parts),
        DiagramData::Pushout { apex, left, right, to_left, to_right } => {
            pushout_sym(apex, to_left, left, to_right, right)
        }
        DiagramData::Coequalizer { src, tgt, f, g } => coequalizer_sym(src, tgt, f, g),
    }
}

/// The map out of a pushout determined by maps `u: left -> target` and
/// `w: right -> target` that agree on the apex. Fails if the resulting
/// assignment is not natural, which happens exactly when the square does
/// not commute.
pub fn pushout_induced(
    pushout: &TruncSymSet,
    legs: &[SymMap],
    left: &TruncSymSet,
    right: &TruncSymSet,
    u: &SymMap,
    w: &SymMap,
    target: &TruncSymSet,
) -> Result<SymMap> {
    if legs.len() != 2 {
        return Err(Error::InvalidSymMap(format!("expected 2 pushout legs, found {}", legs.len())));
    }
    u.check(left, target)?;
    w.check(right, target)?;
    let trunc = pushout.trunc();
    let mut levels = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut row = vec![usize::MAX; pushout.level_size(n)];
        for c in (0..right.level_size(n)).rev() {
            row[legs[1].apply(n, c)] = w.apply(n, c);
        }
        for c in (0..left.level_size(n)).rev() {
            row[legs[0].apply(n, c)] = u.apply(n, c);
        }
        if row.contains(&usize::MAX) {
            return Err(Error::InvalidSymMap(format!(
                "level {n}: pushout cell not hit by either leg"
            )));
        }
        levels.push(row);
    }
    let induced = SymMap::new(levels);
    induced.check(pushout, target)?;
    Ok(induced)
}
