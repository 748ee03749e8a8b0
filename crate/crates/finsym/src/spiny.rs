//! Spininess: a symmetric set is spiny when, level by level, cells are
//! determined by their tuple of spine edges. This module computes edge and
//! spine tuples, decides spininess, derives matrix forms, recognizes
//! nerves of groupoids, and promotes edgy simplicial data to symmetric
//! data by locating the germ of every swap.

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exec::{map_range, Exec};
use crate::simplexcat::{Spine, SpineSystem, UMap};
use crate::symset::{act_monotone, TruncSymSet, ValidationReport, Violation};
use crate::{Error, Result};

/// The consecutive-edge tuple of a cell: its images under the edge
/// classifiers for `(0,1), (1,2), ..., (level-1, level)`. Empty at level 0.
pub fn edge_tuple(x: &TruncSymSet, level: usize, cell: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(level);
    for i in 1..=level {
        out.push(x.act(&UMap::edge(i - 1, i, level)?, cell)?);
    }
    Ok(out)
}

/// The edge tuple along an arbitrary spine, in the spine's normalized
/// edge order.
pub fn spine_tuple(x: &TruncSymSet, level: usize, cell: usize, spine: &Spine) -> Result<Vec<usize>> {
    if spine.level() != level {
        return Err(Error::LevelMismatch { expected: level, found: spine.level() });
    }
    let mut out = Vec::with_capacity(spine.edges().len());
    for &(a, b) in spine.edges() {
        out.push(x.act(&UMap::edge(a, b, level)?, cell)?);
    }
    Ok(out)
}

/// Which spines to test spininess against.
#[derive(Clone, Debug)]
pub enum SpineChoice {
    /// The path spines `(0,1), (1,2), ...` at every level.
    Standard,
    /// One explicit spine per level.
    System(SpineSystem),
    /// `count` pseudorandom spine systems drawn from a seeded generator.
    Random { seed: u64, count: usize },
}

/// Outcome of a spininess check. On failure, `witness` names two distinct
/// cells of `level` sharing a spine tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinyReport {
    pub pass: bool,
    pub level: Option<usize>,
    pub witness: Option<(String, String)>,
}

pub fn is_spiny(x: &TruncSymSet, choice: &SpineChoice) -> Result<SpinyReport> {
    is_spiny_with(x, choice, Exec::default())
}

/// Checks that every requested spine system separates the cells of every
/// level. Systems, levels, and cells are scanned in a fixed order, so the
/// reported witness is deterministic: the first collision pairs the
/// earliest cell holding the tuple with the first repeat.
pub fn is_spiny_with(x: &TruncSymSet, choice: &SpineChoice, exec: Exec) -> Result<SpinyReport> {
    let systems: Vec<SpineSystem> = match choice {
        SpineChoice::Standard => vec![SpineSystem::standard(x.trunc())],
        SpineChoice::System(s) => {
            if s.trunc() != x.trunc() {
                return Err(Error::TruncMismatch { left: x.trunc(), right: s.trunc() });
            }
            vec![s.clone()]
        }
        SpineChoice::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count).map(|_| SpineSystem::random(&mut rng, x.trunc())).collect()
        }
    };
    for sys in &systems {
        for n in 1..=x.trunc() {
            let spine = sys.spine(n);
            let tuples = map_range(exec, x.level_size(n), |c| {
                spine_tuple(x, n, c, spine).expect("spine edges stay within the level")
            });
            let mut seen: HashMap<&[usize], usize> = HashMap::new();
            for (c, t) in tuples.iter().enumerate() {
                if let Some(&first) = seen.get(t.as_slice()) {
                    return Ok(SpinyReport {
                        pass: false,
                        level: Some(n),
                        witness: Some((
                            x.cell_name(n, first).to_string(),
                            x.cell_name(n, c).to_string(),
                        )),
                    });
                }
                seen.insert(t.as_slice(), c);
            }
        }
    }
    Ok(SpinyReport { pass: true, level: None, witness: None })
}

/// The full matrix of edge images of a cell: `entries[i][j]` is the image
/// under the edge classifier sending `0 -> i`, `1 -> j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixForm {
    pub level: usize,
    pub entries: Vec<Vec<usize>>,
}

pub fn matrix_form(x: &TruncSymSet, level: usize, cell: usize) -> Result<MatrixForm> {
    let mut entries = Vec::with_capacity(level + 1);
    for i in 0..=level {
        let mut row = Vec::with_capacity(level + 1);
        for j in 0..=level {
            row.push(x.act(&UMap::edge(i, j, level)?, cell)?);
        }
        entries.push(row);
    }
    Ok(MatrixForm { level, entries })
}

/// The fold image of a level-`n` cell, at level `2n`. Needs `2n` within
/// the truncation.
pub fn l_of(x: &TruncSymSet, level: usize, cell: usize) -> Result<usize> {
    x.act(&UMap::fold(level), cell)
}

/// Outcome of the nerve recognition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NerveVerdict {
    /// The object is not spiny, so the question does not arise.
    NotApplicable { reason: String },
    /// Every composable tuple of edges is the edge tuple of exactly one
    /// cell, at every level within the truncation.
    Bijective,
    /// Some composable tuple of edges is realized by no cell.
    NotBijective { level: usize, detail: String },
}

#[allow(clippy::too_many_arguments)]
fn walk_chains(
    n: usize,
    src: &[usize],
    tgt: &[usize],
    realized: &HashSet<Vec<usize>>,
    cap: usize,
    prefix: &mut Vec<usize>,
    count: &mut usize,
    missing: &mut Option<Vec<usize>>,
) -> bool {
    if prefix.len() == n {
        *count += 1;
        if missing.is_none() && !realized.contains(prefix) {
            *missing = Some(prefix.clone());
        }
        return *count > cap && missing.is_some();
    }
    for e in 0..src.len() {
        if let Some(&last) = prefix.last() {
            if tgt[last] != src[e] {
                continue;
            }
        }
        prefix.push(e);
        let stop = walk_chains(n, src, tgt, realized, cap, prefix, count, missing);
        prefix.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Decides whether the consecutive-edge maps are bijections onto the
/// composable tuples, which characterizes nerves of groupoids among spiny
/// objects. Spininess for the standard spines is checked first; a spiny
/// object can only fail by leaving some composable tuple unrealized.
pub fn is_groupoid_nerve(x: &TruncSymSet) -> Result<NerveVerdict> {
    let report = is_spiny(x, &SpineChoice::Standard)?;
    if !report.pass {
        return Ok(NerveVerdict::NotApplicable {
            reason: "not spiny for the standard spines".into(),
        });
    }
    let ne = x.level_size(1);
    let src: Vec<usize> = (0..ne).map(|e| x.face(1, 1, e)).collect();
    let tgt: Vec<usize> = (0..ne).map(|e| x.face(1, 0, e)).collect();
    for n in 2..=x.trunc() {
        let realized: HashSet<Vec<usize>> = (0..x.level_size(n))
            .map(|c| edge_tuple(x, n, c).expect("edges stay within the level"))
            .collect();
        let cap = x.level_size(n);
        let mut prefix = Vec::with_capacity(n);
        let mut count = 0usize;
        let mut missing = None;
        walk_chains(n, &src, &tgt, &realized, cap, &mut prefix, &mut count, &mut missing);
        if let Some(m) = missing {
            let names: Vec<&str> = m.iter().map(|&e| x.cell_name(1, e)).collect();
            return Ok(NerveVerdict::NotBijective {
                level: n,
                detail: format!("composable tuple ({}) is not an edge tuple", names.join("|")),
            });
        }
        debug_assert_eq!(count, cap, "spiny objects realize at most the composable tuples");
    }
    Ok(NerveVerdict::Bijective)
}

/// A truncated simplicial set (faces and degeneracies only) carrying an
/// involution of its edges that will induce the flip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSimpSet {
    trunc: usize,
    cells: Vec<Vec<String>>,
    face: Vec<Vec<Vec<usize>>>,
    deg: Vec<Vec<Vec<usize>>>,
    involution: Vec<usize>,
}

impl TruncSimpSet {
    /// Builds from raw tables, checking all shapes. The involution table
    /// must cover level 1 exactly (and be empty when the truncation is 0);
    /// its laws are checked by [`symmetrize_edgy`].
    pub fn new(
        cells: Vec<Vec<String>>,
        face: Vec<Vec<Vec<usize>>>,
        deg: Vec<Vec<Vec<usize>>>,
        involution: Vec<usize>,
    ) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::MalformedSymSet("at least level 0 is required".into()));
        }
        let trunc = cells.len() - 1;
        for table in [&face, &deg] {
            if table.len() != cells.len() {
                return Err(Error::MalformedSymSet(format!(
                    "expected {} levels of tables, found {}",
                    cells.len(),
                    table.len()
                )));
            }
        }
        for n in 0..=trunc {
            let mut sorted: Vec<&String> = cells[n].iter().collect();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedSymSet(format!("duplicate cell name at level {n}")));
            }
            let want_face = if n == 0 { 0 } else { n + 1 };
            let want_deg = if n == trunc { 0 } else { n + 1 };
            for (label, table, want, bound) in [
                ("face", &face[n], want_face, if n == 0 { 0 } else { cells[n - 1].len() }),
                ("degeneracy", &deg[n], want_deg, if n == trunc { 0 } else { cells[n + 1].len() }),
            ] {
                if table.len() != want {
                    return Err(Error::MalformedSymSet(format!(
                        "level {n}: expected {want} {label} tables, found {}",
                        table.len()
                    )));
                }
                for (i, row) in table.iter().enumerate() {
                    if row.len() != cells[n].len() {
                        return Err(Error::MalformedSymSet(format!(
                            "level {n}: {label} table {i} has {} entries, expected {}",
                            row.len(),
                            cells[n].len()
                        )));
                    }
                    if let Some(&bad) = row.iter().find(|&&e| e >= bound) {
                        return Err(Error::MalformedSymSet(format!(
                            "level {n}: {label} table {i} entry {bad} out of range (bound {bound})"
                        )));
                    }
                }
            }
        }
        let want_inv = if trunc == 0 { 0 } else { cells[1].len() };
        if involution.len() != want_inv {
            return Err(Error::BadInvolution(format!(
                "expected {want_inv} entries, found {}",
                involution.len()
            )));
        }
        if let Some(&bad) = involution.iter().find(|&&e| e >= want_inv) {
            return Err(Error::BadInvolution(format!("entry {bad} out of range")));
        }
        Ok(TruncSimpSet { trunc, cells, face, deg, involution })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.cells[n].len()
    }

    pub fn cell_name(&self, n: usize, c: usize) -> &str {
        &self.cells[n][c]
    }

    pub fn cell_index(&self, n: usize, name: &str) -> Option<usize> {
        self.cells[n].iter().position(|c| c == name)
    }

    pub fn face(&self, n: usize, i: usize, c: usize) -> usize {
        self.face[n][i][c]
    }

    pub fn deg(&self, n: usize, i: usize, c: usize) -> usize {
        self.deg[n][i][c]
    }

    pub fn involution(&self, e: usize) -> usize {
        self.involution[e]
    }

    /// Checks the simplicial identities at every cell, reporting the first
    /// violation in (level, cell) order.
    pub fn validate(&self) -> ValidationReport {
        let trunc = self.trunc;
        for n in 0..=trunc {
            for c in 0..self.level_size(n) {
                let mut bad: Option<String> = None;
                if n >= 2 {
                    'ff: for j in 1..=n {
                        for i in 0..j {
                            if self.face(n - 1, i, self.face(n, j, c))
                                != self.face(n - 1, j - 1, self.face(n, i, c))
                            {
                                bad = Some(format!("d{i} d{j} = d{} d{i}", j - 1));
                                break 'ff;
                            }
                        }
                    }
                }
                if bad.is_none() && n < trunc {
                    'fd: for j in 0..=n {
                        let sj = self.deg(n, j, c);
                        for i in 0..=n + 1 {
                            let lhs = self.face(n + 1, i, sj);
                            let ok = if i < j {
                                lhs == self.deg(n - 1, j - 1, self.face(n, i, c))
                            } else if i == j || i == j + 1 {
                                lhs == c
                            } else {
                                lhs == self.deg(n - 1, j, self.face(n, i - 1, c))
                            };
                            if !ok {
                                bad = Some(format!("d{i} s{j}"));
                                break 'fd;
                            }
                        }
                    }
                }
                if bad.is_none() && n + 2 <= trunc {
                    'dd: for j in 0..=n {
                        for i in 0..=j {
                            if self.deg(n + 1, i, self.deg(n, j, c))
                                != self.deg(n + 1, j + 1, self.deg(n, i, c))
                            {
                                bad = Some(format!("s{i} s{j} = s{} s{i}", j + 1));
                                break 'dd;
                            }
                        }
                    }
                }
                if let Some(identity) = bad {
                    return ValidationReport {
                        pass: false,
                        violation: Some(Violation {
                            level: n,
                            cell: self.cell_name(n, c).to_string(),
                            identity,
                        }),
                    };
                }
            }
        }
        ValidationReport { pass: true, violation: None }
    }

    /// The consecutive-edge tuple, using faces and degeneracies only.
    fn superdiagonal(&self, n: usize, c: usize) -> Vec<usize> {
        (1..=n).map(|i| act_monotone(&self.face, &self.deg, &[i - 1, i], n, c)).collect()
    }

    /// The flattened matrix of edge images of a level-`n` cell (`n >= 1`):
    /// order-preserving classifiers act through faces and degeneracies,
    /// the diagonal degenerates the vertices, and the lower triangle is
    /// the involution of the upper one.
    fn matrix(&self, n: usize, c: usize) -> Vec<usize> {
        let mut m = vec![0usize; (n + 1) * (n + 1)];
        for i in 0..=n {
            let v = act_monotone(&self.face, &self.deg, &[i], n, c);
            m[i * (n + 2)] = self.deg(0, 0, v);
            for j in i + 1..=n {
                let e = act_monotone(&self.face, &self.deg, &[i, j], n, c);
                m[i * (n + 1) + j] = e;
                m[j * (n + 1) + i] = self.involution(e);
            }
        }
        m
    }
}

/// Drops the swap tables, keeping the level-1 flip as the involution.
pub fn forget_symmetry(x: &TruncSymSet) -> TruncSimpSet {
    TruncSimpSet {
        trunc: x.trunc(),
        cells: (0..=x.trunc()).map(|n| x.names(n).to_vec()).collect(),
        face: x.face_tables().to_vec(),
        deg: x.deg_tables().to_vec(),
        involution: if x.trunc() >= 1 { x.swap_tables()[1][0].clone() } else { Vec::new() },
    }
}

/// Promotes edgy simplicial data to a symmetric set.
///
/// Requires: the simplicial identities hold, the involution is a genuine
/// edge flip (involutive, endpoint-swapping, fixing degenerate edges),
/// and consecutive-edge tuples are injective on every level. Each swap is
/// then forced: the image of a cell under a transposition must be the
/// unique cell whose matrix form is the correspondingly permuted matrix.
/// Fails with [`Error::MissingGerm`] when no such cell exists; when all
/// germs exist, the symmetric identities hold automatically because the
/// matrix assignment is injective and functorial.
pub fn symmetrize_edgy(s: &TruncSimpSet) -> Result<TruncSymSet> {
    if let Some(v) = s.validate().violation {
        return Err(Error::MalformedSymSet(format!(
            "simplicial identity {} fails at level {}, cell {}",
            v.identity, v.level, v.cell
        )));
    }
    let trunc = s.trunc;
    if trunc >= 1 {
        for e in 0..s.level_size(1) {
            let v = s.involution(e);
            if s.involution(v) != e {
                return Err(Error::BadInvolution(format!(
                    "not involutive at {}",
                    s.cell_name(1, e)
                )));
            }
            if s.face(1, 0, v) != s.face(1, 1, e) || s.face(1, 1, v) != s.face(1, 0, e) {
                return Err(Error::BadInvolution(format!(
                    "endpoints of {} do not swap",
                    s.cell_name(1, e)
                )));
            }
        }
        for v in 0..s.level_size(0) {
            let e = s.deg(0, 0, v);
            if s.involution(e) != e {
                return Err(Error::BadInvolution(format!(
                    "degenerate edge at {} is not fixed",
                    s.cell_name(0, v)
                )));
            }
        }
    }
    for n in 1..=trunc {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for c in 0..s.level_size(n) {
            let t = s.superdiagonal(n, c);
            if let Some(&first) = seen.get(&t) {
                return Err(Error::NotEdgy {
                    level: n,
                    a: s.cell_name(n, first).to_string(),
                    b: s.cell_name(n, c).to_string(),
                });
            }
            seen.insert(t, c);
        }
    }
    // Matrix index per level; injective because superdiagonals already are.
    let mut matrices: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut germ: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new()];
    for n in 1..=trunc {
        let level: Vec<Vec<usize>> = (0..s.level_size(n)).map(|c| s.matrix(n, c)).collect();
        let mut lookup = HashMap::new();
        for (c, m) in level.iter().enumerate() {
            lookup.insert(m.clone(), c);
        }
        matrices.push(level);
        germ.push(lookup);
    }
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 1..=trunc {
        let width = n + 1;
        let mut tables = Vec::with_capacity(n);
        for i in 1..=n {
            let t = |a: usize| {
                if a == i - 1 {
                    i
                } else if a == i {
                    i - 1
                } else {
                    a
                }
            };
            let mut row = Vec::with_capacity(s.level_size(n));
            for (c, m) in matrices[n].iter().enumerate() {
                let mut permuted = vec![0usize; width * width];
                for a in 0..width {
                    for b in 0..width {
                        permuted[a * width + b] = m[t(a) * width + t(b)];
                    }
                }
                match germ[n].get(&permuted) {
                    Some(&img) => row.push(img),
                    None => {
                        return Err(Error::MissingGerm {
                            level: n,
                            cell: s.cell_name(n, c).to_string(),
                            swap: i,
                        })
                    }
                }
            }
            tables.push(row);
        }
        swap[n] = tables;
    }
    TruncSymSet::from_tables(s.cells.clone(), s.face.clone(), s.deg.clone(), swap)
}
