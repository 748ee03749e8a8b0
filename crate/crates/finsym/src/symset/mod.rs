//! Truncated symmetric simplicial sets: finitely many cells per level up
//! to a truncation bound, acted on by faces, degeneracies, and adjacent
//! swaps, with every finite-ordinal map acting through its canonical
//! generator decomposition.

mod build;
mod colimit;
mod congruence;

pub use build::{empty, nerve, nerve_group, nerve_group_map, representable, terminal, vertex_inclusion};
pub use colimit::{
    coequalizer_sym, colimit_sym, coproduct_sym, product_sym, pushout_induced, pushout_sym,
    DiagramData,
};
pub use congruence::Congruence;

use crate::exec::{map_range, Exec};
use crate::simplexcat::{compose, UMap};
use crate::{Error, Result};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A symmetric simplicial set truncated at a fixed top level.
///
/// Level `n` holds finitely many named cells. The structure is recorded as
/// generator tables: `face[n][i]` maps level `n` to `n-1` (0 <= i <= n),
/// `deg[n][i]` maps level `n` to `n+1` (0 <= i <= n, absent at the top
/// level), and `swap[n][i-1]` is the involution of level `n` induced by
/// the transposition of `i-1` and `i` (1 <= i <= n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSymSet {
    trunc: usize,
    cells: Vec<Vec<String>>,
    face: Vec<Vec<Vec<usize>>>,
    deg: Vec<Vec<Vec<usize>>>,
    swap: Vec<Vec<Vec<usize>>>,
}

/// Outcome of a structural validation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub pass: bool,
    pub violation: Option<Violation>,
}

/// First identity that failed during validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub level: usize,
    pub cell: String,
    pub identity: String,
}

impl TruncSymSet {
    /// Builds a symmetric set from raw tables, checking all shapes: table
    /// counts per level, row lengths, and entry ranges. Identity laws are
    /// not checked here; see [`TruncSymSet::validate`].
    pub fn from_tables(
        cells: Vec<Vec<String>>,
        face: Vec<Vec<Vec<usize>>>,
        deg: Vec<Vec<Vec<usize>>>,
        swap: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::MalformedSymSet("at least level 0 is required".into()));
        }
        let trunc = cells.len() - 1;
        for table in [&face, &deg, &swap] {
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
            let want_swap = n;
            for (label, table, want, bound) in [
                ("face", &face[n], want_face, if n == 0 { 0 } else { cells[n - 1].len() }),
                ("degeneracy", &deg[n], want_deg, if n == trunc { 0 } else { cells[n + 1].len() }),
                ("swap", &swap[n], want_swap, cells[n].len()),
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
        Ok(TruncSymSet { trunc, cells, face, deg, swap })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.cells[n].len()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cell_name(&self, n: usize, c: usize) -> &str {
        &self.cells[n][c]
    }

    pub fn names(&self, n: usize) -> &[String] {
        &self.cells[n]
    }

    pub fn cell_index(&self, n: usize, name: &str) -> Option<usize> {
        self.cells[n].iter().position(|c| c == name)
    }

    /// Face `d_i` at level `n`, landing in level `n-1`.
    pub fn face(&self, n: usize, i: usize, c: usize) -> usize {
        self.face[n][i][c]
    }

    /// Degeneracy `s_i` at level `n`, landing in level `n+1`.
    pub fn deg(&self, n: usize, i: usize, c: usize) -> usize {
        self.deg[n][i][c]
    }

    /// Swap `w_i` at level `n` (1 <= i <= n), the action of the adjacent
    /// transposition exchanging `i-1` and `i`.
    pub fn swap(&self, n: usize, i: usize, c: usize) -> usize {
        self.swap[n][i - 1][c]
    }

    pub(crate) fn face_tables(&self) -> &[Vec<Vec<usize>>] {
        &self.face
    }

    pub(crate) fn deg_tables(&self) -> &[Vec<Vec<usize>>] {
        &self.deg
    }

    pub(crate) fn swap_tables(&self) -> &[Vec<Vec<usize>>] {
        &self.swap
    }

    /// Contravariant action of an arbitrary finite-ordinal map `phi` from
    /// level `m` to level `n` on a cell of level `n`, landing in level `m`.
    ///
    /// `phi` is factored as an order-preserving map after a permutation:
    /// a stable sort of its values gives the order-preserving part, which
    /// acts through faces (skipped values, descending) and degeneracies
    /// (repeated positions, ascending); the permutation part acts through
    /// the adjacent swaps of its bubble-sort decomposition.
    pub fn act(&self, phi: &UMap, cell: usize) -> Result<usize> {
        let m = phi.dom_level();
        let n = phi.cod_level();
        for level in [m, n] {
            if level > self.trunc {
                return Err(Error::TruncationExceeded { level, trunc: self.trunc });
            }
        }
        assert!(cell < self.level_size(n), "cell index out of range");
        let vals = phi.values();
        let mut order: Vec<usize> = (0..=m).collect();
        order.sort_by_key(|&t| vals[t]);
        let beta: Vec<usize> = order.iter().map(|&t| vals[t]).collect();
        let mut c = act_monotone(&self.face, &self.deg, &beta, n, cell);
        // Positions of each index in the sorted order form the permutation
        // part; bubble sort records it as adjacent transpositions.
        let mut perm = vec![0usize; m + 1];
        for (pos, &idx) in order.iter().enumerate() {
            perm[idx] = pos;
        }
        let mut transpositions: Vec<usize> = Vec::new();
        loop {
            let mut done = true;
            for j in 1..=m {
                if perm[j - 1] > perm[j] {
                    perm.swap(j - 1, j);
                    transpositions.push(j);
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        for &j in transpositions.iter().rev() {
            c = self.swap(m, j, c);
        }
        Ok(c)
    }

    /// Action of the order-reversing involution at `level`.
    pub fn dagger(&self, level: usize, cell: usize) -> Result<usize> {
        self.act(&UMap::flip(level), cell)
    }

    /// A symmetric set is reduced when it has exactly one vertex.
    pub fn is_reduced(&self) -> bool {
        self.level_size(0) == 1
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(Exec::default())
    }

    /// Checks every generator identity at every cell, then functoriality
    /// of [`TruncSymSet::act`] on a fixed pseudorandom sample of composable
    /// map pairs. Reports the first violation in (level, cell) order, with
    /// per-cell identities checked in a fixed order, so the witness is
    /// deterministic.
    pub fn validate_with(&self, exec: Exec) -> ValidationReport {
        for n in 0..=self.trunc {
            let found = map_range(exec, self.level_size(n), |c| self.identity_violation_at(n, c));
            if let Some((c, identity)) = found
                .into_iter()
                .enumerate()
                .find_map(|(c, v)| v.map(|identity| (c, identity)))
            {
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
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..200 {
            let a = rng.random_range(0..=self.trunc);
            let b = rng.random_range(0..=self.trunc);
            let cod = rng.random_range(0..=self.trunc);
            let psi = UMap::random(&mut rng, a, b);
            let phi = UMap::random(&mut rng, b, cod);
            let both = compose(&phi, &psi).expect("levels line up");
            let found = map_range(exec, self.level_size(cod), |cell| {
                let direct = self.act(&both, cell).expect("levels within truncation");
                let staged = self
                    .act(&psi, self.act(&phi, cell).expect("levels within truncation"))
                    .expect("levels within truncation");
                direct != staged
            });
            if let Some(cell) = found.into_iter().position(|bad| bad) {
                return ValidationReport {
                    pass: false,
                    violation: Some(Violation {
                        level: cod,
                        cell: self.cell_name(cod, cell).to_string(),
                        identity: format!(
                            "action functoriality for {:?} after {:?}",
                            phi.values(),
                            psi.values()
                        ),
                    }),
                };
            }
        }
        ValidationReport { pass: true, violation: None }
    }

    fn identity_violation_at(&self, n: usize, c: usize) -> Option<String> {
        let trunc = self.trunc;
        // Face-face.
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    if self.face(n - 1, i, self.face(n, j, c))
                        != self.face(n - 1, j - 1, self.face(n, i, c))
                    {
                        return Some(format!("d{i} d{j} = d{} d{i}", j - 1));
                    }
                }
            }
        }
        // Face-degeneracy.
        if n < trunc {
            for j in 0..=n {
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
                        let rhs = if i < j {
                            format!("s{} d{i}", j - 1)
                        } else if i == j || i == j + 1 {
                            "id".to_string()
                        } else {
                            format!("s{j} d{}", i - 1)
                        };
                        return Some(format!("d{i} s{j} = {rhs}"));
                    }
                }
            }
        }
        // Degeneracy-degeneracy.
        if n + 2 <= trunc {
            for j in 0..=n {
                for i in 0..=j {
                    if self.deg(n + 1, i, self.deg(n, j, c))
                        != self.deg(n + 1, j + 1, self.deg(n, i, c))
                    {
                        return Some(format!("s{i} s{j} = s{} s{i}", j + 1));
                    }
                }
            }
        }
        if n >= 1 {
            // Swap involution, commutation, braid.
            for i in 1..=n {
                if self.swap(n, i, self.swap(n, i, c)) != c {
                    return Some(format!("w{i} w{i} = id"));
                }
            }
            for i in 1..=n {
                for j in i + 2..=n {
                    if self.swap(n, i, self.swap(n, j, c)) != self.swap(n, j, self.swap(n, i, c)) {
                        return Some(format!("w{i} w{j} = w{j} w{i}"));
                    }
                }
            }
            for i in 1..n {
                let lhs = self.swap(n, i, self.swap(n, i + 1, self.swap(n, i, c)));
                let rhs = self.swap(n, i + 1, self.swap(n, i, self.swap(n, i + 1, c)));
                if lhs != rhs {
                    return Some(format!("w{i} w{} w{i} = w{} w{i} w{}", i + 1, i + 1, i + 1));
                }
            }
            // Face-swap.
            for i in 1..=n {
                let wi = self.swap(n, i, c);
                if self.face(n, i - 1, wi) != self.face(n, i, c) {
                    return Some(format!("d{} w{i} = d{i}", i - 1));
                }
                if self.face(n, i, wi) != self.face(n, i - 1, c) {
                    return Some(format!("d{i} w{i} = d{}", i - 1));
                }
                for j in 0..=n {
                    if j + 2 <= i {
                        if self.face(n, j, wi) != self.swap(n - 1, i - 1, self.face(n, j, c)) {
                            return Some(format!("d{j} w{i} = w{} d{j}", i - 1));
                        }
                    } else if j > i
                        && self.face(n, j, wi) != self.swap(n - 1, i, self.face(n, j, c))
                    {
                        return Some(format!("d{j} w{i} = w{i} d{j}"));
                    }
                }
            }
        }
        // Degeneracy-swap.
        if n < trunc {
            for j in 0..=n {
                let sj = self.deg(n, j, c);
                if self.swap(n + 1, j + 1, sj) != sj {
                    return Some(format!("w{} s{j} = s{j}", j + 1));
                }
            }
        }
        if n >= 1 && n < trunc {
            for i in 1..=n {
                let wi = self.swap(n, i, c);
                let lhs = self.deg(n, i - 1, wi);
                let rhs = self.swap(n + 1, i + 1, self.swap(n + 1, i, self.deg(n, i, c)));
                if lhs != rhs {
                    return Some(format!("s{} w{i} = w{} w{i} s{i}", i - 1, i + 1));
                }
                for j in 0..=n {
                    if j + 2 <= i {
                        if self.deg(n, j, wi) != self.swap(n + 1, i + 1, self.deg(n, j, c)) {
                            return Some(format!("s{j} w{i} = w{} s{j}", i + 1));
                        }
                    } else if j > i
                        && self.deg(n, j, wi) != self.swap(n + 1, i, self.deg(n, j, c))
                    {
                        return Some(format!("s{j} w{i} = w{i} s{j}"));
                    }
                }
            }
        }
        None
    }
}

/// Action of an order-preserving tuple `beta` (values into `0..=n`) on a
/// cell of level `n`, using only face and degeneracy tables: one face per
/// skipped value (descending), then one degeneracy per repeated position
/// (ascending).
pub(crate) fn act_monotone(
    face: &[Vec<Vec<usize>>],
    deg: &[Vec<Vec<usize>>],
    beta: &[usize],
    n: usize,
    cell: usize,
) -> usize {
    debug_assert!(beta.windows(2).all(|w| w[0] <= w[1]));
    let m = beta.len() - 1;
    let mut present = vec![false; n + 1];
    for &v in beta {
        present[v] = true;
    }
    let mut c = cell;
    let mut cur = n;
    for j in (0..=n).rev() {
        if !present[j] {
            c = face[cur][j][c];
            cur -= 1;
        }
    }
    for k in 0..m {
        if beta[k] == beta[k + 1] {
            c = deg[cur][k][c];
            cur += 1;
        }
    }
    debug_assert_eq!(cur, m);
    c
}

/// A levelwise map of symmetric sets, recorded as one index table per
/// level of the source.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymMap {
    levels: Vec<Vec<usize>>,
}

/// First naturality failure of a candidate map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapViolation {
    pub level: usize,
    pub cell: String,
    pub generator: String,
}

impl SymMap {
    pub fn new(levels: Vec<Vec<usize>>) -> Self {
        SymMap { levels }
    }

    pub fn identity(x: &TruncSymSet) -> Self {
        SymMap { levels: (0..=x.trunc()).map(|n| (0..x.level_size(n)).collect()).collect() }
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[usize] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn apply(&self, n: usize, c: usize) -> usize {
        self.levels[n][c]
    }

    /// Composition: first `self`, then `g`.
    pub fn then(&self, g: &SymMap) -> Result<SymMap> {
        if self.levels.len() != g.levels.len() {
            return Err(Error::InvalidSymMap(format!(
                "composing maps with {} and {} levels",
                self.levels.len(),
                g.levels.len()
            )));
        }
        let mut levels = Vec::with_capacity(self.levels.len());
        for (n, row) in self.levels.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for &c in row {
                match g.levels[n].get(c) {
                    Some(&v) => out.push(v),
                    None => {
                        return Err(Error::InvalidSymMap(format!(
                            "level {n}: intermediate index {c} out of range"
                        )))
                    }
                }
            }
            levels.push(out);
        }
        Ok(SymMap { levels })
    }

    /// Checks that the tables have the right shape between `src` and `tgt`.
    pub fn shape_check(&self, src: &TruncSymSet, tgt: &TruncSymSet) -> Result<()> {
        if src.trunc() != tgt.trunc() {
            return Err(Error::TruncMismatch { left: src.trunc(), right: tgt.trunc() });
        }
        if self.levels.len() != src.trunc() + 1 {
            return Err(Error::InvalidSymMap(format!(
                "expected {} levels, found {}",
                src.trunc() + 1,
                self.levels.len()
            )));
        }
        for n in 0..=src.trunc() {
            if self.levels[n].len() != src.level_size(n) {
                return Err(Error::InvalidSymMap(format!(
                    "level {n}: expected {} entries, found {}",
                    src.level_size(n),
                    self.levels[n].len()
                )));
            }
            if let Some(&bad) = self.levels[n].iter().find(|&&v| v >= tgt.level_size(n)) {
                return Err(Error::InvalidSymMap(format!(
                    "level {n}: image index {bad} out of range (bound {})",
                    tgt.level_size(n)
                )));
            }
        }
        Ok(())
    }

    /// First generator square that fails to commute, in (level, cell)
    /// order with faces, then degeneracies, then swaps per cell. Assumes
    /// the shape already checks out.
    pub fn naturality_violation(
        &self,
        src: &TruncSymSet,
        tgt: &TruncSymSet,
    ) -> Option<MapViolation> {
        let trunc = src.trunc();
        for n in 0..=trunc {
            for c in 0..src.level_size(n) {
                let fc = self.apply(n, c);
                let mut bad: Option<String> = None;
                if n >= 1 {
                    for i in 0..=n {
                        if tgt.face(n, i, fc) != self.apply(n - 1, src.face(n, i, c)) {
                            bad = Some(format!("d{i}"));
                            break;
                        }
                    }
                }
                if bad.is_none() && n < trunc {
                    for i in 0..=n {
                        if tgt.deg(n, i, fc) != self.apply(n + 1, src.deg(n, i, c)) {
                            bad = Some(format!("s{i}"));
                            break;
                        }
                    }
                }
                if bad.is_none() && n >= 1 {
                    for i in 1..=n {
                        if tgt.swap(n, i, fc) != self.apply(n, src.swap(n, i, c)) {
                            bad = Some(format!("w{i}"));
                            break;
                        }
                    }
                }
                if let Some(generator) = bad {
                    return Some(MapViolation {
                        level: n,
                        cell: src.cell_name(n, c).to_string(),
                        generator,
                    });
                }
            }
        }
        None
    }

    /// Full check: shape plus naturality.
    pub fn check(&self, src: &TruncSymSet, tgt: &TruncSymSet) -> Result<()> {
        self.shape_check(src, tgt)?;
        if let Some(v) = self.naturality_violation(src, tgt) {
            return Err(Error::InvalidSymMap(format!(
                "level {}: cell {} breaks naturality at {}",
                v.level, v.cell, v.generator
            )));
        }
        Ok(())
    }

    /// True when every level table is a bijection onto the target level.
    pub fn is_levelwise_bijection(&self, src: &TruncSymSet, tgt: &TruncSymSet) -> bool {
        (0..=src.trunc().min(tgt.trunc())).all(|n| {
            if src.level_size(n) != tgt.level_size(n) || self.levels[n].len() != src.level_size(n) {
                return false;
            }
            let mut seen = vec![false; tgt.level_size(n)];
            for &v in &self.levels[n] {
                if v >= seen.len() || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
            true
        })
    }
}

/// Quotients `x` by a saturated congruence. Class representatives are the
/// least cell indices, so the result and the projection map depend only on
/// the partition. Fails if some generator table does not descend.
pub fn quotient(x: &TruncSymSet, cong: &Congruence) -> Result<(TruncSymSet, SymMap)> {
    if cong.trunc() != x.trunc() {
        return Err(Error::TruncMismatch { left: x.trunc(), right: cong.trunc() });
    }
    let mut cong = cong.clone();
    cong.canonical();
    cong.verify_saturated(x)?;
    let trunc = x.trunc();
    let mut new_index: Vec<Vec<usize>> = Vec::with_capacity(trunc + 1);
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut index = vec![usize::MAX; x.level_size(n)];
        let mut names = Vec::new();
        for (c, slot) in index.iter_mut().enumerate() {
            if cong.root(n, c) == c {
                *slot = names.len();
                names.push(x.cell_name(n, c).to_string());
            }
        }
        new_index.push(index);
        cells.push(names);
    }
    let class = |n: usize, c: usize| new_index[n][cong.root(n, c)];
    let mut face = vec![Vec::new(); trunc + 1];
    let mut deg = vec![Vec::new(); trunc + 1];
    let mut swap = vec![Vec::new(); trunc + 1];
    for n in 0..=trunc {
        let roots: Vec<usize> =
            (0..x.level_size(n)).filter(|&c| cong.root(n, c) == c).collect();
        if n >= 1 {
            face[n] = (0..=n)
                .map(|i| roots.iter().map(|&r| class(n - 1, x.face(n, i, r))).collect())
                .collect();
            swap[n] = (1..=n)
                .map(|i| roots.iter().map(|&r| class(n, x.swap(n, i, r))).collect())
                .collect();
        }
        if n < trunc {
            deg[n] = (0..=n)
                .map(|i| roots.iter().map(|&r| class(n + 1, x.deg(n, i, r))).collect())
                .collect();
        }
    }
    let proj = SymMap::new(
        (0..=trunc).map(|n| (0..x.level_size(n)).map(|c| class(n, c)).collect()).collect(),
    );
    let q = TruncSymSet::from_tables(cells, face, deg, swap)
        .expect("quotient tables are consistent by construction");
    Ok((q, proj))
}

/// Cells that are fully degenerate: images of vertices under the unique
/// constant map to level 0. One entry per vertex, deduplicated, per level.
pub fn fully_degenerate(x: &TruncSymSet) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(x.trunc() + 1);
    out.push((0..x.level_size(0)).collect());
    for n in 1..=x.trunc() {
        let mut next: Vec<usize> = out[n - 1].iter().map(|&c| x.deg(n - 1, 0, c)).collect();
        next.sort_unstable();
        next.dedup();
        out.push(next);
    }
    out
}

/// Collapses the fully degenerate part of `x` to a single point tower.
/// An empty `x` collapses to the terminal object. Returns the result and
/// the projection.
pub fn reduce(x: &TruncSymSet) -> (TruncSymSet, SymMap) {
    if x.level_size(0) == 0 {
        let proj = SymMap::new(vec![Vec::new(); x.trunc() + 1]);
        return (terminal(x.trunc()), proj);
    }
    let mut cong = Congruence::identity(x);
    let mut seeds = Vec::new();
    for (n, layer) in fully_degenerate(x).into_iter().enumerate() {
        for w in layer.windows(2) {
            seeds.push((n, w[0], w[1]));
        }
    }
    cong.merge_and_saturate(x, seeds);
    quotient(x, &cong).expect("congruence is saturated")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn tuple_of(m: usize, level: usize, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0usize; level + 1];
        for slot in (0..=level).rev() {
            t[slot] = idx % (m + 1);
            idx /= m + 1;
        }
        t
    }

    fn encode(m: usize, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &v| acc * (m + 1) + v)
    }

    #[test]
    fn action_matches_precomposition_on_representables() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for m in 0..=2 {
            let y = representable(m, 3);
            for _ in 0..200 {
                let a = rng.random_range(0..=3);
                let b = rng.random_range(0..=3);
                let phi = UMap::random(&mut rng, a, b);
                for cell in 0..y.level_size(b) {
                    let t = tuple_of(m, b, cell);
                    let expected: Vec<usize> = (0..=a).map(|k| t[phi.apply(k)]).collect();
                    let got = y.act(&phi, cell).unwrap();
                    assert_eq!(got, encode(m, &expected), "m={m} phi={:?} cell={cell}", phi);
                }
            }
        }
    }

    #[test]
    fn action_on_a_cyclic_nerve_matches_hand_computation() {
        let z4 = nerve_group(&FiniteGroup::cyclic(4), 2);
        let e1 = z4.cell_index(1, "(1)").unwrap();
        let flipped = z4.act(&UMap::flip(1), e1).unwrap();
        assert_eq!(z4.cell_name(1, flipped), "(3)");
        assert_eq!(z4.dagger(1, e1).unwrap(), flipped);
        let folded = z4.act(&UMap::fold(1), e1).unwrap();
        assert_eq!(z4.cell_name(2, folded), "(3|1)");
    }

    #[test]
    fn validation_accepts_the_standard_examples() {
        assert!(representable(2, 3).validate().pass);
        assert!(nerve_group(&FiniteGroup::symmetric(3), 3).validate().pass);
        assert!(terminal(4).validate().pass);
        assert!(empty(2).validate().pass);
    }

    #[test]
    fn validation_pinpoints_a_corrupted_table() {
        let mut x = nerve_group(&FiniteGroup::cyclic(2), 2);
        let other = x.cell_index(1, "(1)").unwrap();
        x.deg[0][0][0] = other;
        let report = x.validate();
        assert!(!report.pass);
        let v = report.violation.expect("violation reported");
        assert_eq!(v.level, 0);
        assert_eq!(x.validate().violation.unwrap(), v, "witness is deterministic");
    }

    #[test]
    fn swapped_vertices_break_naturality() {
        let x = nerve_group(&FiniteGroup::cyclic(2), 1);
        let id = SymMap::identity(&x);
        assert!(id.check(&x, &x).is_ok());
        let twisted = SymMap::new(vec![vec![0], vec![1, 0]]);
        assert!(twisted.check(&x, &x).is_err());
        assert!(twisted.naturality_violation(&x, &x).is_some());
    }

    #[test]
    fn reduction_of_representables_counts_words() {
        let (f1, proj) = reduce(&representable(1, 3));
        assert_eq!(
            (0..=3).map(|n| f1.level_size(n)).collect::<Vec<_>>(),
            vec![1, 3, 7, 15],
            "sizes follow (m+1)^(n+1) - m for m = 1"
        );
        assert!(proj.check(&representable(1, 3), &f1).is_ok());
        assert!(f1.validate().pass);
        let (f2, _) = reduce(&representable(2, 2));
        assert_eq!((0..=2).map(|n| f2.level_size(n)).collect::<Vec<_>>(), vec![1, 7, 25]);
    }

    #[test]
    fn reduction_of_empty_is_terminal() {
        let (t, proj) = reduce(&empty(2));
        assert_eq!(t, terminal(2));
        assert_eq!(proj.levels(), vec![Vec::<usize>::new(); 3].as_slice());
    }

    #[test]
    fn quotient_demands_saturation() {
        let y = representable(1, 2);
        let mut cong = Congruence::identity(&y);
        cong.union(0, 0, 1);
        assert!(matches!(
            quotient(&y, &cong),
            Err(Error::UnsaturatedCongruence { level: 0, .. })
        ));
        let mut cong = Congruence::identity(&y);
        cong.merge_and_saturate(&y, [(0, 0, 1)]);
        let (q, _) = quotient(&y, &cong).unwrap();
        assert!(q.validate().pass);
        assert_eq!(q.level_size(0), 1);
    }

    #[test]
    fn saturation_counts_are_class_count_drops() {
        let y = representable(1, 2);
        let before = Congruence::identity(&y).class_counts();
        let mut cong = Congruence::identity(&y);
        let counts = cong.merge_and_saturate(&y, [(0, 0, 1)]);
        let after = cong.class_counts();
        for n in 0..=2 {
            assert_eq!(before[n] - after[n], counts[n]);
        }
    }

    #[test]
    fn fully_degenerate_towers_have_one_cell_per_vertex() {
        let x = nerve_group(&FiniteGroup::cyclic(3), 3);
        let fd = fully_degenerate(&x);
        assert!(fd.iter().all(|layer| layer.len() == 1));
        let y = representable(2, 2);
        assert_eq!(fully_degenerate(&y).iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3, 3]);
    }

    #[test]
    fn map_composition_and_bijectivity() {
        let x = nerve_group(&FiniteGroup::cyclic(2), 2);
        let id = SymMap::identity(&x);
        let both = id.then(&id).unwrap();
        assert_eq!(both, id);
        assert!(id.is_levelwise_bijection(&x, &x));
        let (r, proj) = reduce(&representable(1, 2));
        assert!(!proj.is_levelwise_bijection(&representable(1, 2), &r));
    }
}
