//! Per-level union-find over the cells of a fixed symmetric set, with
//! closure under the generator tables.

use super::TruncSymSet;
use crate::{Error, Result};

/// A levelwise equivalence relation on the cells of a symmetric set.
///
/// Classes are merged with union-by-minimum, so the root of a class is
/// always its least cell index; together with path compression this keeps
/// the final partition independent of merge discovery order.
#[derive(Clone, Debug)]
pub struct Congruence {
    parents: Vec<Vec<usize>>,
}

impl Congruence {
    /// The discrete congruence: every cell is its own class.
    pub fn identity(x: &TruncSymSet) -> Self {
        Congruence {
            parents: (0..=x.trunc()).map(|n| (0..x.level_size(n)).collect()).collect(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.parents.len() - 1
    }

    /// Class representative of `c` at `level`, with path halving.
    pub fn find(&mut self, level: usize, mut c: usize) -> usize {
        let parent = &mut self.parents[level];
        while parent[c] != c {
            parent[c] = parent[parent[c]];
            c = parent[c];
        }
        c
    }

    /// Read-only representative lookup.
    pub fn root(&self, level: usize, mut c: usize) -> usize {
        let parent = &self.parents[level];
        while parent[c] != c {
            c = parent[c];
        }
        c
    }

    /// Compresses every parent chain, so `root` becomes a single lookup.
    pub fn canonical(&mut self) {
        for level in 0..self.parents.len() {
            for c in 0..self.parents[level].len() {
                self.find(level, c);
            }
        }
    }

    /// Merges the classes of `a` and `b`; true if they were distinct.
    pub fn union(&mut self, level: usize, a: usize, b: usize) -> bool {
        let ra = self.find(level, a);
        let rb = self.find(level, b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parents[level][hi] = lo;
        true
    }

    /// Merges every seed pair and closes the relation under all generator
    /// tables of `x`: whenever two cells are identified, so are their
    /// images under every face, degeneracy, and swap. Returns the number
    /// of effective merges per level; these counts equal the drop in class
    /// counts, so they do not depend on processing order.
    pub fn merge_and_saturate(
        &mut self,
        x: &TruncSymSet,
        seeds: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Vec<usize> {
        let trunc = self.trunc();
        let mut counts = vec![0usize; trunc + 1];
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for (n, a, b) in seeds {
            if self.union(n, a, b) {
                counts[n] += 1;
                stack.push((n, a, b));
            }
        }
        while let Some((n, a, b)) = stack.pop() {
            let propagate = |this: &mut Self, m: usize, ia: usize, ib: usize,
                                 stack: &mut Vec<(usize, usize, usize)>,
                                 counts: &mut Vec<usize>| {
                if this.union(m, ia, ib) {
                    counts[m] += 1;
                    stack.push((m, ia, ib));
                }
            };
            if n >= 1 {
                for i in 0..=n {
                    propagate(self, n - 1, x.face(n, i, a), x.face(n, i, b), &mut stack, &mut counts);
                }
                for i in 1..=n {
                    propagate(self, n, x.swap(n, i, a), x.swap(n, i, b), &mut stack, &mut counts);
                }
            }
            if n < trunc {
                for i in 0..=n {
                    propagate(self, n + 1, x.deg(n, i, a), x.deg(n, i, b), &mut stack, &mut counts);
                }
            }
        }
        counts
    }

    /// Number of classes at each level.
    pub fn class_counts(&self) -> Vec<usize> {
        self.parents
            .iter()
            .map(|p| p.iter().enumerate().filter(|&(i, &r)| i == r).count())
            .collect()
    }

    /// Checks that every generator table descends to classes: the images
    /// of a class under one generator all live in one class.
    pub fn verify_saturated(&self, x: &TruncSymSet) -> Result<()> {
        let trunc = self.trunc();
        for n in 0..=trunc {
            for c in 0..x.level_size(n) {
                let r = self.root(n, c);
                let mut ok = true;
                if n >= 1 {
                    ok &= (0..=n).all(|i| {
                        self.root(n - 1, x.face(n, i, c)) == self.root(n - 1, x.face(n, i, r))
                    });
                    ok &= (1..=n).all(|i| {
                        self.root(n, x.swap(n, i, c)) == self.root(n, x.swap(n, i, r))
                    });
                }
                if n < trunc {
                    ok &= (0..=n).all(|i| {
                        self.root(n + 1, x.deg(n, i, c)) == self.root(n + 1, x.deg(n, i, r))
                    });
                }
                if !ok {
                    return Err(Error::UnsaturatedCongruence {
                        level: n,
                        cell: x.cell_name(n, c).to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}
