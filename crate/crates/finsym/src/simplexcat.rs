//! The index category: finite ordinals `[n] = {0, ..., n}` and all
//! functions between them.
//!
//! Besides plain value-table maps this module provides the distinguished
//! families the rest of the crate leans on: the flip `tau_n(i) = n - i`,
//! the fold `chi_n: [2n] -> [n]`, `i -> |n - i|`, edge classifiers
//! `rho_{ij}: [1] -> [n]`, iterated folds with their closed formula, the
//! factorization of an arbitrary map through an iterated fold, and
//! spanning-tree spines with Pruefer decoding.

use crate::{Error, Result};
use rand::{Rng, RngExt};
use std::collections::BTreeSet;

/// A function `[m] -> [n]` between finite ordinals, stored as its value
/// table. `values[i]` is the image of `i`; the domain level is implicit in
/// the table length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UMap {
    cod: usize,
    values: Vec<usize>,
}

impl UMap {
    pub fn new(cod_level: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMap);
        }
        if let Some(&v) = values.iter().find(|&&v| v > cod_level) {
            return Err(Error::ValueOutOfRange { value: v, bound: cod_level });
        }
        Ok(UMap { cod: cod_level, values })
    }

    pub fn identity(n: usize) -> Self {
        UMap { cod: n, values: (0..=n).collect() }
    }

    /// The flip `tau_n: i -> n - i`.
    pub fn flip(n: usize) -> Self {
        UMap { cod: n, values: (0..=n).rev().collect() }
    }

    /// The fold `chi_n: [2n] -> [n]`, `i -> |n - i|`.
    pub fn fold(n: usize) -> Self {
        UMap { cod: n, values: (0..=2 * n).map(|i| n.abs_diff(i)).collect() }
    }

    /// The edge classifier `rho_{ij}: [1] -> [n]` with `0 -> i`, `1 -> j`.
    pub fn edge(i: usize, j: usize, n: usize) -> Result<Self> {
        Self::new(n, vec![i, j])
    }

    /// The injection `[n] -> [n+1]` missing `i` (`0 <= i <= n+1`).
    pub fn coface(i: usize, n: usize) -> Self {
        assert!(i <= n + 1);
        UMap { cod: n + 1, values: (0..=n).map(|k| if k < i { k } else { k + 1 }).collect() }
    }

    /// The surjection `[n+1] -> [n]` hitting `i` twice (`0 <= i <= n`).
    pub fn codegeneracy(i: usize, n: usize) -> Self {
        assert!(i <= n);
        UMap { cod: n, values: (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect() }
    }

    /// The adjacent transposition of `[n]` exchanging `i-1` and `i`
    /// (`1 <= i <= n`).
    pub fn transposition(i: usize, n: usize) -> Self {
        assert!(1 <= i && i <= n);
        let mut values: Vec<usize> = (0..=n).collect();
        values.swap(i - 1, i);
        UMap { cod: n, values }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, dom_level: usize, cod_level: usize) -> Self {
        let values = (0..=dom_level).map(|_| rng.random_range(0..=cod_level)).collect();
        UMap { cod: cod_level, values }
    }

    pub fn dom_level(&self) -> usize {
        self.values.len() - 1
    }

    pub fn cod_level(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_order_preserving(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom_level() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// The composite `g . f` of `f: [m] -> [n]` and `g: [n] -> [p]`.
pub fn compose(g: &UMap, f: &UMap) -> Result<UMap> {
    if f.cod_level() != g.dom_level() {
        return Err(Error::LevelMismatch { expected: g.dom_level(), found: f.cod_level() });
    }
    Ok(UMap { cod: g.cod, values: f.values.iter().map(|&i| g.values[i]).collect() })
}

/// The iterated fold `chi_n^w = chi_n . chi_2n . ... . chi_{2^{w-1} n}`
/// from `[2^w n]` to `[n]`, computed by the closed formula
/// `i -> |(2t+1)n - i|` where `t` is the window index `2tn <= i <= 2(t+1)n`.
/// Requires `w >= 1`; for `n = 0` this is the identity of `[0]`.
pub fn fold_power(n: usize, w: u32) -> UMap {
    assert!(w >= 1, "fold_power needs w >= 1");
    if n == 0 {
        return UMap::identity(0);
    }
    let top = (1usize << w) * n;
    let last_window = (1usize << (w - 1)) - 1;
    let values = (0..=top)
        .map(|i| {
            let t = (i / (2 * n)).min(last_window);
            ((2 * t + 1) * n).abs_diff(i)
        })
        .collect();
    UMap { cod: n, values }
}

/// A factorization `phi = fold_power(base, power) . alpha` with `alpha`
/// order-preserving.
#[derive(Clone, Debug)]
pub struct FoldFactorization {
    pub alpha: UMap,
    pub base: usize,
    pub power: u32,
}

/// Factors `phi: [m] -> [n]` through an iterated fold: `alpha` sends `k` to
/// `phi(k) + (2k+1)n`, which is strictly increasing, and
/// `power = ceil(log2(m+1)) + 1` makes the fold wide enough. Maps into
/// `[0]` are constant, so for `n = 0` the factorization is `phi` itself
/// with `power = 1`.
pub fn factor_through_folds(phi: &UMap) -> FoldFactorization {
    let (m, n) = (phi.dom_level(), phi.cod_level());
    if n == 0 {
        return FoldFactorization { alpha: phi.clone(), base: 0, power: 1 };
    }
    let power = ceil_log2(m + 1) + 1;
    let top = (1usize << power) * n;
    let values: Vec<usize> = (0..=m).map(|k| phi.values[k] + (2 * k + 1) * n).collect();
    debug_assert!(values.iter().all(|&v| v <= top));
    FoldFactorization { alpha: UMap { cod: top, values }, base: n, power }
}

fn ceil_log2(x: usize) -> u32 {
    x.next_power_of_two().trailing_zeros()
}

/// A spanning tree on the vertex set `{0, ..., level}`, stored as `level`
/// edges with the smaller endpoint first, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spine {
    level: usize,
    edges: Vec<(usize, usize)>,
}

impl Spine {
    pub fn new(level: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if level == 0 {
            return Err(Error::NotASpanningTree {
                level,
                reason: "spines live at level 1 and above".into(),
            });
        }
        if edges.len() != level {
            return Err(Error::NotASpanningTree {
                level,
                reason: format!("expected {} edges, got {}", level, edges.len()),
            });
        }
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(i, j)| (i.min(j), i.max(j)))
            .collect();
        edges.sort_unstable();
        for &(i, j) in &edges {
            if i == j {
                return Err(Error::NotASpanningTree { level, reason: format!("loop at {i}") });
            }
            if j > level {
                return Err(Error::NotASpanningTree {
                    level,
                    reason: format!("vertex {j} out of range"),
                });
            }
        }
        // n edges on n+1 vertices form a tree iff they connect everything.
        let mut parent: Vec<usize> = (0..=level).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j) in &edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                return Err(Error::NotASpanningTree {
                    level,
                    reason: format!("edge ({i}, {j}) closes a cycle"),
                });
            }
            parent[ri.max(rj)] = ri.min(rj);
        }
        Ok(Spine { level, edges })
    }

    /// The standard spine: the path `{0,1}, {1,2}, ..., {level-1, level}`.
    pub fn standard(level: usize) -> Self {
        Spine { level, edges: (1..=level).map(|i| (i - 1, i)).collect() }
    }

    /// Decodes a Pruefer sequence (length `level - 1`, entries in
    /// `0..=level`) into a spanning tree, joining the smallest current
    /// leaf first.
    pub fn from_pruefer(level: usize, seq: &[usize]) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidPruefer("level must be at least 1".into()));
        }
        if seq.len() + 1 != level {
            return Err(Error::InvalidPruefer(format!(
                "level {} needs a sequence of length {}, got {}",
                level,
                level - 1,
                seq.len()
            )));
        }
        if let Some(&v) = seq.iter().find(|&&v| v > level) {
            return Err(Error::InvalidPruefer(format!("entry {v} out of range")));
        }
        let mut degree = vec![1usize; level + 1];
        for &s in seq {
            degree[s] += 1;
        }
        let mut leaves: BTreeSet<usize> =
            (0..=level).filter(|&v| degree[v] == 1).collect();
        let mut edges = Vec::with_capacity(level);
        for &s in seq {
            let leaf = *leaves.iter().next().expect("a tree always has a leaf");
            leaves.remove(&leaf);
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
            if degree[s] == 1 {
                leaves.insert(s);
            }
        }
        let mut last = leaves.into_iter();
        let (a, b) = (last.next().unwrap(), last.next().unwrap());
        edges.push((a.min(b), a.max(b)));
        Spine::new(level, edges)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, level: usize) -> Self {
        assert!(level >= 1);
        let seq: Vec<usize> =
            (1..level).map(|_| rng.random_range(0..=level)).collect();
        Spine::from_pruefer(level, &seq).expect("random sequences are in range")
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// One spine per level `1..=trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineSystem {
    spines: Vec<Spine>,
}

impl SpineSystem {
    pub fn new(spines: Vec<Spine>) -> Result<Self> {
        for (k, s) in spines.iter().enumerate() {
            if s.level() != k + 1 {
                return Err(Error::LevelMismatch { expected: k + 1, found: s.level() });
            }
        }
        Ok(SpineSystem { spines })
    }

    pub fn standard(trunc: usize) -> Self {
        SpineSystem { spines: (1..=trunc).map(Spine::standard).collect() }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, trunc: usize) -> Self {
        SpineSystem { spines: (1..=trunc).map(|n| Spine::random(rng, n)).collect() }
    }

    pub fn trunc(&self) -> usize {
        self.spines.len()
    }

    pub fn spine(&self, level: usize) -> &Spine {
        &self.spines[level - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    /// Oracle: the iterated fold assembled literally as
    /// `chi_n . chi_2n . ... . chi_{2^{w-1} n}`.
    fn fold_power_brute(n: usize, w: u32) -> UMap {
        let mut acc = UMap::fold((1usize << (w - 1)) * n);
        for k in (0..w - 1).rev() {
            acc = compose(&UMap::fold((1usize << k) * n), &acc).unwrap();
        }
        acc
    }

    #[test]
    fn compose_tables() {
        let chi2 = UMap::fold(2);
        let chi1 = UMap::fold(1);
        let c = compose(&chi1, &chi2).unwrap();
        assert_eq!(c.values(), &[1, 0, 1, 0, 1]);
        let id = UMap::identity(2);
        assert_eq!(compose(&id, &chi2).unwrap(), chi2);
        assert_eq!(compose(&chi2, &UMap::identity(4)).unwrap(), chi2);
        let tau = UMap::flip(1);
        assert!(compose(&tau, &tau).unwrap().is_identity());
        assert!(compose(&chi1, &tau).is_err());
    }

    #[test]
    fn special_values() {
        assert_eq!(UMap::flip(2).values(), &[2, 1, 0]);
        assert_eq!(UMap::fold(2).values(), &[2, 1, 0, 1, 2]);
        assert_eq!(UMap::edge(1, 3, 3).unwrap().values(), &[1, 3]);
        assert_eq!(UMap::fold(0).values(), &[0]);
    }

    #[test]
    fn edge_flip_swaps_endpoints() {
        let tau = UMap::flip(1);
        for n in 1..=5 {
            for i in 0..=n {
                for j in 0..=n {
                    let rij = UMap::edge(i, j, n).unwrap();
                    let rji = UMap::edge(j, i, n).unwrap();
                    assert_eq!(compose(&rij, &tau).unwrap(), rji);
                }
            }
        }
    }

    #[test]
    fn fold_power_matches_brute_composite() {
        for n in 0..=4 {
            for w in 1..=4 {
                assert_eq!(fold_power(n, w), fold_power_brute(n, w), "n={n} w={w}");
            }
        }
    }

    #[test]
    fn fold_power_pinned_values() {
        assert_eq!(fold_power(2, 1), UMap::fold(2));
        assert_eq!(fold_power(1, 2).values(), &[1, 0, 1, 0, 1]);
        assert_eq!(fold_power(1, 3).apply(5), 0);
    }

    #[test]
    fn factorization_pinned_examples() {
        let f = factor_through_folds(&UMap::flip(1));
        assert_eq!(f.power, 2);
        assert_eq!(f.alpha.values(), &[2, 3]);

        let f = factor_through_folds(&UMap::identity(1));
        assert_eq!(f.alpha.values(), &[1, 4]);
        let chi = fold_power(1, f.power);
        assert_eq!(chi.apply(1), 0);
        assert_eq!(chi.apply(4), 1);

        let zero = UMap::new(1, vec![0, 0, 0]).unwrap();
        let f = factor_through_folds(&zero);
        assert_eq!(f.power, 3);
        assert_eq!(f.alpha.values(), &[1, 3, 5]);
    }

    #[test]
    fn factorization_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let m = rng.random_range(0..=6);
            let n = rng.random_range(0..=6);
            let phi = UMap::random(&mut rng, m, n);
            let f = factor_through_folds(&phi);
            assert!(f.alpha.is_order_preserving(), "{:?}", f.alpha);
            assert_eq!(f.base, n);
            if n > 0 {
                assert_eq!(f.power, ceil_log2(m + 1) + 1);
                assert!(f.alpha.values().windows(2).all(|w| w[0] < w[1]));
            }
            let back = compose(&fold_power(f.base, f.power), &f.alpha).unwrap();
            assert_eq!(back, phi);
        }
    }

    #[test]
    fn composition_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let a = rng.random_range(0..=5);
            let b = rng.random_range(0..=5);
            let c = rng.random_range(0..=5);
            let d = rng.random_range(0..=5);
            let f = UMap::random(&mut rng, a, b);
            let g = UMap::random(&mut rng, b, c);
            let h = UMap::random(&mut rng, c, d);
            let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
            let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn pruefer_pinned_examples() {
        assert_eq!(Spine::from_pruefer(1, &[]).unwrap().edges(), &[(0, 1)]);
        assert_eq!(
            Spine::from_pruefer(2, &[1]).unwrap().edges(),
            &[(0, 1), (1, 2)]
        );
        assert_eq!(Spine::from_pruefer(2, &[1]).unwrap(), Spine::standard(2));
    }

    #[test]
    fn pruefer_is_a_bijection_onto_trees() {
        // 16 sequences at level 3, one tree each: Cayley's count 4^2.
        let mut seen = HashSet::new();
        for a in 0..=3 {
            for b in 0..=3 {
                let s = Spine::from_pruefer(3, &[a, b]).unwrap();
                assert!(seen.insert(s.edges().to_vec()));
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn random_spines_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(1..=6);
            let s = Spine::random(&mut rng, n);
            // Spine::new re-validates the tree shape.
            assert_eq!(Spine::new(n, s.edges().to_vec()).unwrap(), s);
        }
    }

    #[test]
    fn spine_rejects_non_trees() {
        assert!(Spine::new(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(Spine::new(2, vec![(0, 1), (2, 2)]).is_err());
        assert!(Spine::new(3, vec![(0, 1), (1, 2)]).is_err());
        assert!(Spine::new(2, vec![(0, 1), (1, 3)]).is_err());
    }

    #[test]
    fn spine_systems_line_up_levels() {
        let sys = SpineSystem::standard(4);
        assert_eq!(sys.trunc(), 4);
        for n in 1..=4 {
            assert_eq!(sys.spine(n).level(), n);
        }
        assert!(SpineSystem::new(vec![Spine::standard(2)]).is_err());
    }
}
