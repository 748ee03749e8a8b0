//! Finite groups and groupoids presented by explicit tables.

use crate::{Error, Result};
use std::collections::HashMap;

/// A finite group given by a multiplication table. `mul[a][b]` is the
/// product `a * b`; products compose like functions, so `mul(a, b)` means
/// "b first, then a" wherever elements act.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    unit: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, unit: usize, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("no elements".into()));
        }
        if unit >= n {
            return Err(Error::InvalidGroup(format!("unit index {unit} out of range")));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("multiplication table is not square".into()));
        }
        if mul.iter().flatten().any(|&v| v >= n) {
            return Err(Error::InvalidGroup("product out of range".into()));
        }
        {
            let mut seen = std::collections::HashSet::new();
            if let Some(name) = names.iter().find(|name| !seen.insert(*name)) {
                return Err(Error::InvalidGroup(format!("duplicate element name {name:?}")));
            }
        }
        for a in 0..n {
            if mul[unit][a] != a || mul[a][unit] != a {
                return Err(Error::InvalidGroup(format!("unit law fails at {}", names[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == unit && mul[b][a] == unit) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(Error::InvalidGroup(format!("{} has no inverse", names[a])))
                }
            }
        }
        Ok(FiniteGroup { names, unit, mul, inv })
    }

    pub fn trivial() -> Self {
        FiniteGroup::new(vec!["e".into()], 0, vec![vec![0]]).unwrap()
    }

    /// The cyclic group of order `k`, elements named by residues.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let names = (0..k).map(|i| i.to_string()).collect();
        let mul = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        FiniteGroup::new(names, 0, mul).unwrap()
    }

    /// The dihedral group of order `2k`: rotations `r^a` and reflections
    /// `r^a*s`, with `s*r = r^-1*s`.
    pub fn dihedral(k: usize) -> Self {
        assert!(k >= 1);
        let idx = |a: usize, b: usize| a + k * b;
        let mut names = vec![String::new(); 2 * k];
        for a in 0..k {
            names[idx(a, 0)] = format!("r{a}");
            names[idx(a, 1)] = format!("r{a}s");
        }
        let mut mul = vec![vec![0usize; 2 * k]; 2 * k];
        for a1 in 0..k {
            for b1 in 0..2 {
                for a2 in 0..k {
                    for b2 in 0..2 {
                        let a = if b1 == 0 { (a1 + a2) % k } else { (a1 + k - a2 % k) % k };
                        mul[idx(a1, b1)][idx(a2, b2)] = idx(a, (b1 + b2) % 2);
                    }
                }
            }
        }
        FiniteGroup::new(names, 0, mul).unwrap()
    }

    /// The symmetric group on `k` letters; elements are permutations in
    /// lexicographic order, named by their value strings, and the product
    /// is composition (`mul(p, q)` applies `q` first).
    pub fn symmetric(k: usize) -> Self {
        assert!((1..=6).contains(&k));
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        let mul = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let comp: Vec<usize> = (0..k).map(|i| p[q[i]]).collect();
                        index[&comp]
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(names, 0, mul).unwrap()
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let idx = |x: usize, y: usize| x * nb + y;
        let mut names = Vec::with_capacity(na * nb);
        for x in 0..na {
            for y in 0..nb {
                names.push(format!("{},{}", a.names[x], b.names[y]));
            }
        }
        let mut mul = vec![vec![0usize; na * nb]; na * nb];
        for x1 in 0..na {
            for y1 in 0..nb {
                for x2 in 0..na {
                    for y2 in 0..nb {
                        mul[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        FiniteGroup::new(names, idx(a.unit, b.unit), mul).unwrap()
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.order()];
        in_sub[self.unit] = true;
        let mut stack: Vec<usize> = vec![self.unit];
        for &g in gens {
            if !in_sub[g] {
                in_sub[g] = true;
                stack.push(g);
            }
        }
        let members = |in_sub: &[bool]| {
            (0..self.order()).filter(|&x| in_sub[x]).collect::<Vec<_>>()
        };
        while let Some(x) = stack.pop() {
            for y in members(&in_sub) {
                for z in [self.mul(x, y), self.mul(y, x), self.inv(x)] {
                    if !in_sub[z] {
                        in_sub[z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        members(&in_sub)
    }

    /// The one-object groupoid with this group as its morphisms.
    pub fn to_groupoid(&self) -> FiniteGroupoid {
        let morphisms = self
            .names
            .iter()
            .map(|name| Morphism { name: name.clone(), src: 0, tgt: 0 })
            .collect();
        let mut comp = HashMap::new();
        for a in 0..self.order() {
            for b in 0..self.order() {
                comp.insert((a, b), self.mul(a, b));
            }
        }
        FiniteGroupoid::new(vec!["*".into()], morphisms, comp, vec![self.unit]).unwrap()
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A homomorphism between finite groups, as an element mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(src: &FiniteGroup, tgt: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.order() {
            return Err(Error::InvalidHom(format!(
                "expected {} images, got {}",
                src.order(),
                map.len()
            )));
        }
        if map.iter().any(|&v| v >= tgt.order()) {
            return Err(Error::InvalidHom("image out of range".into()));
        }
        if map[src.unit()] != tgt.unit() {
            return Err(Error::InvalidHom("unit is not preserved".into()));
        }
        for a in 0..src.order() {
            for b in 0..src.order() {
                if map[src.mul(a, b)] != tgt.mul(map[a], map[b]) {
                    return Err(Error::InvalidHom(format!(
                        "products diverge at ({}, {})",
                        src.name(a),
                        src.name(b)
                    )));
                }
            }
        }
        Ok(GroupHom { map })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite groupoid: objects, morphisms with endpoints, a partial
/// composition table `comp[(g, f)] = g . f` defined exactly when
/// `src(g) = tgt(f)`, and an identity per object. Every morphism must be
/// invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    comp: HashMap<(usize, usize), usize>,
    identities: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        comp: HashMap<(usize, usize), usize>,
        identities: Vec<usize>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGroupoid(msg));
        let (no, nm) = (objects.len(), morphisms.len());
        if identities.len() != no {
            return bad("one identity per object required".into());
        }
        {
            let mut seen = std::collections::HashSet::new();
            if let Some(m) = morphisms.iter().find(|m| !seen.insert(&m.name)) {
                return bad(format!("duplicate morphism name {:?}", m.name));
            }
        }
        for m in &morphisms {
            if m.src >= no || m.tgt >= no {
                return bad(format!("endpoints of {} out of range", m.name));
            }
        }
        for (o, &i) in identities.iter().enumerate() {
            if i >= nm || morphisms[i].src != o || morphisms[i].tgt != o {
                return bad(format!("identity of object {} is not an endomorphism", objects[o]));
            }
        }
        let composable =
            |g: usize, f: usize| morphisms[g].src == morphisms[f].tgt;
        for g in 0..nm {
            for f in 0..nm {
                match comp.get(&(g, f)) {
                    Some(&gf) => {
                        if !composable(g, f) {
                            return bad(format!(
                                "{} . {} is defined but not composable",
                                morphisms[g].name, morphisms[f].name
                            ));
                        }
                        if gf >= nm
                            || morphisms[gf].src != morphisms[f].src
                            || morphisms[gf].tgt != morphisms[g].tgt
                        {
                            return bad(format!(
                                "{} . {} has wrong endpoints",
                                morphisms[g].name, morphisms[f].name
                            ));
                        }
                    }
                    None => {
                        if composable(g, f) {
                            return bad(format!(
                                "{} . {} is composable but undefined",
                                morphisms[g].name, morphisms[f].name
                            ));
                        }
                    }
                }
            }
        }
        for f in 0..nm {
            let (s, t) = (morphisms[f].src, morphisms[f].tgt);
            if comp[&(f, identities[s])] != f || comp[&(identities[t], f)] != f {
                return bad(format!("identity law fails at {}", morphisms[f].name));
            }
        }
        for h in 0..nm {
            for g in 0..nm {
                if !composable(h, g) {
                    continue;
                }
                for f in 0..nm {
                    if !composable(g, f) {
                        continue;
                    }
                    if comp[&(comp[&(h, g)], f)] != comp[&(h, comp[&(g, f)])] {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            morphisms[h].name, morphisms[g].name, morphisms[f].name
                        ));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; nm];
        for f in 0..nm {
            let (s, t) = (morphisms[f].src, morphisms[f].tgt);
            let found = (0..nm).find(|&g| {
                morphisms[g].src == t
                    && morphisms[g].tgt == s
                    && comp[&(g, f)] == identities[s]
                    && comp[&(f, g)] == identities[t]
            });
            match found {
                Some(g) => inv[f] = g,
                None => return bad(format!("{} has no inverse", morphisms[f].name)),
            }
        }
        Ok(FiniteGroupoid { objects, morphisms, comp, identities, inv })
    }

    /// The chaotic groupoid on `k` objects: exactly one morphism between
    /// any ordered pair of objects.
    pub fn chaotic(k: usize) -> Self {
        assert!(k >= 1);
        let objects: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let idx = |s: usize, t: usize| s * k + t;
        let mut morphisms = Vec::with_capacity(k * k);
        for s in 0..k {
            for t in 0..k {
                morphisms.push(Morphism { name: format!("{s}>{t}"), src: s, tgt: t });
            }
        }
        let mut comp = HashMap::new();
        for s in 0..k {
            for m in 0..k {
                for t in 0..k {
                    comp.insert((idx(m, t), idx(s, m)), idx(s, t));
                }
            }
        }
        let identities = (0..k).map(|o| idx(o, o)).collect();
        FiniteGroupoid::new(objects, morphisms, comp, identities).unwrap()
    }

    /// The disjoint union of one-object groupoids, one per group. Object
    /// `k` carries the `k`-th group; names are prefixed with the index.
    pub fn from_groups(groups: &[FiniteGroup]) -> Self {
        assert!(!groups.is_empty());
        let objects = (0..groups.len()).map(|k| format!("o{k}")).collect();
        let mut morphisms = Vec::new();
        let mut offset = Vec::new();
        for (k, g) in groups.iter().enumerate() {
            offset.push(morphisms.len());
            for name in g.names() {
                morphisms.push(Morphism { name: format!("{k}:{name}"), src: k, tgt: k });
            }
        }
        let mut comp = HashMap::new();
        for (k, g) in groups.iter().enumerate() {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    comp.insert((offset[k] + a, offset[k] + b), offset[k] + g.mul(a, b));
                }
            }
        }
        let identities = groups.iter().enumerate().map(|(k, g)| offset[k] + g.unit()).collect();
        FiniteGroupoid::new(objects, morphisms, comp, identities).unwrap()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.comp[&(g, f)]
    }

    pub fn composition_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let mut pairs: Vec<_> = self.comp.iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        pairs.sort_unstable();
        pairs.into_iter()
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inv[f]
    }
}
