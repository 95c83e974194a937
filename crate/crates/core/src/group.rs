//! Finite groups as fully enumerated permutation groups.
//!
//! A [`FiniteGroup`] stores every element together with its multiplication
//! table, so subgroup questions reduce to set manipulation on element
//! indices. The identity always has index 0.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 64;

/// A permutation of `0..n`, stored as the image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidGroup(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Product of disjoint cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= n || b as usize >= n {
                    return Err(Error::InvalidGroup(format!("cycle {cycle:?} exceeds degree {n}")));
                }
                images[a as usize] = b;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// Places `self` on points `offset..offset + degree` inside a permutation of `total` points.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.0.iter().enumerate() {
            images[offset + i] = offset as u32 + j;
        }
        Perm(images)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A subgroup of some [`FiniteGroup`], as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_set(set: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = set.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Position of `element` within the member list.
    pub fn position(&self, element: usize) -> Option<usize> {
        self.members.binary_search(&element).ok()
    }

    fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            members: self.members.iter().copied().filter(|&m| other.contains(m)).collect(),
        }
    }
}

/// A conjugacy class of subgroups; `representative` is the least member list.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TwoGroupBranch {
    Cyclic,
    ContainsKleinFour,
    ContainsQ8,
}

#[derive(Debug, Clone)]
pub struct Trichotomy {
    pub branch: TwoGroupBranch,
    pub witness: Subgroup,
}

pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<usize>,
    elements: Vec<Perm>,
    words: Vec<Vec<usize>>,
    table: Vec<usize>,
    inverses: Vec<usize>,
    subgroups: OnceLock<Vec<Subgroup>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("degree", &self.degree)
            .finish()
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators` acting on `degree` points.
    pub fn generate(name: impl Into<String>, degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Arc<Self>> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidGroup(format!(
                "generator {bad:?} acts on {} points, expected {degree}",
                bad.degree()
            )));
        }
        let identity = Perm::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (s, gen) in generators.iter().enumerate() {
                let next = gen.compose(&elements[cur]);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::OrderCap {
                        order: elements.len() + 1,
                        cap,
                    });
                }
                let mut w = vec![s];
                w.extend_from_slice(&words[cur]);
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
                words.push(w);
            }
        }
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        Ok(Arc::new(Self::from_parts(name.into(), degree, generator_indices, elements, words, &index)))
    }

    fn from_parts(
        name: String,
        degree: usize,
        generators: Vec<usize>,
        elements: Vec<Perm>,
        words: Vec<Vec<usize>>,
        index: &HashMap<Perm, usize>,
    ) -> Self {
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&elements[a].compose(&elements[b])];
            }
        }
        let inverses = elements.iter().map(|e| index[&e.inverse()]).collect();
        FiniteGroup {
            name,
            degree,
            generators,
            elements,
            words,
            table,
            inverses,
            subgroups: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    /// Indices of the defining generators, in the order they were supplied.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(Self::IDENTITY, |acc, _| self.mul(acc, a))
    }

    /// `x⁻¹ a x`
    pub fn conjugate_element(&self, a: usize, x: usize) -> usize {
        self.mul(self.inv(x), self.mul(a, x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != Self::IDENTITY {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    pub fn index_of(&self, perm: &Perm) -> Option<usize> {
        self.elements.iter().position(|e| e == perm)
    }

    /// Shortest word for an element in the defining generators, e.g. `a^2*b`.
    pub fn word(&self, a: usize) -> String {
        let letters = generator_letters(self.generators.len());
        let w = &self.words[a];
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut k = 0;
        while k < w.len() {
            let mut run = 1;
            while k + run < w.len() && w[k + run] == w[k] {
                run += 1;
            }
            parts.push(if run == 1 {
                letters[w[k]].clone()
            } else {
                format!("{}^{}", letters[w[k]], run)
            });
            k += run;
        }
        parts.join("*")
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: vec![Self::IDENTITY],
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
        }
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[Self::IDENTITY] = true;
        let mut members = vec![Self::IDENTITY];
        let mut k = 0;
        while k < members.len() {
            let cur = members[k];
            for &g in gens {
                let next = self.mul(g, cur);
                if !seen[next] {
                    seen[next] = true;
                    members.push(next);
                }
            }
            k += 1;
        }
        Subgroup::from_set(members)
    }

    pub fn subgroup_from(&self, members: Vec<usize>) -> Result<Subgroup> {
        let sub = Subgroup::from_set(members);
        if !sub.contains(Self::IDENTITY)
            || sub.members.iter().any(|&a| a >= self.order())
            || sub
                .members
                .iter()
                .any(|&a| !sub.contains(self.inv(a)) || sub.members.iter().any(|&b| !sub.contains(self.mul(a, b))))
        {
            return Err(Error::InvalidGroup(format!("{:?} is not a subgroup", sub.members)));
        }
        Ok(sub)
    }

    pub fn cyclic_subgroup(&self, a: usize) -> Subgroup {
        self.closure(&[a])
    }

    /// Every subgroup, ordered by (order, member list).
    ///
    /// Seeds with the cyclic subgroups and joins with cyclic subgroups until
    /// nothing new appears; every subgroup is a join of cyclic ones.
    pub fn all_subgroups(&self) -> &[Subgroup] {
        self.subgroups.get_or_init(|| {
            let cyclic: Vec<Subgroup> = {
                let set: BTreeSet<Subgroup> = (0..self.order()).map(|a| self.cyclic_subgroup(a)).collect();
                set.into_iter().collect()
            };
            let cyclic_gens: Vec<usize> = cyclic
                .iter()
                .map(|c| {
                    *c.members
                        .iter()
                        .find(|&&a| self.element_order(a) == c.order())
                        .expect("cyclic subgroup has a generator")
                })
                .collect();
            let mut found: HashSet<Subgroup> = cyclic.iter().cloned().collect();
            let mut frontier: Vec<Subgroup> = cyclic.clone();
            while let Some(sub) = frontier.pop() {
                for (c, &g) in cyclic.iter().zip(&cyclic_gens) {
                    if c.is_subset_of(&sub) {
                        continue;
                    }
                    let join = self.closure_of_subgroup_and(&sub, g);
                    if found.insert(join.clone()) {
                        frontier.push(join);
                    }
                }
            }
            let mut all: Vec<Subgroup> = found.into_iter().collect();
            all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
            all
        })
    }

    fn closure_of_subgroup_and(&self, sub: &Subgroup, g: usize) -> Subgroup {
        let mut gens: Vec<usize> = self.minimal_generators(sub);
        gens.push(g);
        self.closure(&gens)
    }

    /// A small generating set, chosen greedily.
    pub fn minimal_generators(&self, sub: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        let mut candidates = sub.members.clone();
        candidates.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        for a in candidates {
            if current.order() == sub.order() {
                break;
            }
            if !current.contains(a) {
                gens.push(a);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// `x⁻¹ H x`
    pub fn conjugate(&self, h: &Subgroup, x: usize) -> Subgroup {
        Subgroup::from_set(h.members.iter().map(|&a| self.conjugate_element(a, x)))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&g| h.members.iter().all(|&a| h.contains(self.conjugate_element(a, g))))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_set((0..self.order()).filter(|&x| self.conjugate(h, x) == *h))
    }

    /// `N_G(H, K) = { g : g⁻¹ H g ⊆ K }`.
    pub fn transporter(&self, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| h.members.iter().all(|&a| k.contains(self.conjugate_element(a, x))))
            .collect()
    }

    pub fn is_subconjugate(&self, h: &Subgroup, k: &Subgroup) -> bool {
        if !k.order().is_multiple_of(h.order()) {
            return false;
        }
        (0..self.order()).any(|x| h.members.iter().all(|&a| k.contains(self.conjugate_element(a, x))))
    }

    /// Orbits of the subgroup list under conjugation, optionally only those of a given order.
    pub fn conjugacy_classes_of_subgroups(&self, order: Option<usize>) -> Vec<SubgroupClass> {
        let mut classes = Vec::new();
        let mut assigned: HashSet<&Subgroup> = HashSet::new();
        for h in self.all_subgroups() {
            if order.is_some_and(|o| o != h.order()) || assigned.contains(h) {
                continue;
            }
            let members: BTreeSet<Subgroup> = (0..self.order()).map(|x| self.conjugate(h, x)).collect();
            let members: Vec<Subgroup> = members.into_iter().collect();
            for m in &members {
                let stored = self
                    .all_subgroups()
                    .iter()
                    .find(|s| *s == m)
                    .expect("subgroup list is closed under conjugation");
                assigned.insert(stored);
            }
            classes.push(SubgroupClass {
                representative: members[0].clone(),
                members,
            });
        }
        classes
    }

    /// The conjugacy-class representative of `h`.
    pub fn class_representative(&self, h: &Subgroup) -> Subgroup {
        (0..self.order())
            .map(|x| self.conjugate(h, x))
            .min()
            .expect("group is nonempty")
    }

    pub fn is_cyclic(&self, h: &Subgroup) -> bool {
        h.members.iter().any(|&a| self.element_order(a) == h.order())
    }

    pub fn is_p_subgroup(&self, h: &Subgroup, p: u32) -> bool {
        is_power_of(h.order(), p as usize)
    }

    /// A Sylow p-subgroup (the first of maximal order in the subgroup list).
    pub fn sylow_subgroup(&self, p: u32) -> Subgroup {
        self.all_subgroups()
            .iter()
            .filter(|h| self.is_p_subgroup(h, p))
            .max_by_key(|h| h.order())
            .cloned()
            .unwrap_or_else(|| self.trivial_subgroup())
    }

    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        let all = self.all_subgroups();
        let proper: Vec<&Subgroup> = all.iter().filter(|h| h.order() < self.order()).collect();
        proper
            .iter()
            .filter(|h| {
                !proper
                    .iter()
                    .any(|k| k.order() > h.order() && h.is_subset_of(k))
            })
            .map(|h| (*h).clone())
            .collect()
    }

    /// Intersection of all maximal proper subgroups; the trivial group is its own.
    pub fn frattini_subgroup(&self) -> Subgroup {
        self.maximal_subgroups()
            .iter()
            .fold(self.whole(), |acc, m| acc.intersect(m))
    }

    /// The subgroup as a group in its own right. Element `i` of the result is
    /// `h.members()[i]` of `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup, name: impl Into<String>) -> Arc<FiniteGroup> {
        let elements: Vec<Perm> = h.members.iter().map(|&a| self.elements[a].clone()).collect();
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let gens_parent = self.minimal_generators(h);
        let generators: Vec<usize> = gens_parent.iter().map(|&g| h.position(g).expect("member")).collect();
        // words in the new generators: BFS from the identity
        let mut words = vec![Vec::new(); elements.len()];
        let mut seen = vec![false; elements.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (s, &g) in generators.iter().enumerate() {
                let next = index[&elements[g].compose(&elements[cur])];
                if !seen[next] {
                    seen[next] = true;
                    let mut w = vec![s];
                    w.extend_from_slice(&words[cur]);
                    words[next] = w;
                    queue.push_back(next);
                }
            }
        }
        Arc::new(Self::from_parts(name.into(), self.degree, generators, elements, words, &index))
    }

    /// `N / H` where `H` is normal in `N`, realized by the regular action on cosets.
    pub fn quotient_of(self: &Arc<Self>, numerator: &Subgroup, normal: &Subgroup) -> Result<QuotientGroup> {
        if !normal.is_subset_of(numerator)
            || numerator
                .members
                .iter()
                .any(|&x| self.conjugate(normal, x) != *normal)
        {
            return Err(Error::InvalidGroup("subgroup is not normal in the numerator".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for &x in &numerator.members {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let coset: Vec<usize> = normal.members.iter().map(|&h| self.mul(x, h)).collect();
            for &y in &coset {
                coset_of[y] = cosets.len();
            }
            let mut coset = coset;
            coset.sort_unstable();
            cosets.push(coset);
        }
        let m = cosets.len();
        let action = |x: usize| -> Perm {
            Perm((0..m).map(|c| coset_of[self.mul(x, cosets[c][0])] as u32).collect())
        };
        let gens: Vec<Perm> = self.minimal_generators(numerator).into_iter().map(action).collect();
        let name = format!("{}/{}", self.name, normal.order());
        let group = FiniteGroup::generate(name, m, gens, usize::MAX)?;
        let mut projection = vec![None; self.order()];
        for &x in &numerator.members {
            projection[x] = group.index_of(&action(x));
        }
        Ok(QuotientGroup {
            ambient: Arc::clone(self),
            numerator: numerator.clone(),
            normal: normal.clone(),
            cosets,
            group,
            projection,
        })
    }

    pub fn quotient(self: &Arc<Self>, normal: &Subgroup) -> Result<QuotientGroup> {
        self.quotient_of(&self.whole(), normal)
    }

    /// `N_G(H) / H`.
    pub fn weyl_group(self: &Arc<Self>, h: &Subgroup) -> QuotientGroup {
        let n = self.normalizer(h);
        self.quotient_of(&n, h).expect("H is normal in its normalizer")
    }

    /// Which of cyclic / contains C2×C2 / contains Q8 holds for a 2-group, with a witness.
    pub fn two_group_trichotomy(&self) -> Result<Trichotomy> {
        if !is_power_of(self.order(), 2) {
            return Err(Error::NotAPGroup(format!(
                "{} has order {}, not a power of 2",
                self.name,
                self.order()
            )));
        }
        if self.is_cyclic(&self.whole()) {
            return Ok(Trichotomy {
                branch: TwoGroupBranch::Cyclic,
                witness: self.whole(),
            });
        }
        if let Some(v) = self
            .all_subgroups()
            .iter()
            .find(|h| h.order() == 4 && self.is_klein_four(h))
        {
            return Ok(Trichotomy {
                branch: TwoGroupBranch::ContainsKleinFour,
                witness: v.clone(),
            });
        }
        if let Some(q) = self
            .all_subgroups()
            .iter()
            .find(|h| h.order() == 8 && self.is_quaternion_eight(h))
        {
            return Ok(Trichotomy {
                branch: TwoGroupBranch::ContainsQ8,
                witness: q.clone(),
            });
        }
        Err(Error::Internal(format!(
            "{} is a non-cyclic 2-group with neither C2xC2 nor Q8 inside",
            self.name
        )))
    }

    pub fn is_klein_four(&self, h: &Subgroup) -> bool {
        h.order() == 4 && h.members.iter().all(|&a| self.element_order(a) <= 2)
    }

    /// Order 8, non-cyclic, exactly one involution.
    pub fn is_quaternion_eight(&self, h: &Subgroup) -> bool {
        h.order() == 8
            && !self.is_cyclic(h)
            && h.members.iter().filter(|&&a| self.element_order(a) == 2).count() == 1
    }

    /// An element of order `p`, if `p` divides the order (Cauchy).
    pub fn element_of_order(&self, p: usize) -> Option<usize> {
        (0..self.order()).find_map(|a| {
            let o = self.element_order(a);
            o.is_multiple_of(p).then(|| self.pow(a, o / p))
        })
    }
}

/// `N / H` with its regular action on cosets.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub ambient: Arc<FiniteGroup>,
    pub numerator: Subgroup,
    pub normal: Subgroup,
    /// Cosets of `normal` in `numerator`; `cosets[0]` is `normal` itself.
    pub cosets: Vec<Vec<usize>>,
    pub group: Arc<FiniteGroup>,
    projection: Vec<Option<usize>>,
}

impl QuotientGroup {
    /// Image of an ambient element of the numerator in the quotient group.
    pub fn project(&self, x: usize) -> Option<usize> {
        self.projection[x]
    }

    /// Some ambient element mapping to quotient element `q`.
    pub fn lift(&self, q: usize) -> usize {
        self.numerator
            .members()
            .iter()
            .copied()
            .find(|&x| self.projection[x] == Some(q))
            .expect("projection is surjective")
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

pub(crate) fn generator_letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

pub fn is_power_of(n: usize, p: usize) -> bool {
    let mut n = n;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return false;
        }
        n /= p;
    }
    n == 1
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: usize) -> usize {
    let mut n = n;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}
