//! Finite Coxeter systems: elements as permutations of the roots, lengths,
//! reduced words, the right weak order and standard parabolic cosets.

use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::group_type::GroupType;
use crate::linalg::Vector;
use crate::root_system::{Arithmetic, RootSystem};

/// Default cap on the group order.
pub const DEFAULT_BOUND: usize = 10_000;

/// Position of an element in [`CoxeterSystem::elements`].
pub type ElementId = usize;

/// An element of W, stored as the permutation it induces on the root indices.
#[derive(Clone, Debug)]
pub struct GroupElement {
    perm: Vec<u32>,
    length: usize,
    word: Vec<usize>,
}

impl GroupElement {
    pub fn permutation(&self) -> &[u32] {
        &self.perm
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Lexicographically least reduced word, as simple-reflection indices.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Image of root `i`.
    pub fn apply_root(&self, i: usize) -> usize {
        self.perm[i] as usize
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

/// A finite Coxeter system `(W, S)` realized by a root system, with its
/// full element table.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    pub roots: RootSystem,
    coxeter_matrix: Vec<Vec<u32>>,
    simple_perms: Vec<Vec<u32>>,
    elements: Vec<GroupElement>,
    index: HashMap<Vec<u32>, ElementId>,
    right_mult: Vec<Vec<ElementId>>,
    inverse: Vec<ElementId>,
    inversions: Vec<u128>,
}

fn compose(u: &[u32], v: &[u32]) -> Vec<u32> {
    v.iter().map(|&i| u[i as usize]).collect()
}

fn invert(u: &[u32]) -> Vec<u32> {
    let mut out = vec![0; u.len()];
    for (i, &j) in u.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

impl CoxeterSystem {
    pub fn build(ty: &GroupType) -> Result<Self> {
        Self::build_with(ty, Arithmetic::Auto, DEFAULT_BOUND)
    }

    pub fn build_with(ty: &GroupType, mode: Arithmetic, bound: usize) -> Result<Self> {
        Self::from_roots(RootSystem::build_with(ty, mode)?, bound)
    }

    pub fn from_roots(roots: RootSystem, bound: usize) -> Result<Self> {
        let rank = roots.rank();
        let n = roots.len();
        if roots.num_positive() > 128 {
            return Err(Error::BoundExceeded(bound));
        }
        let mut simple_perms = Vec::with_capacity(rank);
        for s in 0..rank {
            let mut p = Vec::with_capacity(n);
            for i in 0..n {
                let image = roots.reflect(s, &roots.roots[i].coords)?;
                let j = roots
                    .find(&image)
                    .ok_or_else(|| Error::Invariant(format!("s_{s} does not permute Φ")))?;
                p.push(j as u32);
            }
            simple_perms.push(p);
        }
        let mut system = CoxeterSystem {
            roots,
            coxeter_matrix: Vec::new(),
            simple_perms,
            elements: Vec::new(),
            index: HashMap::new(),
            right_mult: Vec::new(),
            inverse: Vec::new(),
            inversions: Vec::new(),
        };
        system.coxeter_matrix = (0..rank)
            .map(|s| (0..rank).map(|t| system.product_order(s, t)).collect())
            .collect();
        system.enumerate(bound)?;
        Ok(system)
    }

    fn identity_perm(&self) -> Vec<u32> {
        (0..self.roots.len() as u32).collect()
    }

    fn product_order(&self, s: usize, t: usize) -> u32 {
        let st = compose(&self.simple_perms[s], &self.simple_perms[t]);
        let id = self.identity_perm();
        let mut p = st.clone();
        let mut k = 1;
        while p != id {
            p = compose(&p, &st);
            k += 1;
        }
        k
    }

    fn length_of(&self, perm: &[u32]) -> usize {
        let n = self.roots.num_positive() as u32;
        perm[..n as usize].iter().filter(|&&j| j >= n).count()
    }

    /// Builds the element record for a permutation, computing its
    /// lexicographically least reduced word by stripping least left descents.
    fn element_from_perm(&self, perm: Vec<u32>) -> GroupElement {
        let n = self.roots.num_positive() as u32;
        let length = self.length_of(&perm);
        let mut word = Vec::with_capacity(length);
        let mut w = perm.clone();
        while word.len() < length {
            let winv = invert(&w);
            let s = (0..self.rank())
                .find(|&s| winv[s] >= n)
                .expect("a non-identity element has a left descent");
            word.push(s);
            w = compose(&self.simple_perms[s], &w);
        }
        GroupElement { perm, length, word }
    }

    fn enumerate(&mut self, bound: usize) -> Result<()> {
        let id = self.identity_perm();
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut perms = Vec::new();
        while let Some(p) = queue.pop_front() {
            for s in 0..self.rank() {
                let q = compose(&p, &self.simple_perms[s]);
                if !seen.contains_key(&q) {
                    if seen.len() >= bound {
                        return Err(Error::BoundExceeded(bound));
                    }
                    seen.insert(q.clone(), ());
                    queue.push_back(q);
                }
            }
            perms.push(p);
        }
        let mut elements: Vec<GroupElement> = perms.into_iter().map(|p| self.element_from_perm(p)).collect();
        elements.sort_by(|a, b| (a.length, &a.word).cmp(&(b.length, &b.word)));
        self.index = elements.iter().enumerate().map(|(i, e)| (e.perm.clone(), i)).collect();
        self.elements = elements;
        self.right_mult = (0..self.elements.len())
            .map(|i| {
                (0..self.rank())
                    .map(|s| self.index[&compose(&self.elements[i].perm, &self.simple_perms[s])])
                    .collect()
            })
            .collect();
        self.inverse = self.elements.iter().map(|e| self.index[&invert(&e.perm)]).collect();
        let n = self.roots.num_positive();
        self.inversions = (0..self.elements.len())
            .map(|i| {
                let winv = &self.elements[self.inverse[i]].perm;
                (0..n).filter(|&b| winv[b] as usize >= n).fold(0u128, |acc, b| acc | (1u128 << b))
            })
            .collect();
        Ok(())
    }

    pub fn group_type(&self) -> &GroupType {
        &self.roots.group_type
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `m(s, t)`, the order of `st`.
    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter_matrix
    }

    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.coxeter_matrix[s][t]
    }

    /// All elements sorted by length, then by reduced word.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &GroupElement {
        &self.elements[id]
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn id_of(&self, e: &GroupElement) -> ElementId {
        self.index[&e.perm]
    }

    pub fn simple_reflection(&self, s: usize) -> ElementId {
        self.right_mult[0][s]
    }

    pub fn length(&self, w: ElementId) -> usize {
        self.elements[w].length
    }

    pub fn word(&self, w: ElementId) -> &[usize] {
        &self.elements[w].word
    }

    pub fn multiply(&self, u: ElementId, v: ElementId) -> ElementId {
        self.index[&compose(&self.elements[u].perm, &self.elements[v].perm)]
    }

    /// `w·s`.
    pub fn right_multiply(&self, w: ElementId, s: usize) -> ElementId {
        self.right_mult[w][s]
    }

    /// `s·w`.
    pub fn left_multiply(&self, s: usize, w: ElementId) -> ElementId {
        self.inverse[self.right_mult[self.inverse[w]][s]]
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.inverse[w]
    }

    /// The product of a word of simple reflections.
    pub fn from_word(&self, word: &[usize]) -> ElementId {
        word.iter().fold(self.identity(), |w, &s| self.right_multiply(w, s))
    }

    /// Whether `word` is a reduced expression.
    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.length(self.from_word(word)) == word.len()
    }

    /// `ℓ(ws) < ℓ(w)`.
    pub fn is_right_descent(&self, w: ElementId, s: usize) -> bool {
        self.elements[w].perm[s] as usize >= self.roots.num_positive()
    }

    pub fn is_left_descent(&self, w: ElementId, s: usize) -> bool {
        self.is_right_descent(self.inverse[w], s)
    }

    /// Left inversion set `{β ∈ Φ⁺ : w⁻¹(β) ∈ Φ⁻}` as a bitmask over positive root indices.
    pub fn inversion_set(&self, w: ElementId) -> u128 {
        self.inversions[w]
    }

    /// Image of a vector under `w`, applying the reduced word's reflections right to left.
    pub fn act(&self, w: ElementId, v: &Vector) -> Result<Vector> {
        self.act_word(self.word(w), v)
    }

    pub fn act_word(&self, word: &[usize], v: &Vector) -> Result<Vector> {
        let mut out = v.clone();
        for &s in word.iter().rev() {
            out = self.roots.reflect(s, &out)?;
        }
        Ok(out)
    }

    /// The unique element of maximal length.
    pub fn longest_element(&self) -> ElementId {
        self.elements.len() - 1
    }

    /// Right weak order: `u ≤ w` iff `ℓ(u) + ℓ(u⁻¹w) = ℓ(w)`.
    pub fn weak_leq(&self, u: ElementId, w: ElementId) -> bool {
        let (a, b) = (self.inversions[u], self.inversions[w]);
        a & b == a
    }

    /// Elements of the standard parabolic subgroup `W_I`.
    pub fn parabolic_subgroup(&self, subset: &[usize]) -> Vec<ElementId> {
        (0..self.order())
            .filter(|&w| self.word(w).iter().all(|s| subset.contains(s)))
            .collect()
    }

    /// Minimal-length representative of `wW_I`.
    pub fn min_coset_rep(&self, w: ElementId, subset: &[usize]) -> ElementId {
        let mut w = w;
        while let Some(&s) = subset.iter().find(|&&s| self.is_right_descent(w, s)) {
            w = self.right_multiply(w, s);
        }
        w
    }

    /// Partition of W into left cosets `wW_I`, ordered by minimal representative.
    pub fn parabolic_cosets(&self, subset: &[usize]) -> Vec<Coset> {
        let sub = self.parabolic_subgroup(subset);
        let mut reps: Vec<ElementId> = (0..self.order()).map(|w| self.min_coset_rep(w, subset)).collect();
        reps.sort_unstable();
        reps.dedup();
        reps.into_iter()
            .map(|rep| {
                let mut elements: Vec<ElementId> = sub.iter().map(|&g| self.multiply(rep, g)).collect();
                elements.sort_unstable();
                Coset {
                    min_rep: rep,
                    elements,
                }
            })
            .collect()
    }

    /// The right weak order with its cover relations.
    pub fn weak_order(&self) -> WeakOrderLattice {
        let mut covers = Vec::new();
        for u in 0..self.order() {
            for s in 0..self.rank() {
                let us = self.right_multiply(u, s);
                if self.length(us) == self.length(u) + 1 {
                    covers.push((u, us));
                }
            }
        }
        covers.sort_unstable();
        WeakOrderLattice {
            lengths: self.elements.iter().map(|e| e.length).collect(),
            inversions: self.inversions.clone(),
            covers,
        }
    }

    /// Parses a word of generator names; `e` or the empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text: String = text.chars().filter(|c| !matches!(c, ' ' | '.' | '*' | '·')).collect();
        if text.is_empty() || text == "e" {
            return Ok(Vec::new());
        }
        let mut names: Vec<(&str, usize)> = Vec::new();
        for (i, n) in self.roots.names.iter().enumerate() {
            names.push((&n.ascii, i));
            names.push((&n.pretty, i));
        }
        names.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));
        let mut rest = text.as_str();
        let mut word = Vec::new();
        while !rest.is_empty() {
            let (name, s) = names
                .iter()
                .find(|(n, _)| rest.starts_with(n))
                .ok_or_else(|| Error::Parse(format!("unknown generator at `{rest}`")))?;
            word.push(*s);
            rest = &rest[name.len()..];
        }
        Ok(word)
    }

    pub fn format_word(&self, word: &[usize], pretty: bool) -> String {
        if word.is_empty() {
            return "e".into();
        }
        word.iter()
            .map(|&s| {
                let n = &self.roots.names[s];
                if pretty {
                    n.pretty.as_str()
                } else {
                    n.ascii.as_str()
                }
            })
            .collect()
    }

    pub fn element_name(&self, w: ElementId) -> String {
        self.format_word(self.word(w), false)
    }
}

/// A left coset `wW_I` with its minimal-length representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub min_rep: ElementId,
    pub elements: Vec<ElementId>,
}

/// The right weak order on W.
#[derive(Clone, Debug)]
pub struct WeakOrderLattice {
    lengths: Vec<usize>,
    inversions: Vec<u128>,
    /// Pairs `(u, us)` with `ℓ(us) = ℓ(u) + 1`.
    pub covers: Vec<(ElementId, ElementId)>,
}

impl WeakOrderLattice {
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn leq(&self, u: ElementId, w: ElementId) -> bool {
        let (a, b) = (self.inversions[u], self.inversions[w]);
        a & b == a
    }

    pub fn join(&self, u: ElementId, v: ElementId) -> ElementId {
        (0..self.len())
            .filter(|&w| self.leq(u, w) && self.leq(v, w))
            .min_by_key(|&w| self.lengths[w])
            .expect("w_o is an upper bound")
    }

    pub fn meet(&self, u: ElementId, v: ElementId) -> ElementId {
        (0..self.len())
            .filter(|&w| self.leq(w, u) && self.leq(w, v))
            .max_by_key(|&w| self.lengths[w])
            .expect("e is a lower bound")
    }

    pub fn minimum(&self) -> ElementId {
        0
    }

    pub fn maximum(&self) -> ElementId {
        self.len() - 1
    }
}
