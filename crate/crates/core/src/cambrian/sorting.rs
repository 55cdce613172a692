use itertools::Itertools;

use crate::coxeter::{CoxeterSystem, ElementId};
use crate::error::{Error, Result};

/// A product of all simple reflections, each once, with the word it was given by.
#[derive(Clone, Debug)]
pub struct CoxeterElement {
    pub element: ElementId,
    pub word: Vec<usize>,
}

impl PartialEq for CoxeterElement {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element
    }
}

impl Eq for CoxeterElement {}

impl CoxeterElement {
    pub fn from_word(cs: &CoxeterSystem, word: &[usize]) -> Result<Self> {
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if sorted != (0..cs.rank()).collect::<Vec<_>>() {
            return Err(Error::InvalidCoxeterElement(cs.format_word(word, false)));
        }
        Ok(CoxeterElement {
            element: cs.from_word(word),
            word: word.to_vec(),
        })
    }

    pub fn parse(cs: &CoxeterSystem, text: &str) -> Result<Self> {
        Self::from_word(cs, &cs.parse_word(text)?)
    }

    /// `c⁻¹`, given by the reversed word.
    pub fn inverse(&self, cs: &CoxeterSystem) -> Self {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        CoxeterElement {
            element: cs.from_word(&word),
            word,
        }
    }

    /// Edges `s → t` of the Coxeter graph with `s` before `t` in the word.
    pub fn orientation(&self, cs: &CoxeterSystem) -> Vec<(usize, usize)> {
        self.word
            .iter()
            .tuple_combinations()
            .filter(|&(&s, &t)| cs.m(s, t) >= 3)
            .map(|(&s, &t)| (s, t))
            .collect()
    }

    pub fn name(&self, cs: &CoxeterSystem, pretty: bool) -> String {
        cs.format_word(&self.word, pretty)
    }
}

/// Distinct Coxeter elements, each with the lexicographically first word producing it.
pub fn coxeter_elements(cs: &CoxeterSystem) -> Vec<CoxeterElement> {
    let mut out: Vec<CoxeterElement> = Vec::new();
    for word in (0..cs.rank()).permutations(cs.rank()) {
        let c = CoxeterElement::from_word(cs, &word).expect("a permutation of S");
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// The c-sorting word of an element, split into passes through `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortingWord {
    pub element: ElementId,
    pub blocks: Vec<Vec<usize>>,
}

impl SortingWord {
    pub fn letters(&self) -> Vec<usize> {
        self.blocks.concat()
    }

    /// Support of each pass as a bitmask over S.
    pub fn supports(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0, |m, &s| m | 1 << s))
            .collect()
    }

    pub fn is_nested(&self) -> bool {
        self.supports().windows(2).all(|w| w[1] & w[0] == w[1])
    }

    /// Passes joined by `.`, e.g. `τ₁τ₂τ₃.τ₁τ₂.τ₁`; the identity prints as `e`.
    pub fn format(&self, cs: &CoxeterSystem, pretty: bool) -> String {
        if self.blocks.is_empty() {
            return "e".into();
        }
        self.blocks.iter().map(|b| cs.format_word(b, pretty)).join(".")
    }
}

/// Leftmost reduced subword of `c c c …` spelling `w`: a letter is taken
/// whenever the prefix stays below `w` in the right weak order.
pub fn c_sorting_word(cs: &CoxeterSystem, w: ElementId, c: &CoxeterElement) -> SortingWord {
    let target = cs.length(w);
    let mut prefix = cs.identity();
    let mut blocks = Vec::new();
    while prefix != w {
        let mut block = Vec::new();
        for &s in &c.word {
            let next = cs.right_multiply(prefix, s);
            let rest = cs.multiply(cs.inverse(next), w);
            if cs.length(next) == cs.length(prefix) + 1 && cs.length(next) + cs.length(rest) == target {
                block.push(s);
                prefix = next;
            }
        }
        debug_assert!(!block.is_empty(), "every pass makes progress");
        blocks.push(block);
    }
    SortingWord { element: w, blocks }
}

pub fn is_c_sortable(cs: &CoxeterSystem, w: ElementId, c: &CoxeterElement) -> bool {
    c_sorting_word(cs, w, c).is_nested()
}

pub fn c_sortables(cs: &CoxeterSystem, c: &CoxeterElement) -> Vec<ElementId> {
    (0..cs.order()).filter(|&w| is_c_sortable(cs, w, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_type::GroupType;

    fn system(s: &str) -> CoxeterSystem {
        CoxeterSystem::build(&s.parse::<GroupType>().unwrap()).unwrap()
    }

    #[test]
    fn coxeter_element_counts() {
        assert_eq!(coxeter_elements(&system("A3")).len(), 4);
        assert_eq!(coxeter_elements(&system("B3")).len(), 4);
        assert_eq!(coxeter_elements(&system("I2:5")).len(), 2);
        assert_eq!(coxeter_elements(&system("H3")).len(), 4);
    }

    #[test]
    fn longest_element_words() {
        let cs = system("A3");
        let wo = cs.longest_element();
        let c = CoxeterElement::parse(&cs, "t1t2t3").unwrap();
        assert_eq!(c_sorting_word(&cs, wo, &c).format(&cs, true), "τ₁τ₂τ₃.τ₁τ₂.τ₁");
        let c = CoxeterElement::parse(&cs, "t2t3t1").unwrap();
        assert_eq!(c_sorting_word(&cs, wo, &c).format(&cs, true), "τ₂τ₃τ₁.τ₂τ₃τ₁");
        assert_eq!(c_sorting_word(&cs, cs.identity(), &c).blocks.len(), 0);
    }

    #[test]
    fn sortable_counts() {
        let cs = system("A3");
        for c in coxeter_elements(&cs) {
            assert_eq!(c_sortables(&cs, &c).len(), 14);
            assert!(is_c_sortable(&cs, cs.longest_element(), &c));
        }
    }

    #[test]
    fn rejects_non_coxeter_words() {
        let cs = system("A3");
        assert!(matches!(
            CoxeterElement::parse(&cs, "t1t2"),
            Err(Error::InvalidCoxeterElement(_))
        ));
        assert!(matches!(
            CoxeterElement::parse(&cs, "t1t1t3"),
            Err(Error::InvalidCoxeterElement(_))
        ));
    }
}
