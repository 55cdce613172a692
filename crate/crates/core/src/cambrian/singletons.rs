use std::collections::{BTreeSet, HashSet, VecDeque};

use super::sorting::{c_sorting_word, CoxeterElement};
use crate::coxeter::{CoxeterSystem, ElementId};

/// The heap of a word: positions ordered by `i ≺ j` when `i < j` and the
/// letters at `i` and `j` do not commute.
#[derive(Clone, Debug)]
pub struct Heap {
    pub letters: Vec<usize>,
    /// Bitmask of the positions directly below each position.
    below: Vec<u64>,
}

impl Heap {
    pub fn new(cs: &CoxeterSystem, letters: &[usize]) -> Self {
        assert!(letters.len() <= 64, "heap words are limited to 64 letters");
        let below = (0..letters.len())
            .map(|j| {
                (0..j)
                    .filter(|&i| cs.m(letters[i], letters[j]) != 2)
                    .fold(0u64, |m, i| m | 1 << i)
            })
            .collect();
        Heap {
            letters: letters.to_vec(),
            below,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.below[j] >> i & 1 == 1
    }

    /// All down-closed position sets, as bitmasks, in breadth-first order from ∅.
    pub fn order_ideals(&self) -> Vec<u64> {
        let mut seen = HashSet::from([0u64]);
        let mut queue = VecDeque::from([0u64]);
        let mut out = Vec::new();
        while let Some(ideal) = queue.pop_front() {
            out.push(ideal);
            for j in 0..self.len() {
                if ideal >> j & 1 == 0 && self.below[j] & ideal == self.below[j] {
                    let next = ideal | 1 << j;
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
        out
    }

    /// Letters of an ideal read in position order, which is a linear extension.
    pub fn ideal_word(&self, ideal: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| ideal >> i & 1 == 1)
            .map(|i| self.letters[i])
            .collect()
    }

    /// Whether `order` lists every position once and respects `≺`.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        let mut placed = 0u64;
        order.len() == self.len()
            && order.iter().all(|&j| {
                let ok = j < self.len() && placed >> j & 1 == 0 && self.below[j] & placed == self.below[j];
                placed |= 1 << j;
                ok
            })
    }
}

/// Elements spelled by a prefix of some commutation-equivalent form of the
/// c-sorting word of `w_o`, sorted by element id.
pub fn c_singletons(cs: &CoxeterSystem, c: &CoxeterElement) -> Vec<ElementId> {
    let word = c_sorting_word(cs, cs.longest_element(), c).letters();
    let heap = Heap::new(cs, &word);
    heap.order_ideals()
        .into_iter()
        .map(|ideal| cs.from_word(&heap.ideal_word(ideal)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_type::GroupType;

    fn system(s: &str) -> CoxeterSystem {
        CoxeterSystem::build(&s.parse::<GroupType>().unwrap()).unwrap()
    }

    #[test]
    fn square_singletons() {
        let cs = system("I2:4");
        let c = CoxeterElement::parse(&cs, "ts").unwrap();
        let mut want: Vec<ElementId> = ["e", "t", "ts", "tst", "tsts"]
            .iter()
            .map(|w| cs.from_word(&cs.parse_word(w).unwrap()))
            .collect();
        want.sort_unstable();
        assert_eq!(c_singletons(&cs, &c), want);
    }

    #[test]
    fn dihedral_heaps_are_chains() {
        for m in 3..=6 {
            let cs = system(&format!("I2:{m}"));
            let c = CoxeterElement::from_word(&cs, &[1, 0]).unwrap();
            assert_eq!(c_singletons(&cs, &c).len(), m as usize + 1);
        }
    }

    #[test]
    fn commuting_letters_give_extra_singleton() {
        let cs = system("A3");
        let c = CoxeterElement::parse(&cs, "t1t2t3").unwrap();
        let singles = c_singletons(&cs, &c);
        assert_eq!(singles.len(), 8);
        assert!(singles.contains(&cs.from_word(&cs.parse_word("t1t2t1").unwrap())));
        let heap = Heap::new(&cs, &cs.parse_word("t1t2t3t1t2t1").unwrap());
        assert!(heap.is_linear_extension(&[0, 1, 3, 2, 4, 5]));
        assert!(!heap.is_linear_extension(&[0, 2, 1, 3, 4, 5]));
        assert!(heap.precedes(0, 1) && !heap.precedes(2, 3));
    }
}
