//! Recurrence: for every letter `a`, the restrictions at `a` of the stabilizer of
//! `a` generate the whole group. Checked letter by letter with a bounded search.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::elements::ElementTable;
use crate::automaton::{Automaton, Letter, StateId};
use crate::error::Result;
use crate::group::{Gen, Group, GroupWord};

/// Cap on distinct elements visited by the search for a single letter.
const SEARCH_ELEMENTS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceStatus {
    Verified,
    Unknown,
}

/// Data gathered for one letter `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterRecurrence {
    pub letter: Letter,
    /// Level-one orbit of `letter`, in discovery order.
    pub orbit: Vec<Letter>,
    /// `(x, t_x)` with `t_x(letter) = x`, shortest and lexicographically first.
    pub transversal: Vec<(Letter, GroupWord)>,
    /// Nontrivial generators `t_x · s · t_{s(x)}⁻¹` of the stabilizer.
    pub schreier_generators: Vec<GroupWord>,
    /// Their restrictions at `letter`, reduced; same order as above.
    pub restrictions: Vec<GroupWord>,
    /// For each generator state, a product of restrictions equal to it, if found.
    pub found: Vec<(StateId, Option<GroupWord>)>,
}

impl LetterRecurrence {
    pub fn is_complete(&self) -> bool {
        self.found.iter().all(|(_, w)| w.is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub status: RecurrenceStatus,
    pub search_len: usize,
    pub per_letter: Vec<LetterRecurrence>,
}

pub fn recurrence(automaton: &Automaton, search_len: usize) -> Result<RecurrenceReport> {
    let group = Group::new(automaton.clone())?;
    let per_letter: Vec<LetterRecurrence> = (0..group.alphabet_size())
        .map(|a| letter_recurrence(&group, a, search_len))
        .collect();
    let status = if per_letter.iter().all(LetterRecurrence::is_complete) {
        RecurrenceStatus::Verified
    } else {
        RecurrenceStatus::Unknown
    };
    Ok(RecurrenceReport {
        status,
        search_len,
        per_letter,
    })
}

fn letter_recurrence(group: &Group, letter: Letter, search_len: usize) -> LetterRecurrence {
    let generators = group.generators();
    let mut transversal: BTreeMap<Letter, GroupWord> = BTreeMap::new();
    let mut orbit = vec![letter];
    transversal.insert(letter, GroupWord::identity());
    let mut queue = VecDeque::from([letter]);
    while let Some(x) = queue.pop_front() {
        for &s in &generators {
            let y = group.image_letter(&GroupWord::from_states(&[s]), x);
            if !transversal.contains_key(&y) {
                let word = transversal[&x].then(&GroupWord::from_states(&[s]));
                transversal.insert(y, word);
                orbit.push(y);
                queue.push_back(y);
            }
        }
    }

    let mut schreier_generators = Vec::new();
    let mut restrictions = Vec::new();
    let mut seen = BTreeSet::new();
    for &x in &orbit {
        for &s in &generators {
            let s_word = GroupWord::from_states(&[s]);
            let y = group.image_letter(&s_word, x);
            let word = group.reduce(
                &transversal[&x]
                    .then(&s_word)
                    .then(&transversal[&y].inverse()),
            );
            if word.is_empty() || !seen.insert(word.clone()) {
                continue;
            }
            let (image, restriction) = group.apply_letter(&word, letter);
            debug_assert_eq!(image, letter);
            schreier_generators.push(word);
            restrictions.push(group.reduce(&restriction));
        }
    }

    let found = search(group, &restrictions, &generators, search_len);
    LetterRecurrence {
        letter,
        orbit,
        transversal: transversal.into_iter().collect(),
        schreier_generators,
        restrictions,
        found,
    }
}

/// Breadth-first search over products of at most `search_len` factors drawn from
/// `factors` and their inverses, recording a product equal to each target state.
fn search(
    group: &Group,
    factors: &[GroupWord],
    targets: &[StateId],
    search_len: usize,
) -> Vec<(StateId, Option<GroupWord>)> {
    let mut found: Vec<(StateId, Option<GroupWord>)> =
        targets.iter().map(|&q| (q, None)).collect();
    let mut table = ElementTable::new(group, SEARCH_ELEMENTS, usize::MAX);
    let mut target_ids = Vec::with_capacity(targets.len());
    for &q in targets {
        match table.intern(&GroupWord::from_gens(vec![Gen::new(q)])) {
            Ok(id) => target_ids.push(id),
            Err(_) => return found,
        }
    }
    let mut steps: Vec<GroupWord> = Vec::with_capacity(2 * factors.len());
    for f in factors {
        steps.push(f.clone());
        steps.push(f.inverse());
    }
    let Ok(start) = table.intern(&GroupWord::identity()) else {
        return found;
    };
    let mut visited = BTreeSet::from([start]);
    let mut frontier = vec![GroupWord::identity()];
    let mut missing = found.len();
    for _ in 0..search_len {
        if missing == 0 {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for step in &steps {
                let product = group.reduce(&w.then(step));
                let Ok(id) = table.intern(&product) else {
                    return found;
                };
                if !visited.insert(id) {
                    continue;
                }
                for (slot, &t) in found.iter_mut().zip(&target_ids) {
                    if t == id && slot.1.is_none() {
                        slot.1 = Some(product.clone());
                        missing -= 1;
                    }
                }
                if missing == 0 {
                    return found;
                }
                next.push(product);
            }
        }
        frontier = next;
    }
    found
}
