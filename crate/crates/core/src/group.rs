//! Elements of the group `⟨Π⟩` as words over signed states.
//!
//! Words act left to right: in `q₁q₂…q_m` the state `q₁` is applied first, so the
//! restriction of a word at a letter is `(gh)|_a = g|_a · h|_{g(a)}`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::automaton::{split_exponent, Automaton, Letter, StateId};
use crate::error::{Error, Result};

/// Default cap on visited pairs in [`Group::equals`].
pub const DEFAULT_PAIR_CAP: usize = 1_000_000;

/// A state or a formal inverse of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub state: StateId,
    pub inverse: bool,
}

impl Gen {
    pub fn new(state: StateId) -> Self {
        Gen {
            state,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        Gen {
            state: self.state,
            inverse: !self.inverse,
        }
    }
}

/// A word over signed states. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupWord(Vec<Gen>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn from_gens(gens: Vec<Gen>) -> Self {
        GroupWord(gens)
    }

    /// The word `q₁q₂…` of positive states.
    pub fn from_states(states: &[StateId]) -> Self {
        GroupWord(states.iter().map(|&q| Gen::new(q)).collect())
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    /// `self` followed by `other` (`self` acts first).
    pub fn then(&self, other: &GroupWord) -> Self {
        let mut gens = self.0.clone();
        gens.extend_from_slice(&other.0);
        GroupWord(gens)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut gens = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            gens.extend_from_slice(&base.0);
        }
        GroupWord(gens)
    }

    /// Order used to pick canonical representatives: shorter first, then fewer
    /// inverse letters, then lexicographic.
    pub fn canonical_cmp(&self, other: &GroupWord) -> Ordering {
        let negatives = |w: &GroupWord| w.0.iter().filter(|g| g.inverse).count();
        self.len()
            .cmp(&other.len())
            .then_with(|| negatives(self).cmp(&negatives(other)))
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// `ψ(g) = (g|₀, …, g|_{k−1}) π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathDecomposition {
    pub restrictions: Vec<GroupWord>,
    pub root_permutation: Vec<Letter>,
}

/// The group generated by an invertible automaton, with the tables needed to act
/// by formal inverses.
#[derive(Debug, Clone)]
pub struct Group {
    automaton: Automaton,
    /// `inverse_output[q * k + a] = b` with `σ(b, q) = a`.
    inverse_output: Vec<Letter>,
    trivial: Vec<bool>,
    pair_cap: usize,
}

impl Group {
    pub fn new(automaton: Automaton) -> Result<Self> {
        automaton.require_invertible()?;
        let k = automaton.alphabet_size();
        let n = automaton.state_count();
        let mut inverse_output = vec![0; n * k];
        for q in 0..n {
            for b in 0..k {
                inverse_output[q * k + automaton.output(b, q)] = b;
            }
        }
        let trivial = automaton.trivial_states();
        Ok(Group {
            automaton,
            inverse_output,
            trivial,
            pair_cap: DEFAULT_PAIR_CAP,
        })
    }

    /// Overrides the cap on visited pairs used by [`Group::equals`].
    pub fn with_pair_cap(mut self, cap: usize) -> Self {
        self.pair_cap = cap;
        self
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn alphabet_size(&self) -> usize {
        self.automaton.alphabet_size()
    }

    /// States that do not act trivially, in state order.
    pub fn generators(&self) -> Vec<StateId> {
        (0..self.automaton.state_count())
            .filter(|&q| !self.trivial[q])
            .collect()
    }

    pub fn is_trivial_state(&self, q: StateId) -> bool {
        self.trivial[q]
    }

    /// Single-letter step of a signed state: image letter and restriction.
    #[inline]
    pub fn step(&self, g: Gen, a: Letter) -> (Letter, Gen) {
        if g.inverse {
            let b = self.inverse_output[g.state * self.alphabet_size() + a];
            (b, Gen { state: self.automaton.transition(b, g.state), inverse: true })
        } else {
            (
                self.automaton.output(a, g.state),
                Gen::new(self.automaton.transition(a, g.state)),
            )
        }
    }

    /// Image of a letter and the raw restriction `g|_a` (same length as `g`).
    pub fn apply_letter(&self, g: &GroupWord, a: Letter) -> (Letter, GroupWord) {
        let mut letter = a;
        let mut restriction = Vec::with_capacity(g.len());
        for &x in g.gens() {
            let (b, r) = self.step(x, letter);
            restriction.push(r);
            letter = b;
        }
        (letter, GroupWord(restriction))
    }

    /// Image of a single letter.
    pub fn image_letter(&self, g: &GroupWord, a: Letter) -> Letter {
        g.gens().iter().fold(a, |letter, &x| self.step(x, letter).0)
    }

    /// The raw restriction `τ(w, g)`; its length equals `|g|`.
    pub fn restrict(&self, g: &GroupWord, w: &[Letter]) -> GroupWord {
        let mut current = g.clone();
        for &a in w {
            current = self.apply_letter(&current, a).1;
        }
        current
    }

    /// `g(w)`.
    pub fn act(&self, g: &GroupWord, input: &[Letter]) -> Result<Vec<Letter>> {
        self.automaton.check_letters(input)?;
        self.check_word(g)?;
        Ok(self.image_unchecked(g, input))
    }

    pub(crate) fn image_unchecked(&self, g: &GroupWord, input: &[Letter]) -> Vec<Letter> {
        let mut gens = g.0.clone();
        let mut out = Vec::with_capacity(input.len());
        for &a in input {
            let mut letter = a;
            for x in gens.iter_mut() {
                let (b, r) = self.step(*x, letter);
                *x = r;
                letter = b;
            }
            out.push(letter);
        }
        out
    }

    fn check_word(&self, g: &GroupWord) -> Result<()> {
        let n = self.automaton.state_count();
        match g.gens().iter().find(|x| x.state >= n) {
            Some(x) => Err(Error::StateOutOfRange {
                state: x.state,
                state_count: n,
            }),
            None => Ok(()),
        }
    }

    /// `a ↦ g(a)`.
    pub fn root_permutation(&self, g: &GroupWord) -> Vec<Letter> {
        (0..self.alphabet_size())
            .map(|a| self.image_letter(g, a))
            .collect()
    }

    pub fn wreath_decomposition(&self, g: &GroupWord) -> WreathDecomposition {
        let mut restrictions = Vec::with_capacity(self.alphabet_size());
        let mut root_permutation = Vec::with_capacity(self.alphabet_size());
        for a in 0..self.alphabet_size() {
            let (b, r) = self.apply_letter(g, a);
            root_permutation.push(b);
            restrictions.push(r);
        }
        WreathDecomposition {
            restrictions,
            root_permutation,
        }
    }

    /// Drops trivially-acting states and cancels adjacent `q q⁻¹` pairs.
    pub fn reduce(&self, g: &GroupWord) -> GroupWord {
        let mut out: Vec<Gen> = Vec::with_capacity(g.len());
        for &x in g.gens() {
            if self.trivial[x.state] {
                continue;
            }
            if out.last() == Some(&x.inv()) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        GroupWord(out)
    }

    /// Decides whether `g` and `h` induce the same automorphism of `A*`, by
    /// exploring the pairs `(g|_w, h|_w)` until closure or a root mismatch.
    pub fn equals(&self, g: &GroupWord, h: &GroupWord) -> Result<bool> {
        let start = (self.reduce(g), self.reduce(h));
        let mut visited = BTreeSet::new();
        let mut stack = vec![start.clone()];
        visited.insert(start);
        while let Some((x, y)) = stack.pop() {
            if x == y {
                continue;
            }
            for a in 0..self.alphabet_size() {
                let (bx, rx) = self.apply_letter(&x, a);
                let (by, ry) = self.apply_letter(&y, a);
                if bx != by {
                    return Ok(false);
                }
                let pair = (self.reduce(&rx), self.reduce(&ry));
                if pair.0 != pair.1 && !visited.contains(&pair) {
                    if visited.len() >= self.pair_cap {
                        return Err(Error::ClosureLimit {
                            limit: self.pair_cap,
                        });
                    }
                    visited.insert(pair.clone());
                    stack.push(pair);
                }
            }
        }
        Ok(true)
    }

    pub fn is_trivial(&self, g: &GroupWord) -> Result<bool> {
        self.equals(g, &GroupWord::identity())
    }

    /// Permutation of `A^n` induced by `g`, on words indexed most-significant-first.
    pub fn level_permutation(&self, g: &GroupWord, level: usize) -> Vec<usize> {
        let k = self.alphabet_size();
        let points = k.pow(level as u32);
        let mut word = vec![0; level];
        let mut perm = Vec::with_capacity(points);
        for _ in 0..points {
            let image = self.image_unchecked(g, &word);
            perm.push(image.iter().fold(0, |acc, &a| acc * k + a));
            // increment most-significant-first counter
            for slot in word.iter_mut().rev() {
                *slot += 1;
                if *slot < k {
                    break;
                }
                *slot = 0;
            }
        }
        perm
    }

    /// Parses `a·b^-1` (also `*` as separator, and `q^k` for integer powers).
    /// The empty string and `ε` (when not a state name) denote the identity.
    pub fn parse(&self, text: &str) -> Result<GroupWord> {
        let text = text.trim();
        if text.is_empty() || (text == "ε" && self.automaton.state_index("ε").is_none()) {
            return Ok(GroupWord::identity());
        }
        let mut gens = Vec::new();
        for token in text.split(['·', '*']) {
            let token = token.trim();
            if let Some(q) = self.automaton.state_index(token) {
                gens.push(Gen::new(q));
                continue;
            }
            let (base, exp) = split_exponent(token)
                .ok_or_else(|| Error::UnknownState(token.into()))?;
            let q = self
                .automaton
                .state_index(base)
                .ok_or_else(|| Error::UnknownState(base.into()))?;
            let g = Gen {
                state: q,
                inverse: exp < 0,
            };
            gens.extend(core::iter::repeat_n(g, exp.unsigned_abs() as usize));
        }
        if gens.is_empty() {
            return Err(Error::Parse(format!("empty word in `{text}`")));
        }
        Ok(GroupWord(gens))
    }

    /// Text form: states joined by `·`, inverses marked `^-1`; `ε` for the empty word.
    pub fn format(&self, g: &GroupWord) -> String {
        if g.is_empty() {
            return String::from("ε");
        }
        let parts: Vec<String> = g
            .gens()
            .iter()
            .map(|x| {
                let name = self.automaton.state_name(x.state);
                if x.inverse {
                    format!("{name}^-1")
                } else {
                    String::from(name)
                }
            })
            .collect();
        parts.join("·")
    }

    /// Compact name with runs collapsed into powers, e.g. `τ^2` or `a^-1·b`.
    pub fn name(&self, g: &GroupWord) -> String {
        crate::recursion::word_name(g.gens(), |q| self.automaton.state_name(q))
    }
}
