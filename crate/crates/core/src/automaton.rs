//! Mealy automata with equal input and output alphabets, and the algebra on them:
//! dual, product, power, inverse, minimization, and the induced action on `A*`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Letters are dense indices `0..alphabet_size`.
pub type Letter = usize;
/// States are indices into the automaton's state list.
pub type StateId = usize;

/// A finite automaton `(A, Q, σ, τ)` with total output and transition tables.
///
/// Tables are stored state-major: the cell for `(a, q)` lives at `q * |A| + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet_size: usize,
    letter_names: Vec<String>,
    states: Vec<String>,
    identity: Option<StateId>,
    output: Vec<Letter>,
    transition: Vec<StateId>,
}

/// Result of running a state word over an input word: the extended output
/// `σ(w, u)` and the extended transition `τ(w, u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub output: Vec<Letter>,
    pub transition: Vec<StateId>,
}

/// One cell of the square-tile picture: input at the bottom, state on the left,
/// output on top, next state on the right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SquareTile {
    pub bottom: String,
    pub left: String,
    pub top: String,
    pub right: String,
}

pub(crate) fn default_letter_names(k: usize) -> Vec<String> {
    (0..k).map(|a| a.to_string()).collect()
}

impl Automaton {
    /// Builds an automaton from tables indexed `[letter][state]`.
    pub fn new(
        alphabet_size: usize,
        states: Vec<String>,
        identity: Option<StateId>,
        output: Vec<Vec<Letter>>,
        transition: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        if output.len() != alphabet_size || transition.len() != alphabet_size {
            return Err(Error::InvalidAutomaton(format!(
                "tables must have one row per letter ({alphabet_size})"
            )));
        }
        let n = states.len();
        for (a, (orow, trow)) in output.iter().zip(&transition).enumerate() {
            if orow.len() != n || trow.len() != n {
                return Err(Error::InvalidAutomaton(format!(
                    "row {a} must have one cell per state ({n})"
                )));
            }
        }
        Self::from_fn(alphabet_size, states, identity, |a, q| {
            (output[a][q], transition[a][q])
        })
    }

    /// Builds an automaton from a cell function `(a, q) ↦ (σ(a,q), τ(a,q))`.
    pub fn from_fn(
        alphabet_size: usize,
        states: Vec<String>,
        identity: Option<StateId>,
        cell: impl Fn(Letter, StateId) -> (Letter, StateId),
    ) -> Result<Self> {
        let n = states.len();
        let mut output = Vec::with_capacity(n * alphabet_size);
        let mut transition = Vec::with_capacity(n * alphabet_size);
        for q in 0..n {
            for a in 0..alphabet_size {
                let (b, r) = cell(a, q);
                output.push(b);
                transition.push(r);
            }
        }
        Self::from_parts(
            alphabet_size,
            default_letter_names(alphabet_size),
            states,
            identity,
            output,
            transition,
        )
    }

    pub(crate) fn from_parts(
        alphabet_size: usize,
        letter_names: Vec<String>,
        states: Vec<String>,
        identity: Option<StateId>,
        output: Vec<Letter>,
        transition: Vec<StateId>,
    ) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidAutomaton("alphabet must be non-empty".into()));
        }
        if states.is_empty() {
            return Err(Error::InvalidAutomaton("state set must be non-empty".into()));
        }
        let n = states.len();
        let mut seen = BTreeMap::new();
        for (i, s) in states.iter().enumerate() {
            if let Some(j) = seen.insert(s.as_str(), i) {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate state name `{s}` (positions {j} and {i})"
                )));
            }
        }
        if let Some(&b) = output.iter().find(|&&b| b >= alphabet_size) {
            return Err(Error::LetterOutOfRange {
                letter: b,
                alphabet_size,
            });
        }
        if let Some(&r) = transition.iter().find(|&&r| r >= n) {
            return Err(Error::StateOutOfRange {
                state: r,
                state_count: n,
            });
        }
        let automaton = Automaton {
            alphabet_size,
            letter_names,
            states,
            identity,
            output,
            transition,
        };
        if let Some(e) = identity {
            if e >= n {
                return Err(Error::StateOutOfRange {
                    state: e,
                    state_count: n,
                });
            }
            if !automaton.satisfies_identity_law(e) {
                return Err(Error::InvalidAutomaton(format!(
                    "designated identity `{}` does not act trivially",
                    automaton.states[e]
                )));
            }
        }
        Ok(automaton)
    }

    /// The one-state automaton `{ε}` over `k` letters.
    pub fn identity_automaton(alphabet_size: usize) -> Self {
        Self::from_fn(alphabet_size, vec!["ε".into()], Some(0), |a, _| (a, 0))
            .expect("identity automaton is well formed")
    }

    /// Replaces the display names of letters (used by duals, whose letters are states).
    pub fn with_letter_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.alphabet_size {
            return Err(Error::InvalidAutomaton(format!(
                "expected {} letter names, got {}",
                self.alphabet_size,
                names.len()
            )));
        }
        self.letter_names = names;
        Ok(self)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn letter_names(&self) -> &[String] {
        &self.letter_names
    }

    pub fn letter_name(&self, a: Letter) -> &str {
        &self.letter_names[a]
    }

    pub fn identity(&self) -> Option<StateId> {
        self.identity
    }

    /// `σ(a, q)`.
    #[inline]
    pub fn output(&self, a: Letter, q: StateId) -> Letter {
        self.output[q * self.alphabet_size + a]
    }

    /// `τ(a, q)`.
    #[inline]
    pub fn transition(&self, a: Letter, q: StateId) -> StateId {
        self.transition[q * self.alphabet_size + a]
    }

    /// Output table indexed `[letter][state]`.
    pub fn output_rows(&self) -> Vec<Vec<Letter>> {
        (0..self.alphabet_size)
            .map(|a| (0..self.state_count()).map(|q| self.output(a, q)).collect())
            .collect()
    }

    /// Transition table indexed `[letter][state]`.
    pub fn transition_rows(&self) -> Vec<Vec<StateId>> {
        (0..self.alphabet_size)
            .map(|a| (0..self.state_count()).map(|q| self.transition(a, q)).collect())
            .collect()
    }

    fn satisfies_identity_law(&self, e: StateId) -> bool {
        (0..self.alphabet_size).all(|a| self.output(a, e) == a && self.transition(a, e) == e)
    }

    pub(crate) fn check_letters(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.alphabet_size) {
            Some(&a) => Err(Error::LetterOutOfRange {
                letter: a,
                alphabet_size: self.alphabet_size,
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn check_states(&self, states: &[StateId]) -> Result<()> {
        match states.iter().find(|&&q| q >= self.state_count()) {
            Some(&q) => Err(Error::StateOutOfRange {
                state: q,
                state_count: self.state_count(),
            }),
            None => Ok(()),
        }
    }

    /// The graph `Γ(Π)`: one edge `q → τ(a,q)` labelled `a/σ(a,q)` per cell.
    pub fn graph(&self) -> LabeledGraph {
        let mut g = LabeledGraph::new(self.states.clone());
        for q in 0..self.state_count() {
            for a in 0..self.alphabet_size {
                let label = format!(
                    "{}/{}",
                    self.letter_names[a],
                    self.letter_names[self.output(a, q)]
                );
                g.add_edge(q, self.transition(a, q), label);
            }
        }
        g
    }

    /// The dual automaton: letters and states swap roles, `σ*(q,a) = τ(a,q)` and
    /// `τ*(q,a) = σ(a,q)`.
    ///
    /// A letter is only designated as the dual's identity state when it satisfies
    /// the identity law in the dual, which makes `dual` an exact involution.
    pub fn dual(&self) -> Automaton {
        let k = self.alphabet_size;
        let n = self.state_count();
        let mut output = Vec::with_capacity(n * k);
        let mut transition = Vec::with_capacity(n * k);
        for a in 0..k {
            for q in 0..n {
                output.push(self.transition(a, q));
                transition.push(self.output(a, q));
            }
        }
        let mut dual = Automaton {
            alphabet_size: n,
            letter_names: self.states.clone(),
            states: self.letter_names.clone(),
            identity: None,
            output,
            transition,
        };
        dual.identity = (0..k).find(|&a| dual.satisfies_identity_law(a));
        dual
    }

    /// The product `Π * Π'`: state `(q,q')` applies `q` first, then `q'`.
    ///
    /// State `(i, j)` has index `i * |Q'| + j`.
    pub fn product(&self, right: &Automaton) -> Result<Automaton> {
        if self.alphabet_size != right.alphabet_size {
            return Err(Error::IncompatibleAlphabets {
                left: self.alphabet_size,
                right: right.alphabet_size,
            });
        }
        let k = self.alphabet_size;
        let m = right.state_count();
        let mut states = Vec::with_capacity(self.state_count() * m);
        let mut output = Vec::with_capacity(states.capacity() * k);
        let mut transition = Vec::with_capacity(states.capacity() * k);
        for q in 0..self.state_count() {
            for r in 0..m {
                states.push(format!("({},{})", self.states[q], right.states[r]));
                for a in 0..k {
                    let mid = self.output(a, q);
                    output.push(right.output(mid, r));
                    transition.push(self.transition(a, q) * m + right.transition(mid, r));
                }
            }
        }
        let identity = match (self.identity, right.identity) {
            (Some(e), Some(f)) => Some(e * m + f),
            _ => None,
        };
        Self::from_parts(
            k,
            self.letter_names.clone(),
            states,
            identity,
            output,
            transition,
        )
    }

    /// Left-associated iterated product `Π^n`, with states named by flat tuples.
    ///
    /// The tuple `(q_1,…,q_n)` has index `Σ q_i |Q|^{n-i}`.
    pub fn power(&self, n: usize) -> Result<Automaton> {
        if n == 0 {
            return Err(Error::InvalidAutomaton("power must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        if n > 1 {
            let base = self.state_count();
            acc.states = (0..acc.state_count())
                .map(|idx| {
                    let mut digits = vec![0; n];
                    let mut rest = idx;
                    for slot in digits.iter_mut().rev() {
                        *slot = rest % base;
                        rest /= base;
                    }
                    let names: Vec<&str> = digits.iter().map(|&q| self.state_name(q)).collect();
                    format!("({})", names.join(","))
                })
                .collect();
        }
        Ok(acc)
    }

    /// Runs the state word `states` (first state applied first) over `input`.
    pub fn act(&self, states: &[StateId], input: &[Letter]) -> Result<Run> {
        self.check_states(states)?;
        self.check_letters(input)?;
        let mut word = input.to_vec();
        let mut transition = Vec::with_capacity(states.len());
        for &q0 in states {
            let mut q = q0;
            for a in word.iter_mut() {
                let b = self.output(*a, q);
                q = self.transition(*a, q);
                *a = b;
            }
            transition.push(q);
        }
        Ok(Run {
            output: word,
            transition,
        })
    }

    /// `τ(w, q)` for a single state.
    pub fn restrict_state(&self, q: StateId, word: &[Letter]) -> StateId {
        word.iter().fold(q, |q, &a| self.transition(a, q))
    }

    /// The permutation-or-map `a ↦ σ(a,q)`.
    pub fn column(&self, q: StateId) -> &[Letter] {
        &self.output[q * self.alphabet_size..(q + 1) * self.alphabet_size]
    }

    fn column_is_bijective(&self, q: StateId) -> bool {
        let mut seen = vec![false; self.alphabet_size];
        self.column(q).iter().all(|&b| !core::mem::replace(&mut seen[b], true))
    }

    pub fn is_invertible(&self) -> bool {
        (0..self.state_count()).all(|q| self.column_is_bijective(q))
    }

    pub(crate) fn require_invertible(&self) -> Result<()> {
        match (0..self.state_count()).find(|&q| !self.column_is_bijective(q)) {
            Some(q) => Err(Error::NotInvertible {
                state: self.states[q].clone(),
            }),
            None => Ok(()),
        }
    }

    /// The automaton of formal inverses: `σ(a,q⁻¹) = b` where `σ(b,q) = a`, and
    /// `τ(a,q⁻¹) = τ(b,q)⁻¹`. The identity state keeps its name.
    pub fn inverse(&self) -> Result<Automaton> {
        self.require_invertible()?;
        let k = self.alphabet_size;
        let n = self.state_count();
        let mut output = vec![0; n * k];
        let mut transition = vec![0; n * k];
        for q in 0..n {
            for b in 0..k {
                let a = self.output(b, q);
                output[q * k + a] = b;
                transition[q * k + a] = self.transition(b, q);
            }
        }
        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(q, name)| {
                if Some(q) == self.identity {
                    name.clone()
                } else {
                    invert_name(name)
                }
            })
            .collect();
        Self::from_parts(
            k,
            self.letter_names.clone(),
            states,
            self.identity,
            output,
            transition,
        )
    }

    /// Partition of the states into classes inducing the same tree transformation.
    /// Returns the class index of every state; classes are numbered by first member.
    pub fn action_classes(&self) -> Vec<usize> {
        let n = self.state_count();
        let mut class = renumber((0..n).map(|q| self.column(q).to_vec()));
        let mut count = class.iter().max().map_or(0, |&c| c + 1);
        loop {
            let next = renumber((0..n).map(|q| {
                let mut sig = Vec::with_capacity(self.alphabet_size + 1);
                sig.push(class[q]);
                sig.extend((0..self.alphabet_size).map(|a| class[self.transition(a, q)]));
                sig
            }));
            let next_count = next.iter().max().map_or(0, |&c| c + 1);
            class = next;
            if next_count == count {
                return class;
            }
            count = next_count;
        }
    }

    /// Maximal quotient: states merged iff they act identically on `A*`.
    /// Returns the quotient and the surjective state map.
    pub fn minimize(&self) -> (Automaton, Vec<StateId>) {
        let class = self.action_classes();
        let count = class.iter().max().map_or(0, |&c| c + 1);
        let mut reps = vec![usize::MAX; count];
        for (q, &c) in class.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = q;
            }
        }
        let k = self.alphabet_size;
        let mut output = Vec::with_capacity(count * k);
        let mut transition = Vec::with_capacity(count * k);
        for &r in &reps {
            for a in 0..k {
                output.push(self.output(a, r));
                transition.push(class[self.transition(a, r)]);
            }
        }
        let quotient = Self::from_parts(
            k,
            self.letter_names.clone(),
            reps.iter().map(|&r| self.states[r].clone()).collect(),
            self.identity.map(|e| class[e]),
            output,
            transition,
        )
        .expect("quotient of a valid automaton is valid");
        (quotient, class)
    }

    /// Which states act as the identity on `A*`.
    pub fn trivial_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut trivial: Vec<bool> = (0..n)
            .map(|q| self.column(q).iter().enumerate().all(|(a, &b)| a == b))
            .collect();
        loop {
            let mut changed = false;
            for q in 0..n {
                if trivial[q] && (0..self.alphabet_size).any(|a| !trivial[self.transition(a, q)]) {
                    trivial[q] = false;
                    changed = true;
                }
            }
            if !changed {
                return trivial;
            }
        }
    }

    /// Returns an automaton with a designated identity state, and whether a fresh
    /// state had to be adjoined. An existing trivial state is designated when present.
    pub fn ensure_identity(&self) -> (Automaton, bool) {
        if self.identity.is_some() {
            return (self.clone(), false);
        }
        let mut out = self.clone();
        if let Some(e) = self.trivial_states().iter().position(|&t| t) {
            if self.satisfies_identity_law(e) {
                out.identity = Some(e);
                return (out, false);
            }
        }
        let e = out.state_count();
        let mut name = String::from("ε");
        while out.state_index(&name).is_some() {
            name.push('\'');
        }
        out.states.push(name);
        for a in 0..self.alphabet_size {
            out.output.push(a);
            out.transition.push(e);
        }
        out.identity = Some(e);
        (out, true)
    }

    /// Keeps only the listed states (which must be closed under `τ`), in the given order.
    pub fn restrict_to_states(&self, keep: &[StateId]) -> Result<Automaton> {
        self.check_states(keep)?;
        let mut position = vec![usize::MAX; self.state_count()];
        for (i, &q) in keep.iter().enumerate() {
            position[q] = i;
        }
        let k = self.alphabet_size;
        let mut output = Vec::with_capacity(keep.len() * k);
        let mut transition = Vec::with_capacity(keep.len() * k);
        for &q in keep {
            for a in 0..k {
                let r = position[self.transition(a, q)];
                if r == usize::MAX {
                    return Err(Error::InvalidAutomaton(format!(
                        "state subset is not closed: {} leads to {}",
                        self.states[q],
                        self.states[self.transition(a, q)]
                    )));
                }
                output.push(self.output(a, q));
                transition.push(r);
            }
        }
        Self::from_parts(
            k,
            self.letter_names.clone(),
            keep.iter().map(|&q| self.states[q].clone()).collect(),
            self.identity.map(|e| position[e]).filter(|&e| e != usize::MAX),
            output,
            transition,
        )
    }

    /// One square per `(a, q)`, states outer and letters inner.
    pub fn square_tiles(&self) -> Vec<SquareTile> {
        let mut tiles = Vec::with_capacity(self.state_count() * self.alphabet_size);
        for q in 0..self.state_count() {
            for a in 0..self.alphabet_size {
                tiles.push(SquareTile {
                    bottom: self.letter_names[a].clone(),
                    left: self.states[q].clone(),
                    top: self.letter_names[self.output(a, q)].clone(),
                    right: self.states[self.transition(a, q)].clone(),
                });
            }
        }
        tiles
    }

    pub fn render_square_tiles(&self) -> String {
        render_squares(&self.square_tiles())
    }
}

fn renumber<K: Ord>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids = BTreeMap::new();
    keys.map(|key| {
        let next = ids.len();
        *ids.entry(key).or_insert(next)
    })
    .collect()
}

/// Renders squares as ASCII boxes, one row per run of squares sharing a left label:
///
/// ```text
/// +--1--+ +--0--+
/// τ     ε τ     τ
/// +--0--+ +--1--+
/// ```
pub fn render_squares(tiles: &[SquareTile]) -> String {
    let width = |s: &str| s.chars().count();
    let cell = tiles
        .iter()
        .map(|t| {
            (width(&t.left) + width(&t.right) + 5)
                .max(width(&t.top) + 6)
                .max(width(&t.bottom) + 6)
        })
        .max()
        .unwrap_or(0);
    let border = |label: &str| {
        let fill = cell - 2 - width(label);
        let before = fill / 2;
        let mut s = String::from("+");
        s.extend(core::iter::repeat_n('-', before));
        s.push_str(label);
        s.extend(core::iter::repeat_n('-', fill - before));
        s.push('+');
        s
    };
    let mut out = String::new();
    let mut start = 0;
    while start < tiles.len() {
        let mut end = start + 1;
        while end < tiles.len() && tiles[end].left == tiles[start].left {
            end += 1;
        }
        let row = &tiles[start..end];
        let top: Vec<String> = row.iter().map(|t| border(&t.top)).collect();
        let middle: Vec<String> = row
            .iter()
            .map(|t| {
                let gap = cell - width(&t.left) - width(&t.right);
                let mut s = t.left.clone();
                s.extend(core::iter::repeat_n(' ', gap));
                s.push_str(&t.right);
                s
            })
            .collect();
        let bottom: Vec<String> = row.iter().map(|t| border(&t.bottom)).collect();
        if start > 0 {
            out.push('\n');
        }
        for line in [top, middle, bottom] {
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        start = end;
    }
    out
}

/// Inverts a name written as a `·`-separated word of `name^k` factors:
/// `τ` ↦ `τ^-1`, `τ^2` ↦ `τ^-2`, `a^-1·b` ↦ `b^-1·a`.
pub fn invert_name(name: &str) -> String {
    let factors: Vec<String> = name
        .split('·')
        .rev()
        .map(|factor| match split_exponent(factor) {
            Some((base, -1)) => base.to_string(),
            Some((base, e)) => format!("{base}^{}", -e),
            None => format!("{factor}^-1"),
        })
        .collect();
    factors.join("·")
}

/// Splits `base^k` into `(base, k)` when `k` is an integer.
pub(crate) fn split_exponent(token: &str) -> Option<(&str, i64)> {
    let (base, exp) = token.rsplit_once('^')?;
    if base.is_empty() {
        return None;
    }
    exp.parse::<i64>().ok().map(|e| (base, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odometer() -> Automaton {
        // states ε, τ; ψ(τ) = (ε, τ)σ
        Automaton::new(
            2,
            vec!["ε".into(), "τ".into()],
            Some(0),
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap()
    }

    fn lamplighter() -> Automaton {
        Automaton::new(
            2,
            vec!["a".into(), "b".into()],
            None,
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap()
    }

    fn edges(g: &LabeledGraph) -> Vec<(String, String, String)> {
        let mut v: Vec<_> = g
            .keyed_edges()
            .map(|(s, t, l)| (s.to_string(), t.to_string(), l.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn graph_of_odometer() {
        let g = odometer().graph();
        assert_eq!(g.vertices(), &["ε".to_string(), "τ".to_string()]);
        let expected = vec![
            ("ε".into(), "ε".into(), "0/0".into()),
            ("ε".into(), "ε".into(), "1/1".into()),
            ("τ".into(), "ε".into(), "0/1".into()),
            ("τ".into(), "τ".into(), "1/0".into()),
        ];
        assert_eq!(edges(&g), expected);
    }

    #[test]
    fn graph_of_identity_has_two_loops() {
        let g = Automaton::identity_automaton(2).graph();
        let labels: Vec<_> = g.keyed_edges().map(|(s, t, l)| (s == t, l.to_string())).collect();
        assert_eq!(labels, vec![(true, "0/0".into()), (true, "1/1".into())]);
    }

    #[test]
    fn graph_of_lamplighter_matches_squares() {
        let g = lamplighter().graph();
        assert_eq!(g.edge_count(), 4);
        assert!(g.keyed_edges().any(|e| e == ("a", "b", "1/1")));
        assert!(g.keyed_edges().any(|e| e == ("b", "a", "1/0")));
    }

    #[test]
    fn dual_of_odometer_transposes_tables() {
        let d = odometer().dual();
        assert_eq!(d.alphabet_size(), 2);
        assert_eq!(d.letter_names(), &["ε".to_string(), "τ".to_string()]);
        assert_eq!(d.state_names(), &["0".to_string(), "1".to_string()]);
        let tau = 1;
        let zero = 0;
        assert_eq!(d.output(tau, zero), 0); // σ*(τ,0) = τ(0,τ) = ε
        assert_eq!(d.transition(tau, zero), 1); // τ*(τ,0) = σ(0,τ) = 1
        assert_eq!(d.identity(), None);
        assert!(!d.is_invertible());
    }

    #[test]
    fn dual_of_lamplighter() {
        let d = lamplighter().dual();
        let (a, b) = (0, 1);
        assert_eq!((d.output(a, 0), d.transition(a, 0)), (a, 0));
        assert_eq!((d.output(b, 0), d.transition(b, 0)), (b, 1));
    }

    #[test]
    fn dual_is_an_involution() {
        for aut in [odometer(), lamplighter(), Automaton::identity_automaton(3)] {
            assert_eq!(aut.dual().dual(), aut);
        }
    }

    #[test]
    fn product_rejects_mismatched_alphabets() {
        let err = odometer()
            .product(&Automaton::identity_automaton(3))
            .unwrap_err();
        assert_eq!(err, Error::IncompatibleAlphabets { left: 2, right: 3 });
        assert!(err.to_string().contains("incompatible alphabets"));
    }

    #[test]
    fn odometer_squared_adds_two() {
        let p = odometer().product(&odometer()).unwrap();
        let tt = p.state_index("(τ,τ)").unwrap();
        assert_eq!(p.act(&[tt], &[0, 0]).unwrap().output, vec![0, 1]);
        let q = odometer().power(2).unwrap();
        assert_eq!(q.state_count(), 4);
        assert_eq!(q.act(&[tt], &[0, 0]).unwrap().output, vec![0, 1]);
        assert_eq!(q.identity(), Some(0));
    }

    #[test]
    fn power_one_is_identity_operation() {
        assert_eq!(odometer().power(1).unwrap(), odometer());
        assert!(odometer().power(0).is_err());
    }

    #[test]
    fn power_names_flat_tuples() {
        let p = odometer().power(3).unwrap();
        assert_eq!(p.state_name(0b011), "(ε,τ,τ)");
    }

    #[test]
    fn product_with_identity_is_isomorphic() {
        let p = odometer()
            .product(&Automaton::identity_automaton(2))
            .unwrap();
        assert_eq!(p.state_names(), &["(ε,ε)".to_string(), "(τ,ε)".to_string()]);
        assert_eq!(p.output_rows(), odometer().output_rows());
        assert_eq!(p.transition_rows(), odometer().transition_rows());
    }

    #[test]
    fn odometer_act() {
        let o = odometer();
        assert_eq!(o.act(&[1], &[0, 0]).unwrap().output, vec![1, 0]);
        assert_eq!(o.act(&[1], &[1, 0]).unwrap().output, vec![0, 1]);
        assert_eq!(o.act(&[1], &[1, 1]).unwrap().output, vec![0, 0]);
        assert_eq!(o.act(&[0], &[1, 0, 1]).unwrap().output, vec![1, 0, 1]);
    }

    #[test]
    fn lamplighter_act() {
        assert_eq!(lamplighter().act(&[1], &[0, 0]).unwrap().output, vec![1, 1]);
    }

    #[test]
    fn act_rejects_bad_indices() {
        let o = odometer();
        assert!(matches!(
            o.act(&[1], &[2]),
            Err(Error::LetterOutOfRange { letter: 2, .. })
        ));
        assert!(matches!(
            o.act(&[5], &[0]),
            Err(Error::StateOutOfRange { state: 5, .. })
        ));
    }

    #[test]
    fn transition_word_follows_rectangle_recursion() {
        let o = odometer();
        let run = o.act(&[1, 1], &[1, 1, 0]).unwrap();
        // τ maps 110 to 001 ending in ε, then 001 to 101 ending in ε
        assert_eq!(run.output, vec![1, 0, 1]);
        assert_eq!(run.transition, vec![0, 0]);
    }

    #[test]
    fn invertibility() {
        assert!(odometer().is_invertible());
        let collapsing = Automaton::new(
            2,
            vec!["q".into()],
            None,
            vec![vec![0], vec![0]],
            vec![vec![0], vec![0]],
        )
        .unwrap();
        assert!(!collapsing.is_invertible());
        assert!(matches!(
            collapsing.inverse(),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn inverse_of_odometer() {
        let inv = odometer().inverse().unwrap();
        assert_eq!(inv.state_names(), &["ε".to_string(), "τ^-1".to_string()]);
        // ψ(τ⁻¹) = (τ⁻¹, ε)σ
        assert_eq!((inv.output(0, 1), inv.transition(0, 1)), (1, 1));
        assert_eq!((inv.output(1, 1), inv.transition(1, 1)), (0, 0));
        let id = Automaton::identity_automaton(2);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn minimize_merges_equal_actions() {
        let p = odometer().power(2).unwrap();
        let (m, map) = p.minimize();
        assert_eq!(map[p.state_index("(τ,ε)").unwrap()], map[p.state_index("(ε,τ)").unwrap()]);
        assert_eq!(m.state_count(), 3);
        let (again, map2) = m.minimize();
        assert_eq!(again, m);
        assert_eq!(map2, vec![0, 1, 2]);
    }

    #[test]
    fn minimize_collapses_inverse_pair() {
        let inv = odometer().inverse().unwrap();
        let p = odometer().product(&inv).unwrap();
        let (m, map) = p.minimize();
        let e = m.identity().unwrap();
        assert_eq!(map[p.state_index("(τ,τ^-1)").unwrap()], e);
    }

    #[test]
    fn trivial_states_and_identity_adjoining() {
        let l = lamplighter();
        assert_eq!(l.trivial_states(), vec![false, false]);
        let (with_e, adjoined) = l.ensure_identity();
        assert!(adjoined);
        assert_eq!(with_e.state_name(2), "ε");
        assert_eq!(with_e.identity(), Some(2));
        let (same, adjoined) = odometer().ensure_identity();
        assert!(!adjoined);
        assert_eq!(same, odometer());
    }

    #[test]
    fn squares_of_lamplighter() {
        let got: Vec<(String, String, String, String)> = lamplighter()
            .square_tiles()
            .into_iter()
            .map(|t| (t.bottom, t.left, t.top, t.right))
            .collect();
        let s = |x: &str| x.to_string();
        assert_eq!(
            got,
            vec![
                (s("0"), s("a"), s("0"), s("a")),
                (s("1"), s("a"), s("1"), s("b")),
                (s("0"), s("b"), s("1"), s("b")),
                (s("1"), s("b"), s("0"), s("a")),
            ]
        );
    }

    #[test]
    fn render_odometer_squares() {
        let text = odometer().render_square_tiles();
        let expected = "\
+--0--+ +--1--+
ε     ε ε     ε
+--0--+ +--1--+

+--1--+ +--0--+
τ     ε τ     τ
+--0--+ +--1--+
";
        assert_eq!(text, expected);
    }

    #[test]
    fn name_inversion() {
        assert_eq!(invert_name("τ"), "τ^-1");
        assert_eq!(invert_name("τ^-1"), "τ");
        assert_eq!(invert_name("τ^2"), "τ^-2");
        assert_eq!(invert_name("a^-1·b"), "b^-1·a");
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(Automaton::new(2, vec!["q".into()], None, vec![vec![0]], vec![vec![0]]).is_err());
        assert!(Automaton::new(
            1,
            vec!["q".into(), "q".into()],
            None,
            vec![vec![0, 0]],
            vec![vec![0, 0]]
        )
        .is_err());
        assert!(Automaton::new(1, vec!["q".into()], None, vec![vec![3]], vec![vec![0]]).is_err());
        // designated identity must act trivially
        assert!(Automaton::new(
            2,
            vec!["q".into()],
            Some(0),
            vec![vec![1], vec![0]],
            vec![vec![0], vec![0]]
        )
        .is_err());
    }
}
