//! Wreath-recursion input: `ψ(q) = (q|₀, …, q|_{k−1}) π` with restrictions written
//! as words over the generators, translated into an automaton whose states are the
//! words reachable by restriction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{split_exponent, Automaton, Letter};
use crate::error::{Error, Result};
use crate::group::Gen;

#[derive(Debug, Clone)]
struct Entry {
    name: String,
    restrictions: Vec<String>,
    permutation: Vec<Letter>,
}

/// A self-similar presentation given generator by generator.
///
/// ```
/// use ssa_core::recursion::WreathRecursion;
/// // the binary odometer, ψ(τ) = (ε, τ)σ
/// let odometer = WreathRecursion::new(2)
///     .generator("τ", &["ε", "τ"], &[1, 0])
///     .build(true, 64)
///     .unwrap();
/// assert_eq!(odometer.state_names(), &["ε", "τ"]);
/// ```
#[derive(Debug, Clone)]
pub struct WreathRecursion {
    alphabet_size: usize,
    entries: Vec<Entry>,
}

impl WreathRecursion {
    pub fn new(alphabet_size: usize) -> Self {
        WreathRecursion {
            alphabet_size,
            entries: Vec::new(),
        }
    }

    /// Adds `ψ(name) = (restrictions[0], …) permutation`, where `permutation[a]`
    /// is the image of letter `a`. Restrictions may mention generators declared later.
    pub fn generator(mut self, name: &str, restrictions: &[&str], permutation: &[Letter]) -> Self {
        self.entries.push(Entry {
            name: name.to_string(),
            restrictions: restrictions.iter().map(|s| s.to_string()).collect(),
            permutation: permutation.to_vec(),
        });
        self
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    fn parse_word(&self, text: &str) -> Result<Vec<Gen>> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        let index = |name: &str| self.entries.iter().position(|e| e.name == name);
        let mut gens = Vec::new();
        for token in text.split(['·', '*']) {
            let token = token.trim();
            if let Some(q) = index(token) {
                gens.push(Gen::new(q));
                continue;
            }
            let (base, exp) =
                split_exponent(token).ok_or_else(|| Error::UnknownState(token.into()))?;
            let q = index(base).ok_or_else(|| Error::UnknownState(base.into()))?;
            let g = Gen {
                state: q,
                inverse: exp < 0,
            };
            gens.extend(core::iter::repeat_n(g, exp.unsigned_abs() as usize));
        }
        Ok(free_reduce(gens))
    }

    /// Builds the automaton whose states are the generator words reachable by
    /// restriction (free-reduced), then merges states that act identically.
    ///
    /// With `with_identity`, the empty word is the first state even when it is not
    /// reached. Fails with [`Error::ClosureLimit`] past `max_states` words.
    pub fn build(&self, with_identity: bool, max_states: usize) -> Result<Automaton> {
        let k = self.alphabet_size;
        if self.entries.is_empty() {
            return Err(Error::InvalidAutomaton("recursion has no generators".into()));
        }
        let mut tables = Vec::with_capacity(self.entries.len());
        let mut inverse_perms = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            if e.restrictions.len() != k || e.permutation.len() != k {
                return Err(Error::InvalidAutomaton(format!(
                    "ψ({}) needs {k} restrictions and a permutation of {k} letters",
                    e.name
                )));
            }
            let mut inv = vec![usize::MAX; k];
            for (a, &b) in e.permutation.iter().enumerate() {
                if b >= k || inv[b] != usize::MAX {
                    return Err(Error::NotInvertible {
                        state: e.name.clone(),
                    });
                }
                inv[b] = a;
            }
            let words = e
                .restrictions
                .iter()
                .map(|r| self.parse_word(r))
                .collect::<Result<Vec<_>>>()?;
            tables.push(words);
            inverse_perms.push(inv);
        }

        let step = |g: Gen, a: Letter| -> (Letter, Vec<Gen>) {
            let e = &self.entries[g.state];
            if g.inverse {
                let b = inverse_perms[g.state][a];
                let r = tables[g.state][b].iter().rev().map(|x| x.inv()).collect();
                (b, r)
            } else {
                (e.permutation[a], tables[g.state][a].clone())
            }
        };

        let mut words: Vec<Vec<Gen>> = Vec::new();
        let mut index: BTreeMap<Vec<Gen>, usize> = BTreeMap::new();
        let mut intern = |w: Vec<Gen>, words: &mut Vec<Vec<Gen>>| -> Result<usize> {
            if let Some(&i) = index.get(&w) {
                return Ok(i);
            }
            if words.len() >= max_states {
                return Err(Error::ClosureLimit { limit: max_states });
            }
            index.insert(w.clone(), words.len());
            words.push(w);
            Ok(words.len() - 1)
        };
        if with_identity {
            intern(Vec::new(), &mut words)?;
        }
        for q in 0..self.entries.len() {
            intern(vec![Gen::new(q)], &mut words)?;
        }

        let mut output = Vec::new();
        let mut transition = Vec::new();
        let mut i = 0;
        while i < words.len() {
            let word = words[i].clone();
            for a in 0..k {
                let mut letter = a;
                let mut restriction = Vec::new();
                for &g in &word {
                    let (b, r) = step(g, letter);
                    restriction.extend(r);
                    letter = b;
                }
                output.push(letter);
                transition.push(intern(free_reduce(restriction), &mut words)?);
            }
            i += 1;
        }

        let names: Vec<String> = words
            .iter()
            .map(|w| word_name(w, |q| self.entries[q].name.as_str()))
            .collect();
        let identity = words.iter().position(|w| w.is_empty());
        let automaton = Automaton::from_parts(
            k,
            crate::automaton::default_letter_names(k),
            names,
            identity,
            output,
            transition,
        )?;
        Ok(automaton.minimize().0)
    }
}

fn free_reduce(gens: Vec<Gen>) -> Vec<Gen> {
    let mut out: Vec<Gen> = Vec::with_capacity(gens.len());
    for g in gens {
        if out.last() == Some(&g.inv()) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// Power-notation name of a word, e.g. `τ^2`, `τ^-1`, `a^-1·b`; `ε` when empty.
/// States already named as powers (`τ^-1`) merge with their neighbours.
pub(crate) fn word_name<'a>(word: &[Gen], name: impl Fn(usize) -> &'a str) -> String {
    let mut runs: Vec<(&str, i64)> = Vec::new();
    for g in word {
        let full = name(g.state);
        let (base, exp) = match split_exponent(full) {
            Some((base, exp)) if !base.contains('·') => (base, exp),
            _ => (full, 1),
        };
        let exp = if g.inverse { -exp } else { exp };
        match runs.last_mut() {
            Some((b, e)) if *b == base => *e += exp,
            _ => runs.push((base, exp)),
        }
        if runs.last().is_some_and(|r| r.1 == 0) {
            runs.pop();
        }
    }
    if runs.is_empty() {
        return String::from("ε");
    }
    let parts: Vec<String> = runs
        .iter()
        .map(|&(base, exp)| {
            if exp == 1 {
                String::from(base)
            } else if base.contains('·') {
                format!("({base})^{exp}")
            } else {
                format!("{base}^{exp}")
            }
        })
        .collect();
    parts.join("·")
}
