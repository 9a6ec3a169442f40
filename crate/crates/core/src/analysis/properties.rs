use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::elements::ElementTable;
use super::nucleus::close_limits_first;
use super::Limits;
use crate::automaton::{Automaton, Letter, StateId};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::group::{Group, GroupWord};

/// Nuclearity: after merging states with equal action, the state set must be
/// inverse-closed, the limit sets of all pairwise products must stay inside it,
/// and the nucleus closure started from it must use every state.
pub fn is_nuclear(automaton: &Automaton, limits: &Limits) -> Result<bool> {
    automaton.require_invertible()?;
    let (minimal, _) = automaton.minimize();
    let n = minimal.state_count();
    let group = Group::new(minimal)?;
    let mut table = ElementTable::new(&group, limits.max_elements, limits.max_len);
    let verdict = (|| -> core::result::Result<bool, super::Overflow> {
        let mut states = BTreeSet::new();
        for q in 0..n {
            states.insert(table.intern(&GroupWord::from_states(&[q]))?);
        }
        if states.len() != n {
            return Ok(false);
        }
        for q in 0..n {
            let inverse = GroupWord::from_states(&[q]).inverse();
            match table.find(&inverse)? {
                Some(id) if states.contains(&id) => {}
                _ => return Ok(false),
            }
        }
        let members: Vec<usize> = states.iter().copied().collect();
        for &g in &members {
            for &h in &members {
                let p = table.intern(&table.rep(g).then(table.rep(h)))?;
                if !table.limit_set(p)?.is_subset(&states) {
                    return Ok(false);
                }
            }
        }
        Ok(close_limits_first(&mut table)? == states)
    })();
    Ok(verdict.unwrap_or(false))
}

/// Every state occurs as some `τ(a, q)`.
pub fn check_tau_onto(automaton: &Automaton) -> bool {
    let mut hit = vec![false; automaton.state_count()];
    for q in 0..automaton.state_count() {
        for a in 0..automaton.alphabet_size() {
            hit[automaton.transition(a, q)] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

/// Letters, with an edge `a → σ(a,q)` labelled `q` whenever `τ(a,q)` acts trivially.
pub fn epsilon_letter_graph(automaton: &Automaton) -> LabeledGraph {
    let trivial = automaton.trivial_states();
    let mut g = LabeledGraph::new(automaton.letter_names().to_vec());
    for q in 0..automaton.state_count() {
        for a in 0..automaton.alphabet_size() {
            if trivial[automaton.transition(a, q)] {
                g.add_edge(a, automaton.output(a, q), automaton.state_name(q));
            }
        }
    }
    g
}

fn strongly_connected(g: &LabeledGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for e in g.edges() {
                let (from, to) = if forward {
                    (e.source, e.target)
                } else {
                    (e.target, e.source)
                };
                if from == x && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Smoothness: `τ` is onto and the trivial-restriction letter graph is strongly
/// connected. An identity state is adjoined first if missing.
pub fn is_smooth(automaton: &Automaton) -> bool {
    let (automaton, _) = automaton.ensure_identity();
    check_tau_onto(&automaton) && strongly_connected(&epsilon_letter_graph(&automaton))
}

/// Data `(e_q, v_q, w_{a,a'})` for refining paths level by level.
///
/// State indices refer to `automaton`, which is the input with an identity state
/// appended when it had none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionRule {
    pub automaton: Automaton,
    pub identity_adjoined: bool,
    /// `e[q]` and `v[q]` satisfy `τ(e[q], v[q]) = q`.
    pub e: Vec<Letter>,
    pub v: Vec<StateId>,
    /// `words[a][b]` maps `a` to `b` with all restrictions along `a` trivial.
    pub words: Vec<Vec<Vec<StateId>>>,
}

impl ExpansionRule {
    pub fn word(&self, from: Letter, to: Letter) -> &[StateId] {
        &self.words[from][to]
    }
}

/// Expansion rule found by table scan (for `e_q`, `v_q`) and breadth-first search
/// in the trivial-restriction letter graph (for `w_{a,a'}`). `None` exactly when
/// the automaton is not smooth.
pub fn expansion_rule(automaton: &Automaton) -> Option<ExpansionRule> {
    if !is_smooth(automaton) {
        return None;
    }
    let (aut, identity_adjoined) = automaton.ensure_identity();
    let k = aut.alphabet_size();
    let n = aut.state_count();
    let mut e = vec![usize::MAX; n];
    let mut v = vec![usize::MAX; n];
    for r in 0..n {
        for a in 0..k {
            let q = aut.transition(a, r);
            if e[q] == usize::MAX {
                e[q] = a;
                v[q] = r;
            }
        }
    }
    let trivial = aut.trivial_states();
    let mut words = Vec::with_capacity(k);
    for start in 0..k {
        let mut parent: Vec<Option<(Letter, StateId)>> = vec![None; k];
        let mut seen = vec![false; k];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for q in 0..n {
                if trivial[aut.transition(x, q)] {
                    let y = aut.output(x, q);
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some((x, q));
                        queue.push_back(y);
                    }
                }
            }
        }
        let row = (0..k)
            .map(|target| {
                let mut path = Vec::new();
                let mut at = target;
                while let Some((prev, q)) = parent[at] {
                    path.push(q);
                    at = prev;
                }
                path.reverse();
                path
            })
            .collect();
        words.push(row);
    }
    Some(ExpansionRule {
        automaton: aut,
        identity_adjoined,
        e,
        v,
        words,
    })
}

/// A state word `w` with `σ(a, w) = b` whose restriction `τ(a, w)` is `v` with
/// trivial states interleaved, built by concatenating expansion-rule pieces.
pub fn connecting_word(
    rule: &ExpansionRule,
    a: &[Letter],
    b: &[Letter],
    v: &[StateId],
) -> Result<Vec<StateId>> {
    let aut = &rule.automaton;
    if a.len() != b.len() {
        return Err(Error::InvalidAutomaton(
            "connected words must have equal length".into(),
        ));
    }
    aut.check_letters(a)?;
    aut.check_letters(b)?;
    aut.check_states(v)?;
    if a.is_empty() {
        return Ok(v.to_vec());
    }
    let inner = connecting_word(rule, &a[1..], &b[1..], v)?;
    let mut word = Vec::new();
    let mut letter = a[0];
    for &q in &inner {
        let entry = rule.e[q];
        word.extend_from_slice(rule.word(letter, entry));
        word.push(rule.v[q]);
        letter = aut.output(entry, rule.v[q]);
    }
    word.extend_from_slice(rule.word(letter, b[0]));
    Ok(word)
}

/// Every state has some restriction that acts trivially (breadth-first search in
/// `Γ(Π)` towards the trivial states).
pub fn open_set_condition(automaton: &Automaton) -> bool {
    let (aut, _) = automaton.ensure_identity();
    let n = aut.state_count();
    let mut good = aut.trivial_states();
    let mut predecessors: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for q in 0..n {
        for a in 0..aut.alphabet_size() {
            predecessors[aut.transition(a, q)].push(q);
        }
    }
    let mut queue: VecDeque<StateId> = (0..n).filter(|&q| good[q]).collect();
    while let Some(x) = queue.pop_front() {
        for &p in &predecessors[x] {
            if !good[p] {
                good[p] = true;
                queue.push_back(p);
            }
        }
    }
    good.into_iter().all(|g| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::build;
    use crate::recursion::WreathRecursion;

    fn nuclear(name: &str) -> Automaton {
        build(name).unwrap().nucleus_automaton.unwrap()
    }

    #[test]
    fn nuclearity() {
        let limits = Limits::default();
        assert!(is_nuclear(&nuclear("odometer"), &limits).unwrap());
        assert!(!is_nuclear(&build("odometer").unwrap().automaton, &limits).unwrap());
        assert!(!is_nuclear(&build("lamplighter").unwrap().automaton, &limits).unwrap());
        assert!(is_nuclear(&Automaton::identity_automaton(3), &limits).unwrap());
    }

    #[test]
    fn tau_onto() {
        assert!(check_tau_onto(&nuclear("basilica")));
        // a state nobody transitions into
        let a = WreathRecursion::new(2)
            .generator("x", &["ε", "ε"], &[1, 0])
            .build(true, 4)
            .unwrap();
        assert!(!check_tau_onto(&a));
    }

    #[test]
    fn odometer_expansion_rule() {
        let a = nuclear("odometer");
        assert!(is_smooth(&a));
        let rule = expansion_rule(&a).unwrap();
        assert!(!rule.identity_adjoined);
        let tau = a.state_index("τ").unwrap();
        assert_eq!(rule.word(0, 1), &[tau]);
        assert_eq!((rule.e[tau], rule.v[tau]), (1, tau));
        for x in 0..2 {
            assert!(rule.word(x, x).is_empty());
        }
    }

    #[test]
    fn non_smooth_examples() {
        let a = build("nonsmooth3").unwrap().automaton;
        assert!(!is_smooth(&a));
        assert!(expansion_rule(&a).is_none());
        let b = nuclear("nonsmooth3b");
        assert!(!is_smooth(&b));
        assert!(expansion_rule(&b).is_none());
    }

    #[test]
    fn connecting_words_do_connect() {
        let rule = expansion_rule(&nuclear("basilica")).unwrap();
        let aut = &rule.automaton;
        let trivial = aut.trivial_states();
        let b = aut.state_index("b").unwrap();
        let words: [&[Letter]; 4] = [&[0, 0], &[0, 1], &[1, 0], &[1, 1]];
        for x in words {
            for y in words {
                let w = connecting_word(&rule, x, y, &[b]).unwrap();
                let run = aut.act(&w, x).unwrap();
                assert_eq!(run.output, y);
                let kept: Vec<StateId> =
                    run.transition.into_iter().filter(|&q| !trivial[q]).collect();
                assert_eq!(kept, [b]);
            }
        }
        assert!(connecting_word(&rule, &[0], &[0, 1], &[]).is_err());
    }

    #[test]
    fn open_set() {
        assert!(open_set_condition(&nuclear("basilica")));
        // τ and τ⁻¹ only ever restrict to each other
        assert!(!open_set_condition(&nuclear("nonsmooth3")));
        let lamplighter = build("lamplighter").unwrap().automaton;
        assert!(!open_set_condition(&lamplighter));
    }
}
