//! Contraction: nucleus closure, the nuclear automaton, and restriction depth.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::elements::{ElementTable, Overflow};
use super::Limits;
use crate::automaton::{Automaton, Letter};
use crate::error::Result;
use crate::group::{Group, GroupWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NucleusStatus {
    Contracting,
    ExceededBound,
}

/// Order in which the closure visits limit sets and pair products. Both reach the
/// same fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    /// Limit sets of all generators first, then rounds over all pairs.
    #[default]
    LimitsFirst,
    /// A single worklist: each new member is paired with the current members as
    /// soon as it is added.
    Interleaved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusElement {
    pub word: GroupWord,
    /// Text form, e.g. `a^-1·b`.
    pub text: String,
    /// Power notation, e.g. `τ^-2`.
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    MaxElements,
    MaxLength,
    EqualityPairs,
}

/// Best-effort evidence collected when the closure gives up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub bound: BoundKind,
    /// The word that tripped the bound.
    pub candidate: GroupWord,
    pub candidate_text: String,
    /// Members `g` with a letter `a` such that `g|_a = g`, the seeds of unbounded
    /// families like `a^k` with `(a^k)|₀ = a^k`.
    pub self_restricting: Vec<(String, Letter)>,
    pub members_seen: usize,
}

impl Witness {
    pub fn description(&self) -> String {
        let bound = match self.bound {
            BoundKind::MaxElements => "the element cap",
            BoundKind::MaxLength => "the word-length cap",
            BoundKind::EqualityPairs => "the equality pair cap",
        };
        let mut s = format!(
            "candidate {} (length {}) exceeded {} after {} candidate elements",
            self.candidate_text,
            self.candidate.len(),
            bound,
            self.members_seen
        );
        if !self.self_restricting.is_empty() {
            let items: Vec<String> = self
                .self_restricting
                .iter()
                .map(|(g, a)| format!("{g}|{a}={g}"))
                .collect();
            s.push_str("; self-restricting members: ");
            s.push_str(&items.join(", "));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusReport {
    pub status: NucleusStatus,
    /// Sorted with the identity first, then by word length.
    pub nucleus: Vec<NucleusElement>,
    pub nuclear_automaton: Option<Automaton>,
    pub witness: Option<Witness>,
    pub max_elements: usize,
    pub max_len: usize,
}

impl NucleusReport {
    pub fn is_contracting(&self) -> bool {
        self.status == NucleusStatus::Contracting
    }

    pub fn words(&self) -> Vec<GroupWord> {
        self.nucleus.iter().map(|e| e.word.clone()).collect()
    }
}

/// Answer of [`is_contracting`]. A definitive "no" is never produced: running out
/// of budget only means the question is open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contraction {
    Yes(NucleusReport),
    Unknown(NucleusReport),
}

impl Contraction {
    pub fn is_yes(&self) -> bool {
        matches!(self, Contraction::Yes(_))
    }

    pub fn report(&self) -> &NucleusReport {
        match self {
            Contraction::Yes(r) | Contraction::Unknown(r) => r,
        }
    }
}

pub fn nucleus(automaton: &Automaton, limits: &Limits) -> Result<NucleusReport> {
    nucleus_with_schedule(automaton, limits, Schedule::default())
}

pub fn is_contracting(automaton: &Automaton, limits: &Limits) -> Result<Contraction> {
    let report = nucleus(automaton, limits)?;
    Ok(if report.is_contracting() {
        Contraction::Yes(report)
    } else {
        Contraction::Unknown(report)
    })
}

pub fn nucleus_with_schedule(
    automaton: &Automaton,
    limits: &Limits,
    schedule: Schedule,
) -> Result<NucleusReport> {
    let group = Group::new(automaton.clone())?;
    let mut table = ElementTable::new(&group, limits.max_elements, limits.max_len);
    let outcome = match schedule {
        Schedule::LimitsFirst => close_limits_first(&mut table),
        Schedule::Interleaved => close_interleaved(&mut table),
    };
    Ok(match outcome {
        Ok(members) => contracting_report(&mut table, members, limits),
        Err(overflow) => exceeded_report(&mut table, overflow, limits),
    })
}

fn seeds(table: &mut ElementTable<'_>) -> core::result::Result<Vec<usize>, Overflow> {
    let group = table.group();
    let mut seeds = Vec::new();
    seeds.push(table.intern(&GroupWord::identity())?);
    for q in group.generators() {
        let g = GroupWord::from_states(&[q]);
        seeds.push(table.intern(&g)?);
        seeds.push(table.intern(&g.inverse())?);
    }
    Ok(seeds)
}

pub(crate) fn close_limits_first(
    table: &mut ElementTable<'_>,
) -> core::result::Result<BTreeSet<usize>, Overflow> {
    let seeds = seeds(table)?;
    let mut members = BTreeSet::from([seeds[0]]);
    for &s in &seeds {
        members.extend(table.limit_set(s)?);
    }
    close_pairs(table, members)
}

/// Adds limit sets of pair products until nothing changes.
pub(crate) fn close_pairs(
    table: &mut ElementTable<'_>,
    mut members: BTreeSet<usize>,
) -> core::result::Result<BTreeSet<usize>, Overflow> {
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    loop {
        let snapshot: Vec<usize> = members.iter().copied().collect();
        let mut grew = false;
        for &g in &snapshot {
            for &h in &snapshot {
                if !done.insert((g, h)) {
                    continue;
                }
                let product = table.rep(g).then(table.rep(h));
                let p = table.intern(&product)?;
                for x in table.limit_set(p)? {
                    grew |= members.insert(x);
                }
            }
        }
        if !grew {
            return Ok(members);
        }
    }
}

fn close_interleaved(
    table: &mut ElementTable<'_>,
) -> core::result::Result<BTreeSet<usize>, Overflow> {
    let seeds = seeds(table)?;
    let mut members: BTreeSet<usize> = BTreeSet::new();
    let mut order: Vec<usize> = Vec::new();
    let mut pending: VecDeque<(usize, usize)> = VecDeque::new();
    let mut fresh: VecDeque<usize> = VecDeque::from([seeds[0]]);
    for &s in &seeds {
        fresh.extend(table.limit_set(s)?);
    }
    loop {
        while let Some(x) = fresh.pop_front() {
            if members.insert(x) {
                order.push(x);
                for &y in &order {
                    pending.push_back((x, y));
                    if y != x {
                        pending.push_back((y, x));
                    }
                }
            }
        }
        let Some((g, h)) = pending.pop_front() else {
            return Ok(members);
        };
        let product = table.rep(g).then(table.rep(h));
        let p = table.intern(&product)?;
        fresh.extend(table.limit_set(p)?);
    }
}

fn contracting_report(
    table: &mut ElementTable<'_>,
    members: BTreeSet<usize>,
    limits: &Limits,
) -> NucleusReport {
    let group = table.group();
    let mut ids: Vec<usize> = members.into_iter().collect();
    ids.sort_by(|&x, &y| table.rep(x).canonical_cmp(table.rep(y)));
    let nucleus: Vec<NucleusElement> = ids
        .iter()
        .map(|&id| {
            let word = table.rep(id).clone();
            NucleusElement {
                text: group.format(&word),
                name: group.name(&word),
                word,
            }
        })
        .collect();
    let automaton = nuclear_automaton_from(table, &ids, &nucleus);
    NucleusReport {
        status: NucleusStatus::Contracting,
        nucleus,
        nuclear_automaton: Some(automaton),
        witness: None,
        max_elements: limits.max_elements,
        max_len: limits.max_len,
    }
}

fn nuclear_automaton_from(
    table: &mut ElementTable<'_>,
    ids: &[usize],
    elements: &[NucleusElement],
) -> Automaton {
    let group = table.group();
    let k = group.alphabet_size();
    let position = |id: usize| ids.iter().position(|&x| x == id);
    let mut names: Vec<String> = Vec::with_capacity(ids.len());
    for e in elements {
        let mut name = e.name.clone();
        if names.contains(&name) {
            name = e.text.clone();
        }
        names.push(name);
    }
    let mut output = Vec::with_capacity(ids.len() * k);
    let mut transition = Vec::with_capacity(ids.len() * k);
    for &id in ids {
        let children = table
            .children(id)
            .expect("children of nucleus members are already interned");
        let root = group.root_permutation(table.rep(id));
        for a in 0..k {
            output.push(root[a]);
            transition.push(position(children[a]).expect("nucleus is restriction-closed"));
        }
    }
    let identity = elements.iter().position(|e| e.word.is_empty());
    Automaton::from_parts(
        k,
        group.automaton().letter_names().to_vec(),
        names,
        identity,
        output,
        transition,
    )
    .expect("nuclear automaton tables are total")
}

fn exceeded_report(
    table: &mut ElementTable<'_>,
    overflow: Overflow,
    limits: &Limits,
) -> NucleusReport {
    let group = table.group();
    let bound = match overflow {
        Overflow::Elements(_) => BoundKind::MaxElements,
        Overflow::Length(_) => BoundKind::MaxLength,
        Overflow::Equality(_) => BoundKind::EqualityPairs,
    };
    let mut self_restricting = Vec::new();
    for id in 0..table.len() {
        let rep = table.rep(id).clone();
        if rep.is_empty() {
            continue;
        }
        for a in 0..group.alphabet_size() {
            let (_, r) = group.apply_letter(&rep, a);
            let r = group.reduce(&r);
            if r == rep {
                self_restricting.push((group.name(&rep), a));
                break;
            }
        }
    }
    let candidate = overflow.candidate().clone();
    NucleusReport {
        status: NucleusStatus::ExceededBound,
        nucleus: Vec::new(),
        nuclear_automaton: None,
        witness: Some(Witness {
            bound,
            candidate_text: group.format(&candidate),
            candidate,
            self_restricting,
            members_seen: table.len(),
        }),
        max_elements: limits.max_elements,
        max_len: limits.max_len,
    }
}

/// Outcome of [`restriction_depth`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Finite(usize),
    /// No depth up to the cap works.
    Unbounded(usize),
}

/// Smallest `n` such that every restriction `g|_w` with `|w| = n` equals a member
/// of `nucleus`. Gives up after `max_depth` levels.
pub fn restriction_depth(
    group: &Group,
    g: &GroupWord,
    nucleus: &[GroupWord],
    max_depth: usize,
) -> Result<Depth> {
    let mut members = ElementTable::new(group, usize::MAX, usize::MAX);
    for w in nucleus {
        members.intern(w).map_err(overflow_error)?;
    }
    let nucleus_count = members.len();
    let mut frontier: Vec<GroupWord> = alloc::vec![group.reduce(g)];
    for depth in 0..=max_depth {
        let mut all_inside = true;
        for w in &frontier {
            match members.find(w).map_err(overflow_error)? {
                Some(id) if id < nucleus_count => {}
                _ => {
                    all_inside = false;
                    break;
                }
            }
        }
        if all_inside {
            return Ok(Depth::Finite(depth));
        }
        let mut next: Vec<GroupWord> = Vec::new();
        let mut seen: BTreeSet<GroupWord> = BTreeSet::new();
        for w in &frontier {
            for a in 0..group.alphabet_size() {
                let r = group.reduce(&group.apply_letter(w, a).1);
                if seen.insert(r.clone()) {
                    next.push(r);
                }
            }
        }
        frontier = next;
    }
    Ok(Depth::Unbounded(max_depth))
}

fn overflow_error(_: Overflow) -> crate::error::Error {
    crate::error::Error::ClosureLimit {
        limit: crate::group::DEFAULT_PAIR_CAP,
    }
}
