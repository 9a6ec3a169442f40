//! Interning of group elements up to equality of tree automorphisms.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::{Group, GroupWord};

/// Why an element table refused a new element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overflow {
    /// More than `max_elements` distinct elements.
    Elements(GroupWord),
    /// A candidate's reduced word is longer than `max_len`.
    Length(GroupWord),
    /// An equality test hit its pair cap.
    Equality(GroupWord),
}

impl Overflow {
    pub fn candidate(&self) -> &GroupWord {
        match self {
            Overflow::Elements(w) | Overflow::Length(w) | Overflow::Equality(w) => w,
        }
    }
}

/// Distinct elements met so far, each with its shortest known word.
///
/// Candidates are bucketed by their action on `A^d` (for the largest `d` with
/// `|A|^d ≤ 64`) and compared by [`Group::equals`] only within a bucket.
pub(crate) struct ElementTable<'g> {
    group: &'g Group,
    depth: usize,
    reps: Vec<GroupWord>,
    buckets: BTreeMap<Vec<usize>, Vec<usize>>,
    children: Vec<Option<Vec<usize>>>,
    max_elements: usize,
    max_len: usize,
}

impl<'g> ElementTable<'g> {
    pub fn new(group: &'g Group, max_elements: usize, max_len: usize) -> Self {
        let k = group.alphabet_size();
        let mut depth = 1;
        while k.pow(depth as u32 + 1) <= 64 {
            depth += 1;
        }
        ElementTable {
            group,
            depth,
            reps: Vec::new(),
            buckets: BTreeMap::new(),
            children: Vec::new(),
            max_elements,
            max_len,
        }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, id: usize) -> &GroupWord {
        &self.reps[id]
    }

    fn fingerprint(&self, w: &GroupWord) -> Vec<usize> {
        self.group.level_permutation(w, self.depth)
    }

    /// Finds an existing element equal to `w`, without inserting.
    pub fn find(&mut self, w: &GroupWord) -> Result<Option<usize>, Overflow> {
        let w = self.group.reduce(w);
        let key = self.fingerprint(&w);
        self.lookup(&w, &key)
    }

    fn lookup(&mut self, w: &GroupWord, key: &Vec<usize>) -> Result<Option<usize>, Overflow> {
        let Some(bucket) = self.buckets.get(key) else {
            return Ok(None);
        };
        for &id in bucket {
            let equal = self.reps[id] == *w
                || match self.group.equals(&self.reps[id], w) {
                    Ok(eq) => eq,
                    Err(Error::ClosureLimit { .. }) => return Err(Overflow::Equality(w.clone())),
                    Err(_) => unreachable!("equals only fails on its pair cap"),
                };
            if equal {
                if w.canonical_cmp(&self.reps[id]).is_lt() {
                    self.reps[id] = w.clone();
                }
                return Ok(Some(id));
            }
        }
        Ok(None)
    }

    /// Returns the id of the element equal to `w`, inserting it if new.
    pub fn intern(&mut self, w: &GroupWord) -> Result<usize, Overflow> {
        let w = self.group.reduce(w);
        let key = self.fingerprint(&w);
        if let Some(id) = self.lookup(&w, &key)? {
            return Ok(id);
        }
        if w.len() > self.max_len {
            return Err(Overflow::Length(w));
        }
        if self.reps.len() >= self.max_elements {
            return Err(Overflow::Elements(w));
        }
        let id = self.reps.len();
        self.reps.push(w);
        self.children.push(None);
        self.buckets.entry(key).or_default().push(id);
        Ok(id)
    }

    /// Ids of `g|_a` for every letter `a`.
    pub fn children(&mut self, id: usize) -> Result<Vec<usize>, Overflow> {
        if let Some(c) = &self.children[id] {
            return Ok(c.clone());
        }
        let rep = self.reps[id].clone();
        let mut out = Vec::with_capacity(self.group.alphabet_size());
        for a in 0..self.group.alphabet_size() {
            let (_, r) = self.group.apply_letter(&rep, a);
            out.push(self.intern(&r)?);
        }
        self.children[id] = Some(out.clone());
        Ok(out)
    }

    /// Elements reachable from `id` by restriction (including `id`), in BFS order.
    pub fn reachable(&mut self, id: usize) -> Result<Vec<usize>, Overflow> {
        let mut seen = BTreeSet::from([id]);
        let mut order = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for c in self.children(x)? {
                if seen.insert(c) {
                    order.push(c);
                    queue.push_back(c);
                }
            }
        }
        Ok(order)
    }

    /// The limit set of `id`: elements lying on a restriction cycle reachable from
    /// `id`, together with everything reachable from such cycles.
    pub fn limit_set(&mut self, id: usize) -> Result<BTreeSet<usize>, Overflow> {
        let nodes = self.reachable(id)?;
        let mut edges: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &x in &nodes {
            edges.insert(x, self.children(x)?);
        }
        let on_cycle = |x: usize| {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<usize> = edges[&x].clone();
            while let Some(y) = stack.pop() {
                if y == x {
                    return true;
                }
                if seen.insert(y) {
                    stack.extend(edges[&y].iter().copied());
                }
            }
            false
        };
        let mut limit = BTreeSet::new();
        let mut stack: Vec<usize> = nodes.iter().copied().filter(|&x| on_cycle(x)).collect();
        while let Some(x) = stack.pop() {
            if limit.insert(x) {
                stack.extend(edges[&x].iter().copied());
            }
        }
        Ok(limit)
    }
}
