//! Deterministic Schreier–Sims for permutation groups on `{0, …, n−1}`.
//!
//! Permutations are image vectors and compose left to right: `(p·q)[x] = q[p[x]]`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

type Perm = Vec<u32>;

const ROOT: u32 = u32::MAX - 1;
const OUTSIDE: u32 = u32::MAX;

fn compose(p: &[u32], q: &[u32]) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

fn invert(p: &[u32]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    inv
}

fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(x, &y)| x as u32 == y)
}

fn first_moved(p: &[u32]) -> Option<usize> {
    p.iter().enumerate().position(|(x, &y)| x as u32 != y)
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    inverses: Vec<Perm>,
    orbit: Vec<usize>,
    /// Index of the generator that first reached each point, `ROOT` for the base.
    back: Vec<u32>,
    pending: VecDeque<(usize, usize)>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut back = vec![OUTSIDE; degree];
        back[base] = ROOT;
        Level {
            base,
            gens: Vec::new(),
            inverses: Vec::new(),
            orbit: vec![base],
            back,
            pending: VecDeque::new(),
        }
    }

    /// Adds a generator and extends the orbit without disturbing existing
    /// transversal entries. New (point, generator) pairs are queued for testing.
    fn push(&mut self, g: Perm) {
        self.inverses.push(invert(&g));
        self.gens.push(g);
        let newest = self.gens.len() - 1;
        let old = self.orbit.len();
        for i in 0..old {
            let x = self.orbit[i];
            self.pending.push_back((x, newest));
            self.visit(x, newest);
        }
        let mut i = old;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for j in 0..self.gens.len() {
                self.pending.push_back((x, j));
                self.visit(x, j);
            }
            i += 1;
        }
    }

    fn visit(&mut self, x: usize, j: usize) {
        let y = self.gens[j][x] as usize;
        if self.back[y] == OUTSIDE {
            self.back[y] = j as u32;
            self.orbit.push(y);
        }
    }

    /// `u_x⁻¹` applied after `h`: walks back from `x` to the base.
    fn strip_by(&self, mut h: Perm, mut x: usize) -> Perm {
        while self.back[x] != ROOT {
            let j = self.back[x] as usize;
            h = compose(&h, &self.inverses[j]);
            x = self.inverses[j][x] as usize;
        }
        h
    }

    /// `u_x`, mapping the base to `x`.
    fn transversal(&self, x: usize) -> Perm {
        let mut u: Perm = (0..self.back.len() as u32).collect();
        let mut path = Vec::new();
        let mut y = x;
        while self.back[y] != ROOT {
            let j = self.back[y] as usize;
            path.push(j);
            y = self.inverses[j][y] as usize;
        }
        for &j in path.iter().rev() {
            u = compose(&u, &self.gens[j]);
        }
        u
    }
}

/// Base and strong generating set of a permutation group; base points are chosen
/// as the smallest point moved by the element that forces a new level.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Builds the chain for the group generated by `generators` (image vectors on
    /// `0..degree`).
    pub fn new(degree: usize, generators: &[Vec<usize>]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            assert_eq!(g.len(), degree, "generator has wrong degree");
            let g: Perm = g.iter().map(|&x| x as u32).collect();
            chain.extend(g, 0);
        }
        chain.complete();
        chain
    }

    /// Sifts `h` through levels `from..`, returning the residue and the level where
    /// it stopped (`levels.len()` when it passed all of them).
    fn strip(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = h[level.base] as usize;
            if level.back[x] == OUTSIDE {
                return (h, i);
            }
            h = level.strip_by(h, x);
        }
        (h, self.levels.len())
    }

    /// Sifts `g` from level `from` and records a nontrivial residue. Returns the
    /// deepest level that changed.
    fn extend(&mut self, g: Perm, from: usize) -> Option<usize> {
        let (h, j) = self.strip(g, from);
        if j == self.levels.len() {
            let base = first_moved(&h)?;
            self.levels.push(Level::new(base, self.degree));
        }
        for level in &mut self.levels[from..=j] {
            level.push(h.clone());
        }
        Some(j)
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            let Some((x, s)) = self.levels[level].pending.pop_front() else {
                i -= 1;
                continue;
            };
            let l = &self.levels[level];
            let y = l.gens[s][x] as usize;
            let schreier = compose(
                &compose(&l.transversal(x), &l.gens[s]),
                &invert(&l.transversal(y)),
            );
            if is_identity(&schreier) {
                continue;
            }
            if let Some(j) = self.extend(schreier, level + 1) {
                i = j + 1;
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit lengths of the successive point stabilizers.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        if p.len() != self.degree {
            return false;
        }
        let p: Perm = p.iter().map(|&x| x as u32).collect();
        let (h, j) = self.strip(p, 0);
        j == self.levels.len() && is_identity(&h)
    }
}
