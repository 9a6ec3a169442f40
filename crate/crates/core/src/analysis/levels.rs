//! Actions on the finite levels `A^n` of the tree.

use alloc::vec::Vec;

use num_bigint::BigUint;

use super::perm::StabilizerChain;
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph::UnionFind;
use crate::group::{Group, GroupWord};

/// `|A|^n`, or an error when it exceeds `cap`.
pub(crate) fn level_size(alphabet_size: usize, level: usize, cap: usize) -> Result<usize> {
    let mut points: u128 = 1;
    for _ in 0..level {
        points = points.saturating_mul(alphabet_size as u128);
    }
    if points > cap as u128 {
        return Err(Error::LevelTooLarge { level, points, cap });
    }
    Ok(points as usize)
}

/// Permutations of `A^n` induced by the nontrivial states, with words indexed
/// most-significant letter first.
pub fn level_permutations(automaton: &Automaton, level: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let group = Group::new(automaton.clone())?;
    level_size(group.alphabet_size(), level, cap)?;
    Ok(group
        .generators()
        .into_iter()
        .map(|q| group.level_permutation(&GroupWord::from_states(&[q]), level))
        .collect())
}

/// Whether the group acts transitively on `A^n`, for `n = 1, …, max_level`.
pub fn spherical_transitivity(automaton: &Automaton, max_level: usize, cap: usize) -> Result<Vec<bool>> {
    (1..=max_level)
        .map(|n| {
            let perms = level_permutations(automaton, n, cap)?;
            let points = level_size(automaton.alphabet_size(), n, cap)?;
            let mut uf = UnionFind::new(points);
            for p in &perms {
                for (x, &y) in p.iter().enumerate() {
                    uf.union(x, y);
                }
            }
            Ok(uf.groups().len() == 1)
        })
        .collect()
}

/// Order of the permutation group induced on `A^n`.
pub fn level_quotient_order(automaton: &Automaton, level: usize, cap: usize) -> Result<BigUint> {
    let perms = level_permutations(automaton, level, cap)?;
    let points = level_size(automaton.alphabet_size(), level, cap)?;
    Ok(StabilizerChain::new(points, &perms).order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::WreathRecursion;

    fn odometer() -> Automaton {
        WreathRecursion::new(2)
            .generator("τ", &["ε", "τ"], &[1, 0])
            .build(true, 8)
            .unwrap()
    }

    #[test]
    fn odometer_levels() {
        let a = odometer();
        assert_eq!(spherical_transitivity(&a, 6, 1 << 10).unwrap(), [true; 6]);
        for n in 0..=6 {
            assert_eq!(level_quotient_order(&a, n, 1 << 10).unwrap(), BigUint::from(1u32 << n));
        }
    }

    #[test]
    fn level_cap() {
        let err = level_quotient_order(&odometer(), 20, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::LevelTooLarge {
                level: 20,
                points: 1 << 20,
                cap: 1000
            }
        );
    }

    #[test]
    fn fixed_letter_is_not_transitive() {
        // two letters, a single state swapping nothing
        let a = Automaton::identity_automaton(2);
        assert_eq!(spherical_transitivity(&a, 2, 100).unwrap(), [false, false]);
        assert_eq!(level_quotient_order(&a, 3, 100).unwrap(), BigUint::from(1u32));
    }

    fn closure_size(perms: &[Vec<usize>], points: usize) -> usize {
        let identity: Vec<usize> = (0..points).collect();
        let mut seen = alloc::collections::BTreeSet::from([identity.clone()]);
        let mut stack = alloc::vec![identity];
        while let Some(g) = stack.pop() {
            for p in perms {
                let h: Vec<usize> = g.iter().map(|&x| p[x]).collect();
                if seen.insert(h.clone()) {
                    stack.push(h);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn orders_match_enumeration() {
        let basilica = WreathRecursion::new(2)
            .generator("a", &["ε", "b"], &[1, 0])
            .generator("b", &["ε", "a"], &[0, 1])
            .build(true, 16)
            .unwrap();
        let dihedral = WreathRecursion::new(2)
            .generator("a", &["ε", "ε"], &[1, 0])
            .generator("b", &["a", "b"], &[0, 1])
            .build(true, 16)
            .unwrap();
        for a in [basilica, dihedral] {
            for n in 1..=4 {
                let perms = level_permutations(&a, n, 64).unwrap();
                let expected = closure_size(&perms, 1 << n);
                assert_eq!(level_quotient_order(&a, n, 64).unwrap(), BigUint::from(expected));
            }
        }
    }
}
