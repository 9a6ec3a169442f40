//! Seven worked examples over two- and three-letter alphabets, with the
//! properties they are known to have.
//!
//! The `expected` records are data for tests and tooling; nothing in the library
//! reads them.

use alloc::string::String;
use alloc::vec::Vec;

use crate::analysis::{nucleus, Limits};
use crate::automaton::{split_exponent, Automaton};
use crate::error::{Error, Result};
use crate::group::{Gen, Group, GroupWord};
use crate::recursion::WreathRecursion;

pub const NAMES: [&str; 7] = [
    "lamplighter",
    "bs13",
    "odometer",
    "nonrecurrent3",
    "nonsmooth3",
    "nonsmooth3b",
    "basilica",
];

pub fn list() -> &'static [&'static str] {
    &NAMES
}

/// Which automaton of an entry a fact is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// The minimal automaton built from the recursion.
    Generating,
    /// The automaton on the nucleus.
    Nuclear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fact {
    pub value: bool,
    pub form: Form,
}

const fn on_generating(value: bool) -> Option<Fact> {
    Some(Fact {
        value,
        form: Form::Generating,
    })
}

const fn on_nuclear(value: bool) -> Option<Fact> {
    Some(Fact {
        value,
        form: Form::Nuclear,
    })
}

/// Known properties; `None` where the entry makes no claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    /// Nucleus elements in power notation, or `None` when the group is not contracting.
    pub nucleus: Option<&'static [&'static str]>,
    pub nuclear: Option<Fact>,
    pub smooth: Option<Fact>,
    pub recurrent: Option<bool>,
    pub transitive: Option<bool>,
    pub open_set: Option<Fact>,
    /// `(n, log_base, base)`: the quotient on level `n` has order `base^log_base`.
    pub quotient_orders: &'static [(usize, u32, u32)],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleEntry {
    pub name: &'static str,
    /// One sentence on what the group is.
    pub summary: &'static str,
    pub automaton: Automaton,
    /// The automaton on the nucleus, when the closure terminates at default limits.
    pub nucleus_automaton: Option<Automaton>,
    pub expected: Expected,
}

const THREE_CYCLE: [usize; 3] = [1, 2, 0];
const SWAP: [usize; 2] = [1, 0];
const FIX2: [usize; 2] = [0, 1];
const FIVE: &[&str] = &["ε", "τ", "τ^-1", "τ^2", "τ^-2"];

fn cyclic3(restrictions: &[&str]) -> WreathRecursion {
    WreathRecursion::new(3).generator("τ", restrictions, &THREE_CYCLE)
}

/// Builds a named example. Fails with [`Error::UnknownExample`] for other names.
pub fn build(name: &str) -> Result<ExampleEntry> {
    let none = Expected {
        nucleus: None,
        nuclear: None,
        smooth: None,
        recurrent: None,
        transitive: None,
        open_set: None,
        quotient_orders: &[],
    };
    let (name, summary, recursion, with_identity, expected) = match name {
        "lamplighter" => (
            "lamplighter",
            "The lamplighter group (Z/2) wr Z acting by affine maps of F2[[t]].",
            WreathRecursion::new(2)
                .generator("a", &["a", "b"], &FIX2)
                .generator("b", &["b", "a"], &SWAP),
            false,
            Expected {
                nuclear: on_generating(false),
                ..none
            },
        ),
        "bs13" => (
            "bs13",
            "The Baumslag-Solitar group BS(1,3) acting by affine maps of the 2-adic integers.",
            WreathRecursion::new(2)
                .generator("a", &["a", "b"], &FIX2)
                .generator("b", &["a", "c"], &SWAP)
                .generator("c", &["b", "c"], &FIX2),
            false,
            Expected {
                nuclear: on_generating(false),
                ..none
            },
        ),
        "odometer" => (
            "odometer",
            "The binary adding machine generating Z.",
            WreathRecursion::new(2).generator("τ", &["ε", "τ"], &SWAP),
            true,
            Expected {
                nucleus: Some(&["ε", "τ", "τ^-1"]),
                nuclear: on_generating(false),
                smooth: on_nuclear(true),
                recurrent: Some(true),
                transitive: Some(true),
                open_set: on_nuclear(true),
                quotient_orders: &[
                    (1, 1, 2),
                    (2, 2, 2),
                    (3, 3, 2),
                    (4, 4, 2),
                    (5, 5, 2),
                    (6, 6, 2),
                    (7, 7, 2),
                    (8, 8, 2),
                ],
            },
        ),
        "nonrecurrent3" => (
            "nonrecurrent3",
            "A ternary action of Z whose vertex stabilizers project onto a proper subgroup.",
            cyclic3(&["ε", "τ", "τ"]),
            true,
            Expected {
                nucleus: Some(FIVE),
                recurrent: Some(false),
                transitive: Some(true),
                quotient_orders: &[(1, 1, 3), (2, 2, 3), (3, 3, 3), (4, 4, 3), (5, 5, 3)],
                ..none
            },
        ),
        "nonsmooth3" => (
            "nonsmooth3",
            "A recurrent ternary action of Z whose minimal automaton is not smooth.",
            cyclic3(&["τ", "τ^-1", "τ"]),
            true,
            Expected {
                nucleus: Some(FIVE),
                smooth: on_generating(false),
                recurrent: Some(true),
                ..none
            },
        ),
        "nonsmooth3b" => (
            "nonsmooth3b",
            "A recurrent ternary action of Z whose nucleus has no trivial path from 0 to 1.",
            cyclic3(&["τ^2", "ε", "τ^-1"]),
            true,
            Expected {
                nucleus: Some(FIVE),
                smooth: on_nuclear(false),
                recurrent: Some(true),
                ..none
            },
        ),
        "basilica" => (
            "basilica",
            "The iterated monodromy group of z^2 - 1.",
            WreathRecursion::new(2)
                .generator("a", &["ε", "b"], &SWAP)
                .generator("b", &["ε", "a"], &FIX2),
            true,
            Expected {
                nucleus: Some(&["ε", "a", "a^-1", "b", "b^-1", "a^-1·b", "b^-1·a"]),
                recurrent: Some(true),
                transitive: Some(true),
                open_set: on_nuclear(true),
                ..none
            },
        ),
        other => return Err(Error::UnknownExample(other.into())),
    };
    let automaton = recursion.build(with_identity, 64)?;
    verify_formal_states(&automaton, recursion.generator_names())?;
    let report = nucleus(&automaton, &Limits::default())?;
    Ok(ExampleEntry {
        name,
        summary,
        automaton,
        nucleus_automaton: report.nuclear_automaton,
        expected,
    })
}

/// Checks that every state named by a word over the generators (such as `τ^2`)
/// acts as that word.
fn verify_formal_states(automaton: &Automaton, generators: Vec<String>) -> Result<()> {
    let group = Group::new(automaton.clone())?;
    let index = |name: &str| {
        generators
            .iter()
            .position(|g| g == name)
            .and_then(|_| automaton.state_index(name))
    };
    for q in 0..automaton.state_count() {
        let name = automaton.state_name(q);
        if name == "ε" || index(name).is_some() {
            continue;
        }
        let mut gens = Vec::new();
        for token in name.split('·') {
            let (base, exp) = match index(token) {
                Some(_) => (token, 1),
                None => split_exponent(token).ok_or_else(|| Error::UnknownState(token.into()))?,
            };
            let state = index(base).ok_or_else(|| Error::UnknownState(base.into()))?;
            let g = Gen {
                state,
                inverse: exp < 0,
            };
            gens.extend(core::iter::repeat_n(g, exp.unsigned_abs() as usize));
        }
        let word = GroupWord::from_gens(gens);
        if !group.equals(&GroupWord::from_states(&[q]), &word)? {
            return Err(Error::InvalidAutomaton(alloc::format!(
                "state {name} does not act as its name"
            )));
        }
    }
    Ok(())
}
