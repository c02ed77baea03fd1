//! Kashiwara crystal structure on the Fock space.
//!
//! Addable and removable `i`-nodes are ordered by content, ties broken by
//! larger component first. Cancelling `RA` factors leaves `A^p R^q`; the good
//! addable node is the rightmost surviving `A`, the good removable node the
//! leftmost surviving `R`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multipartition::{check_level, EModulus, Multicharge, Multipartition, Node};
use crate::symbol::Symbol;
use crate::weight::{WeightAff, WeightInf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    A,
    R,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::A => "A",
            Tag::R => "R",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordLetter {
    pub node: Node,
    pub content: i64,
    pub tag: Tag,
}

/// The outcome of `RA` cancellation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedWord {
    pub p: usize,
    pub q: usize,
    pub good_addable: Option<Node>,
    pub good_removable: Option<Node>,
    /// Surviving letters, `A`s then `R`s.
    pub letters: Vec<WordLetter>,
}

impl ReducedWord {
    pub fn from_word(word: &[WordLetter]) -> Self {
        let mut adds: Vec<WordLetter> = Vec::new();
        let mut pending: Vec<WordLetter> = Vec::new();
        for &letter in word {
            match letter.tag {
                Tag::R => pending.push(letter),
                Tag::A => {
                    if pending.pop().is_none() {
                        adds.push(letter);
                    }
                }
            }
        }
        let good_addable = adds.last().map(|l| l.node);
        let good_removable = pending.first().map(|l| l.node);
        let (p, q) = (adds.len(), pending.len());
        adds.extend(pending);
        ReducedWord { p, q, good_addable, good_removable, letters: adds }
    }

    pub fn tags(&self) -> String {
        self.letters.iter().map(|l| l.tag.to_string()).collect()
    }
}

fn normalize_residue(e: EModulus, i: i64) -> i64 {
    e.residue(i)
}

/// All addable and removable `i`-nodes, increasing for the order `≺_s`.
pub fn i_word(lambda: &Multipartition, charge: &Multicharge, e: EModulus, i: i64) -> Result<Vec<WordLetter>> {
    check_level(lambda, charge)?;
    let i = normalize_residue(e, i);
    let (addable, removable) = lambda.boundary_nodes();
    let mut word: Vec<WordLetter> = addable
        .into_iter()
        .map(|node| (node, Tag::A))
        .chain(removable.into_iter().map(|node| (node, Tag::R)))
        .map(|(node, tag)| WordLetter { node, content: node.content(charge), tag })
        .filter(|l| e.residue(l.content) == i)
        .collect();
    word.sort_by(|a, b| a.content.cmp(&b.content).then(b.node.comp.cmp(&a.node.comp)));
    Ok(word)
}

pub fn reduced_i_word(lambda: &Multipartition, charge: &Multicharge, e: EModulus, i: i64) -> Result<ReducedWord> {
    Ok(ReducedWord::from_word(&i_word(lambda, charge, e, i)?))
}

/// The same reduced word read off the symbol: for `j ≡ i` from `j_low`
/// upward, entries `j` (as `A`) and `j + 1` (as `R`), rows top to bottom and
/// right to left.
pub fn reduced_i_word_from_symbol(
    lambda: &Multipartition,
    charge: &Multicharge,
    e: EModulus,
    i: i64,
) -> Result<ReducedWord> {
    let sym = Symbol::new(lambda.clone(), charge.clone())?;
    let i = normalize_residue(e, i);
    let js: Vec<i64> = match e {
        EModulus::Infinite => vec![i],
        EModulus::Finite(e) => {
            let e = e as i64;
            let top = sym.full_threshold() - 1;
            let j_low = top - (top - i).rem_euclid(e);
            let max = sym.max_entry();
            (0..).map(|t| j_low + t * e).take_while(|&j| j <= max).collect()
        }
    };
    let mut word = Vec::new();
    for j in js {
        for c in (0..sym.level()).rev() {
            let part = |k: usize| lambda.component(c).part(k) as usize;
            if let Some(k) = sym.position_of(c, j + 1) {
                let node = Node::new(k, part(k), c);
                word.push(WordLetter { node, content: j, tag: Tag::R });
            }
            if let Some(k) = sym.position_of(c, j) {
                let node = Node::new(k, part(k) + 1, c);
                word.push(WordLetter { node, content: j, tag: Tag::A });
            }
        }
    }
    Ok(ReducedWord::from_word(&word))
}

/// `(ε_i, φ_i)`.
pub fn eps_phi(lambda: &Multipartition, charge: &Multicharge, e: EModulus, i: i64) -> Result<(usize, usize)> {
    let r = reduced_i_word(lambda, charge, e, i)?;
    Ok((r.q, r.p))
}

pub fn f_tilde(lambda: &Multipartition, charge: &Multicharge, e: EModulus, i: i64) -> Result<Option<Multipartition>> {
    match reduced_i_word(lambda, charge, e, i)?.good_addable {
        Some(node) => Ok(Some(lambda.add_node(node)?)),
        None => Ok(None),
    }
}

pub fn e_tilde(lambda: &Multipartition, charge: &Multicharge, e: EModulus, i: i64) -> Result<Option<Multipartition>> {
    match reduced_i_word(lambda, charge, e, i)?.good_removable {
        Some(node) => Ok(Some(lambda.remove_node(node)?)),
        None => Ok(None),
    }
}

/// Every node of `λ` with its content.
pub fn contents(lambda: &Multipartition, charge: &Multicharge) -> Vec<i64> {
    let mut out = Vec::with_capacity(lambda.rank() as usize);
    for (c, part) in lambda.components().iter().enumerate() {
        for (a, &len) in part.parts().iter().enumerate() {
            for b in 1..=len as i64 {
                out.push(b - (a as i64 + 1) + charge.get(c));
            }
        }
    }
    out
}

/// `wt_e`, computed as `Λ_{s,e} - Σ N_i α_{i,e}` and checked against `Σ (φ_i - ε_i) Λ_{i,e}`.
pub fn weight_aff(lambda: &Multipartition, charge: &Multicharge, e: u32) -> Result<WeightAff> {
    check_level(lambda, charge)?;
    let mut by_nodes = WeightAff::from_charge(charge.as_slice(), e);
    for j in contents(lambda, charge) {
        by_nodes -= WeightAff::alpha(j, e);
    }
    let mut by_crystal = WeightAff::zero(e);
    for i in 0..e as i64 {
        let (eps, phi) = eps_phi(lambda, charge, EModulus::Finite(e), i)?;
        by_crystal.add_term(i, phi as i64 - eps as i64);
    }
    if by_nodes != by_crystal {
        return Err(Error::Internal(format!(
            "weight formulas disagree for {lambda} with charge {charge}: {by_nodes} vs {by_crystal}"
        )));
    }
    Ok(by_nodes)
}

/// `wt_∞ = Λ_{s,∞} - Σ N_j α_j`, checked against the entry-by-entry sum of `ε_j`.
pub fn weight_inf(lambda: &Multipartition, charge: &Multicharge) -> Result<WeightInf> {
    check_level(lambda, charge)?;
    let mut by_nodes = WeightInf::from_charge(charge.as_slice());
    for j in contents(lambda, charge) {
        by_nodes -= WeightInf::alpha(j);
    }
    let sym = Symbol::new(lambda.clone(), charge.clone())?;
    let mut by_entries = WeightInf::from_charge(charge.as_slice());
    for c in 0..sym.level() {
        for i in 1..=lambda.component(c).height() {
            by_entries += WeightInf::epsilon(sym.entry(c, i));
            by_entries -= WeightInf::epsilon(charge.get(c) + 1 - i as i64);
        }
    }
    if by_nodes != by_entries {
        return Err(Error::Internal(format!(
            "infinite weight formulas disagree for {lambda} with charge {charge}: {by_nodes} vs {by_entries}"
        )));
    }
    Ok(by_nodes)
}

/// The residues to scan: `0..e`, or for `∞` every content adjacent to the boundary.
pub fn residues_to_check(lambda: &Multipartition, charge: &Multicharge, e: EModulus) -> Vec<i64> {
    match e {
        EModulus::Finite(e) => (0..e as i64).collect(),
        EModulus::Infinite => {
            let (addable, removable) = lambda.boundary_nodes();
            let cs: Vec<i64> = addable.iter().chain(&removable).map(|n| n.content(charge)).collect();
            match (cs.iter().min(), cs.iter().max()) {
                (Some(&lo), Some(&hi)) => (lo - 1..=hi + 1).collect(),
                _ => Vec::new(),
            }
        }
    }
}

/// `ε_i = 0` for every residue.
pub fn is_highest_weight(lambda: &Multipartition, charge: &Multicharge, e: EModulus) -> Result<bool> {
    for i in residues_to_check(lambda, charge, e) {
        if eps_phi(lambda, charge, e, i)?.0 != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The representative of `s` in `V_{l,e}`: residues mod `e`, sorted.
pub fn canonical_charge(charge: &Multicharge, e: u32) -> Multicharge {
    let mut v: Vec<i64> = charge.as_slice().iter().map(|s| s.rem_euclid(e as i64)).collect();
    v.sort_unstable();
    Multicharge(v)
}

pub fn equivalent(a: &Multicharge, b: &Multicharge, e: u32) -> bool {
    a.level() == b.level() && canonical_charge(a, e) == canonical_charge(b, e)
}

/// Shifts every component by the same multiple of `e` so the smallest lies in
/// `0..e`. The crystal is unchanged by such a shift; returns the shift applied.
pub fn translate_charge(charge: &Multicharge, e: u32) -> (Multicharge, i64) {
    let e = e as i64;
    let Some(&min) = charge.as_slice().iter().min() else {
        return (charge.clone(), 0);
    };
    let shift = -min.div_euclid(e) * e;
    (Multicharge(charge.as_slice().iter().map(|s| s + shift).collect()), shift)
}
