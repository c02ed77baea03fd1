//! Partitions, multipartitions, multicharges and their nodes.
//!
//! Textual formats: parts are dot-separated, components bar-separated and an
//! empty component is written `-` (an empty string is accepted as well), e.g.
//! `3|2.2.2|2.1` or `-|4.3`. Charges are comma-separated integers `1,0,2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition stored without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                what: "partition",
                input: format!("{parts:?}"),
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `i`-th part (1-based); zero beyond the height.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1) as usize;
        let parts = (1..=width).map(|b| self.parts.iter().filter(|&&p| p as usize >= b).count() as u32).collect();
        Partition { parts }
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    fn set_part(&mut self, i: usize, value: u32) {
        if self.parts.len() < i {
            self.parts.resize(i, 0);
        }
        self.parts[i - 1] = value;
        while self.parts.last() == Some(&0) {
            self.parts.pop();
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&s.join("."))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split('.')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|e| Error::Parse {
                    what: "partition",
                    input: s.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|_| Error::Parse {
            what: "partition",
            input: s.to_string(),
            reason: "parts must be weakly decreasing".into(),
        })
    }
}

/// An `l`-tuple of partitions; component `c` is `λ^c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Precondition("a multipartition needs at least one component".into()));
        }
        Ok(Multipartition { components })
    }

    pub fn empty(level: usize) -> Self {
        assert!(level >= 1, "level must be positive");
        Multipartition { components: vec![Partition::empty(); level] }
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &Partition {
        &self.components[c]
    }

    pub fn rank(&self) -> u32 {
        self.components.iter().map(Partition::rank).sum()
    }

    pub fn heights(&self) -> Vec<usize> {
        self.components.iter().map(Partition::height).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().all(Partition::is_empty)
    }

    /// Rank and per-component heights.
    pub fn stats(&self) -> (u32, Vec<usize>) {
        (self.rank(), self.heights())
    }

    pub fn contains(&self, node: Node) -> bool {
        node.comp < self.level() && node.col >= 1 && (node.col as u32) <= self.components[node.comp].part(node.row)
    }

    /// Addable and removable nodes, each sorted by `(comp, row)`.
    pub fn boundary_nodes(&self) -> (Vec<Node>, Vec<Node>) {
        let mut addable = Vec::new();
        let mut removable = Vec::new();
        for (c, p) in self.components.iter().enumerate() {
            let h = p.height();
            for a in 1..=h + 1 {
                let here = p.part(a);
                if a == 1 || p.part(a - 1) > here {
                    addable.push(Node::new(a, here as usize + 1, c));
                }
                if here > 0 && p.part(a + 1) < here {
                    removable.push(Node::new(a, here as usize, c));
                }
            }
        }
        (addable, removable)
    }

    /// `λ ∪ {node}`; the node must be addable.
    pub fn add_node(&self, node: Node) -> Result<Multipartition> {
        let p = self
            .components
            .get(node.comp)
            .ok_or(Error::ComponentOutOfRange { index: node.comp, level: self.level() })?;
        let legal = node.row >= 1
            && p.part(node.row) as usize + 1 == node.col
            && (node.row == 1 || p.part(node.row - 1) as usize >= node.col);
        if !legal {
            return Err(Error::Precondition(format!("{node} is not addable")));
        }
        let mut out = self.clone();
        out.components[node.comp].set_part(node.row, node.col as u32);
        Ok(out)
    }

    /// `λ ∖ {node}`; the node must be removable.
    pub fn remove_node(&self, node: Node) -> Result<Multipartition> {
        let p = self
            .components
            .get(node.comp)
            .ok_or(Error::ComponentOutOfRange { index: node.comp, level: self.level() })?;
        let legal = node.row >= 1
            && node.col >= 1
            && p.part(node.row) as usize == node.col
            && (p.part(node.row + 1) as usize) < node.col;
        if !legal {
            return Err(Error::Precondition(format!("{node} is not removable")));
        }
        let mut out = self.clone();
        out.components[node.comp].set_part(node.row, node.col as u32 - 1);
        Ok(out)
    }

    /// Every `l`-partition of total rank `n`.
    pub fn all_of_rank(level: usize, n: u32) -> Vec<Multipartition> {
        let tables: Vec<Vec<Partition>> = (0..=n).map(Partition::all_of).collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(level);
        fn rec(
            level: usize,
            rest: u32,
            tables: &[Vec<Partition>],
            cur: &mut Vec<Partition>,
            out: &mut Vec<Multipartition>,
        ) {
            if cur.len() + 1 == level {
                for p in &tables[rest as usize] {
                    cur.push(p.clone());
                    out.push(Multipartition { components: cur.clone() });
                    cur.pop();
                }
                return;
            }
            for k in 0..=rest {
                for p in &tables[k as usize] {
                    cur.push(p.clone());
                    rec(level, rest - k, tables, cur, out);
                    cur.pop();
                }
            }
        }
        rec(level, n, &tables, &mut cur, &mut out);
        out
    }

    /// Every `l`-partition of rank at most `max_rank`, grouped by increasing rank.
    pub fn all_up_to_rank(level: usize, max_rank: u32) -> Vec<Multipartition> {
        (0..=max_rank).flat_map(|n| Multipartition::all_of_rank(level, n)).collect()
    }
}

impl PartialOrd for Multipartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rank first, then the textual encoding.
impl Ord for Multipartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.components.iter().map(Partition::to_string).collect();
        f.write_str(&s.join("|"))
    }
}

impl FromStr for Multipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let components = s.trim().split('|').map(Partition::from_str).collect::<Result<Vec<_>>>()?;
        Multipartition::new(components)
    }
}

impl Serialize for Multipartition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A multicharge `s = (s_0, …, s_{l-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multicharge(pub Vec<i64>);

impl Multicharge {
    pub fn new(values: Vec<i64>) -> Self {
        Multicharge(values)
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, c: usize) -> i64 {
        self.0[c]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Membership in `T_{l,e}`: weakly increasing with spread at most `e - 1`.
    pub fn in_fundamental_domain(&self, e: u32) -> bool {
        self.is_weakly_increasing()
            && match (self.0.first(), self.0.last()) {
                (Some(lo), Some(hi)) => hi - lo < e as i64,
                _ => true,
            }
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Multicharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Multicharge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = trimmed
            .split(',')
            .map(|v| {
                v.trim().parse::<i64>().map_err(|e| Error::Parse {
                    what: "charge",
                    input: s.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Multicharge(values))
    }
}

impl From<Vec<i64>> for Multicharge {
    fn from(v: Vec<i64>) -> Self {
        Multicharge(v)
    }
}

/// A node `(a, b, c)`: row `a ≥ 1`, column `b ≥ 0`, component `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    pub fn new(row: usize, col: usize, comp: usize) -> Self {
        Node { row, col, comp }
    }

    /// `b - a + s_c`.
    pub fn content(&self, charge: &Multicharge) -> i64 {
        self.col as i64 - self.row as i64 + charge.get(self.comp)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

/// Either a finite modulus `e ≥ 2` or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EModulus {
    Finite(u32),
    Infinite,
}

impl EModulus {
    pub fn finite(e: i64) -> Result<Self> {
        if e < 2 || e > u32::MAX as i64 {
            return Err(Error::InvalidModulus(e));
        }
        Ok(EModulus::Finite(e as u32))
    }

    pub fn value(&self) -> Option<u32> {
        match self {
            EModulus::Finite(e) => Some(*e),
            EModulus::Infinite => None,
        }
    }

    pub fn require_finite(&self) -> Result<u32> {
        self.value().ok_or(Error::InfiniteModulus)
    }

    /// The residue of a content: reduced into `0..e`, or the content itself for `∞`.
    pub fn residue(&self, content: i64) -> i64 {
        match self {
            EModulus::Finite(e) => content.rem_euclid(*e as i64),
            EModulus::Infinite => content,
        }
    }
}

impl fmt::Display for EModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EModulus::Finite(e) => write!(f, "{e}"),
            EModulus::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for EModulus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "INFINITY" | "∞") {
            return Ok(EModulus::Infinite);
        }
        let e = t.parse::<i64>().map_err(|err| Error::Parse {
            what: "modulus",
            input: s.to_string(),
            reason: err.to_string(),
        })?;
        EModulus::finite(e)
    }
}

/// Content and residue of `node` for the charge `s`.
pub fn content_residue(node: Node, charge: &Multicharge, e: EModulus) -> Result<(i64, i64)> {
    if node.comp >= charge.level() {
        return Err(Error::ComponentOutOfRange { index: node.comp, level: charge.level() });
    }
    let content = node.content(charge);
    Ok((content, e.residue(content)))
}

pub(crate) fn check_level(lambda: &Multipartition, charge: &Multicharge) -> Result<()> {
    if lambda.level() != charge.level() {
        return Err(Error::LevelMismatch { lambda: lambda.level(), charge: charge.level() });
    }
    Ok(())
}
