//! Finite truncations of the Fock space crystal `G_{e,s}`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crystal::{f_tilde, is_highest_weight, reduced_i_word, translate_charge, weight_aff, weight_inf};
use crate::error::{Error, Result};
use crate::multipartition::{EModulus, Multicharge, Multipartition};
use crate::weight::{WeightAff, WeightInf};

#[derive(Clone, Debug)]
pub struct CrystalOptions {
    pub max_rank: u32,
    /// Refuse to build graphs with more vertices than this.
    pub vertex_cap: usize,
    /// Shift the charge by a multiple of `e` so its minimum lies in `0..e`.
    pub normalize_translation: bool,
}

impl CrystalOptions {
    pub fn up_to(max_rank: u32) -> Self {
        CrystalOptions { max_rank, vertex_cap: 200_000, normalize_translation: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub lambda: Multipartition,
    pub charge: Multicharge,
    pub rank: u32,
    pub hw: bool,
    pub wt_aff: Option<WeightAff>,
    pub wt_inf: WeightInf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub residue: i64,
    pub content: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph {
    #[serde(skip)]
    pub e: Option<u32>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// Number of `l`-partitions of each rank `0..=n`.
pub fn multipartition_counts(level: usize, n: u32) -> Vec<u128> {
    let n = n as usize;
    let p: Vec<u128> = (0..=n).map(|k| partition_count(k as u32)).collect();
    let mut acc = vec![0u128; n + 1];
    acc[0] = 1;
    for _ in 0..level {
        let mut next = vec![0u128; n + 1];
        for (a, &x) in acc.iter().enumerate() {
            for b in 0..=n - a {
                next[a + b] = next[a + b].saturating_add(x.saturating_mul(p[b]));
            }
        }
        acc = next;
    }
    acc
}

/// `p(n)` by the standard part-size recurrence.
pub fn partition_count(n: u32) -> u128 {
    let n = n as usize;
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] = ways[total].saturating_add(ways[total - part]);
        }
    }
    ways[n]
}

/// All `l`-partitions of rank at most `max_rank`, with arrows given by `f̃_i`.
pub fn generate_crystal(charge: &Multicharge, e: EModulus, options: &CrystalOptions) -> Result<CrystalGraph> {
    let level = charge.level();
    if level == 0 {
        return Err(Error::Precondition("charge must have at least one component".into()));
    }
    let total: u128 = multipartition_counts(level, options.max_rank).iter().sum();
    if total > options.vertex_cap as u128 {
        return Err(Error::ResourceLimit(format!(
            "{total} vertices up to rank {} exceeds the cap of {}",
            options.max_rank, options.vertex_cap
        )));
    }
    let charge = match (options.normalize_translation, e) {
        (true, EModulus::Finite(e)) => translate_charge(charge, e).0,
        _ => charge.clone(),
    };
    let lambdas = Multipartition::all_up_to_rank(level, options.max_rank);
    let index: HashMap<&Multipartition, usize> = lambdas.iter().enumerate().map(|(k, l)| (l, k)).collect();

    let built: Vec<(Vertex, Vec<Edge>)> = lambdas
        .par_iter()
        .enumerate()
        .map(|(id, lambda)| -> Result<(Vertex, Vec<Edge>)> {
            let vertex = Vertex {
                id,
                lambda: lambda.clone(),
                charge: charge.clone(),
                rank: lambda.rank(),
                hw: is_highest_weight(lambda, &charge, e)?,
                wt_aff: e.value().map(|e| weight_aff(lambda, &charge, e)).transpose()?,
                wt_inf: weight_inf(lambda, &charge)?,
            };
            let mut edges = Vec::new();
            if lambda.rank() < options.max_rank {
                for i in outgoing_residues(lambda, &charge, e) {
                    let word = reduced_i_word(lambda, &charge, e, i)?;
                    let Some(node) = word.good_addable else { continue };
                    let target = lambda.add_node(node)?;
                    let dst = *index.get(&target).ok_or_else(|| Error::Internal(format!("missing vertex {target}")))?;
                    edges.push(Edge { src: id, dst, residue: i, content: node.content(&charge) });
                }
            }
            Ok((vertex, edges))
        })
        .collect::<Result<_>>()?;

    let mut vertices = Vec::with_capacity(built.len());
    let mut edges = Vec::new();
    for (v, es) in built {
        vertices.push(v);
        edges.extend(es);
    }
    Ok(CrystalGraph { e: e.value(), vertices, edges })
}

/// Residues that may carry an outgoing arrow.
fn outgoing_residues(lambda: &Multipartition, charge: &Multicharge, e: EModulus) -> Vec<i64> {
    match e {
        EModulus::Finite(e) => (0..e as i64).collect(),
        EModulus::Infinite => {
            let (addable, _) = lambda.boundary_nodes();
            let set: BTreeSet<i64> = addable.iter().map(|n| n.content(charge)).collect();
            set.into_iter().collect()
        }
    }
}

impl CrystalGraph {
    pub fn find(&self, lambda: &Multipartition) -> Option<usize> {
        self.vertices.iter().position(|v| &v.lambda == lambda)
    }

    pub fn highest_weight_vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(|v| v.hw)
    }

    /// The connected component containing `lambda`, ignoring arrow directions.
    /// Vertex ids are renumbered densely in the original order.
    pub fn component_of(&self, lambda: &Multipartition) -> Result<CrystalGraph> {
        let start = self
            .find(lambda)
            .ok_or_else(|| Error::Precondition(format!("{lambda} is not a vertex of this truncation")))?;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for edge in &self.edges {
            adjacency[edge.src].push(edge.dst);
            adjacency[edge.dst].push(edge.src);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut renumber = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for v in &self.vertices {
            if seen[v.id] {
                renumber[v.id] = vertices.len();
                vertices.push(Vertex { id: vertices.len(), ..v.clone() });
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| seen[e.src])
            .map(|e| Edge { src: renumber[e.src], dst: renumber[e.dst], ..*e })
            .collect();
        Ok(CrystalGraph { e: self.e, vertices, edges })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    /// Graphviz output; edges are labelled `i (j)` with residue and content.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n  rankdir=TB;\n  node [shape=box];\n");
        for v in &self.vertices {
            let style = if v.hw { ", style=bold" } else { "" };
            let _ = writeln!(out, "  v{} [label=\"{}\"{}];", v.id, v.lambda, style);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -> v{} [label=\"{} ({})\"];", e.src, e.dst, e.residue, e.content);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let hw = if v.hw { " *" } else { "" };
            let _ = writeln!(out, "{:>4}  rank {}  {}{}", v.id, v.rank, v.lambda, hw);
        }
        for e in &self.edges {
            let _ = writeln!(out, "{} -[{} ({})]-> {}", e.src, e.residue, e.content, e.dst);
        }
        out
    }

    pub fn edge_set(&self) -> BTreeSet<(Multipartition, Multipartition, i64)> {
        self.edges
            .iter()
            .map(|e| (self.vertices[e.src].lambda.clone(), self.vertices[e.dst].lambda.clone(), e.content))
            .collect()
    }
}

/// Vertices reachable from `lambda` by repeatedly applying `f̃_i`, up to `max_rank`.
pub fn forward_closure(
    lambda: &Multipartition,
    charge: &Multicharge,
    e: EModulus,
    max_rank: u32,
) -> Result<BTreeSet<Multipartition>> {
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        if mu.rank() >= max_rank {
            continue;
        }
        for i in outgoing_residues(&mu, charge, e) {
            if let Some(next) = f_tilde(&mu, charge, e, i)? {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<u128> = (0..8).map(partition_count).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(multipartition_counts(2, 3), vec![1, 2, 5, 10]);
    }

    #[test]
    fn small_graphs() {
        let g = generate_crystal(&Multicharge(vec![0]), EModulus::Finite(2), &CrystalOptions::up_to(3)).unwrap();
        assert_eq!(g.vertices.len(), 7);
        for e in &g.edges {
            assert_eq!(g.vertices[e.dst].rank, g.vertices[e.src].rank + 1);
        }
        let g0 = generate_crystal(&Multicharge(vec![0, 1]), EModulus::Infinite, &CrystalOptions::up_to(0)).unwrap();
        assert_eq!(g0.vertices.len(), 1);
        assert!(g0.edges.is_empty());
    }

    #[test]
    fn component_and_closure_agree() {
        let s = Multicharge(vec![0, 1]);
        let e = EModulus::Finite(2);
        let g = generate_crystal(&s, e, &CrystalOptions::up_to(4)).unwrap();
        let comp = g.component_of(&Multipartition::empty(2)).unwrap();
        let closure = forward_closure(&Multipartition::empty(2), &s, e, 4).unwrap();
        let names: BTreeSet<Multipartition> = comp.vertices.iter().map(|v| v.lambda.clone()).collect();
        assert_eq!(names, closure);
        assert_eq!(comp.highest_weight_vertices().count(), 1);
    }

    #[test]
    fn vertex_cap() {
        let opts = CrystalOptions { vertex_cap: 10, ..CrystalOptions::up_to(5) };
        let err = generate_crystal(&Multicharge(vec![0, 0]), EModulus::Finite(2), &opts).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn dot_labels() {
        let g = generate_crystal(&Multicharge(vec![0]), EModulus::Finite(2), &CrystalOptions::up_to(1)).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("v0 -> v1 [label=\"0 (0)\"]"));
    }
}
