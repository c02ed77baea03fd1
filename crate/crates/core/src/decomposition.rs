//! Decomposition of the Fock space: Kostka numbers, the tableau encoding of
//! `sl_∞` highest weight symbols, totally periodic skew tableaux and the
//! branching multiplicities `m` and `M`.
//!
//! Tableaux here have strictly increasing rows and weakly increasing columns,
//! matching the shape of highest weight symbols. With that convention
//! `kostka(λ, μ)` equals the usual Kostka number `K_{λ', μ}` of the conjugate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::crystal::{is_highest_weight, weight_inf};
use crate::error::{Error, Result};
use crate::multipartition::{EModulus, Multicharge, Multipartition, Partition};
use crate::symbol::Symbol;
use crate::weight::WeightInf;

/// Number of row-strict tableaux of `shape` holding `weight[c]` letters `c + 1`.
///
/// Letters `≤ k` always fill a Young diagram, and the letters `k` form a
/// vertical strip, so the count is a walk through vertical strips.
pub fn kostka(shape: &Partition, weight: &[u32]) -> u64 {
    let total: u32 = weight.iter().sum();
    if total != shape.rank() {
        return 0;
    }
    let outer: Vec<u32> = shape.parts().to_vec();
    let mut layer: HashMap<Vec<u32>, u64> = HashMap::from([(vec![0; outer.len()], 1)]);
    for &w in weight {
        let mut next: HashMap<Vec<u32>, u64> = HashMap::new();
        for (inner, count) in layer {
            for grown in vertical_strips(&inner, &outer, w as usize) {
                *next.entry(grown).or_insert(0) += count;
            }
        }
        layer = next;
    }
    layer.get(&outer).copied().unwrap_or(0)
}

/// Diagrams `μ ⊆ outer` with `μ / inner` a vertical strip of `size` boxes.
fn vertical_strips(inner: &[u32], outer: &[u32], size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = inner.to_vec();
    fn go(row: usize, left: usize, inner: &[u32], outer: &[u32], current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        if row == inner.len() || inner.len() - row < left {
            return;
        }
        go(row + 1, left, inner, outer, current, out);
        let fits_outer = inner[row] < outer[row];
        let stays_partition = row == 0 || current[row - 1] > inner[row];
        if fits_outer && stays_partition {
            current[row] += 1;
            go(row + 1, left - 1, inner, outer, current, out);
            current[row] -= 1;
        }
    }
    go(0, size, inner, outer, &mut current, &mut out);
    out
}

/// `(λ(v), μ(v))`: the conjugate of the diagram with rows `v_c - v_0`, and `μ_c = s_c - v_0`.
pub fn lambda_mu_of(v: &Multicharge, s: &Multicharge) -> Result<(Partition, Vec<u32>)> {
    if v.level() != s.level() || v.level() == 0 {
        return Err(Error::LevelMismatch { lambda: v.level(), charge: s.level() });
    }
    if !v.is_weakly_increasing() || !s.is_weakly_increasing() {
        return Err(Error::Precondition("charges must be weakly increasing".into()));
    }
    let v0 = v.get(0);
    if v0 > s.get(0) {
        return Err(Error::Precondition(format!("v_0 = {v0} exceeds s_0 = {}", s.get(0))));
    }
    let mut rows: Vec<u32> = v.as_slice().iter().map(|&x| (x - v0) as u32).collect();
    rows.sort_unstable_by(|a, b| b.cmp(a));
    let shape = Partition::new(rows)?.conjugate();
    let weight = s.as_slice().iter().map(|&x| (x - v0) as u32).collect();
    Ok((shape, weight))
}

/// A straight-shape tableau, rows listed from the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    pub rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect()).expect("lengths are nonnegative")
    }

    /// Number of letters `c + 1` for `c = 0..level`.
    pub fn weight(&self, level: usize) -> Vec<u32> {
        let mut w = vec![0; level];
        for &x in self.rows.iter().flatten() {
            if (1..=level as u32).contains(&x) {
                w[x as usize - 1] += 1;
            }
        }
        w
    }

    /// Strictly increasing rows, weakly increasing columns, left-justified shape.
    pub fn is_valid(&self) -> bool {
        let shaped = self.rows.windows(2).all(|w| w[0].len() >= w[1].len()) && self.rows.iter().all(|r| !r.is_empty());
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| above <= below));
        shaped && rows_ok && cols_ok
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{}", cells.join(""))?;
        }
        Ok(())
    }
}

/// The `v` with `wt_∞ = Λ_{v,∞}`, if the weight is dominant of that form.
pub fn dominant_charge(w: &WeightInf, level: usize) -> Option<Multicharge> {
    if w.level() != level as i64 || w.coeffs().values().any(|&a| a < 0) {
        return None;
    }
    let mut v = Vec::with_capacity(level);
    for (&j, &a) in w.coeffs() {
        v.extend(std::iter::repeat_n(j, a as usize));
    }
    Some(Multicharge(v))
}

/// Encodes an `sl_∞` highest weight symbol as a tableau of shape `λ(v)` and weight `μ(v)`.
pub fn hw_symbol_to_tableau(lambda: &Multipartition, s: &Multicharge) -> Result<(Tableau, Multicharge)> {
    if !is_highest_weight(lambda, s, EModulus::Infinite)? {
        return Err(Error::Precondition(format!("{lambda} is not a highest weight vertex for charge {s}")));
    }
    let v = dominant_charge(&weight_inf(lambda, s)?, s.level())
        .ok_or_else(|| Error::Internal("highest weight is not dominant".into()))?;
    let v0 = v.get(0);
    let sym = Symbol::new(lambda.clone(), s.clone())?;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for c in 0..sym.level() {
        let mut i = 1;
        loop {
            let x = sym.entry(c, i) - v0;
            if x <= 0 {
                break;
            }
            let r = x as usize;
            if rows.len() < r {
                rows.resize(r, Vec::new());
            }
            rows[r - 1].push(c as u32 + 1);
            i += 1;
        }
    }
    let tableau = Tableau { rows };
    if !tableau.is_valid() {
        return Err(Error::Internal(format!("encoding of {lambda} is not a tableau")));
    }
    Ok((tableau, v))
}

/// Inverse of [`hw_symbol_to_tableau`]: the rows holding letter `c + 1` are the
/// normalized entries of symbol row `c`.
pub fn tableau_to_hw_symbol(t: &Tableau, s: &Multicharge, v: &Multicharge) -> Result<Multipartition> {
    let (shape, weight) = lambda_mu_of(v, s)?;
    if !t.is_valid() || t.shape() != shape || t.weight(s.level()) != weight {
        return Err(Error::Precondition(format!("tableau does not have shape {shape} and weight {weight:?}")));
    }
    let v0 = v.get(0);
    let mut components = Vec::with_capacity(s.level());
    for c in 0..s.level() {
        let letter = c as u32 + 1;
        let mut entries: Vec<i64> =
            t.rows.iter().enumerate().filter(|(_, r)| r.contains(&letter)).map(|(k, _)| k as i64 + 1 + v0).collect();
        entries.reverse();
        let sc = s.get(c);
        let parts: Vec<u32> =
            entries.iter().enumerate().map(|(pos, &b)| (b + pos as i64 + 1 - sc - 1) as u32).collect();
        components.push(Partition::new(parts)?);
    }
    Multipartition::new(components)
}

/// A filling of `s ∖ t`: row `c` occupies columns `t_c + 1 ..= s_c`, row `l - 1` on top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewTableau {
    pub outer: Multicharge,
    pub inner: Multicharge,
    /// `rows[c]`, left to right.
    pub rows: Vec<Vec<i64>>,
}

impl SkewTableau {
    /// Checks lengths and strictly increasing rows.
    pub fn new(outer: Multicharge, inner: Multicharge, rows: Vec<Vec<i64>>) -> Result<Self> {
        if outer.level() != inner.level() || rows.len() != outer.level() {
            return Err(Error::LevelMismatch { lambda: rows.len(), charge: outer.level() });
        }
        for (c, row) in rows.iter().enumerate() {
            if outer.get(c) < inner.get(c) || row.len() as i64 != outer.get(c) - inner.get(c) {
                return Err(Error::Precondition(format!("row {c} does not fit s∖t")));
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Precondition(format!("row {c} is not strictly increasing")));
            }
        }
        Ok(SkewTableau { outer, inner, rows })
    }

    /// Row `c` holds exactly `t_c + 1, …, s_c`.
    pub fn trivial(outer: Multicharge, inner: Multicharge) -> Result<Self> {
        let rows = (0..outer.level()).map(|c| (inner.get(c) + 1..=outer.get(c)).collect()).collect();
        SkewTableau::new(outer, inner, rows)
    }

    pub fn level(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Entry at column `col` of row `c`, if that box exists.
    pub fn at(&self, c: usize, col: i64) -> Option<i64> {
        let start = self.inner.get(c) + 1;
        if col < start || col > self.outer.get(c) {
            return None;
        }
        Some(self.rows[c][(col - start) as usize])
    }

    /// Columns weakly increase from the top row down.
    pub fn columns_ok(&self) -> bool {
        (0..self.level().saturating_sub(1)).all(|c| {
            (self.inner.get(c) + 1..=self.outer.get(c))
                .all(|col| self.at(c + 1, col).is_none_or(|above| above <= self.at(c, col).unwrap()))
        })
    }

    /// Every entry of row `c` exceeds `t_c`.
    pub fn entries_above_inner(&self) -> bool {
        self.rows.iter().enumerate().all(|(c, r)| r.iter().all(|&x| x > self.inner.get(c)))
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.iter().enumerate().all(|(c, r)| r.iter().copied().eq(self.inner.get(c) + 1..=self.outer.get(c)))
    }

    /// `(value, c, index in row)`, rows right to left, top row first.
    pub fn reading_word(&self) -> Vec<(i64, usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for c in (0..self.level()).rev() {
            for (k, &x) in self.rows[c].iter().enumerate().rev() {
                out.push((x, c, k));
            }
        }
        out
    }

    /// The `e`-period: rightmost occurrences of `M, M-1, …, M-e+1`, in reading order.
    pub fn find_period(&self, e: u32) -> Option<Vec<(i64, usize, usize)>> {
        let word = self.reading_word();
        let m = word.iter().map(|l| l.0).max()?;
        let mut out = Vec::with_capacity(e as usize);
        let mut last = None;
        for a in 0..e as i64 {
            let pos = word.iter().rposition(|l| l.0 == m - a)?;
            if last.is_some_and(|p| pos <= p) {
                return None;
            }
            last = Some(pos);
            out.push(word[pos]);
        }
        Some(out)
    }

    pub fn without(&self, period: &[(i64, usize, usize)]) -> SkewTableau {
        let mut rows = self.rows.clone();
        let mut outer = self.outer.as_slice().to_vec();
        for c in 0..self.level() {
            let mut drop: Vec<usize> = period.iter().filter(|p| p.1 == c).map(|p| p.2).collect();
            drop.sort_unstable_by(|a, b| b.cmp(a));
            for k in drop {
                rows[c].remove(k);
                outer[c] -= 1;
            }
        }
        SkewTableau { outer: Multicharge(outer), inner: self.inner.clone(), rows }
    }

    /// Period removal until aperiodic, or trivial with outer shape in `T_{l,e}`.
    pub fn peel(&self, e: u32) -> TableauPeel {
        let mut current = self.clone();
        let mut periods = Vec::new();
        loop {
            if current.is_trivial() && current.outer.in_fundamental_domain(e) {
                break;
            }
            let Some(period) = current.find_period(e) else { break };
            let next = current.without(&period);
            debug_assert!(next.columns_ok() || !current.columns_ok());
            periods
                .push(TableauPeelStep { form: period.iter().map(|p| p.0).collect(), outer_after: next.outer.clone() });
            current = next;
        }
        TableauPeel { result: current, periods }
    }

    pub fn is_totally_periodic(&self, e: u32) -> bool {
        self.entries_above_inner() && self.peel(e).result.is_empty()
    }

    pub fn weight(&self) -> LevelZeroWeight {
        let mut eps = BTreeMap::new();
        for &x in self.rows.iter().flatten() {
            *eps.entry(x).or_insert(0) += 1;
        }
        LevelZeroWeight { eps }
    }
}

impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = self.inner.as_slice().iter().min().copied().unwrap_or(0);
        for c in (0..self.level()).rev() {
            let pad = (self.inner.get(c) - left) as usize;
            let mut line = "   ".repeat(pad);
            for x in &self.rows[c] {
                line.push_str(&format!("{x:>3}"));
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauPeelStep {
    pub form: Vec<i64>,
    pub outer_after: Multicharge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauPeel {
    pub result: SkewTableau,
    pub periods: Vec<TableauPeelStep>,
}

pub fn tableau_weight(t: &SkewTableau) -> LevelZeroWeight {
    t.weight()
}

/// A level-0 weight in `ε` coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LevelZeroWeight {
    pub eps: BTreeMap<i64, i64>,
}

impl LevelZeroWeight {
    pub fn from_weight(w: &WeightInf) -> Option<Self> {
        w.eps_coordinates().map(|eps| LevelZeroWeight { eps })
    }

    pub fn from_omegas(omega: &BTreeMap<i64, i64>, e: u32) -> Self {
        let mut eps = BTreeMap::new();
        for (&k, &a) in omega {
            for r in 0..e as i64 {
                *eps.entry(k - r).or_insert(0) += a;
            }
        }
        eps.retain(|_, a| *a != 0);
        LevelZeroWeight { eps }
    }

    pub fn to_weight(&self) -> WeightInf {
        let mut w = WeightInf::zero();
        for (&j, &b) in &self.eps {
            w += b * WeightInf::epsilon(j);
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.eps.values().all(|&b| b == 0)
    }

    /// Coefficients `a_k` of `Σ a_k ω_k`, solved from the top with
    /// `a_j = b_j - (a_{j+1} + … + a_{j+e-1})`; `None` if not such a sum.
    pub fn omega_coeffs(&self, e: u32) -> Option<BTreeMap<i64, i64>> {
        let e = e as i64;
        let mut out = BTreeMap::new();
        let (Some(&lo), Some(&hi)) = (self.eps.keys().next(), self.eps.keys().next_back()) else {
            return Some(out);
        };
        let mut a: BTreeMap<i64, i64> = BTreeMap::new();
        for j in (lo - e + 1..=hi).rev() {
            let b = self.eps.get(&j).copied().unwrap_or(0);
            let above: i64 = (1..e).map(|r| a.get(&(j + r)).copied().unwrap_or(0)).sum();
            a.insert(j, b - above);
        }
        if (lo - e + 1..lo).any(|j| a[&j] != 0) {
            return None;
        }
        for (k, v) in a {
            if v != 0 {
                out.insert(k, v);
            }
        }
        Some(out)
    }

    /// Whether this is a nonnegative combination of the `ω_k`.
    pub fn in_positive_cone(&self, e: u32) -> bool {
        self.omega_coeffs(e).is_some_and(|a| a.values().all(|&x| x >= 0))
    }
}

/// `ν = Λ_{t,∞} + Σ a_k ω_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedWeight {
    pub t: Multicharge,
    pub omega: BTreeMap<i64, i64>,
    pub e: u32,
}

impl DecomposedWeight {
    pub fn gamma(&self) -> LevelZeroWeight {
        LevelZeroWeight::from_omegas(&self.omega, self.e)
    }

    pub fn reconstruct(&self) -> WeightInf {
        WeightInf::from_charge(self.t.as_slice()) + self.gamma().to_weight()
    }
}

#[derive(Serialize, Deserialize)]
struct DecomposedRepr {
    t: Vec<i64>,
    omega: BTreeMap<String, i64>,
}

impl Serialize for DecomposedWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecomposedRepr {
            t: self.t.as_slice().to_vec(),
            omega: self.omega.iter().map(|(k, a)| (k.to_string(), *a)).collect(),
        }
        .serialize(s)
    }
}

impl DecomposedWeight {
    /// Reads `{"t": [...], "omega": {"k": a}}`; the modulus is not part of the format.
    pub fn deserialize_with_e<'de, D: Deserializer<'de>>(d: D, e: u32) -> std::result::Result<Self, D::Error> {
        let repr = DecomposedRepr::deserialize(d)?;
        let mut omega = BTreeMap::new();
        for (k, a) in repr.omega {
            omega.insert(k.parse::<i64>().map_err(serde::de::Error::custom)?, a);
        }
        Ok(DecomposedWeight { t: Multicharge(repr.t), omega, e })
    }
}

/// Every `ν = Λ_{t,∞} + γ` with `t ∈ T_{l,e}` and `γ` a nonnegative sum of
/// `ω_k`, `k ≥ t_0 + e`, for `t` in the window `[min support - e, max support]`.
pub fn decomposition_candidates(nu: &WeightInf, level: usize, e: u32) -> Vec<DecomposedWeight> {
    if level == 0 || nu.level() != level as i64 {
        return Vec::new();
    }
    let Some((lo, hi)) = nu.support_range() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for t in charges_in_domain(level, e, lo - e as i64, hi) {
        let gamma = nu.clone() - WeightInf::from_charge(&t);
        let Some(lz) = LevelZeroWeight::from_weight(&gamma) else { continue };
        let Some(omega) = lz.omega_coeffs(e) else { continue };
        if omega.values().any(|&a| a < 0) {
            continue;
        }
        if omega.keys().all(|&k| k >= t[0] + e as i64) {
            out.push(DecomposedWeight { t: Multicharge(t), omega, e });
        }
    }
    out
}

/// The decomposition `ν = Λ_{t(ν),∞} + γ(ν)`: among the candidates, the ones
/// with the largest `Σ t`. Candidates form chains where a lower `t` absorbs
/// whole periods into `γ`; peeling stops at the top of the chain. The result
/// is expected to have at most one element.
pub fn decompose_weight(nu: &WeightInf, level: usize, e: u32) -> Vec<DecomposedWeight> {
    let candidates = decomposition_candidates(nu, level, e);
    let Some(best) = candidates.iter().map(|d| d.t.sum()).max() else {
        return Vec::new();
    };
    candidates.into_iter().filter(|d| d.t.sum() == best).collect()
}

/// Weakly increasing `t` with entries in `[lo, hi]` and spread at most `e - 1`.
fn charges_in_domain(level: usize, e: u32, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for t0 in lo..=hi {
        let top = hi.min(t0 + e as i64 - 1);
        let mut current = vec![t0];
        extend_weakly(&mut current, level, top, &mut out);
    }
    out
}

fn extend_weakly(current: &mut Vec<i64>, level: usize, top: i64, out: &mut Vec<Vec<i64>>) {
    if current.len() == level {
        out.push(current.clone());
        return;
    }
    let from = *current.last().expect("nonempty");
    for x in from..=top {
        current.push(x);
        extend_weakly(current, level, top, out);
        current.pop();
    }
}

/// The node counts `N_j` (by content) forced by `Λ_s - ν = Σ N_j α_j`, solved
/// from the top with `N_{j-1} = 2N_j - N_{j+1} - d_j`. `None` if there is no
/// finitely supported nonnegative solution.
pub fn forced_node_counts(s: &Multicharge, nu: &WeightInf) -> Option<BTreeMap<i64, u64>> {
    let d = WeightInf::from_charge(s.as_slice()) - nu.clone();
    let mut out = BTreeMap::new();
    let Some((lo, hi)) = d.support_range() else {
        return Some(out);
    };
    let (mut upper, mut here) = (0i64, 0i64);
    for j in (lo - 1..=hi).rev() {
        let below = 2 * here - upper - d.coeff(j);
        if below < 0 {
            return None;
        }
        if below > 0 {
            out.insert(j - 1, below as u64);
        }
        upper = here;
        here = below;
    }
    if out.keys().next().is_some_and(|&k| k < lo) {
        return None;
    }
    Some(out)
}

/// `Σ N_j`, the rank of any `λ` with `wt_∞(λ, s) = ν`.
pub fn forced_rank(s: &Multicharge, nu: &WeightInf) -> Option<u64> {
    forced_node_counts(s, nu).map(|n| n.values().sum())
}

/// Strictly increasing rows and weakly increasing columns built from a multiset.
fn fill_rows(
    c: usize,
    outer: &Multicharge,
    inner: &Multicharge,
    pool: &mut BTreeMap<i64, u32>,
    rows: &mut Vec<Vec<i64>>,
    visit: &mut dyn FnMut(&[Vec<i64>]),
) {
    let len = (outer.get(c) - inner.get(c)) as usize;
    let mut row = Vec::with_capacity(len);
    fill_one_row(c, len, outer, inner, pool, rows, &mut row, visit);
}

#[allow(clippy::too_many_arguments)]
fn fill_one_row(
    c: usize,
    len: usize,
    outer: &Multicharge,
    inner: &Multicharge,
    pool: &mut BTreeMap<i64, u32>,
    rows: &mut Vec<Vec<i64>>,
    row: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[Vec<i64>]),
) {
    if row.len() == len {
        rows[c] = row.clone();
        if c == 0 {
            visit(rows);
        } else {
            fill_rows(c - 1, outer, inner, pool, rows, visit);
        }
        rows[c].clear();
        return;
    }
    let col = inner.get(c) + 1 + row.len() as i64;
    let mut floor = row.last().map_or(inner.get(c) + 1, |&x| x + 1);
    if c + 1 < rows.len() {
        let above_start = inner.get(c + 1) + 1;
        if col >= above_start && col <= outer.get(c + 1) {
            floor = floor.max(rows[c + 1][(col - above_start) as usize]);
        }
    }
    let candidates: Vec<i64> = pool.range(floor..).filter(|(_, &n)| n > 0).map(|(&x, _)| x).collect();
    for x in candidates {
        *pool.get_mut(&x).unwrap() -= 1;
        row.push(x);
        fill_one_row(c, len, outer, inner, pool, rows, row, visit);
        row.pop();
        *pool.get_mut(&x).unwrap() += 1;
    }
}

/// Every skew tableau of shape `outer ∖ inner` whose entries are exactly the
/// multiset `pool`, with entries of row `c` above `t_c`.
pub fn skew_tableaux_with_content(
    outer: &Multicharge,
    inner: &Multicharge,
    pool: &BTreeMap<i64, u32>,
) -> Vec<SkewTableau> {
    let l = outer.level();
    let boxes: i64 = (0..l).map(|c| outer.get(c) - inner.get(c)).sum();
    let available: u32 = pool.values().sum();
    if (0..l).any(|c| outer.get(c) < inner.get(c)) || boxes != available as i64 {
        return Vec::new();
    }
    let mut pool = pool.clone();
    let mut rows = vec![Vec::new(); l];
    let mut out = Vec::new();
    let mut visit = |rows: &[Vec<i64>]| {
        out.push(SkewTableau { outer: outer.clone(), inner: inner.clone(), rows: rows.to_vec() });
    };
    fill_rows(l - 1, outer, inner, &mut pool, &mut rows, &mut visit);
    out
}

/// `m^e_{s,ν} = |Tab^e_{s∖t(ν), γ(ν)}|`.
pub fn count_m(s: &Multicharge, nu: &WeightInf, e: u32) -> Result<u64> {
    if !s.is_weakly_increasing() {
        return Err(Error::Precondition(format!("charge {s} is not weakly increasing")));
    }
    let decomps = decompose_weight(nu, s.level(), e);
    let d = match decomps.as_slice() {
        [] => return Ok(0),
        [d] => d,
        _ => return Err(Error::Internal(format!("weight {nu} decomposes in {} ways", decomps.len()))),
    };
    let mut pool = BTreeMap::new();
    for (&k, &a) in &d.omega {
        for r in 0..e as i64 {
            *pool.entry(k - r).or_insert(0) += a as u32;
        }
    }
    let count = skew_tableaux_with_content(s, &d.t, &pool).iter().filter(|t| t.is_totally_periodic(e)).count();
    Ok(count as u64)
}

/// `M^e_{s,ν} = Σ_v K_{λ(v), μ(v)} m^e_{v,ν}` over weakly increasing `v`
/// with `Σ v = Σ s` (so `|λ(v)| = |μ(v)|`), `v_0 ≤ s_0` (so `μ(v) ≥ 0`) and
/// `v ≥ t(ν)` (so `v ∖ t(ν)` is a skew shape).
pub fn count_big_m(s: &Multicharge, nu: &WeightInf, e: u32) -> Result<u64> {
    if !s.is_weakly_increasing() {
        return Err(Error::Precondition(format!("charge {s} is not weakly increasing")));
    }
    let decomps = decompose_weight(nu, s.level(), e);
    let t = match decomps.as_slice() {
        [] => return Ok(0),
        [d] => d.t.clone(),
        _ => return Err(Error::Internal(format!("weight {nu} decomposes in {} ways", decomps.len()))),
    };
    let mut total = 0;
    for v in charges_between(&t, s) {
        let v = Multicharge(v);
        let (shape, weight) = lambda_mu_of(&v, s)?;
        let k = kostka(&shape, &weight);
        if k > 0 {
            total += k * count_m(&v, nu, e)?;
        }
    }
    Ok(total)
}

/// Weakly increasing `v ≥ t` with `v_0 ≤ s_0` and `Σ v = Σ s`.
fn charges_between(t: &Multicharge, s: &Multicharge) -> Vec<Vec<i64>> {
    let l = s.level();
    let target = s.sum();
    let mut out = Vec::new();
    fn go(c: usize, t: &Multicharge, l: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if c == l {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let low = t.get(c).max(cur.last().copied().unwrap_or(i64::MIN));
        let remaining = (l - c) as i64;
        // Every later entry is at least this one.
        let mut x = low;
        while x * remaining <= left {
            cur.push(x);
            go(c + 1, t, l, left - x, cur, out);
            cur.pop();
            x += 1;
        }
    }
    if t.get(0) > s.get(0) {
        return out;
    }
    for v0 in t.get(0)..=s.get(0) {
        let mut cur = vec![v0];
        go(1, t, l, target - v0, &mut cur, &mut out);
    }
    out
}

/// Level-0 and level-`l` parts of a totally periodic symbol: row `c` of the
/// level-0 tableau lists the entries above `s°_c`.
pub fn level_parts(lambda: &Multipartition, s: &Multicharge, e: u32) -> Result<(SkewTableau, Multicharge)> {
    let sym = Symbol::new(lambda.clone(), s.clone())?;
    let trace = sym.peel(e)?;
    if !trace.is_totally_periodic(e) {
        return Err(Error::Precondition(format!("{lambda} with charge {s} is not totally {e}-periodic")));
    }
    let t = trace.final_charge;
    let mut rows = Vec::with_capacity(sym.level());
    for c in 0..sym.level() {
        let tc = t.get(c);
        let mut row = Vec::new();
        let mut i = 1;
        while sym.entry(c, i) > tc {
            row.push(sym.entry(c, i));
            i += 1;
        }
        if row.len() as i64 != s.get(c) - tc || sym.first_gap(c) <= tc {
            return Err(Error::Internal(format!("row {c} does not contain B(∅, s°) as a subsymbol")));
        }
        row.reverse();
        rows.push(row);
    }
    Ok((SkewTableau::new(s.clone(), t.clone(), rows)?, t))
}
