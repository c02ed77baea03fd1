//! Shifted symbols of multipartitions and the period machinery built on them.
//!
//! The symbol of `(λ, s)` has `l` semi-infinite, strictly decreasing rows with
//! entries `B_i^c = λ_i^c - i + s_c + 1`. Rows are never materialized beyond the
//! first `h_c + e` entries; everything past the height is the arithmetic tail
//! `s_c + 1 - i`. Row `c = l - 1` is displayed on top, so "below" means a
//! smaller component index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multipartition::{check_level, Multicharge, Multipartition, Partition};

/// The pair `(λ, s)` viewed through its symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    lambda: Multipartition,
    charge: Multicharge,
}

impl Symbol {
    pub fn new(lambda: Multipartition, charge: Multicharge) -> Result<Self> {
        check_level(&lambda, &charge)?;
        Ok(Symbol { lambda, charge })
    }

    pub fn empty(charge: Multicharge) -> Self {
        let lambda = Multipartition::empty(charge.level());
        Symbol { lambda, charge }
    }

    pub fn lambda(&self) -> &Multipartition {
        &self.lambda
    }

    pub fn charge(&self) -> &Multicharge {
        &self.charge
    }

    pub fn level(&self) -> usize {
        self.charge.level()
    }

    pub fn into_parts(self) -> (Multipartition, Multicharge) {
        (self.lambda, self.charge)
    }

    /// `B_i^c`, with `i` starting at 1.
    pub fn entry(&self, c: usize, i: usize) -> i64 {
        self.lambda.component(c).part(i) as i64 - i as i64 + self.charge.get(c) + 1
    }

    pub fn checked_entry(&self, c: usize, i: usize) -> Result<i64> {
        if c >= self.level() {
            return Err(Error::ComponentOutOfRange { index: c, level: self.level() });
        }
        if i == 0 {
            return Err(Error::ZeroRowIndex);
        }
        Ok(self.entry(c, i))
    }

    /// The first `len` entries of row `c`.
    pub fn row_prefix(&self, c: usize, len: usize) -> Vec<i64> {
        (1..=len).map(|i| self.entry(c, i)).collect()
    }

    /// The largest entry of the whole symbol.
    pub fn max_entry(&self) -> i64 {
        (0..self.level()).map(|c| self.entry(c, 1)).max().expect("level is positive")
    }

    /// Whether row `c` holds the value `x`.
    pub fn row_contains(&self, c: usize, x: i64) -> bool {
        let h = self.lambda.component(c).height();
        let tail_top = self.charge.get(c) - h as i64;
        if x <= tail_top {
            return true;
        }
        (1..=h).any(|i| self.entry(c, i) == x)
    }

    /// The index `i` with `B_i^c = x`, if any.
    pub fn position_of(&self, c: usize, x: i64) -> Option<usize> {
        let i = self.charge.get(c) + 1 - x;
        let h = self.lambda.component(c).height();
        if i > h as i64 {
            return Some(i as usize);
        }
        (1..=h).find(|&i| self.entry(c, i) == x)
    }

    /// The smallest value missing from row `c`; every smaller value is present.
    pub fn first_gap(&self, c: usize) -> i64 {
        let h = self.lambda.component(c).height();
        let mut x = self.charge.get(c) - h as i64 + 1;
        while self.row_contains(c, x) {
            x += 1;
        }
        x
    }

    /// Rows `c = 0..l` truncated to `h_c + e` entries each.
    pub fn truncated(&self, e: u32) -> Vec<Vec<i64>> {
        (0..self.level()).map(|c| self.row_prefix(c, self.lambda.component(c).height() + e as usize)).collect()
    }

    /// The truncated rows read right to left, top row (`c = l-1`) first.
    pub fn reading_word(&self, e: u32) -> Vec<ReadingLetter> {
        let mut word = Vec::new();
        for c in (0..self.level()).rev() {
            let len = self.lambda.component(c).height() + e as usize;
            for i in 1..=len {
                word.push(ReadingLetter { value: self.entry(c, i), comp: c, index: i });
            }
        }
        word
    }

    /// Locates the `e`-period by the reading-word rule, then checks it against
    /// the three defining conditions; a disagreement is an internal error.
    pub fn find_period(&self, e: u32) -> Result<Option<Period>> {
        let from_word = self.period_from_word(e);
        let by_definition = self.period_by_conditions(e);
        if from_word != by_definition {
            return Err(Error::Internal(format!(
                "period extraction disagrees for {} with charge {}: word {:?}, conditions {:?}",
                self.lambda, self.charge, from_word, by_definition
            )));
        }
        if let Some(p) = &from_word {
            if !self.satisfies_period_conditions(p) {
                return Err(Error::Internal(format!("extracted period {p} fails its defining conditions")));
            }
        }
        Ok(from_word)
    }

    fn period_from_word(&self, e: u32) -> Option<Period> {
        let word = self.reading_word(e);
        let k = word.iter().map(|l| l.value).max()?;
        let mut last_pos = None;
        let mut letters = Vec::with_capacity(e as usize);
        for a in 0..e as i64 {
            let value = k - a;
            let pos = word.iter().rposition(|l| l.value == value)?;
            if last_pos.is_some_and(|p| pos <= p) {
                return None;
            }
            last_pos = Some(pos);
            let l = word[pos];
            letters.push(self.period_letter(l.comp, l.index));
        }
        Some(Period { letters })
    }

    fn period_by_conditions(&self, e: u32) -> Option<Period> {
        let k = self.max_entry();
        let mut letters: Vec<PeriodLetter> = Vec::with_capacity(e as usize);
        for a in 0..e as i64 {
            let value = k - a;
            let comp = (0..self.level()).find(|&c| self.row_contains(c, value))?;
            if letters.last().is_some_and(|prev| prev.comp < comp) {
                return None;
            }
            let index = self.position_of(comp, value).expect("row contains value");
            letters.push(self.period_letter(comp, index));
        }
        Some(Period { letters })
    }

    fn period_letter(&self, comp: usize, index: usize) -> PeriodLetter {
        PeriodLetter { index, part: self.lambda.component(comp).part(index), comp, value: self.entry(comp, index) }
    }

    /// Checks conditions 1-3 of an `e`-period for the given letters.
    pub fn satisfies_period_conditions(&self, period: &Period) -> bool {
        let Some(first) = period.letters.first() else {
            return false;
        };
        let k = first.value;
        if k != self.max_entry() {
            return false;
        }
        for (t, letter) in period.letters.iter().enumerate() {
            let value = k - t as i64;
            if letter.comp >= self.level() || self.entry(letter.comp, letter.index) != value {
                return false;
            }
            if (0..letter.comp).any(|d| self.row_contains(d, value)) {
                return false;
            }
        }
        period.letters.windows(2).all(|w| w[0].comp >= w[1].comp)
    }

    /// Deletes `period` from the symbol and reads the result as `B(λ⁻, s⁻)`.
    pub fn without_period(&self, period: &Period, e: u32) -> Symbol {
        let l = self.level();
        let mut components = Vec::with_capacity(l);
        let mut charge = Vec::with_capacity(l);
        for c in 0..l {
            let removed: Vec<usize> = period.letters.iter().filter(|p| p.comp == c).map(|p| p.index).collect();
            let len = self.lambda.component(c).height() + e as usize;
            let kept: Vec<i64> = (1..=len).filter(|i| !removed.contains(i)).map(|i| self.entry(c, i)).collect();
            let new_charge = self.charge.get(c) - removed.len() as i64;
            let parts: Vec<u32> = kept
                .iter()
                .enumerate()
                .map(|(pos, &b)| {
                    let part = b + (pos as i64 + 1) - new_charge - 1;
                    debug_assert!(part >= 0);
                    part as u32
                })
                .collect();
            components.push(Partition::new(parts).expect("symbol rows stay strictly decreasing"));
            charge.push(new_charge);
        }
        Symbol { lambda: Multipartition::new(components).expect("level is positive"), charge: Multicharge(charge) }
    }

    /// `(λ⁻, s⁻)`: the identity when there is no `e`-period.
    pub fn remove_period(&self, e: u32) -> Result<Symbol> {
        Ok(match self.find_period(e)? {
            Some(p) => self.without_period(&p, e),
            None => self.clone(),
        })
    }

    /// Iterated period removal until the pair is aperiodic, or empty with a
    /// charge in `T_{l,e}`.
    pub fn peel(&self, e: u32) -> Result<PeelTrace> {
        let mut current = self.clone();
        let mut periods = Vec::new();
        loop {
            if current.lambda.is_empty() && current.charge.in_fundamental_domain(e) {
                break;
            }
            let Some(period) = current.find_period(e)? else {
                break;
            };
            let next = current.without_period(&period, e);
            periods.push(PeelStep {
                form: period.form(),
                nodes: period.letters.iter().map(|p| [p.index as i64, p.part as i64, p.comp as i64]).collect(),
                charge_before: current.charge.clone(),
                charge_after: next.charge.clone(),
                lambda_after: next.lambda.clone(),
            });
            current = next;
        }
        let (final_lambda, final_charge) = current.into_parts();
        Ok(PeelTrace { final_lambda, final_charge, periods })
    }

    pub fn is_totally_periodic(&self, e: u32) -> Result<bool> {
        Ok(self.peel(e)?.is_totally_periodic(e))
    }

    /// `m`: the largest integer such that every row holds all integers below it.
    pub fn full_threshold(&self) -> i64 {
        (0..self.level()).map(|c| self.first_gap(c)).min().expect("level is positive")
    }

    /// Entries `≥ m`, each row read right to left, top row first.
    pub fn upper_reading(&self) -> Vec<i64> {
        let m = self.full_threshold();
        let mut word = Vec::new();
        for c in (0..self.level()).rev() {
            let mut i = 1;
            loop {
                let x = self.entry(c, i);
                if x < m {
                    break;
                }
                word.push(x);
                i += 1;
            }
        }
        word
    }

    /// Total periodicity for `e = ∞`: the upper reading is a reverse lattice word
    /// whose decreasing runs all reach `m`.
    pub fn is_totally_periodic_inf(&self) -> bool {
        let m = self.full_threshold();
        is_reverse_lattice(&self.upper_reading(), m)
    }

    /// Weakly increasing charge and columns weakly increasing from top to bottom.
    pub fn is_semistandard(&self) -> bool {
        if !self.charge.is_weakly_increasing() {
            return false;
        }
        (0..self.level().saturating_sub(1)).all(|c| {
            let shift = (self.charge.get(c + 1) - self.charge.get(c)) as usize;
            let span = self.lambda.component(c).height() + self.lambda.component(c + 1).height() + 1;
            (1..=span).all(|i| self.entry(c + 1, i + shift) <= self.entry(c, i))
        })
    }
}

impl fmt::Display for Symbol {
    /// Rows top (`c = l-1`) to bottom, each listing the entries down to the tail.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lows: Vec<i64> =
            (0..self.level()).map(|c| self.charge.get(c) - self.lambda.component(c).height() as i64).collect();
        let floor = lows.iter().min().copied().unwrap_or(0) - 1;
        for c in (0..self.level()).rev() {
            let mut row = Vec::new();
            let mut i = 1;
            loop {
                let x = self.entry(c, i);
                if x < floor {
                    break;
                }
                row.push(x);
                i += 1;
            }
            row.reverse();
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "c={c}: ...{}", cells.join(""))?;
        }
        Ok(())
    }
}

/// Suffix counting: reading from the right, each letter `x > floor` needs a
/// strictly larger supply of `x - 1` already seen.
pub fn is_reverse_lattice(word: &[i64], floor: i64) -> bool {
    let mut seen = std::collections::HashMap::<i64, u32>::new();
    for &x in word.iter().rev() {
        if x > floor {
            let below = seen.get(&(x - 1)).copied().unwrap_or(0);
            let here = seen.get(&x).copied().unwrap_or(0);
            if below < here + 1 {
                return false;
            }
        }
        *seen.entry(x).or_insert(0) += 1;
    }
    true
}

/// One letter of a symbol reading, tagged with its origin `(c, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReadingLetter {
    pub value: i64,
    pub comp: usize,
    pub index: usize,
}

/// One entry of an `e`-period: position `(i, c)`, the part `λ_i^c` and the entry value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodLetter {
    pub index: usize,
    pub part: u32,
    pub comp: usize,
    pub value: i64,
}

/// An `e`-period, letters in the order `k, k-1, …, k-e+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period {
    pub letters: Vec<PeriodLetter>,
}

impl Period {
    pub fn form(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.value).collect()
    }

    pub fn max(&self) -> i64 {
        self.letters[0].value
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> =
            self.letters.iter().map(|l| format!("{}@({},{},{})", l.value, l.index, l.part, l.comp)).collect();
        f.write_str(&s.join(" "))
    }
}

/// One removal performed by [`Symbol::peel`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub form: Vec<i64>,
    /// `[i, λ_i^c, c]` for each period letter.
    pub nodes: Vec<[i64; 3]>,
    pub charge_before: Multicharge,
    pub charge_after: Multicharge,
    pub lambda_after: Multipartition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelTrace {
    pub final_lambda: Multipartition,
    pub final_charge: Multicharge,
    pub periods: Vec<PeelStep>,
}

impl PeelTrace {
    pub fn is_totally_periodic(&self, e: u32) -> bool {
        self.final_lambda.is_empty() && self.final_charge.in_fundamental_domain(e)
    }

    /// Rebuilds the starting symbol by reinserting every removed period.
    pub fn replay(&self) -> Result<Symbol> {
        let mut current = Symbol::new(self.final_lambda.clone(), self.final_charge.clone())?;
        for step in self.periods.iter().rev() {
            current = insert_entries(&current, &step.form, &step.nodes, &step.charge_before)?;
        }
        Ok(current)
    }
}

fn insert_entries(sym: &Symbol, form: &[i64], nodes: &[[i64; 3]], charge_before: &Multicharge) -> Result<Symbol> {
    let l = sym.level();
    let mut components = Vec::with_capacity(l);
    for c in 0..l {
        let extra: Vec<i64> = form.iter().zip(nodes).filter(|(_, n)| n[2] as usize == c).map(|(&v, _)| v).collect();
        let new_charge = charge_before.get(c);
        if new_charge != sym.charge().get(c) + extra.len() as i64 {
            return Err(Error::Internal("peel trace charges are inconsistent".into()));
        }
        let len = sym.lambda().component(c).height() + extra.len() + 1;
        let mut row = sym.row_prefix(c, len);
        row.extend(extra);
        row.sort_unstable_by(|a, b| b.cmp(a));
        if row.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Internal("reinserted entry collides with an existing one".into()));
        }
        let parts: Vec<u32> =
            row.iter().enumerate().map(|(pos, &b)| (b + pos as i64 + 1 - new_charge - 1) as u32).collect();
        components.push(Partition::new(parts)?);
    }
    Symbol::new(Multipartition::new(components)?, charge_before.clone())
}

/// Peels `(∅, s)` down to a charge in `T_{l,e}`.
pub fn reduce_charge(charge: &Multicharge, e: u32) -> Result<Multicharge> {
    let trace = Symbol::empty(charge.clone()).peel(e)?;
    if !trace.final_charge.in_fundamental_domain(e) {
        return Err(Error::Internal(format!("charge reduction of {charge} stopped outside T_{{l,e}}")));
    }
    Ok(trace.final_charge)
}

/// The successive charges `s^(0), s^(1), …` of the reduction of `(∅, s)`.
pub fn charge_reduction_steps(charge: &Multicharge, e: u32) -> Result<Vec<Multicharge>> {
    let trace = Symbol::empty(charge.clone()).peel(e)?;
    let mut steps = vec![charge.clone()];
    steps.extend(trace.periods.iter().map(|p| p.charge_after.clone()));
    Ok(steps)
}
