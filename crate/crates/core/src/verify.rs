//! Exhaustive conformance checks over small pools of multipartitions.
//!
//! Each check runs over every member of a pool and records how many cases
//! were examined, how many failed and the first failing case.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{
    e_tilde, eps_phi, f_tilde, is_highest_weight, reduced_i_word, reduced_i_word_from_symbol, residues_to_check,
    weight_aff, weight_inf,
};
use crate::decomposition::{
    count_big_m, count_m, decompose_weight, dominant_charge, forced_rank, hw_symbol_to_tableau, kostka, lambda_mu_of,
    level_parts, tableau_to_hw_symbol,
};
use crate::error::{Error, Result};
use crate::graph::{forward_closure, generate_crystal, CrystalOptions};
use crate::multipartition::{EModulus, Multicharge, Multipartition};
use crate::symbol::Symbol;
use crate::weight::{WeightAff, WeightInf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    HwEquivalence,
    PeriodInvariance,
    WordEquality,
    WeightProjection,
    Subgraph,
    Counting,
    Tableaux,
    CrystalSanity,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::HwEquivalence,
        Suite::PeriodInvariance,
        Suite::WordEquality,
        Suite::WeightProjection,
        Suite::Subgraph,
        Suite::Counting,
        Suite::Tableaux,
        Suite::CrystalSanity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::HwEquivalence => "hw-equivalence",
            Suite::PeriodInvariance => "period-invariance",
            Suite::WordEquality => "word-equality",
            Suite::WeightProjection => "weight-projection",
            Suite::Subgraph => "subgraph",
            Suite::Counting => "counting",
            Suite::Tableaux => "tableaux",
            Suite::CrystalSanity => "crystal-sanity",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH.into_iter().chain([Suite::All]).find(|suite| suite.name() == s).ok_or_else(|| Error::Parse {
            what: "suite",
            input: s.to_string(),
            reason: "unknown suite".into(),
        })
    }
}

/// A charge with its finite modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Setup {
    pub charge: Multicharge,
    pub e: u32,
}

impl Setup {
    pub fn new(charge: &[i64], e: u32) -> Self {
        Setup { charge: Multicharge(charge.to_vec()), e }
    }

    fn modulus(&self) -> EModulus {
        EModulus::Finite(self.e)
    }
}

impl fmt::Display for Setup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} e={}", self.charge, self.e)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub setups: Vec<Setup>,
    pub max_rank: u32,
    pub jobs: Option<usize>,
}

impl VerifyConfig {
    /// `(l, e, s)` in `{(1,2,(0)), (2,2,(0,0)), (2,3,(0,1)), (3,2,(0,0,1))}`.
    pub fn standard(max_rank: u32) -> Self {
        VerifyConfig {
            setups: vec![
                Setup::new(&[0], 2),
                Setup::new(&[0, 0], 2),
                Setup::new(&[0, 1], 3),
                Setup::new(&[0, 0, 1], 2),
            ],
            max_rank,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {}  ({} checked, {} failed)", self.name, self.checked, self.failures)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n      first failure: {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

type Outcome = std::result::Result<(), String>;

/// Runs `f` on every item in parallel and tallies the failures in input order.
pub fn run_check<T: Sync>(
    name: impl Into<String>,
    items: &[T],
    f: impl Fn(&T) -> Result<Outcome> + Sync,
) -> CheckResult {
    let outcomes: Vec<Option<String>> = items
        .par_iter()
        .map(|item| match f(item) {
            Ok(Ok(())) => None,
            Ok(Err(msg)) => Some(msg),
            Err(err) => Some(format!("error: {err}")),
        })
        .collect();
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    CheckResult {
        name: name.into(),
        checked: items.len() as u64,
        failures: failures.len() as u64,
        counterexample: failures.into_iter().next(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pool(setup: &Setup, max_rank: u32) -> Vec<Multipartition> {
    Multipartition::all_up_to_rank(setup.charge.level(), max_rank)
}

/// Runs `suite` (every suite for [`Suite::All`]) inside a pool of `config.jobs` threads.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Report> {
    let body = || -> Result<Report> {
        let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
        let mut checks = Vec::new();
        for s in suites {
            for setup in &config.setups {
                checks.extend(run_one(s, setup, config.max_rank)?);
            }
            if s == Suite::WeightProjection {
                checks.push(omega_kernel(-10..=10, &config.setups));
            }
        }
        Ok(Report { suite: suite.name().to_string(), checks })
    };
    match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::ResourceLimit(e.to_string()))?
            .install(body),
        None => body(),
    }
}

fn run_one(suite: Suite, setup: &Setup, max_rank: u32) -> Result<Vec<CheckResult>> {
    Ok(match suite {
        Suite::HwEquivalence => vec![
            hw_equivalence(setup, max_rank),
            hw_equivalence_inf(setup, max_rank),
            semistandard_reachability(setup, max_rank)?,
        ],
        Suite::PeriodInvariance => vec![period_invariance(setup, max_rank)],
        Suite::WordEquality => vec![word_equality(setup, max_rank), weight_formulas(setup, max_rank)],
        Suite::WeightProjection => vec![weight_projection(setup, max_rank)],
        Suite::Subgraph => vec![subgraph_embedding(setup, max_rank)?],
        Suite::Counting => {
            if !setup.charge.is_weakly_increasing() {
                return Ok(Vec::new());
            }
            vec![
                kostka_counts(setup, max_rank),
                semistandard_branching_counts(setup, max_rank)?,
                full_branching_counts(setup, max_rank)?,
            ]
        }
        Suite::Tableaux => {
            if !setup.charge.is_weakly_increasing() {
                return Ok(Vec::new());
            }
            vec![
                tableau_round_trip(setup, max_rank),
                level_zero_bijection(setup, max_rank),
                decomposition_matches_peel(setup, max_rank),
            ]
        }
        Suite::CrystalSanity => crystal_sanity(setup, max_rank)?,
        Suite::All => unreachable!("expanded by run_suite"),
    })
}

/// Highest weight ⟺ totally periodic.
pub fn hw_equivalence(setup: &Setup, max_rank: u32) -> CheckResult {
    let items = pool(setup, max_rank);
    run_check(format!("hw ⟺ totally periodic [{setup}, rank ≤ {max_rank}]"), &items, |lambda| {
        let hw = is_highest_weight(lambda, &setup.charge, setup.modulus())?;
        let tp = Symbol::new(lambda.clone(), setup.charge.clone())?.is_totally_periodic(setup.e)?;
        Ok(ensure(hw == tp, || format!("{lambda}: highest weight {hw}, totally periodic {tp}")))
    })
}

/// For `e = ∞`: highest weight ⟺ reverse lattice reading.
pub fn hw_equivalence_inf(setup: &Setup, max_rank: u32) -> CheckResult {
    let items = pool(setup, max_rank);
    run_check(
        format!("∞-hw ⟺ reverse lattice reading [s={}, rank ≤ {max_rank}]", setup.charge),
        &items,
        |lambda| {
            let hw = is_highest_weight(lambda, &setup.charge, EModulus::Infinite)?;
            let lattice = Symbol::new(lambda.clone(), setup.charge.clone())?.is_totally_periodic_inf();
            Ok(ensure(hw == lattice, || format!("{lambda}: highest weight {hw}, lattice {lattice}")))
        },
    )
}

/// Semistandard ⟺ reachable from `∅` in the `e = ∞` crystal.
pub fn semistandard_reachability(setup: &Setup, max_rank: u32) -> Result<CheckResult> {
    let items = pool(setup, max_rank);
    let level = setup.charge.level();
    let reachable = if setup.charge.is_weakly_increasing() {
        forward_closure(&Multipartition::empty(level), &setup.charge, EModulus::Infinite, max_rank)?
    } else {
        BTreeSet::new()
    };
    Ok(run_check(
        format!("semistandard ⟺ in G_∞(∅) [s={}, rank ≤ {max_rank}]", setup.charge),
        &items,
        |lambda| {
            let ss = Symbol::new(lambda.clone(), setup.charge.clone())?.is_semistandard();
            let r = reachable.contains(lambda);
            Ok(ensure(ss == r, || format!("{lambda}: semistandard {ss}, reachable {r}")))
        },
    ))
}

/// Removing a period keeps `ε_i`, `φ_i` and `wt_e` and shifts `wt_∞` by `ω_M`.
pub fn period_invariance(setup: &Setup, max_rank: u32) -> CheckResult {
    let items = pool(setup, max_rank);
    let e = setup.e;
    run_check(format!("period removal invariances [{setup}, rank ≤ {max_rank}]"), &items, |lambda| {
        let sym = Symbol::new(lambda.clone(), setup.charge.clone())?;
        let Some(period) = sym.find_period(e)? else {
            return Ok(Ok(()));
        };
        let reduced = sym.without_period(&period, e);
        let (l2, s2) = (reduced.lambda(), reduced.charge());
        if l2.rank() > lambda.rank() || (!lambda.is_empty() && l2 != lambda && l2.rank() >= lambda.rank()) {
            return Ok(Err(format!("{lambda}: rank did not drop")));
        }
        for i in 0..e as i64 {
            let before = eps_phi(lambda, &setup.charge, setup.modulus(), i)?;
            let after = eps_phi(l2, s2, setup.modulus(), i)?;
            if before != after {
                return Ok(Err(format!("{lambda}: (ε,φ)_{i} {before:?} → {after:?}")));
            }
        }
        if weight_aff(lambda, &setup.charge, e)? != weight_aff(l2, s2, e)? {
            return Ok(Err(format!("{lambda}: wt_e changed")));
        }
        let shift = weight_inf(lambda, &setup.charge)? - weight_inf(l2, s2)?;
        Ok(ensure(shift == WeightInf::omega(period.max(), e), || {
            format!("{lambda}: wt_∞ shifted by {shift}, expected ω_{}", period.max())
        }))
    })
}

/// Node-order and symbol-based reduced words agree, including good nodes.
pub fn word_equality(setup: &Setup, max_rank: u32) -> CheckResult {
    let items = pool(setup, max_rank);
    run_check(format!("reduced words agree [{setup}, rank ≤ {max_rank}]"), &items, |lambda| {
        for e in [setup.modulus(), EModulus::Infinite] {
            for i in residues_to_check(lambda, &setup.charge, e) {
                let a = reduced_i_word(lambda, &setup.charge, e, i)?;
                let b = reduced_i_word_from_symbol(lambda, &setup.charge, e, i)?;
                let same = (a.p, a.q, a.good_addable, a.good_removable) == (b.p, b.q, b.good_addable, b.good_removable);
                if !same {
                    return Ok(Err(format!("{lambda}, e={e}, i={i}: {} vs {}", a.tags(), b.tags())));
                }
            }
        }
        Ok(Ok(()))
    })
}

/// `Λ_s - Σ N_i α_i = Σ (φ_i - ε_i) Λ_i`; the comparison happens inside `weight_aff`.
pub fn weight_formulas(setup: &Setup, max_rank: u32) -> CheckResult {
    let items = pool(setup, max_rank);
    run_check(format!("weight formulas agree [{setup}, rank ≤ {max_rank}]"), &items, |lambda| {
        weight_aff(lambda, &setup.charge, setup.e)?;
        weight_inf(lambda, &setup.charge)?;
        Ok(Ok(()))
    })
}

pub fn weight_projection(setup: &Setup, max_rank: u32) -> CheckResult {
    let items = pool(setup, max_rank);
    run_check(format!("wt_e = π(wt_∞) [{setup}, rank ≤ {max_rank}]"), &items, |lambda| {
        let aff = weight_aff(lambda, &setup.charge, setup.e)?;
        let projected = weight_inf(lambda, &setup.charge)?.project(setup.e);
        Ok(ensure(aff == projected, || format!("{lambda}: {aff} vs {projected}")))
    })
}

pub fn omega_kernel(range: std::ops::RangeInclusive<i64>, setups: &[Setup]) -> CheckResult {
    let mut es: Vec<u32> = setups.iter().map(|s| s.e).collect();
    es.sort_unstable();
    es.dedup();
    let items: Vec<(i64, u32)> = range.flat_map(|k| es.iter().map(move |&e| (k, e))).collect();
    run_check("π(ω_k) = 0", &items, |&(k, e)| {
        Ok(ensure(WeightInf::omega(k, e).project(e).is_zero(), || format!("ω_{k} with e={e}")))
    })
}

/// Every arrow of `G_{e,s}` is an arrow of `G_{∞,s}` whose content reduces to its residue.
pub fn subgraph_embedding(setup: &Setup, max_rank: u32) -> Result<CheckResult> {
    let opts = CrystalOptions::up_to(max_rank);
    let finite = generate_crystal(&setup.charge, setup.modulus(), &opts)?;
    let infinite = generate_crystal(&setup.charge, EModulus::Infinite, &opts)?;
    let inf_edges = infinite.edge_set();
    Ok(run_check(format!("G_e ⊆ G_∞ [{setup}, rank ≤ {max_rank}]"), &finite.edges, |edge| {
        let src = &finite.vertices[edge.src].lambda;
        let dst = &finite.vertices[edge.dst].lambda;
        let present = inf_edges.contains(&(src.clone(), dst.clone(), edge.content));
        let reduces = edge.content.rem_euclid(setup.e as i64) == edge.residue;
        Ok(ensure(present && reduces, || format!("{src} -{}({})-> {dst}", edge.residue, edge.content)))
    }))
}

/// Weakly increasing `v` with `Σ v = Σ s`, `v_0 ≤ s_0` and forced rank at most `max_rank`.
pub fn dominant_charges_up_to(s: &Multicharge, max_rank: u32) -> Vec<Multicharge> {
    let l = s.level();
    let lo = s.get(0) - max_rank as i64 - 1;
    let hi = s.get(l - 1) + max_rank as i64 + 1;
    let mut out = Vec::new();
    fn go(cur: &mut Vec<i64>, l: usize, hi: i64, left: i64, out: &mut Vec<Vec<i64>>) {
        if cur.len() == l {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let from = *cur.last().expect("nonempty");
        for x in from..=hi {
            if x * ((l - cur.len()) as i64) > left {
                break;
            }
            cur.push(x);
            go(cur, l, hi, left - x, out);
            cur.pop();
        }
    }
    for v0 in lo..=s.get(0) {
        let mut cur = vec![v0];
        go(&mut cur, l, hi, s.sum() - v0, &mut out);
    }
    out.into_iter()
        .map(Multicharge)
        .filter(|v| forced_rank(s, &WeightInf::from_charge(v.as_slice())).is_some_and(|r| r <= max_rank as u64))
        .collect()
}

fn grouped_weights(
    s: &Multicharge,
    max_rank: u32,
    keep: impl Fn(&Multipartition) -> Result<bool> + Sync,
) -> Result<HashMap<WeightInf, u64>> {
    let level = s.level();
    let kept: Vec<Option<WeightInf>> = Multipartition::all_up_to_rank(level, max_rank)
        .par_iter()
        .map(|lambda| -> Result<Option<WeightInf>> {
            if keep(lambda)? {
                Ok(Some(weight_inf(lambda, s)?))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    let mut out = HashMap::new();
    for w in kept.into_iter().flatten() {
        *out.entry(w).or_insert(0) += 1;
    }
    Ok(out)
}

/// `#{∞-highest weight vertices of weight Λ_v} = K_{λ(v), μ(v)}`.
pub fn kostka_counts(setup: &Setup, max_rank: u32) -> CheckResult {
    let s = &setup.charge;
    let counts = grouped_weights(s, max_rank, |lambda| is_highest_weight(lambda, s, EModulus::Infinite));
    let vs = dominant_charges_up_to(s, max_rank);
    run_check(format!("∞-hw counts = Kostka [s={s}, rank ≤ {max_rank}]"), &vs, |v| {
        let counts = counts.as_ref().map_err(Clone::clone)?;
        let brute = counts.get(&WeightInf::from_charge(v.as_slice())).copied().unwrap_or(0);
        let (shape, weight) = lambda_mu_of(v, s)?;
        let k = kostka(&shape, &weight);
        Ok(ensure(brute == k, || format!("v={v}: {brute} vertices, K_{{{shape},{weight:?}}} = {k}")))
    })
}

/// Semistandard `e`-highest weight vertices of weight `ν` are counted by `m`.
pub fn semistandard_branching_counts(setup: &Setup, max_rank: u32) -> Result<CheckResult> {
    let s = &setup.charge;
    let counts = grouped_weights(s, max_rank, |lambda| {
        Ok(Symbol::new(lambda.clone(), s.clone())?.is_semistandard() && is_highest_weight(lambda, s, setup.modulus())?)
    })?;
    let weights: Vec<(WeightInf, u64)> = sorted_counts(counts);
    Ok(run_check(format!("semistandard branching = m [{setup}, rank ≤ {max_rank}]"), &weights, |(nu, brute)| {
        let m = count_m(s, nu, setup.e)?;
        Ok(ensure(m == *brute, || format!("ν={nu}: {brute} vertices, m = {m}")))
    }))
}

/// All `e`-highest weight vertices of weight `ν` are counted by `M`.
pub fn full_branching_counts(setup: &Setup, max_rank: u32) -> Result<CheckResult> {
    let s = &setup.charge;
    let counts = grouped_weights(s, max_rank, |lambda| is_highest_weight(lambda, s, setup.modulus()))?;
    let weights: Vec<(WeightInf, u64)> = sorted_counts(counts);
    Ok(run_check(format!("full branching = M [{setup}, rank ≤ {max_rank}]"), &weights, |(nu, brute)| {
        let big_m = count_big_m(s, nu, setup.e)?;
        Ok(ensure(big_m == *brute, || format!("ν={nu}: {brute} vertices, M = {big_m}")))
    }))
}

fn sorted_counts(counts: HashMap<WeightInf, u64>) -> Vec<(WeightInf, u64)> {
    let mut v: Vec<(WeightInf, u64)> = counts.into_iter().collect();
    v.sort_by_key(|(w, _)| w.coeffs().iter().map(|(&j, &a)| (j, a)).collect::<Vec<_>>());
    v
}

/// Symbol → tableau → symbol is the identity on `∞`-highest weight vertices,
/// and every value `≤ v_0` appears in all rows while larger ones miss a row.
pub fn tableau_round_trip(setup: &Setup, max_rank: u32) -> CheckResult {
    let s = &setup.charge;
    let items = pool(setup, max_rank);
    run_check(format!("tableau encoding round trip [s={s}, rank ≤ {max_rank}]"), &items, |lambda| {
        if !is_highest_weight(lambda, s, EModulus::Infinite)? {
            return Ok(Ok(()));
        }
        let (t, v) = hw_symbol_to_tableau(lambda, s)?;
        let (shape, weight) = lambda_mu_of(&v, s)?;
        if t.shape() != shape || t.weight(s.level()) != weight {
            return Ok(Err(format!("{lambda}: tableau has the wrong shape or weight")));
        }
        let back = tableau_to_hw_symbol(&t, s, &v)?;
        if &back != lambda {
            return Ok(Err(format!("{lambda}: round trip gave {back}")));
        }
        let sym = Symbol::new(lambda.clone(), s.clone())?;
        let v0 = v.get(0);
        let top = sym.max_entry();
        for k in v0 - 2..=top {
            let d = (0..s.level()).filter(|&c| sym.row_contains(c, k)).count();
            if (k <= v0) != (d == s.level()) {
                return Ok(Err(format!("{lambda}: value {k} occurs in {d} rows")));
            }
        }
        Ok(Ok(()))
    })
}

/// The level-0 map `ψ` is injective on each `S_t`, lands in totally periodic
/// skew tableaux, satisfies `wt_∞ = Λ_t + wt(ψ)`, peels in step with the
/// symbol, and every intermediate symbol stays semistandard.
pub fn level_zero_bijection(setup: &Setup, max_rank: u32) -> CheckResult {
    let s = &setup.charge;
    let e = setup.e;
    let items: Vec<Multipartition> = pool(setup, max_rank)
        .into_iter()
        .filter(|l| Symbol::new(l.clone(), s.clone()).map(|b| b.is_semistandard()).unwrap_or(false))
        .collect();
    let images: Vec<Option<(Multicharge, Vec<Vec<i64>>)>> = items
        .par_iter()
        .map(|lambda| {
            let sym = Symbol::new(lambda.clone(), s.clone()).ok()?;
            if !sym.is_totally_periodic(e).ok()? {
                return None;
            }
            level_parts(lambda, s, e).ok().map(|(tau, t)| (t, tau.rows))
        })
        .collect();
    let mut seen: BTreeMap<(Multicharge, Vec<Vec<i64>>), usize> = BTreeMap::new();
    let mut duplicates = BTreeSet::new();
    for (k, img) in images.iter().enumerate() {
        if let Some(key) = img {
            if let Some(prev) = seen.insert(key.clone(), k) {
                duplicates.insert(prev);
                duplicates.insert(k);
            }
        }
    }
    let indexed: Vec<usize> = (0..items.len()).collect();
    run_check(format!("level-0 bijection ψ [{setup}, rank ≤ {max_rank}]"), &indexed, |&k| {
        let lambda = &items[k];
        if duplicates.contains(&k) {
            return Ok(Err(format!("{lambda}: ψ is not injective here")));
        }
        let sym = Symbol::new(lambda.clone(), s.clone())?;
        let trace = sym.peel(e)?;
        if !trace.is_totally_periodic(e) {
            return Ok(Ok(()));
        }
        let (tau, t) = level_parts(lambda, s, e)?;
        if !tau.columns_ok() || !tau.is_totally_periodic(e) {
            return Ok(Err(format!("{lambda}: level-0 part is not in Tab^e")));
        }
        let wt = WeightInf::from_charge(t.as_slice()) + tau.weight().to_weight();
        if wt != weight_inf(lambda, s)? {
            return Ok(Err(format!("{lambda}: wt_∞ ≠ Λ_t + wt(ψ)")));
        }
        let sym_forms: Vec<Vec<i64>> = trace.periods.iter().map(|p| p.form.clone()).collect();
        let tab_forms: Vec<Vec<i64>> = tau.peel(e).periods.iter().map(|p| p.form.clone()).collect();
        if sym_forms != tab_forms {
            return Ok(Err(format!("{lambda}: symbol periods {sym_forms:?}, tableau periods {tab_forms:?}")));
        }
        let mut current = sym;
        for _ in &trace.periods {
            current = current.remove_period(e)?;
            if !current.is_semistandard() {
                return Ok(Err(format!("{lambda}: peel leaves the semistandard set at {}", current.lambda())));
            }
        }
        Ok(Ok(()))
    })
}

/// On semistandard `e`-highest weight vertices, `decompose_weight` returns
/// exactly `(s°, Σ ω_M)`.
pub fn decomposition_matches_peel(setup: &Setup, max_rank: u32) -> CheckResult {
    let s = &setup.charge;
    let e = setup.e;
    let items = pool(setup, max_rank);
    run_check(
        format!("ν = Λ_s° + Σω_M is the unique decomposition [{setup}, rank ≤ {max_rank}]"),
        &items,
        |lambda| {
            let sym = Symbol::new(lambda.clone(), s.clone())?;
            if !sym.is_semistandard() || !is_highest_weight(lambda, s, setup.modulus())? {
                return Ok(Ok(()));
            }
            let trace = sym.peel(e)?;
            let mut omega = BTreeMap::new();
            for p in &trace.periods {
                *omega.entry(p.form[0]).or_insert(0) += 1;
            }
            let nu = weight_inf(lambda, s)?;
            let found = decompose_weight(&nu, s.level(), e);
            let ok = found.len() == 1 && found[0].t == trace.final_charge && found[0].omega == omega;
            Ok(ensure(ok, || {
                let got: Vec<String> = found.iter().map(|d| format!("{} {:?}", d.t, d.omega)).collect();
                format!("{lambda}: expected {} {omega:?}, found {got:?}", trace.final_charge)
            }))
        },
    )
}

/// Operator inverses, weight shifts on arrows, degree bounds and deterministic output.
pub fn crystal_sanity(setup: &Setup, max_rank: u32) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for e in [setup.modulus(), EModulus::Infinite] {
        let opts = CrystalOptions::up_to(max_rank);
        let g = generate_crystal(&setup.charge, e, &opts)?;
        let s = &setup.charge;
        let tag = format!("s={s} e={e}, rank ≤ {max_rank}");
        out.push(run_check(format!("ẽ∘f̃ and f̃∘ẽ [{tag}]"), &g.vertices, |v| {
            for i in residues_to_check(&v.lambda, s, e) {
                if let Some(up) = f_tilde(&v.lambda, s, e, i)? {
                    if e_tilde(&up, s, e, i)?.as_ref() != Some(&v.lambda) {
                        return Ok(Err(format!("{}: ẽ_{i} f̃_{i} ≠ id", v.lambda)));
                    }
                }
                if let Some(down) = e_tilde(&v.lambda, s, e, i)? {
                    if f_tilde(&down, s, e, i)?.as_ref() != Some(&v.lambda) {
                        return Ok(Err(format!("{}: f̃_{i} ẽ_{i} ≠ id", v.lambda)));
                    }
                }
            }
            Ok(Ok(()))
        }));
        out.push(run_check(format!("arrows shift weights by -α [{tag}]"), &g.edges, |edge| {
            let (a, b) = (&g.vertices[edge.src], &g.vertices[edge.dst]);
            let inf_ok = b.wt_inf == a.wt_inf.clone() - WeightInf::alpha(edge.content);
            let aff_ok = match (&a.wt_aff, &b.wt_aff, e) {
                (Some(x), Some(y), EModulus::Finite(n)) => *y == x.clone() - WeightAff::alpha(edge.residue, n),
                _ => true,
            };
            let graded = b.rank == a.rank + 1;
            Ok(ensure(inf_ok && aff_ok && graded, || format!("{} → {}", a.lambda, b.lambda)))
        }));
        let mut out_deg: HashMap<(usize, i64), u32> = HashMap::new();
        let mut in_deg: HashMap<(usize, i64), u32> = HashMap::new();
        for edge in &g.edges {
            *out_deg.entry((edge.src, edge.residue)).or_insert(0) += 1;
            *in_deg.entry((edge.dst, edge.residue)).or_insert(0) += 1;
        }
        let ids: Vec<usize> = (0..g.vertices.len()).collect();
        out.push(run_check(format!("per-residue degrees ≤ 1 [{tag}]"), &ids, |&id| {
            let bad = out_deg.iter().chain(&in_deg).any(|(&(v, _), &d)| v == id && d > 1);
            Ok(ensure(!bad, || format!("{}", g.vertices[id].lambda)))
        }));
        let again = generate_crystal(&setup.charge, e, &opts)?;
        let runs = [(g.to_json(), again.to_json()), (g.to_dot(), again.to_dot())];
        out.push(run_check(format!("byte-identical serialization [{tag}]"), &runs, |(a, b)| {
            Ok(ensure(a == b, || "two runs differ".to_string()))
        }));
    }
    Ok(out)
}

/// The dominant charge of a weight, for callers holding an `∞`-highest weight.
pub fn highest_weight_charge(lambda: &Multipartition, s: &Multicharge) -> Result<Option<Multicharge>> {
    Ok(dominant_charge(&weight_inf(lambda, s)?, s.level()))
}
