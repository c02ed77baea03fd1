//! Highest weight symbols for e = ∞ as tableaux, counted by Kostka numbers.
//!
//!     cargo run --example tableaux

use fock_crystal::decomposition::{hw_symbol_to_tableau, kostka, lambda_mu_of, tableau_to_hw_symbol};
use fock_crystal::graph::{generate_crystal, CrystalOptions};
use fock_crystal::{EModulus, Multicharge, Multipartition};

fn main() -> fock_crystal::Result<()> {
    let lambda: Multipartition = "-|1.1.1|1|1.1".parse()?;
    let s = Multicharge(vec![0, 2, 3, 5]);
    let (t, v) = hw_symbol_to_tableau(&lambda, &s)?;
    let (shape, weight) = lambda_mu_of(&v, &s)?;
    println!("{lambda} has weight Λ_v with v = {v}");
    println!("tableau of shape {shape} and weight {weight:?}:\n{t}");
    assert_eq!(tableau_to_hw_symbol(&t, &s, &v)?, lambda);
    println!("Kostka number for this shape and weight: {}", kostka(&shape, &weight));

    // Count ∞-highest weight vertices per weight and compare.
    let s = Multicharge(vec![0, 1, 1]);
    let graph = generate_crystal(&s, EModulus::Infinite, &CrystalOptions::up_to(4))?;
    let mut by_v = std::collections::BTreeMap::<Multicharge, u64>::new();
    for vertex in graph.highest_weight_vertices() {
        let (_, v) = hw_symbol_to_tableau(&vertex.lambda, &s)?;
        *by_v.entry(v).or_default() += 1;
    }
    println!("\ns = {s}, rank ≤ 4");
    for (v, count) in by_v {
        let (shape, weight) = lambda_mu_of(&v, &s)?;
        println!("  v = {:<10} vertices {count}  K = {}", v.to_string(), kostka(&shape, &weight));
    }
    Ok(())
}
