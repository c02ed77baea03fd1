//! Level-0 tableaux, weight decompositions and branching multiplicities.
//!
//!     cargo run --example branching

use fock_crystal::crystal::weight_inf;
use fock_crystal::decomposition::{count_big_m, count_m, decompose_weight, level_parts};
use fock_crystal::graph::{generate_crystal, CrystalOptions};
use fock_crystal::{EModulus, Multicharge, Multipartition, Symbol};

fn main() -> fock_crystal::Result<()> {
    let lambda: Multipartition = "3.1|3.1|2.2.1.1".parse()?;
    let s = Multicharge(vec![2, 3, 6]);
    let (tau, t) = level_parts(&lambda, &s, 2)?;
    println!("{lambda} with s = {s} splits over t = {t} with level-0 part\n{tau}");
    let peel = tau.peel(2);
    let maxima: Vec<i64> = peel.periods.iter().map(|p| p.form[0]).collect();
    println!("periods removed with maxima {maxima:?}");

    let nu = weight_inf(&lambda, &s)?;
    for d in decompose_weight(&nu, 3, 2) {
        println!("ν = {nu}\n  = Λ_t with t = {} plus ω coefficients {:?}", d.t, d.omega);
    }

    // Multiplicities for the e-highest weights met among semistandard vertices,
    // which form the component of ∅ in the e = ∞ crystal.
    let s = Multicharge(vec![0, 1]);
    let graph = generate_crystal(&s, EModulus::Finite(2), &CrystalOptions::up_to(5))?;
    println!("\ns = {s}, e = 2, rank ≤ 5");
    for v in graph.highest_weight_vertices() {
        if !Symbol::new(v.lambda.clone(), s.clone())?.is_semistandard() {
            continue;
        }
        println!(
            "  {:<10} m = {}  M = {}",
            v.lambda.to_string(),
            count_m(&s, &v.wt_inf, 2)?,
            count_big_m(&s, &v.wt_inf, 2)?
        );
    }
    Ok(())
}
