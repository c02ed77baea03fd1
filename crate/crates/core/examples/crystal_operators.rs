//! Reduced i-words, Kashiwara operators and weights.
//!
//!     cargo run --example crystal_operators

use fock_crystal::crystal::{e_tilde, eps_phi, f_tilde, reduced_i_word, weight_aff, weight_inf};
use fock_crystal::{EModulus, Multicharge, Multipartition};

fn main() -> fock_crystal::Result<()> {
    let lambda: Multipartition = "2.1|1".parse()?;
    let s = Multicharge(vec![0, 1]);
    let e = EModulus::Finite(3);
    println!("λ = {lambda}, s = {s}, e = {e}");
    for i in 0..3 {
        let word = reduced_i_word(&lambda, &s, e, i)?;
        let (eps, phi) = eps_phi(&lambda, &s, e, i)?;
        let up = f_tilde(&lambda, &s, e, i)?.map_or("0".to_string(), |m| m.to_string());
        let down = e_tilde(&lambda, &s, e, i)?.map_or("0".to_string(), |m| m.to_string());
        println!("  i={i}: reduced word {:<4} ε={eps} φ={phi}  f̃ -> {up:<8} ẽ -> {down}", word.tags());
    }
    println!("wt_e = {}", weight_aff(&lambda, &s, 3)?);
    println!("wt_∞ = {}", weight_inf(&lambda, &s)?);

    // Operators at e = ∞ are indexed by contents.
    let inf = EModulus::Infinite;
    let grown = f_tilde(&lambda, &s, inf, 2)?;
    println!("f̃_2 at e = ∞: {}", grown.map_or("0".into(), |m| m.to_string()));
    Ok(())
}
