//! Symbols, truncations and reading words.
//!
//!     cargo run --example symbols

use fock_crystal::symbol::{charge_reduction_steps, Symbol};
use fock_crystal::{Multicharge, Multipartition};

fn main() -> fock_crystal::Result<()> {
    let lambda: Multipartition = "3|2.2.2|2.1".parse()?;
    let sym = Symbol::new(lambda, Multicharge(vec![1, 0, 2]))?;
    println!("symbol of {} with charge {}:", sym.lambda(), sym.charge());
    print!("{sym}");

    let sym = Symbol::new("3.3.1|4.3.1|4.4.2".parse()?, Multicharge(vec![-1, -1, 1]))?;
    println!("\nrows truncated to h_c + 5 entries:");
    for (c, row) in sym.truncated(5).iter().enumerate().rev() {
        println!("  c={c}: {row:?}");
    }
    let word: Vec<i64> = sym.reading_word(5).iter().map(|l| l.value).collect();
    println!("reading word: {word:?}");

    println!("\nreducing (5,3,5,0,1) modulo 3:");
    for s in charge_reduction_steps(&"5,3,5,0,1".parse()?, 3)? {
        println!("  {s}");
    }
    Ok(())
}
