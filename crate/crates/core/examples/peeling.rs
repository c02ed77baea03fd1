//! Periods, peeling and total periodicity.
//!
//!     cargo run --example peeling

use fock_crystal::crystal::is_highest_weight;
use fock_crystal::symbol::Symbol;
use fock_crystal::{EModulus, Multicharge};

fn main() -> fock_crystal::Result<()> {
    let sym = Symbol::new("3.3.1|4.3.1|4.4.2".parse()?, Multicharge(vec![-1, -1, 1]))?;
    match sym.find_period(5)? {
        Some(p) => println!("5-period {:?} at {p}", p.form()),
        None => println!("no 5-period"),
    }

    for (lambda, charge, e) in
        [("2.2.2.1.1|2", vec![4, 5], 4), ("-|2.2|2.2.1.1.1.1", vec![3, 4, 6], 4), ("3|2.2.2|2.1", vec![0, -1, 1], 4)]
    {
        let charge = Multicharge(charge);
        let sym = Symbol::new(lambda.parse()?, charge.clone())?;
        let trace = sym.peel(e)?;
        println!("\n{lambda} with s = {charge}, e = {e}");
        for step in &trace.periods {
            println!("  remove {:?} -> {} with charge {}", step.form, step.lambda_after, step.charge_after);
        }
        println!("  stops at {} with charge {}", trace.final_lambda, trace.final_charge);
        println!("  totally periodic: {}", trace.is_totally_periodic(e));
        println!("  highest weight:   {}", is_highest_weight(sym.lambda(), &charge, EModulus::Finite(e))?);
        assert_eq!(trace.replay()?, sym);
    }
    Ok(())
}
