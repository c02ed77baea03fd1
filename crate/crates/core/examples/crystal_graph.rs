//! A crystal truncation in Graphviz form.
//!
//!     cargo run --example crystal_graph -- 0,1 3 4 | dot -Tsvg > crystal.svg

use fock_crystal::graph::{generate_crystal, CrystalOptions};
use fock_crystal::{EModulus, Multicharge, Multipartition};

fn main() -> fock_crystal::Result<()> {
    let mut args = std::env::args().skip(1);
    let charge: Multicharge = args.next().unwrap_or_else(|| "0,1".into()).parse()?;
    let e: EModulus = args.next().unwrap_or_else(|| "3".into()).parse()?;
    let max_rank: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);

    let graph = generate_crystal(&charge, e, &CrystalOptions::up_to(max_rank))?;
    let component = graph.component_of(&Multipartition::empty(charge.level()))?;
    eprintln!(
        "{} vertices, {} in the component of the empty multipartition, {} highest weight overall",
        graph.vertices.len(),
        component.vertices.len(),
        graph.highest_weight_vertices().count()
    );
    print!("{}", component.to_dot());
    Ok(())
}
