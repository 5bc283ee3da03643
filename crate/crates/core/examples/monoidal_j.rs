//! J on C^N ⊗ C^N, its semi-classical limit and the comparison with the closed forms.

use std::env;

use walgebra::tensor_j::{compare_semiclassical, compute_j, semiclassical_limit};
use walgebra::whittaker::Subregular;

fn main() -> walgebra::Result<()> {
    let n: usize = env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let sub = Subregular::new(n)?;
    let basis = sub.canonical_basis()?;
    let c = compute_j(&sub, &basis)?;
    for (((a, l), (i, j)), y) in &c.j.entries {
        println!("c[{i}{j} -> {a}{l}] = {y}");
    }
    println!("structure ok: {}", c.j.structure().passed());

    let lim = semiclassical_limit(&c.j)?;
    println!("j = {}", lim.render());
    let cmp = compare_semiclassical(&lim)?;
    println!("constant part is j_c: {}", cmp.constant_part_matches_jc);
    println!("closed form match: {}", cmp.matched);
    for d in &cmp.diffs {
        println!("  {}: computed {} / statement {} / proof {}", d.legs, d.computed, d.statement, d.proof);
    }
    Ok(())
}
