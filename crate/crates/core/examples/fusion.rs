//! Fusing Whittaker vectors: v_a ⋆ v_b and associativity on triples.

use walgebra::tensor_j::fuse_power_j;
use walgebra::whittaker::Subregular;

fn main() -> walgebra::Result<()> {
    let sub = Subregular::new(3)?;
    let basis = sub.canonical_basis()?;
    let f = sub.space().fuse(basis.vector(1), basis.vector(2))?;
    println!("v1 ⋆ v2 = {f}");
    println!("b-reduced: {}", sub.space().reduce_mod_b_left(&f)?);

    let triples = [(1, 2, 3), (3, 1, 2), (2, 2, 1)];
    let rep = fuse_power_j(&sub, &basis, &triples)?;
    println!("associativity failures: {:?}", rep.failures);
    Ok(())
}
