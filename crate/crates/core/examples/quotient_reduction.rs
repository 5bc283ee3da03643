//! Reduction in U_ℏ(gl_N) ⊗ (C^N)^{⊗t} / m^ψ and the Whittaker test.

use walgebra::algebra::{AlgebraElement, GenIdx};
use walgebra::pyramid::Pyramid;
use walgebra::quotient::QuotientSpace;

fn main() -> walgebra::Result<()> {
    let space = QuotientSpace::new(Pyramid::subregular(3)?)?;
    let alg = space.algebra().clone();

    // E32 ∈ m acts on 1 ⊗ v2 through ψ and through the vector slot
    let e32 = AlgebraElement::generator(&alg, 3, 2)?;
    let v2 = space.vector(&[2])?;
    println!("E32 · (1⊗v2) = {}", space.act_left(&e32, &v2)?);
    println!("ad E32 (1⊗v2) = {}", space.ad_action(GenIdx::new(3, 2), &v2)?);

    let v3 = space.vector(&[3])?;
    let chk = space.is_whittaker(&v3)?;
    println!("1⊗v3 Whittaker: {}", chk.passed());
    let chk = space.is_whittaker(&v2)?;
    if let Some((g, r)) = &chk.witness {
        println!("1⊗v2 fails at {g}: residue {r}");
    }

    let w = space.element(&e32, &[1, 2])?;
    println!("E32 ⊗ v1 ⊗ v2 ≡ {w}");
    Ok(())
}
