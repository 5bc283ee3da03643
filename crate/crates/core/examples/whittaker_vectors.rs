//! Subregular Whittaker vectors for C^N and their canonical form.

use std::env;

use walgebra::whittaker::Subregular;

fn main() -> walgebra::Result<()> {
    let n: usize = env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let sub = Subregular::new(n)?;
    for (c, ok) in sub.t12_candidates()? {
        println!("T12 exponent {}: whittaker={ok}", c.label());
    }
    let tilde = sub.tilde_basis()?;
    let (canon, _) = sub.canonicalize(&tilde)?;
    for i in 1..=n {
        println!("ṽ{i} = {}", tilde.vector(i));
        println!("v{i}ψ = {}", canon.vector(i));
    }
    println!("canonical: {}", sub.is_canonical(&canon)?);
    Ok(())
}
