//! PBW normal form in U_ℏ(gl_3): products, commutators and JSON round-trips.

use walgebra::algebra::{q, Algebra, AlgebraElement};

fn main() -> walgebra::Result<()> {
    let alg = Algebra::lex(3);
    let e = |i, j| AlgebraElement::generator(&alg, i, j);

    let (e12, e21, e11) = (e(1, 2)?, e(2, 1)?, e(1, 1)?);
    // E21 E12 is out of order in the lexicographic PBW basis
    println!("E12·E21 = {}", &e12 * &e21);
    println!("E21·E12 = {}", &e21 * &e12);
    println!("[E12, E21] = {}", e12.commutator(&e21)?);

    let x = &(&e21 * &e11) + &AlgebraElement::hbar(&alg);
    let sq = &x * &x;
    println!("(E21 E11 + ℏ)^2 = {sq}");
    println!("  at ℏ=0: {}", sq.eval_hbar(&q(0)));

    let json = sq.to_json_string();
    let back = AlgebraElement::from_json_str(&alg, &json)?;
    assert_eq!(back, sq);
    println!("json: {json}");
    Ok(())
}
