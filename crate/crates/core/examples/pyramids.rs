//! Pyramid combinatorics: rows, columns, Kazhdan degrees, m and the character ψ.

use walgebra::pyramid::Pyramid;

fn main() -> walgebra::Result<()> {
    for spec in ["1,3,2,1", "subreg:5"] {
        let p: Pyramid = spec.parse()?;
        println!("{spec}: {p}");
        println!("  N={} rows={} cols={}", p.n_blocks(), p.n_rows(), p.n_cols());
        for b in 1..=p.n_blocks() {
            println!("  block {b}: row {} col {}", p.row(b), p.col(b));
        }
        let m: Vec<String> = p.m_basis().iter().map(|g| g.to_string()).collect();
        println!("  m = span{{{}}}", m.join(", "));
        let psi = p.psi();
        let supp: Vec<String> = psi.support().map(|g| g.to_string()).collect();
        println!("  ψ = 1 on {}", supp.join(", "));
        println!("  rho: {:?}", (1..=p.n_cols()).map(|r| p.rho(r)).collect::<Vec<_>>());
        if p.n_cols() > 1 {
            println!("  drop one column: {}", p.truncate(1)?);
        }
    }
    Ok(())
}
