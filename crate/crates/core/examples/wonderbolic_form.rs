//! The form ω on w = m ⊕ b, its determinant, and j_c.

use walgebra::geometry::{jc_closed_form, jc_recursive, verify_inverse};

fn main() -> walgebra::Result<()> {
    for n in 3..=6 {
        let r = verify_inverse(n)?;
        println!(
            "N={n}: dim w={} det={} inverse(closed)={} inverse(recursive)={}",
            r.dim_w, r.determinant, r.inverse_ok_closed, r.inverse_ok_recursive
        );
    }
    println!("j_c(4) closed    = {}", jc_closed_form(4)?.render());
    println!("j_c(4) recursive = {}", jc_recursive(4)?.render());
    Ok(())
}
