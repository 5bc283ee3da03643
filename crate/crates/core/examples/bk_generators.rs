//! Brundan–Kleshchev elements T_{ij;x}^{(r)} and their truncations.

use walgebra::bk::BkContext;
use walgebra::pyramid::Pyramid;

fn main() -> walgebra::Result<()> {
    let bk = BkContext::with_default_order(Pyramid::subregular(4)?)?;
    for t in bk.subregular_w_generators()? {
        println!("{} = {}", t.label(), t.value);
    }

    let t = bk.truncated_t(1, 2, 2, 1, 2)?;
    println!("{} = {}", t.label(), t.value);

    let small = BkContext::with_default_order("1,3,2,1".parse()?)?;
    let t = small.t_element(2, 2, 1, 2)?;
    println!("on 1,3,2,1: {} has {} terms, degree {:?}", t.label(), t.value.len(), t.degree);
    Ok(())
}
