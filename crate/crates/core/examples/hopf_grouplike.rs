use qtopo::jacobi::{coproduct, diagram_mul, DiagramAlgebra, DiagramCombination, JacobiDiagram};

fn main() -> qtopo::Result<()> {
    let alg = DiagramAlgebra::new(3);
    let theta = DiagramCombination::single(JacobiDiagram::theta(), 3);
    let e = theta.exp()?;
    println!("exp(theta) = {e}");
    println!("group-like: {}", alg.is_group_like(&e, 3)?);
    let s = DiagramCombination::one(3).add(&theta);
    println!("1 + theta group-like: {}", alg.is_group_like(&s, 3)?);
    println!("coproduct of theta^2 has {} terms", coproduct(&diagram_mul(&theta, &theta).product).terms().len());
    Ok(())
}
