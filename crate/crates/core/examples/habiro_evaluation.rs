use qtopo::habiro::HabiroElement;
use qtopo::poly::IntPoly;

fn main() -> qtopo::Result<()> {
    // 1 + q(1-q) + q^2(1-q)(1-q^2)
    let fs = [IntPoly::from_i64(&[1]), IntPoly::from_i64(&[0, 1]), IntPoly::from_i64(&[0, 0, 1])];
    let x = HabiroElement::from_factorial_series(&fs, 5)?;
    println!("{x}");
    for n in 1..=6 {
        println!("ev at order {n}: {}", x.evaluate_at_root(n)?);
    }
    // Terms past index n - 1 vanish at order n, so a level bounds the reachable orders.
    match x.evaluate_at_root(7) {
        Err(e) => println!("order 7: {e}"),
        Ok(v) => println!("order 7: {v}"),
    }
    Ok(())
}
