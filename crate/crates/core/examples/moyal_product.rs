use qtopo::symplectic::{moyal_product, poisson_bracket, PolynomialObservable};

fn main() -> qtopo::Result<()> {
    let p = PolynomialObservable::parse("poly g=1 terms=1*x[a1]^2")?;
    let q = PolynomialObservable::parse("poly g=1 terms=1*x[b1]^2")?;
    let pq = moyal_product(&p, &q, 4)?;
    let qp = moyal_product(&q, &p, 4)?;
    println!("p * q = {pq}");
    println!("q * p = {qp}");
    println!("commutator = {}", pq.sub(&qp)?);
    println!("t {{p, q}} = {}", poisson_bracket(&p, &q)?.mul(&PolynomialObservable::parse("poly g=1 terms=1*t")?)?);
    Ok(())
}
