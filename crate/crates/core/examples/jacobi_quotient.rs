use qtopo::jacobi::QuotientBasis;

fn main() -> qtopo::Result<()> {
    for degree in 0..=3 {
        let q = QuotientBasis::generate(degree, 3)?;
        println!(
            "degree {degree}: {} diagrams, {} relations, dimension {}",
            q.diagrams().len(),
            q.relations().len(),
            q.dimension()
        );
        for d in q.basis_diagrams() {
            println!("  {d}");
        }
    }
    Ok(())
}
