use qtopo::jacobi::{weight_series, WeightData};
use qtopo::verify::square_pair;

fn main() -> qtopo::Result<()> {
    // Both legs are built from the same integer series.
    let series = [1, -2, 0, 5, 3, -1];
    let w = WeightData::epsilon();
    let (x, c) = square_pair(&series, 5, &w)?;
    println!("Habiro leg: {}", x.taylor_at_one());
    println!("weight leg: {}", weight_series(&w, &c, 6));
    Ok(())
}
