use qtopo::jacobi::{weight_series, weight_system, DiagramCombination, JacobiDiagram, WeightData};
use qtopo::linalg::rat;

fn main() -> qtopo::Result<()> {
    for w in [WeightData::epsilon(), WeightData::sl2()] {
        let theta = JacobiDiagram::theta();
        println!("{}: W(theta) = {}", w.name(), weight_system(&w, &theta));
        println!("{}: W(theta^2) = {}", w.name(), weight_system(&w, &JacobiDiagram::theta_power(2)));
        let mut c = DiagramCombination::one(3);
        c.try_add_term(rat(1), &theta)?;
        println!("{}: series of 1 + theta = {}", w.name(), weight_series(&w, &c, 4));
    }
    Ok(())
}
