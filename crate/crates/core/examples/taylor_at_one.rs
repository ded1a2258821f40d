use qtopo::habiro::{q_pochhammer, HabiroElement};

fn main() {
    for k in 0..=5 {
        let p = HabiroElement::from_poly(&q_pochhammer(k), 5);
        let t = p.taylor_at_one();
        println!("(q;q)_{k} = {t}  valuation {:?}", t.valuation());
    }
}
