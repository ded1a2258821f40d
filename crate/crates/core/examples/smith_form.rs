use qtopo::linalg::{smith_normal_form, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&a);
    println!("A = {a}");
    println!("diagonal {:?}", s.diagonal.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("L A R == D: {}", s.left.mul(&a).mul(&s.right) == s.diagonal_matrix());
}
