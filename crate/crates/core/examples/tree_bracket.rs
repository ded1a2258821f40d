use qtopo::linalg::rat;
use qtopo::symplectic::{BasisTree, SymplecticLattice, TreeCombination, TreeReducer};

fn main() -> qtopo::Result<()> {
    let h = SymplecticLattice::new(2);
    let (a1, a2, b1, b2) = (0, 1, 2, 3);
    let single = |t: BasisTree| {
        let mut c = TreeCombination::zero(h);
        c.add_tree(rat(1), &t);
        c
    };
    let reducer = TreeReducer::new(h);
    let x = single(BasisTree::strut(a1, a1));
    let y = single(BasisTree::strut(b1, b1));
    println!("[{x}, {y}] = {}", reducer.bracket(&x, &y)?);
    let x = single(BasisTree::strut(a1, a2));
    let y = single(BasisTree::strut(b2, b2));
    println!("[{x}, {y}] = {}", reducer.bracket(&x, &y)?);
    let t = single(BasisTree::tripod(a1, b2, a2));
    let s = single(BasisTree::strut(b1, b2));
    println!("[{t}, {s}] = {}", reducer.bracket(&t, &s)?);
    Ok(())
}
