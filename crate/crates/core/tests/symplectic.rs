use qtopo::symplectic::{BasisTree, SymplecticLattice, TreeCombination, TreeReducer};

fn generators(h: SymplecticLattice) -> Vec<TreeCombination> {
    let n = h.rank();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x..n {
            out.push(TreeCombination::single(h, &BasisTree::strut(x, y)));
        }
    }
    for x in 0..n {
        for y in x..n {
            for z in y..n {
                let c = TreeCombination::single(h, &BasisTree::tripod(x, y, z));
                if !c.is_zero() {
                    out.push(c);
                }
            }
        }
    }
    out
}

#[test]
fn jacobi_identity_on_low_degree_generators() {
    for g in 1..=2 {
        let h = SymplecticLattice::new(g);
        let red = TreeReducer::new(h);
        let gens = generators(h);
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let ab_c = red.bracket(&red.bracket(a, b).unwrap(), c).unwrap();
                    let bc_a = red.bracket(&red.bracket(b, c).unwrap(), a).unwrap();
                    let ca_b = red.bracket(&red.bracket(c, a).unwrap(), b).unwrap();
                    let sum = ab_c.add(&bc_a).add(&ca_b);
                    assert!(red.is_zero_class(&sum).unwrap());
                }
            }
        }
    }
}

#[test]
fn bracket_is_antisymmetric() {
    let h = SymplecticLattice::new(2);
    let red = TreeReducer::new(h);
    let gens = generators(h);
    let nonzero = gens
        .iter()
        .flat_map(|a| gens.iter().map(move |b| (a, b)))
        .filter(|(a, b)| !red.bracket(a, b).unwrap().is_zero())
        .count();
    assert!(nonzero > 0);
    for a in &gens {
        assert!(red.bracket(a, a).unwrap().is_zero());
        for b in &gens {
            let s = red.bracket(a, b).unwrap().add(&red.bracket(b, a).unwrap());
            assert!(red.is_zero_class(&s).unwrap());
        }
    }
}
