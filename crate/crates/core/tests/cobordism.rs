use proptest::prelude::*;
use qtopo::homcob::{HomologyCobordism, MappingClass, Twist, TwistWord};
use qtopo::linalg::{smith_normal_form, IntMatrix};

fn twist(basis: usize, inverse: bool) -> Twist {
    Twist { basis, inverse }
}

#[test]
fn transvection_along_a1() {
    let t = MappingClass::dehn_twist(1, &[1, 0]).unwrap();
    // Columns are images: a1 -> a1, b1 -> b1 - a1.
    assert_eq!(t.matrix(), &IntMatrix::from_rows(&[vec![1, -1], vec![0, 1]]));
    assert!(!t.is_torelli());
    assert_eq!(MappingClass::dehn_twist(1, &[0, 0]).unwrap(), MappingClass::identity(1));
}

#[test]
fn inverse_twists_cancel() {
    let w = MappingClass::twist_word(2, &[twist(1, false), twist(1, true)]).unwrap();
    assert!(w.is_torelli());
    assert!(w.mapping_cylinder().is_homology_cylinder());
}

#[test]
fn predicates_on_standard_examples() {
    let id = HomologyCobordism::identity_cylinder(2);
    assert!(id.is_homology_cobordism() && id.is_homology_cylinder());
    let t = MappingClass::dehn_twist(1, &[1, 0]).unwrap().mapping_cylinder();
    assert!(t.is_homology_cobordism() && !t.is_homology_cylinder());
    let torsion: HomologyCobordism = "cobordism g=1 rel=[0;0;2] mplus=[1,0;0,1;0,0] mminus=[1,0;0,1;0,0]"
        .parse()
        .unwrap();
    assert!(!torsion.is_homology_cobordism() && !torsion.is_homology_cylinder());
}

#[test]
fn identity_is_a_unit() {
    let t = MappingClass::dehn_twist(1, &[1, 1]).unwrap().mapping_cylinder();
    let id = HomologyCobordism::identity_cylinder(1);
    assert!(id.compose(&t).unwrap().equivalent(&t));
    assert!(t.compose(&id).unwrap().equivalent(&t));
}

#[test]
fn word_text_round_trip() {
    let w: TwistWord = "word g=2 twists=a1,-b2,a2".parse().unwrap();
    assert_eq!(w.to_string(), "word g=2 twists=a1,-b2,a2");
    assert!("word g=1 twists=a2".parse::<TwistWord>().is_err());
}

#[test]
fn smith_examples() {
    let d = |rows: &[Vec<i64>]| smith_normal_form(&IntMatrix::from_rows(rows)).diagonal;
    let as_i64 = |v: Vec<num_bigint::BigInt>| v.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
    assert_eq!(as_i64(d(&[vec![2, 0], vec![0, 3]])), [1, 6]);
    assert_eq!(as_i64(d(&[vec![0, 0], vec![0, 0]])), [0, 0]);
    // gcd of entries is 2 and |det| = 8.
    assert_eq!(as_i64(d(&[vec![2, 4], vec![6, 8]])), [2, 4]);
}

fn word(genus: usize) -> impl Strategy<Value = Vec<Twist>> {
    prop::collection::vec((0..2 * genus, any::<bool>()), 0..=6)
        .prop_map(|w| w.into_iter().map(|(basis, inverse)| Twist { basis, inverse }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cylinders_compose_like_matrices(f in word(2), h in word(2)) {
        let f = MappingClass::twist_word(2, &f).unwrap();
        let h = MappingClass::twist_word(2, &h).unwrap();
        let composite = f.mapping_cylinder().compose(&h.mapping_cylinder()).unwrap();
        prop_assert!(composite.equivalent(&f.then(&h).unwrap().mapping_cylinder()));
        prop_assert!(composite.is_homology_cobordism());
    }

    #[test]
    fn twist_words_are_symplectic(w in word(3)) {
        let m = MappingClass::twist_word(3, &w).unwrap();
        prop_assert!(MappingClass::new(3, m.matrix().clone()).is_ok());
    }
}
