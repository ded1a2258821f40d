use qtopo::homcob::{HomologyCobordism, TwistWord};

fn main() -> qtopo::Result<()> {
    let f: TwistWord = "word g=1 twists=a1,-b1".parse()?;
    let h: TwistWord = "word g=1 twists=b1".parse()?;
    let (cf, ch) = (f.mapping_class()?.mapping_cylinder(), h.mapping_class()?.mapping_cylinder());
    let composite = cf.compose(&ch)?;
    println!("{composite}");
    let product = f.mapping_class()?.then(&h.mapping_class()?)?.mapping_cylinder();
    println!("equals cylinder of the product: {}", composite.equivalent(&product));
    println!("homology cylinder: {}", composite.is_homology_cylinder());

    let torsion: HomologyCobordism =
        "cobordism g=1 rel=[0;0;2] mplus=[1,0;0,1;0,0] mminus=[1,0;0,1;0,0]".parse()?;
    println!(
        "{torsion}: invariants {:?}, homology cobordism {}",
        torsion.group_invariants(),
        torsion.is_homology_cobordism()
    );
    Ok(())
}
