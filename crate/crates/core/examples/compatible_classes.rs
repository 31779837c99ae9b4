//! A class of flagged set-valued tableaux sharing uncrowding data, its
//! Demazure character, and how it falls short of the flagged Schur
//! polynomial of the uncrowded shape.
//!
//! ```text
//! cargo run --example compatible_classes
//! ```

use std::collections::BTreeMap;

use setvalued::expansions::{flagged_schur, PsiTable};
use setvalued::keys::key_expand;
use setvalued::poly::Poly;
use setvalued::shape::{Composition, Flag, SkewShape};
use setvalued::tableau::SetValuedTableau;

fn main() -> anyhow::Result<()> {
    let shape = SkewShape::from_parts(vec![4, 3, 2], vec![2, 1, 0])?;
    let phi = Flag::new(vec![2, 3, 4])?;
    let t = SetValuedTableau::from_lists(
        shape.clone(),
        vec![vec![vec![1], vec![1, 2]], vec![vec![1, 2], vec![2, 3]], vec![vec![1], vec![3]]],
    )?;

    let classification = PsiTable::for_flag(&shape, &phi)?.classify(&phi, 4)?;
    println!("{} flagged SVT in {} classes", classification.size(), classification.classes.len());

    let groups = classification.by_recording();
    let (key, classes) =
        groups.iter().find(|(_, cl)| cl.iter().any(|c| c.members.contains(&t))).expect("T is classified");
    println!("ex = {}, θ̃ = {}, Q″ = {}", key.0, key.1, key.2);
    for c in classes {
        println!("  κ_{} from {} tableaux:", c.label, c.members.len());
        for m in &c.members {
            println!("    {m}");
        }
    }

    let sum: Poly = classes.iter().map(|c| c.character(4)).sum();
    let schur = flagged_schur(&classes[0].key.shape, &classes[0].evolved_flag)?;
    println!("class characters: {}", keys(&key_expand(&sum, 4)?));
    println!("s_θ̃(X_Φ̃):        {}", keys(&key_expand(&schur, 4)?));
    Ok(())
}

fn keys(terms: &BTreeMap<Composition, i64>) -> String {
    terms
        .iter()
        .map(|(a, c)| if *c == 1 { format!("κ_{a}") } else { format!("{c}κ_{a}") })
        .collect::<Vec<_>>()
        .join(" + ")
}
