//! Key expansion of a flagged refined skew Grothendieck polynomial.
//!
//! ```text
//! cargo run --example key_expansion
//! ```

use setvalued::expansions::{grothendieck_flagged, key_expansion_G, PsiTable};
use setvalued::shape::{Flag, SkewShape};

fn main() -> anyhow::Result<()> {
    let shape = SkewShape::from_parts(vec![2, 2, 0], vec![1, 0, 0])?;
    let phi = Flag::new(vec![1, 3, 3])?;
    let n = 3;

    let expansion = key_expansion_G(&shape, &phi, n)?;
    println!("G_{shape}(X_{phi}; t) = {expansion}");
    println!("latex: {}", expansion.to_latex());
    assert_eq!(expansion.to_poly(), grothendieck_flagged(&shape, &phi)?);

    // Each term comes from one class of flagged set-valued tableaux.
    let classes = PsiTable::for_flag(&shape, &phi)?.classify(&phi, n)?;
    for class in &classes.classes {
        println!(
            "\nex = {}, θ̃ = {}, label κ_{}, {} member(s), compatible tableau:\n{}",
            class.key.excess,
            class.key.shape,
            class.label,
            class.members.len(),
            class.key.compatible
        );
        for m in &class.members {
            println!("  {m}");
        }
    }
    Ok(())
}
