//! Expansions of skew generating functions in the bases `s_λ`, `g_λ` and
//! `G_λ`.
//!
//! ```text
//! cargo run --example k_bases
//! ```

use setvalued::expansions::{default_degree_cap, expand_in_G, expand_in_g, schur_expansion, Source};
use setvalued::shape::SkewShape;

fn main() -> anyhow::Result<()> {
    // RPP generating function g̃ of (3,2)/(1) in three variables.
    let shape = SkewShape::from_parts(vec![3, 2, 0], vec![1, 0, 0])?;
    println!("g̃_{shape} = {}", expand_in_g(&shape, 3, Source::Dual)?);
    println!("          = {}", schur_expansion(&shape, 3, Source::Dual)?);

    // RG of (2,2)/(1) in two variables, in both K-theoretic bases.
    let shape = SkewShape::from_parts(vec![2, 2], vec![1])?;
    println!("RG_{shape} = {}", expand_in_g(&shape, 2, Source::Grothendieck)?);
    let cap = default_degree_cap(&shape);
    let big = expand_in_G(&shape, 2, Source::Grothendieck, cap)?;
    println!("RG_{shape} = {big}   (terms through x-degree {cap})");
    println!("RG_{shape} = {}", schur_expansion(&shape, 2, Source::Grothendieck)?);
    Ok(())
}
