//! Demazure operators, key polynomials and key expansions of polynomials.
//!
//! ```text
//! cargo run --example polynomials
//! ```

use std::collections::BTreeMap;

use setvalued::expansions::{schur_poly, stable_G_n};
use setvalued::keys::{b_word, demazure_op, key_expand, key_polynomial, word_set_w};
use setvalued::poly::Poly;
use setvalued::shape::{Composition, Flag, Partition};

fn main() -> anyhow::Result<()> {
    println!("T_1(x1) = {}", demazure_op(&Poly::x(1), 1)?);
    for alpha in [vec![0, 2, 1], vec![1, 0, 2], vec![2, 0, 1]] {
        let a = Composition::new(alpha);
        println!("κ_{a} = {}", key_polynomial(&a));
    }

    let lambda = Partition::new(vec![2, 1])?;
    println!("s_(2,1) = {}", keys(&key_expand(&schur_poly(&lambda, 3), 3)?));
    println!("G_(1)(x1,x2) = {}", stable_G_n(&Partition::new(vec![1])?, 2));

    let alpha = Composition::new(vec![1, 2, 0, 1]);
    println!("b{alpha} = {:?}", b_word(&alpha));
    for w in word_set_w(&alpha, &Flag::standard(4))? {
        println!("  W word {w:?}");
    }
    Ok(())
}

fn keys(terms: &BTreeMap<Composition, i64>) -> String {
    terms
        .iter()
        .map(|(a, c)| if *c == 1 { format!("κ_{a}") } else { format!("{c}κ_{a}") })
        .collect::<Vec<_>>()
        .join(" + ")
}
