//! Crystal operators on set-valued tableaux and a Demazure crystal, with the
//! crystal graph written as Graphviz DOT.
//!
//! ```text
//! cargo run --example crystal_graph > svt.dot && dot -Tsvg svt.dot -o svt.svg
//! ```

use setvalued::crystal::{character, crystal_graph_dot, demazure_generate, Crystal, OrZero};
use setvalued::keys::key_polynomial;
use setvalued::shape::{Composition, Flag, Partition, SkewShape};
use setvalued::tableau::enumerate_svt;

fn main() -> anyhow::Result<()> {
    // B_{s1 s2}(2,1,0) and its character.
    let lambda = Partition::new(vec![2, 1, 0])?;
    let b = demazure_generate(&lambda, &[1, 2], 3)?;
    eprintln!("B_(s1 s2)(2,1,0) has {} elements", b.elements.len());
    let alpha = Composition::new(vec![0, 2, 1]);
    assert_eq!(character(b.elements.iter(), 3), key_polynomial(&alpha));
    eprintln!("character = κ_{alpha} = {}", key_polynomial(&alpha));

    // SVT on (2,2)/(1) with letters ≤ 3 and one extra entry.
    let shape = SkewShape::from_parts(vec![2, 2], vec![1])?;
    let ex = Composition::new(vec![0, 1]);
    let svt = enumerate_svt(&shape, &Flag::full(3, 2), Some(&ex))?;
    for t in &svt {
        if let OrZero::Elem(u) = t.lower(1) {
            eprintln!("f_1 {t} = {u}");
        }
    }
    println!("{}", crystal_graph_dot(&svt, 3));
    Ok(())
}
