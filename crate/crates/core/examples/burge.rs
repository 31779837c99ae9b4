//! The Burge correspondence between integer matrices and pairs of tableaux.
//!
//! ```text
//! cargo run --example burge
//! ```

use setvalued::insertion::{biword_of_matrix, burge, burge_inverse, matrix_of_biword};

fn main() -> anyhow::Result<()> {
    let a = vec![vec![1, 2, 0], vec![2, 1, 3]];
    let bw = biword_of_matrix(&a);
    println!("biword:\n{bw}");

    let (p, q) = burge(&bw);
    println!("P =\n{p}\nQ =\n{q}");

    let back = burge_inverse(&p, &q)?;
    assert_eq!(matrix_of_biword(&back, 2, 3), a);
    println!("round trip recovers {a:?}");
    Ok(())
}
