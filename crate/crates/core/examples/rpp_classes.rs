//! Reverse plane partitions: reading words, the classification behind the
//! key expansion of the flagged dual Grothendieck polynomial.
//!
//! ```text
//! cargo run --example rpp_classes
//! ```

use setvalued::expansions::{classify_rpp, key_expansion_g, reading_word_rpp, row_reading_rpp};
use setvalued::shape::{Flag, SkewShape};

fn main() -> anyhow::Result<()> {
    let shape = SkewShape::from_parts(vec![3, 2, 0], vec![1, 0, 0])?;
    let phi = Flag::full(3, 3);
    for class in classify_rpp(&shape, &phi, 3)? {
        let y = &class.yamanouchi;
        let (r, h) = row_reading_rpp(y);
        println!(
            "κ_{} with t^{}: {} RPPs, Yamanouchi member {y} (w = {:?}, r = {r:?}, h = {h:?}), Q =\n{}",
            class.label,
            class.ceq,
            class.members.len(),
            reading_word_rpp(y),
            class.recording
        );
    }
    println!("g̃_{shape}(X_{phi}; t) = {}", key_expansion_g(&shape, &phi, 3)?);
    Ok(())
}
