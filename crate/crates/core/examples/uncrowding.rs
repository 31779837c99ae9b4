//! Uncrowding a flagged set-valued tableau, tracking the flag, and undoing
//! it.
//!
//! ```text
//! cargo run --example uncrowding
//! ```

use setvalued::insertion::{flag_trace, uncrowd, uncrowd_inverse};
use setvalued::shape::{Flag, SkewShape};
use setvalued::tableau::{RecordingTableau, SetValuedTableau};

fn main() -> anyhow::Result<()> {
    let shape = SkewShape::from_parts(vec![4, 3, 2], vec![2, 1, 0])?;
    let t = SetValuedTableau::from_lists(
        shape.clone(),
        vec![vec![vec![1], vec![1, 2]], vec![vec![1, 2], vec![2, 3]], vec![vec![1], vec![3]]],
    )?;
    let phi = Flag::new(vec![2, 3, 4])?;
    println!("T = {t}  (excess {})", t.excess());

    let rec = uncrowd(&shape, &shape, &RecordingTableau::new(), &t)?;
    for (step, (u, f)) in rec.chain.iter().zip(flag_trace(&rec, &phi)?).enumerate() {
        println!("T^({step}) = {u}   respects {f}: {}", u.respects_flag(&f));
    }
    println!("θ̃ = {}", rec.output_shape);
    println!("Q″ = {}", rec.recording);
    println!("T̃ = {}", rec.straightened);

    let back = uncrowd_inverse(&shape, &rec.output_shape, &rec.recording, &rec.straightened)?;
    assert_eq!(back, t);
    println!("inverse recovers T");
    Ok(())
}
