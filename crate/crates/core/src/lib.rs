//! Flagged set-valued tableaux and the polynomials they generate.
//!
//! The crate enumerates set-valued tableaux and reverse plane partitions on
//! skew shapes under row flags, puts a type `A` crystal structure on them,
//! straightens them with uncrowding insertion and the Burge correspondence,
//! and expands the resulting refined Grothendieck polynomials in key
//! polynomials, Schur polynomials and the `g`/`G` bases. Every expansion is
//! checked against direct enumeration before it is returned.
//!
//! ```
//! use setvalued::expansions::key_expansion_G;
//! use setvalued::shape::{Flag, SkewShape};
//!
//! let shape = SkewShape::from_parts(vec![2, 2, 0], vec![1, 0, 0]).unwrap();
//! let phi = Flag::new(vec![1, 3, 3]).unwrap();
//! let e = key_expansion_G(&shape, &phi, 3).unwrap();
//! assert_eq!(e.to_string(), "κ_(1,0,2) - t2*κ_(2,0,2) - t2*κ_(1,1,2) + t2^2*κ_(2,1,2)");
//! ```
//!
//! Modules, bottom up:
//!
//! - [`shape`]: partitions, compositions, skew shapes and flags.
//! - [`tableau`]: set-valued tableaux, SSYT, RPP, recording tableaux, JSON.
//! - [`poly`]: sparse integer polynomials in `x` and `t`.
//! - [`crystal`]: crystal operators, tensor signature rule, Demazure crystals.
//! - [`insertion`]: Burge correspondence, rectification, uncrowding, `Ψ`.
//! - [`keys`]: Demazure operators, key polynomials, left keys, `W(α, Φ)`.
//! - [`expansions`]: generating functions, classification and the expansions.
//! - [`cli`]: the `setvalued` command-line front end.
//!
//! Parallel enumeration uses rayon; set `RAYON_NUM_THREADS` to bound it.

pub mod cli;
pub mod crystal;
pub mod expansions;
pub mod insertion;
pub mod keys;
pub mod poly;
pub mod shape;
pub mod tableau;
