//! Finite fields, polynomials, factorization and the sixth-power-free
//! decomposition.

pub mod decomp;
pub mod embed;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod resfield;
pub mod text;

pub use decomp::{sixth_power_free_decompose, SixthPowerFreeDecomp};
pub use embed::Embedding;
pub use factor::{factor, is_irreducible, poly_root_n, roots};
pub use field::{FieldCtx, Fq};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use resfield::ResField;
pub use text::{format_elem, format_poly, parse_poly};

use crate::error::{Error, Result};

/// Number of `n`-th roots of `g` modulo the irreducible `pi`.
pub fn residue_symbol(k: &FieldCtx, g: &Poly, pi: &Poly, n: u64) -> Result<usize> {
    if !(n == 2 || n == 3) {
        return Err(Error::PreconditionUnmet("n must be 2 or 3".into()));
    }
    ResField::new(k, pi).count_nth_roots(g, n)
}
