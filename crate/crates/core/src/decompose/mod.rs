//! Units of W(K) modulo q: solving q y = a, the exact factorization, and
//! the canonical generator word.

mod exact;
mod galois;
mod reduce;
mod solve;
mod word;

pub use exact::{decompose_exact, ExactFactorization};
pub use galois::{class_order, galois_group_check, galois_group_check_p2};
pub use reduce::{reconstruct, reduce_mod_q};
pub use solve::q_solve;
pub use word::{GeneratorWord, PadicExponent};

#[cfg(test)]
mod tests;
