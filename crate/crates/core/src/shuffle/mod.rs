//! The free superalgebra on `I` with the quantum shuffle product, the coproduct, the maps
//! `τ`, bar, `σ`, and the bilinear form on the shuffle subalgebra.

mod element;
mod form;
mod maps;
mod product;

pub use element::{Element, ElementJson, TensorElement, TermJson};
pub use form::{determinant, BasisRow, FormEngine, Preimaged, WeightBasis};
pub use maps::{bar, coefficient_bar, sigma, tau};
pub use product::{
    coproduct, shuffle, shuffle_all, shuffle_power, shuffle_reference, shuffle_words,
    shuffle_words_recursive,
};
