//! Spin quiver Hecke algebra side: `Q` polynomials, graded super-modules given by matrices,
//! the relation verifier, characters, cuspidal and standard modules.

mod character;
mod matrix;
mod module;
mod quiver;
mod verify;

pub use character::{
    character, cuspidal_character, cuspidal_power_character, highest_weight, induced_character,
    standard_character, standard_character_unchecked, Character,
};
pub use matrix::{format_rational, parse_rational, Matrix};
pub use module::{cuspidal_module, BasisJson, BasisVector, GradedSuperModule, ModuleJson};
pub use quiver::{Orientation, QPolynomial, QuiverData};
pub use verify::{verify_relations, Check, Report, Violation};
