pub mod character;
pub mod cyclotomic;
pub mod error;
pub mod finite;
pub mod fox;
pub mod gamma;
pub mod group;
pub mod jump;
pub mod lattice;
pub mod laurent;
pub mod oracle;
pub mod poly;
pub mod space;

pub use character::{Arrangement, TorsionCharacter, TranslatedSubgroup};
pub use cyclotomic::CyclotomicScalar;
pub use error::{Bounds, Error, Result};
pub use group::{FgAbGroup, Homomorphism, Subgroup};
pub use lattice::{hermite_normal_form, kernel, smith_normal_form, IntMatrix, Lattice};
pub use laurent::LaurentPolynomial;
