pub mod edim;
pub mod error;
pub mod gl2z;
pub mod group;
pub mod intmat;
pub mod monomial;
pub mod qmod1;
pub mod reptheory;
pub mod toric;
pub mod verify;
pub mod versality;

pub use error::{Error, Result};
pub use group::{closure, Element, FiniteGroup, GroupElement, Perm};
pub use intmat::Mat2;
pub use monomial::MonomialElement;
pub use qmod1::Qmod1;
