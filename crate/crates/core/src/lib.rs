//! Discovery and verification of identities among Lucas sequence terms.

pub mod algebra;
pub mod discover;
pub mod lucas;
pub mod verify;
pub mod identity;
