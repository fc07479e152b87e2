pub mod bundle;
pub mod cayley;
pub mod clifford;
pub mod error;
pub mod homotopy;
pub mod intmat;
pub mod twisted;
pub mod verify;
