pub mod abelian;
pub mod catalog;
pub mod fingerprint;
pub mod fp;
pub mod multiplier;
pub mod oracle;
pub mod pc;
pub mod verify;
pub mod word;
pub mod zlinalg;
