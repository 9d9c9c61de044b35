pub mod cipher;
pub mod cli;
pub mod error;
pub mod goursat;
pub mod perm;
pub mod report;
pub mod selftest;
pub mod specfile;
pub mod types;
pub mod verify;
pub mod word;
