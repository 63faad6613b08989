pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod linking;
pub mod ring;
pub mod seifert;
pub mod selftest;
pub mod witt;

pub use error::WittError;
