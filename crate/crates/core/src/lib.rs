pub mod algebra;
pub mod cli;
pub mod dual;
mod bessel;
pub mod error;
pub mod physicality;
pub mod seeds;
pub mod squaring;
pub mod verify;
pub mod waves;
