pub mod cli;
pub mod duality;
pub mod exactla;
pub mod freealg;
pub mod groebner;
pub mod hilbert;
pub mod presentation;
pub mod resolution;
