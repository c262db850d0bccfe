pub mod cache;
pub mod cartan;
pub mod criterion;
pub mod deform;
pub mod dpalg;
pub mod fp;
pub mod liecore;
pub mod mat;
pub mod melikian;
pub mod report;
pub mod selftest;
pub mod simplicity;
pub mod sparse;
pub mod subspace;
pub mod wittexp;
pub mod wsub;
