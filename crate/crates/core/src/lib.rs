pub mod error;
pub mod exact;
pub mod forms;
pub mod liealg;
pub mod partitions;
pub mod poly;
pub mod projgeo;
pub mod rootsys;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub struct Intro;
    #[doc = include_str!("../../../book/src/algebra.md")]
    pub struct Algebra;
    #[doc = include_str!("../../../book/src/projgeo.md")]
    pub struct Projgeo;
    #[doc = include_str!("../../../book/src/orbits.md")]
    pub struct Orbits;
    #[doc = include_str!("../../../book/src/rootsys.md")]
    pub struct Rootsys;
    #[doc = include_str!("../../../book/src/forms.md")]
    pub struct Forms;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
