//! Effective homology of homotopy colimits, cofibrant replacements and
//! Bredon cohomology for finite diagrams of simplicial sets.
//!
//! All arithmetic is exact. Chain complexes are given by algorithms on
//! encoded generators ([`chain`]); effective homology is a pair of
//! reductions ([`reduct`]) to a complex with finite bases, from which
//! homology and cohomology are read off by Smith normal form ([`abgrp`]).

pub mod abgrp;
pub mod chain;
pub mod cli;
pub mod cohom;
pub mod diagcat;
pub mod em;
pub mod error;
pub mod holan;
pub mod reduct;
pub mod simp;

pub use error::{Error, Result};
