//! Parameter dependency networks extracted from web-service description
//! collections, and their complex-network profile.
//!
//! The pipeline: load a [`collection::ServiceCollection`], collapse parameter
//! instances into archetypes with a [`matching::Matcher`], build a
//! [`depnet::DependencyNetwork`], then measure it with [`topology`],
//! [`powerlaw`] and [`community`], or all at once with [`report::analyze`].

pub mod collection;
pub mod community;
pub mod depnet;
pub mod disjoint_set;
pub mod error;
pub mod graph;
pub mod matching;
pub mod powerlaw;
pub mod report;
pub mod rng;
pub mod topology;

pub use error::{Error, Result};
