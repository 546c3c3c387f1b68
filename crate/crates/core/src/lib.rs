#![no_std]

extern crate alloc;

pub mod center_action;
pub mod chain;
pub mod chartable;
pub mod error;
pub mod fusion;
pub mod group;
pub mod lab;
pub mod lie;
pub mod linalg;
pub mod unionfind;

pub use error::{Error, Result};
