#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod chains;
pub mod exact;
pub mod graph;
pub mod moves;
pub mod reduction;

#[cfg(test)]
mod testutil;
