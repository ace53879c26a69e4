#![allow(dead_code, clippy::excessive_precision, clippy::type_complexity)]

pub mod oracles;
