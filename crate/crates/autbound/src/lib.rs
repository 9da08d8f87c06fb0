//! File formats, report rendering and verification sweeps on top of
//! [`autbound_core`].

pub mod formats;
pub mod render;
pub mod verify;

pub use formats::{parse_edgelist, parse_graph, parse_graph6, write_graph6, FormatError, InputFormat};
