//! Combinatorial model of the stable Auslander–Reiten quiver of a 2-domestic
//! Brauer graph algebra, with stable-Hom supports, orthogonal-system
//! enumeration and simple-minded-system certification.

pub mod ar_model;
pub mod hom_calculus;
pub mod brauer_graph;
pub mod ortho;
pub mod extension_engine;
