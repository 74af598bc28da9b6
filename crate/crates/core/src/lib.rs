//! Singularity classification, regularity checks, blow-up verification,
//! codimension bounds and Noether–Fano inequality bounds for Fano
//! hypersurfaces.

pub mod polyalg;
pub mod linalg;
pub mod singclass;
pub mod regcheck;
pub mod blowup;
pub mod codim;
pub mod nfopt;
pub mod cli;

mod serde_num;
