//! The classification machinery: simplex cochain models, the classifying
//! complex with its canonical twisting, twisted-product cells, lifts of the
//! classifying map, and vertical homotopies.

pub mod em;
pub mod homotopy;
pub mod lift;
pub mod tcp;
pub mod wbar;

pub use em::{tuples, EmCochain};
pub use homotopy::{
    check_vertical_homotopy, cylinder_twisting, pullback_along_projection, restrict_lift_to_end,
    restrict_to_end, vertical_homotopy, Cylinder, VerticalHomotopy,
};
pub use lift::{
    check_lift, cochain_to_lift, em_to_ots_cochain, lift_to_cochain, ots_cochain_to_em,
    pullback_twisting, select_vertices, Lift, OtsCache,
};
pub use tcp::{
    check_simplicial_identities, classifying_map, fundamental_cochain, tcp_degeneracy, tcp_face,
    tcp_map, TcpSimplex,
};
pub use wbar::{
    all_simplices as wbar_simplices, canonical_twist, wbar_degeneracy, wbar_face, wbar_map,
    WBarSimplex,
};
