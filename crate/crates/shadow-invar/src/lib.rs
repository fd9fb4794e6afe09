//! Shadow-module enhanced birack counting invariants of classical knots and
//! links.
//!
//! A finite birack labels the semiarcs of an oriented blackboard-framed
//! link diagram; a birack shadow labels the regions between them. The
//! shadow algebra of such a pair acts on "bead" variables placed on the
//! semiarcs, and counting its module homomorphisms per labeling refines the
//! integral birack counting invariant into a polynomial-valued one.
//!
//! The crate covers the full pipeline:
//!
//! - [`zn`]: exact linear algebra over Z_n (Smith normal form, solution
//!   counting), permutations.
//! - [`birack`]: verified biracks and shadows from operation tables, kink
//!   maps and rank, standard constructors.
//! - [`algebra`]: the shadow algebra's relation families, module structure
//!   verification and exhaustive search over Z_k.
//! - [`diagram`]: PD-coded diagrams, faces, framing adjustment by kinks.
//! - [`invariant`]: shadow labelings, fundamental-module presentations,
//!   homomorphism counts, the multiset/polynomial invariants.
//! - [`io`] and [`tables`]: JSON formats and the bundled link table.

pub mod algebra;
pub mod birack;
pub mod diagram;
pub mod invariant;
pub mod io;
pub mod tables;
pub mod zn;

pub use algebra::{
    generate_relations, search_modules, verify_module, GeneratorIndex, RelationInstance,
    ShadowModuleStructure,
};
pub use birack::{is_birack_homomorphism, is_subbirack, Birack, Shadow, StructureError};
pub use diagram::{DiagramError, LinkDiagram, PdCode};
pub use invariant::{
    birack_counting_invariant, count_module_homs, enumerate_shadow_labelings,
    presentation_matrix, shadow_module_invariant, InvariantValue, PresentationMatrix,
    ShadowLabeling,
};
