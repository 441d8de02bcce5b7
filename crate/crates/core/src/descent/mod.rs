//! Sheaves on finite sites: sheaf checks, restriction to and extension from
//! dense subsites, gluing of sheaves given on slices over a set of objects,
//! and Galois descent as fixed points.
//!
//! Everything here is exhaustive and meant for small categories (a handful
//! of objects, sets of at most a few elements).

mod extend;
pub mod fixtures;
mod galois;
mod iso;
mod pi;
mod sheaf;
mod site;

use thiserror::Error;

pub use extend::{
    check_factorable, check_subsite_hypotheses, extend_sheaf, factorable_subcategory, full_subsite,
    restrict_sheaf, FactorableReport,
};
pub use galois::{galois_datum, galois_fixed_points, galois_sheaf, galois_site, FiniteGroup};
pub use iso::{natural_isomorphism, ISO_SEARCH_LIMIT};
pub use pi::{glue_pi_sheaf, pi_datum_from_sheaf, slice_site, PiSheafDatum, RawPiDatum};
pub use sheaf::{check_sheaf, FailureKind, RawSheaf, SetSheaf, SheafFailure, SheafReport};
pub use site::{Arrow, Composite, Covering, FiberProduct, FiberProductDecl, FiniteSite, RawSite};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown object `{name}` in {context}")]
    UnknownObject { name: String, context: String },
    #[error("unknown arrow `{name}` in {context}")]
    UnknownArrow { name: String, context: String },
    #[error("identity `{arrow}` of `{object}` is not an endomorphism of it")]
    BadIdentity { object: String, arrow: String },
    #[error("`{then}` cannot follow `{first}`: target and source differ")]
    NotComposable { first: String, then: String },
    #[error("composite of `{first}` then `{then}` declared as `{result}`, which has the wrong source or target")]
    BadComposite {
        first: String,
        then: String,
        result: String,
    },
    #[error("composite of `{first}` then `{then}` declared twice with different results")]
    ConflictingComposite { first: String, then: String },
    #[error("composite of `{first}` then `{then}` is missing from the table")]
    MissingComposite { first: String, then: String },
    #[error("composition is not associative on `{f}`, `{g}`, `{h}`")]
    NotAssociative { f: String, g: String, h: String },
    #[error("covering #{index} of `{target}`: {reason}")]
    BadCovering {
        index: usize,
        target: String,
        reason: String,
    },
    #[error("no fiber product declared for `{left}` and `{right}`")]
    MissingFiberProduct { left: String, right: String },
    #[error("fiber product #{index}: {reason}")]
    BadFiberProduct { index: usize, reason: String },
    #[error("covering #{index} of `{target}` pulled back along `{along}` is neither a covering nor split")]
    NotPullbackStable {
        index: usize,
        target: String,
        along: String,
    },
    #[error("duplicate element `{element}` in the set over `{object}`")]
    DuplicateElement { object: String, element: String },
    #[error("no set given for object `{0}`")]
    MissingSet(String),
    #[error("restriction along `{arrow}`: {reason}")]
    BadMap { arrow: String, reason: String },
    #[error("presheaf is not functorial: {0}")]
    NotFunctorial(String),
    #[error("sheaf data does not match the site ({0})")]
    SiteMismatch(String),
    #[error("set over `{object}` has {size} elements; isomorphism search is capped at {limit}")]
    TooLarge {
        object: String,
        size: usize,
        limit: usize,
    },
    #[error("subcategory hypothesis {clause} fails at `{object}`: {detail}")]
    Hypothesis {
        clause: u8,
        object: String,
        detail: String,
    },
    #[error("not a full subcategory: {0}")]
    NotFullSubcategory(String),
    #[error("no covering of `{domain}` factors through a covering of `{target}` along `{arrow}`")]
    NoFactoringCovering {
        arrow: String,
        domain: String,
        target: String,
    },
    #[error("restriction along `{0}` is not well defined")]
    NotWellDefined(String),
    #[error("`{object}` has no covering factoring through the chosen objects")]
    NotFactorable { object: String },
    #[error("no local sheaf given over `{0}`")]
    MissingLocal(String),
    #[error("local data over `{object}` is not a sheaf on its slice: {detail}")]
    LocalNotSheaf { object: String, detail: String },
    #[error("comparison for `{arrow}` at `{at}`: {reason}")]
    BadComparison {
        arrow: String,
        at: String,
        reason: String,
    },
    #[error("comparison for `{arrow}` is not natural along slice arrow `{along}`")]
    NotNatural { arrow: String, along: String },
    #[error("cocycle condition fails for f = `{f}`, g = `{g}` at `{at}`")]
    CocycleViolation { f: String, g: String, at: String },
    #[error("glued value at `{object}` does not match the local value at `{arrow}`")]
    GlueNotBijective { object: String, arrow: String },
    #[error("group table: {0}")]
    BadGroup(String),
    #[error("not a group action: {0}")]
    NotAnAction(String),
}
