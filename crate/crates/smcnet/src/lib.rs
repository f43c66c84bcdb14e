//! Free symmetric monoidal closed categories presented by proof nets.
//!
//! A *theory* declares sorts, operations typed by tensor/hom/unit
//! formulas, and named equations between derived terms. Terms built from
//! the operations, identities, composition, tensor, hom and the structural
//! constants translate to *nets*: a support of operation occurrences plus
//! a linking of signed leaf ports. Correctness is the switching criterion
//! (every switching of the one-sided trees is a tree), composition is
//! gluing of linkings along interface ports, and equality of morphisms is
//! decided modulo support isomorphism and rewiring of unit edges, with a
//! bounded search for equality modulo the theory's equations.
//!
//! ```
//! use smcnet::{parse_theory, parse_term, translate, is_correct};
//!
//! let th = parse_theory("sort x\nop lam : (x -o x) -> x\nop app : x * x -> x\n").unwrap();
//! let term = parse_term("app . (lam * id x)", &th.signature).unwrap();
//! let net = translate(&term, &th.signature).unwrap();
//! assert!(is_correct(&net));
//! assert_eq!(net.support().len(), 2);
//! ```

pub mod correctness;
pub mod dot;
pub mod equivalence;
mod error;
pub mod formula;
mod lex;
pub mod prenet;
pub mod random;
pub mod term;
pub mod theory;
pub mod translate;

pub use correctness::{
    enumerate_switchings, first_failure, is_correct, par_count, FailureKind, SwitchFailure,
    SwitchGraph,
};
pub use dot::{net_to_dot, switch_graph_to_dot};
pub use equivalence::{
    nets_equal, orbit_key, rewire_moves, rewiring_orbit, theory_equal_bounded, RewriteStep, Verdict,
};
pub use error::{Error, Result};
pub use formula::{parse_formula, Dir, Formula, MllFormula, Path, Polarity, Port, PortLabel};
pub use prenet::{Net, PortRef, Region, Side, SupportEntry};
pub use term::{infer_type, parse_term, Term};
pub use theory::{parse_theory, ty, Equation, Signature, Theory};
pub use translate::{generator_net, structural_net, translate};
