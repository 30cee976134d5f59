//! Exact finite geometry for flocks of cones in PG(3,q).
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: arithmetic in GF(p^n) with stable integer encodings;
//! * [`geom`]: points, lines, planes, duality, arcs;
//! * [`flock`]: flocks of planes, critical cones, width, and the
//!   linear / star / bilinear taxonomy;
//! * [`equiv`]: the group fixing the vertex and the carrier plane, its action
//!   on flocks, invariants and the star normal form;
//! * [`linpoly`]: linearized polynomials, direction counts and the
//!   trichotomy for the number of directions of a graph;
//! * [`blocking`]: blocking sets, the dual picture of a star flock, and the
//!   projective triangle and triad;
//! * [`catalog`]: named constructions and verification suites.
//!
//! All computations are exact. The vertex is always `V = (0,0,0,1)` and the
//! carrier plane is `x3 = 0`; a carrier point `(a,b,c,0)` is handled as the
//! point `(a,b,c)` of PG(2,q).

pub mod blocking;
pub mod catalog;
pub mod equiv;
pub mod error;
pub mod flock;
pub mod geom;
pub mod gf;
pub mod linalg;
pub mod linpoly;

pub use error::{Error, Result};
pub use gf::{Elem, Field, FieldElement, FieldSpec};
