//! Exact integer calculators for smooth-structure bookkeeping on closed,
//! oriented 4-manifolds.
//!
//! The crate has five layers:
//!
//! * [`fpgroup`] — finitely presented groups: free words, abelianization,
//!   Todd–Coxeter coset enumeration and certified triviality verdicts.
//! * [`lattice`] — integral symmetric bilinear forms: pairings,
//!   characteristic vectors, Smith normal form, exact signatures and the
//!   genus arithmetic of smoothed surface intersections.
//! * [`swengine`] — Seiberg–Witten bookkeeping: formal dimensions,
//!   adjunction filtering, exhaustive basic-class candidate enumeration,
//!   the torus-surgery transformation rule, blow-up expansion, chamber
//!   spreads and diffeomorphism-distinguishing fingerprints.
//! * [`manifold`] — a calculus of closed oriented 4-manifold profiles
//!   under connected sum, fiber sum, torus surgery and free quotients,
//!   with a homeomorphism classifier for the supported fundamental groups.
//! * [`paperlib`] — concrete manifold families (`X_n`, `Y_n`, `A_n`, and
//!   their building blocks) assembled from the layers above, plus a
//!   deterministic scenario runner that re-checks their defining
//!   properties end to end.
//!
//! Everything is exact integer (or exact rational) arithmetic; no floating
//! point is used anywhere.

pub mod fpgroup;
pub mod lattice;
pub mod manifold;
pub mod paperlib;
pub mod swengine;
