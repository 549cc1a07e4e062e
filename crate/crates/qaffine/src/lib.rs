//! Exact symbolic engine for the quantum affine superalgebra family
//! `U_q[osp(2m+1|2n)^(1)]`.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — exact rational-function arithmetic in `Q(v)`, `v = q^(1/2)`;
//! * [`rootsys`] — root data, parities, bilinear form, Cartan matrix, the
//!   order on reduced positive affine roots;
//! * [`freealg`] — the triangular (F·K·E) word algebra with products,
//!   twisted super-brackets, the anti-automorphism, and generator-level
//!   Hopf maps;
//! * [`derivations`] — skew derivations on the positive half and the
//!   layered zero-decision procedure;
//! * [`rootvec`] — quantum root vectors for real and imaginary roots;
//! * [`braid`] — Dynkin diagram states, odd reflections, braid operators,
//!   and translation operators;
//! * [`presentations`] — relation schemas for the three presentations and
//!   the maps between them, with verification drivers.

pub mod braid;
pub mod derivations;
pub mod freealg;
pub mod presentations;
pub mod rootsys;
pub mod rootvec;
pub mod scalar;
