//! Presentations of commutator subgroups of twin groups (Grothendieck's
//! cartographical groups) and, more generally, of kernels of parity maps of
//! finitely presented groups onto elementary abelian 2-groups.
//!
//! The pipeline: build a [`Presentation`], rewrite it over a Schreier
//! transversal ([`rschreier`]), simplify with Tietze moves ([`tietze`]),
//! then read off abelian invariants ([`abelian`]). For right-angled Coxeter
//! groups, [`graphs`] decides freeness and hyperbolicity from the
//! commutation graph and [`racg`] solves the word problem. [`twin`] holds
//! the explicit `β_p(j)` presentations and a harness that cross-checks all
//! of the above.

pub mod abelian;
pub mod error;
pub mod graphs;
pub mod presentation;
pub mod racg;
pub mod rschreier;
pub mod tietze;
pub mod twin;
pub mod words;

pub use abelian::{abelian_invariants, relation_matrix, smith_normal_form, AbelianInvariants, IntMatrix};
pub use error::{Error, Result};
pub use graphs::{commutator_free, has_induced_square, is_chordal, structure_report, Chordality, StructureReport};
pub use presentation::{as_racg, cartographical_group, twin_group, CommutationGraph, Presentation, PresentationFile};
pub use racg::{RacgContext, ReflectionMatrix};
pub use rschreier::{
    derived_subgroup_presentation, mod2_coset_table, rewrite, schreier_generators, CosetTable, SchreierGenerator,
};
pub use tietze::{eliminate, remove_redundant, simplify, SimplificationBudget, SimplifyOutcome};
pub use twin::{
    beta_normal_form, beta_word, minimal_presentation, theorem1_presentation, verify_paper_claims, BetaSymbol,
    VerificationReport,
};
pub use words::{Letter, Word};
