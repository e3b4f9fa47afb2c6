//! End-to-end reproductions: a CHSH run with per-setting conditional
//! estimates and the four-treatment medical comparison.

pub mod chsh;
pub mod medical;

pub use chsh::{
    chsh_classical_max, chsh_quantum_max, chsh_s_exact, chsh_simulate, chsh_simulate_local,
    CellEstimate, ChshConfig, ChshRun, QuantumMax, Setting, TrialRecord,
};
pub use medical::{
    medical_bayes, medical_bayes_synthetic, medical_contrasts, medical_quantum, medical_report,
    orthant_conditional, psi_transform, BayesEstimate, Contrasts, MedicalReport, QuantumAnswer,
    PUBLISHED_VALUE,
};
