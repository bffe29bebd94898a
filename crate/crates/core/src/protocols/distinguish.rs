//! State distinguishability with circuits that differ only by a global phase
//! `i`. Complex provers cannot tell the outputs apart; a prover handed a
//! single shared extra qubit can, perfectly. Giving verifier and prover one
//! extra qubit each restores indistinguishability.

use crate::encode::encode_vector;
use crate::error::{Error, Result};
use crate::linalg::{
    gates, partial_trace, trace_norm, unitarity_deviation, ComplexMatrix, ComplexVector, C64, I,
};
use crate::multiparty::encode_vector_m;

use super::POVM_TOL;

#[derive(Clone, Debug)]
pub struct DistinguishabilityInstance {
    pub q0: ComplexMatrix,
    pub q1: ComplexMatrix,
    pub n_qubits: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl DistinguishabilityInstance {
    pub fn new(q0: ComplexMatrix, q1: ComplexMatrix, n_qubits: usize, alpha: f64, beta: f64) -> Result<Self> {
        let dim = 1usize << n_qubits;
        for q in [&q0, &q1] {
            if !q.is_square() || q.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "circuit is {}x{}, {n_qubits} qubits need dimension {dim}",
                    q.rows(),
                    q.cols()
                )));
            }
            let deviation = unitarity_deviation(q);
            if deviation > POVM_TOL {
                return Err(Error::NotUnitary { deviation, tol: POVM_TOL });
            }
        }
        if !((0.0..=1.0).contains(&alpha) && (0.0..=1.0).contains(&beta) && alpha < beta * beta) {
            return Err(Error::InvalidBounds { completeness: beta, soundness: alpha });
        }
        Ok(Self { q0, q1, n_qubits, alpha, beta })
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// `Q_b|0…0⟩`.
    pub fn output(&self, b: usize) -> ComplexVector {
        let q = if b == 0 { &self.q0 } else { &self.q1 };
        q.column(0)
    }

    pub fn density(&self, b: usize) -> ComplexMatrix {
        self.output(b).projector()
    }

    /// The relative phase `c` when `Q_0†Q_1 = c·I`.
    pub fn relative_phase(&self) -> Option<C64> {
        let prod = self.q0.adjoint().matmul(&self.q1);
        let c = prod[(0, 0)];
        let diff = &prod - &ComplexMatrix::identity(self.dim()).scale(c);
        (diff.max_abs() <= POVM_TOL).then_some(c)
    }
}

/// `Q_0 = u`, `Q_1 = -i·u`, with `α = 1/3`, `β = 2/3`.
pub fn build_global_phase_instance(u: &ComplexMatrix, n_qubits: usize) -> Result<DistinguishabilityInstance> {
    DistinguishabilityInstance::new(u.clone(), u.scale(-I), n_qubits, 1.0 / 3.0, 2.0 / 3.0)
}

/// Helstrom success probability `½(1 + ½‖ρ_0 - ρ_1‖₁)` for equal priors.
pub fn helstrom_probability(rho0: &ComplexMatrix, rho1: &ComplexMatrix) -> Result<f64> {
    Ok(0.5 * (1.0 + 0.5 * trace_norm(&(rho0 - rho1))?))
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    /// `‖ρ_0 - ρ_1‖₁` for the complex outputs.
    pub trace_norm: f64,
    /// Best complex distinguishing probability.
    pub complex_success: f64,
    /// `⟨R(Q_0|0⟩), R(Q_1|0⟩)⟩` with one extra qubit shared with the prover.
    pub naive_inner: f64,
    /// `min_± ‖R(Q_0†)R(Q_0|0⟩) ∓ (X⊗I)R(Q_0†)R(Q_1|0⟩)‖_max`.
    pub x_relation_deviation: f64,
    /// Same relation before uncomputing; zero only when `Q_0|0⟩` is real up
    /// to a factor of `i`.
    pub direct_x_relation_deviation: f64,
    /// Success of "apply `R(Q_0†)`, measure the extra qubit in `Z`".
    pub naive_success: f64,
    /// Helstrom probability for the prover's share when verifier and prover
    /// each hold one extra qubit.
    pub two_extra_success: f64,
}

impl CounterexampleReport {
    pub const EXACT_TOL: f64 = 1e-12;
    pub const TWO_EXTRA_TOL: f64 = 1e-10;

    pub fn reproduces(&self) -> bool {
        self.trace_norm == 0.0
            && self.complex_success == 0.5
            && self.naive_inner.abs() <= Self::EXACT_TOL
            && self.x_relation_deviation <= Self::EXACT_TOL
            && (self.naive_success - 1.0).abs() <= Self::EXACT_TOL
            && (self.two_extra_success - 0.5).abs() <= Self::TWO_EXTRA_TOL
    }
}

fn x_relation(a: &ComplexVector, b: &ComplexVector, dim: usize) -> f64 {
    let xb = gates::pauli_x().tensor(&ComplexMatrix::identity(dim)).apply(b);
    a.max_abs_diff(&xb).min(a.max_abs_diff(&xb.scale_real(-1.0)))
}

pub fn counterexample_report(inst: &DistinguishabilityInstance) -> Result<CounterexampleReport> {
    let c = inst.relative_phase().ok_or(Error::NotGlobalPhaseInstance)?;
    if (c.norm() - 1.0).abs() > POVM_TOL || c.re.abs() > POVM_TOL {
        return Err(Error::NotGlobalPhaseInstance);
    }
    let d = inst.dim();
    let (rho0, rho1) = (inst.density(0), inst.density(1));
    let tn = trace_norm(&(&rho0 - &rho1))?;
    let complex_success = 0.5 * (1.0 + 0.5 * tn);

    let (psi0, psi1) = (inst.output(0), inst.output(1));
    let (r0, r1) = (encode_vector(&psi0), encode_vector(&psi1));
    let naive_inner = r0.inner(&r1).re;
    let undo = crate::encode::encode_matrix(&inst.q0.adjoint());
    let (u0, u1) = (undo.apply(&r0), undo.apply(&r1));
    let x_relation_deviation = x_relation(&u0, &u1, d);
    let direct_x_relation_deviation = x_relation(&r0, &r1, d);
    let p_extra = |v: &ComplexVector, bit: usize| v.as_slice()[bit * d..(bit + 1) * d].iter().map(|z| z.norm_sqr()).sum::<f64>();
    let naive_success = 0.5 * (p_extra(&u0, 0) + p_extra(&u1, 1));

    let share = |psi: &ComplexVector| {
        let e = encode_vector_m(psi, 2);
        partial_trace(&e.projector(), &[2, 2, d], &[1, 2])
    };
    let two_extra_success = helstrom_probability(&share(&psi0)?, &share(&psi1)?)?;

    Ok(CounterexampleReport {
        trace_norm: tn,
        complex_success,
        naive_inner,
        x_relation_deviation,
        direct_x_relation_deviation,
        naive_success,
        two_extra_success,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::random_unitary;
    use crate::linalg::tensor_all;

    #[test]
    fn identity_instance() {
        let inst = build_global_phase_instance(&ComplexMatrix::identity(2), 1).unwrap();
        assert_eq!(inst.density(0), ComplexVector::basis(2, 0).projector());
        assert_eq!(inst.density(0), inst.density(1));
        let amp = inst.q0.adjoint().matmul(&inst.q1)[(0, 0)];
        assert_eq!(amp, -I);
        let r = counterexample_report(&inst).unwrap();
        assert_eq!((r.trace_norm, r.complex_success), (0.0, 0.5));
        assert_eq!(r.naive_inner, 0.0);
        assert_eq!(r.naive_success, 1.0);
        assert_eq!(r.direct_x_relation_deviation, 0.0);
        assert!((r.two_extra_success - 0.5).abs() < 1e-10);
        assert!(r.reproduces());
    }

    #[test]
    fn naive_outputs_for_identity() {
        // |0⟩|0⟩ and -i|0⟩ ↦ |1⟩|0⟩
        let inst = build_global_phase_instance(&ComplexMatrix::identity(2), 1).unwrap();
        assert_eq!(encode_vector(&inst.output(0)), ComplexVector::basis(4, 0));
        assert_eq!(encode_vector(&inst.output(1)), ComplexVector::basis(4, 2));
    }

    #[test]
    fn hadamard_and_random() {
        let h = build_global_phase_instance(&gates::hadamard(), 1).unwrap();
        assert!(counterexample_report(&h).unwrap().reproduces());
        let hh = build_global_phase_instance(&tensor_all([&gates::hadamard(), &gates::hadamard()]), 2).unwrap();
        assert!(counterexample_report(&hh).unwrap().reproduces());
        for seed in 0..5 {
            let inst = build_global_phase_instance(&random_unitary(4, seed), 2).unwrap();
            let r = counterexample_report(&inst).unwrap();
            assert!(r.reproduces(), "{r:?}");
        }
    }

    #[test]
    fn rejects_non_unitary_and_non_phase() {
        assert!(matches!(
            build_global_phase_instance(&ComplexMatrix::real_diagonal(&[1.0, 2.0]), 1),
            Err(Error::NotUnitary { .. })
        ));
        let inst =
            DistinguishabilityInstance::new(gates::identity(), gates::pauli_x(), 1, 1.0 / 3.0, 2.0 / 3.0).unwrap();
        assert!(matches!(counterexample_report(&inst), Err(Error::NotGlobalPhaseInstance)));
        let minus = DistinguishabilityInstance::new(gates::identity(), gates::identity().scale_real(-1.0), 1, 0.1, 0.5)
            .unwrap();
        assert!(matches!(counterexample_report(&minus), Err(Error::NotGlobalPhaseInstance)));
        assert!(DistinguishabilityInstance::new(gates::identity(), gates::identity(), 1, 0.5, 0.6).is_err());
    }
}
