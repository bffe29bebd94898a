//! Round-based verifier/prover protocols on a fixed register partition
//! `verifier ⊗ message ⊗ prover`, and their real encoding with two extra
//! qubits.
//!
//! Schedules, for `k` messages:
//! * verifier first (`k` even): `U_1, P_1, U_2, …, P_{k/2}, U_{k/2+1}`;
//! * prover first (`k` odd): `P_1, U_1, P_2, U_2, …, P_{(k+1)/2}, U_{(k+1)/2}`.
//!
//! Verifier unitaries and the accept operator act on `verifier ⊗ message`,
//! prover unitaries on `message ⊗ prover`.
//!
//! In an encoded protocol every register gains a leading qubit:
//! `V' = X_v⊗V`, `M' = X_m⊗M`, `P' = X_p⊗P`. The verifier's extra qubit ends
//! up in `X_v` and the prover's in `X_p`; `X_m` only carries an extra qubit
//! across the first message, after which a swap moves it into place.

use rand::Rng;

use crate::encode::{conjugation_branch_form, encode_matrix, frame_projector};
use crate::error::{Error, Result};
use crate::linalg::random::{random_povm_element_with, random_state_with, random_unitary_with};
use crate::linalg::{
    embed_operator, gates, permute_state, unitarity_deviation, unitary_with_first_column, ComplexMatrix,
    ComplexVector, ZERO,
};
use crate::multiparty::encode_vector_m;

use super::{validate_povm, POVM_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstMover {
    Verifier,
    Prover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Registers {
    pub verifier: usize,
    pub message: usize,
    pub prover: usize,
}

impl Registers {
    pub fn new(verifier: usize, message: usize, prover: usize) -> Self {
        Self { verifier, message, prover }
    }

    pub fn total(&self) -> usize {
        self.verifier * self.message * self.prover
    }
}

/// Marks a protocol produced by [`encode_protocol`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodingFrame {
    /// Verifier unitary that moves the extra qubit from `X_m` into `X_v`.
    pub receive_at: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ProtocolSpec {
    pub registers: Registers,
    pub first_mover: FirstMover,
    /// Number of messages `k`.
    pub rounds: usize,
    pub verifier_unitaries: Vec<ComplexMatrix>,
    pub accept: ComplexMatrix,
    /// Verifier's starting state: on `verifier ⊗ message` when the verifier
    /// moves first, on `verifier` alone otherwise. `|0…0⟩` when absent.
    pub verifier_initial: Option<ComplexVector>,
    pub frame: Option<EncodingFrame>,
}

#[derive(Clone, Debug)]
pub struct ProverStrategy {
    pub unitaries: Vec<ComplexMatrix>,
    /// On `prover` when the verifier moves first, on `message ⊗ prover`
    /// otherwise.
    pub initial: ComplexVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Verifier(usize),
    Prover(usize),
}

fn check_unitary(u: &ComplexMatrix, dim: usize, what: &str) -> Result<()> {
    if !u.is_square() || u.rows() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {}x{}, expected dimension {dim}",
            u.rows(),
            u.cols()
        )));
    }
    let deviation = unitarity_deviation(u);
    if deviation > POVM_TOL {
        return Err(Error::NotUnitary { deviation, tol: POVM_TOL });
    }
    Ok(())
}

fn check_state(v: &ComplexVector, dim: usize, what: &str) -> Result<()> {
    if v.dim() != dim {
        return Err(Error::DimensionMismatch(format!("{what} has dimension {}, expected {dim}", v.dim())));
    }
    let norm_sqr = v.norm_sqr();
    if (norm_sqr - 1.0).abs() > POVM_TOL {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(())
}

impl ProtocolSpec {
    pub fn new(
        registers: Registers,
        first_mover: FirstMover,
        rounds: usize,
        verifier_unitaries: Vec<ComplexMatrix>,
        accept: ComplexMatrix,
    ) -> Result<Self> {
        let spec = Self {
            registers,
            first_mover,
            rounds,
            verifier_unitaries,
            accept,
            verifier_initial: None,
            frame: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_verifier_initial(mut self, state: ComplexVector) -> Result<Self> {
        self.verifier_initial = Some(state);
        self.validate()?;
        Ok(self)
    }

    pub fn verifier_turns(&self) -> usize {
        match self.first_mover {
            FirstMover::Verifier => self.rounds / 2 + 1,
            FirstMover::Prover => self.rounds.div_ceil(2),
        }
    }

    pub fn prover_turns(&self) -> usize {
        match self.first_mover {
            FirstMover::Verifier => self.rounds / 2,
            FirstMover::Prover => self.rounds.div_ceil(2),
        }
    }

    /// Dimension of `verifier ⊗ message`.
    pub fn vm_dim(&self) -> usize {
        self.registers.verifier * self.registers.message
    }

    /// Dimension of `message ⊗ prover`.
    pub fn mp_dim(&self) -> usize {
        self.registers.message * self.registers.prover
    }

    pub fn verifier_initial_dim(&self) -> usize {
        match self.first_mover {
            FirstMover::Verifier => self.vm_dim(),
            FirstMover::Prover => self.registers.verifier,
        }
    }

    pub fn prover_initial_dim(&self) -> usize {
        match self.first_mover {
            FirstMover::Verifier => self.registers.prover,
            FirstMover::Prover => self.mp_dim(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let parity_ok = match self.first_mover {
            FirstMover::Verifier => self.rounds.is_multiple_of(2),
            FirstMover::Prover => self.rounds % 2 == 1,
        };
        if !parity_ok {
            return Err(Error::InvalidProtocol(format!(
                "{} messages cannot start with the {:?}",
                self.rounds, self.first_mover
            )));
        }
        if self.verifier_unitaries.len() != self.verifier_turns() {
            return Err(Error::InvalidProtocol(format!(
                "{} verifier unitaries for {} turns",
                self.verifier_unitaries.len(),
                self.verifier_turns()
            )));
        }
        for (t, u) in self.verifier_unitaries.iter().enumerate() {
            check_unitary(u, self.vm_dim(), &format!("verifier unitary {t}"))?;
        }
        if self.accept.rows() != self.vm_dim() {
            return Err(Error::DimensionMismatch(format!(
                "accept operator has dimension {}, expected {}",
                self.accept.rows(),
                self.vm_dim()
            )));
        }
        validate_povm(&self.accept, POVM_TOL)?;
        if let Some(v) = &self.verifier_initial {
            check_state(v, self.verifier_initial_dim(), "verifier initial state")?;
        }
        if self.frame.is_some() && (!self.registers.verifier.is_multiple_of(2) || !self.registers.message.is_multiple_of(2)) {
            return Err(Error::InvalidProtocol("encoded registers must have even dimension".into()));
        }
        Ok(())
    }

    pub fn check_strategy(&self, prover: &ProverStrategy) -> Result<()> {
        if prover.unitaries.len() != self.prover_turns() {
            return Err(Error::InvalidProtocol(format!(
                "{} prover unitaries for {} turns",
                prover.unitaries.len(),
                self.prover_turns()
            )));
        }
        for (t, u) in prover.unitaries.iter().enumerate() {
            check_unitary(u, self.mp_dim(), &format!("prover unitary {t}"))?;
        }
        check_state(&prover.initial, self.prover_initial_dim(), "prover initial state")
    }

    fn schedule(&self) -> Vec<Step> {
        let mut steps = Vec::new();
        match self.first_mover {
            FirstMover::Verifier => {
                steps.push(Step::Verifier(0));
                for t in 0..self.prover_turns() {
                    steps.push(Step::Prover(t));
                    steps.push(Step::Verifier(t + 1));
                }
            }
            FirstMover::Prover => {
                for t in 0..self.prover_turns() {
                    steps.push(Step::Prover(t));
                    steps.push(Step::Verifier(t));
                }
            }
        }
        steps
    }

    fn initial_state(&self, prover: &ProverStrategy) -> ComplexVector {
        let v = self
            .verifier_initial
            .clone()
            .unwrap_or_else(|| ComplexVector::basis(self.verifier_initial_dim(), 0));
        v.tensor(&prover.initial)
    }
}

/// `(op ⊗ I_inner)` applied to `v` without materializing the product.
fn apply_outer(op: &ComplexMatrix, v: &ComplexVector, inner: usize) -> ComplexVector {
    let n = op.rows();
    let s = v.as_slice();
    let mut out = vec![ZERO; v.dim()];
    for a in 0..n {
        for b in 0..n {
            let c = op[(a, b)];
            if c == ZERO {
                continue;
            }
            for p in 0..inner {
                out[a * inner + p] += c * s[b * inner + p];
            }
        }
    }
    ComplexVector::new(out)
}

/// `(I_outer ⊗ op)` applied to `v`.
fn apply_inner(op: &ComplexMatrix, v: &ComplexVector) -> ComplexVector {
    let n = op.rows();
    let mut out = Vec::with_capacity(v.dim());
    for chunk in v.as_slice().chunks(n) {
        out.extend(op.apply(&ComplexVector::new(chunk.to_vec())).into_vec());
    }
    ComplexVector::new(out)
}

fn acceptance(spec: &ProtocolSpec, state: &ComplexVector) -> f64 {
    apply_outer(&spec.accept, state, spec.registers.prover).inner(state).re
}

fn simulate(spec: &ProtocolSpec, prover: &ProverStrategy, dephase: bool) -> Result<f64> {
    spec.validate()?;
    spec.check_strategy(prover)?;
    let total = spec.registers.total();
    let mut branches = vec![spec.initial_state(prover)];
    let dephase_at = spec.frame.map(|f| f.receive_at);
    let split = |branches: Vec<ComplexVector>| -> Vec<ComplexVector> {
        branches
            .iter()
            .flat_map(|s| (0..2).map(move |b| apply_outer(&frame_projector(b), s, total / 2)))
            .collect()
    };
    if dephase && dephase_at == Some(None) {
        branches = split(branches);
    }
    for step in spec.schedule() {
        branches = branches
            .into_iter()
            .map(|s| match step {
                Step::Verifier(t) => apply_outer(&spec.verifier_unitaries[t], &s, spec.registers.prover),
                Step::Prover(t) => {
                    let outer = spec.registers.verifier;
                    debug_assert_eq!(s.dim(), outer * spec.mp_dim());
                    apply_inner(&prover.unitaries[t], &s)
                }
            })
            .collect();
        if dephase && matches!(step, Step::Verifier(t) if dephase_at == Some(Some(t))) {
            branches = split(branches);
        }
    }
    Ok(branches.iter().map(|s| acceptance(spec, s)).sum())
}

/// Runs the schedule from `verifier_initial ⊗ prover.initial` and returns
/// `⟨ψ|A ⊗ I_prover|ψ⟩`.
pub fn run_protocol(spec: &ProtocolSpec, prover: &ProverStrategy) -> Result<f64> {
    simulate(spec, prover, false)
}

/// Like [`run_protocol`], but measures the verifier's extra qubit in the
/// `V|0⟩, V|1⟩` basis as soon as the verifier holds it and discards the
/// outcome. For a correctly encoded verifier this changes nothing, whatever
/// the prover does.
pub fn run_protocol_dephased(spec: &ProtocolSpec, prover: &ProverStrategy) -> Result<f64> {
    if spec.frame.is_none() {
        return Err(Error::NotEncoded);
    }
    simulate(spec, prover, true)
}

fn extra_state(psi: &ComplexVector, d1: usize, d2: usize) -> Result<ComplexVector> {
    permute_state(&encode_vector_m(psi, 2), &[2, 2, d1, d2], &[0, 2, 1, 3])
}

/// Real protocol in which the verifier holds extra qubit 1 and the prover
/// extra qubit 2. When the verifier moves first it prepares `R^(2)(φ)` and
/// ships extra 2 in `X_m`; when the prover moves first the verifier receives
/// extra 1 in `X_m` and swaps it into `X_v` before applying `R_1(U_1)`.
/// A complex verifier initial state on `V` is folded into `U_1`.
pub fn encode_protocol(spec: &ProtocolSpec) -> Result<ProtocolSpec> {
    spec.validate()?;
    if spec.frame.is_some() {
        return Err(Error::InvalidProtocol("protocol is already encoded".into()));
    }
    let Registers { verifier: dv, message: dm, prover: dp } = spec.registers;
    let dims = [2, dv, 2, dm];
    let lift = |u: &ComplexMatrix| embed_operator(&encode_matrix(u), &dims, &[0, 1, 3]);
    let mut ops = Vec::with_capacity(spec.verifier_unitaries.len());
    let (initial, receive_at) = match spec.first_mover {
        FirstMover::Verifier => {
            let phi = spec.verifier_initial.clone().unwrap_or_else(|| ComplexVector::basis(dv * dm, 0));
            for u in &spec.verifier_unitaries {
                ops.push(lift(u)?);
            }
            (extra_state(&phi, dv, dm)?, None)
        }
        FirstMover::Prover => {
            let phi = spec.verifier_initial.clone().unwrap_or_else(|| ComplexVector::basis(dv, 0));
            let w = unitary_with_first_column(&phi).tensor(&ComplexMatrix::identity(dm));
            let swap = embed_operator(&gates::swap(), &dims, &[0, 2])?;
            for (t, u) in spec.verifier_unitaries.iter().enumerate() {
                ops.push(if t == 0 { lift(&u.matmul(&w))?.matmul(&swap) } else { lift(u)? });
            }
            (ComplexVector::basis(2 * dv, 0), Some(0))
        }
    };
    Ok(ProtocolSpec {
        registers: Registers::new(2 * dv, 2 * dm, 2 * dp),
        first_mover: spec.first_mover,
        rounds: spec.rounds,
        verifier_unitaries: ops,
        accept: lift(&spec.accept)?,
        verifier_initial: Some(initial),
        frame: Some(EncodingFrame { receive_at }),
    })
}

/// Honest encoded prover for `spec` (the original, unencoded protocol):
/// `R_2(P_t)` on `X_p ⊗ message ⊗ prover`. When the verifier moves first the
/// prover starts from `|0⟩`, takes extra 2 out of `X_m` on its first turn,
/// and folds its initial state into `P_1`; otherwise it prepares `R^(2)` of
/// its initial state and sends extra 1 in `X_m`.
pub fn encode_strategy(spec: &ProtocolSpec, prover: &ProverStrategy) -> Result<ProverStrategy> {
    spec.validate()?;
    spec.check_strategy(prover)?;
    let Registers { message: dm, prover: dp, .. } = spec.registers;
    let dims = [2, dm, 2, dp];
    let lift = |u: &ComplexMatrix| embed_operator(&encode_matrix(u), &dims, &[2, 1, 3]);
    match spec.first_mover {
        FirstMover::Verifier => {
            let w = ComplexMatrix::identity(dm).tensor(&unitary_with_first_column(&prover.initial));
            let swap = embed_operator(&gates::swap(), &dims, &[0, 2])?;
            let unitaries = prover
                .unitaries
                .iter()
                .enumerate()
                .map(|(t, u)| if t == 0 { Ok(lift(&u.matmul(&w))?.matmul(&swap)) } else { lift(u) })
                .collect::<Result<_>>()?;
            Ok(ProverStrategy { unitaries, initial: ComplexVector::basis(2 * dp, 0) })
        }
        FirstMover::Prover => Ok(ProverStrategy {
            unitaries: prover.unitaries.iter().map(lift).collect::<Result<_>>()?,
            initial: extra_state(&prover.initial, dm, dp)?,
        }),
    }
}

/// Largest Frobenius norm of `[op, P]` over the encoded verifier's unitaries
/// and accept operator, where `P` projects `X_v` onto `V|0⟩`. For the unitary
/// that receives the extra qubit, `‖op P_m - P op‖` with `P_m` the same
/// projector on `X_m`.
pub fn commutation_check(spec: &ProtocolSpec) -> Result<f64> {
    let frame = spec.frame.ok_or(Error::NotEncoded)?;
    let dims = [2, spec.registers.verifier / 2, 2, spec.registers.message / 2];
    let pv = embed_operator(&frame_projector(0), &dims, &[0])?;
    let pm = embed_operator(&frame_projector(0), &dims, &[2])?;
    let mut worst = spec.accept.commutator(&pv).frobenius_norm();
    for (t, op) in spec.verifier_unitaries.iter().enumerate() {
        let dev = if frame.receive_at == Some(t) {
            (&op.matmul(&pm) - &pv.matmul(op)).frobenius_norm()
        } else {
            op.commutator(&pv).frobenius_norm()
        };
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// Replaces encoded verifier unitary `t` by the conjugation-branch form of
/// `u` on `X_v ⊗ V ⊗ M`: the right blocks, but in the computational rather
/// than the `V` frame. Used as a negative control for [`commutation_check`].
pub fn corrupt_encoding(spec: &ProtocolSpec, t: usize, u: &ComplexMatrix) -> Result<ProtocolSpec> {
    if spec.frame.is_none() {
        return Err(Error::NotEncoded);
    }
    if t >= spec.verifier_unitaries.len() {
        return Err(Error::InvalidProtocol(format!("no verifier unitary {t}")));
    }
    let dims = [2, spec.registers.verifier / 2, 2, spec.registers.message / 2];
    let mut out = spec.clone();
    out.verifier_unitaries[t] = embed_operator(&conjugation_branch_form(u), &dims, &[0, 1, 3])?;
    Ok(out)
}

/// Random protocol with Haar unitaries, a random POVM accept operator and a
/// random verifier initial state.
pub fn random_protocol_with(
    rng: &mut impl Rng,
    registers: Registers,
    first_mover: FirstMover,
    rounds: usize,
) -> Result<ProtocolSpec> {
    let mut spec = ProtocolSpec {
        registers,
        first_mover,
        rounds,
        verifier_unitaries: Vec::new(),
        accept: random_povm_element_with(rng, registers.verifier * registers.message),
        verifier_initial: None,
        frame: None,
    };
    spec.verifier_unitaries = (0..spec.verifier_turns())
        .map(|_| random_unitary_with(rng, spec.vm_dim()))
        .collect();
    let v0 = random_state_with(rng, spec.verifier_initial_dim());
    spec.with_verifier_initial(v0)
}

pub fn random_strategy_with(rng: &mut impl Rng, spec: &ProtocolSpec) -> ProverStrategy {
    ProverStrategy {
        unitaries: (0..spec.prover_turns()).map(|_| random_unitary_with(rng, spec.mp_dim())).collect(),
        initial: random_state_with(rng, spec.prover_initial_dim()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_povm_element, rng_from_seed};
    use crate::linalg::{hermitian_eigensystem, tensor_all};

    fn identity_spec(accept: ComplexMatrix) -> ProtocolSpec {
        let r = Registers::new(2, 2, 2);
        ProtocolSpec::new(r, FirstMover::Verifier, 2, vec![ComplexMatrix::identity(4); 2], accept).unwrap()
    }

    fn idle(spec: &ProtocolSpec) -> ProverStrategy {
        ProverStrategy {
            unitaries: vec![ComplexMatrix::identity(spec.mp_dim()); spec.prover_turns()],
            initial: ComplexVector::basis(spec.prover_initial_dim(), 0),
        }
    }

    #[test]
    fn trivial_acceptances() {
        let spec = identity_spec(ComplexMatrix::identity(4));
        assert!((run_protocol(&spec, &idle(&spec)).unwrap() - 1.0).abs() < 1e-15);
        let spec = identity_spec(ComplexMatrix::zeros(4, 4));
        assert_eq!(run_protocol(&spec, &idle(&spec)).unwrap(), 0.0);
    }

    #[test]
    fn two_message_qma_equivalent() {
        let a = random_povm_element(2, 3);
        let es = hermitian_eigensystem(&a, 1e-10).unwrap();
        // verifier register is trivial; the proof arrives in the message
        let r = Registers::new(1, 2, 2);
        let spec = ProtocolSpec::new(r, FirstMover::Verifier, 2, vec![ComplexMatrix::identity(2); 2], a).unwrap();
        let prover = ProverStrategy { unitaries: vec![gates::swap()], initial: es.top_eigenvector().clone() };
        let p = run_protocol(&spec, &prover).unwrap();
        assert!((p - es.max_eigenvalue()).abs() < 1e-9);
    }

    #[test]
    fn schedule_shapes() {
        let r = Registers::new(2, 2, 2);
        let mut rng = rng_from_seed(1);
        let s = random_protocol_with(&mut rng, r, FirstMover::Verifier, 4).unwrap();
        assert_eq!((s.verifier_turns(), s.prover_turns()), (3, 2));
        let s = random_protocol_with(&mut rng, r, FirstMover::Prover, 3).unwrap();
        assert_eq!((s.verifier_turns(), s.prover_turns()), (2, 2));
        assert!(matches!(
            random_protocol_with(&mut rng, r, FirstMover::Prover, 2),
            Err(Error::InvalidProtocol(_))
        ));
    }

    #[test]
    fn rejects_mismatched_prover() {
        let spec = identity_spec(ComplexMatrix::identity(4));
        let bad = ProverStrategy { unitaries: vec![], initial: ComplexVector::basis(2, 0) };
        assert!(run_protocol(&spec, &bad).is_err());
        let bad = ProverStrategy { unitaries: vec![ComplexMatrix::identity(4)], initial: ComplexVector::basis(3, 0) };
        assert!(matches!(run_protocol(&spec, &bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn real_spec_encodes_to_identity_on_extras() {
        let r = Registers::new(2, 2, 2);
        let u = tensor_all([&gates::hadamard(), &gates::pauli_x()]);
        let spec = ProtocolSpec::new(r, FirstMover::Verifier, 2, vec![u.clone(), gates::cnot()], ComplexMatrix::real_diagonal(&[1.0, 1.0, 0.0, 0.0])).unwrap();
        let enc = encode_protocol(&spec).unwrap();
        let expect = embed_operator(&ComplexMatrix::identity(2).tensor(&u), &[2, 2, 2, 2], &[0, 1, 3]).unwrap();
        assert_eq!(enc.verifier_unitaries[0], expect);
        let honest = idle(&spec);
        let a = run_protocol(&spec, &honest).unwrap();
        let b = run_protocol(&enc, &encode_strategy(&spec, &honest).unwrap()).unwrap();
        assert!((a - b).abs() < 1e-14);
        assert!(commutation_check(&enc).unwrap() <= 1e-14);
    }

    #[test]
    fn honest_encoding_preserves_acceptance() {
        let mut rng = rng_from_seed(7);
        for (mover, k) in [(FirstMover::Verifier, 0), (FirstMover::Verifier, 2), (FirstMover::Verifier, 4), (FirstMover::Prover, 1), (FirstMover::Prover, 3)] {
            let spec = random_protocol_with(&mut rng, Registers::new(2, 2, 2), mover, k).unwrap();
            let prover = random_strategy_with(&mut rng, &spec);
            let enc = encode_protocol(&spec).unwrap();
            let a = run_protocol(&spec, &prover).unwrap();
            let b = run_protocol(&enc, &encode_strategy(&spec, &prover).unwrap()).unwrap();
            assert!((a - b).abs() < 1e-10, "{mover:?} k={k}: {a} vs {b}");
            assert!(commutation_check(&enc).unwrap() <= 1e-11);
            assert!(enc.verifier_unitaries.iter().all(|u| u.max_imag() <= 1e-12));
            assert!(enc.accept.max_imag() <= 1e-12);
        }
    }

    #[test]
    fn dephasing_is_invisible_to_any_prover() {
        let mut rng = rng_from_seed(9);
        for (mover, k) in [(FirstMover::Verifier, 2), (FirstMover::Prover, 3)] {
            let spec = random_protocol_with(&mut rng, Registers::new(2, 2, 2), mover, k).unwrap();
            let enc = encode_protocol(&spec).unwrap();
            for _ in 0..3 {
                let cheat = random_strategy_with(&mut rng, &enc);
                let a = run_protocol(&enc, &cheat).unwrap();
                let b = run_protocol_dephased(&enc, &cheat).unwrap();
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn corrupted_encoding_detected() {
        let mut rng = rng_from_seed(4);
        let spec = random_protocol_with(&mut rng, Registers::new(2, 2, 2), FirstMover::Verifier, 2).unwrap();
        let enc = encode_protocol(&spec).unwrap();
        let bad = corrupt_encoding(&enc, 1, &spec.verifier_unitaries[1]).unwrap();
        assert!(commutation_check(&bad).unwrap() > 1e-3);
        assert!(matches!(commutation_check(&spec), Err(Error::NotEncoded)));
    }
}
