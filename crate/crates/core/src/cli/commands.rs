use crate::encode::{conjugation_branch_form, encode_matrix, encode_vector, property_transported, EncodedOperator};
use crate::linalg::random::{derive_seed, random_state, random_unitary, rng_from_seed};
use crate::linalg::{
    embed_operator, gates, hermitian_eigenvalues, schmidt_coefficients, tensor_all, unitarity_deviation,
    ComplexMatrix, Property,
};
use crate::multiparty::{extra_frame_commutator, verify_lemma2, PartyLayout, PartyOperator};
use crate::protocols::{
    build_global_phase_instance, counterexample_report, qma2_encoding_check, qma_encoding_check, QmaVerifier,
    SeeSawOptions,
};
use crate::separable::{
    encode_separable, random_separable_with, resolution_deviation, separable_block_form, verify_lemma4,
    verify_trace_identity, ConjugationMask, SeparableOperator,
};

use super::document::{to_raw, Accept, AcceptSection, Circuit, CircuitDocument, GateEntry, RegisterDecl, VERSION};
use super::report::{Check, Report};
use super::{Base, CliError, Kind, Mode, Suite};

const LEMMA_TOL: f64 = 1e-10;
const COMMUTATOR_TOL: f64 = 1e-11;
const REAL_TOL: f64 = 1e-12;
const MAX_ENCODED_QUBITS: usize = 10;

fn validation(e: crate::Error) -> CliError {
    CliError::Validation(e.to_string())
}

fn is_real(m: &ComplexMatrix) -> bool {
    m.max_imag() == 0.0
}

fn separable_accept(circuit: &Circuit, what: &str) -> Result<SeparableOperator, CliError> {
    match &circuit.accept {
        Some(Accept::Separable(op)) => Ok(op.clone()),
        _ => Err(CliError::MissingAcceptOperator(format!("{what} needs a separable accept operator"))),
    }
}

fn full_accept(circuit: &Circuit, what: &str) -> Result<ComplexMatrix, CliError> {
    circuit
        .accept_matrix()
        .ok_or_else(|| CliError::MissingAcceptOperator(format!("{what} needs an accept operator")))?
}

fn max_commutator_with_frames(m: &ComplexMatrix, extras: usize, rest_dim: usize) -> f64 {
    let mut dims = vec![2; extras];
    dims.push(rest_dim);
    (0..extras)
        .map(|j| {
            let p = embed_operator(&crate::encode::frame_projector(0), &dims, &[j]).expect("valid target");
            m.commutator(&p).max_abs()
        })
        .fold(0.0, f64::max)
}

pub struct Encoded {
    pub document: CircuitDocument,
    pub report: Report,
}

pub fn cmd_encode(circuit: &Circuit, mode: Mode, seed: u64) -> Result<Encoded, CliError> {
    if circuit.extra_qubits != 0 {
        return Err(CliError::Validation("document already carries extra qubits".into()));
    }
    let m = match mode {
        Mode::Single => 1,
        Mode::Multiparty | Mode::Separable => circuit.parties.len(),
    };
    if circuit.total_qubits() + m > MAX_ENCODED_QUBITS {
        return Err(CliError::Validation(format!(
            "encoding needs {} qubits, at most {MAX_ENCODED_QUBITS} supported",
            circuit.total_qubits() + m
        )));
    }
    let sep = if mode == Mode::Separable {
        let op = separable_accept(circuit, "separable mode")?;
        if op.parties() != 2 {
            return Err(validation(crate::Error::NotSeparable2Party(op.parties())));
        }
        Some(op)
    } else {
        None
    };

    let mut emitted = Vec::with_capacity(circuit.gates.len());
    let mut transport_failures = 0usize;
    let mut block_trivial: f64 = 0.0;
    for (i, g) in circuit.gates.iter().enumerate() {
        for p in [Property::Unitary, Property::Hermitian] {
            transport_failures += !property_transported(&g.matrix, p, LEMMA_TOL) as usize;
        }
        let encoded = encode_matrix(&g.matrix);
        block_trivial = block_trivial.max(encoded.max_abs_diff(&gates::identity().tensor(&g.matrix)));
        let shifted = g.targets.iter().map(|t| t + m);
        let (matrix, targets) = match mode {
            Mode::Single => (encoded, std::iter::once(0).chain(shifted).collect()),
            _ => match circuit.gate_party(g) {
                Some(k) => (encoded, std::iter::once(k).chain(shifted).collect()),
                None if is_real(&g.matrix) => (g.matrix.clone(), shifted.collect()),
                None => {
                    return Err(CliError::Validation(format!(
                        "gate {i} spans several parties and is not real"
                    )))
                }
            },
        };
        emitted.push(GateEntry { gate: "RAW".into(), targets, theta: None, matrix: Some(to_raw(&matrix)) });
    }

    let mut accept_section = None;
    let mut accept_checks = Vec::new();
    let mut source_real = circuit.gates.iter().all(|g| is_real(&g.matrix));
    if let Some(a) = &circuit.accept {
        let full = full_accept(circuit, "encode")?;
        source_real &= is_real(&full);
        for p in [Property::Hermitian, Property::PositiveSemidefinite] {
            transport_failures += !property_transported(&full, p, LEMMA_TOL) as usize;
        }
        match (mode, a) {
            (Mode::Single, _) => {
                let enc = encode_matrix(&full);
                let before = hermitian_eigenvalues(&full, LEMMA_TOL).map_err(validation)?[0];
                let after = hermitian_eigenvalues(&enc, LEMMA_TOL).map_err(validation)?[0];
                accept_checks.push(Check::agree("accept_max_eigenvalue", before, after, 1e-9));
                accept_section = Some(AcceptSection::Raw { matrix: to_raw(&enc) });
            }
            (_, Accept::Separable(op)) => {
                let terms = op.terms().iter().map(|t| t.iter().map(|f| to_raw(&encode_matrix(f))).collect()).collect();
                accept_section = Some(AcceptSection::Separable { terms });
            }
            (_, Accept::Full(full)) if is_real(full) => {
                let lifted = ComplexMatrix::identity(1 << m).tensor(full);
                accept_section = Some(AcceptSection::Raw { matrix: to_raw(&lifted) });
            }
            (_, Accept::Full(_)) => {
                return Err(CliError::Validation(
                    "a complex accept operator must be given as separable terms in this mode".into(),
                ))
            }
        }
    }
    if let Some(op) = &sep {
        let a = encode_separable(op).map_err(validation)?;
        let b = separable_block_form(op).map_err(validation)?;
        accept_checks.push(Check::within("forms_agree", a.max_abs_diff(&b), REAL_TOL));
    }

    let document = CircuitDocument {
        version: VERSION.into(),
        registers: RegisterDecl { parties: circuit.parties.clone(), extra_qubits: m },
        gates: emitted,
        accept: accept_section,
    };

    let mut report = Report::new(format!("encode --mode {}", mode.name()), seed);
    let reparsed = CircuitDocument::parse(&document.to_json()).and_then(|d| d.resolve());
    let encoded_circuit = match reparsed {
        Ok(c) => {
            report.push(Check::within("reparse", 0.0, 0.0));
            Some(c)
        }
        Err(_) => {
            report.push(Check::within("reparse", 1.0, 0.0));
            None
        }
    };
    if let Some(ec) = &encoded_circuit {
        let rest = 1 << circuit.total_qubits();
        let mut imag: f64 = 0.0;
        let mut unitarity: f64 = 0.0;
        let mut commutator: f64 = 0.0;
        for g in &ec.gates {
            let full = ec.full_gate(g);
            imag = imag.max(g.matrix.max_imag());
            unitarity = unitarity.max(unitarity_deviation(&g.matrix));
            commutator = commutator.max(max_commutator_with_frames(&full, m, rest));
        }
        if let Some(a) = ec.accept_matrix() {
            let a = a?;
            imag = imag.max(a.max_imag());
            commutator = commutator.max(max_commutator_with_frames(&a, m, rest));
            if mode != Mode::Single {
                let spectrum = hermitian_eigenvalues(&a, LEMMA_TOL).map_err(validation)?;
                let (max, min) = (spectrum[0], *spectrum.last().unwrap());
                let excess = (-min).max(max - 1.0).max(0.0);
                accept_checks.push(Check::list("accept_povm", vec![min, max], excess, LEMMA_TOL));
            }
        }
        report.push(Check::within("realness", imag, REAL_TOL));
        report.push(Check::within("unitarity", unitarity, LEMMA_TOL));
        report.push(Check::within("frame_commutation", commutator, COMMUTATOR_TOL));
    }
    report.push(Check::within("property_transport", transport_failures as f64, 0.0));
    for c in accept_checks {
        report.push(c);
    }
    if source_real {
        report.push(Check::within("block_trivial", block_trivial, 0.0));
    }
    Ok(Encoded { document, report })
}

fn operators_for_lemma1(circuit: &Circuit) -> Result<Vec<ComplexMatrix>, CliError> {
    let mut ops: Vec<ComplexMatrix> = circuit.gates.iter().map(|g| circuit.full_gate(g)).collect();
    if let Some(a) = circuit.accept_matrix() {
        ops.push(a?);
    }
    if ops.is_empty() {
        return Err(CliError::Incompatible("lemma1 needs at least one gate or an accept operator".into()));
    }
    Ok(ops)
}

fn lemma1(circuit: &Circuit, report: &mut Report) -> Result<(), CliError> {
    let ops = operators_for_lemma1(circuit)?;
    let d = circuit.dim();
    let (mut hom, mut act, mut exp, mut adj, mut block) = (0f64, 0f64, 0f64, 0f64, 0f64);
    let mut transport = 0usize;
    for (i, m) in ops.iter().enumerate() {
        let n = random_unitary(d, derive_seed(report.seed, 2 * i as u64));
        let psi = random_state(d, derive_seed(report.seed, 2 * i as u64 + 1));
        let (rm, rn) = (encode_matrix(m), encode_matrix(&n));
        hom = hom.max(encode_matrix(&m.matmul(&n)).max_abs_diff(&rm.matmul(&rn)));
        let next = &ops[(i + 1) % ops.len()];
        hom = hom.max(encode_matrix(&m.matmul(next)).max_abs_diff(&rm.matmul(&encode_matrix(next))));
        act = act.max(encode_vector(&m.apply(&psi)).max_abs_diff(&rm.apply(&encode_vector(&psi))));
        exp = exp.max((m.expectation(&psi).re - rm.expectation(&encode_vector(&psi)).re).abs());
        adj = adj.max(encode_matrix(&m.adjoint()).max_abs_diff(&rm.transpose()));
        let eo = EncodedOperator { matrix: rm, source_dim: d };
        block = block.max(eo.block_form().max_abs_diff(&conjugation_branch_form(m)));
        for p in [Property::Unitary, Property::Hermitian, Property::PositiveSemidefinite] {
            transport += !property_transported(m, p, LEMMA_TOL) as usize;
        }
    }
    report.push(Check::within("homomorphism", hom, LEMMA_TOL));
    report.push(Check::within("action", act, LEMMA_TOL));
    report.push(Check::within("expectation", exp, LEMMA_TOL));
    report.push(Check::within("adjoint", adj, LEMMA_TOL));
    report.push(Check::within("block_form", block, LEMMA_TOL));
    report.push(Check::within("property_transport", transport as f64, 0.0));
    Ok(())
}

fn lemma2(circuit: &Circuit, report: &mut Report) -> Result<(), CliError> {
    if circuit.extra_qubits != 0 {
        return Err(CliError::Incompatible("lemma2 needs an unencoded document".into()));
    }
    if circuit.gates.is_empty() {
        return Err(CliError::Incompatible("lemma2 needs at least one gate".into()));
    }
    let layout = PartyLayout::new(circuit.parties.iter().map(|&q| 1 << q).collect()).map_err(validation)?;
    let mut ops = Vec::with_capacity(circuit.gates.len());
    for (i, g) in circuit.gates.iter().enumerate() {
        let k = circuit
            .gate_party(g)
            .ok_or_else(|| CliError::Incompatible(format!("lemma2: gate {i} is not local to one party")))?;
        let offset = circuit.party_offset(k);
        let local_targets: Vec<usize> = g.targets.iter().map(|t| t - offset).collect();
        let local = embed_operator(&g.matrix, &vec![2; circuit.parties[k]], &local_targets).map_err(validation)?;
        ops.push(PartyOperator::new(k, local));
    }
    let mut imag: f64 = 0.0;
    let mut commutator: f64 = 0.0;
    for op in &ops {
        let enc = crate::multiparty::encode_party_operator(op, &layout).map_err(validation)?;
        imag = imag.max(enc.max_imag());
        commutator = commutator.max(extra_frame_commutator(&enc, &layout).map_err(validation)?);
    }
    ops.reverse();
    let psi = random_state(layout.system_dim(), derive_seed(report.seed, 0));
    let check = verify_lemma2(&ops, &psi, &layout).map_err(validation)?;
    report.push(Check::within("realness", imag, REAL_TOL));
    report.push(Check::agree("expectation", check.complex_side, check.encoded_side, LEMMA_TOL));
    report.push(Check::within("composition", check.composition_deviation, LEMMA_TOL));
    report.push(Check::within("frame_commutation", commutator, COMMUTATOR_TOL));
    Ok(())
}

fn lemma3(circuit: &Circuit, report: &mut Report) -> Result<(), CliError> {
    let m = separable_accept(circuit, "lemma3").map_err(|e| CliError::Incompatible(e.message()))?;
    let mut rng = rng_from_seed(derive_seed(report.seed, 0));
    let n = random_separable_with(&mut rng, m.party_dims(), 3);
    for z in ConjugationMask::all(m.parties()) {
        let (a, b) = verify_trace_identity(&m, &n, &z).map_err(validation)?;
        report.push(Check::within(format!("trace_identity[{z}]"), (a - b).norm(), LEMMA_TOL));
    }
    Ok(())
}

fn lemma4(circuit: &Circuit, report: &mut Report) -> Result<(), CliError> {
    let m = separable_accept(circuit, "lemma4").map_err(|e| CliError::Incompatible(e.message()))?;
    if m.parties() != 2 {
        return Err(CliError::Incompatible(format!("lemma4 needs 2 parties, document has {}", m.parties())));
    }
    let (d1, d2) = (m.party_dims()[0], m.party_dims()[1]);
    let psi1 = random_state(d1, derive_seed(report.seed, 0));
    let psi2 = random_state(d2, derive_seed(report.seed, 1));
    let product = crate::separable::encode_product_state(&psi1, &psi2).map_err(validation)?;
    let schmidt = schmidt_coefficients(&product, 2 * d1, 2 * d2).map_err(validation)?;
    let forms = encode_separable(&m).map_err(validation)?.max_abs_diff(&separable_block_form(&m).map_err(validation)?);
    let check = verify_lemma4(&m, &psi1, &psi2).map_err(validation)?;
    report.push(Check::near("product_structure", schmidt[0], 1.0, LEMMA_TOL));
    report.push(Check::within("forms_agree", forms, REAL_TOL));
    report.push(Check::agree("quadratic_form", check.complex_side.re, check.encoded_side, LEMMA_TOL));
    report.push(Check::within("resolution", resolution_deviation(&m), 0.0));
    Ok(())
}

fn spectrum(circuit: &Circuit, report: &mut Report) -> Result<(), CliError> {
    let a = full_accept(circuit, "spectrum").map_err(|e| CliError::Incompatible(e.message()))?;
    let (doubled, encoded) = crate::protocols::doubled_spectrum(&a).map_err(validation)?;
    let deviation = doubled.iter().zip(&encoded).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let single: Vec<f64> = doubled.iter().step_by(2).copied().collect();
    report.push(Check::list("spectrum", single, 0.0, LEMMA_TOL));
    report.push(Check::list("encoded_spectrum", encoded, deviation, LEMMA_TOL));
    Ok(())
}

pub fn cmd_verify(circuit: &Circuit, suite: Suite, seed: u64) -> Result<Report, CliError> {
    let mut report = Report::new(format!("verify --suite {}", suite.name()), seed);
    match suite {
        Suite::Lemma1 => lemma1(circuit, &mut report)?,
        Suite::Lemma2 => lemma2(circuit, &mut report)?,
        Suite::Lemma3 => lemma3(circuit, &mut report)?,
        Suite::Lemma4 => lemma4(circuit, &mut report)?,
        Suite::Spectrum => spectrum(circuit, &mut report)?,
    }
    Ok(report)
}

pub fn cmd_prover(circuit: &Circuit, kind: Kind, restarts: usize, iters: usize, seed: u64) -> Result<Report, CliError> {
    let command = match kind {
        Kind::Qma => "prover --kind qma".to_string(),
        Kind::Qma2 => format!("prover --kind qma2 --restarts {restarts} --iters {iters}"),
    };
    let mut report = Report::new(command, seed);
    match kind {
        Kind::Qma => {
            let a = full_accept(circuit, "prover --kind qma")?;
            let v = QmaVerifier::from_accept(a).map_err(validation)?;
            let r = qma_encoding_check(&v).map_err(validation)?;
            report.push(Check::agree("optimal_acceptance", r.complex_max, r.encoded_max, 1e-9));
            report.push(Check::agree("honest_encoded", r.honest_complex, r.honest_encoded, 1e-10));
            report.push(Check::within("block_diagonal", r.block_deviation, 1e-12));
        }
        Kind::Qma2 => {
            let a = separable_accept(circuit, "prover --kind qma2")?;
            let opts = SeeSawOptions { restarts, max_sweeps: iters, seed, ..Default::default() };
            let r = qma2_encoding_check(&a, &opts).map_err(validation)?;
            report.push(Check::agree("product_max", r.original, r.encoded, 1e-6));
            for (z, v) in &r.masked {
                report.push(Check::agree(format!("masked[{z}]"), r.original, *v, 1e-6));
            }
            report.push(Check::agree("honest_encoded", r.honest_complex, r.honest_encoded, 1e-10));
        }
    }
    Ok(report)
}

fn base_unitary(base: Base, n: usize, seed: u64) -> ComplexMatrix {
    let single = match base {
        Base::I => gates::identity(),
        Base::X => gates::pauli_x(),
        Base::Y => gates::pauli_y(),
        Base::Z => gates::pauli_z(),
        Base::H => gates::hadamard(),
        Base::S => gates::s(),
        Base::T => gates::t(),
        Base::Random => return random_unitary(1 << n, derive_seed(seed, 0)),
    };
    tensor_all(&vec![single; n])
}

pub fn cmd_counterexample(n: usize, base: Base, seed: u64) -> Result<Report, CliError> {
    if n == 0 || n > 6 {
        return Err(CliError::Validation(format!("--qubits must be in 1..=6, got {n}")));
    }
    let u = base_unitary(base, n, seed);
    let inst = build_global_phase_instance(&u, n).map_err(validation)?;
    let r = counterexample_report(&inst).map_err(validation)?;
    let mut report = Report::new(format!("counterexample --qubits {n} --base {}", base.name()), seed);
    report.push(Check::within("trace_distance", r.trace_norm, 0.0));
    report.push(Check::near("complex_success", r.complex_success, 0.5, 0.0));
    report.push(Check::within("naive_inner", r.naive_inner, 1e-12));
    report.push(Check::within("x_relation", r.x_relation_deviation, 1e-12));
    report.push(Check::near("naive_success", r.naive_success, 1.0, 1e-12));
    report.push(Check::near("two_extra_success", r.two_extra_success, 0.5, 1e-10));
    Ok(report)
}
