//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::Rng;
use realq::encode::{encode_matrix, encode_operator, encode_vector, property_transported};
use realq::linalg::random::{
    derive_seed, random_density_with, random_hermitian_with, random_matrix_with, random_povm_element_with,
    random_state_with, random_unitary_with, rng_from_seed, SeededRng,
};
use realq::linalg::{gates, schmidt_coefficients, ComplexMatrix, ComplexVector, Property, C64};
use realq::multiparty::{
    encode_party_operator, encode_vector_m, extra_frame_commutator, verify_lemma2, PartyLayout, PartyOperator,
};
use realq::protocols::{
    build_global_phase_instance, commutation_check, corrupt_encoding, counterexample_report, encode_protocol,
    encode_strategy, qma2_encoding_check, qma2_product_max, qma_encoding_check, random_protocol_with,
    random_strategy_with, run_protocol, run_protocol_dephased, spectrum_doubling_deviation, FirstMover,
    QmaVerifier, Registers, SeeSawOptions,
};
use realq::separable::{
    encode_product_state, encode_separable, random_separable_povm_with, random_separable_with,
    resolution_deviation, separable_block_form, verify_lemma4, verify_trace_identity, ConjugationMask,
};

const SEED: u64 = 20240611;

const LEMMA1_CASES: usize = 1000;
const LEMMA1_TOL: f64 = 1e-10;
const LEMMA1_BUDGET: Duration = Duration::from_secs(10);

const LEMMA2_CASES: usize = 200;
const LEMMA2_TOL: f64 = 1e-10;
const COMMUTATOR_TOL: f64 = 1e-11;
const LEMMA2_BUDGET: Duration = Duration::from_secs(30);

const LEMMA3_CASES: usize = 200;
const LEMMA3_TOL: f64 = 1e-10;

const LEMMA4_CASES: usize = 200;
const SCHMIDT_TOL: f64 = 1e-10;
const FORMS_TOL: f64 = 1e-12;
const QUADRATIC_TOL: f64 = 1e-10;

const QMA_CASES: usize = 500;
const QMA_MAX_TOL: f64 = 1e-9;
const SPECTRUM_TOL: f64 = 1e-10;

const QMA2_CASES: usize = 50;
const QMA2_RESTARTS: usize = 20;
const QMA2_TOL: f64 = 1e-6;
const GRID_CASES: usize = 20;
const GRID_TOL: f64 = 1e-3;
const GRID_STEPS: usize = 180;
const QMA2_BUDGET: Duration = Duration::from_secs(300);

const PROTOCOL_CASES_PER_SHAPE: usize = 10;
const PROTOCOL_TOL: f64 = 1e-10;
const PROTOCOL_COMMUTATOR_TOL: f64 = 1e-11;

const EXACT_TOL: f64 = 1e-12;
const TWO_EXTRA_TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(criterion: u64) -> SeededRng {
    rng_from_seed(derive_seed(SEED, criterion))
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// `|0⟩⟨0|⊗M + |1⟩⟨1|⊗M*` written out entry by entry.
fn block_oracle(m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.rows();
    ComplexMatrix::from_fn(2 * d, 2 * d, |i, j| match (i < d, j < d) {
        (true, true) => m[(i, j)],
        (false, false) => m[(i - d, j - d)].conj(),
        _ => C64::new(0.0, 0.0),
    })
}

fn literal_v() -> ComplexMatrix {
    let h = 0.5f64.sqrt();
    ComplexMatrix::from_vec(2, 2, vec![C64::new(h, 0.0), C64::new(h, 0.0), C64::new(0.0, h), C64::new(0.0, -h)])
        .unwrap()
}

fn lemma1() -> Outcome {
    let mut rng = rng(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut transport_failures = 0;
    for case in 0..LEMMA1_CASES {
        let d = 2 + case % 7;
        let m = match case % 4 {
            0 => random_matrix_with(&mut rng, d),
            1 => random_unitary_with(&mut rng, d),
            2 => random_hermitian_with(&mut rng, d),
            _ => random_density_with(&mut rng, d),
        };
        let n = random_matrix_with(&mut rng, d);
        let psi = random_state_with(&mut rng, d);
        let (rm, rn, rpsi) = (encode_matrix(&m), encode_matrix(&n), encode_vector(&psi));

        let homomorphism = encode_matrix(&(&m * &n)).max_abs_diff(&(&rm * &rn));
        let adjoint = encode_matrix(&m.adjoint()).max_abs_diff(&rm.transpose());
        let action = encode_vector(&m.apply(&psi)).max_abs_diff(&rm.apply(&rpsi));
        let expectation = (m.expectation(&psi).re - rm.expectation(&rpsi).re).abs();
        let v = literal_v().tensor(&ComplexMatrix::identity(d));
        let block = (&(&v.adjoint() * &rm) * &v).max_abs_diff(&block_oracle(&m));
        let realness = rm.max_imag().max(rpsi.max_imag());
        worst = max_of([worst, homomorphism, adjoint, action, expectation, block, realness]);

        for p in [Property::Unitary, Property::Hermitian, Property::PositiveSemidefinite] {
            if !property_transported(&m, p, 1e-9) {
                transport_failures += 1;
            }
        }
        if encode_operator(&m).unwrap().block_form().max_abs_diff(&block_oracle(&m)) > LEMMA1_TOL {
            transport_failures += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= LEMMA1_TOL && transport_failures == 0 && elapsed < LEMMA1_BUDGET,
        format!(
            "{LEMMA1_CASES} cases, dims 2-8, max deviation {worst:.2e} (tol {LEMMA1_TOL:e}), \
             transport failures {transport_failures}, {:.2}s (budget {}s)",
            elapsed.as_secs_f64(),
            LEMMA1_BUDGET.as_secs()
        ),
    )
}

fn lemma2() -> Outcome {
    let mut rng = rng(2);
    let start = Instant::now();
    let (mut worst, mut worst_commutator) = (0.0f64, 0.0f64);
    for case in 0..LEMMA2_CASES {
        let m = 2 + case % 2;
        let layout = PartyLayout::uniform(m, 2);
        let count = rng.random_range(1..=4);
        let ops: Vec<PartyOperator> = (0..count)
            .map(|_| {
                let party = rng.random_range(0..m);
                let op = if rng.random_bool(0.5) {
                    random_unitary_with(&mut rng, 2)
                } else {
                    random_matrix_with(&mut rng, 2)
                };
                PartyOperator::new(party, op)
            })
            .collect();
        let psi = random_state_with(&mut rng, layout.system_dim());
        let check = verify_lemma2(&ops, &psi, &layout).unwrap();
        worst = max_of([worst, (check.complex_side - check.encoded_side).abs(), check.composition_deviation]);
        for op in &ops {
            let r = encode_party_operator(op, &layout).unwrap();
            worst = worst.max(r.max_imag());
            worst_commutator = worst_commutator.max(extra_frame_commutator(&r, &layout).unwrap());
        }
        worst = worst.max(encode_vector_m(&psi, m).max_imag());
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= LEMMA2_TOL && worst_commutator <= COMMUTATOR_TOL && elapsed < LEMMA2_BUDGET,
        format!(
            "{LEMMA2_CASES} cases, m in {{2,3}}, max deviation {worst:.2e} (tol {LEMMA2_TOL:e}), \
             commutator {worst_commutator:.2e} (tol {COMMUTATOR_TOL:e}), {:.2}s (budget {}s)",
            elapsed.as_secs_f64(),
            LEMMA2_BUDGET.as_secs()
        ),
    )
}

fn lemma3() -> Outcome {
    let mut rng = rng(3);
    let mut worst = 0.0f64;
    let mut masks = 0;
    for case in 0..LEMMA3_CASES {
        let m = 1 + case % 3;
        let dims: Vec<usize> = (0..m).map(|_| rng.random_range(2..=3)).collect();
        let terms = rng.random_range(1..=4);
        let a = random_separable_with(&mut rng, &dims, terms);
        let terms_b = rng.random_range(1..=4);
        let b = random_separable_with(&mut rng, &dims, terms_b);
        for z in ConjugationMask::all(m) {
            let (x, y) = verify_trace_identity(&a, &b, &z).unwrap();
            worst = worst.max((x - y).norm());
            masks += 1;
        }
    }
    outcome(
        worst <= LEMMA3_TOL,
        format!("{LEMMA3_CASES} cases, {masks} masks, m <= 3, max deviation {worst:.2e} (tol {LEMMA3_TOL:e})"),
    )
}

/// Largest entry of `C - c_{:,q} c_{p,:} / c_{pq}` for the coefficient matrix
/// `C` of `v` across the cut, pivoting on its largest entry. Zero exactly when
/// `C` has rank one.
fn rank_one_residual(v: &ComplexVector, left: usize, right: usize) -> f64 {
    let c = |i: usize, j: usize| v.as_slice()[i * right + j];
    let (mut p, mut q) = (0, 0);
    for i in 0..left {
        for j in 0..right {
            if c(i, j).norm() > c(p, q).norm() {
                (p, q) = (i, j);
            }
        }
    }
    let pivot = c(p, q);
    let mut worst = 0.0f64;
    for i in 0..left {
        for j in 0..right {
            worst = worst.max((c(i, j) - c(i, q) * c(p, j) / pivot).norm());
        }
    }
    worst
}

fn lemma4() -> Outcome {
    let mut rng = rng(4);
    let (mut schmidt, mut forms, mut quadratic, mut resolution) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..LEMMA4_CASES {
        let dims = [rng.random_range(2..=3), rng.random_range(2..=3)];
        let terms = rng.random_range(1..=4);
        let m = random_separable_with(&mut rng, &dims, terms);
        let psi1 = random_state_with(&mut rng, dims[0]);
        let psi2 = random_state_with(&mut rng, dims[1]);
        let product = encode_product_state(&psi1, &psi2).unwrap();
        let coeffs = schmidt_coefficients(&product, 2 * dims[0], 2 * dims[1]).unwrap();
        schmidt = max_of([schmidt, (coeffs[0] - 1.0).abs(), rank_one_residual(&product, 2 * dims[0], 2 * dims[1])]);
        forms = forms.max(encode_separable(&m).unwrap().max_abs_diff(&separable_block_form(&m).unwrap()));
        let check = verify_lemma4(&m, &psi1, &psi2).unwrap();
        quadratic = max_of([quadratic, check.complex_side.im.abs(), (check.complex_side.re - check.encoded_side).abs()]);
        resolution = resolution.max(resolution_deviation(&m));
    }
    outcome(
        schmidt <= SCHMIDT_TOL && forms <= FORMS_TOL && quadratic <= QUADRATIC_TOL && resolution == 0.0,
        format!(
            "{LEMMA4_CASES} cases, schmidt {schmidt:.2e} (tol {SCHMIDT_TOL:e}), forms {forms:.2e} \
             (tol {FORMS_TOL:e}), quadratic {quadratic:.2e} (tol {QUADRATIC_TOL:e}), resolution {resolution:e} (exact)"
        ),
    )
}

fn qma() -> Outcome {
    let mut rng = rng(5);
    let (mut max_gap, mut doubling) = (0.0f64, 0.0f64);
    let mut failures = 0;
    for case in 0..QMA_CASES {
        let d = 2 + case % 7;
        let a = random_povm_element_with(&mut rng, d);
        let report = qma_encoding_check(&QmaVerifier::from_accept(a.clone()).unwrap()).unwrap();
        max_gap = max_gap.max((report.complex_max - report.encoded_max).abs());
        if !report.passes() {
            failures += 1;
        }
        doubling = doubling.max(spectrum_doubling_deviation(&a).unwrap());
    }
    outcome(
        max_gap <= QMA_MAX_TOL && doubling <= SPECTRUM_TOL && failures == 0,
        format!(
            "{QMA_CASES} POVMs, dims 2-8, max gap {max_gap:.2e} (tol {QMA_MAX_TOL:e}), spectrum doubling \
             {doubling:.2e} (tol {SPECTRUM_TOL:e}), honest/block failures {failures}"
        ),
    )
}

/// Top eigenvalue of a 2×2 Hermitian matrix `[[a, b], [b*, d]]`.
fn top_eigenvalue_2x2(a: f64, b: C64, d: f64) -> f64 {
    0.5 * (a + d) + (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt()
}

/// Product maximum over a Bloch-sphere grid for the first qubit, exact
/// optimization over the second.
fn grid_product_max(a: &ComplexMatrix) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..=GRID_STEPS {
        let theta = PI * i as f64 / GRID_STEPS as f64;
        for j in 0..2 * GRID_STEPS {
            let phi = PI * j as f64 / GRID_STEPS as f64;
            let u = [C64::new((theta / 2.0).cos(), 0.0), C64::from_polar((theta / 2.0).sin(), phi)];
            let entry = |r: usize, c: usize| {
                let mut s = C64::new(0.0, 0.0);
                for p in 0..2 {
                    for q in 0..2 {
                        s += u[p].conj() * a[(2 * p + r, 2 * q + c)] * u[q];
                    }
                }
                s
            };
            best = best.max(top_eigenvalue_2x2(entry(0, 0).re, entry(0, 1), entry(1, 1).re));
        }
    }
    best
}

fn qma2() -> Outcome {
    let mut rng = rng(6);
    let start = Instant::now();
    let (mut gap, mut honest) = (0.0f64, 0.0f64);
    for case in 0..QMA2_CASES {
        let terms = rng.random_range(1..=4);
        let a = random_separable_povm_with(&mut rng, &[4, 4], terms);
        let opts = SeeSawOptions { restarts: QMA2_RESTARTS, seed: derive_seed(SEED, 600 + case as u64), ..Default::default() };
        let report = qma2_encoding_check(&a, &opts).unwrap();
        gap = gap.max(report.max_gap());
        honest = honest.max((report.honest_complex - report.honest_encoded).abs());
    }
    let mut grid_gap = 0.0f64;
    for case in 0..GRID_CASES {
        let terms = rng.random_range(1..=4);
        let a = random_separable_povm_with(&mut rng, &[2, 2], terms);
        let opts = SeeSawOptions { restarts: QMA2_RESTARTS, seed: derive_seed(SEED, 700 + case as u64), ..Default::default() };
        let seesaw = qma2_product_max(&a, &opts).unwrap().probability;
        grid_gap = grid_gap.max((seesaw - grid_product_max(&a.to_matrix())).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        gap <= QMA2_TOL && honest <= 1e-10 && grid_gap <= GRID_TOL && elapsed < QMA2_BUDGET,
        format!(
            "{QMA2_CASES} POVMs on 2+2 qubits, {QMA2_RESTARTS} restarts, max gap over A, 4 masks and R(A) {gap:.2e} \
             (tol {QMA2_TOL:e}), honest {honest:.2e}; grid oracle on {GRID_CASES} qubit pairs {grid_gap:.2e} \
             (tol {GRID_TOL:e}); {:.1}s (budget {}s)",
            elapsed.as_secs_f64(),
            QMA2_BUDGET.as_secs()
        ),
    )
}

fn protocols() -> Outcome {
    let mut rng = rng(7);
    let (mut gap, mut dephased, mut commutator) = (0.0f64, 0.0f64, 0.0f64);
    let mut undetected = 0;
    let mut cases = 0;
    for k in 0..=4usize {
        let mover = if k % 2 == 0 { FirstMover::Verifier } else { FirstMover::Prover };
        for _ in 0..PROTOCOL_CASES_PER_SHAPE {
            let registers = Registers::new(2, 2, 2);
            let spec = random_protocol_with(&mut rng, registers, mover, k).unwrap();
            let strategy = random_strategy_with(&mut rng, &spec);
            let enc = encode_protocol(&spec).unwrap();
            let enc_strategy = encode_strategy(&spec, &strategy).unwrap();
            let original = run_protocol(&spec, &strategy).unwrap();
            let encoded = run_protocol(&enc, &enc_strategy).unwrap();
            gap = gap.max((original - encoded).abs());
            let any = random_strategy_with(&mut rng, &enc);
            dephased = dephased.max((run_protocol(&enc, &any).unwrap() - run_protocol_dephased(&enc, &any).unwrap()).abs());
            commutator = commutator.max(commutation_check(&enc).unwrap());
            if !enc.verifier_unitaries.is_empty() {
                let t = rng.random_range(0..enc.verifier_unitaries.len());
                let bad = corrupt_encoding(&enc, t, &spec.verifier_unitaries[t]).unwrap();
                if commutation_check(&bad).unwrap() <= PROTOCOL_COMMUTATOR_TOL {
                    undetected += 1;
                }
            }
            cases += 1;
        }
    }
    outcome(
        gap <= PROTOCOL_TOL && dephased <= PROTOCOL_TOL && commutator <= PROTOCOL_COMMUTATOR_TOL && undetected == 0,
        format!(
            "{cases} protocols, k = 0..4, honest gap {gap:.2e} (tol {PROTOCOL_TOL:e}), dephasing {dephased:.2e}, \
             commutator {commutator:.2e} (tol {PROTOCOL_COMMUTATOR_TOL:e}), corrupted encodings undetected {undetected}"
        ),
    )
}

fn counterexample() -> Outcome {
    let mut rng = rng(8);
    let mut failures = Vec::new();
    let mut instances = 0;
    for n in 1..=4usize {
        let d = 1 << n;
        let mut bases = vec![
            ("I", ComplexMatrix::identity(d)),
            ("H", (0..n).fold(ComplexMatrix::identity(1), |acc, _| acc.tensor(&gates::hadamard()))),
        ];
        bases.push(("random", random_unitary_with(&mut rng, d)));
        for (name, u) in bases {
            let r = counterexample_report(&build_global_phase_instance(&u, n).unwrap()).unwrap();
            let ok = r.trace_norm == 0.0
                && r.complex_success == 0.5
                && r.naive_inner.abs() <= EXACT_TOL
                && (r.naive_success - 1.0).abs() <= EXACT_TOL
                && r.x_relation_deviation <= EXACT_TOL
                && (r.two_extra_success - 0.5).abs() <= TWO_EXTRA_TOL;
            if !ok {
                failures.push(format!("{name}/{n}: {r:?}"));
            }
            instances += 1;
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{instances} instances, n = 1..4: trace distance 0 and complex success 0.5 exact, naive inner \
                 product 0 and naive success 1 within {EXACT_TOL:e}, X relation within {EXACT_TOL:e}, \
                 two-extra success 0.5 within {TWO_EXTRA_TOL:e}"
            )
        } else {
            failures.join("; ")
        },
    )
}

fn cli() -> Outcome {
    let failures: Vec<String> = common::CASES
        .iter()
        .filter_map(|c| common::check(c).err().map(|e| e.lines().next().unwrap_or_default().to_string()))
        .collect();
    let codes: Vec<i32> = (0..=3).filter(|code| common::CASES.iter().any(|c| c.exit == *code)).collect();
    outcome(
        failures.is_empty() && codes.len() == 4,
        if failures.is_empty() {
            format!("{} golden cases byte-identical, exit codes {codes:?} exercised", common::CASES.len())
        } else {
            failures.join("; ")
        },
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("lemma 1 identities", lemma1),
        ("lemma 2 multiparty", lemma2),
        ("lemma 3 trace identity", lemma3),
        ("lemma 4 product encoding", lemma4),
        ("QMA spectral check", qma),
        ("QMA(2) product maximum", qma2),
        ("protocol engine", protocols),
        ("global-phase counterexample", counterexample),
        ("CLI golden files", cli),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{}] {}. {name}: {} ({:.2}s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
