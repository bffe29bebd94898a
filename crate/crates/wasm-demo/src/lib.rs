//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export returns a flat `Vec<f64>` (a `Float64Array` on the JS side);
//! the layout of each is documented on the function.

use realq::encode::{encode_vector, EncodedState};
use realq::linalg::random::rng_from_seed;
use realq::linalg::{partial_trace, ComplexVector, C64};
use realq::multiparty::encode_vector_m;
use realq::protocols::{helstrom_probability, qma2_product_max, SeeSawOptions};
use realq::separable::{encode_separable, random_separable_povm_with};
use wasm_bindgen::prelude::*;

fn bloch_state(theta: f64, phi: f64) -> ComplexVector {
    ComplexVector::new(vec![
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    ])
}

/// Encodes `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
///
/// Layout: `[ψ_0.re, ψ_0.im, ψ_1.re, ψ_1.im, r_0, r_1, r_2, r_3, b_00.re,
/// b_00.im, …, b_11.im]` where `r` is the real encoding over `|extra, qubit⟩`
/// and `b` its branch form `(|0⟩|ψ⟩ + |1⟩|ψ*⟩)/√2`.
#[wasm_bindgen]
pub fn encode_qubit(theta: f64, phi: f64) -> Vec<f64> {
    let psi = bloch_state(theta, phi);
    let real = encode_vector(&psi);
    let branch = EncodedState { vector: real.clone(), source_dim: 2 }.branch_form();
    let mut out: Vec<f64> = psi.as_slice().iter().flat_map(|z| [z.re, z.im]).collect();
    out.extend(real.as_slice().iter().map(|z| z.re));
    out.extend(branch.as_slice().iter().flat_map(|z| [z.re, z.im]));
    out
}

/// Best probability of telling `|ψ⟩` from `e^{iθ}|ψ⟩` for a fixed real
/// `|ψ⟩`.
///
/// Layout: `[complex, one_extra, two_extra]`: with the complex states, with
/// one shared extra qubit held entirely by the distinguisher, and with the
/// distinguisher holding only one of two extra qubits.
#[wasm_bindgen]
pub fn phase_game(theta: f64) -> Vec<f64> {
    let psi = ComplexVector::from_real(&[0.6, 0.8]);
    let rotated = psi.scale(C64::from_polar(1.0, theta));
    let complex = helstrom_probability(&psi.projector(), &rotated.projector()).expect("2x2 Hermitian");
    let one = helstrom_probability(&encode_vector(&psi).projector(), &encode_vector(&rotated).projector())
        .expect("4x4 Hermitian");
    let share = |v: &ComplexVector| {
        partial_trace(&encode_vector_m(v, 2).projector(), &[2, 2, 2], &[1, 2]).expect("valid subsystems")
    };
    let two = helstrom_probability(&share(&psi), &share(&rotated)).expect("4x4 Hermitian");
    vec![complex, one, two]
}

/// See-saw on a random separable two-qubit accept operator.
///
/// Layout: `[original, encoded, n, h_1, …, h_n]` where `h` is the objective
/// after each sweep of the winning restart on the original operator.
#[wasm_bindgen]
pub fn seesaw_trace(seed: u32, terms: u32, restarts: u32) -> Vec<f64> {
    let mut rng = rng_from_seed(u64::from(seed));
    let a = random_separable_povm_with(&mut rng, &[2, 2], terms.clamp(1, 8) as usize);
    let opts = SeeSawOptions { restarts: restarts.clamp(1, 50) as usize, seed: u64::from(seed), ..Default::default() };
    let original = qma2_product_max(&a, &opts).expect("valid POVM");
    let encoded = realq::protocols::product_max_dense(
        &encode_separable(&a).expect("two parties"),
        4,
        4,
        &opts,
    )
    .expect("valid POVM");
    let mut out = vec![original.probability, encoded.probability, original.history.len() as f64];
    out.extend(&original.history);
    out
}
