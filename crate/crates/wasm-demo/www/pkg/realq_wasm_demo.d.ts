/* tslint:disable */
/* eslint-disable */

/**
 * Encodes `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
 *
 * Layout: `[ψ_0.re, ψ_0.im, ψ_1.re, ψ_1.im, r_0, r_1, r_2, r_3, b_00.re,
 * b_00.im, …, b_11.im]` where `r` is the real encoding over `|extra, qubit⟩`
 * and `b` its branch form `(|0⟩|ψ⟩ + |1⟩|ψ*⟩)/√2`.
 */
export function encode_qubit(theta: number, phi: number): Float64Array;

/**
 * Best probability of telling `|ψ⟩` from `e^{iθ}|ψ⟩` for a fixed real
 * `|ψ⟩`.
 *
 * Layout: `[complex, one_extra, two_extra]`: with the complex states, with
 * one shared extra qubit held entirely by the distinguisher, and with the
 * distinguisher holding only one of two extra qubits.
 */
export function phase_game(theta: number): Float64Array;

/**
 * See-saw on a random separable two-qubit accept operator.
 *
 * Layout: `[original, encoded, n, h_1, …, h_n]` where `h` is the objective
 * after each sweep of the winning restart on the original operator.
 */
export function seesaw_trace(seed: number, terms: number, restarts: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly encode_qubit: (a: number, b: number) => [number, number];
    readonly phase_game: (a: number) => [number, number];
    readonly seesaw_trace: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
