/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const encode_qubit: (a: number, b: number) => [number, number];
export const phase_game: (a: number) => [number, number];
export const seesaw_trace: (a: number, b: number, c: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
