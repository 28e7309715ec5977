/* tslint:disable */
/* eslint-disable */

/**
 * `|K(a)_{r,s}|`, row-major.
 */
export function kernel_magnitude(twoj: number, q: number, a: number): Float64Array;

/**
 * Sensor points `x_s`, ascending in `s`.
 */
export function positions(twoj: number, q: number): Float64Array;

/**
 * Ground state followed by `V − E₀` from the grid difference and from the
 * closed form, each `2j+1` long.
 */
export function potential(twoj: number, q: number): Float64Array;

/**
 * Applies `K(a)` to the samples `re + i·im`; the result is interleaved
 * `re, im` pairs.
 */
export function transform_signal(q: number, a: number, re: Float64Array, im: Float64Array): Float64Array;

/**
 * Row-major `Φₙ(x_s)`: `2j+1` rows of `2j+1` samples.
 */
export function wavefunctions(twoj: number, q: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly kernel_magnitude: (a: number, b: number, c: number) => [number, number, number, number];
    readonly positions: (a: number, b: number) => [number, number, number, number];
    readonly potential: (a: number, b: number) => [number, number, number, number];
    readonly transform_signal: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly wavefunctions: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
