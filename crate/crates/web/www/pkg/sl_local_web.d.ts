/* tslint:disable */
/* eslint-disable */

/**
 * Classifies a map on sl_2 given as its 3x3 matrix in the basis (e, f, h).
 * Non-members also get a concrete refutation point.
 */
export function classify_sl2(matrix_json: string): string;

/**
 * Builds `D_alpha` on sl_n and reports identities, basis certification and
 * refutation, together with the witness matrices and the map itself.
 */
export function delta_alpha(n: number, alpha: string): string;

/**
 * Decides whether `X` and `Y` are similar and returns `T` with `X T = T Y`.
 */
export function similarity(x_json: string, y_json: string, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly classify_sl2: (a: number, b: number) => [number, number];
    readonly delta_alpha: (a: number, b: number, c: number) => [number, number];
    readonly similarity: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
