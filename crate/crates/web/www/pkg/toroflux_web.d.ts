/* tslint:disable */
/* eslint-disable */

/**
 * Normalized permeance families `G_m/(μ0 R)` over `r_i/R`.
 *
 * Curves are stored family after family; gaps where a tube does not exist
 * are NaN so plots break the line there.
 */
export class Curves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly exact: Float64Array;
    readonly legacy: Float64Array;
    readonly x: Float64Array;
}

/**
 * One tube evaluated at one geometry.
 */
export class Evaluation {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly branch: string;
    readonly eta: number;
    readonly exists: boolean;
    /**
     * Wrapped-cylinder permeance, henry; NaN when undefined.
     */
    readonly legacy: number;
    /**
     * Henry; 0 when the tube does not exist.
     */
    readonly permeance: number;
}

/**
 * Force against stroke for the exact and the legacy model.
 */
export class ForceCurves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly deviationPercent: Float64Array;
    readonly exact: Float64Array;
    readonly legacy: Float64Array;
    readonly stroke: Float64Array;
}

export function evaluate(kind: string, pole_radius: number, inner_radius: number, outer_radius: number): Evaluation;

export function forceCurves(kind: string, mode: string, pole_radius: number, held: number, theta: number, start: number, stop: number, samples: number): ForceCurves;

export function permeanceCurves(kind: string, outer: Float64Array, ri_min: number, ri_max: number, samples: number): Curves;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curves_free: (a: number, b: number) => void;
    readonly __wbg_evaluation_free: (a: number, b: number) => void;
    readonly __wbg_forcecurves_free: (a: number, b: number) => void;
    readonly curves_exact: (a: number) => [number, number];
    readonly curves_legacy: (a: number) => [number, number];
    readonly curves_x: (a: number) => [number, number];
    readonly evaluate: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly evaluation_branch: (a: number) => [number, number];
    readonly evaluation_eta: (a: number) => number;
    readonly evaluation_exists: (a: number) => number;
    readonly evaluation_legacy: (a: number) => number;
    readonly evaluation_permeance: (a: number) => number;
    readonly forceCurves: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number];
    readonly forcecurves_deviationPercent: (a: number) => [number, number];
    readonly forcecurves_exact: (a: number) => [number, number];
    readonly forcecurves_legacy: (a: number) => [number, number];
    readonly forcecurves_stroke: (a: number) => [number, number];
    readonly permeanceCurves: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
