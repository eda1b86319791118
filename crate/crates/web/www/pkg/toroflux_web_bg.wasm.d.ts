/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curves_free: (a: number, b: number) => void;
export const __wbg_evaluation_free: (a: number, b: number) => void;
export const __wbg_forcecurves_free: (a: number, b: number) => void;
export const curves_exact: (a: number) => [number, number];
export const curves_legacy: (a: number) => [number, number];
export const curves_x: (a: number) => [number, number];
export const evaluate: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const evaluation_branch: (a: number) => [number, number];
export const evaluation_eta: (a: number) => number;
export const evaluation_exists: (a: number) => number;
export const evaluation_legacy: (a: number) => number;
export const evaluation_permeance: (a: number) => number;
export const forceCurves: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number];
export const forcecurves_deviationPercent: (a: number) => [number, number];
export const forcecurves_exact: (a: number) => [number, number];
export const forcecurves_legacy: (a: number) => [number, number];
export const forcecurves_stroke: (a: number) => [number, number];
export const permeanceCurves: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
