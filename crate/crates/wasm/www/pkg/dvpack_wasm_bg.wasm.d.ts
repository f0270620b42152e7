/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_stepper_free: (a: number, b: number) => void;
export const compare: (a: number, b: number, c: bigint) => [number, number, number, number];
export const deform: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const pack: (a: number, b: number, c: bigint, d: number, e: number, f: number) => [number, number, number, number];
export const stepper_finish: (a: number) => void;
export const stepper_new: (a: number, b: number, c: bigint, d: number, e: number, f: number) => [number, number, number];
export const stepper_scene: (a: number) => [number, number];
export const stepper_step: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
