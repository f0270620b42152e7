/* tslint:disable */
/* eslint-disable */

export class Stepper {
    free(): void;
    [Symbol.dispose](): void;
    finish(): void;
    constructor(source: string, seed: bigint, bin: string, compression: boolean);
    scene(): string;
    step(): boolean;
}

/**
 * Per-bin metrics with and without compression.
 */
export function compare(source: string, seed: bigint): string;

/**
 * Compression ratio and resulting height of one item under a load.
 */
export function deform(compressibility: number, max_ratio: number, weight: number, load: number, height: number): string;

/**
 * Packs a whole bin and returns the scene.
 */
export function pack(source: string, seed: bigint, bin: string, compression: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_stepper_free: (a: number, b: number) => void;
    readonly compare: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly deform: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly pack: (a: number, b: number, c: bigint, d: number, e: number, f: number) => [number, number, number, number];
    readonly stepper_finish: (a: number) => void;
    readonly stepper_new: (a: number, b: number, c: bigint, d: number, e: number, f: number) => [number, number, number];
    readonly stepper_scene: (a: number) => [number, number];
    readonly stepper_step: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
