import { spawnSync } from 'node:child_process';

import { parseBundle, type ConstraintBundle } from './bundle.js';
import { CliError } from './errors.js';
import { Monitor } from './monitor.js';

/** One recognizer step as `flc trace` prints it. */
export type TraceStep = [state: number, cost: number, violated: boolean];

/** Result of tracing one token stream. */
export interface TraceResult {
  steps: TraceStep[];
  final: number;
  violations: number;
  cost: number;
  masks?: (number | null)[];
}

export interface CliOutput {
  stdout: string;
  stderr: string;
}

// Batch traces of ten-thousand-stream fixtures run to a few megabytes.
const MAX_BUFFER = 256 * 1024 * 1024;

function commandCandidates(): [string, string[]][] {
  const override = process.env['FLC_CLI'];
  if (override) {
    const parts = override.split(/\s+/).filter((p) => p.length > 0);
    return [[parts[0], parts.slice(1)]];
  }
  // The console script when the package is on PATH, else the module.
  return [
    ['flc', []],
    ['python3', ['-m', 'flc']],
  ];
}

/**
 * Run one `flc` invocation and return its output.
 *
 * Set FLC_CLI (e.g. "python3 -m flc") to pin the command. A non-zero
 * exit becomes a CliError carrying the exit code and stderr.
 */
export function runFlc(args: string[]): CliOutput {
  const candidates = commandCandidates();
  for (const [cmd, pre] of candidates) {
    const res = spawnSync(cmd, [...pre, ...args], {
      encoding: 'utf8',
      maxBuffer: MAX_BUFFER,
    });
    if (res.error) {
      const code = (res.error as NodeJS.ErrnoException).code;
      if (code === 'ENOENT' && candidates.length > 1) continue;
      throw res.error;
    }
    if (res.status !== 0) {
      throw new CliError(
        `flc ${args[0] ?? ''} failed (exit ${res.status}): ${res.stderr.trim()}`,
        res.status ?? -1,
        res.stderr,
      );
    }
    return { stdout: res.stdout, stderr: res.stderr };
  }
  throw new CliError('no flc command found on PATH (set FLC_CLI)', -1, '');
}

/** Compile a constraint (built-in name or .flc path) to its bundle. */
export function compileBundle(spec: string): ConstraintBundle {
  return parseBundle(runFlc(['compile', spec, '--bundle']).stdout);
}

/** Open a monitor handle for a constraint. */
export function openMonitor(spec: string): Monitor {
  return new Monitor(compileBundle(spec));
}

/**
 * Replay every stream in a batch file through `flc trace`.
 *
 * The file holds `{"streams": [[token, ...], ...]}` and optionally
 * `"ranked"`; passing `ranked` here overrides the file's list.
 */
export function traceBatch(
  spec: string,
  batchFile: string,
  ranked?: string[],
): TraceResult[] {
  const args = ['trace', spec, '--batch', batchFile];
  if (ranked !== undefined) {
    args.push('--ranked', ranked.join(','));
  }
  const doc = JSON.parse(runFlc(args).stdout) as { results: TraceResult[] };
  return doc.results;
}
