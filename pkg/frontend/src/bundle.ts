import { BundleFormatError } from './errors.js';

/**
 * Complete transition table as exported by `flc compile --json`:
 * `delta[state][symbolIndex]` is the successor state, one column per
 * alphabet symbol in declaration order.
 */
export interface DfaTable {
  alphabet: string[];
  states: number;
  start: number;
  accepting: number[];
  delta: number[][];
}

/** One `flc compile --bundle` document: everything a monitor needs. */
export interface ConstraintBundle {
  name: string;
  alphabet: string[];
  dfa: DfaTable;
  /** Per-state cost, indexed by state. */
  cost: number[];
  mode: 'reset' | 'absorbing';
  limit: number;
}

function fail(message: string): never {
  throw new BundleFormatError(message);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === 'object' && value !== null && !Array.isArray(value);
}

function asStringArray(value: unknown, what: string): string[] {
  if (!Array.isArray(value) || value.length === 0) {
    fail(`${what} must be a non-empty array`);
  }
  for (const entry of value) {
    if (typeof entry !== 'string' || entry.length === 0) {
      fail(`${what} entries must be non-empty strings`);
    }
  }
  return value as string[];
}

function asStateIndex(value: unknown, states: number, what: string): number {
  if (typeof value !== 'number' || !Number.isInteger(value)) {
    fail(`${what} must be an integer`);
  }
  if (value < 0 || value >= states) {
    fail(`${what} is ${value}, outside 0..${states - 1}`);
  }
  return value;
}

/** Parse and validate a bundle document from JSON text. */
export function parseBundle(text: string): ConstraintBundle {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    fail(`bundle is not valid JSON: ${String(err)}`);
  }
  return validateBundle(doc);
}

/** Validate an already-parsed bundle document. */
export function validateBundle(doc: unknown): ConstraintBundle {
  if (!isRecord(doc)) fail('bundle must be a JSON object');
  for (const key of ['name', 'alphabet', 'dfa', 'cost', 'mode', 'limit']) {
    if (!(key in doc)) fail(`bundle is missing ${JSON.stringify(key)}`);
  }

  const name = doc['name'];
  if (typeof name !== 'string' || name.length === 0) {
    fail('name must be a non-empty string');
  }

  const alphabet = asStringArray(doc['alphabet'], 'alphabet');
  if (new Set(alphabet).size !== alphabet.length) {
    fail('alphabet contains duplicate symbols');
  }

  const mode = doc['mode'];
  if (mode !== 'reset' && mode !== 'absorbing') {
    fail(`mode must be "reset" or "absorbing", got ${JSON.stringify(mode)}`);
  }

  const limit = doc['limit'];
  if (typeof limit !== 'number' || !Number.isFinite(limit) || limit < 0) {
    fail('limit must be a non-negative finite number');
  }

  const rawDfa = doc['dfa'];
  if (!isRecord(rawDfa)) fail('dfa must be a JSON object');
  const states = rawDfa['states'];
  if (typeof states !== 'number' || !Number.isInteger(states) || states < 1) {
    fail('dfa.states must be a positive integer');
  }
  const tableAlphabet = asStringArray(rawDfa['alphabet'], 'dfa.alphabet');
  if (
    tableAlphabet.length !== alphabet.length ||
    tableAlphabet.some((sym, i) => sym !== alphabet[i])
  ) {
    fail('bundle alphabet and table alphabet disagree');
  }
  const start = asStateIndex(rawDfa['start'], states, 'dfa.start');

  const rawAccepting = rawDfa['accepting'];
  if (!Array.isArray(rawAccepting)) fail('dfa.accepting must be an array');
  const accepting = rawAccepting.map((q, i) =>
    asStateIndex(q, states, `dfa.accepting[${i}]`),
  );

  const rawDelta = rawDfa['delta'];
  if (!Array.isArray(rawDelta) || rawDelta.length !== states) {
    fail(`dfa.delta must have one row per state (${states})`);
  }
  const delta = rawDelta.map((row, q) => {
    if (!Array.isArray(row) || row.length !== alphabet.length) {
      fail(`dfa.delta[${q}] must have one entry per symbol (${alphabet.length})`);
    }
    return row.map((next, i) =>
      asStateIndex(next, states, `dfa.delta[${q}][${i}]`),
    );
  });

  const rawCost = doc['cost'];
  if (!Array.isArray(rawCost) || rawCost.length !== states) {
    fail(`cost must have one entry per state (${states})`);
  }
  const cost = rawCost.map((value, q) => {
    if (typeof value !== 'number' || !Number.isFinite(value)) {
      fail(`cost[${q}] must be a finite number`);
    }
    return value;
  });

  return {
    name,
    alphabet,
    dfa: { alphabet: tableAlphabet, states, start, accepting, delta },
    cost,
    mode,
    limit,
  };
}
