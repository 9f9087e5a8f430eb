import type { ConstraintBundle } from './bundle.js';
import { ClosedMonitorError, UnknownSymbolError } from './errors.js';

/** What one token did: the state it entered, its cost, violation flag. */
export interface StepOutcome {
  state: number;
  cost: number;
  violated: boolean;
}

/**
 * Stateful recognizer advanced alongside one trajectory.
 *
 * The machine itself comes pre-compiled out of `flc compile --bundle`;
 * this class only walks the table. Costs are charged on the entered
 * state. Entering an accepting state counts as a violation; in reset
 * mode the monitor then returns to the start state so repeats stay
 * countable, in absorbing mode it keeps folding the transition
 * function. `step` always reports the entered state, before any reset.
 *
 * One monitor per trajectory; handles are not shared across threads.
 */
export class Monitor {
  private q: number;
  private closed = false;
  private readonly symbolIndex: Map<string, number>;
  private readonly accepting: Set<number>;

  private _violations = 0;
  private _episodeCost = 0;
  // lifetime counters survive reset(); training-level accounting
  private _totalViolations = 0;
  private _totalCost = 0;

  constructor(readonly bundle: ConstraintBundle) {
    this.q = bundle.dfa.start;
    this.symbolIndex = new Map(bundle.alphabet.map((sym, i) => [sym, i]));
    this.accepting = new Set(bundle.dfa.accepting);
  }

  /** Current state (after any reset-mode return to start). */
  get state(): number {
    this.ensureOpen();
    return this.q;
  }

  /** Violations in the current episode. */
  get violations(): number {
    this.ensureOpen();
    return this._violations;
  }

  /** Accumulated cost in the current episode. */
  get episodeCost(): number {
    this.ensureOpen();
    return this._episodeCost;
  }

  get totalViolations(): number {
    this.ensureOpen();
    return this._totalViolations;
  }

  get totalCost(): number {
    this.ensureOpen();
    return this._totalCost;
  }

  /** Consume one token. */
  step(token: string): StepOutcome {
    this.ensureOpen();
    const next = this.bundle.dfa.delta[this.q][this.lookup(token)];
    const cost = this.bundle.cost[next];
    const violated = this.accepting.has(next);
    this._episodeCost += cost;
    this._totalCost += cost;
    if (violated) {
      this._violations += 1;
      this._totalViolations += 1;
      this.q = this.bundle.mode === 'reset' ? this.bundle.dfa.start : next;
    } else {
      this.q = next;
    }
    return { state: next, cost, violated };
  }

  /** Where would this token lead? No state or counter changes. */
  peek(token: string): number {
    this.ensureOpen();
    return this.bundle.dfa.delta[this.q][this.lookup(token)];
  }

  /**
   * Index of the first ranked token whose one-step lookahead stays out
   * of the accepting states, or null when every candidate violates.
   */
  mask(ranked: string[]): number | null {
    this.ensureOpen();
    for (let i = 0; i < ranked.length; i++) {
      if (!this.accepting.has(this.peek(ranked[i]))) return i;
    }
    return null;
  }

  /** New episode: back to the start state, per-episode counters cleared. */
  reset(): void {
    this.ensureOpen();
    this.q = this.bundle.dfa.start;
    this._violations = 0;
    this._episodeCost = 0;
  }

  /**
   * Release the handle. There is nothing foreign to free here, but the
   * handle contract is explicit closure: every later call throws.
   * Idempotent.
   */
  close(): void {
    this.closed = true;
  }

  private lookup(token: string): number {
    const i = this.symbolIndex.get(token);
    if (i === undefined) throw new UnknownSymbolError(token);
    return i;
  }

  private ensureOpen(): void {
    if (this.closed) throw new ClosedMonitorError();
  }
}
