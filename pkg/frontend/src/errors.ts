/** A compiled-machine document that does not match the published schema. */
export class BundleFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = 'BundleFormatError';
  }
}

/** A token outside the machine's alphabet. */
export class UnknownSymbolError extends Error {
  constructor(readonly symbol: string) {
    super(`unknown symbol ${JSON.stringify(symbol)}`);
    this.name = 'UnknownSymbolError';
  }
}

/** Any operation on a handle after close(). */
export class ClosedMonitorError extends Error {
  constructor() {
    super('monitor is closed');
    this.name = 'ClosedMonitorError';
  }
}

/**
 * A failed `flc` invocation. `exitCode` carries the CLI contract
 * (1 for configuration errors, 2 for internal ones) and `stderr`
 * the diagnostic text.
 */
export class CliError extends Error {
  constructor(
    message: string,
    readonly exitCode: number,
    readonly stderr: string,
  ) {
    super(message);
    this.name = 'CliError';
  }
}
