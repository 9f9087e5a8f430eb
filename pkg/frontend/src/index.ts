export {
  parseBundle,
  validateBundle,
  type ConstraintBundle,
  type DfaTable,
} from './bundle.js';
export {
  BundleFormatError,
  CliError,
  ClosedMonitorError,
  UnknownSymbolError,
} from './errors.js';
export { Monitor, type StepOutcome } from './monitor.js';
export {
  compileBundle,
  openMonitor,
  runFlc,
  traceBatch,
  type CliOutput,
  type TraceResult,
  type TraceStep,
} from './flc.js';
