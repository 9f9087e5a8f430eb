import { defineConfig } from 'vitest/config';

// The fidelity batches shell out to the Python CLI and replay thousands
// of streams; give them room.
export default defineConfig({
  test: {
    testTimeout: 120_000,
  },
});
