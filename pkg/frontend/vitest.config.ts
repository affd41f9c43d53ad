import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    // embedding batches and the Python interop checks outlast the default 5s
    testTimeout: 60000,
  },
});
