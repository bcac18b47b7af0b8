import { defineConfig } from "vitest/config";

// The dev server proxies /api to a locally running `matchkit serve`.
export default defineConfig({
  server: {
    port: 5173,
    proxy: {
      "/api": "http://127.0.0.1:8750",
    },
  },
  build: {
    target: "es2022",
  },
  test: {
    environment: "node",
  },
});
