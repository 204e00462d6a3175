import { defineConfig } from "vitest/config";

export default defineConfig({
  plugins: [
    {
      // source files import "./x.js" (browser ES modules after tsc);
      // map those back to the .ts sources for the test runner
      name: "resolve-ts-from-js",
      enforce: "pre",
      async resolveId(source, importer, options) {
        if (importer && source.startsWith(".") && source.endsWith(".js")) {
          const asTs = source.slice(0, -3) + ".ts";
          const resolved = await this.resolve(asTs, importer, {
            ...options,
            skipSelf: true,
          });
          if (resolved) return resolved;
        }
        return null;
      },
    },
  ],
  test: {
    environment: "node",
    include: ["test/**/*.test.ts"],
  },
});
