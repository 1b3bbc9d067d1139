import assert from "node:assert/strict";
import { test } from "node:test";

import { ApiClient, ApiRequestError } from "../src/api.js";
import { FakeBackend } from "./fake-backend.js";

test("client forms routes and query strings", async () => {
  const backend = new FakeBackend();
  const client = new ApiClient({ baseUrl: "http://api.test/", fetchImpl: backend.fetch });
  await client.health();
  await client.searchPredicates("use", 5);
  assert.deepEqual(backend.requestLog, [
    "GET /api/health",
    "GET /api/predicates?q=use&limit=5",
  ]);
});

test("errors surface status and code", async () => {
  const backend = new FakeBackend();
  const client = new ApiClient({ baseUrl: "http://api.test", fetchImpl: backend.fetch });
  await assert.rejects(
    () => client.createPaper({ title: "X", contributions: [{ problem: "p", results: [] }] }),
    (error: unknown) => {
      assert.ok(error instanceof ApiRequestError);
      assert.equal(error.status, 400);
      assert.equal(error.code, "missing_result");
      return true;
    },
  );
  await assert.rejects(
    () => client.getComparison(["R1"]),
    (error: unknown) => error instanceof ApiRequestError && error.status === 422,
  );
});

test("write token travels on mutating requests", async () => {
  let seenToken: string | null = null;
  const backend = new FakeBackend();
  const spyFetch: typeof fetch = (input, init) => {
    const headers = new Headers(init?.headers);
    if (init?.method === "POST") {
      seenToken = headers.get("X-Write-Token");
    }
    return backend.fetch(input, init);
  };
  const client = new ApiClient({
    baseUrl: "http://api.test",
    fetchImpl: spyFetch,
    writeToken: "sekrit",
  });
  await client.createPaper({
    title: "T",
    contributions: [{ problem: "p", results: ["r"] }],
  });
  assert.equal(seenToken, "sekrit");
});

test("autocomplete matches substrings like the backend contract", async () => {
  const backend = new FakeBackend();
  const client = new ApiClient({ baseUrl: "http://api.test", fetchImpl: backend.fetch });
  const options = await client.searchPredicates("use");
  assert.deepEqual(options.map((o) => o.label), ["uses", "used for"]);
});
