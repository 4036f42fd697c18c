// Acceptance: the editor's verdicts are the service's verdicts, byte for
// byte equal to what the CLI reports, and a broken citation flags exactly
// the citing line within one debounce interval.  Spawns the real service.

import { execFile, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { promisify } from "node:util";

import { afterAll, beforeAll, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { Debouncer } from "../src/debounce.js";
import {
  diagnosticsByLine, documentForWire, initialState, setJustification,
} from "../src/model.js";
import type { EditorState } from "../src/model.js";
import { toNdp } from "../src/ndp.js";
import type { ReportJson } from "../src/types.js";

const execFileP = promisify(execFile);
const repoRoot = resolve(__dirname, "..", "..");
const pythonEnv = {
  ...process.env,
  PYTHONPATH: join(repoRoot, "src"),
  PYTHONIOENCODING: "utf-8",
};

let server: ChildProcess;
let base = "";
let api: ApiClient;
let scratch: string;

beforeAll(async () => {
  scratch = mkdtempSync(join(tmpdir(), "fitchcheck-ui-"));
  server = spawn("python3", ["-m", "fitchcheck.cli", "serve", "--port", "0"],
                 { cwd: repoRoot, env: pythonEnv, stdio: ["ignore", "pipe", "pipe"] });
  base = await new Promise<string>((resolvePort, reject) => {
    let buffer = "";
    server.stdout!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString("utf-8");
      const line = buffer.split("\n")[0];
      if (line.includes("listening")) {
        resolvePort(JSON.parse(line).listening as string);
      }
    });
    server.on("error", reject);
    server.on("exit", (code) => reject(new Error(`server exited early: ${code}`)));
  });
  api = new ApiClient(base);
}, 30_000);

afterAll(() => {
  server?.kill();
  rmSync(scratch, { recursive: true, force: true });
});

async function cliReport(text: string, name: string): Promise<ReportJson> {
  const path = join(scratch, `${name}.ndp`);
  writeFileSync(path, text, "utf-8");
  const { stdout } = await execFileP(
    "python3", ["-m", "fitchcheck.cli", "check", "--json", path],
    { cwd: repoRoot, env: pythonEnv }).catch((e) => e as { stdout: string });
  return (JSON.parse(stdout) as { report: ReportJson }).report;
}

describe("UI parity with the CLI", () => {
  it("every corpus example shows exactly the CLI's report, and its export "
     + "re-checks to the same report", async () => {
    const examples = await api.examples();
    expect(examples.length).toBeGreaterThanOrEqual(8);
    for (const entry of examples) {
      const example = await api.example(entry.id);
      const state = initialState(example.document);

      // the editor's verdict path: POST the mirrored document
      const uiResponse = await api.check(documentForWire(state.document));
      const fromCli = await cliReport(example.text, entry.id);
      expect(uiResponse.report, entry.id).toEqual(fromCli);

      // export and re-check: identical report again
      const exported = toNdp(state.document);
      const reExported = await api.checkText(exported);
      expect(reExported.report, `${entry.id} (exported)`).toEqual(fromCli);
      const exportedCli = await cliReport(exported, `${entry.id}-export`);
      expect(exportedCli, `${entry.id} (exported, CLI)`).toEqual(fromCli);
    }
  }, 120_000);
});

describe("live feedback", () => {
  it("breaking one citation flags exactly the citing line within one "
     + "debounce interval", async () => {
    vi.useFakeTimers();
    try {
      const example = await api.example("socrates_direct");
      let state: EditorState = initialState(example.document);

      let settled: (() => void) | null = null;
      const checker = new Debouncer(async () => {
        const resp = await api.check(documentForWire(state.document), state.config);
        state = { ...state, lastReport: resp.report, dirty: false };
        settled?.();
      }, 300);

      // clean baseline
      let done = new Promise<void>((r) => { settled = r; });
      state = { ...state, dirty: true };
      checker.schedule();
      await vi.advanceTimersByTimeAsync(300);
      await done;
      expect(state.lastReport!.accepted).toBe(true);

      // the edit: line 4's citation "3, 2" becomes "3, 1"
      state = setJustification(state, 4, "ImpE", "3, 1");
      done = new Promise<void>((r) => { settled = r; });
      checker.schedule();

      await vi.advanceTimersByTimeAsync(299);
      expect(state.dirty).toBe(true);          // not yet: inside the interval
      await vi.advanceTimersByTimeAsync(1);    // one debounce interval reached
      await done;

      expect(state.dirty).toBe(false);
      expect(state.lastReport!.accepted).toBe(false);
      const flagged = diagnosticsByLine(state);
      expect([...flagged.keys()]).toEqual([4]);
      expect(flagged.get(4)!.map((d) => d.code)).toEqual(["E_RULE_MISMATCH"]);
    } finally {
      vi.useRealTimers();
    }
  }, 30_000);

  it("deleting a cited line flags the citing lines", async () => {
    const example = await api.example("socrates_direct");
    const state = initialState(example.document);
    const { deleteLine } = await import("../src/model.js");
    const after = deleteLine(state, 3);
    const resp = await api.check(documentForWire(after.document));
    expect(resp.report.accepted).toBe(false);
    const badLines = resp.report.diagnostics
      .filter((d) => d.code === "E_BAD_CITATION").map((d) => d.line);
    expect(badLines).toContain(3);   // the old line 4, now 3, cites 0
  });
});
