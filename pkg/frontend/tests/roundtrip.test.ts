/**
 * Dashboard round trip against a live review service.
 *
 * Spawns the Python service over a freshly graded fixture, drives the
 * real override form (the same DOM the browser runs), and verifies
 * that the displayed final grade updates and the audit log grows by
 * exactly one entry.  The empty-note case never reaches the network.
 */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderOverrideForm } from "../src/views/override.js";
import { renderTeamDetail } from "../src/views/team.js";
import type { AnomalyFlag } from "../src/types.js";

const TOKEN = "dashboard-roundtrip-token";
const PYTHON = process.env.PYTHON ?? "python3";

let dataDir: string;
let service: ChildProcess;
let base: string;
let client: ApiClient;

function auditLines(): number {
  const path = join(dataDir, "teams", "demo-team", "audit.jsonl");
  return readFileSync(path, "utf-8").trim().split("\n").length;
}

async function waitForHealth(url: string): Promise<void> {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${url}/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error("review service did not come up");
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "dashboard-data-"));
  execFileSync(PYTHON, [join(__dirname, "make_fixture.py"), dataDir], {
    stdio: "pipe",
  });
  const port = 8700 + Math.floor(Math.random() * 1000);
  base = `http://127.0.0.1:${port}`;
  service = spawn(
    PYTHON,
    ["-c",
     "import sys; from repograde.cli import main; sys.exit(main(sys.argv[1:]))",
     "--quiet", "serve", "--data-dir", dataDir,
     "--bind", `127.0.0.1:${port}`],
    { env: { ...process.env, GRADER_TOKEN: TOKEN }, stdio: "pipe" },
  );
  await waitForHealth(base);
  client = new ApiClient(base, TOKEN);
});

afterAll(() => {
  service?.kill("SIGTERM");
});

describe("dashboard round trip against the live service", () => {
  it("blocks an empty note before any request is made", async () => {
    const flags = await client.getFlags("open");
    expect(flags.length).toBeGreaterThan(0);
    const before = auditLines();

    let networkCalls = 0;
    const form = renderOverrideForm(flags[0]!, {
      submit: (delta, note) => {
        networkCalls += 1;
        return client.postOverride(flags[0]!.id, delta, note);
      },
      onResolved: () => {},
    });
    document.body.append(form);
    (form.querySelector(".note") as HTMLTextAreaElement).value = "";
    form.dispatchEvent(new Event("submit", { cancelable: true }));
    await new Promise((resolve) => setTimeout(resolve, 100));

    expect(networkCalls).toBe(0);
    expect(auditLines()).toBe(before);
    const banner = form.querySelector(".error-banner")!;
    expect(banner.hasAttribute("hidden")).toBe(false);
    form.remove();
  });

  it("applies an override through the UI and re-renders the final grade",
     async () => {
    const detail = await client.getTeam("demo-team");
    const openFlag = detail.flags.find((f) => f.status === "open");
    expect(openFlag).toBeDefined();
    const student = openFlag!.student!;
    const recordBefore = detail.records.find((r) => r.student === student)!;
    const auditBefore = auditLines();

    // Render the real team view wired to the real client, exactly as
    // App.showTeam does.
    let rerendered = false;
    const makeHandlers = (flag: AnomalyFlag) => ({
      submit: (delta: number, note: string) =>
        client.postOverride(flag.id, delta, note),
      onResolved: () => {
        rerendered = true;
      },
    });
    const view = renderTeamDetail(detail, null, null, makeHandlers);
    document.body.append(view);

    const form = view.querySelector(
      `.override-form[data-flag="${openFlag!.id}"]`,
    )!;
    (form.querySelector(".delta") as HTMLInputElement).value = "4";
    (form.querySelector(".note") as HTMLTextAreaElement).value =
      "confirmed off-repo presentation work";
    form.dispatchEvent(new Event("submit", { cancelable: true }));

    const deadline = Date.now() + 10_000;
    while (!rerendered && Date.now() < deadline) {
      await new Promise((resolve) => setTimeout(resolve, 50));
    }
    expect(rerendered).toBe(true);

    const expectedFinal = Math.min(100, recordBefore.s_f + 4);
    expect(form.querySelector(".override-result")!.textContent)
      .toContain(expectedFinal.toFixed(1));

    // exactly one audit entry was appended by the override
    expect(auditLines()).toBe(auditBefore + 1);

    // the service agrees with what the UI displayed
    const after = await client.getTeam("demo-team");
    const recordAfter = after.records.find((r) => r.student === student)!;
    expect(recordAfter.final).toBeCloseTo(expectedFinal, 6);
    expect(recordAfter.status).toBe("approved_with_override");
    expect(after.flags.find((f) => f.id === openFlag!.id)!.status)
      .toBe("resolved");
    view.remove();
  });

  it("rejects a second override on the same flag with a conflict banner",
     async () => {
    const resolved = await client.getFlags("resolved");
    expect(resolved.length).toBeGreaterThan(0);
    const auditBefore = auditLines();

    let refetched = false;
    const form = renderOverrideForm(resolved[0]!, {
      submit: (delta, note) =>
        client.postOverride(resolved[0]!.id, delta, note),
      onResolved: () => {
        refetched = true;
      },
    });
    document.body.append(form);
    (form.querySelector(".note") as HTMLTextAreaElement).value =
      "second attempt";
    form.dispatchEvent(new Event("submit", { cancelable: true }));

    const deadline = Date.now() + 10_000;
    while (!refetched && Date.now() < deadline) {
      await new Promise((resolve) => setTimeout(resolve, 50));
    }
    expect(refetched).toBe(true);
    const banner = form.querySelector(".error-banner")!;
    expect(banner.hasAttribute("hidden")).toBe(false);
    expect(auditLines()).toBe(auditBefore);
    form.remove();
  });
});
