import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function stubFetch(status: number, payload: unknown): ReturnType<typeof vi.fn> {
  const stub = vi.fn().mockResolvedValue(
    new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    }),
  );
  vi.stubGlobal("fetch", stub);
  return stub;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("api client", () => {
  it("sends the bearer token on every request", async () => {
    const stub = stubFetch(200, []);
    const client = new ApiClient("http://svc:1", "sekrit");
    await client.getTeams();
    const [url, init] = stub.mock.calls[0]!;
    expect(url).toBe("http://svc:1/teams");
    expect((init as RequestInit).headers).toMatchObject({
      Authorization: "Bearer sekrit",
    });
  });

  it("posts override payloads as JSON", async () => {
    const stub = stubFetch(200, { flag: {}, record: null });
    const client = new ApiClient("http://svc:1/", "t");
    await client.postOverride("team-1:x", 2.5, "note text");
    const [url, init] = stub.mock.calls[0]!;
    expect(url).toBe("http://svc:1/flags/team-1%3Ax/override");
    expect((init as RequestInit).method).toBe("POST");
    expect(JSON.parse((init as RequestInit).body as string)).toEqual({
      delta: 2.5,
      note: "note text",
    });
  });

  it("raises ApiError with the status and server message", async () => {
    stubFetch(409, { error: "flag f1 is already resolved" });
    const client = new ApiClient("http://svc:1", "t");
    const failure = client.postOverride("f1", 0, "x");
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(failure).rejects.toMatchObject({
      status: 409,
      message: "flag f1 is already resolved",
    });
  });

  it("builds the flag status filter query", async () => {
    const stub = stubFetch(200, []);
    const client = new ApiClient("http://svc:1", "t");
    await client.getFlags("open");
    expect(stub.mock.calls[0]![0]).toBe("http://svc:1/flags?status=open");
  });
});
