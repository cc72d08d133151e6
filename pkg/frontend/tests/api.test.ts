// API client behavior against a scripted transport: friendly error
// surfaces for 413/415/422, eligibility messages on 409, happy paths.
import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";

function transport(status: number, body: unknown) {
  return async () =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
}

const BLOB = new Blob(["Title\nX\n"], { type: "text/csv" });

describe("ApiClient", () => {
  it("uploads and returns the capability payload", async () => {
    const payload = { dataset_id: "d1", source: "custom", row_count: 1, capabilities: {} };
    const api = new ApiClient("http://x", transport(201, payload));
    expect(await api.uploadDataset(BLOB)).toEqual(payload);
  });

  it("surfaces 413 as a size message", async () => {
    const api = new ApiClient("http://x", transport(413, { detail: "too big" }));
    await expect(api.uploadDataset(BLOB)).rejects.toThrow(/too large/);
  });

  it("surfaces 415 as an encoding message", async () => {
    const api = new ApiClient("http://x", transport(415, { detail: "bad" }));
    await expect(api.uploadDataset(BLOB)).rejects.toThrow(/UTF-8/);
  });

  it("surfaces 422 with malformed-row details", async () => {
    const api = new ApiClient("http://x", transport(422, {
      detail: { error: "MalformedRow", rows: [{ row: 4 }] },
    }));
    await expect(api.uploadDataset(BLOB)).rejects.toThrow(/row 4/);
  });

  it("surfaces 409 ineligibility with the missing fields", async () => {
    const api = new ApiClient("http://x", transport(409, {
      detail: { missing_fields: ["Document Type", "Citations"] },
    }));
    await expect(api.submitJob("d1", "sunburst", {})).rejects.toThrow(/Document Type, Citations/);
  });

  it("propagates network failures as generic errors", async () => {
    const api = new ApiClient("http://x", async () => {
      throw new TypeError("fetch failed");
    });
    await expect(api.job("j")).rejects.toThrow(TypeError);
  });

  it("submits jobs with the exact wire format", async () => {
    let captured: { url: string; init?: RequestInit } | null = null;
    const api = new ApiClient("http://x/", async (url, init) => {
      captured = { url, init };
      return new Response(JSON.stringify({ job_id: "j9" }), { status: 202 });
    });
    const jobId = await api.submitJob("d1", "network", { selected_nodes: ["a"] });
    expect(jobId).toBe("j9");
    expect(captured!.url).toBe("http://x/jobs");
    expect(JSON.parse(String(captured!.init!.body))).toEqual({
      dataset_id: "d1",
      analysis: "network",
      params: { selected_nodes: ["a"] },
    });
  });

  it("ApiError keeps the HTTP status", async () => {
    const api = new ApiClient("http://x", transport(404, {}));
    try {
      await api.job("missing");
      expect.unreachable();
    } catch (error) {
      expect(error).toBeInstanceOf(ApiError);
      expect((error as ApiError).status).toBe(404);
    }
  });
});
