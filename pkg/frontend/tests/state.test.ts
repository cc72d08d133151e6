// Tab enablement is driven purely by the capability report: ineligible
// analyses stay disabled and expose their missing fields.
import { describe, expect, it } from "vitest";

import { SessionState } from "../src/state";
import type { UploadResponse } from "../src/types";

function upload(overrides: Partial<Record<string, { eligible: boolean; missing_fields: string[]; usable_columns: string[] }>>): UploadResponse {
  const base = { eligible: true, missing_fields: [] as string[], usable_columns: ["Title"] };
  return {
    dataset_id: "abc",
    source: "custom",
    row_count: 3,
    capabilities: {
      keywords_stem: { ...base },
      topic_modeling: { ...base },
      bidirectional_network: { ...base },
      sunburst: { ...base },
      ...overrides,
    },
  };
}

describe("SessionState gating", () => {
  it("disables everything before an upload", () => {
    const state = new SessionState();
    expect(state.analysisEnabled("keywords_stem")).toBe(false);
    expect(state.analysisEnabled("sunburst")).toBe(false);
  });

  it("enables analyses exactly per the capability report", () => {
    const state = new SessionState();
    state.setDataset(upload({
      sunburst: {
        eligible: false,
        missing_fields: ["Document Type", "Citations"],
        usable_columns: [],
      },
    }));
    expect(state.analysisEnabled("keywords_stem")).toBe(true);
    expect(state.analysisEnabled("network")).toBe(true);
    expect(state.analysisEnabled("sunburst")).toBe(false);
    expect(state.missingFields("sunburst")).toEqual(["Document Type", "Citations"]);
  });

  it("maps every topic variant onto the topic_modeling gate", () => {
    const state = new SessionState();
    state.setDataset(upload({
      topic_modeling: { eligible: false, missing_fields: ["Title", "Abstract"], usable_columns: [] },
    }));
    for (const analysis of ["topic_lda", "topic_btm", "topic_ctfidf"] as const) {
      expect(state.analysisEnabled(analysis)).toBe(false);
      expect(state.missingFields(analysis)).toEqual(["Title", "Abstract"]);
    }
  });

  it("a new upload clears stale jobs and results", () => {
    const state = new SessionState();
    state.setDataset(upload({}));
    state.trackJob("j1", "keywords_stem");
    state.updateJob("j1", "done");
    state.resultCache.set("j1", { any: "thing" });
    state.setDataset(upload({}));
    expect(state.jobs.size).toBe(0);
    expect(state.resultCache.size).toBe(0);
  });
});
