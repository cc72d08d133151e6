// Contract test: client-side lambda re-ranking must reproduce backend
// rankings exactly at lambda 0, 0.6, and 1 on fixture model output.
import { readFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { relevanceRanking } from "../src/relevance";

const golden = JSON.parse(
  readFileSync(join(__dirname, "goldens", "relevance.json"), "utf8"),
) as {
  phi: number[][];
  term_probabilities: number[];
  vocabulary: string[];
  expected: Record<string, [string, number][][]>;
};

describe("relevanceRanking backend parity", () => {
  for (const lambda of ["0.0", "0.6", "1.0"]) {
    it(`matches backend ranking at lambda=${lambda}`, () => {
      const got = relevanceRanking(
        golden.phi,
        golden.term_probabilities,
        golden.vocabulary,
        Number(lambda),
      );
      const want = golden.expected[lambda];
      expect(got.length).toBe(want.length);
      for (let t = 0; t < want.length; t++) {
        expect(got[t].map((r) => r.term)).toEqual(want[t].map((pair) => pair[0]));
        for (let i = 0; i < want[t].length; i++) {
          expect(Math.abs(got[t][i].score - want[t][i][1])).toBeLessThan(1e-12);
        }
      }
    });
  }

  it("rejects lambda outside [0, 1]", () => {
    expect(() => relevanceRanking([[1]], [1], ["a"], 1.2)).toThrow(RangeError);
  });

  it("excludes zero-probability terms", () => {
    const ranked = relevanceRanking([[0, 1]], [0.5, 0.5], ["zero", "keep"], 0.6);
    expect(ranked[0].map((r) => r.term)).toEqual(["keep"]);
  });
});
