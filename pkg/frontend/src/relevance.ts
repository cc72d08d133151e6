// Client-side relevance re-ranking for the lambda slider.
//
// Must stay formula-identical to the backend ranking
//   r = lambda * ln(phi) + (1 - lambda) * ln(phi / p)
// including operation order and tie-breaking (score descending, then term
// ascending), so slider positions reproduce server output exactly. The
// parity is pinned by tests against backend-generated goldens.

export interface RankedTerm {
  term: string;
  score: number;
}

export function relevanceRanking(
  phi: number[][],
  termProbabilities: number[],
  vocabulary: string[],
  lambda: number,
): RankedTerm[][] {
  if (!(lambda >= 0 && lambda <= 1)) {
    throw new RangeError(`lambda must be in [0, 1], got ${lambda}`);
  }
  return phi.map((topicRow) => {
    const scored: RankedTerm[] = [];
    for (let w = 0; w < topicRow.length; w++) {
      const p = topicRow[w];
      if (p <= 0) continue;
      const logP = Math.log(p);
      const score = lambda * logP + (1 - lambda) * (logP - Math.log(termProbabilities[w]));
      scored.push({ term: vocabulary[w], score });
    }
    scored.sort((a, b) => (a.score === b.score ? (a.term < b.term ? -1 : 1) : b.score - a.score));
    return scored;
  });
}
