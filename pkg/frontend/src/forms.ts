// Parameter form definitions per analysis. Field defaults mirror the
// backend defaults so an untouched form submits the documented behavior;
// the method selector of Keywords Stem comes preselected to lemmatization.
import type { AnalysisName } from "./types";

export interface FormField {
  name: string;
  label: string;
  kind: "select" | "number" | "text" | "checkbox" | "file";
  options?: string[];
  default: unknown;
  step?: number;
  min?: number;
  max?: number;
}

export const FORM_FIELDS: Record<AnalysisName, FormField[]> = {
  keywords_stem: [
    {
      name: "method",
      label: "Method",
      kind: "select",
      options: ["lemmatize", "stem"],
      default: "lemmatize",
    },
  ],
  topic_lda: [
    { name: "k", label: "Topics (k)", kind: "number", default: 2, min: 2 },
    { name: "alpha", label: "alpha", kind: "number", default: 0.1, step: 0.01 },
    { name: "beta", label: "beta", kind: "number", default: 0.01, step: 0.001 },
    { name: "iterations", label: "Iterations", kind: "number", default: 500, min: 1 },
    { name: "seed", label: "Seed", kind: "number", default: 0 },
    { name: "top_n", label: "Top terms", kind: "number", default: 10, min: 1 },
    { name: "lambda_relevance", label: "Relevance lambda", kind: "number", default: 0.6, step: 0.05, min: 0, max: 1 },
    { name: "remove_copyright", label: "Drop copyright sentences", kind: "checkbox", default: false },
    { name: "extra_stopwords", label: "Extra stopwords (comma separated)", kind: "text", default: "" },
  ],
  topic_btm: [
    { name: "k", label: "Topics (k)", kind: "number", default: 2, min: 2 },
    { name: "alpha", label: "alpha", kind: "number", default: 0.1, step: 0.01 },
    { name: "beta", label: "beta", kind: "number", default: 0.01, step: 0.001 },
    { name: "iterations", label: "Iterations", kind: "number", default: 500, min: 1 },
    { name: "seed", label: "Seed", kind: "number", default: 0 },
    { name: "top_n", label: "Top terms", kind: "number", default: 10, min: 1 },
    { name: "lambda_relevance", label: "Relevance lambda", kind: "number", default: 0.6, step: 0.05, min: 0, max: 1 },
    { name: "remove_copyright", label: "Drop copyright sentences", kind: "checkbox", default: false },
    { name: "extra_stopwords", label: "Extra stopwords (comma separated)", kind: "text", default: "" },
  ],
  topic_ctfidf: [
    { name: "k", label: "Clusters (k)", kind: "number", default: 2, min: 1 },
    { name: "seed", label: "Seed", kind: "number", default: 0 },
    { name: "top_n", label: "Top terms", kind: "number", default: 10, min: 1 },
    { name: "embeddings_csv", label: "Embeddings sidecar CSV", kind: "file", default: null },
  ],
  network: [
    { name: "min_support", label: "Min support", kind: "number", default: 0.02, step: 0.01, min: 0, max: 1 },
    { name: "min_confidence", label: "Min confidence", kind: "number", default: 0.3, step: 0.05, min: 0, max: 1 },
  ],
  sunburst: [
    { name: "year_min", label: "Year from", kind: "number", default: null },
    { name: "year_max", label: "Year to", kind: "number", default: null },
  ],
};

export function defaultParams(analysis: AnalysisName): Record<string, unknown> {
  const params: Record<string, unknown> = {};
  for (const field of FORM_FIELDS[analysis]) {
    if (field.default !== null && field.default !== "") {
      params[field.name] = field.default;
    }
  }
  return params;
}

// Convert raw form values into the API params object, dropping blanks.
export function collectParams(
  analysis: AnalysisName,
  values: Record<string, unknown>,
): Record<string, unknown> {
  const params: Record<string, unknown> = {};
  for (const field of FORM_FIELDS[analysis]) {
    const value = values[field.name];
    if (value === null || value === undefined || value === "") continue;
    if (field.name === "extra_stopwords" && typeof value === "string") {
      const words = value.split(",").map((w) => w.trim()).filter(Boolean);
      if (words.length) params[field.name] = words;
      continue;
    }
    params[field.name] = field.kind === "number" ? Number(value) : value;
  }
  return params;
}
