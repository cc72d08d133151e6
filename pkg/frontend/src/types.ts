// Payload shapes of the backend HTTP API.

export type AnalysisName =
  | "keywords_stem"
  | "topic_lda"
  | "topic_btm"
  | "topic_ctfidf"
  | "network"
  | "sunburst";

export interface AnalysisCapability {
  eligible: boolean;
  missing_fields: string[];
  usable_columns: string[];
}

export type CapabilityReport = Record<string, AnalysisCapability>;

export interface UploadResponse {
  dataset_id: string;
  source: string;
  row_count: number;
  capabilities: CapabilityReport;
}

export type JobState = "queued" | "running" | "done" | "failed";

export interface JobStatus {
  job_id: string;
  dataset_id: string;
  analysis: AnalysisName;
  params: Record<string, unknown>;
  state: JobState;
  error: string | null;
}

export interface KeywordStemResult {
  analysis: "keywords_stem";
  method: string;
  columns: string[];
  rows: string[][];
  keyword_map: [string, string][];
}

export interface TopicModelResult {
  analysis: "topic_lda" | "topic_btm";
  model: string;
  column: string;
  vocabulary: string[];
  phi: number[][];
  theta: number[][];
  top_terms: string[][];
  term_probabilities: number[];
  relevance: [string, number][][];
  log_likelihood: number[];
  params: { k: number; lambda_relevance: number; top_n: number };
}

export interface GraphNode {
  id: string;
  count: number;
}

export interface GraphEdge {
  source: string;
  target: string;
  support: number;
  confidence: number;
  lift: number;
}

export interface NetworkResult {
  analysis: "network";
  column: string;
  min_support: number;
  min_confidence: number;
  transaction_count: number;
  selected_nodes: string[] | null;
  rules: {
    antecedent: string[];
    consequent: string[];
    support: number;
    confidence: number;
    lift: number;
  }[];
  graph: { nodes: GraphNode[]; edges: GraphEdge[] };
}

export interface SunburstFlat {
  ids: string[];
  labels: string[];
  parents: string[];
  values: number[];
  colors: number[];
}

export interface SunburstResult {
  analysis: "sunburst";
  included_rows: number;
  excluded_rows: number;
  root: unknown;
  flat: SunburstFlat;
}

export type AnalysisResult =
  | KeywordStemResult
  | TopicModelResult
  | NetworkResult
  | SunburstResult;
