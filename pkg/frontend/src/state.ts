// Session state: the uploaded dataset, its capability report, and job
// tracking. Tab enablement is derived purely from the capability report;
// nothing else may enable an analysis.
import type { AnalysisName, CapabilityReport, JobState, UploadResponse } from "./types";

// capability gate per analysis tab (mirrors the backend mapping)
export const CAPABILITY_FOR: Record<AnalysisName, string> = {
  keywords_stem: "keywords_stem",
  topic_lda: "topic_modeling",
  topic_btm: "topic_modeling",
  topic_ctfidf: "topic_modeling",
  network: "bidirectional_network",
  sunburst: "sunburst",
};

export interface TrackedJob {
  jobId: string;
  analysis: AnalysisName;
  state: JobState;
  error: string | null;
}

export class SessionState {
  datasetId: string | null = null;
  source = "";
  rowCount = 0;
  capabilities: CapabilityReport | null = null;
  jobs = new Map<string, TrackedJob>();
  resultCache = new Map<string, unknown>();

  setDataset(upload: UploadResponse): void {
    this.datasetId = upload.dataset_id;
    this.source = upload.source;
    this.rowCount = upload.row_count;
    this.capabilities = upload.capabilities;
    this.jobs.clear();
    this.resultCache.clear();
  }

  analysisEnabled(analysis: AnalysisName): boolean {
    const gate = this.capabilities?.[CAPABILITY_FOR[analysis]];
    return gate ? gate.eligible : false;
  }

  missingFields(analysis: AnalysisName): string[] {
    const gate = this.capabilities?.[CAPABILITY_FOR[analysis]];
    return gate ? gate.missing_fields : [];
  }

  usableColumns(analysis: AnalysisName): string[] {
    const gate = this.capabilities?.[CAPABILITY_FOR[analysis]];
    return gate ? gate.usable_columns : [];
  }

  trackJob(jobId: string, analysis: AnalysisName): void {
    this.jobs.set(jobId, { jobId, analysis, state: "queued", error: null });
  }

  updateJob(jobId: string, state: JobState, error: string | null = null): void {
    const job = this.jobs.get(jobId);
    if (job) {
      job.state = state;
      job.error = error;
    }
  }
}
