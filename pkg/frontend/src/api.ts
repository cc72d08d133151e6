// Typed client for the backend API. The fetch function is injected so
// tests can run against a scripted transport.
import type { AnalysisName, AnalysisResult, JobStatus, UploadResponse } from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

function friendlyUploadError(status: number, detail: unknown): string {
  if (status === 413) return "The file is too large for this server.";
  if (status === 415) return "The file is not UTF-8 text; re-export it as UTF-8 CSV/TXT.";
  if (status === 422) {
    const d = detail as { error?: string; rows?: { row: number }[]; message?: string };
    if (d?.error === "MalformedRow" && d.rows?.length) {
      return `The file has ${d.rows.length} malformed row(s), first at data row ${d.rows[0].row}.`;
    }
    if (d?.error === "EmptyFile") return "The file is empty.";
    return d?.message ?? "The file could not be parsed.";
  }
  return `Upload failed (HTTP ${status}).`;
}

async function readDetail(response: Response): Promise<unknown> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    return body.detail ?? body;
  } catch {
    return null;
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async uploadDataset(file: File | Blob, name = "upload.csv"): Promise<UploadResponse> {
    const form = new FormData();
    form.append("file", file, name);
    const response = await this.fetchFn(this.url("/datasets"), { method: "POST", body: form });
    if (!response.ok) {
      throw new ApiError(response.status, friendlyUploadError(response.status, await readDetail(response)));
    }
    return (await response.json()) as UploadResponse;
  }

  async submitJob(
    datasetId: string,
    analysis: AnalysisName,
    params: Record<string, unknown>,
  ): Promise<string> {
    const response = await this.fetchFn(this.url("/jobs"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ dataset_id: datasetId, analysis, params }),
    });
    if (!response.ok) {
      const detail = (await readDetail(response)) as { missing_fields?: string[]; message?: string };
      if (response.status === 409 && detail?.missing_fields) {
        throw new ApiError(409, `Not eligible; missing: ${detail.missing_fields.join(", ")}`);
      }
      throw new ApiError(response.status, detail?.message ?? `Submit failed (HTTP ${response.status}).`);
    }
    const body = (await response.json()) as { job_id: string };
    return body.job_id;
  }

  async job(jobId: string): Promise<JobStatus> {
    const response = await this.fetchFn(this.url(`/jobs/${jobId}`));
    if (!response.ok) throw new ApiError(response.status, `Job lookup failed (HTTP ${response.status}).`);
    return (await response.json()) as JobStatus;
  }

  async result(jobId: string): Promise<AnalysisResult> {
    const response = await this.fetchFn(this.url(`/jobs/${jobId}/result`));
    if (!response.ok) throw new ApiError(response.status, `Result not ready (HTTP ${response.status}).`);
    return (await response.json()) as AnalysisResult;
  }

  resultCsvUrl(jobId: string): string {
    return this.url(`/jobs/${jobId}/result.csv`);
  }
}
