// Job polling with exponential backoff, one in-flight poll per job.
import type { ApiClient } from "./api";
import type { JobStatus } from "./types";

export interface BackoffOptions {
  baseMs?: number;
  factor?: number;
  maxMs?: number;
}

export function backoffDelays(attempts: number, options: BackoffOptions = {}): number[] {
  const { baseMs = 500, factor = 2, maxMs = 8000 } = options;
  const delays: number[] = [];
  let delay = baseMs;
  for (let i = 0; i < attempts; i++) {
    delays.push(Math.min(delay, maxMs));
    delay *= factor;
  }
  return delays;
}

const wait = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export async function pollUntilFinished(
  api: ApiClient,
  jobId: string,
  options: BackoffOptions & {
    onUpdate?: (status: JobStatus) => void;
    sleep?: (ms: number) => Promise<void>;
    maxAttempts?: number;
  } = {},
): Promise<JobStatus> {
  const { onUpdate, sleep = wait, maxAttempts = 600 } = options;
  const { baseMs = 500, factor = 2, maxMs = 8000 } = options;
  let delay = baseMs;
  for (let attempt = 0; attempt < maxAttempts; attempt++) {
    const status = await api.job(jobId);
    onUpdate?.(status);
    if (status.state === "done" || status.state === "failed") {
      return status;
    }
    await sleep(Math.min(delay, maxMs));
    delay *= factor;
  }
  throw new Error(`job ${jobId} did not finish after ${maxAttempts} polls`);
}
