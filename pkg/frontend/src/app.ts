// Application wiring: upload flow, File Checker panel, analysis tabs.
import { ApiClient, ApiError } from "./api";
import { collectParams, FORM_FIELDS } from "./forms";
import { toggleSelection, viewModelFromResult } from "./network";
import { pollUntilFinished } from "./polling";
import { el, renderKeywordStem, renderNetworkResult, renderSunburst, renderTopics } from "./render";
import { SessionState } from "./state";
import type {
  AnalysisName,
  KeywordStemResult,
  NetworkResult,
  SunburstResult,
  TopicModelResult,
} from "./types";

const ANALYSIS_TABS: { name: AnalysisName; label: string }[] = [
  { name: "keywords_stem", label: "Keywords Stem" },
  { name: "topic_lda", label: "Topics: LDA" },
  { name: "topic_btm", label: "Topics: Biterm" },
  { name: "topic_ctfidf", label: "Topics: Clusters" },
  { name: "network", label: "Bidirectional Network" },
  { name: "sunburst", label: "Sunburst" },
];

export class App {
  private state = new SessionState();
  private active: AnalysisName = "keywords_stem";

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
  ) {}

  mount(): void {
    this.root.replaceChildren();
    this.root.append(this.uploadPanel());
    this.root.append(el("div", { id: "checker" }));
    this.root.append(el("div", { id: "tabs" }));
    this.root.append(el("div", { id: "panel" }));
    this.renderChecker();
  }

  private banner(kind: "error" | "info", text: string, retry?: () => void): HTMLElement {
    const box = el("div", { class: `banner ${kind}` }, [text]);
    if (retry) {
      const button = el("button", {}, ["Retry"]);
      button.onclick = retry;
      box.append(" ", button);
    }
    return box;
  }

  private uploadPanel(): HTMLElement {
    const input = el("input", { type: "file", id: "file-input" }) as HTMLInputElement;
    const zone = el("div", { class: "dropzone" }, [
      el("p", {}, ["Drag a Scopus / Web of Science / Lens / custom export here, or "]),
      input,
    ]);
    const status = el("div", { id: "upload-status" });

    const handle = (file: File | null) => {
      if (file) void this.upload(file, status);
    };
    input.onchange = () => handle(input.files?.[0] ?? null);
    zone.ondragover = (event) => {
      event.preventDefault();
      zone.classList.add("over");
    };
    zone.ondragleave = () => zone.classList.remove("over");
    zone.ondrop = (event) => {
      event.preventDefault();
      zone.classList.remove("over");
      handle(event.dataTransfer?.files?.[0] ?? null);
    };
    return el("div", { class: "upload-panel" }, [zone, status]);
  }

  private async upload(file: File, status: HTMLElement): Promise<void> {
    status.replaceChildren(this.banner("info", `Uploading ${file.name}...`));
    try {
      const response = await this.api.uploadDataset(file, file.name);
      this.state.setDataset(response);
      status.replaceChildren(this.banner(
        "info",
        `${file.name}: ${response.row_count} rows, detected source: ${response.source}`,
      ));
    } catch (error) {
      if (error instanceof ApiError) {
        status.replaceChildren(this.banner("error", error.message));
      } else {
        status.replaceChildren(this.banner(
          "error",
          "Backend unreachable.",
          () => void this.upload(file, status),
        ));
      }
    }
    this.renderChecker();
  }

  private renderChecker(): void {
    const checker = this.root.querySelector("#checker")!;
    checker.replaceChildren();
    const caps = this.state.capabilities;
    if (!caps) {
      checker.append(el("p", { class: "muted" }, ["Upload a file to run the File Checker."]));
      this.renderTabs();
      return;
    }
    const list = el("div", { class: "capability-list" });
    for (const [analysis, cap] of Object.entries(caps)) {
      const badge = el("span", {
        class: cap.eligible ? "badge ok" : "badge missing",
      }, [cap.eligible ? "eligible" : "missing fields"]);
      const detail = cap.eligible
        ? `columns: ${cap.usable_columns.join(", ")}`
        : `missing: ${cap.missing_fields.join(", ")}`;
      list.append(el("div", { class: "capability-row" }, [
        el("strong", {}, [analysis]), " ", badge, " ", el("span", { class: "muted" }, [detail]),
      ]));
    }
    checker.append(el("h2", {}, ["File Checker"]), list);
    this.renderTabs();
  }

  private renderTabs(): void {
    const tabs = this.root.querySelector("#tabs")!;
    tabs.replaceChildren();
    for (const { name, label } of ANALYSIS_TABS) {
      const button = el("button", { class: name === this.active ? "tab active" : "tab" }, [label]) as HTMLButtonElement;
      const enabled = this.state.analysisEnabled(name);
      button.disabled = !enabled;
      if (!enabled) {
        const missing = this.state.missingFields(name);
        button.title = missing.length ? `missing: ${missing.join(", ")}` : "upload a dataset first";
      }
      button.onclick = () => {
        this.active = name;
        this.renderTabs();
      };
      tabs.append(button);
    }
    this.renderPanel();
  }

  private renderPanel(): void {
    const panel = this.root.querySelector("#panel")!;
    panel.replaceChildren();
    const analysis = this.active;
    if (!this.state.analysisEnabled(analysis)) {
      const missing = this.state.missingFields(analysis);
      panel.append(el("p", { class: "muted" }, [
        missing.length
          ? `This analysis needs: ${missing.join(", ")}`
          : "Upload an eligible dataset to enable this analysis.",
      ]));
      return;
    }

    const form = el("form", { class: "param-form" });
    const inputs = new Map<string, HTMLInputElement | HTMLSelectElement>();
    for (const field of FORM_FIELDS[analysis]) {
      const row = el("label", { class: "form-row" }, [field.label + " "]);
      if (field.kind === "select") {
        const select = el("select") as HTMLSelectElement;
        for (const option of field.options ?? []) {
          const opt = el("option", { value: option }, [option]) as HTMLOptionElement;
          opt.selected = option === field.default;
          select.append(opt);
        }
        inputs.set(field.name, select);
        row.append(select);
      } else {
        const input = el("input", {
          type: field.kind === "file" ? "file" : field.kind === "checkbox" ? "checkbox" : field.kind,
        }) as HTMLInputElement;
        if (field.kind === "number") {
          if (field.step !== undefined) input.step = String(field.step);
          if (field.min !== undefined) input.min = String(field.min);
          if (field.max !== undefined) input.max = String(field.max);
          if (field.default !== null) input.value = String(field.default);
        } else if (field.kind === "checkbox") {
          input.checked = Boolean(field.default);
        } else if (field.kind === "text" && field.default) {
          input.value = String(field.default);
        }
        inputs.set(field.name, input);
        row.append(input);
      }
      form.append(row);
    }
    const run = el("button", { type: "submit", class: "run" }, ["Run analysis"]) as HTMLButtonElement;
    const output = el("div", { class: "output" });
    form.onsubmit = (event) => {
      event.preventDefault();
      void this.runAnalysis(analysis, inputs, output, run);
    };
    form.append(run);
    panel.append(form, output);
  }

  private async formValues(
    analysis: AnalysisName,
    inputs: Map<string, HTMLInputElement | HTMLSelectElement>,
  ): Promise<Record<string, unknown>> {
    const values: Record<string, unknown> = {};
    for (const field of FORM_FIELDS[analysis]) {
      const input = inputs.get(field.name)!;
      if (field.kind === "file") {
        const file = (input as HTMLInputElement).files?.[0];
        values[field.name] = file ? await file.text() : null;
      } else if (field.kind === "checkbox") {
        values[field.name] = (input as HTMLInputElement).checked;
      } else {
        values[field.name] = input.value;
      }
    }
    return values;
  }

  private async runAnalysis(
    analysis: AnalysisName,
    inputs: Map<string, HTMLInputElement | HTMLSelectElement>,
    output: HTMLElement,
    run: HTMLButtonElement,
  ): Promise<void> {
    const datasetId = this.state.datasetId;
    if (!datasetId) return;
    run.disabled = true;
    output.replaceChildren(this.banner("info", "Submitting job..."));
    try {
      const params = collectParams(analysis, await this.formValues(analysis, inputs));
      const jobId = await this.api.submitJob(datasetId, analysis, params);
      this.state.trackJob(jobId, analysis);
      const status = await pollUntilFinished(this.api, jobId, {
        onUpdate: (s) => {
          this.state.updateJob(jobId, s.state, s.error);
          output.replaceChildren(this.banner("info", `Job ${jobId.slice(0, 8)}: ${s.state}`));
        },
      });
      if (status.state === "failed") {
        output.replaceChildren(this.banner("error", status.error ?? "Job failed."));
        return;
      }
      const result = await this.api.result(jobId);
      this.state.resultCache.set(jobId, result);
      output.replaceChildren(this.renderResult(analysis, jobId, result));
    } catch (error) {
      const message = error instanceof ApiError ? error.message : "Backend unreachable.";
      output.replaceChildren(this.banner("error", message));
    } finally {
      run.disabled = false;
    }
  }

  private renderResult(analysis: AnalysisName, jobId: string, result: unknown): HTMLElement {
    switch (analysis) {
      case "keywords_stem":
        return renderKeywordStem(result as KeywordStemResult, this.api.resultCsvUrl(jobId));
      case "topic_lda":
      case "topic_btm":
        return renderTopics(result as TopicModelResult);
      case "topic_ctfidf":
        return this.renderClusters(result);
      case "network":
        return this.networkView(result as NetworkResult, null);
      case "sunburst":
        return renderSunburst(result as SunburstResult);
    }
  }

  private renderClusters(result: unknown): HTMLElement {
    const doc = result as {
      clusters: { label: number; size: number; terms: [string, number][] }[];
    };
    const wrap = el("div", { class: "topics" });
    for (const cluster of doc.clusters) {
      wrap.append(el("div", { class: "topic-card" }, [
        el("h4", {}, [`Cluster ${cluster.label} (${cluster.size} docs)`]),
        el("ol", {}, cluster.terms.map(([term, weight]) =>
          el("li", {}, [`${term} `, el("small", {}, [weight.toFixed(3)])]),
        )),
      ]));
    }
    return wrap;
  }

  // The node picker re-submits the analysis with selected_nodes and renders
  // exactly what the API returns; `allNodes` (from the unrestricted run)
  // keeps the full picker visible while the graph shrinks.
  private networkView(result: NetworkResult, allNodes: string[] | null): HTMLElement {
    const model = viewModelFromResult(result, allNodes);
    const container = el("div");
    const onToggle = (node: string) => {
      const selected = toggleSelection(model.selected, node);
      void this.refetchNetwork(result, model.allNodes, selected, container);
    };
    container.append(renderNetworkResult(result, model, onToggle));
    return container;
  }

  private async refetchNetwork(
    previous: NetworkResult,
    allNodes: string[],
    selected: string[],
    container: HTMLElement,
  ): Promise<void> {
    const datasetId = this.state.datasetId;
    if (!datasetId) return;
    container.replaceChildren(this.banner("info", "Refetching graph..."));
    try {
      const params: Record<string, unknown> = {
        column: previous.column,
        min_support: previous.min_support,
        min_confidence: previous.min_confidence,
        selected_nodes: selected,
      };
      const jobId = await this.api.submitJob(datasetId, "network", params);
      const status = await pollUntilFinished(this.api, jobId, {});
      if (status.state === "failed") {
        container.replaceChildren(this.banner("error", status.error ?? "Job failed."));
        return;
      }
      const result = (await this.api.result(jobId)) as NetworkResult;
      container.replaceChildren();
      const model = viewModelFromResult(result, allNodes);
      const onToggle = (node: string) => {
        const next = toggleSelection(model.selected, node);
        void this.refetchNetwork(result, allNodes, next, container);
      };
      container.append(renderNetworkResult(result, model, onToggle));
    } catch (error) {
      const message = error instanceof ApiError ? error.message : "Backend unreachable.";
      container.replaceChildren(this.banner("error", message));
    }
  }
}
