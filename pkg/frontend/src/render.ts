// DOM renderers for each analysis result. Pure DOM construction from API
// payloads; numbers shown are read straight from the payload (the lambda
// slider is the one client-side recomputation, and it is contract-tested
// against the backend formula).
import { relevanceRanking } from "./relevance";
import { arcPath, colorFor, layoutSunburst } from "./sunburst";
import { paginate } from "./tables";
import type { NetworkViewModel } from "./network";
import type {
  KeywordStemResult,
  NetworkResult,
  SunburstResult,
  TopicModelResult,
} from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  for (const child of children) node.append(child);
  return node;
}

function table(header: string[], rows: string[][]): HTMLTableElement {
  const t = el("table", { class: "result-table" });
  const thead = el("thead");
  thead.append(el("tr", {}, header.map((h) => el("th", {}, [h]))));
  const tbody = el("tbody");
  for (const row of rows) {
    tbody.append(el("tr", {}, row.map((v) => el("td", {}, [v]))));
  }
  t.append(thead, tbody);
  return t;
}

function paginated(header: string[], rows: string[][]): HTMLElement {
  const container = el("div");
  let page = 0;
  const render = () => {
    container.replaceChildren();
    const view = paginate(rows, page);
    container.append(table(header, view.rows));
    if (view.pageCount > 1) {
      const prev = el("button", {}, ["prev"]) as HTMLButtonElement;
      const next = el("button", {}, ["next"]) as HTMLButtonElement;
      prev.disabled = view.page === 0;
      next.disabled = view.page >= view.pageCount - 1;
      prev.onclick = () => { page -= 1; render(); };
      next.onclick = () => { page += 1; render(); };
      container.append(el("div", { class: "pager" }, [
        prev, ` page ${view.page + 1} / ${view.pageCount} (${view.total} rows) `, next,
      ]));
    }
  };
  render();
  return container;
}

export function renderKeywordStem(result: KeywordStemResult, csvUrl: string): HTMLElement {
  const wrap = el("div");
  wrap.append(el("h3", {}, ["Result"]));
  wrap.append(el("p", {}, [
    el("a", { href: csvUrl, download: "result.csv" }, ["Download result.csv"]),
  ]));
  wrap.append(paginated(result.columns, result.rows));
  wrap.append(el("h3", {}, ["List of Keywords"]));
  wrap.append(paginated(["original", "modified"], result.keyword_map));
  return wrap;
}

export function renderTopics(result: TopicModelResult): HTMLElement {
  const wrap = el("div");
  const slider = el("input", {
    type: "range", min: "0", max: "1", step: "0.05",
    value: String(result.params.lambda_relevance),
  }) as HTMLInputElement;
  const sliderLabel = el("span", {}, []);
  const topicsDiv = el("div", { class: "topics" });

  const draw = () => {
    const lambda = Number(slider.value);
    sliderLabel.textContent = ` lambda = ${lambda.toFixed(2)}`;
    const ranked = relevanceRanking(
      result.phi, result.term_probabilities, result.vocabulary, lambda,
    );
    topicsDiv.replaceChildren();
    ranked.forEach((terms, t) => {
      const top = terms.slice(0, result.params.top_n);
      topicsDiv.append(el("div", { class: "topic-card" }, [
        el("h4", {}, [`Topic ${t}`]),
        el("ol", {}, top.map(({ term, score }) =>
          el("li", {}, [`${term} `, el("small", {}, [score.toFixed(3)])]),
        )),
      ]));
    });
  };
  slider.oninput = draw;
  draw();

  wrap.append(el("div", { class: "slider-row" }, ["Term relevance ", slider, sliderLabel]));
  wrap.append(topicsDiv);
  wrap.append(el("p", { class: "muted" }, [
    `column: ${result.column}, final log-likelihood: ${result.log_likelihood.at(-1)?.toFixed(1) ?? "n/a"}`,
  ]));
  return wrap;
}

export function renderNetwork(
  model: NetworkViewModel,
  onToggle: (node: string) => void,
): HTMLElement {
  const wrap = el("div");
  const width = 640;
  const height = 480;
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "network-svg");

  const maxConf = Math.max(0.01, ...model.edges.map((e) => e.confidence));
  const pos = new Map(model.nodes.map((n) => [n.id, n]));
  for (const edge of model.edges) {
    const a = pos.get(edge.source);
    const b = pos.get(edge.target);
    if (!a || !b) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    line.setAttribute("stroke", "#7a8aa0");
    line.setAttribute("stroke-width", (0.5 + (edge.confidence / maxConf) * 2.5).toFixed(2));
    line.setAttribute("marker-end", "url(#arrow)");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${edge.source} -> ${edge.target}: support ${edge.support.toFixed(3)}, confidence ${edge.confidence.toFixed(3)}, lift ${edge.lift.toFixed(2)}`;
    line.append(title);
    svg.append(line);
  }
  const defs = document.createElementNS(SVG_NS, "defs");
  defs.innerHTML = '<marker id="arrow" viewBox="0 0 10 10" refX="18" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#7a8aa0"/></marker>';
  svg.prepend(defs);

  const maxCount = Math.max(1, ...model.nodes.map((n) => n.count));
  for (const node of model.nodes) {
    const g = document.createElementNS(SVG_NS, "g");
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(node.x));
    circle.setAttribute("cy", String(node.y));
    circle.setAttribute("r", (6 + (node.count / maxCount) * 10).toFixed(1));
    circle.setAttribute("fill", "#4a7fb5");
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(node.x));
    text.setAttribute("y", String(node.y - 14));
    text.setAttribute("text-anchor", "middle");
    text.textContent = node.id;
    g.append(circle, text);
    svg.append(g);
  }

  const picker = el("div", { class: "node-picker" });
  picker.append(el("strong", {}, ["Nodes: "]));
  for (const name of model.allNodes) {
    const label = el("label", { class: "node-option" });
    const box = el("input", { type: "checkbox" }) as HTMLInputElement;
    box.checked = model.selected.has(name);
    box.onchange = () => onToggle(name);
    label.append(box, ` ${name}`);
    picker.append(label);
  }

  wrap.append(picker, svg);
  wrap.append(el("p", { class: "muted" }, [
    `${model.nodes.length} nodes, ${model.edges.length} directed edges`,
  ]));
  return wrap;
}

export function renderSunburst(result: SunburstResult): HTMLElement {
  const wrap = el("div");
  const layout = layoutSunburst(result.flat);
  const size = 480;
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `${-size / 2} ${-size / 2} ${size} ${size}`);
  svg.setAttribute("class", "sunburst-svg");
  for (const arc of layout.arcs) {
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("d", arcPath(arc));
    path.setAttribute("fill", colorFor(arc.value, layout.minValue, layout.maxValue));
    path.setAttribute("stroke", "#fff");
    path.setAttribute("stroke-width", "1");
    const title = document.createElementNS(SVG_NS, "title");
    const citationKind = arc.depth === layout.ringCount ? "citations (total)" : "citations (mean/doc)";
    title.textContent = `${arc.id}\ndocuments: ${arc.count}\n${citationKind}: ${arc.value}`;
    path.append(title);
    svg.append(path);
  }
  const center = document.createElementNS(SVG_NS, "text");
  center.setAttribute("text-anchor", "middle");
  center.setAttribute("class", "sunburst-center");
  center.textContent = String(layout.rootCount);
  svg.append(center);

  wrap.append(svg);
  wrap.append(el("p", { class: "muted" }, [
    `${layout.ringCount} rings, ${result.included_rows} documents included, ${result.excluded_rows} excluded (missing fields)`,
  ]));
  return wrap;
}

export function renderNetworkResult(
  result: NetworkResult,
  model: NetworkViewModel,
  onToggle: (node: string) => void,
): HTMLElement {
  const wrap = el("div");
  wrap.append(renderNetwork(model, onToggle));
  wrap.append(el("h3", {}, ["Rules"]));
  wrap.append(paginated(
    ["antecedent", "consequent", "support", "confidence", "lift"],
    result.rules.map((r) => [
      r.antecedent.join("; "), r.consequent.join("; "),
      r.support.toFixed(4), r.confidence.toFixed(4), r.lift.toFixed(4),
    ]),
  ));
  return wrap;
}
