/**
 * DOM wiring for the studio. All state lives in one StudioDocument plus the
 * last two trust reports (current and previous, for before/after reading).
 *
 * Logic modules (document, gauge, graph, matrix, sparkline, api) are pure and
 * covered by the test suite; this file only renders them and forwards events.
 */
import { ServiceClient, ServiceError } from "./api.js";
import {
  clearInfluence,
  editInfluence,
  markSaved,
  moveConcept,
  newDocument,
  parseDocument,
  serializeDocument,
  setExpertId,
  setRating,
  toSurveyDocument,
} from "./document.js";
import { gaugeGeometry } from "./gauge.js";
import { graphEdges } from "./graph.js";
import { matrixProjection } from "./matrix.js";
import { sparklineGeometry, trustSeries } from "./sparkline.js";
import {
  ALL_CONCEPT_IDS,
  ATTRIBUTE_LABELS,
  CONCEPT_IDS,
  ConceptId,
  RatedConceptId,
  StudioDocument,
  TrustReportDoc,
  TRUST_ID,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

interface AppState {
  doc: StudioDocument;
  report: TrustReportDoc | null;
  previous: TrustReportDoc | null;
  ratingLabels: string[];
  influenceLabels: string[];
  client: ServiceClient;
}

let state: AppState;

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

function banner(message: string, kind: "error" | "info" | "" = "error"): void {
  const el = $("banner");
  el.textContent = message;
  el.className = kind;
  el.style.display = message ? "block" : "none";
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, String(value));
  return el;
}

// -- ratings ------------------------------------------------------------------

function renderRatings(): void {
  const container = $("ratings");
  container.textContent = "";
  for (const cid of CONCEPT_IDS) {
    const row = document.createElement("label");
    row.className = "rating-row";
    const name = document.createElement("span");
    name.textContent = `${cid} ${ATTRIBUTE_LABELS[cid]}`;
    const select = document.createElement("select");
    for (const label of state.ratingLabels) {
      const option = document.createElement("option");
      option.value = label;
      option.textContent = label;
      option.selected = label === state.doc.ratings[cid];
      select.append(option);
    }
    select.addEventListener("change", () => {
      state.doc = setRating(state.doc, cid as RatedConceptId, select.value);
      refresh({ rerun: true });
    });
    row.append(name, select);
    container.append(row);
  }
}

// -- influence editing ----------------------------------------------------------

function applyEdge(source: string, target: string, label: string): void {
  try {
    state.doc =
      label === "" ? clearInfluence(state.doc, source, target) : editInfluence(state.doc, source, target, label);
    banner("");
  } catch (err) {
    banner(String(err instanceof Error ? err.message : err));
    return;
  }
  refresh({ rerun: true });
}

function renderMatrix(): void {
  const table = $("matrix") as HTMLTableElement;
  table.textContent = "";
  const projection = matrixProjection(state.doc);
  const head = table.createTHead().insertRow();
  head.append(document.createElement("th"));
  for (const cid of projection.conceptIds) {
    const th = document.createElement("th");
    th.textContent = cid;
    th.title = ATTRIBUTE_LABELS[cid as ConceptId];
    head.append(th);
  }
  const body = table.createTBody();
  for (const cells of projection.rows) {
    const tr = body.insertRow();
    const th = document.createElement("th");
    th.textContent = cells[0]?.source ?? "";
    tr.append(th);
    for (const cell of cells) {
      const td = tr.insertCell();
      if (!cell.editable) {
        td.textContent = "–";
        td.className = "diagonal";
        continue;
      }
      const select = document.createElement("select");
      select.className = "cell";
      const blank = document.createElement("option");
      blank.value = "";
      blank.textContent = "·";
      select.append(blank);
      for (const label of state.influenceLabels) {
        const option = document.createElement("option");
        option.value = label;
        option.textContent = label;
        option.selected = label === cell.label;
        select.append(option);
      }
      select.addEventListener("change", () => applyEdge(cell.source, cell.target, select.value));
      td.append(select);
    }
  }
}

function renderEdgeEditor(): void {
  const sourceSel = $("edge-source") as HTMLSelectElement;
  const targetSel = $("edge-target") as HTMLSelectElement;
  const labelSel = $("edge-label") as HTMLSelectElement;
  if (!sourceSel.options.length) {
    for (const cid of ALL_CONCEPT_IDS) {
      sourceSel.append(new Option(cid, cid));
      targetSel.append(new Option(cid, cid));
    }
    targetSel.value = TRUST_ID;
    for (const label of state.influenceLabels) labelSel.append(new Option(label, label));
  }
}

// -- graph view -----------------------------------------------------------------

function renderGraph(): void {
  const svg = $("graph") as unknown as SVGSVGElement;
  svg.textContent = "";
  const defs = svgEl("defs", {});
  const marker = svgEl("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: 9,
    refY: 5,
    markerWidth: 7,
    markerHeight: 7,
    orient: "auto-start-reverse",
  });
  marker.append(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "context-stroke" }));
  defs.append(marker);
  svg.append(defs);

  const layout = state.doc.layout;
  for (const edge of graphEdges(state.doc)) {
    const from = layout[edge.source as ConceptId];
    const to = layout[edge.target as ConceptId];
    if (!from || !to) continue;
    const dx = to.x - from.x;
    const dy = to.y - from.y;
    const len = Math.hypot(dx, dy) || 1;
    const trim = 24;
    const line = svgEl("line", {
      x1: from.x + (dx / len) * trim,
      y1: from.y + (dy / len) * trim,
      x2: to.x - (dx / len) * trim,
      y2: to.y - (dy / len) * trim,
      stroke: edge.color,
      "stroke-width": edge.width,
      "marker-end": "url(#arrow)",
    });
    if (edge.dashed) line.setAttribute("stroke-dasharray", "6 4");
    const title = svgEl("title", {});
    title.textContent = `${edge.source} -> ${edge.target}: ${edge.label}`;
    line.append(title);
    svg.append(line);
  }

  for (const cid of ALL_CONCEPT_IDS) {
    const point = layout[cid];
    const group = svgEl("g", { transform: `translate(${point.x} ${point.y})`, cursor: "grab" });
    group.append(
      svgEl("circle", {
        r: 20,
        fill: cid === TRUST_ID ? "#f5d0d0" : "#dbe9f7",
        stroke: cid === TRUST_ID ? "#c0392b" : "#34495e",
        "stroke-width": 1.5,
      }),
    );
    const text = svgEl("text", { "text-anchor": "middle", dy: 4, "font-size": 11 });
    text.textContent = cid;
    const title = svgEl("title", {});
    title.textContent = ATTRIBUTE_LABELS[cid];
    group.append(text, title);
    attachDrag(group, cid, svg);
    svg.append(group);
  }
}

function attachDrag(node: SVGGElement, cid: ConceptId, svg: SVGSVGElement): void {
  node.addEventListener("pointerdown", (down) => {
    down.preventDefault();
    node.setPointerCapture(down.pointerId);
    const toLocal = (event: PointerEvent) => {
      const rect = svg.getBoundingClientRect();
      return {
        x: Math.round(((event.clientX - rect.left) / rect.width) * 640),
        y: Math.round(((event.clientY - rect.top) / rect.height) * 480),
      };
    };
    const move = (event: PointerEvent) => {
      state.doc = moveConcept(state.doc, cid, toLocal(event));
      renderGraph();
    };
    const up = () => {
      node.removeEventListener("pointermove", move);
      node.removeEventListener("pointerup", up);
    };
    node.addEventListener("pointermove", move);
    node.addEventListener("pointerup", up);
  });
}

// -- gauge and sparkline ----------------------------------------------------------

function renderGauge(): void {
  const svg = $("gauge") as unknown as SVGSVGElement;
  svg.textContent = "";
  const width = 600;
  const barY = 38;
  const colors: Record<string, string> = { distrust: "#f3c1bb", leaning: "#f2ecd8", trust: "#c8e6c9" };
  const report = state.report;
  const geometry = gaugeGeometry(report ? report.trust_value : 0, width);

  for (const region of geometry.regions) {
    svg.append(
      svgEl("rect", {
        x: region.from,
        y: barY,
        width: region.to - region.from,
        height: 16,
        fill: colors[region.name] ?? "#eee",
      }),
    );
  }
  for (const tick of geometry.ticks) {
    svg.append(svgEl("line", { x1: tick.x, y1: barY - 8, x2: tick.x, y2: barY + 24, stroke: "#333" }));
    const text = svgEl("text", { x: tick.x, y: barY + 40, "text-anchor": "middle", "font-size": 11 });
    text.textContent = tick.label;
    svg.append(text);
  }

  if (state.previous) {
    const ghostX = gaugeGeometry(state.previous.trust_value, width).pointerX;
    svg.append(
      svgEl("path", {
        d: `M ${ghostX} ${barY - 12} l -6 -10 l 12 0 z`,
        fill: "#999",
        opacity: 0.6,
      }),
    );
  }
  if (report) {
    svg.append(
      svgEl("path", {
        d: `M ${geometry.pointerX} ${barY - 2} l -7 -12 l 14 0 z`,
        fill: "#1a355e",
      }),
    );
  }

  const value = $("gauge-value");
  const bandEl = $("gauge-band");
  if (report) {
    value.textContent = String(report.trust_value);
    bandEl.textContent =
      report.band + (report.outcome.kind !== "FixedPoint" ? ` (${report.outcome.kind})` : "");
    const delta = state.previous ? report.trust_value - state.previous.trust_value : null;
    $("gauge-delta").textContent =
      delta === null ? "" : `previous ${state.previous!.trust_value} (Δ ${delta >= 0 ? "+" : ""}${delta})`;
  } else {
    value.textContent = "–";
    bandEl.textContent = "run inference to read the gauge";
    $("gauge-delta").textContent = "";
  }
}

function renderSparkline(): void {
  const svg = $("sparkline") as unknown as SVGSVGElement;
  svg.textContent = "";
  if (!state.report) return;
  const series = trustSeries(state.report.outcome.trace, state.report.outcome.concepts, TRUST_ID);
  const geometry = sparklineGeometry(series, 240, 60);
  svg.append(
    svgEl("line", {
      x1: 0,
      y1: geometry.zeroY,
      x2: geometry.width,
      y2: geometry.zeroY,
      stroke: "#ccc",
      "stroke-dasharray": "3 3",
    }),
  );
  svg.append(
    svgEl("polyline", { points: geometry.points, fill: "none", stroke: "#1a355e", "stroke-width": 1.5 }),
  );
  $("sparkline-caption").textContent = `${state.report.outcome.iterations} iterations (${state.report.outcome.kind})`;
}

// -- what-if runs -----------------------------------------------------------------

async function runWhatIf(): Promise<void> {
  const survey = toSurveyDocument(state.doc);
  const trustStart = Number(($("trust-initial") as HTMLInputElement).value);
  try {
    const report = await state.client.trust(
      survey,
      undefined,
      Number.isFinite(trustStart) && trustStart !== 0 ? trustStart : undefined,
    );
    state.previous = state.report;
    state.report = report;
    banner("");
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return; // superseded
    if (err instanceof ServiceError) {
      banner(`${err.errorName}: ${err.message}`);
    } else {
      banner(`service unreachable at ${state.client.baseUrl} - document untouched`);
    }
    return;
  }
  renderGauge();
  renderSparkline();
}

// -- import / export ----------------------------------------------------------------

function exportDocument(): void {
  const text = serializeDocument(state.doc);
  const blob = new Blob([text], { type: "application/json" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = `${state.doc.expertId || "survey"}.survey.json`;
  link.click();
  URL.revokeObjectURL(link.href);
  state.doc = markSaved(state.doc);
  refresh({ rerun: false });
}

async function importDocument(file: File): Promise<void> {
  let doc: StudioDocument;
  try {
    doc = parseDocument(await file.text());
  } catch (err) {
    banner(`import failed: ${err instanceof Error ? err.message : err}`);
    return;
  }
  // the backend validator is the authority; show its messages verbatim
  try {
    const validation = await state.client.validateSurvey(toSurveyDocument(doc));
    if (!validation.valid) {
      banner(validation.errors.map((e) => `${e.error}: ${e.message}`).join("; "));
      return;
    }
  } catch {
    banner(`service unreachable at ${state.client.baseUrl} - import not validated`);
    return;
  }
  state.doc = doc;
  state.report = null;
  state.previous = null;
  ($("expert-id") as HTMLInputElement).value = doc.expertId;
  banner("");
  refresh({ rerun: true });
}

// -- rules panel (read-only) -----------------------------------------------------------

async function classifyRulesPanel(): Promise<void> {
  const rules = ($("rules-text") as HTMLTextAreaElement).value;
  const recordsText = ($("records-text") as HTMLTextAreaElement).value;
  const output = $("rules-output");
  try {
    const records = JSON.parse(recordsText) as { record_id: string; features: Record<string, number> }[];
    const predictions = await state.client.classifyRules(rules, records);
    output.textContent = predictions
      .map((p) => `${p.record_id}: ${p.class}${p.fired_rule ? ` (via ${p.fired_rule})` : ""}`)
      .join("\n");
  } catch (err) {
    output.textContent = err instanceof ServiceError ? `${err.errorName}: ${err.message}` : String(err);
  }
}

// -- bootstrap ----------------------------------------------------------------------

function refresh(options: { rerun: boolean }): void {
  $("dirty").textContent = state.doc.dirty ? "unsaved changes" : "";
  renderRatings();
  renderMatrix();
  renderGraph();
  renderGauge();
  renderSparkline();
  if (options.rerun) void runWhatIf();
}

export async function start(): Promise<void> {
  const baseUrl = ($("service-url") as HTMLInputElement).value.replace(/\/$/, "");
  state = {
    doc: newDocument((($("expert-id") as HTMLInputElement).value || "expert").trim()),
    report: null,
    previous: null,
    ratingLabels: [],
    influenceLabels: [],
    client: new ServiceClient(baseUrl),
  };
  try {
    const scales = await state.client.scales();
    state.ratingLabels = scales.find((s) => s.name === "rating")?.terms.map((t) => t.label) ?? [];
    state.influenceLabels = scales.find((s) => s.name === "influence")?.terms.map((t) => t.label) ?? [];
    const legend = $("legend");
    legend.textContent = "";
    for (const scale of scales) {
      const dl = document.createElement("div");
      dl.innerHTML =
        `<strong>${scale.name}</strong>: ` +
        scale.terms.map((t) => `${t.label} = ${t.defuzzified}`).join(", ");
      legend.append(dl);
    }
  } catch {
    banner(`service unreachable at ${baseUrl} - start it with: fcmtrust serve`);
    return;
  }

  $("expert-id").addEventListener("change", (event) => {
    state.doc = setExpertId(state.doc, (event.target as HTMLInputElement).value.trim());
    refresh({ rerun: false });
  });
  $("run").addEventListener("click", () => void runWhatIf());
  $("trust-initial").addEventListener("change", () => void runWhatIf());
  $("export").addEventListener("click", exportDocument);
  $("import").addEventListener("change", (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (file) void importDocument(file);
  });
  $("edge-set").addEventListener("click", () => {
    applyEdge(
      ($("edge-source") as HTMLSelectElement).value,
      ($("edge-target") as HTMLSelectElement).value,
      ($("edge-label") as HTMLSelectElement).value,
    );
  });
  $("edge-clear").addEventListener("click", () => {
    applyEdge(($("edge-source") as HTMLSelectElement).value, ($("edge-target") as HTMLSelectElement).value, "");
  });
  $("rules-run").addEventListener("click", () => void classifyRulesPanel());

  renderEdgeEditor();
  refresh({ rerun: true });
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  void start();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", () => void start());
}
