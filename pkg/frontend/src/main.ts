/**
 * DOM wiring for the dispute explorer. Renders the store state into the
 * static panels declared in index.html; every user action maps to one
 * store call. No reasoning happens here.
 */

import { ApiClient } from "./api.js";
import { ExplorerStore } from "./store.js";
import type { ExplorerState } from "./store.js";

const SERVICE_URL =
  new URLSearchParams(window.location.search).get("service") ??
  `${window.location.protocol}//${window.location.hostname}:8000`;

const api = new ApiClient(SERVICE_URL);
const store = new ExplorerStore(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const sourceArea = el<HTMLTextAreaElement>("source");
const loadButton = el<HTMLButtonElement>("load");
const diagnosticsPanel = el<HTMLDivElement>("diagnostics");
const graphHost = el<HTMLDivElement>("graph");
const argumentList = el<HTMLDivElement>("arguments");
const semanticsSelect = el<HTMLSelectElement>("semantics");
const profileSelect = el<HTMLSelectElement>("profile");
const targetInput = el<HTMLInputElement>("target");
const explainButton = el<HTMLButtonElement>("explain");
const explanationCard = el<HTMLDivElement>("explanation");
const challengePanel = el<HTMLDivElement>("challenges");
const whatifPanel = el<HTMLDivElement>("whatif");
const statusBar = el<HTMLDivElement>("status");

const SVG_NS = "http://www.w3.org/2000/svg";

function renderGraph(state: ExplorerState) {
  const vm = store.graphViewModel();
  graphHost.textContent = "";
  if (!vm.nodes.length) {
    graphHost.textContent = state.sessionId
      ? "Theory loaded; no arguments."
      : "Load a theory to draw its argument graph.";
    return;
  }
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${vm.width} ${vm.height}`);
  svg.setAttribute("class", "graph-svg");

  const marker = document.createElementNS(SVG_NS, "marker");
  marker.setAttribute("id", "arrow");
  marker.setAttribute("markerWidth", "10");
  marker.setAttribute("markerHeight", "10");
  marker.setAttribute("refX", "24");
  marker.setAttribute("refY", "3");
  marker.setAttribute("orient", "auto");
  const tip = document.createElementNS(SVG_NS, "path");
  tip.setAttribute("d", "M0,0 L6,3 L0,6 z");
  marker.appendChild(tip);
  const defs = document.createElementNS(SVG_NS, "defs");
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const edge of vm.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(edge.x1));
    line.setAttribute("y1", String(edge.y1));
    line.setAttribute("x2", String(edge.x2));
    line.setAttribute("y2", String(edge.y2));
    line.setAttribute("class", "edge");
    line.setAttribute("marker-end", "url(#arrow)");
    svg.appendChild(line);
  }
  for (const node of vm.nodes) {
    const group = document.createElementNS(SVG_NS, "g");
    const classes = [
      "node",
      `label-${node.styling}`,
      node.preview ? `preview-${node.preview}` : "",
      node.pending ? "pending" : "",
      node.highlighted ? "highlighted" : "",
    ].filter(Boolean);
    group.setAttribute("class", classes.join(" "));
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(node.x));
    circle.setAttribute("cy", String(node.y));
    circle.setAttribute("r", "22");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.conclusion} (weight ${node.weight.toFixed(2)})`;
    circle.appendChild(title);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(node.x));
    text.setAttribute("y", String(node.y + 4));
    text.setAttribute("text-anchor", "middle");
    text.textContent = node.label;
    group.appendChild(circle);
    group.appendChild(text);
    svg.appendChild(group);
  }
  graphHost.appendChild(svg);
}

function renderDiagnostics(state: ExplorerState) {
  diagnosticsPanel.textContent = "";
  if (!state.diagnostics.length) {
    diagnosticsPanel.hidden = true;
    return;
  }
  diagnosticsPanel.hidden = false;
  for (const diag of state.diagnostics) {
    const row = document.createElement("div");
    row.className = "diagnostic";
    row.textContent = `line ${diag.line}, col ${diag.col}: ${diag.severity}: ${diag.message}`;
    diagnosticsPanel.appendChild(row);
  }
}

function renderArguments(state: ExplorerState) {
  argumentList.textContent = "";
  const report = state.argumentsReport;
  if (!report) return;
  const premises = new Set<string>();
  for (const row of report.arguments) {
    for (const premise of row.premises) premises.add(premise);
  }
  const list = document.createElement("ul");
  for (const row of report.arguments) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.textContent = `${row.label}: ${row.conclusion}`;
    button.addEventListener("click", () => {
      targetInput.value = row.conclusion;
      void store.explain(row.conclusion);
    });
    item.appendChild(button);
    list.appendChild(item);
  }
  argumentList.appendChild(list);

  const toggles = document.createElement("div");
  toggles.className = "premise-toggles";
  const heading = document.createElement("h3");
  heading.textContent = "Premise toggles (what-if)";
  toggles.appendChild(heading);
  for (const premise of [...premises].sort()) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = !state.pending.disabledPremises.has(premise);
    box.addEventListener("change", () => {
      store.togglePremise(premise);
      void store.previewWhatIf();
    });
    label.appendChild(box);
    label.appendChild(document.createTextNode(` ${premise}`));
    toggles.appendChild(label);
  }
  argumentList.appendChild(toggles);
}

function featureBar(name: string, value: number): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "feature";
  const label = document.createElement("span");
  label.textContent = `${name} ${value.toFixed(2)}`;
  const bar = document.createElement("div");
  bar.className = "bar";
  const fill = document.createElement("div");
  fill.className = "fill";
  fill.style.width = `${Math.round(value * 100)}%`;
  bar.appendChild(fill);
  wrap.appendChild(label);
  wrap.appendChild(bar);
  return wrap;
}

function renderExplanation(state: ExplorerState) {
  explanationCard.textContent = "";
  if (state.insufficient) {
    const panel = document.createElement("div");
    panel.className = "insufficient";
    panel.textContent =
      `INSUFFICIENT: the full tree's sufficiency is ` +
      `${state.insufficient.sigmaFull.toFixed(2)} but the threshold is ` +
      `${state.insufficient.tau.toFixed(2)}. Try lowering the threshold to ` +
      `${state.insufficient.suggestedTau.toFixed(2)}.`;
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "100";
    slider.value = String(Math.round(state.insufficient.suggestedTau * 100));
    slider.addEventListener("change", () => {
      store.setTauOverride(Number(slider.value) / 100);
      void store.explain();
    });
    panel.appendChild(slider);
    explanationCard.appendChild(panel);
    return;
  }
  const explanation = state.explanation;
  if (!explanation) {
    explanationCard.textContent = "Pick a target to see an explanation.";
    return;
  }
  const header = document.createElement("div");
  header.className = "explanation-header";
  header.textContent =
    `${explanation.target.literal} | profile ${explanation.profile} ` +
    `(${explanation.band}) | sigma ${explanation.sigma.toFixed(2)} | ` +
    `utility ${explanation.utility.toFixed(2)}`;
  explanationCard.appendChild(header);

  const body = document.createElement("pre");
  body.className = "explanation-body";
  body.textContent = explanation.rendered.body;
  explanationCard.appendChild(body);

  const features = document.createElement("div");
  features.className = "features";
  features.appendChild(featureBar("clarity", explanation.features.clarity));
  features.appendChild(featureBar("relevance", explanation.features.relevance));
  features.appendChild(featureBar("lexical fit", explanation.features.lexical_fit));
  explanationCard.appendChild(features);
}

function renderChallenges(state: ExplorerState) {
  challengePanel.textContent = "";
  const report = state.argumentsReport;
  const schemes = state.schemes;
  if (!report || !schemes) return;
  const bySchemeId = new Map(schemes.schemes.map((s) => [s.id, s]));
  const instances = report.arguments.filter(
    (row) => row.scheme && row.top_rule && bySchemeId.has(row.scheme),
  );
  if (!instances.length) {
    challengePanel.textContent = "No scheme instances to challenge.";
    return;
  }
  for (const row of instances) {
    const scheme = bySchemeId.get(row.scheme!)!;
    const box = document.createElement("div");
    box.className = "instance";
    const title = document.createElement("h3");
    title.textContent = `${row.top_rule} (${scheme.id})`;
    box.appendChild(title);
    for (const cq of scheme.critical_questions) {
      const button = document.createElement("button");
      button.textContent = cq.text;
      button.addEventListener("click", () => {
        void store.challenge(row.top_rule!, cq.id, 0.6);
      });
      box.appendChild(button);
    }
    challengePanel.appendChild(box);
  }
  if (state.lastChallenge) {
    const delta = document.createElement("div");
    delta.className = "delta-badge";
    const before = state.lastChallenge.before.skeptical ? "accepted" : "not accepted";
    const after = state.lastChallenge.after.skeptical ? "accepted" : "not accepted";
    delta.textContent =
      `CQ ${state.lastChallenge.cq} on ${state.lastChallenge.instance}: ` +
      `${state.lastChallenge.conclusion} ${before} → ${after}`;
    challengePanel.appendChild(delta);
  }
}

function renderWhatif(state: ExplorerState) {
  whatifPanel.textContent = "";
  const preview = state.whatifPreview;
  const buttons = document.createElement("div");
  buttons.className = "whatif-buttons";
  const commit = document.createElement("button");
  commit.textContent = "Commit edits";
  commit.disabled = !store.hasPendingEdits();
  commit.addEventListener("click", () => void store.commitWhatIf());
  const cancel = document.createElement("button");
  cancel.textContent = "Cancel";
  cancel.disabled = !store.hasPendingEdits() && !preview;
  cancel.addEventListener("click", () => {
    store.cancelWhatIf();
  });
  buttons.appendChild(commit);
  buttons.appendChild(cancel);
  whatifPanel.appendChild(buttons);

  if (!preview) return;
  const table = document.createElement("table");
  table.className = "whatif-table";
  const head = document.createElement("tr");
  head.innerHTML = "<th>conclusion</th><th>before</th><th>after</th>";
  table.appendChild(head);
  for (const literal of Object.keys(preview.before.acceptance).sort()) {
    const beforeFlags = preview.before.acceptance[literal];
    const afterFlags = preview.after.acceptance[literal];
    const row = document.createElement("tr");
    if (preview.changes.includes(literal)) row.className = "changed";
    const cells = [
      literal,
      beforeFlags?.skeptical ? "accepted" : "not accepted",
      afterFlags?.skeptical ? "accepted" : "not accepted",
    ];
    for (const value of cells) {
      const cell = document.createElement("td");
      cell.textContent = value;
      row.appendChild(cell);
    }
    table.appendChild(row);
  }
  whatifPanel.appendChild(table);
  if (preview.before.sigma !== null && preview.after.sigma !== null) {
    const sigma = document.createElement("div");
    sigma.className = "sigma-delta";
    sigma.textContent =
      `sigma: ${preview.before.sigma.toFixed(2)} → ` +
      `${preview.after.sigma.toFixed(2)}`;
    whatifPanel.appendChild(sigma);
  }
}

function render(state: ExplorerState) {
  renderDiagnostics(state);
  renderGraph(state);
  renderArguments(state);
  renderExplanation(state);
  renderChallenges(state);
  renderWhatif(state);
  statusBar.textContent = state.lastError
    ? state.lastError
    : state.sessionId
      ? `session ${state.sessionId} (${state.theoryName}), semantics ${state.semantics}`
      : "no session";
}

loadButton.addEventListener("click", () => {
  void store.loadTheory(sourceArea.value);
});
semanticsSelect.addEventListener("change", () => {
  void store.setSemantics(semanticsSelect.value);
});
profileSelect.addEventListener("change", () => {
  void store.setProfile(profileSelect.value);
});
explainButton.addEventListener("click", () => {
  if (targetInput.value.trim()) {
    store.setTauOverride(null);
    void store.explain(targetInput.value.trim());
  }
});

store.subscribe(render);
void store.loadSchemes();
render(store.state);
