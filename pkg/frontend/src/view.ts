// DOM rendering.  The view never judges a proof itself: every verdict shown
// comes straight from the service's last CheckReport.

import { diagnosticsByLine, formatCitations } from "./model.js";
import type { EditorState } from "./model.js";
import { ruleLabel, RULE_NAMES } from "./ndp.js";
import type { DiagnosticJson, LineJson, StructureJson, VerdictJson } from "./types.js";

export interface ViewCallbacks {
  onFormula(line: number, text: string): void;
  onRule(line: number, rule: string): void;
  onCitations(line: number, text: string): void;
  onBoxedConstant(line: number, name: string): void;
  onDelete(line: number): void;
  onAddLineAfter(line: number): void;
  onOpenSubproof(line: number): void;
  onOpenBox(line: number): void;
  onCloseSubproof(line: number): void;
  onFocusLine(line: number): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K, className?: string, text?: string): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function lineStatus(diags: DiagnosticJson[] | undefined,
                    stale: boolean): "stale" | "error" | "warning" | "ok" {
  if (stale) return "stale";
  if (diags?.some((d) => d.severity === "error")) return "error";
  if (diags?.some((d) => d.severity === "warning")) return "warning";
  return "ok";
}

function button(label: string, title: string, onClick: () => void): HTMLButtonElement {
  const b = el("button", "tool", label);
  b.title = title;
  b.type = "button";
  b.addEventListener("click", onClick);
  return b;
}

function renderLine(ln: LineJson, diags: DiagnosticJson[] | undefined,
                    stale: boolean, cb: ViewCallbacks): HTMLElement {
  const row = el("div", `proof-line status-${lineStatus(diags, stale)}`);
  row.dataset.line = String(ln.number);

  row.appendChild(el("span", "line-number", `${ln.number}.`));

  const bars = el("span", "bars");
  for (let i = 0; i < ln.depth; i += 1) bars.appendChild(el("span", "bar"));
  row.appendChild(bars);

  if (ln.kind === "boxed-constant") {
    const box = el("input", "boxed") as HTMLInputElement;
    box.value = ln.boxed_constant ?? "";
    box.size = 3;
    box.title = "fresh constant introduced by this subproof";
    box.addEventListener("change", () => cb.onBoxedConstant(ln.number, box.value));
    const wrap = el("span", "boxed-wrap");
    wrap.append("[", box, "]");
    row.appendChild(wrap);
  }

  if (!(ln.kind === "boxed-constant" && ln.formula === null)) {
    const formula = el("input", "formula") as HTMLInputElement;
    formula.value = ln.formula ?? "";
    formula.placeholder = "formula";
    formula.spellcheck = false;
    formula.addEventListener("change", () => cb.onFormula(ln.number, formula.value));
    formula.addEventListener("focus", () => cb.onFocusLine(ln.number));
    row.appendChild(formula);
  } else {
    row.appendChild(el("span", "formula-spacer"));
  }

  const just = el("span", "justification");
  if (ln.kind === "premise") {
    just.appendChild(el("span", "kind", "premise"));
  } else if (ln.kind === "assumption") {
    just.appendChild(el("span", "kind", "assume"));
  } else if (ln.kind === "boxed-constant") {
    just.appendChild(el("span", "kind", ln.formula === null ? "box" : "assume"));
  } else {
    const rule = el("select", "rule") as HTMLSelectElement;
    for (const name of RULE_NAMES) {
      const opt = el("option", undefined, ruleLabel(name)) as HTMLOptionElement;
      opt.value = name;
      rule.appendChild(opt);
    }
    rule.value = ln.justification?.rule ?? "Reit";
    rule.addEventListener("change", () => cb.onRule(ln.number, rule.value));
    const cites = el("input", "cites") as HTMLInputElement;
    cites.value = ln.justification ? formatCitations(ln.justification.cited) : "";
    cites.placeholder = "cites: 3, 2 or 3-8";
    cites.size = 10;
    cites.addEventListener("change", () => cb.onCitations(ln.number, cites.value));
    just.append(rule, cites);
  }
  row.appendChild(just);

  const tools = el("span", "tools");
  tools.append(
    button("+", "add a line after this one", () => cb.onAddLineAfter(ln.number)),
    button("⊢", "open a subproof (assumption) after this line",
           () => cb.onOpenSubproof(ln.number)),
    button("[c]", "open a boxed-constant subproof after this line",
           () => cb.onOpenBox(ln.number)),
    button("↩", "close the current subproof after this line",
           () => cb.onCloseSubproof(ln.number)),
    button("✕", "delete this line", () => cb.onDelete(ln.number)),
  );
  row.appendChild(tools);

  if (diags?.length && !stale) {
    const list = el("div", "diagnostics");
    for (const d of diags) {
      list.appendChild(el("div", `diagnostic ${d.severity}`,
                          `${d.code}: ${d.message}`));
    }
    row.appendChild(list);
  }
  return row;
}

export function renderProof(container: HTMLElement, state: EditorState,
                            cb: ViewCallbacks): void {
  const by = diagnosticsByLine(state);
  container.replaceChildren();
  if (state.document.lines.length === 0) {
    container.appendChild(el("p", "empty-hint",
                             "No lines yet: add a premise below, or load an example."));
  }
  for (const ln of state.document.lines) {
    container.appendChild(renderLine(ln, by.get(ln.number), state.dirty, cb));
  }
}

export function renderSummary(node: HTMLElement, state: EditorState): void {
  node.className = "summary";
  if (state.dirty || !state.lastReport) {
    node.textContent = "checking…";
    node.classList.add("stale");
    return;
  }
  const r = state.lastReport;
  if (r.accepted) {
    node.textContent = r.proved ? `accepted — proves ${r.proved}` : "accepted";
    node.classList.add("ok");
  } else {
    const errors = r.diagnostics.filter((d) => d.severity === "error").length;
    node.textContent = `rejected — ${errors} error${errors === 1 ? "" : "s"}`;
    node.classList.add("bad");
  }
}

export function renderStructure(s: StructureJson): HTMLElement {
  const wrap = el("div", "structure");
  const domain = Array.from({ length: s.domain_size }, (_, i) => i).join(", ");
  wrap.appendChild(el("div", "domain", `domain: {${domain}}`));
  const table = el("table");
  for (const [name, value] of Object.entries(s.constants)) {
    const tr = el("tr");
    tr.append(el("td", undefined, name), el("td", undefined, `↦ ${value}`));
    table.appendChild(tr);
  }
  for (const [name, rows] of Object.entries(s.functions)) {
    for (const row of rows) {
      const args = row.slice(0, -1).join(", ");
      const tr = el("tr");
      tr.append(el("td", undefined, `${name}(${args})`),
                el("td", undefined, `= ${row[row.length - 1]}`));
      table.appendChild(tr);
    }
  }
  for (const [name, rows] of Object.entries(s.predicates)) {
    const shown = rows.map((r) => `(${r.join(", ")})`).join(", ");
    const tr = el("tr");
    tr.append(el("td", undefined, name), el("td", undefined, `= {${shown}}`));
    table.appendChild(tr);
  }
  wrap.appendChild(table);
  return wrap;
}

export function renderVerdict(node: HTMLElement, verdict: VerdictJson | null,
                              error?: string): void {
  node.replaceChildren();
  if (error) {
    node.appendChild(el("div", "diagnostic error", error));
    return;
  }
  if (!verdict) return;
  if (verdict.kind === "valid_up_to") {
    node.appendChild(el("div", "banner ok",
                        `no countermodel up to n=${verdict.n}`));
  } else {
    node.appendChild(el("div", "banner bad", "countermodel found"));
    node.appendChild(renderStructure(verdict.structure));
  }
}
