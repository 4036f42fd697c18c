// Wiring: state, service client, debounced checking, and the DOM.

import { ApiClient, isAbortError } from "./api.js";
import { Debouncer } from "./debounce.js";
import {
  addDerivedLine, addPremise, closeSubproof, deleteLine, documentForWire,
  emptyDocument, initialState, openBoxedSubproof, openSubproof,
  setBoxedConstant, setFormula, setJustification,
} from "./model.js";
import type { EditorState } from "./model.js";
import { toNdp } from "./ndp.js";
import { insertAtCursor, PALETTE } from "./palette.js";
import { loadDocument, saveDocument } from "./store.js";
import { renderProof, renderSummary, renderVerdict } from "./view.js";
import type { ViewCallbacks } from "./view.js";

const api = new ApiClient("");
let state: EditorState = initialState(loadDocument(localStorage) ?? emptyDocument());
let lastFocusedInput: HTMLInputElement | null = null;

const proofNode = document.getElementById("proof")!;
const summaryNode = document.getElementById("summary")!;
const strictBox = document.getElementById("strict") as HTMLInputElement;

const checker = new Debouncer(async () => {
  try {
    const resp = await api.check(documentForWire(state.document), state.config);
    state = { ...state, lastReport: resp.report, dirty: false };
    redraw();
  } catch (e) {
    if (!isAbortError(e)) {
      summaryNode.textContent = `check failed: ${(e as Error).message}`;
      summaryNode.className = "summary bad";
    }
  }
}, 300);

function update(next: EditorState): void {
  state = next;
  saveDocument(state.document, localStorage);
  redraw();
  checker.schedule();
}

const callbacks: ViewCallbacks = {
  onFormula: (n, text) => update(setFormula(state, n, text)),
  onRule: (n, rule) => {
    const ln = state.document.lines[n - 1];
    const cites = ln.justification ? ln.justification.cited : [];
    update(setJustification(state, n, rule,
                            cites.map((c) => c.end === null ? `${c.start}`
                                                            : `${c.start}-${c.end}`).join(", ")));
  },
  onCitations: (n, text) => {
    const ln = state.document.lines[n - 1];
    update(setJustification(state, n, ln.justification?.rule ?? "Reit", text));
  },
  onBoxedConstant: (n, name) => update(setBoxedConstant(state, n, name)),
  onDelete: (n) => update(deleteLine(state, n)),
  onAddLineAfter: (n) => update(addDerivedLine(state, n)),
  onOpenSubproof: (n) => update(openSubproof(state, n, "")),
  onOpenBox: (n) => update(openBoxedSubproof(state, n, "c")),
  onCloseSubproof: (n) => update(closeSubproof(state, n)),
  onFocusLine: (n) => { state = { ...state, cursor: n }; },
};

function redraw(): void {
  renderProof(proofNode, state, callbacks);
  renderSummary(summaryNode, state);
  for (const input of proofNode.querySelectorAll("input.formula")) {
    input.addEventListener("focus", (e) => {
      lastFocusedInput = e.target as HTMLInputElement;
    });
  }
}

// --- toolbar ---

document.getElementById("add-premise")!.addEventListener("click", () => {
  update(addPremise(state, ""));
});

document.getElementById("add-line")!.addEventListener("click", () => {
  update(addDerivedLine(state, state.document.lines.length));
});

strictBox.addEventListener("change", () => {
  state = { ...state, config: { ...state.config, strict: strictBox.checked } };
  update(state);
});

document.getElementById("download")!.addEventListener("click", () => {
  const blob = new Blob([toNdp(state.document)], { type: "text/plain;charset=utf-8" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = `${state.document.name || "proof"}.ndp`;
  a.click();
  URL.revokeObjectURL(a.href);
});

document.getElementById("clear")!.addEventListener("click", () => {
  update(initialState(emptyDocument()));
});

// --- palette ---

const paletteNode = document.getElementById("palette")!;
for (const { symbol, hint } of PALETTE) {
  const b = document.createElement("button");
  b.type = "button";
  b.textContent = symbol;
  b.title = hint;
  b.addEventListener("mousedown", (e) => e.preventDefault()); // keep focus
  b.addEventListener("click", () => {
    const target = lastFocusedInput;
    if (!target) return;
    const { value, cursor } = insertAtCursor(
      target.value, target.selectionStart ?? target.value.length, symbol);
    target.value = value;
    target.focus();
    target.setSelectionRange(cursor, cursor);
    target.dispatchEvent(new Event("change"));
  });
  paletteNode.appendChild(b);
}

// --- example gallery ---

async function loadExamples(): Promise<void> {
  const select = document.getElementById("examples") as HTMLSelectElement;
  try {
    for (const entry of await api.examples()) {
      const opt = document.createElement("option");
      opt.value = entry.id;
      opt.textContent = entry.title;
      opt.title = entry.description;
      select.appendChild(opt);
    }
  } catch {
    select.disabled = true;
    return;
  }
  select.addEventListener("change", async () => {
    if (!select.value) return;
    const example = await api.example(select.value);
    update(initialState(example.document));
  });
}

// --- countermodel panel ---

document.getElementById("cm-run")!.addEventListener("click", async () => {
  const premisesRaw = (document.getElementById("cm-premises") as HTMLTextAreaElement).value;
  const conclusion = (document.getElementById("cm-conclusion") as HTMLInputElement).value;
  const out = document.getElementById("cm-result")!;
  const premises = premisesRaw.split("\n").map((s) => s.trim()).filter(Boolean);
  try {
    const verdict = await api.countermodel(premises, conclusion, 3);
    renderVerdict(out, verdict);
  } catch (e) {
    renderVerdict(out, null, (e as Error).message);
  }
});

void loadExamples();
redraw();
checker.schedule();
