// Serialize a document to the .ndp text format the CLI reads.

import type { DocumentJson, LineJson } from "./types.js";
import { formatCitations } from "./model.js";

const RULE_DISPLAY: Record<string, string> = {
  NotI: "¬I", NotE: "¬E", AndI: "∧I", AndE: "∧E",
  OrI: "∨I", OrE: "∨E", ImpI: "→I", ImpE: "→E",
  IffI: "↔I", IffE: "↔E", ForallI: "∀I", ForallE: "∀E",
  ExistsI: "∃I", ExistsE: "∃E", Reit: "Reit", BottomI: "⊥",
  IP: "IP", QN: "QN", NegImp: "NegImp",
};

export const RULE_NAMES = Object.keys(RULE_DISPLAY);

export function ruleLabel(rule: string): string {
  return RULE_DISPLAY[rule] ?? rule;
}

function lineText(ln: LineJson): string {
  const bars = "| ".repeat(ln.depth);
  let body: string;
  let tail: string;
  if (ln.kind === "premise") {
    body = ln.formula ?? "";
    tail = "premise";
  } else if (ln.kind === "assumption") {
    body = ln.formula ?? "";
    tail = "assume";
  } else if (ln.kind === "boxed-constant") {
    body = ln.formula === null
      ? `[${ln.boxed_constant ?? "c"}]`
      : `[${ln.boxed_constant ?? "c"}] ${ln.formula}`;
    tail = ln.formula === null ? "box" : "assume";
  } else {
    body = ln.formula ?? "";
    const j = ln.justification;
    tail = j === null ? "Reit" : ruleLabel(j.rule) +
      (j.cited.length ? ` ${formatCitations(j.cited)}` : "");
  }
  return `${ln.number}. ${bars}${body} ; ${tail}`;
}

export function toNdp(doc: DocumentJson): string {
  const out: string[] = [];
  if (doc.name) out.push(`name: ${doc.name}`);
  if (doc.declared_goal !== null) out.push(`goal: ${doc.declared_goal}`);
  for (const ln of doc.lines) out.push(lineText(ln));
  return out.length ? out.join("\n") + "\n" : "";
}
