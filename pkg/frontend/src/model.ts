// Editor state and the pure edit actions.
//
// Every structural edit renumbers lines and re-maps citations so they keep
// pointing at the same logical lines.  A citation whose target was deleted
// becomes 0 — an impossible line number the checker reports as
// E_BAD_CITATION — rather than silently sliding onto a neighbor.

import type {
  CheckConfigJson, DocumentJson, LineJson, ReportJson,
} from "./types.js";

export interface EditorState {
  document: DocumentJson;
  cursor: number;            // 1-based line number the user is on
  dirty: boolean;            // edited since lastReport came back
  lastReport: ReportJson | null;
  config: CheckConfigJson;
}

export function emptyDocument(name = "untitled"): DocumentJson {
  return { name, lines: [], declared_goal: null };
}

export function initialState(document: DocumentJson): EditorState {
  return { document, cursor: document.lines.length > 0 ? 1 : 0, dirty: true,
           lastReport: null, config: {} };
}

function cloneLine(ln: LineJson): LineJson {
  return {
    ...ln,
    justification: ln.justification === null ? null : {
      rule: ln.justification.rule,
      cited: ln.justification.cited.map((c) => ({ ...c })),
    },
  };
}

/** Renumber sequentially and push every citation through the mapping. */
function renumber(lines: LineJson[], map: (old: number) => number): LineJson[] {
  return lines.map((ln, i) => {
    const out = cloneLine(ln);
    out.number = i + 1;
    if (out.justification) {
      out.justification.cited = out.justification.cited.map((c) => ({
        start: map(c.start),
        end: c.end === null ? null : map(c.end),
      }));
    }
    return out;
  });
}

function withLines(state: EditorState, lines: LineJson[],
                   map: (old: number) => number, cursor?: number): EditorState {
  return {
    ...state,
    document: { ...state.document, lines: renumber(lines, map) },
    cursor: cursor ?? state.cursor,
    dirty: true,
  };
}

export function blankLine(depth: number, kind: LineJson["kind"]): LineJson {
  return {
    number: 0, depth, kind,
    formula: kind === "boxed-constant" ? null : "",
    justification: kind === "derived" ? { rule: "Reit", cited: [] } : null,
    boxed_constant: kind === "boxed-constant" ? "c" : null,
  };
}

/** Insert after line `after` (0 inserts at the top). */
export function insertLineAfter(state: EditorState, after: number,
                                line: LineJson): EditorState {
  const lines = state.document.lines.slice();
  lines.splice(after, 0, line);
  const map = (old: number) => (old > after ? old + 1 : old);
  return withLines(state, lines, map, after + 1);
}

export function deleteLine(state: EditorState, target: number): EditorState {
  const old = state.document.lines;
  if (target < 1 || target > old.length) return state;
  const victim = old[target - 1];
  const lines: LineJson[] = [];
  for (const ln of old) {
    if (ln.number === target) continue;
    const out = cloneLine(ln);
    // a deleted subproof opener re-parents its block one level up
    if (victim.kind !== "premise" && victim.kind !== "derived"
        && ln.number > target && out.depth >= victim.depth) {
      let enclosed = true;
      for (const between of old.slice(target, ln.number - 1)) {
        if (between.depth < victim.depth) enclosed = false;
      }
      if (enclosed) out.depth = Math.max(0, out.depth - 1);
    }
    lines.push(out);
  }
  const map = (oldNum: number) =>
    oldNum === target ? 0 : oldNum > target ? oldNum - 1 : oldNum;
  const cursor = Math.min(state.cursor, lines.length);
  return withLines(state, lines, map, Math.max(cursor, lines.length ? 1 : 0));
}

export function setFormula(state: EditorState, target: number,
                           formula: string): EditorState {
  const lines = state.document.lines.map((ln) =>
    ln.number === target ? { ...cloneLine(ln), formula } : ln);
  return withLines(state, lines, (n) => n, target);
}

export function setJustification(state: EditorState, target: number,
                                 rule: string, citedText: string): EditorState {
  const cited = parseCitations(citedText);
  const lines = state.document.lines.map((ln) =>
    ln.number === target && ln.kind === "derived"
      ? { ...cloneLine(ln), justification: { rule, cited } }
      : ln);
  return withLines(state, lines, (n) => n, target);
}

export function setBoxedConstant(state: EditorState, target: number,
                                 name: string): EditorState {
  const lines = state.document.lines.map((ln) =>
    ln.number === target && ln.kind === "boxed-constant"
      ? { ...cloneLine(ln), boxed_constant: name }
      : ln);
  return withLines(state, lines, (n) => n, target);
}

/** "3, 2" and "3-8" forms, commas between; bad chunks become citation 0. */
export function parseCitations(text: string) {
  const out = [];
  for (const chunk of text.split(",")) {
    const t = chunk.trim();
    if (!t) continue;
    const m = /^(\d+)\s*-\s*(\d+)$/.exec(t);
    if (m) {
      out.push({ start: parseInt(m[1], 10), end: parseInt(m[2], 10) });
      continue;
    }
    const s = /^(\d+)$/.exec(t);
    out.push(s ? { start: parseInt(s[1], 10), end: null } : { start: 0, end: null });
  }
  return out;
}

export function formatCitations(cited: { start: number; end: number | null }[]): string {
  return cited.map((c) => (c.end === null ? `${c.start}` : `${c.start}-${c.end}`)).join(", ");
}

/** Depth a line inserted after `after` may use for a new subproof. */
export function subproofDepthAfter(state: EditorState, after: number): number {
  if (after === 0) return 1;
  const prev = state.document.lines[after - 1];
  return prev.depth + 1;
}

export function openSubproof(state: EditorState, after: number,
                             assumption: string): EditorState {
  const line = blankLine(subproofDepthAfter(state, after), "assumption");
  line.formula = assumption;
  return insertLineAfter(state, after, line);
}

export function openBoxedSubproof(state: EditorState, after: number,
                                  constant: string): EditorState {
  const line = blankLine(subproofDepthAfter(state, after), "boxed-constant");
  line.boxed_constant = constant;
  return insertLineAfter(state, after, line);
}

/** Close the subproof containing `after`: the next line sits one level up. */
export function closeSubproof(state: EditorState, after: number): EditorState {
  const prev = state.document.lines[after - 1];
  if (!prev || prev.depth === 0) return state;
  const line = blankLine(prev.depth - 1, "derived");
  return insertLineAfter(state, after, line);
}

export function addPremise(state: EditorState, formula: string): EditorState {
  let lastPremise = 0;
  for (const ln of state.document.lines) {
    if (ln.kind === "premise") lastPremise = ln.number;
    else break;
  }
  const line = blankLine(0, "premise");
  line.formula = formula;
  return insertLineAfter(state, lastPremise, line);
}

export function addDerivedLine(state: EditorState, after: number): EditorState {
  const depth = after === 0 ? 0 : state.document.lines[after - 1].depth;
  return insertLineAfter(state, after, blankLine(depth, "derived"));
}

/** Premise formulas recomputed from the lines, for the wire form. */
export function documentForWire(doc: DocumentJson): DocumentJson {
  return {
    name: doc.name,
    premises: doc.lines.filter((l) => l.kind === "premise")
      .map((l) => l.formula ?? ""),
    lines: doc.lines,
    declared_goal: doc.declared_goal,
  };
}

/** Diagnostics of the last report, grouped by line. */
export function diagnosticsByLine(state: EditorState) {
  const by = new Map<number, ReportJson["diagnostics"]>();
  if (!state.lastReport) return by;
  for (const d of state.lastReport.diagnostics) {
    const bucket = by.get(d.line) ?? [];
    bucket.push(d);
    by.set(d.line, bucket);
  }
  return by;
}
