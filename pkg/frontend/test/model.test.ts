// Edit actions: renumbering and citation re-mapping.

import { describe, expect, it } from "vitest";

import {
  addDerivedLine, addPremise, blankLine, closeSubproof, deleteLine,
  documentForWire, emptyDocument, formatCitations, initialState,
  insertLineAfter, openBoxedSubproof, openSubproof, parseCitations,
  setFormula, setJustification,
} from "../src/model.js";
import type { EditorState } from "../src/model.js";
import type { DocumentJson } from "../src/types.js";

function socratesDirect(): DocumentJson {
  return {
    name: "socrates_direct",
    declared_goal: "∃x M(x)",
    lines: [
      { number: 1, depth: 0, kind: "premise", formula: "∀x (H(x) → M(x))",
        justification: null, boxed_constant: null },
      { number: 2, depth: 0, kind: "premise", formula: "H(s)",
        justification: null, boxed_constant: null },
      { number: 3, depth: 0, kind: "derived", formula: "H(s) → M(s)",
        justification: { rule: "ForallE", cited: [{ start: 1, end: null }] },
        boxed_constant: null },
      { number: 4, depth: 0, kind: "derived", formula: "M(s)",
        justification: { rule: "ImpE", cited: [{ start: 3, end: null }, { start: 2, end: null }] },
        boxed_constant: null },
      { number: 5, depth: 0, kind: "derived", formula: "∃x M(x)",
        justification: { rule: "ExistsI", cited: [{ start: 4, end: null }] },
        boxed_constant: null },
    ],
  };
}

function state(): EditorState {
  return initialState(socratesDirect());
}

function citesOf(s: EditorState, line: number): string {
  return formatCitations(s.document.lines[line - 1].justification!.cited);
}

describe("insertLineAfter", () => {
  it("shifts later citations up by one", () => {
    const next = insertLineAfter(state(), 2, blankLine(0, "derived"));
    expect(next.document.lines).toHaveLength(6);
    expect(next.document.lines.map((l) => l.number)).toEqual([1, 2, 3, 4, 5, 6]);
    // old line 3 is now 4 and still cites line 1
    expect(citesOf(next, 4)).toBe("1");
    // old line 4 is now 5, citing 4 and 2 (previously 3 and 2)
    expect(citesOf(next, 5)).toBe("4, 2");
    // old line 5 is now 6, citing 5
    expect(citesOf(next, 6)).toBe("5");
  });

  it("leaves citations at or before the insertion point alone", () => {
    const next = insertLineAfter(state(), 4, blankLine(0, "derived"));
    expect(citesOf(next, 3)).toBe("1");
    expect(citesOf(next, 4)).toBe("3, 2");
    expect(citesOf(next, 6)).toBe("4");
  });

  it("marks the state dirty", () => {
    const base = { ...state(), dirty: false };
    expect(insertLineAfter(base, 1, blankLine(0, "derived")).dirty).toBe(true);
  });
});

describe("deleteLine", () => {
  it("renumbers and remaps citations past the deletion", () => {
    const next = deleteLine(state(), 3);
    expect(next.document.lines).toHaveLength(4);
    // old line 4 (now 3) cited 3 and 2; 3 is gone → 0 sentinel, 2 intact
    expect(citesOf(next, 3)).toBe("0, 2");
    // old line 5 (now 4) cited 4 → now 3
    expect(citesOf(next, 4)).toBe("3");
  });

  it("never silently rebinds a citation to a neighbor", () => {
    const next = deleteLine(state(), 4);
    // line 5 cited 4; after deleting 4 it must NOT point at the old line 5
    expect(citesOf(next, 4)).toBe("0");
  });

  it("re-parents a subproof when its opener is deleted", () => {
    let s = state();
    s = openSubproof(s, 5, "Q");
    s = addDerivedLine(s, 6);
    expect(s.document.lines[6 - 1].depth).toBe(1);
    expect(s.document.lines[7 - 1].depth).toBe(1);
    const next = deleteLine(s, 6);
    expect(next.document.lines[6 - 1].depth).toBe(0);
  });
});

describe("subproofs", () => {
  it("opens one level deeper than the previous line", () => {
    const s = openSubproof(state(), 5, "¬∃x M(x)");
    const ln = s.document.lines[5];
    expect(ln.depth).toBe(1);
    expect(ln.kind).toBe("assumption");
    expect(ln.formula).toBe("¬∃x M(x)");
  });

  it("boxed opener carries its constant and no formula", () => {
    const s = openBoxedSubproof(state(), 5, "c");
    const ln = s.document.lines[5];
    expect(ln.kind).toBe("boxed-constant");
    expect(ln.boxed_constant).toBe("c");
    expect(ln.formula).toBeNull();
  });

  it("close adds a line one level up", () => {
    let s = openSubproof(state(), 5, "P");
    s = closeSubproof(s, 6);
    expect(s.document.lines[6].depth).toBe(0);
    expect(s.document.lines[6].kind).toBe("derived");
  });
});

describe("field edits", () => {
  it("setFormula touches only its line", () => {
    const s = setFormula(state(), 4, "M(t)");
    expect(s.document.lines[3].formula).toBe("M(t)");
    expect(s.document.lines[2].formula).toBe("H(s) → M(s)");
  });

  it("setJustification parses citation text", () => {
    const s = setJustification(state(), 4, "ImpE", "3, 1");
    expect(s.document.lines[3].justification).toEqual({
      rule: "ImpE",
      cited: [{ start: 3, end: null }, { start: 1, end: null }],
    });
  });

  it("premises are appended after existing premises", () => {
    const s = addPremise(state(), "Mortal(s)");
    expect(s.document.lines[2].kind).toBe("premise");
    expect(s.document.lines[2].formula).toBe("Mortal(s)");
    expect(citesOf(s, 4)).toBe("1");       // shifted from 3
  });
});

describe("citation text", () => {
  it("round trips singles and ranges", () => {
    expect(parseCitations("3, 2")).toEqual([
      { start: 3, end: null }, { start: 2, end: null }]);
    expect(parseCitations("3-8")).toEqual([{ start: 3, end: 8 }]);
    expect(formatCitations(parseCitations("1, 4-6, 9"))).toBe("1, 4-6, 9");
  });

  it("junk becomes the impossible line 0", () => {
    expect(parseCitations("wat")).toEqual([{ start: 0, end: null }]);
  });
});

describe("documentForWire", () => {
  it("recomputes premises from premise lines", () => {
    let s = state();
    s = addPremise(s, "Extra");
    const wire = documentForWire(s.document);
    expect(wire.premises).toEqual(["∀x (H(x) → M(x))", "H(s)", "Extra"]);
  });

  it("empty document stays shaped", () => {
    const wire = documentForWire(emptyDocument("x"));
    expect(wire).toEqual({ name: "x", premises: [], lines: [], declared_goal: null });
  });
});
