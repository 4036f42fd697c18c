// The symbol palette and text insertion.  Typing the ASCII spellings works
// everywhere too; the server accepts both.

export const PALETTE: { symbol: string; hint: string }[] = [
  { symbol: "¬", hint: "negation (~ or not)" },
  { symbol: "∧", hint: "conjunction (&)" },
  { symbol: "∨", hint: "disjunction (|)" },
  { symbol: "→", hint: "conditional (->)" },
  { symbol: "↔", hint: "biconditional (<->)" },
  { symbol: "∀", hint: "universal (forall)" },
  { symbol: "∃", hint: "existential (exists)" },
  { symbol: "⊤", hint: "truth (true)" },
  { symbol: "⊥", hint: "falsehood (false)" },
];

/** Insert text at the cursor; returns the new value and cursor position. */
export function insertAtCursor(value: string, cursor: number,
                               symbol: string): { value: string; cursor: number } {
  const at = Math.max(0, Math.min(cursor, value.length));
  return {
    value: value.slice(0, at) + symbol + value.slice(at),
    cursor: at + symbol.length,
  };
}
