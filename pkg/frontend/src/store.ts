// Autosave to browser local storage; the server stays stateless.

import type { DocumentJson } from "./types.js";

const KEY = "fitchcheck.document.v1";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export function saveDocument(doc: DocumentJson,
                             storage: StorageLike): void {
  storage.setItem(KEY, JSON.stringify(doc));
}

export function loadDocument(storage: StorageLike): DocumentJson | null {
  const raw = storage.getItem(KEY);
  if (raw === null) return null;
  try {
    const doc = JSON.parse(raw) as DocumentJson;
    return Array.isArray(doc.lines) ? doc : null;
  } catch {
    return null;
  }
}

export function clearDocument(storage: StorageLike): void {
  storage.removeItem(KEY);
}
