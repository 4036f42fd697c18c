// Wire types for the /v1 API (schema v1).

export interface CitationJson {
  start: number;
  end: number | null;
}

export interface JustificationJson {
  rule: string;
  cited: CitationJson[];
}

export type LineKind = "premise" | "assumption" | "derived" | "boxed-constant";

export interface LineJson {
  number: number;
  depth: number;
  kind: LineKind;
  formula: string | null;
  justification: JustificationJson | null;
  boxed_constant: string | null;
}

export interface DocumentJson {
  name: string;
  premises?: string[];
  lines: LineJson[];
  declared_goal: string | null;
}

export interface DiagnosticJson {
  line: number;
  code: string;
  severity: "error" | "warning";
  message: string;
  related: number[];
}

export interface ReportJson {
  accepted: boolean;
  proved: string | null;
  diagnostics: DiagnosticJson[];
}

export interface StructureJson {
  domain_size: number;
  constants: Record<string, number>;
  functions: Record<string, number[][]>;
  predicates: Record<string, number[][]>;
}

export type VerdictJson =
  | { kind: "valid_up_to"; n: number }
  | { kind: "countermodel"; structure: StructureJson };

export interface CheckConfigJson {
  strict?: boolean;
  alpha_matching?: boolean;
}

export interface CheckResponse {
  version: "v1";
  report: ReportJson;
  verdict?: VerdictJson;
}

export interface ExampleIndexEntry {
  id: string;
  title: string;
  description: string;
  expect: { accepted: boolean; codes: string[] };
}

export interface ExampleResponse {
  version: "v1";
  id: string;
  text: string;
  document: DocumentJson;
}
