/**
 * Data shapes exchanged with the scholargraph REST API.
 *
 * The UI never derives numbers itself: everything rendered comes from one
 * of these payloads.
 */

export interface NodeRef {
  id: string;
  label: string;
}

export interface ComparisonGroup {
  label: string;
  frequency: number;
  predicates: string[];
  /** One cell per compared contribution, each an ordered list of values. */
  cells: string[][];
}

export interface ComparisonTable {
  contributions: NodeRef[];
  threshold: number;
  groups: ComparisonGroup[];
}

export interface Paper {
  node: string;
  title: string;
  doi: string | null;
  authors: string[];
  year: number | null;
  contributions: string[];
}

export interface StatementRecord {
  id: string;
  subject: string;
  predicate: string;
  object: string;
  created_at: string;
  created_by: string;
}

export interface ContributionDetail {
  node: string;
  label: string;
  problem: NodeRef | null;
  method: NodeRef | null;
  results: NodeRef[];
  statements: StatementRecord[];
}

export interface PaperDetail {
  paper: Paper;
  contributions: ContributionDetail[];
}

export interface Subgraph {
  root: string;
  depth_limit: number;
  statements: StatementRecord[];
}

export interface SimilarResult {
  id: string;
  label: string;
  score: number;
}

export interface SimilarResponse {
  contribution: string;
  k: number;
  results: SimilarResult[];
}

export interface Health {
  status: string;
  paper_count: number;
  statement_count: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail: unknown;
}

/** Literal object inside a free-form description triple. */
export interface LiteralObject {
  value: string;
  datatype?: string;
}

export type DescriptionTriple = [predicateLabel: string, object: string | LiteralObject];

export interface ContributionSpecPayload {
  problem: string;
  method?: string;
  results: string[];
  complete?: boolean;
  description?: DescriptionTriple[];
}

export interface PaperPayload {
  title: string;
  doi?: string;
  authors?: string[];
  year?: number;
  contributions: ContributionSpecPayload[];
}

export type ExportFormat = "csv" | "latex";
