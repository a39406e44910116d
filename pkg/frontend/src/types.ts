/**
 * View-model types mirroring the review service JSON responses.
 *
 * The dashboard renders only what the API sends; it never computes
 * scores client-side.
 */

export interface Adjustment {
  delta: number;
  reason: string;
  actor: string;
}

export interface GradeRecord {
  student: string;
  team_id: string;
  pqs: number;
  ncs: number;
  s_f: number;
  adjustments: Adjustment[];
  final: number;
  status: "auto_approved" | "flagged_pending" | "approved_with_override";
}

export interface AnomalyFlag {
  id: string;
  team_id: string;
  kind: string;
  student: string | null;
  evidence: Record<string, unknown>;
  status: "open" | "resolved";
  resolution_note: string;
}

export interface FeedbackSummary {
  student: string;
  strengths: string[];
  weaknesses: string[];
  rendered: string;
}

export interface QualityReport {
  code_quality: number;
  testing: number;
  documentation: number;
  functionality: number;
  usability: number;
  pqs: number;
  evidence: Record<string, string[]>;
  weights: Record<string, number>;
}

export interface NormalizedStudent {
  raw_index: number;
  capped_index: number;
  ncs: number;
  share: number;
}

export interface ContributionSummary {
  vectors: Record<string, Record<string, number>>;
  normalized: {
    method: string | null;
    students: Record<string, NormalizedStudent>;
  };
  counts: Record<string, Record<string, number>>;
  alerts: Array<{ kind: string; student: string | null; share: number }>;
}

export interface TeamSummary {
  team_id: string;
  students: number;
  open_flags: number;
  statuses: Record<string, number>;
  pqs: number | null;
}

export interface TeamDetail {
  team_id: string;
  records: GradeRecord[];
  flags: AnomalyFlag[];
  feedback: Record<string, FeedbackSummary>;
  quality: Partial<QualityReport>;
  contribution: Partial<ContributionSummary>;
}

export interface Heatmap {
  team_id: string;
  students: string[];
  files: string[];
  matrix: number[][];
}

export interface Timeline {
  team_id: string;
  students: Record<string, Record<string, number>>;
}

export interface OverrideResult {
  flag: AnomalyFlag;
  record: GradeRecord | null;
}
