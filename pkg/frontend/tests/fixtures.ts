/** Shared fixture payloads mirroring real service responses. */

import type {
  AnomalyFlag,
  GradeRecord,
  Heatmap,
  TeamDetail,
  Timeline,
} from "../src/types.js";

export function makeFlag(partial: Partial<AnomalyFlag> = {}): AnomalyFlag {
  return {
    id: "team-1:floor_triggered:S4",
    team_id: "team-1",
    kind: "floor_triggered",
    student: "S4",
    evidence: { share: 0.028, floor_share: 0.1 },
    status: "open",
    resolution_note: "",
    ...partial,
  };
}

export function makeRecord(partial: Partial<GradeRecord> = {}): GradeRecord {
  return {
    student: "S4",
    team_id: "team-1",
    pqs: 80.5,
    ncs: 0,
    s_f: 40,
    adjustments: [],
    final: 40,
    status: "flagged_pending",
    ...partial,
  };
}

export function makeDetail(partial: Partial<TeamDetail> = {}): TeamDetail {
  const records = [
    makeRecord({ student: "S1", ncs: 100, s_f: 88.3, final: 88.3,
                 status: "auto_approved" }),
    makeRecord({ student: "S2", ncs: 95, s_f: 86.3, final: 86.3,
                 status: "auto_approved" }),
    makeRecord({ student: "S3", ncs: 90, s_f: 84.3, final: 84.3,
                 status: "auto_approved" }),
    makeRecord(),
  ];
  return {
    team_id: "team-1",
    records,
    flags: [makeFlag()],
    feedback: {
      S4: {
        student: "S4",
        strengths: [],
        weaknesses: ["commit activity"],
        rendered: "Your commit activity was low.",
      },
    },
    quality: { pqs: 80.5 },
    contribution: {
      normalized: {
        method: "min_max",
        students: {
          S1: { raw_index: 100, capped_index: 100, ncs: 100, share: 0.33 },
          S2: { raw_index: 95, capped_index: 95, ncs: 95, share: 0.31 },
          S3: { raw_index: 90, capped_index: 90, ncs: 90, share: 0.30 },
          S4: { raw_index: 8, capped_index: 8, ncs: 0, share: 0.06 },
        },
      },
    },
    ...partial,
  };
}

export function makeHeatmap(partial: Partial<Heatmap> = {}): Heatmap {
  return {
    team_id: "team-1",
    students: ["S1", "S2"],
    files: ["src/a.py", "src/b.py"],
    matrix: [
      [98, 0],
      [0, 42],
    ],
    ...partial,
  };
}

export function makeTimeline(partial: Partial<Timeline> = {}): Timeline {
  return {
    team_id: "team-1",
    students: {
      S1: { "2026-03-01": 2, "2026-03-02": 1 },
      S2: { "2026-03-02": 3 },
    },
    ...partial,
  };
}
