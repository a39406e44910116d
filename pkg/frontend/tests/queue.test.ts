import { describe, expect, it, vi } from "vitest";

import { renderReviewQueue } from "../src/views/queue.js";
import { makeFlag } from "./fixtures.js";

describe("review queue", () => {
  it("renders one row per open flag", () => {
    const flags = [
      makeFlag({ id: "f1", kind: "low_outlier", student: "S2" }),
      makeFlag({ id: "f2", kind: "authorship_mismatch", student: "S4" }),
      makeFlag({ id: "f3", kind: "quality_engagement_gap", student: null }),
    ];
    const view = renderReviewQueue(flags, () => {});
    const rows = view.querySelectorAll(".queue-row");
    expect(rows).toHaveLength(3);
    expect(rows[2]!.textContent).toContain("(team)");
    expect(view.textContent).toContain("authorship_mismatch");
  });

  it("shows the empty state without rows", () => {
    const view = renderReviewQueue([], () => {});
    expect(view.querySelectorAll(".queue-row")).toHaveLength(0);
    expect(view.textContent).toContain("No pending reviews.");
  });

  it("navigates to the flag's team", () => {
    const onOpen = vi.fn();
    const view = renderReviewQueue([makeFlag({ team_id: "team-9" })], onOpen);
    (view.querySelector(".open-team") as HTMLButtonElement).click();
    expect(onOpen).toHaveBeenCalledWith("team-9");
  });

  it("summarizes numeric evidence in the row", () => {
    const view = renderReviewQueue(
      [makeFlag({ evidence: { share: 0.028, floor_share: 0.1 } })],
      () => {},
    );
    expect(view.querySelector(".evidence")!.textContent).toContain("share");
    expect(view.querySelector(".evidence")!.textContent).toContain("0.028");
  });
});
