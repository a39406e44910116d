import { describe, expect, it } from "vitest";

import { renderTeamDetail } from "../src/views/team.js";
import type { AnomalyFlag } from "../src/types.js";
import { makeDetail, makeHeatmap, makeTimeline } from "./fixtures.js";

const handlers = (_flag: AnomalyFlag) => ({
  submit: () => Promise.reject(new Error("not used")),
  onResolved: () => {},
});

describe("team detail", () => {
  it("renders one card per student with the API's numbers", () => {
    const detail = makeDetail();
    const view = renderTeamDetail(detail, makeHeatmap(), makeTimeline(),
                                  handlers);
    const cards = view.querySelectorAll(".student-card");
    expect(cards).toHaveLength(4);
    const s1 = view.querySelector('[data-student="S1"]')!;
    expect(s1.textContent).toContain("PQS 80.5");
    expect(s1.textContent).toContain("NCS 100.0");
    expect(s1.textContent).toContain("final 88.3");
    const s4 = view.querySelector('[data-student="S4"]')!;
    expect(s4.textContent).toContain("final 40.0");
    expect(s4.textContent).toContain("flagged_pending");
    expect(s4.textContent).toContain("Your commit activity was low.");
  });

  it("renders the heatmap matrix and timeline bars", () => {
    const view = renderTeamDetail(makeDetail(), makeHeatmap(),
                                  makeTimeline(), handlers);
    const heatmapRows = view.querySelectorAll(".heatmap tr");
    expect(heatmapRows).toHaveLength(3); // header + 2 students
    expect(view.querySelector(".heatmap")!.textContent).toContain("src/a.py");
    const bars = view.querySelectorAll(".timeline .bar");
    expect(bars).toHaveLength(3); // S1 two days, S2 one day
  });

  it("falls back to placeholders when heatmap/timeline are missing", () => {
    const view = renderTeamDetail(makeDetail(), null, null, handlers);
    expect(view.textContent).toContain("No heatmap data.");
    expect(view.textContent).toContain("No timeline data.");
  });

  it("draws a pie slice per student from the share field", () => {
    const view = renderTeamDetail(makeDetail(), null, null, handlers);
    const slices = view.querySelectorAll(".share-pie path");
    expect(slices).toHaveLength(4);
    expect(slices[0]!.querySelector("title")!.textContent)
      .toContain("33.0%");
  });

  it("shows an override form per open flag and text for resolved ones", () => {
    const detail = makeDetail();
    detail.flags = [
      detail.flags[0]!,
      { ...detail.flags[0]!, id: "f-resolved", status: "resolved",
        resolution_note: "checked by hand" },
    ];
    const view = renderTeamDetail(detail, null, null, handlers);
    expect(view.querySelectorAll(".override-form")).toHaveLength(1);
    expect(view.textContent).toContain("checked by hand");
  });
});
