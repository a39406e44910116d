/**
 * Review queue: one row per open anomaly flag, linking to the team.
 */

import { el } from "../dom.js";
import type { AnomalyFlag } from "../types.js";

function evidenceSummary(flag: AnomalyFlag): string {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(flag.evidence)) {
    if (typeof value === "number") {
      parts.push(`${key}: ${Number.isInteger(value) ? value : value.toFixed(3)}`);
    } else if (typeof value === "string") {
      parts.push(`${key}: ${value}`);
    }
  }
  return parts.join(", ");
}

export function renderReviewQueue(
  flags: AnomalyFlag[],
  onOpenTeam: (teamId: string) => void,
): HTMLElement {
  const container = el("section", { class: "review-queue" }, [
    el("h2", {}, ["Review queue"]),
  ]);
  if (flags.length === 0) {
    container.append(
      el("p", { class: "empty-state" }, ["No pending reviews."]),
    );
    return container;
  }
  const table = el("table", { class: "queue-table" });
  table.append(
    el("tr", {}, [
      el("th", {}, ["Kind"]),
      el("th", {}, ["Team"]),
      el("th", {}, ["Student"]),
      el("th", {}, ["Evidence"]),
      el("th", {}, [""]),
    ]),
  );
  for (const flag of flags) {
    const openButton = el(
      "button",
      { class: "open-team", "data-team": flag.team_id },
      ["Open team"],
    );
    openButton.addEventListener("click", () => onOpenTeam(flag.team_id));
    table.append(
      el("tr", { class: "queue-row", "data-flag": flag.id }, [
        el("td", {}, [flag.kind]),
        el("td", {}, [flag.team_id]),
        el("td", {}, [flag.student ?? "(team)"]),
        el("td", { class: "evidence" }, [evidenceSummary(flag)]),
        el("td", {}, [openButton]),
      ]),
    );
  }
  container.append(table);
  return container;
}
