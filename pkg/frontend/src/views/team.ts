/**
 * Team detail: per-student grade cards, contribution pie, ownership
 * heatmap, commit timeline, and the open-flag override forms.
 *
 * Everything rendered here is a field from the API payloads; missing
 * sections degrade to placeholders instead of crashing.
 */

import { el, score } from "../dom.js";
import type {
  AnomalyFlag,
  Heatmap,
  TeamDetail,
  Timeline,
} from "../types.js";
import { renderOverrideForm, type OverrideFormHandlers } from "./override.js";

const PIE_COLORS = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
                    "#76b7b2", "#edc948", "#ff9da7"];

function studentCards(detail: TeamDetail): HTMLElement {
  const cards = el("div", { class: "student-cards" });
  const normalized = detail.contribution.normalized?.students ?? {};
  for (const record of detail.records) {
    const feedback = detail.feedback[record.student];
    const share = normalized[record.student]?.share;
    cards.append(
      el("article", { class: "student-card", "data-student": record.student },
        [
          el("h4", {}, [record.student]),
          el("p", { class: "scores" }, [
            `PQS ${score(record.pqs)} · NCS ${score(record.ncs)} · ` +
            `final ${score(record.final)}`,
          ]),
          el("p", { class: `status status-${record.status}` },
             [record.status]),
          ...(share !== undefined
            ? [el("p", { class: "share" },
                  [`contribution share ${(share * 100).toFixed(1)}%`])]
            : []),
          ...(feedback
            ? [el("p", { class: "feedback-preview" }, [feedback.rendered])]
            : []),
        ]),
    );
  }
  return cards;
}

function sharePie(detail: TeamDetail): HTMLElement {
  const normalized = detail.contribution.normalized?.students ?? {};
  const entries = Object.entries(normalized);
  if (entries.length === 0) {
    return el("p", { class: "placeholder" }, ["No contribution data."]);
  }
  const svgNS = "http://www.w3.org/2000/svg";
  const svg = document.createElementNS(svgNS, "svg");
  svg.setAttribute("viewBox", "-1.1 -1.1 2.2 2.2");
  svg.setAttribute("class", "share-pie");
  svg.setAttribute("role", "img");
  let angle = -Math.PI / 2;
  entries.forEach(([student, values], index) => {
    const sweep = 2 * Math.PI * values.share;
    const x1 = Math.cos(angle);
    const y1 = Math.sin(angle);
    angle += sweep;
    const x2 = Math.cos(angle);
    const y2 = Math.sin(angle);
    const large = sweep > Math.PI ? 1 : 0;
    const path = document.createElementNS(svgNS, "path");
    path.setAttribute(
      "d",
      `M 0 0 L ${x1.toFixed(4)} ${y1.toFixed(4)} ` +
      `A 1 1 0 ${large} 1 ${x2.toFixed(4)} ${y2.toFixed(4)} Z`,
    );
    path.setAttribute("fill", PIE_COLORS[index % PIE_COLORS.length]!);
    path.setAttribute("data-student", student);
    const title = document.createElementNS(svgNS, "title");
    title.textContent = `${student}: ${(values.share * 100).toFixed(1)}%`;
    path.append(title);
    svg.append(path);
  });
  return el("div", { class: "pie-wrap" }, [svg]);
}

function heatmapTable(heatmap: Heatmap | null): HTMLElement {
  if (!heatmap || heatmap.files.length === 0) {
    return el("p", { class: "placeholder" }, ["No heatmap data."]);
  }
  const maxValue = Math.max(1, ...heatmap.matrix.flat());
  const table = el("table", { class: "heatmap" });
  table.append(
    el("tr", {}, [
      el("th", {}, [""]),
      ...heatmap.files.map((file) => el("th", { class: "file" }, [file])),
    ]),
  );
  heatmap.students.forEach((student, row) => {
    const cells = heatmap.files.map((_, column) => {
      const value = heatmap.matrix[row]?.[column] ?? 0;
      const cell = el("td", { class: "cell" }, [
        value > 0 ? String(value) : "",
      ]);
      const intensity = value / maxValue;
      cell.style.backgroundColor =
        `rgba(78, 121, 167, ${(0.08 + 0.9 * intensity).toFixed(3)})`;
      return cell;
    });
    table.append(el("tr", {}, [el("th", {}, [student]), ...cells]));
  });
  return table;
}

function timelineBars(timeline: Timeline | null): HTMLElement {
  const students = timeline?.students ?? {};
  const names = Object.keys(students);
  if (names.length === 0) {
    return el("p", { class: "placeholder" }, ["No timeline data."]);
  }
  const allCounts = names.flatMap((name) =>
    Object.values(students[name] ?? {}));
  const maxCount = Math.max(1, ...allCounts);
  const wrap = el("div", { class: "timeline" });
  for (const name of names) {
    const days = students[name] ?? {};
    const row = el("div", { class: "timeline-row", "data-student": name }, [
      el("span", { class: "who" }, [name]),
    ]);
    for (const [day, count] of Object.entries(days)) {
      const bar = el("span", { class: "bar", title: `${day}: ${count}` });
      bar.style.height = `${(4 + 20 * (count / maxCount)).toFixed(1)}px`;
      row.append(bar);
    }
    wrap.append(row);
  }
  return wrap;
}

function flagsSection(
  flags: AnomalyFlag[],
  makeHandlers: (flag: AnomalyFlag) => OverrideFormHandlers,
): HTMLElement {
  const section = el("section", { class: "team-flags" }, [
    el("h3", {}, ["Flags"]),
  ]);
  const open = flags.filter((flag) => flag.status === "open");
  const resolved = flags.filter((flag) => flag.status === "resolved");
  if (flags.length === 0) {
    section.append(el("p", { class: "empty-state" }, ["No flags."]));
    return section;
  }
  for (const flag of open) {
    section.append(renderOverrideForm(flag, makeHandlers(flag)));
  }
  for (const flag of resolved) {
    section.append(
      el("p", { class: "resolved-flag" }, [
        `${flag.kind} (${flag.student ?? "team"}) — resolved: ` +
        flag.resolution_note,
      ]),
    );
  }
  return section;
}

export function renderTeamDetail(
  detail: TeamDetail,
  heatmap: Heatmap | null,
  timeline: Timeline | null,
  makeHandlers: (flag: AnomalyFlag) => OverrideFormHandlers,
): HTMLElement {
  const pqs = detail.quality.pqs;
  return el("section", { class: "team-detail", "data-team": detail.team_id },
    [
      el("h2", {}, [`Team ${detail.team_id}`]),
      el("p", { class: "pqs" }, [
        pqs !== undefined ? `Project quality score: ${score(pqs)}`
                          : "Project quality score unavailable",
      ]),
      studentCards(detail),
      el("h3", {}, ["Contribution shares"]),
      sharePie(detail),
      el("h3", {}, ["Ownership heatmap"]),
      heatmapTable(heatmap),
      el("h3", {}, ["Commit timeline"]),
      timelineBars(timeline),
      flagsSection(detail.flags, makeHandlers),
    ]);
}
