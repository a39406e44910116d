/**
 * Dashboard controller: hash routing between the review queue and
 * team detail, with all data fetched per navigation (the client keeps
 * no grading state of its own).
 */

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import type { AnomalyFlag, Heatmap, Timeline } from "./types.js";
import { renderReviewQueue } from "./views/queue.js";
import { renderTeamDetail } from "./views/team.js";

export class App {
  private readonly client: ApiClient;
  private readonly root: HTMLElement;

  constructor(client: ApiClient, root: HTMLElement) {
    this.client = client;
    this.root = root;
  }

  start(): void {
    window.addEventListener("hashchange", () => {
      void this.route();
    });
    void this.route();
  }

  async route(): Promise<void> {
    const hash = window.location.hash;
    const teamMatch = /^#\/teams\/(.+)$/.exec(hash);
    if (teamMatch && teamMatch[1]) {
      await this.showTeam(decodeURIComponent(teamMatch[1]));
    } else {
      await this.showQueue();
    }
  }

  async showQueue(): Promise<void> {
    const [flags, teams] = await Promise.all([
      this.client.getFlags("open"),
      this.client.getTeams(),
    ]);
    clear(this.root);
    const nav = el("nav", { class: "teams-nav" }, [
      el("h2", {}, ["Teams"]),
      ...teams.map((team) => {
        const link = el("a", { href: `#/teams/${team.team_id}` }, [
          `${team.team_id} (${team.students} students, ` +
          `${team.open_flags} open flags)`,
        ]);
        return el("p", {}, [link]);
      }),
    ]);
    this.root.append(nav);
    this.root.append(
      renderReviewQueue(flags, (teamId) => {
        window.location.hash = `#/teams/${teamId}`;
      }),
    );
  }

  async showTeam(teamId: string): Promise<void> {
    const detail = await this.client.getTeam(teamId);
    let heatmap: Heatmap | null = null;
    let timeline: Timeline | null = null;
    try {
      heatmap = await this.client.getHeatmap(teamId);
    } catch {
      heatmap = null; // placeholder rendering
    }
    try {
      timeline = await this.client.getTimeline(teamId);
    } catch {
      timeline = null;
    }
    clear(this.root);
    const back = el("p", {}, [el("a", { href: "#/queue" }, ["< queue"])]);
    this.root.append(back);
    this.root.append(
      renderTeamDetail(detail, heatmap, timeline, (flag: AnomalyFlag) => ({
        submit: (delta: number, note: string) =>
          this.client.postOverride(flag.id, delta, note),
        onResolved: () => {
          void this.showTeam(teamId);
        },
      })),
    );
  }
}
