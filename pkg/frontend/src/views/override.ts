/**
 * Override entry form: point delta plus a mandatory note.
 *
 * The note is validated client-side (an empty note never reaches the
 * network).  A 409 conflict from a concurrent reviewer surfaces as an
 * error banner and triggers a refetch of the surrounding view.
 */

import { ApiError } from "../api.js";
import { el, score } from "../dom.js";
import type { AnomalyFlag, OverrideResult } from "../types.js";

export interface OverrideFormHandlers {
  submit: (delta: number, note: string) => Promise<OverrideResult>;
  /** Called after any state change on the server (success or conflict). */
  onResolved: () => void;
}

export function renderOverrideForm(
  flag: AnomalyFlag,
  handlers: OverrideFormHandlers,
): HTMLElement {
  const deltaInput = el("input", {
    class: "delta",
    type: "number",
    step: "0.5",
    value: "0",
    name: "delta",
  });
  const noteInput = el("textarea", {
    class: "note",
    name: "note",
    placeholder: "Why is this adjustment justified? (required)",
  });
  const errorBanner = el("p", { class: "error-banner", hidden: "" });
  const result = el("p", { class: "override-result" });
  const submitButton = el("button", { type: "submit" }, ["Apply override"]);

  const form = el("form", { class: "override-form", "data-flag": flag.id }, [
    el("p", { class: "flag-label" }, [
      `${flag.kind} — ${flag.student ?? "team-level"}`,
    ]),
    el("label", {}, ["Points delta ", deltaInput]),
    el("label", {}, ["Note ", noteInput]),
    errorBanner,
    result,
    submitButton,
  ]);

  function showError(message: string): void {
    errorBanner.textContent = message;
    errorBanner.removeAttribute("hidden");
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    errorBanner.setAttribute("hidden", "");

    const note = noteInput.value.trim();
    if (!note) {
      showError("A note is required to resolve a flag.");
      return;
    }
    const delta = Number(deltaInput.value || "0");
    if (!Number.isFinite(delta)) {
      showError("The delta must be a number.");
      return;
    }

    submitButton.setAttribute("disabled", "");
    handlers
      .submit(delta, note)
      .then((outcome) => {
        result.textContent = outcome.record
          ? `Resolved. Updated final grade: ${score(outcome.record.final)}`
          : "Resolved.";
        form.classList.add("resolved");
        handlers.onResolved();
      })
      .catch((error: unknown) => {
        if (error instanceof ApiError && error.status === 409) {
          showError(
            "This flag was already resolved by someone else; refreshing.",
          );
          handlers.onResolved();
        } else if (error instanceof ApiError) {
          showError(error.message);
        } else {
          showError(String(error));
        }
      })
      .finally(() => {
        submitButton.removeAttribute("disabled");
      });
  });

  return form;
}
