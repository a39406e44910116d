/**
 * Entry point: token login screen, then the dashboard app.
 *
 * The token is the only session state; it lives in sessionStorage so
 * a reload keeps the reviewer signed in for the browser session.
 */

import { ApiClient } from "./api.js";
import { App } from "./app.js";
import { el } from "./dom.js";

const TOKEN_KEY = "repograde.token";
const BASE_KEY = "repograde.base";

function startApp(root: HTMLElement, base: string, token: string): void {
  const client = new ApiClient(base, token);
  new App(client, root).start();
}

function loginScreen(root: HTMLElement): void {
  const baseInput = el("input", {
    type: "text",
    value: sessionStorage.getItem(BASE_KEY) ?? "http://127.0.0.1:8750",
    name: "base",
  });
  const tokenInput = el("input", {
    type: "password",
    name: "token",
    placeholder: "bearer token",
  });
  const error = el("p", { class: "error-banner", hidden: "" });
  const form = el("form", { class: "login" }, [
    el("h2", {}, ["Sign in to the review service"]),
    el("label", {}, ["Service URL ", baseInput]),
    el("label", {}, ["Token ", tokenInput]),
    error,
    el("button", { type: "submit" }, ["Sign in"]),
  ]);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const base = baseInput.value.trim();
    const token = tokenInput.value.trim();
    if (!token) {
      error.textContent = "A token is required.";
      error.removeAttribute("hidden");
      return;
    }
    new ApiClient(base, token)
      .getTeams()
      .then(() => {
        sessionStorage.setItem(TOKEN_KEY, token);
        sessionStorage.setItem(BASE_KEY, base);
        root.replaceChildren();
        startApp(root, base, token);
      })
      .catch(() => {
        error.textContent = "Could not authenticate against the service.";
        error.removeAttribute("hidden");
      });
  });
  root.replaceChildren(form);
}

export function bootstrap(): void {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app container");
  }
  const token = sessionStorage.getItem(TOKEN_KEY);
  const base = sessionStorage.getItem(BASE_KEY);
  if (token && base) {
    startApp(root, base, token);
  } else {
    loginScreen(root);
  }
}

bootstrap();
