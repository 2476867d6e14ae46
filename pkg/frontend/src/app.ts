// Application shell: a tab per view, hash-routed, sharing one API client.

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { t } from "./locale.js";
import { AuditView } from "./views/audit.js";
import { MasteryView } from "./views/mastery.js";
import { MovementView } from "./views/movement.js";
import { PivotView } from "./views/pivot.js";
import { SeriesView } from "./views/series.js";

interface Tab {
  id: string;
  labelKey: string;
  root: HTMLElement;
  refresh: () => Promise<void>;
}

export function createApp(root: HTMLElement, api: ApiClient): { show: (id: string) => Promise<void> } {
  const pivot = new PivotView(api);
  const mastery = new MasteryView(api);
  const series = new SeriesView(api);
  const movement = new MovementView(api);
  const audit = new AuditView(api);

  const tabs: Tab[] = [
    { id: "pivot", labelKey: "nav.pivot", root: pivot.root,
      refresh: () => pivot.refresh() },
    { id: "mastery", labelKey: "nav.mastery", root: mastery.root,
      refresh: () => mastery.refresh() },
    { id: "series", labelKey: "nav.series", root: series.root,
      refresh: () => series.refresh() },
    { id: "movement", labelKey: "nav.movement", root: movement.root,
      refresh: () => movement.refresh() },
    { id: "audit", labelKey: "nav.audit", root: audit.root,
      refresh: () => audit.refresh() },
  ];

  const content = el("main", { class: "content" });
  const nav = el("nav", { class: "tabs" }, tabs.map((tab) =>
    el("button", {
      class: "tab",
      "data-tab": tab.id,
      onclick: () => void show(tab.id),
    }, [t(tab.labelKey)])));

  clear(root);
  root.append(el("h1", {}, [t("app.title")]), nav, content);

  async function show(id: string): Promise<void> {
    const tab = tabs.find((candidate) => candidate.id === id) ?? tabs[0];
    clear(content);
    content.append(tab.root);
    for (const button of nav.querySelectorAll(".tab")) {
      button.classList.toggle("tab-active",
                              button.getAttribute("data-tab") === tab.id);
    }
    await tab.refresh();
  }

  return { show };
}

export function bootstrap(): void {
  const host = document.getElementById("app");
  if (!host) return;
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? "", params.get("token") ?? "");
  const app = createApp(host, api);
  const route = () => void app.show(window.location.hash.replace("#", "") || "pivot");
  window.addEventListener("hashchange", route);
  route();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  bootstrap();
}
