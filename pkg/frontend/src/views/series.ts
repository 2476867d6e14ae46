// Debt-schedule chart: the fetched series drawn as an SVG polyline.

import { ApiClient, type PivotQuery } from "../api.js";
import { banner, clear, el } from "../dom.js";
import { t } from "../locale.js";
import type { SeriesPointDoc } from "../types.js";

const WIDTH = 720;
const HEIGHT = 280;
const PAD = 36;

export function seriesPolyline(points: SeriesPointDoc[]): string {
  if (points.length === 0) return "";
  const xs = points.map((p) => Date.parse(p.date));
  const ys = points.map((p) => p.total_debts);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMax = Math.max(1, ...ys);
  const xSpan = Math.max(1, xMax - xMin);
  return points
    .map((p, i) => {
      const x = PAD + ((xs[i] - xMin) / xSpan) * (WIDTH - 2 * PAD);
      const y = HEIGHT - PAD - (ys[i] / yMax) * (HEIGHT - 2 * PAD);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
}

export class SeriesView {
  readonly root: HTMLElement;
  private host: HTMLElement;
  private from: HTMLInputElement;
  private to: HTMLInputElement;
  private step: HTMLInputElement;
  private group: HTMLInputElement;

  constructor(private readonly api: ApiClient) {
    this.host = el("div", { class: "series-chart" });
    this.from = el("input", { type: "date", class: "series-from" });
    this.to = el("input", { type: "date", class: "series-to" });
    this.step = el("input", { type: "number", value: "7", min: "1",
                              class: "series-step" });
    this.group = el("input", { type: "text", class: "series-group" });
    this.root = el("section", { class: "view view-series" }, [
      el("div", { class: "toolbar" }, [
        el("label", {}, [t("series.from"), this.from]),
        el("label", {}, [t("series.to"), this.to]),
        el("label", {}, [t("series.step"), this.step]),
        el("label", {}, [t("filter.group"), this.group]),
        el("button", { class: "series-build", onclick: () => void this.refresh() },
           [t("series.build")]),
      ]),
      this.host,
    ]);
  }

  async refresh(): Promise<void> {
    clear(this.host);
    if (!this.from.value || !this.to.value) {
      this.host.append(banner(t("common.empty"), "info"));
      return;
    }
    try {
      const filters: PivotQuery = {};
      if (this.group.value) filters.group = this.group.value;
      const points = await this.api.getSeries(
        this.from.value, this.to.value, Number(this.step.value) || 7, filters);
      this.host.append(this.chart(points));
    } catch (error) {
      this.host.append(banner(String(error)));
    }
  }

  private chart(points: SeriesPointDoc[]): HTMLElement {
    const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute("class", "debt-series");
    const axis = document.createElementNS("http://www.w3.org/2000/svg", "path");
    axis.setAttribute(
      "d",
      `M ${PAD} ${PAD} L ${PAD} ${HEIGHT - PAD} L ${WIDTH - PAD} ${HEIGHT - PAD}`);
    axis.setAttribute("class", "axis");
    axis.setAttribute("fill", "none");
    svg.append(axis);
    const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
    line.setAttribute("points", seriesPolyline(points));
    line.setAttribute("fill", "none");
    line.setAttribute("class", "series-line");
    svg.append(line);
    const wrapper = el("div", { class: "chart-wrapper" });
    wrapper.append(svg);
    const max = points.reduce((acc, p) => Math.max(acc, p.total_debts), 0);
    wrapper.append(el("div", { class: "series-legend" },
                      [`${t("series.debts")}: 0..${max}`]));
    return wrapper;
  }
}
