// Discipline-mastery table. Row coloring comes from the payload's
// `color` field; the client never re-derives it from the numbers.

import { ApiClient } from "../api.js";
import { banner, clear, el } from "../dom.js";
import { t } from "../locale.js";

export class MasteryView {
  readonly root: HTMLElement;
  private host: HTMLElement;
  private asOf: HTMLInputElement;

  constructor(private readonly api: ApiClient) {
    this.host = el("div", { class: "mastery-table" });
    this.asOf = el("input", { type: "date", class: "mastery-as-of" });
    this.root = el("section", { class: "view view-mastery" }, [
      el("div", { class: "toolbar" }, [
        el("label", {}, [t("filter.asOf"), this.asOf]),
        el("button", { onclick: () => void this.refresh() }, [t("filter.apply")]),
      ]),
      this.host,
    ]);
  }

  async refresh(): Promise<void> {
    clear(this.host);
    try {
      const rows = await this.api.getMastery(this.asOf.value || undefined);
      const head = el("tr", {}, [
        t("mastery.group"), t("mastery.semester"), t("mastery.discipline"),
        t("mastery.percent"), t("mastery.notPassed"), t("mastery.total"),
      ].map((h) => el("th", {}, [h])));
      const body = rows.map((row) =>
        el("tr", { class: `mastery-${row.color}`, "data-color": row.color }, [
          el("td", {}, [row.group]),
          el("td", {}, [String(row.semester)]),
          el("td", {}, [row.label]),
          el("td", {}, [row.percent_label]),
          el("td", {}, [String(row.not_passed)]),
          el("td", {}, [String(row.total)]),
        ]));
      this.host.append(el("table", { class: "mastery" },
                          [el("thead", {}, [head]), el("tbody", {}, body)]));
    } catch (error) {
      this.host.append(banner(String(error)));
    }
  }
}
