// Findings of the automatic error search, rendered as-is.

import { ApiClient } from "../api.js";
import { banner, clear, el } from "../dom.js";
import { t } from "../locale.js";

export class AuditView {
  readonly root: HTMLElement;
  private host: HTMLElement;
  private asOf: HTMLInputElement;

  constructor(private readonly api: ApiClient) {
    this.host = el("div", { class: "audit-table" });
    this.asOf = el("input", { type: "date", class: "audit-as-of" });
    this.root = el("section", { class: "view view-audit" }, [
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
      const findings = await this.api.getAudit(this.asOf.value || undefined);
      if (!findings.length) {
        this.host.append(banner(t("common.empty"), "info"));
        return;
      }
      const head = el("tr", {}, [t("audit.rule"), t("audit.student"),
                                 t("audit.due"), t("audit.detail")]
        .map((h) => el("th", {}, [h])));
      const body = findings.map((finding) =>
        el("tr", { class: `audit-${finding.rule}` }, [
          el("td", {}, [t(`audit.${finding.rule}`)]),
          el("td", {}, [finding.student]),
          el("td", {}, [finding.due_date]),
          el("td", {}, [finding.detail]),
        ]));
      this.host.append(el("table", { class: "audit" },
                          [el("thead", {}, [head]), el("tbody", {}, body)]));
    } catch (error) {
      this.host.append(banner(String(error)));
    }
  }
}
