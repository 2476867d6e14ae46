// Movement console: one form per event kind posting to /movements, a
// live tail of the log, and the monthly report with CSV download.
// Precondition failures (HTTP 409) surface as inline form errors.

import { ApiClient, ApiError, type MovementBody } from "../api.js";
import { banner, clear, el } from "../dom.js";
import { t } from "../locale.js";
import type { EventDoc, ReportDoc } from "../types.js";

const KINDS = ["enroll", "expel", "transfer", "leave_start", "leave_end",
               "course_advance"] as const;

type Kind = (typeof KINDS)[number];

const EXTRA_FIELDS: Record<Kind, Array<[string, string, string]>> = {
  // field name, input type, label key
  enroll: [
    ["group", "text", "movement.group"],
    ["surname", "text", "movement.surname"],
    ["given_name", "text", "movement.givenName"],
    ["patronymic", "text", "movement.patronymic"],
    ["card_number", "text", "movement.card"],
    ["funding", "text", "filter.funding"],
    ["sex", "text", "filter.sex"],
  ],
  expel: [["reason", "text", "movement.reason"]],
  transfer: [
    ["from_group", "text", "movement.fromGroup"],
    ["to_group", "text", "movement.toGroup"],
  ],
  leave_start: [["until", "date", "movement.until"]],
  leave_end: [],
  course_advance: [],
};

export class MovementView {
  readonly root: HTMLElement;
  private formHost: HTMLElement;
  private logHost: HTMLElement;
  private reportHost: HTMLElement;
  private errorHost: HTMLElement;
  private kind: Kind = "enroll";
  private month: HTMLInputElement;
  private lastCsv = "";

  constructor(private readonly api: ApiClient,
              private readonly download: (name: string, text: string) => void
              = defaultDownload) {
    this.formHost = el("div", { class: "movement-form-host" });
    this.logHost = el("div", { class: "movement-log" });
    this.reportHost = el("div", { class: "movement-report" });
    this.errorHost = el("div", { class: "movement-errors" });
    this.month = el("input", { type: "month", class: "report-month" });

    const kindMenu = el("select", {
      class: "movement-kind",
      onchange: (event) => {
        this.kind = (event.currentTarget as HTMLSelectElement).value as Kind;
        this.renderForm();
      },
    }, KINDS.map((kind) => el("option", { value: kind }, [t(`movement.${kind}`)])));

    this.root = el("section", { class: "view view-movement" }, [
      el("div", { class: "toolbar" }, [kindMenu]),
      this.errorHost,
      this.formHost,
      el("h3", {}, [t("movement.log")]),
      this.logHost,
      el("h3", {}, [t("movement.report")]),
      el("div", { class: "toolbar" }, [
        el("label", {}, [t("movement.month"), this.month]),
        el("button", { class: "report-show", onclick: () => void this.showReport() },
           [t("filter.apply")]),
        el("button", { class: "report-download", onclick: () => void this.downloadCsv() },
           [t("movement.download")]),
      ]),
      this.reportHost,
    ]);
    this.renderForm();
  }

  async refresh(): Promise<void> {
    await this.refreshLog();
  }

  private renderForm(): void {
    clear(this.formHost);
    const inputs = new Map<string, HTMLInputElement>();
    const field = (name: string, type: string, label: string) => {
      const input = el("input", { type, name, class: `field-${name}` });
      inputs.set(name, input);
      return el("label", { class: "movement-field" }, [label, input]);
    };
    const fields = [
      field("student", "text", t("movement.student")),
      field("date", "date", t("movement.date")),
      ...EXTRA_FIELDS[this.kind].map(([name, type, key]) => field(name, type, t(key))),
    ];
    const submit = el("button", {
      class: "movement-submit",
      onclick: () => void this.submit(inputs),
    }, [t("movement.submit")]);
    this.formHost.append(el("form", {
      class: `movement-form movement-${this.kind}`,
      onsubmit: (event) => event.preventDefault(),
    }, [...fields, submit]));
  }

  private async submit(inputs: Map<string, HTMLInputElement>): Promise<void> {
    clear(this.errorHost);
    const body: MovementBody = {
      kind: this.kind,
      student: inputs.get("student")!.value,
      date: inputs.get("date")!.value,
    };
    for (const [name, input] of inputs) {
      if (name === "student" || name === "date") continue;
      if (!input.value) continue;
      body[name] = input.value;
    }
    if (this.kind === "enroll") {
      body.name = {
        surname: String(body.surname ?? ""),
        given_name: String(body.given_name ?? ""),
        patronymic: String(body.patronymic ?? ""),
      };
      delete body.surname;
      delete body.given_name;
      delete body.patronymic;
    }
    try {
      await this.api.postMovement(body);
      await this.refreshLog();
    } catch (error) {
      const message = error instanceof ApiError
        ? `${error.code}: ${error.detail}`
        : String(error);
      this.errorHost.append(banner(message));
    }
  }

  private async refreshLog(): Promise<void> {
    clear(this.logHost);
    try {
      const events = await this.api.getMovements();
      const tail = events.slice(-15).reverse();
      this.logHost.append(el("ul", { class: "log-tail" }, tail.map((event) =>
        el("li", { "data-seq": String(event.seq) }, [formatEvent(event)]))));
    } catch (error) {
      this.logHost.append(banner(String(error)));
    }
  }

  private async showReport(): Promise<void> {
    clear(this.reportHost);
    if (!this.month.value) return;
    try {
      const report = await this.api.getMovementReport(this.month.value);
      this.reportHost.append(reportTable(report));
    } catch (error) {
      this.reportHost.append(banner(String(error)));
    }
  }

  private async downloadCsv(): Promise<void> {
    if (!this.month.value) return;
    this.lastCsv = await this.api.getMovementReportCsv(this.month.value);
    this.download(`movement-${this.month.value}.csv`, this.lastCsv);
  }

  lastDownloadedCsv(): string {
    return this.lastCsv;
  }
}

function formatEvent(event: EventDoc): string {
  const extras = [event.group, event.reason, event.from_group, event.to_group,
                  event.until].filter(Boolean).join(" ");
  return `#${event.seq} ${event.date} ${t(`movement.${event.kind}`)} ` +
         `${event.student}${extras ? ` (${extras})` : ""}`;
}

function reportTable(report: ReportDoc): HTMLTableElement {
  const columns: Array<["budget" | "contract", "male" | "female", string]> = [
    ["budget", "male", t("report.budget_male")],
    ["budget", "female", t("report.budget_female")],
    ["contract", "male", t("report.contract_male")],
    ["contract", "female", t("report.contract_female")],
  ];
  const head = el("tr", {}, [
    el("th", {}, [t("report.kind")]),
    ...columns.map(([, , label]) => el("th", {}, [label])),
    el("th", {}, [t("report.total")]),
  ]);
  const kinds: Array<[keyof ReportDoc & string, string]> = [
    ["opening", t("report.opening")],
    ["arrived", t("report.arrived")],
    ["left", t("report.left")],
    ["transferred", t("report.transferred")],
    ["closing", t("report.closing")],
  ];
  const body = kinds.map(([kind, label]) => {
    const cells = report[kind] as ReportDoc["opening"];
    return el("tr", { "data-kind": kind }, [
      el("td", {}, [label]),
      ...columns.map(([funding, sex]) =>
        el("td", {}, [String(cells[funding][sex])])),
      el("td", {}, [String(report.totals[kind as keyof ReportDoc["totals"]])]),
    ]);
  });
  return el("table", { class: "movement-report-table" },
            [el("thead", {}, [head]), el("tbody", {}, body)]);
}

function defaultDownload(name: string, text: string): void {
  const blob = new Blob([text], { type: "text/csv;charset=utf-8" });
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = name;
  link.click();
  URL.revokeObjectURL(url);
}
