// The main window: the filtered debt pivot with sortable columns and
// entry points into the date editor and personal-data dialog. All
// numbers come straight from GET /pivot.

import { ApiClient, type PivotQuery } from "../api.js";
import { banner, clear, el } from "../dom.js";
import { t } from "../locale.js";
import type { PivotRowDoc } from "../types.js";
import { DateEditor, type EditorScope } from "./editor.js";

const SORTABLE: Array<[string, string]> = [
  ["name", "pivot.name"],
  ["group", "pivot.group"],
  ["course", "pivot.course"],
  ["mean_score", "pivot.mean"],
  ["total_debts", "pivot.total"],
  ["last_delivery", "pivot.last"],
];

export class PivotView {
  readonly root: HTMLElement;
  private sortColumn = "name";
  private sortDesc = false;
  private filters: PivotQuery = { status: "active" };
  private tableHost: HTMLElement;
  private dialogHost: HTMLElement;

  constructor(private readonly api: ApiClient) {
    this.tableHost = el("div", { class: "pivot-table" });
    this.dialogHost = el("div", { class: "pivot-dialogs" });
    this.root = el("section", { class: "view view-pivot" },
                   [this.buildFilters(), this.tableHost, this.dialogHost]);
  }

  private buildFilters(): HTMLElement {
    const status = el("select", { class: "filter-status" }, [
      el("option", { value: "active" }, [t("filter.active")]),
      el("option", { value: "leave" }, [t("filter.leave")]),
      el("option", { value: "expelled" }, [t("filter.expelled")]),
    ]) as HTMLSelectElement;
    const course = el("input", { class: "filter-course", type: "number", min: "1" });
    const direction = el("input", { class: "filter-direction", type: "text" });
    const group = el("input", { class: "filter-group", type: "text" });
    const funding = el("select", { class: "filter-funding" }, [
      el("option", { value: "" }, [t("filter.any")]),
      el("option", { value: "budget" }, [t("filter.budget")]),
      el("option", { value: "contract" }, [t("filter.contract")]),
    ]) as HTMLSelectElement;
    const sex = el("select", { class: "filter-sex" }, [
      el("option", { value: "" }, [t("filter.any")]),
      el("option", { value: "male" }, [t("filter.male")]),
      el("option", { value: "female" }, [t("filter.female")]),
    ]) as HTMLSelectElement;
    const asOf = el("input", { class: "filter-as-of", type: "date" });
    const apply = el("button", {
      class: "filter-apply",
      onclick: () => {
        this.filters = {
          status: status.value as PivotQuery["status"],
          course: (course as HTMLInputElement).value || undefined,
          direction: (direction as HTMLInputElement).value || undefined,
          group: (group as HTMLInputElement).value || undefined,
          funding: funding.value || undefined,
          sex: sex.value || undefined,
          as_of: (asOf as HTMLInputElement).value || undefined,
        };
        void this.refresh();
      },
    }, [t("filter.apply")]);

    const field = (label: string, control: HTMLElement) =>
      el("label", { class: "filter-field" }, [label, control]);
    return el("div", { class: "pivot-filters" }, [
      field(t("filter.status"), status),
      field(t("filter.course"), course),
      field(t("filter.direction"), direction),
      field(t("filter.group"), group),
      field(t("filter.funding"), funding),
      field(t("filter.sex"), sex),
      field(t("filter.asOf"), asOf),
      apply,
    ]);
  }

  async refresh(): Promise<void> {
    clear(this.tableHost);
    let rows: PivotRowDoc[];
    try {
      rows = await this.api.getPivot({
        ...this.filters,
        sort: `${this.sortColumn}:${this.sortDesc ? "desc" : "asc"}`,
      });
    } catch (error) {
      this.tableHost.append(banner(String(error)));
      return;
    }
    this.tableHost.append(this.buildTable(rows));
  }

  private semesterColumns(rows: PivotRowDoc[]): number[] {
    const semesters = new Set<number>();
    for (const row of rows) {
      for (const key of Object.keys(row.per_semester)) semesters.add(Number(key));
    }
    return [...semesters].sort((a, b) => a - b);
  }

  private buildTable(rows: PivotRowDoc[]): HTMLTableElement {
    const readOnly = this.filters.status === "expelled";
    const semesters = this.semesterColumns(rows);

    const headCells = SORTABLE.map(([column, key]) => {
      const marker = this.sortColumn === column ? (this.sortDesc ? " ↓" : " ↑") : "";
      return el("th", {
        class: "sortable",
        "data-column": column,
        onclick: () => {
          if (this.sortColumn === column) this.sortDesc = !this.sortDesc;
          else {
            this.sortColumn = column;
            this.sortDesc = false;
          }
          void this.refresh();
        },
      }, [t(key) + marker]);
    });
    const semesterCells = semesters.map((s) =>
      el("th", {}, [`${s} ${t("pivot.semester")}`]));
    const tail = [el("th", {}, [t("pivot.funding")]), el("th", {}, [t("pivot.sex")])];
    const actions = readOnly ? [] : [el("th", {}, [""])];
    const head = el("tr", {}, [...headCells, ...semesterCells, ...tail, ...actions]);

    const body = rows.map((row) => {
      const cells = [
        el("td", {}, [row.name]),
        el("td", {}, [row.group]),
        el("td", {}, [String(row.course)]),
        el("td", {}, [row.mean_score]),
        el("td", {}, [String(row.total_debts)]),
        el("td", {}, [row.last_delivery ?? ""]),
        ...semesters.map((s) =>
          el("td", {}, [s in row.per_semester ? String(row.per_semester[s]) : ""])),
        el("td", {}, [row.funding]),
        el("td", {}, [row.sex]),
      ];
      if (!readOnly) {
        cells.push(el("td", {}, [el("button", {
          class: "edit-dates",
          "data-student": row.student,
          onclick: () => this.openEditor({
            kind: "student",
            group: row.group,
            student: row.student,
          }),
        }, [t("pivot.edit")])]));
      }
      return el("tr", { "data-student": row.student }, cells);
    });
    return el("table", { class: readOnly ? "pivot readonly" : "pivot" },
              [el("thead", {}, [head]), el("tbody", {}, body)]);
  }

  openEditor(scope: EditorScope): DateEditor {
    const editor = new DateEditor(this.api, scope, {
      onClose: () => void this.refresh(),
    });
    this.dialogHost.append(editor.root);
    void editor.open();
    return editor;
  }
}
