// Thin typed client over the registry HTTP API. Every request funnels
// through one method so tests can inject a recording fetch and assert
// exactly which calls a view produced.

import type {
  EventDoc,
  FindingDoc,
  MasteryRowDoc,
  PivotRowDoc,
  ReportDoc,
  StudentDoc,
} from "./types.js";

export interface PivotQuery {
  status?: "active" | "leave" | "expelled";
  course?: number | string;
  direction?: string;
  group?: string;
  funding?: string;
  sex?: string;
  sort?: string;
  as_of?: string;
}

export interface MovementBody {
  kind: string;
  student: string;
  date: string;
  actor?: string;
  [extra: string]: unknown;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

const MUTATING = new Set(["POST", "PUT", "PATCH", "DELETE"]);

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private token: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  setToken(token: string): void {
    this.token = token;
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
    raw = false,
  ): Promise<unknown> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token && MUTATING.has(method)) headers["X-Api-Token"] = this.token;
    const response = await this.fetchFn(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = `HTTP ${response.status}`;
      let detail = response.statusText;
      try {
        const parsed = (await response.json()) as { error?: string; detail?: string };
        code = parsed.error ?? code;
        detail = parsed.detail ?? detail;
      } catch {
        // non-JSON error body, keep the status line
      }
      throw new ApiError(response.status, code, detail);
    }
    return raw ? response.text() : response.json();
  }

  private async importText(path: string, text: string): Promise<unknown> {
    const headers: Record<string, string> = { "Content-Type": "text/plain" };
    if (this.token) headers["X-Api-Token"] = this.token;
    const response = await this.fetchFn(this.base + path, {
      method: "POST",
      headers,
      body: text,
    });
    if (!response.ok) throw new ApiError(response.status, "ImportFailed", await response.text());
    return response.json();
  }

  private query(params: object): string {
    const pairs = Object.entries(params)
      .filter(([, value]) => value !== undefined && value !== null && value !== "")
      .map(([key, value]) => `${key}=${encodeURIComponent(String(value))}`);
    return pairs.length ? `?${pairs.join("&")}` : "";
  }

  getStudents(q: PivotQuery = {}): Promise<StudentDoc[]> {
    return this.request("GET", `/students${this.query(q)}`) as Promise<StudentDoc[]>;
  }

  getStudent(id: string): Promise<StudentDoc> {
    return this.request("GET", `/students/${encodeURIComponent(id)}`) as Promise<StudentDoc>;
  }

  patchStudent(id: string, patch: Record<string, unknown>): Promise<StudentDoc> {
    return this.request("PATCH", `/students/${encodeURIComponent(id)}`, patch) as Promise<StudentDoc>;
  }

  putDelivery(student: string, entry: string, date: string): Promise<StudentDoc> {
    return this.request(
      "PUT",
      `/students/${encodeURIComponent(student)}/deliveries/${encodeURIComponent(entry)}`,
      { date },
    ) as Promise<StudentDoc>;
  }

  deleteDelivery(student: string, entry: string): Promise<StudentDoc> {
    return this.request(
      "DELETE",
      `/students/${encodeURIComponent(student)}/deliveries/${encodeURIComponent(entry)}`,
    ) as Promise<StudentDoc>;
  }

  getPivot(q: PivotQuery = {}): Promise<PivotRowDoc[]> {
    return this.request("GET", `/pivot${this.query(q)}`) as Promise<PivotRowDoc[]>;
  }

  getMastery(asOf?: string): Promise<MasteryRowDoc[]> {
    return this.request("GET", `/mastery${this.query({ as_of: asOf })}`) as Promise<MasteryRowDoc[]>;
  }

  getSeries(
    from: string,
    to: string,
    step: number,
    filters: PivotQuery = {},
  ): Promise<import("./types.js").SeriesPointDoc[]> {
    const params = { from, to, step, ...filters };
    return this.request("GET", `/debt-series${this.query(params)}`) as Promise<
      import("./types.js").SeriesPointDoc[]
    >;
  }

  postMovement(body: MovementBody): Promise<EventDoc> {
    return this.request("POST", "/movements", body) as Promise<EventDoc>;
  }

  getMovements(month?: string): Promise<EventDoc[]> {
    return this.request("GET", `/movements${this.query({ month })}`) as Promise<EventDoc[]>;
  }

  getMovementReport(month: string): Promise<ReportDoc> {
    return this.request("GET", `/reports/movement${this.query({ month })}`) as Promise<ReportDoc>;
  }

  getMovementReportCsv(month: string): Promise<string> {
    return this.request(
      "GET",
      `/reports/movement${this.query({ month, format: "csv" })}`,
      undefined,
      true,
    ) as Promise<string>;
  }

  getAudit(asOf?: string): Promise<FindingDoc[]> {
    return this.request("GET", `/audit${this.query({ as_of: asOf })}`) as Promise<FindingDoc[]>;
  }

  importExchange(text: string): Promise<unknown> {
    return this.importText("/exchange/import", text);
  }

  getRoster(group: string, semester: number): Promise<string> {
    return this.request(
      "GET",
      `/exchange/export/${encodeURIComponent(group)}/${semester}`,
      undefined,
      true,
    ) as Promise<string>;
  }
}

export interface RosterEntry {
  ordinal: number;
  entryId: string;
  discipline: string;
  semester: number;
}

export function splitCsvLine(line: string): string[] {
  const cells: string[] = [];
  let current = "";
  let quoted = false;
  for (let i = 0; i < line.length; i += 1) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"' && line[i + 1] === '"') {
        current += '"';
        i += 1;
      } else if (ch === '"') {
        quoted = false;
      } else {
        current += ch;
      }
    } else if (ch === '"') {
      quoted = true;
    } else if (ch === ",") {
      cells.push(current);
      current = "";
    } else {
      current += ch;
    }
  }
  cells.push(current);
  return cells;
}

// The roster file is the API's only source of a group's curriculum
// entries (line-tagged CSV: entry,<ordinal>,<discipline>,<semester>,...).
export function parseRosterEntries(group: string, text: string): RosterEntry[] {
  const entries: RosterEntry[] = [];
  for (const line of text.split("\n")) {
    if (!line.startsWith("entry,")) continue;
    const cells = splitCsvLine(line);
    const ordinal = Number(cells[1]);
    entries.push({
      ordinal,
      entryId: `${group}:${ordinal}`,
      discipline: cells[2] ?? "",
      semester: Number(cells[3]),
    });
  }
  return entries;
}
