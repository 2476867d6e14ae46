// Payload shapes served by the registry API. The client renders these
// verbatim; no number shown in the UI is computed on this side.

export interface NameDoc {
  surname: string;
  given_name: string;
  patronymic: string;
}

export interface StatusDoc {
  kind: "active" | "leave" | "expelled";
  since?: string;
  until?: string;
  date?: string;
  reason?: string;
}

export interface StudentDoc {
  id: string;
  name: NameDoc;
  card_number: string;
  group: string;
  course: number;
  funding: "budget" | "contract";
  sex: "male" | "female";
  mean_score: string;
  enrollment_year: number;
  status: StatusDoc;
  deliveries: Record<string, string>;
}

export interface PivotRowDoc {
  student: string;
  name: string;
  group: string;
  course: number;
  mean_score: string;
  total_debts: number;
  last_delivery: string | null;
  per_semester: Record<string, number>;
  funding: "budget" | "contract";
  sex: "male" | "female";
}

export type MasteryColor = "red" | "yellow" | "green";

export interface MasteryRowDoc {
  group: string;
  semester: number;
  discipline: string;
  control: string;
  label: string;
  not_passed: number;
  total: number;
  percent: number;
  percent_label: string;
  color: MasteryColor;
}

export interface SeriesPointDoc {
  date: string;
  total_debts: number;
}

export interface EventDoc {
  seq: number;
  date: string;
  kind: string;
  student: string;
  actor: string;
  group?: string;
  name?: NameDoc;
  card_number?: string;
  funding?: string;
  sex?: string;
  mean_score?: string;
  reason?: string;
  debts_at_expulsion?: number;
  from_group?: string;
  to_group?: string;
  until?: string;
}

export interface ReportCells {
  budget: { male: number; female: number };
  contract: { male: number; female: number };
}

export interface ReportDoc {
  period: string;
  opening: ReportCells;
  arrived: ReportCells;
  left: ReportCells;
  transferred: ReportCells;
  closing: ReportCells;
  totals: {
    opening: number;
    arrived: number;
    left: number;
    transferred: number;
    closing: number;
  };
}

export interface FindingDoc {
  rule: string;
  student: string;
  due_date: string;
  severity: string;
  detail: string;
}

export interface ApiErrorBody {
  error: string;
  detail: string;
}
