// Payload shapes of the linkgame service API.  The board derives all of
// its state from these; it never computes game rules locally.

export type Resolution = "/" | "\\";
export type CrossingStateValue = "?" | Resolution;
export type RoleName = "linker" | "unlinker";

export interface CrossingPayload {
  id: number;
  state: CrossingStateValue;
  kind: "SI" | "NSI";
  sign: number | null;
  x: number | null;
  y: number | null;
  slot_dirs: number[][] | null;
}

export interface ArcPayload {
  id: number;
  component: number;
  ends: [number, number][];
  path: number[][] | null;
  forward: boolean;
}

export interface LoopPayload {
  id: number;
  component: number;
  path: number[][] | null;
}

export interface HistoryEntry {
  ply: number;
  crossing: number;
  resolution: Resolution;
  by: RoleName;
  plk: number;
  engine_note: string | null;
}

export interface OutcomePayload {
  winner: RoleName | null;
  verdict: string;
  detail: string;
}

export interface StatePayload {
  session: string;
  version: number;
  mover: RoleName;
  human_role: RoleName;
  engine_role: RoleName;
  first_mover: RoleName;
  terminal: boolean;
  plk: number;
  plk_exact: string;
  crossings: CrossingPayload[];
  arcs: ArcPayload[];
  loops: LoopPayload[];
  history: HistoryEntry[];
  outcome: OutcomePayload | null;
  engine_notes?: string[];
}

export interface HintPayload {
  crossing: number;
  resolution: Resolution;
  rationale: string;
}

export interface AnalysisPayload {
  winner: "first" | "second" | "undetermined";
  winning_role: RoleName | null;
  first_mover: RoleName;
  nodes: number;
  tt_hits: number;
  unknown_influenced: boolean;
  pv: string[];
  summary: string;
}

export interface CreateRequest {
  word?: string;
  closure?: string;
  pd?: string;
  preset?: string;
  human_role: RoleName;
  first_mover: RoleName;
  engine?: "auto" | "strategy" | "solver";
}
