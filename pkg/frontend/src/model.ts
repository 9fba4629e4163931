// Board view model.
//
// All game state comes from the latest service payload; the only local
// additions are presentation state (a pending over/under pick, hint and
// analysis overlays, toggles).  Every displayed position therefore
// matches a service-returned payload, which the tests pin down by
// hashing the payload this model holds.

import type {
  AnalysisPayload,
  CrossingPayload,
  HintPayload,
  StatePayload,
} from "./types.js";

export interface PlacedCrossing extends CrossingPayload {
  px: number;
  py: number;
  dirs: number[][];
}

export interface DrawnArc {
  id: number;
  component: number;
  points: number[][];
  forward: boolean;
}

export interface BoardLayout {
  crossings: PlacedCrossing[];
  arcs: DrawnArc[];
  loops: { id: number; component: number; points: number[][] }[];
  schematic: boolean;
  width: number;
  height: number;
}

const DIAGONALS = [
  [Math.SQRT1_2, Math.SQRT1_2],
  [-Math.SQRT1_2, Math.SQRT1_2],
  [-Math.SQRT1_2, -Math.SQRT1_2],
  [Math.SQRT1_2, -Math.SQRT1_2],
];

/** Canonical JSON with sorted keys; `engine_notes` is reply metadata
 * rather than game state, so it is excluded from hashing. */
function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.keys(value as Record<string, unknown>)
      .filter((k) => k !== "engine_notes")
      .sort()
      .map((k) =>
        `${JSON.stringify(k)}:${canonicalJson((value as Record<string, unknown>)[k])}`);
    return "{" + entries.join(",") + "}";
  }
  return JSON.stringify(value) ?? "null";
}

/** FNV-1a over the canonical JSON of a payload. */
export function payloadHash(payload: StatePayload): string {
  const text = canonicalJson(payload);
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return (hash >>> 0).toString(16);
}

export class BoardViewModel {
  payload: StatePayload | null = null;
  lastPayloadHash = "";
  pendingPick: number | null = null;
  hint: HintPayload | null = null;
  analysis: AnalysisPayload | null = null;
  analysisNotice: string | null = null;
  showOrientation = false;
  warning: string | null = null;
  error: string | null = null;

  /** plk after every ply, straight from the service history. */
  get plkTrace(): number[] {
    if (!this.payload) return [];
    return this.payload.history.map((h) => h.plk);
  }

  applyPayload(payload: StatePayload): void {
    this.payload = payload;
    this.lastPayloadHash = payloadHash(payload);
    this.pendingPick = null;
    this.hint = null;
    this.analysis = null;
    this.analysisNotice = null;
    this.error = null;
    this.warning = payload.crossings.some((c) => c.x === null)
      ? "no layout coordinates; showing a schematic arrangement"
      : null;
  }

  get humanTurn(): boolean {
    return (
      !!this.payload &&
      !this.payload.terminal &&
      this.payload.mover === this.payload.human_role
    );
  }

  /** Clicking a crossing opens the picker only on sensible targets. */
  beginPick(crossing: number): "picker" | "resolved" | "not-your-turn" {
    if (!this.payload) return "not-your-turn";
    const c = this.payload.crossings.find((x) => x.id === crossing);
    if (!c || c.state !== "?") return "resolved";
    if (!this.humanTurn) return "not-your-turn";
    this.pendingPick = crossing;
    return "picker";
  }

  cancelPick(): void {
    this.pendingPick = null;
  }

  setHint(hint: HintPayload): void {
    this.hint = hint;
  }

  setAnalysis(analysis: AnalysisPayload): void {
    this.analysis = analysis;
    this.analysisNotice = null;
  }

  setAnalysisTooLarge(): void {
    this.analysis = null;
    this.analysisNotice = "too large to solve";
  }

  bannerText(): string {
    if (!this.payload) return "no game";
    const outcome = this.payload.outcome;
    if (outcome) {
      if (outcome.winner === "unlinker") return "Unlinker wins";
      if (outcome.winner === "linker") return "Linker wins";
      return `undetermined (${outcome.verdict})`;
    }
    const who = this.payload.mover === this.payload.human_role
      ? "your move"
      : "engine thinking";
    return `${this.payload.mover} to move (${who})`;
  }

  /** Geometry for rendering; falls back to a circular schematic when the
   * service payload carries no coordinates. */
  layout(): BoardLayout {
    const payload = this.payload;
    if (!payload) {
      return { crossings: [], arcs: [], loops: [], schematic: false, width: 0, height: 0 };
    }
    const schematic = payload.crossings.some((c) => c.x === null);
    const positions = new Map<number, [number, number]>();
    if (schematic) {
      const n = Math.max(payload.crossings.length, 1);
      payload.crossings.forEach((c, i) => {
        const angle = (2 * Math.PI * i) / n;
        positions.set(c.id, [4 * Math.cos(angle), 4 * Math.sin(angle)]);
      });
    } else {
      for (const c of payload.crossings) positions.set(c.id, [c.x!, c.y!]);
    }
    const crossings: PlacedCrossing[] = payload.crossings.map((c) => {
      const [px, py] = positions.get(c.id)!;
      return { ...c, px, py, dirs: c.slot_dirs ?? DIAGONALS };
    });
    const slotPoint = (cid: number, slot: number): number[] => {
      const c = crossings.find((x) => x.id === cid)!;
      return [c.px + 0.35 * c.dirs[slot][0], c.py + 0.35 * c.dirs[slot][1]];
    };
    const arcs: DrawnArc[] = payload.arcs.map((a) => ({
      id: a.id,
      component: a.component,
      forward: a.forward,
      points:
        !schematic && a.path
          ? a.path
          : [slotPoint(a.ends[0][0], a.ends[0][1]),
             slotPoint(a.ends[1][0], a.ends[1][1])],
    }));
    const loops = payload.loops.map((l, i) => ({
      id: l.id,
      component: l.component,
      points: l.path ?? circlePoints(-6 - 2 * i, 0, 0.8),
    }));
    const xs: number[] = [];
    const ys: number[] = [];
    for (const arc of arcs) for (const [x, y] of arc.points) { xs.push(x); ys.push(y); }
    for (const loop of loops) for (const [x, y] of loop.points) { xs.push(x); ys.push(y); }
    for (const c of crossings) { xs.push(c.px); ys.push(c.py); }
    const width = xs.length ? Math.max(...xs) - Math.min(...xs) : 0;
    const height = ys.length ? Math.max(...ys) - Math.min(...ys) : 0;
    return { crossings, arcs, loops, schematic, width, height };
  }
}

function circlePoints(cx: number, cy: number, r: number): number[][] {
  const points: number[][] = [];
  for (let i = 0; i <= 24; i++) {
    const t = (2 * Math.PI * i) / 24;
    points.push([cx + r * Math.cos(t), cy + r * Math.sin(t)]);
  }
  return points;
}
