// SVG board rendering.
//
// Arcs are drawn as polylines ending at the four slot points of each
// crossing; the crossing glyph fills the interior: both strand segments
// for an unresolved crossing, and for a resolved one the understrand
// broken by two gaps with the overstrand drawn on top (the two picker
// options show the same two literal renderings).

import type { BoardViewModel, PlacedCrossing } from "./model.js";
import type { Resolution } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const COMPONENT_COLORS = ["#c0392b", "#2563ab"];
const SCALE = 44;
const GLYPH_R = 0.35;

export interface RenderCallbacks {
  onCrossingClick(crossing: number): void;
  onPick(crossing: number, resolution: Resolution): void;
  onCancelPick(): void;
}

function el(
  doc: Document,
  tag: string,
  attrs: Record<string, string>,
  ns: string | null = SVG_NS,
): Element {
  const node = ns ? doc.createElementNS(ns, tag) : doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function toScreen(point: number[], bounds: Bounds): [number, number] {
  return [
    (point[0] - bounds.x0) * SCALE + 30,
    (bounds.y1 - point[1]) * SCALE + 30,
  ];
}

interface Bounds {
  x0: number;
  y1: number;
}

function polylinePoints(points: number[][], bounds: Bounds): string {
  return points
    .map((p) => toScreen(p, bounds).map((v) => v.toFixed(1)).join(","))
    .join(" ");
}

export function renderBoard(
  board: HTMLElement,
  vm: BoardViewModel,
  callbacks: RenderCallbacks,
): void {
  const doc = board.ownerDocument;
  board.textContent = "";
  const payload = vm.payload;
  if (!payload) return;
  const layout = vm.layout();

  const xs: number[] = [];
  const ys: number[] = [];
  for (const arc of layout.arcs) for (const [x, y] of arc.points) { xs.push(x); ys.push(y); }
  for (const loop of layout.loops) for (const [x, y] of loop.points) { xs.push(x); ys.push(y); }
  for (const c of layout.crossings) { xs.push(c.px); ys.push(c.py); }
  const bounds: Bounds = {
    x0: xs.length ? Math.min(...xs) : 0,
    y1: ys.length ? Math.max(...ys) : 0,
  };
  const width = (xs.length ? Math.max(...xs) - bounds.x0 : 0) * SCALE + 60;
  const height = (ys.length ? bounds.y1 - Math.min(...ys) : 0) * SCALE + 60;

  const svg = el(doc, "svg", {
    id: "board-svg",
    width: String(width),
    height: String(height),
    viewBox: `0 0 ${width} ${height}`,
  });
  board.appendChild(svg);

  if (layout.schematic && vm.warning) {
    const note = el(doc, "text", {
      x: "8", y: "16", class: "warning", fill: "#aa6300",
    });
    note.textContent = `schematic view: ${vm.warning}`;
    svg.appendChild(note);
  }

  const componentOfSlot = (cid: number, slot: number): number => {
    const arc = payload.arcs.find((a) =>
      a.ends.some(([c, s]) => c === cid && s === slot));
    return arc ? arc.component : 0;
  };

  for (const arc of layout.arcs) {
    const line = el(doc, "polyline", {
      points: polylinePoints(arc.points, bounds),
      fill: "none",
      stroke: COMPONENT_COLORS[arc.component % 2],
      "stroke-width": "3",
      "stroke-linejoin": "round",
      class: `arc component-${arc.component}`,
      "data-arc": String(arc.id),
    });
    svg.appendChild(line);
    if (vm.showOrientation && arc.points.length >= 2) {
      svg.appendChild(orientationArrow(doc, arc.points, arc.forward, bounds));
    }
  }
  for (const loop of layout.loops) {
    svg.appendChild(el(doc, "polyline", {
      points: polylinePoints(loop.points, bounds),
      fill: "none",
      stroke: COMPONENT_COLORS[loop.component % 2],
      "stroke-width": "3",
      class: `loop component-${loop.component}`,
    }));
  }

  for (const crossing of layout.crossings) {
    svg.appendChild(
      crossingGlyph(doc, crossing, bounds, vm, componentOfSlot, callbacks));
  }

  const hint = vm.hint;
  if (hint) {
    const c = layout.crossings.find((x) => x.id === hint.crossing);
    if (c) {
      const [cx, cy] = toScreen([c.px, c.py], bounds);
      svg.appendChild(el(doc, "circle", {
        cx: String(cx), cy: String(cy), r: String(GLYPH_R * SCALE + 8),
        fill: "none", stroke: "#0a7d36", "stroke-dasharray": "5,4",
        "stroke-width": "2", class: "hint-ring",
      }));
    }
  }

  if (vm.pendingPick !== null) {
    const c = layout.crossings.find((x) => x.id === vm.pendingPick);
    if (c) svg.appendChild(picker(doc, c, bounds, componentOfSlot, callbacks));
  }
}

function strandSegment(
  doc: Document,
  crossing: PlacedCrossing,
  firstSlot: number,
  bounds: Bounds,
  color: string,
  gap: number,
): Element {
  // segment through the center between opposite slots; gap > 0 breaks it
  // into two understrand stubs
  const a = [
    crossing.px + GLYPH_R * crossing.dirs[firstSlot][0],
    crossing.py + GLYPH_R * crossing.dirs[firstSlot][1],
  ];
  const b = [
    crossing.px + GLYPH_R * crossing.dirs[(firstSlot + 2) % 4][0],
    crossing.py + GLYPH_R * crossing.dirs[(firstSlot + 2) % 4][1],
  ];
  const group = el(doc, "g", { class: "strand-segment" });
  if (gap <= 0) {
    group.appendChild(segmentLine(doc, a, b, bounds, color));
  } else {
    const mid = [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2];
    const stubA = [
      mid[0] + (a[0] - mid[0]) * gap,
      mid[1] + (a[1] - mid[1]) * gap,
    ];
    const stubB = [
      mid[0] + (b[0] - mid[0]) * gap,
      mid[1] + (b[1] - mid[1]) * gap,
    ];
    group.appendChild(segmentLine(doc, a, stubA, bounds, color));
    group.appendChild(segmentLine(doc, stubB, b, bounds, color));
  }
  return group;
}

function segmentLine(
  doc: Document,
  a: number[],
  b: number[],
  bounds: Bounds,
  color: string,
): Element {
  const [x1, y1] = toScreen(a, bounds);
  const [x2, y2] = toScreen(b, bounds);
  return el(doc, "line", {
    x1: x1.toFixed(1), y1: y1.toFixed(1),
    x2: x2.toFixed(1), y2: y2.toFixed(1),
    stroke: color, "stroke-width": "3", "stroke-linecap": "round",
  });
}

function crossingGlyph(
  doc: Document,
  crossing: PlacedCrossing,
  bounds: Bounds,
  vm: BoardViewModel,
  componentOfSlot: (cid: number, slot: number) => number,
  callbacks: RenderCallbacks,
): Element {
  const group = el(doc, "g", {
    class: `crossing state-${crossing.state === "?" ? "unresolved" : "resolved"} kind-${crossing.kind}`,
    "data-crossing": String(crossing.id),
    "data-state": crossing.state,
  });
  const color02 = COMPONENT_COLORS[componentOfSlot(crossing.id, 0) % 2];
  const color13 = COMPONENT_COLORS[componentOfSlot(crossing.id, 1) % 2];
  if (crossing.state === "?") {
    group.appendChild(strandSegment(doc, crossing, 0, bounds, color02, 0));
    group.appendChild(strandSegment(doc, crossing, 1, bounds, color13, 0));
  } else if (crossing.state === "/") {
    group.appendChild(strandSegment(doc, crossing, 1, bounds, color13, 0.45));
    group.appendChild(strandSegment(doc, crossing, 0, bounds, color02, 0));
  } else {
    group.appendChild(strandSegment(doc, crossing, 0, bounds, color02, 0.45));
    group.appendChild(strandSegment(doc, crossing, 1, bounds, color13, 0));
  }
  const [cx, cy] = toScreen([crossing.px, crossing.py], bounds);
  if (crossing.state === "?") {
    const target = el(doc, "circle", {
      cx: String(cx), cy: String(cy), r: String(GLYPH_R * SCALE),
      fill: "rgba(120,120,120,0.08)", stroke: "#888",
      "stroke-dasharray": "3,3", class: "click-target", cursor: "pointer",
    });
    target.addEventListener("click", () =>
      callbacks.onCrossingClick(crossing.id));
    group.appendChild(target);
  } else {
    // clicking a resolved crossing is a no-op; surface a tooltip
    const title = el(doc, "title", {});
    title.textContent = `crossing ${crossing.id} already resolved`;
    group.appendChild(title);
    if (vm.showOrientation && crossing.sign !== null) {
      const label = el(doc, "text", {
        x: String(cx + 14), y: String(cy - 10),
        class: "sign-label", "font-size": "12", fill: "#333",
      });
      label.textContent = crossing.sign > 0 ? "+1" : "-1";
      group.appendChild(label);
    }
  }
  return group;
}

function picker(
  doc: Document,
  crossing: PlacedCrossing,
  bounds: Bounds,
  componentOfSlot: (cid: number, slot: number) => number,
  callbacks: RenderCallbacks,
): Element {
  const [cx, cy] = toScreen([crossing.px, crossing.py], bounds);
  const group = el(doc, "g", { class: "picker" });
  const backdrop = el(doc, "rect", {
    x: String(cx - 58), y: String(cy - 76), width: "116", height: "56",
    rx: "8", fill: "#fff", stroke: "#555",
  });
  backdrop.addEventListener("click", () => callbacks.onCancelPick());
  group.appendChild(backdrop);
  const options: Resolution[] = ["/", "\\"];
  options.forEach((resolution, i) => {
    const ox = cx - 28 + i * 56;
    const oy = cy - 48;
    const option = el(doc, "g", {
      class: "picker-option", cursor: "pointer",
      "data-resolution": resolution,
    });
    option.appendChild(el(doc, "rect", {
      x: String(ox - 22), y: String(oy - 22), width: "44", height: "44",
      rx: "6", fill: "#f4f4f4", stroke: "#999",
    }));
    // literal miniature of the resulting crossing
    const overFirst = resolution === "/" ? 0 : 1;
    const underFirst = 1 - overFirst;
    const colorOver = COMPONENT_COLORS[componentOfSlot(crossing.id, overFirst) % 2];
    const colorUnder = COMPONENT_COLORS[componentOfSlot(crossing.id, underFirst) % 2];
    const mini = (first: number, color: string, gap: number) => {
      const dirA = crossing.dirs[first];
      const dirB = crossing.dirs[(first + 2) % 4];
      const pts = [
        [ox + 16 * dirA[0], oy - 16 * dirA[1]],
        [ox + 16 * dirB[0], oy - 16 * dirB[1]],
      ];
      if (gap <= 0) {
        option.appendChild(el(doc, "line", {
          x1: String(pts[0][0]), y1: String(pts[0][1]),
          x2: String(pts[1][0]), y2: String(pts[1][1]),
          stroke: color, "stroke-width": "3", "stroke-linecap": "round",
        }));
      } else {
        for (const [sx, sy, ex, ey] of [
          [pts[0][0], pts[0][1],
           ox + (pts[0][0] - ox) * gap, oy + (pts[0][1] - oy) * gap],
          [ox + (pts[1][0] - ox) * gap, oy + (pts[1][1] - oy) * gap,
           pts[1][0], pts[1][1]],
        ]) {
          option.appendChild(el(doc, "line", {
            x1: String(sx), y1: String(sy), x2: String(ex), y2: String(ey),
            stroke: color, "stroke-width": "3", "stroke-linecap": "round",
          }));
        }
      }
    };
    mini(underFirst, colorUnder, 0.4);
    mini(overFirst, colorOver, 0);
    option.addEventListener("click", () =>
      callbacks.onPick(crossing.id, resolution));
    group.appendChild(option);
  });
  return group;
}

function orientationArrow(
  doc: Document,
  points: number[][],
  forward: boolean,
  bounds: Bounds,
): Element {
  const mid = Math.floor(points.length / 2);
  const a = points[Math.max(0, mid - 1)];
  const b = points[mid];
  const [x1, y1] = toScreen(forward ? a : b, bounds);
  const [x2, y2] = toScreen(forward ? b : a, bounds);
  const dx = x2 - x1;
  const dy = y2 - y1;
  const len = Math.hypot(dx, dy) || 1;
  const ux = dx / len;
  const uy = dy / len;
  const tipX = (x1 + x2) / 2;
  const tipY = (y1 + y2) / 2;
  return el(doc, "polygon", {
    points: [
      `${tipX},${tipY}`,
      `${tipX - 9 * ux + 4 * uy},${tipY - 9 * uy - 4 * ux}`,
      `${tipX - 9 * ux - 4 * uy},${tipY - 9 * uy + 4 * ux}`,
    ].join(" "),
    fill: "#444",
    class: "orientation-arrow",
  });
}

export function renderPanels(root: Document, vm: BoardViewModel): void {
  const payload = vm.payload;
  const banner = root.getElementById("banner");
  if (banner) {
    banner.textContent = vm.bannerText();
    banner.className = payload?.outcome
      ? `banner over winner-${payload.outcome.winner ?? "none"}`
      : "banner live";
  }
  const plk = root.getElementById("plk");
  if (plk && payload) {
    plk.textContent = `pseudo-linking number: ${payload.plk_exact}`;
    plk.setAttribute("data-plk", String(payload.plk));
  }
  const hintBox = root.getElementById("hint");
  if (hintBox) {
    hintBox.textContent = vm.hint
      ? `hint: crossing ${vm.hint.crossing} as ${vm.hint.resolution} (${vm.hint.rationale})`
      : "";
  }
  const analysisBox = root.getElementById("analysis");
  if (analysisBox) {
    if (vm.analysisNotice) {
      analysisBox.textContent = vm.analysisNotice;
      analysisBox.className = "analysis notice";
    } else if (vm.analysis) {
      const caution = vm.analysis.unknown_influenced
        ? " [caution: unknown-verdict leaves]" : "";
      analysisBox.textContent = `analysis: ${vm.analysis.summary}${caution}`;
      analysisBox.className = vm.analysis.unknown_influenced
        ? "analysis caution" : "analysis";
    } else {
      analysisBox.textContent = "";
    }
  }
  const history = root.getElementById("history");
  if (history && payload) {
    history.textContent = "";
    for (const entry of payload.history) {
      const item = root.createElement("li");
      const note = entry.engine_note ? ` - ${entry.engine_note}` : "";
      item.textContent =
        `${entry.by} resolves #${entry.crossing} as ${entry.resolution} ` +
        `(plk ${entry.plk})${note}`;
      history.appendChild(item);
    }
  }
}
