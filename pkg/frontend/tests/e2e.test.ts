// End-to-end playthrough against the real Python service (criterion:
// create a Whitehead game, play the Unlinker's worked-game moves -
// central self-intersection first, then the R2 response to each reply -
// against the scripted engine Linker; the UI must announce "Unlinker
// wins" with a pseudo-linking-number trace matching the service at
// every ply).

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/main.js";
import { payloadHash } from "../src/model.js";

const PORT = 8873;
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess | null = null;

// the whitehead preset's twist regions, keyed by crossing id
const REGION: Record<number, number[]> = {
  0: [0, 1], 1: [0, 1], 2: [2], 3: [3, 4], 4: [3, 4],
};

function setupDom() {
  document.body.innerHTML = `
    <div id="banner"></div>
    <div id="board"></div>
    <div id="plk"></div>
    <div id="hint"></div>
    <div id="analysis"></div>
    <ol id="history"></ol>`;
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-c",
     "from linkgame.service import create_app\n" +
     "import uvicorn\n" +
     `uvicorn.run(create_app(), host='127.0.0.1', port=${PORT}, ` +
     "log_level='warning')"],
    { stdio: ["ignore", "inherit", "inherit"] },
  );
  for (let attempt = 0; attempt < 150; attempt++) {
    try {
      const response = await fetch(`${BASE}/sessions/warmup`);
      if (response.status === 404) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("linkgame service did not start");
});

afterAll(() => {
  server?.kill();
});

describe("scripted Whitehead playthrough", () => {
  it("unlinker wins and the plk trace matches the service each ply", async () => {
    setupDom();
    const api = new ApiClient(BASE, (input, init) => fetch(input, init));
    const app = new App(api, document);
    await app.newGame({ preset: "whitehead" }, "unlinker", "unlinker");
    const session = app.vm.payload!.session;
    expect(app.vm.payload!.crossings).toHaveLength(5);

    const displayed: { version: number; plk: number }[] = [];
    const record = () => {
      const plkBox = document.getElementById("plk")!;
      displayed.push({
        version: app.vm.payload!.version,
        plk: Number(plkBox.getAttribute("data-plk")),
      });
    };
    record();

    // the worked game's opening: resolve the central self-intersection
    expect(app.vm.beginPick(2)).toBe("picker");
    app.render();
    expect(document.querySelectorAll(".picker-option")).toHaveLength(2);
    await app.onPick(2, "/");
    record();

    // answer each engine reply with the hinted R2 response in the same
    // twist region, exactly the worked game's Unlinker play
    let guard = 0;
    while (!app.vm.payload!.terminal && guard++ < 10) {
      expect(app.vm.payload!.mover).toBe("unlinker");
      const engineMove =
        app.vm.payload!.history[app.vm.payload!.history.length - 1];
      expect(engineMove.by).toBe("linker");
      await app.requestHint();
      const hint = app.vm.hint!;
      expect(REGION[hint.crossing]).toEqual(REGION[engineMove.crossing]);
      await app.onPick(hint.crossing, hint.resolution);
      record();
    }

    // every move the UI saw came from the service
    const fresh = await api.getState(session);
    expect(payloadHash(fresh)).toBe(app.vm.lastPayloadHash);

    // the banner announces the worked game's result
    expect(document.getElementById("banner")!.textContent)
      .toBe("Unlinker wins");
    expect(app.vm.payload!.outcome!.winner).toBe("unlinker");
    expect(app.vm.payload!.plk).toBe(0);

    // plk trace parity with the service at every ply
    const serviceTrace = fresh.history.map((h) => h.plk);
    expect(app.vm.plkTrace).toEqual(serviceTrace);
    expect(serviceTrace).toHaveLength(5);
    for (const shot of displayed) {
      if (shot.version > 0) {
        expect(shot.plk).toBe(serviceTrace[shot.version - 1]);
      } else {
        expect(shot.plk).toBe(0);
      }
    }
    // the R2 responses cancel each linker move: plk returns to 0 after
    // every unlinker reply
    expect(serviceTrace[serviceTrace.length - 1]).toBe(0);
  });

  it("stale submissions refresh silently instead of double-moving", async () => {
    setupDom();
    const api = new ApiClient(BASE, (input, init) => fetch(input, init));
    const app = new App(api, document);
    await app.newGame({ preset: "whitehead" }, "unlinker", "unlinker");
    await app.onPick(2, "/");
    const version = app.vm.payload!.version;
    // submit with a stale version: the app must silently refetch
    app.vm.payload!.version = 0;
    await app.onPick(0, "/");
    expect(app.vm.error).toBeNull();
    expect(app.vm.payload!.version).toBe(version);
  });

  it("analysis endpoint feeds the analysis panel", async () => {
    setupDom();
    const api = new ApiClient(BASE, (input, init) => fetch(input, init));
    const app = new App(api, document);
    await app.newGame(
      { word: "(2)", closure: "denominator" }, "linker", "linker");
    await app.requestAnalysis();
    expect(app.vm.analysis!.winner).toBe("second");
    expect(document.getElementById("analysis")!.textContent)
      .toContain("second mover");
  });
});
