// App wiring: new-game form, click -> picker -> move submission with
// optimistic-lock handling, hint/analysis buttons, and background
// polling (the engine replies synchronously, but polling keeps the view
// converged if anything races).

import { ApiClient, StaleVersionError } from "./api.js";
import { BoardViewModel } from "./model.js";
import { renderBoard, renderPanels } from "./render.js";
import type { Resolution, RoleName } from "./types.js";

export class App {
  vm = new BoardViewModel();
  private session: string | null = null;
  private pollTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private api: ApiClient,
    private root: Document,
  ) {}

  async newGame(
    source: { preset?: string; word?: string; closure?: string },
    humanRole: RoleName,
    firstMover: RoleName,
  ): Promise<void> {
    const payload = await this.api.createSession({
      ...source,
      human_role: humanRole,
      first_mover: firstMover,
    });
    this.session = payload.session;
    this.vm.applyPayload(payload);
    this.render();
    this.startPolling();
  }

  private startPolling(): void {
    if (this.pollTimer) clearInterval(this.pollTimer);
    this.pollTimer = setInterval(() => {
      void this.refresh();
    }, 1500);
  }

  async refresh(): Promise<void> {
    if (!this.session) return;
    const payload = await this.api.getState(this.session);
    if (!this.vm.payload || payload.version !== this.vm.payload.version) {
      this.vm.applyPayload(payload);
      this.render();
    }
  }

  onCrossingClick(crossing: number): void {
    const result = this.vm.beginPick(crossing);
    if (result === "picker") this.render();
    // clicks on resolved crossings or out of turn are no-ops; the glyph
    // carries a tooltip saying so
  }

  async onPick(crossing: number, resolution: Resolution): Promise<void> {
    if (!this.session || !this.vm.payload) return;
    const version = this.vm.payload.version;
    this.vm.cancelPick();
    try {
      const payload = await this.api.postMove(
        this.session, crossing, resolution, version);
      this.vm.applyPayload(payload);
    } catch (err) {
      if (err instanceof StaleVersionError) {
        await this.refresh();  // silent refresh on version conflicts
        return;
      }
      this.vm.error = String(err);
    }
    this.render();
  }

  onCancelPick(): void {
    this.vm.cancelPick();
    this.render();
  }

  async requestHint(): Promise<void> {
    if (!this.session) return;
    this.vm.setHint(await this.api.getHint(this.session));
    this.render();
  }

  async requestAnalysis(): Promise<void> {
    if (!this.session) return;
    try {
      this.vm.setAnalysis(await this.api.getAnalysis(this.session));
    } catch (err) {
      this.vm.setAnalysisTooLarge();
    }
    this.render();
  }

  toggleOrientation(): void {
    this.vm.showOrientation = !this.vm.showOrientation;
    this.render();
  }

  render(): void {
    const board = this.root.getElementById("board");
    if (board) {
      renderBoard(board as HTMLElement, this.vm, {
        onCrossingClick: (c) => this.onCrossingClick(c),
        onPick: (c, r) => void this.onPick(c, r),
        onCancelPick: () => this.onCancelPick(),
      });
    }
    renderPanels(this.root, this.vm);
  }
}

export function bootstrap(doc: Document, baseUrl: string): App {
  const app = new App(new ApiClient(baseUrl), doc);
  const form = doc.getElementById("new-game-form") as HTMLFormElement | null;
  form?.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const preset = String(data.get("preset") ?? "");
    const word = String(data.get("word") ?? "").trim();
    const source = word
      ? { word, closure: String(data.get("closure") ?? "") || undefined }
      : { preset: preset || "whitehead" };
    void app.newGame(
      source,
      (data.get("human_role") as RoleName) ?? "unlinker",
      (data.get("first_mover") as RoleName) ?? "unlinker",
    );
  });
  doc.getElementById("hint-button")?.addEventListener("click", () => {
    void app.requestHint();
  });
  doc.getElementById("analysis-button")?.addEventListener("click", () => {
    void app.requestAnalysis();
  });
  doc.getElementById("orientation-toggle")?.addEventListener("click", () => {
    app.toggleOrientation();
  });
  return app;
}
