// Page controller: owns the session, re-renders strictly from server
// responses, and surfaces server rejections verbatim.

import { ApiClient, ApiError, type GameStatePayload, type TaxmanApi } from "./api";
import { buildViewModel, renderBoard } from "./board";
import { renderHintPanel, type HintPanelView, type HintStrategy } from "./hints";

export class PlaygroundController {
  private state: GameStatePayload | null = null;
  private lastHint: number | null = null;
  private boardHost: HTMLElement;
  private noticeHost: HTMLElement;
  private hintPanel: HintPanelView;

  constructor(
    root: HTMLElement,
    private api: TaxmanApi,
  ) {
    root.replaceChildren();

    const form = document.createElement("form");
    form.className = "new-game";
    form.innerHTML =
      `<label>Pot size <input data-role="pot-input" type="number" min="1" value="20"></label>` +
      `<button data-role="start-button" type="submit">New game</button>`;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const input = form.querySelector<HTMLInputElement>("[data-role=pot-input]");
      void this.start(Number(input?.value ?? "0"));
    });
    root.appendChild(form);

    this.noticeHost = document.createElement("div");
    this.noticeHost.dataset.role = "notice";
    this.noticeHost.className = "notice";
    root.appendChild(this.noticeHost);

    this.boardHost = document.createElement("div");
    this.boardHost.dataset.role = "board";
    root.appendChild(this.boardHost);

    const hintHost = document.createElement("div");
    hintHost.dataset.role = "hints";
    root.appendChild(hintHost);
    this.hintPanel = renderHintPanel(hintHost, {
      onHint: (strategy) => void this.requestHint(strategy),
      onBounds: () => void this.requestBounds(),
    });
  }

  get session(): GameStatePayload | null {
    return this.state;
  }

  async start(n: number): Promise<void> {
    try {
      this.state = await this.api.createGame(n);
      this.lastHint = null;
      this.clearNotice();
      this.hintPanel.showMessage("");
    } catch (error) {
      this.reportError(error, "could not start the game");
    }
    this.render();
  }

  async clickCell(value: number): Promise<void> {
    if (!this.state) return;
    try {
      const response = await this.api.pick(this.state.id, value);
      this.state = response.state;
      this.lastHint = null;
      this.clearNotice();
    } catch (error) {
      this.reportError(error, `pick ${value} failed`);
    }
    this.render();
  }

  async requestHint(strategy: HintStrategy): Promise<void> {
    if (!this.state) return;
    try {
      const hint = await this.api.hint(this.state.id, strategy);
      this.lastHint = hint.suggested_pick;
      this.hintPanel.showHint(hint.suggested_pick, hint.projected_final_score);
      this.render();
    } catch (error) {
      this.reportError(error, "hint unavailable");
    }
  }

  async requestBounds(): Promise<void> {
    if (!this.state) return;
    try {
      const bounds = await this.api.bounds(this.state.n);
      this.hintPanel.showBounds(bounds.lower, bounds.upper, bounds.optimal);
    } catch (error) {
      this.reportError(error, "bounds unavailable");
    }
  }

  render(): void {
    if (!this.state) return;
    const vm = buildViewModel(this.state, this.lastHint);
    renderBoard(this.boardHost, vm, (value) => void this.clickCell(value));
  }

  private clearNotice(): void {
    this.noticeHost.textContent = "";
    this.noticeHost.className = "notice";
  }

  private reportError(error: unknown, context: string): void {
    if (error instanceof ApiError) {
      this.noticeHost.textContent = `${context}: ${error.reason} — ${error.message}`;
      this.noticeHost.className = "notice notice-rejected";
    } else {
      this.noticeHost.textContent = `${context}: network error, please retry`;
      this.noticeHost.className = "notice notice-retry";
    }
  }
}

export function bootstrap(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const params = new URLSearchParams(window.location.search);
  const base = params.get("api") ?? "";
  new PlaygroundController(root, new ApiClient(base));
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  bootstrap();
}
