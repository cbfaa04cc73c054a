// Board view-model and renderer. Statuses are derived purely from the
// server payload; the client never evaluates divisibility itself.

import type { GameStatePayload } from "./api";

export type CellStatus = "in-play" | "picked-by-player" | "taxed" | "swept";

export interface Cell {
  value: number;
  status: CellStatus;
}

export interface BoardViewModel {
  n: number;
  cells: Cell[];
  playerScore: number;
  taxmanScore: number;
  legal: Set<number>;
  lastHint: number | null;
  gameOver: boolean;
  outcome: "win" | "tie" | "loss" | null;
}

export function buildViewModel(
  state: GameStatePayload,
  lastHint: number | null = null,
): BoardViewModel {
  const picked = new Set(state.picks);
  const taxed = new Set(state.history.flatMap((h) => h.taxed));
  const swept = new Set(state.swept);
  const cells: Cell[] = [];
  for (let value = 1; value <= state.n; value++) {
    let status: CellStatus = "in-play";
    if (picked.has(value)) status = "picked-by-player";
    else if (taxed.has(value)) status = "taxed";
    else if (swept.has(value)) status = "swept";
    cells.push({ value, status });
  }
  return {
    n: state.n,
    cells,
    playerScore: state.player_score,
    taxmanScore: state.taxman_score,
    legal: new Set(state.legal_picks),
    lastHint,
    gameOver: state.game_over,
    outcome: state.outcome,
  };
}

const ROW_WIDTH = 10; // presentational only

export function renderBoard(
  container: HTMLElement,
  vm: BoardViewModel,
  onPick: (value: number) => void,
): void {
  container.replaceChildren();

  const scores = document.createElement("div");
  scores.className = "scores";
  scores.innerHTML =
    `<span class="score-player">You: <b data-role="player-score">${vm.playerScore}</b></span>` +
    `<span class="score-taxman">Taxman: <b data-role="taxman-score">${vm.taxmanScore}</b></span>`;
  container.appendChild(scores);

  const grid = document.createElement("div");
  grid.className = "board-grid";
  for (let start = 0; start < vm.cells.length; start += ROW_WIDTH) {
    const row = document.createElement("div");
    row.className = "board-row";
    for (const cell of vm.cells.slice(start, start + ROW_WIDTH)) {
      const button = document.createElement("button");
      button.textContent = String(cell.value);
      button.dataset.cell = String(cell.value);
      button.className = `cell cell-${cell.status}`;
      const clickable = !vm.gameOver && vm.legal.has(cell.value);
      button.disabled = !clickable;
      if (cell.value === vm.lastHint && cell.status === "in-play") {
        button.classList.add("cell-hinted");
      }
      if (clickable) {
        button.addEventListener("click", () => onPick(cell.value));
      }
      row.appendChild(button);
    }
    grid.appendChild(row);
  }
  container.appendChild(grid);

  if (vm.gameOver) {
    const banner = document.createElement("div");
    const verdict = (vm.outcome ?? "loss").toUpperCase();
    banner.className = `banner banner-${vm.outcome ?? "loss"}`;
    banner.dataset.role = "verdict";
    banner.textContent = `${verdict} — you ${vm.playerScore}, taxman ${vm.taxmanScore}`;
    container.appendChild(banner);
  }
}
