// Hint and bounds panel. Pull-based: suggestions appear only when asked
// for and are never played automatically.

export const HINT_STRATEGIES = ["born-free", "oracle"] as const;
export type HintStrategy = (typeof HINT_STRATEGIES)[number];

export interface HintPanelHandlers {
  onHint: (strategy: HintStrategy) => void;
  onBounds: () => void;
}

export interface HintPanelView {
  root: HTMLElement;
  strategy: () => HintStrategy;
  showHint: (pick: number | null, projected: number | null) => void;
  showBounds: (lower: number, upper: number, optimal: number | null) => void;
  showMessage: (text: string) => void;
}

export function renderHintPanel(
  container: HTMLElement,
  handlers: HintPanelHandlers,
): HintPanelView {
  container.replaceChildren();
  const panel = document.createElement("div");
  panel.className = "hint-panel";

  const select = document.createElement("select");
  select.dataset.role = "strategy";
  for (const name of HINT_STRATEGIES) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    select.appendChild(option);
  }

  const hintButton = document.createElement("button");
  hintButton.textContent = "Get hint";
  hintButton.dataset.role = "hint-button";
  hintButton.addEventListener("click", () =>
    handlers.onHint(select.value as HintStrategy),
  );

  const boundsButton = document.createElement("button");
  boundsButton.textContent = "Bounds for this pot";
  boundsButton.dataset.role = "bounds-button";
  boundsButton.addEventListener("click", handlers.onBounds);

  const output = document.createElement("div");
  output.className = "hint-output";
  output.dataset.role = "hint-output";

  panel.append(select, hintButton, boundsButton, output);
  container.appendChild(panel);

  return {
    root: panel,
    strategy: () => select.value as HintStrategy,
    showHint(pick, projected) {
      if (pick === null) {
        output.textContent = "no moves";
      } else {
        output.textContent = `try ${pick} (projected final score ${projected})`;
      }
    },
    showBounds(lower, upper, optimal) {
      const exact = optimal === null ? "" : `, optimal ${optimal}`;
      output.textContent = `score bounds: ${lower} ≤ best ≤ ${upper}${exact}`;
    },
    showMessage(text) {
      output.textContent = text;
    },
  };
}
