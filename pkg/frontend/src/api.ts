// Typed client for the taxman service. Every game rule is evaluated
// server-side; this module only moves JSON.

export interface HistoryEntry {
  pick: number;
  taxed: number[];
}

export interface GameStatePayload {
  id: string;
  n: number;
  in_play: number[];
  player_score: number;
  taxman_score: number;
  legal_picks: number[];
  picks: number[];
  history: HistoryEntry[];
  swept: number[];
  game_over: boolean;
  outcome: "win" | "tie" | "loss" | null;
}

export interface PickResponse {
  state: GameStatePayload;
  taxed: number[];
}

export interface HintResponse {
  strategy: string;
  suggested_pick: number | null;
  projected_final_score: number | null;
}

export interface BoundsResponse {
  n: number;
  lower: number;
  upper: number;
  optimal: number | null;
}

/** Error carrying the server's status code and structured reason. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public reason: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

interface ErrorDetail {
  reason?: string;
  message?: string;
}

async function parseError(resp: Response): Promise<ApiError> {
  let detail: ErrorDetail = {};
  try {
    const body = (await resp.json()) as { detail?: ErrorDetail | string };
    if (typeof body.detail === "string") {
      detail = { message: body.detail };
    } else if (body.detail) {
      detail = body.detail;
    }
  } catch {
    // non-JSON error body; fall through to the generic message
  }
  const reason = detail.reason ?? `http-${resp.status}`;
  return new ApiError(resp.status, reason, detail.message ?? `${resp.status} ${reason}`);
}

/** What the controller needs from the transport; ApiClient is the real one. */
export interface TaxmanApi {
  createGame(n: number): Promise<GameStatePayload>;
  pick(gameId: string, value: number): Promise<PickResponse>;
  hint(gameId: string, strategy: string): Promise<HintResponse>;
  bounds(n: number): Promise<BoundsResponse>;
}

export class ApiClient implements TaxmanApi {
  constructor(private baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(`${this.baseUrl}${path}`, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!resp.ok) {
      throw await parseError(resp);
    }
    return (await resp.json()) as T;
  }

  createGame(n: number): Promise<GameStatePayload> {
    return this.request("/games", { method: "POST", body: JSON.stringify({ n }) });
  }

  pick(gameId: string, value: number): Promise<PickResponse> {
    return this.request(`/games/${gameId}/pick`, {
      method: "POST",
      body: JSON.stringify({ value }),
    });
  }

  hint(gameId: string, strategy: string): Promise<HintResponse> {
    return this.request(`/games/${gameId}/hint?strategy=${encodeURIComponent(strategy)}`);
  }

  bounds(n: number): Promise<BoundsResponse> {
    return this.request(`/bounds?n=${n}`);
  }
}
