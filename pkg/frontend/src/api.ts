/** Typed client for the report service HTTP+JSON API. */

export type SourceInfo = {
  name: string;
  members: number;
  kind: string | null;
  has_data: boolean;
};

export type ThemeSuggestion = { title: string; description: string };

export type RunStateDto = {
  run_id: string;
  topic: string;
  source: string;
  theme: string;
  stage: string;
  progress_done: number;
  progress_total: number;
  quotes_processed: number;
  quotes_per_minute: number;
  error: string;
};

export type QuoteRefDto = {
  quote_id: string;
  quote_text: string;
  summary: string;
  source_id: string;
  community: string;
};

export type ThemeEntryDto = {
  title: string;
  description: string;
  count: number;
  ratio: string;
  percent: string;
  quotes: QuoteRefDto[];
  member_refs: QuoteRefDto[];
};

export type GroupSectionDto = {
  group_id: string;
  group_name: string;
  total_quotes: number;
  themes: ThemeEntryDto[];
};

export type ReportDto = {
  run_id: string;
  topic: string;
  source: string;
  groups: GroupSectionDto[];
  pipeline_version: string;
  generated_at: string;
  notes: string[];
};

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** All calls go through one injected fetch, so tests can script the service. */
export class ServiceClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(detail, response.status);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  recommendSources(topic: string): Promise<{ topic: string; recommended: string[] }> {
    return this.post("/topics/recommend-sources", { topic });
  }

  listSources(): Promise<{ sources: SourceInfo[] }> {
    return this.request("/sources");
  }

  suggestThemes(source: string): Promise<{ source: string; themes: ThemeSuggestion[] }> {
    return this.post(`/sources/${encodeURIComponent(source)}/themes`, {});
  }

  startRun(topic: string, source: string, theme: string): Promise<{ run_id: string }> {
    return this.post("/runs", { topic, source, theme });
  }

  getRun(runId: string): Promise<RunStateDto> {
    return this.request(`/runs/${encodeURIComponent(runId)}`);
  }

  getReport(runId: string): Promise<ReportDto> {
    return this.request(`/runs/${encodeURIComponent(runId)}/report`);
  }

  /** The markdown export; served as text, not JSON. */
  async downloadMarkdown(runId: string): Promise<string> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/runs/${encodeURIComponent(runId)}/report/download?format=markdown`,
    );
    if (!response.ok) {
      throw new ApiError(response.statusText, response.status);
    }
    return response.text();
  }
}
