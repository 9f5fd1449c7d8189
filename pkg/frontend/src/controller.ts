/** Drives the Action 1 -> 2 -> 3 flow against the service and rerenders. */

import { ApiError, ServiceClient } from "./api.js";
import { pollRun } from "./poll.js";
import { AppState, initialState, render, toggleQuote } from "./view.js";

export class AppController {
  state: AppState = initialState();

  constructor(
    private readonly client: ServiceClient,
    private readonly onRender: (html: string, state: AppState) => void,
    private readonly pollIntervalMs = 1000,
  ) {}

  private paint() {
    this.onRender(render(this.state), this.state);
  }

  private async guard<T>(work: () => Promise<T>): Promise<T | undefined> {
    try {
      this.state = { ...this.state, error: null };
      return await work();
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      this.state = { ...this.state, error: message };
      this.paint();
      return undefined;
    }
  }

  /** Full reload entry point: reconstructs the screen from service state alone. */
  async start(): Promise<void> {
    await this.guard(async () => {
      const { sources } = await this.client.listSources();
      this.state = { ...this.state, sources };
      this.paint();
    });
  }

  /** Action 1: the user enters a policy-relevant topic. */
  async submitTopic(topic: string): Promise<void> {
    await this.guard(async () => {
      const { recommended } = await this.client.recommendSources(topic);
      this.state = { ...this.state, topic, recommended, screen: "topic" };
      this.paint();
    });
  }

  /** Action 2: the user selects a data source. */
  async chooseSource(source: string): Promise<void> {
    await this.guard(async () => {
      const { themes } = await this.client.suggestThemes(source);
      this.state = { ...this.state, selectedSource: source, suggestions: themes, screen: "themes" };
      this.paint();
    });
  }

  /** Action 3: the user picks a suggested theme or a free-text one. */
  async chooseTheme(theme: string): Promise<void> {
    await this.guard(async () => {
      if (!this.state.selectedSource) throw new Error("choose a source first");
      const { run_id } = await this.client.startRun(
        this.state.topic,
        this.state.selectedSource,
        theme,
      );
      this.state = { ...this.state, selectedTheme: theme, runId: run_id, screen: "report" };
      this.paint();
      await this.watchRun(run_id);
    });
  }

  /**
   * Reconstruct the report screen for an existing run from service state
   * alone, so a full page reload mid-run loses nothing.
   */
  async resumeRun(runId: string): Promise<void> {
    await this.guard(async () => {
      const runState = await this.client.getRun(runId);
      this.state = {
        ...this.state,
        runId,
        runState,
        topic: runState.topic,
        selectedSource: runState.source,
        selectedTheme: runState.theme,
        screen: "report",
      };
      this.paint();
      await this.watchRun(runId);
    });
  }

  private async watchRun(runId: string): Promise<void> {
    const final = await pollRun(this.client, runId, {
      intervalMs: this.pollIntervalMs,
      onUpdate: (runState) => {
        this.state = { ...this.state, runState };
        this.paint();
      },
    });
    if (final.stage === "failed") {
      this.state = { ...this.state, error: final.error || "run failed" };
      this.paint();
      return;
    }
    const report = await this.client.getReport(runId);
    this.state = { ...this.state, report };
    this.paint();
  }

  toggle(group: string, theme: string, quoteId: string): void {
    this.state = toggleQuote(this.state, group, theme, quoteId);
    this.paint();
  }

  async download(): Promise<string | undefined> {
    return this.guard(async () => {
      if (!this.state.runId) throw new Error("no completed run to download");
      return this.client.downloadMarkdown(this.state.runId);
    });
  }
}
