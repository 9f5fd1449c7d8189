/**
 * View model and renderer for the four-screen flow:
 *   1. enter a topic, see recommended sources
 *   2. pick a source, see nine theme suggestions plus free-text search
 *   3. run progress, then the ranked report tree
 *   4. expanded quote rows with full text and source ids
 *
 * Rendering is pure string templating over the state; counts and ratios
 * are echoed exactly as the service sent them, never recomputed here.
 */

import { ReportDto, RunStateDto, SourceInfo, ThemeSuggestion } from "./api.js";

export type Screen = "topic" | "themes" | "report";

export type AppState = {
  screen: Screen;
  topic: string;
  recommended: string[];
  sources: SourceInfo[];
  selectedSource: string | null;
  suggestions: ThemeSuggestion[];
  selectedTheme: string | null;
  runId: string | null;
  runState: RunStateDto | null;
  report: ReportDto | null;
  expandedQuotes: Set<string>;
  error: string | null;
};

export function initialState(): AppState {
  return {
    screen: "topic",
    topic: "",
    recommended: [],
    sources: [],
    selectedSource: null,
    suggestions: [],
    selectedTheme: null,
    runId: null,
    runState: null,
    report: null,
    expandedQuotes: new Set(),
    error: null,
  };
}

const quoteKey = (group: string, theme: string, quoteId: string) =>
  `${group}|${theme}|${quoteId}`;

export function toggleQuote(state: AppState, group: string, theme: string, quoteId: string): AppState {
  const expanded = new Set(state.expandedQuotes);
  const key = quoteKey(group, theme, quoteId);
  if (expanded.has(key)) {
    expanded.delete(key);
  } else {
    expanded.add(key);
  }
  return { ...state, expandedQuotes: expanded };
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function renderError(state: AppState): string {
  if (!state.error) return "";
  return `<div class="error" role="alert">${escapeHtml(state.error)} <button data-action="retry">Retry</button></div>`;
}

function renderTopicScreen(state: AppState): string {
  const recommendations = state.recommended
    .map(
      (name) =>
        `<li><button data-action="choose-source" data-source="${escapeHtml(name)}">${escapeHtml(name)}</button></li>`,
    )
    .join("");
  const uploads = state.sources
    .filter((s) => s.has_data && !state.recommended.includes(s.name))
    .map(
      (s) =>
        `<li><button data-action="choose-source" data-source="${escapeHtml(s.name)}">${escapeHtml(s.name)}</button> <small>(${escapeHtml(s.kind ?? "forum")})</small></li>`,
    )
    .join("");
  return `
<section id="view-topic">
  <h1>What do you want to research?</h1>
  <form data-action="submit-topic">
    <input name="topic" placeholder="e.g. the economic impact of AI" value="${escapeHtml(state.topic)}" />
    <button type="submit">Recommend sources</button>
  </form>
  <ul id="recommended-sources">${recommendations}</ul>
  <ul id="available-datasets">${uploads}</ul>
</section>`;
}

function renderThemeScreen(state: AppState): string {
  const grid = state.suggestions
    .map(
      (s) => `
  <li class="theme-card">
    <button data-action="choose-theme" data-theme="${escapeHtml(s.title)}">${escapeHtml(s.title)}</button>
    <p>${escapeHtml(s.description)}</p>
  </li>`,
    )
    .join("");
  return `
<section id="view-themes">
  <h1>Pick a theme for ${escapeHtml(state.selectedSource ?? "")}</h1>
  <ul id="theme-grid">${grid}</ul>
  <form data-action="search-theme">
    <input name="custom-theme" placeholder="or search your own theme" />
    <button type="submit">Analyze this theme</button>
  </form>
</section>`;
}

function renderProgress(state: AppState): string {
  const run = state.runState;
  if (!run) return "<p>Starting run…</p>";
  const total = run.progress_total || 1;
  return `
<div id="run-progress">
  <p>Stage: <strong>${escapeHtml(run.stage)}</strong> (${run.progress_done}/${run.progress_total})</p>
  <progress max="${total}" value="${run.progress_done}"></progress>
</div>`;
}

function renderReport(state: AppState): string {
  const report = state.report;
  if (!report) return renderProgress(state);
  const sections = report.groups
    .map((group) => {
      const rows = group.themes
        .map((theme) => {
          const expandedRows = theme.member_refs
            .filter((ref) =>
              state.expandedQuotes.has(quoteKey(group.group_id, theme.title, ref.quote_id)),
            )
            .map(
              (ref) => `
      <blockquote class="full-quote" data-quote-id="${escapeHtml(ref.quote_id)}">
        <p>${escapeHtml(ref.quote_text)}</p>
        <footer>source: <a data-source-link="${escapeHtml(ref.source_id)}">${escapeHtml(
          ref.community ? `${ref.community}/${ref.source_id}` : ref.source_id,
        )}</a></footer>
      </blockquote>`,
            )
            .join("");
          const summaries = theme.member_refs
            .map(
              (ref) => `
      <li class="quote-summary">
        <button data-action="toggle-quote" data-group="${escapeHtml(group.group_id)}"
                data-theme="${escapeHtml(theme.title)}" data-quote="${escapeHtml(ref.quote_id)}">
          ${escapeHtml(ref.summary)}
        </button>
      </li>`,
            )
            .join("");
          return `
    <li class="theme-row" data-theme="${escapeHtml(theme.title)}">
      <span class="theme-title">${escapeHtml(theme.title)}</span>
      <span class="theme-count">${theme.count}</span>
      <span class="theme-ratio">${escapeHtml(theme.percent)}%</span>
      <ul class="summaries">${summaries}</ul>
      ${expandedRows}
    </li>`;
        })
        .join("");
      return `
  <section class="group" data-group="${escapeHtml(group.group_id)}">
    <h2>${escapeHtml(group.group_name)} (${group.total_quotes} quotes)</h2>
    <ul class="theme-rows">${rows || "<li class='no-themes'>No themes for this group.</li>"}</ul>
  </section>`;
    })
    .join("");
  return `
<section id="view-report">
  <h1>Report: ${escapeHtml(report.topic)}</h1>
  <p>Source: ${escapeHtml(report.source)} · pipeline ${escapeHtml(report.pipeline_version)}</p>
  <button data-action="download" id="download-report">Download markdown</button>
  ${sections}
</section>`;
}

export function render(state: AppState): string {
  const body =
    state.screen === "topic"
      ? renderTopicScreen(state)
      : state.screen === "themes"
        ? renderThemeScreen(state)
        : renderReport(state);
  return `${renderError(state)}${body}`;
}
