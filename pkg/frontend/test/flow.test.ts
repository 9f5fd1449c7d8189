/** End-to-end flow against a scripted service: Actions 1 -> 2 -> 3. */

import { describe, expect, it } from "vitest";

import { ReportDto, RunStateDto, ServiceClient } from "../src/api.js";
import { AppController } from "../src/controller.js";
import { pollRun } from "../src/poll.js";
import { initialState, render, toggleQuote } from "../src/view.js";

const THEMES = [
  { title: "Job Displacement Concerns", percent: "34.90", count: 229 },
  { title: "Productivity Gains", percent: "15.20", count: 100 },
  { title: "Specific Industries", percent: "14.90", count: 98 },
  { title: "Broader Economic Impact", percent: "7.00", count: 46 },
  { title: "Future Job Market", percent: "6.10", count: 40 },
  { title: "Creative Work", percent: "5.20", count: 34 },
  { title: "Inequality", percent: "4.60", count: 30 },
  { title: "Mixed Feelings", percent: "3.70", count: 24 },
];

function scriptedReport(): ReportDto {
  return {
    run_id: "run-1",
    topic: "the economic impact of AI",
    source: "synthsub000",
    pipeline_version: "0.1.0",
    generated_at: "2024-01-01T00:00:00+00:00",
    notes: [],
    groups: [
      {
        group_id: "main",
        group_name: "Personal impact",
        total_quotes: 601,
        themes: THEMES.map((t, i) => ({
          title: t.title,
          description: `what people say about ${t.title.toLowerCase()}`,
          count: t.count,
          ratio: `${t.count}/601`,
          percent: t.percent,
          quotes: [],
          member_refs: [
            {
              quote_id: `q${i}:0`,
              quote_text: `full verbatim quote about ${t.title.toLowerCase()} with detail`,
              summary: `short gloss ${i}`,
              source_id: `src00${i}`,
              community: "synthsub000",
            },
          ],
        })),
      },
    ],
  };
}

type Script = {
  runPolls: RunStateDto[];
  fetchLog: string[];
};

function scriptedFetch(script: Script) {
  const report = scriptedReport();
  return async (input: string, init?: RequestInit): Promise<Response> => {
    script.fetchLog.push(input);
    const json = (body: unknown, status = 200) =>
      new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
      });

    if (input.endsWith("/topics/recommend-sources")) {
      const body = JSON.parse(String(init?.body)) as { topic: string };
      return json({ topic: body.topic, recommended: ["synthsub000", "synthsub003"] });
    }
    if (input.endsWith("/sources")) {
      return json({
        sources: [
          { name: "synthsub000", members: 1000, kind: "forum", has_data: true },
          { name: "synthsub003", members: 400, kind: "forum", has_data: true },
        ],
      });
    }
    if (input.includes("/sources/") && input.endsWith("/themes")) {
      return json({
        source: "synthsub000",
        themes: Array.from({ length: 9 }, (_, i) => ({
          title: `Suggestion ${i}`,
          description: `pitch ${i}`,
        })),
      });
    }
    if (input.endsWith("/runs") && init?.method === "POST") {
      return json({ run_id: "run-1" }, 201);
    }
    if (input.endsWith("/report/download?format=markdown")) {
      return new Response("# Thematic report: the economic impact of AI\n", {
        status: 200,
        headers: { "Content-Type": "text/markdown" },
      });
    }
    if (input.endsWith("/runs/run-1/report")) {
      return json(report);
    }
    if (input.endsWith("/runs/run-1")) {
      const next = script.runPolls.length > 1 ? script.runPolls.shift()! : script.runPolls[0];
      return json(next);
    }
    return json({ detail: `unscripted route ${input}` }, 404);
  };
}

function runStates(): RunStateDto[] {
  const base = {
    run_id: "run-1",
    topic: "the economic impact of AI",
    source: "synthsub000",
    theme: "Suggestion 0",
    quotes_processed: 0,
    quotes_per_minute: 0,
    error: "",
  };
  return [
    { ...base, stage: "extracting", progress_done: 3, progress_total: 12 },
    { ...base, stage: "analyzing", progress_done: 12, progress_total: 12 },
    {
      ...base,
      stage: "complete",
      progress_done: 12,
      progress_total: 12,
      quotes_processed: 601,
      quotes_per_minute: 120,
    },
  ];
}

function makeApp(script: Script) {
  const client = new ServiceClient("http://svc", scriptedFetch(script));
  const frames: string[] = [];
  const controller = new AppController(client, (html) => frames.push(html), 1);
  return { client, controller, frames };
}

describe("interactive flow", () => {
  it("walks Actions 1, 2, 3 to a rendered report", async () => {
    const script: Script = { runPolls: runStates(), fetchLog: [] };
    const { controller, frames } = makeApp(script);

    await controller.start();
    expect(frames.at(-1)).toContain("What do you want to research?");

    await controller.submitTopic("the economic impact of AI");
    expect(frames.at(-1)).toContain("synthsub000");
    expect(frames.at(-1)).toContain("synthsub003");

    await controller.chooseSource("synthsub000");
    const themeScreen = frames.at(-1)!;
    expect(themeScreen).toContain("theme-grid");
    expect((themeScreen.match(/theme-card/g) ?? []).length).toBe(9);
    expect(themeScreen).toContain("or search your own theme");

    await controller.chooseTheme("Suggestion 0");
    const reportScreen = frames.at(-1)!;
    expect(reportScreen).toContain("Report: the economic impact of AI");

    // one row per theme, ratios byte-equal to the payload
    for (const t of THEMES) {
      expect(reportScreen).toContain(`<span class="theme-title">${t.title}</span>`);
      expect(reportScreen).toContain(`<span class="theme-ratio">${t.percent}%</span>`);
      expect(reportScreen).toContain(`<span class="theme-count">${t.count}</span>`);
    }
    expect((reportScreen.match(/class="theme-row"/g) ?? []).length).toBe(THEMES.length);
  });

  it("free-text theme search starts a run with the custom theme", async () => {
    const script: Script = { runPolls: runStates(), fetchLog: [] };
    const { controller } = makeApp(script);
    await controller.submitTopic("gig work");
    await controller.chooseSource("synthsub000");
    await controller.chooseTheme("gig work");
    expect(controller.state.selectedTheme).toBe("gig work");
    expect(controller.state.report).not.toBeNull();
  });

  it("expanding a summary row reveals the full quote and source id", async () => {
    const script: Script = { runPolls: runStates(), fetchLog: [] };
    const { controller, frames } = makeApp(script);
    await controller.submitTopic("t");
    await controller.chooseSource("synthsub000");
    await controller.chooseTheme("Suggestion 0");

    const collapsed = frames.at(-1)!;
    expect(collapsed).toContain("short gloss 0");
    expect(collapsed).not.toContain("full verbatim quote about job displacement");

    const ref = controller.state.report!.groups[0].themes[0].member_refs[0];
    controller.toggle("main", "Job Displacement Concerns", ref.quote_id);
    const expanded = frames.at(-1)!;
    expect(expanded).toContain(ref.quote_text);
    expect(expanded).toContain(ref.source_id);

    controller.toggle("main", "Job Displacement Concerns", ref.quote_id);
    expect(frames.at(-1)).not.toContain(ref.quote_text);
  });

  it("download retrieves the markdown export", async () => {
    const script: Script = { runPolls: runStates(), fetchLog: [] };
    const { controller } = makeApp(script);
    await controller.submitTopic("t");
    await controller.chooseSource("synthsub000");
    await controller.chooseTheme("Suggestion 0");
    const markdown = await controller.download();
    expect(markdown).toContain("# Thematic report");
  });

  it("rendering and expansion are pure functions of state", () => {
    let state = initialState();
    state = { ...state, screen: "report", report: scriptedReport() };
    const once = render(state);
    const twice = render(state);
    expect(once).toBe(twice);
    const toggled = toggleQuote(state, "main", "Job Displacement Concerns", "q0:0");
    expect(render(toggled)).not.toBe(once);
    expect(render(toggleQuote(toggled, "main", "Job Displacement Concerns", "q0:0"))).toBe(once);
  });
});

describe("polling", () => {
  it("ceases at terminal stages", async () => {
    const script: Script = { runPolls: runStates(), fetchLog: [] };
    const client = new ServiceClient("http://svc", scriptedFetch(script));
    const seen: string[] = [];
    const final = await pollRun(client, "run-1", {
      intervalMs: 1,
      onUpdate: (s) => seen.push(s.stage),
      sleep: () => Promise.resolve(),
    });
    expect(final.stage).toBe("complete");
    expect(seen).toEqual(["extracting", "analyzing", "complete"]);
    const pollCalls = script.fetchLog.filter((u) => u.endsWith("/runs/run-1")).length;
    expect(pollCalls).toBe(3); // no polls after the terminal stage
  });

  it("surfaces failed runs with the error detail", async () => {
    const states = runStates();
    states[2] = { ...states[2], stage: "failed", error: "extraction blew up" };
    const script: Script = { runPolls: states, fetchLog: [] };
    const { controller, frames } = makeApp(script);
    await controller.submitTopic("t");
    await controller.chooseSource("synthsub000");
    await controller.chooseTheme("Suggestion 0");
    expect(controller.state.error).toBe("extraction blew up");
    expect(frames.at(-1)).toContain("extraction blew up");
    expect(frames.at(-1)).toContain("Retry");
  });
});

describe("stateless reload", () => {
  it("resumeRun reconstructs the report view from service state alone", async () => {
    // fresh controller, no prior in-memory state; the run is already complete
    const states = runStates();
    const script: Script = { runPolls: [states[2]], fetchLog: [] };
    const { controller, frames } = makeApp(script);
    await controller.resumeRun("run-1");
    expect(controller.state.error).toBeNull();
    expect(controller.state.topic).toBe("the economic impact of AI");
    expect(controller.state.selectedSource).toBe("synthsub000");
    expect(controller.state.report).not.toBeNull();
    const html = frames.at(-1)!;
    expect(html).toContain("Report: the economic impact of AI");
    expect((html.match(/class="theme-row"/g) ?? []).length).toBe(THEMES.length);
  });

  it("resumeRun keeps polling an in-flight run until it completes", async () => {
    const script: Script = { runPolls: runStates(), fetchLog: [] };
    const { controller } = makeApp(script);
    await controller.resumeRun("run-1");
    expect(controller.state.report).not.toBeNull();
    expect(controller.state.runState?.stage).toBe("complete");
  });
});
