/** Run polling: one in-flight poll per run, stops at terminal stages. */

import { RunStateDto, ServiceClient } from "./api.js";

export const TERMINAL_STAGES = ["complete", "failed"];

export type PollOptions = {
  intervalMs?: number;
  timeoutMs?: number;
  onUpdate?: (state: RunStateDto) => void;
  /** injectable for tests; defaults to real timers */
  sleep?: (ms: number) => Promise<void>;
};

const realSleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

/**
 * Poll until the run reaches a terminal stage. Resolves with the final
 * state for both outcomes; callers decide how to render a failure.
 */
export async function pollRun(
  client: ServiceClient,
  runId: string,
  options: PollOptions = {},
): Promise<RunStateDto> {
  const intervalMs = options.intervalMs ?? 1000;
  const timeoutMs = options.timeoutMs ?? 600_000;
  const sleep = options.sleep ?? realSleep;
  const startedAt = Date.now();

  for (;;) {
    const state = await client.getRun(runId);
    options.onUpdate?.(state);
    if (TERMINAL_STAGES.includes(state.stage)) {
      return state;
    }
    if (Date.now() - startedAt > timeoutMs) {
      throw new Error(`run ${runId} did not finish within ${timeoutMs}ms`);
    }
    await sleep(intervalMs);
  }
}
