// Integration against the real session service: boots the Python app and
// drives the same loop over actual HTTP, including a resumed event stream.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SessionApi } from "../src/api.js";
import { OSMOSIS_DRAFT } from "./fake_server.js";

const PORT = 8765;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;

async function waitForService(timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/catalogs`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("session service did not come up");
}

interface SseEvent {
  id: number;
  event: string;
  data: any;
}

function parseSse(text: string): SseEvent[] {
  const events: SseEvent[] = [];
  for (const block of text.split("\n\n")) {
    const lines = block.trim().split("\n").filter(Boolean);
    if (!lines.length || lines[0].startsWith(":")) continue;
    const entry: Record<string, string> = {};
    for (const line of lines) {
      const idx = line.indexOf(": ");
      if (idx > 0) entry[line.slice(0, idx)] = line.slice(idx + 2);
    }
    if ("id" in entry) {
      events.push({
        id: Number(entry.id),
        event: entry.event,
        data: JSON.parse(entry.data ?? "{}"),
      });
    }
  }
  return events;
}

async function readBacklog(token: string, lastEventId?: number): Promise<SseEvent[]> {
  const suffix = lastEventId === undefined ? "" : `&last_event_id=${lastEventId}`;
  const response = await fetch(`${BASE}/sessions/${token}/events?once=true${suffix}`);
  expect(response.status).toBe(200);
  return parseSse(await response.text());
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "tagent.service:app", "--port", String(PORT), "--log-level", "warning"],
    { cwd: "..", stdio: "ignore" },
  );
  await waitForService();
}, 30_000);

afterAll(() => {
  server?.kill();
});

describe("against the live session service", () => {
  it("runs the full teaching loop over HTTP", async () => {
    const api = new SessionApi(BASE);
    const created = await api.createSession("vs_transport_in_plants", 3);
    expect(created.agent).toBe("water_molecule");
    expect(created.emotion_events.map((e) => e.emotion)).toContain("joy");
    const token = created.session_id;

    const mapResponse = await api.submitMap(token, OSMOSIS_DRAFT);
    expect(mapResponse.diagnostics).toEqual([]);
    expect(mapResponse.learned).toBe(true);
    const mapEmotions = mapResponse.emotion_events.map((e) => e.emotion);
    expect(mapEmotions).toContain("happy_for");
    expect(mapEmotions).toContain("satisfaction"); // auto-practice kicked in

    const practice = await api.practice(token, "entering_root");
    expect(practice.no_solution).toBe(false);
    expect(practice.plan).toEqual(["enter_hole(osmosis)", "wait_for(rain)"]);

    const violation = await api.selectPath(token, ["osmosis_l3"]);
    expect("error" in violation && violation.error).toBe("prerequisite_violation");
    const accepted = await api.selectPath(token, ["osmosis_l1", "osmosis_l2"]);
    expect("path" in accepted && accepted.path).toEqual(["osmosis_l1", "osmosis_l2"]);

    // the push stream replays everything and resumes without gaps
    const backlog = await readBacklog(token);
    expect(backlog.length).toBeGreaterThan(10);
    expect(backlog.map((e) => e.id)).toEqual(backlog.map((_, i) => i));
    const kinds = new Set(backlog.map((e) => e.event));
    expect(kinds).toContain("trace");
    expect(kinds).toContain("emotion");

    const cut = Math.floor(backlog.length / 2) - 1;
    const resumed = await readBacklog(token, backlog[cut].id);
    expect(resumed[0].id).toBe(backlog[cut].id + 1);
    const union = [...backlog.slice(0, cut + 1), ...resumed];
    expect(union.map((e) => e.id)).toEqual(union.map((_, i) => i));

    const emotions = backlog
      .filter((e) => e.event === "emotion")
      .map((e) => e.data.emotion);
    expect(emotions).toContain("happy_for");
    expect(emotions).toContain("satisfaction");
  }, 30_000);
});
