import { describe, expect, it, vi } from "vitest";

import { EventStream, type ConnectFn, type StreamCallbacks, type StreamHandle } from "../src/stream.js";
import type { StreamMessage } from "../src/types.js";

class ScriptedSource implements StreamHandle {
  closed = false;
  constructor(readonly callbacks: StreamCallbacks) {}
  emit(id: number, kind: "trace" | "emotion" = "trace"): void {
    this.callbacks.onEvent(kind, id, { id });
  }
  fail(): void {
    this.callbacks.onError?.(new Error("dropped"));
  }
  close(): void {
    this.closed = true;
  }
}

function harness() {
  const sources: ScriptedSource[] = [];
  const received: StreamMessage[] = [];
  const urls: (number | null)[] = [];
  const connect: ConnectFn = (_url, lastEventId, callbacks) => {
    urls.push(lastEventId);
    const source = new ScriptedSource(callbacks);
    sources.push(source);
    return source;
  };
  const stream = new EventStream(
    (lastId) => `fake://events?last=${lastId ?? ""}`,
    connect,
    (message) => received.push(message),
    { reconnectDelayMs: 1 },
  );
  return { stream, sources, received, urls };
}

describe("EventStream", () => {
  it("delivers contiguous events in order", () => {
    const { stream, sources, received } = harness();
    stream.start();
    sources[0].emit(0);
    sources[0].emit(1);
    sources[0].emit(2);
    expect(received.map((m) => m.id)).toEqual([0, 1, 2]);
    expect(stream.lastId).toBe(2);
  });

  it("ignores replayed events below the cursor", () => {
    const { stream, sources, received } = harness();
    stream.start();
    sources[0].emit(0);
    sources[0].emit(0);
    sources[0].emit(1);
    expect(received.map((m) => m.id)).toEqual([0, 1]);
  });

  it("reconnects from the last id after a drop, without gaps", async () => {
    vi.useFakeTimers();
    const { stream, sources, received, urls } = harness();
    stream.start();
    sources[0].emit(0);
    sources[0].emit(1);
    sources[0].fail();
    await vi.advanceTimersByTimeAsync(5);
    expect(sources).toHaveLength(2);
    expect(urls[1]).toBe(1); // resumed from the last seen id
    sources[1].emit(2);
    sources[1].emit(3);
    expect(received.map((m) => m.id)).toEqual([0, 1, 2, 3]);
    vi.useRealTimers();
  });

  it("treats an id gap as a broken connection and resumes", async () => {
    vi.useFakeTimers();
    const { stream, sources, received } = harness();
    stream.start();
    sources[0].emit(0);
    sources[0].emit(5); // a gap: 1..4 missing
    await vi.advanceTimersByTimeAsync(5);
    expect(sources).toHaveLength(2);
    sources[1].emit(1);
    sources[1].emit(2);
    expect(received.map((m) => m.id)).toEqual([0, 1, 2]);
    vi.useRealTimers();
  });

  it("stops delivering after close", () => {
    const { stream, sources, received } = harness();
    stream.start();
    sources[0].emit(0);
    stream.close();
    sources[0].emit(1);
    expect(received.map((m) => m.id)).toEqual([0]);
  });
});
