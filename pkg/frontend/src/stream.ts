// Resumable push-channel client.
//
// Events carry monotone ids; on any disconnect the client reconnects with
// the last seen id so the stream continues without gaps or duplicates. A
// surprising id (gap or replay) forces a clean reconnect from the last
// known-good position.

import type { StreamEventKind, StreamMessage } from "./types.js";

export interface StreamHandle {
  close(): void;
}

export interface StreamCallbacks {
  onEvent(kind: StreamEventKind, id: number, data: unknown): void;
  onError?(err: unknown): void;
}

/** Opens one physical connection; resolved by the environment (native
 * EventSource in the browser, a fake in tests). */
export type ConnectFn = (
  url: string,
  lastEventId: number | null,
  callbacks: StreamCallbacks,
) => StreamHandle;

export interface EventStreamOptions {
  reconnectDelayMs?: number;
  maxReconnects?: number;
}

export class EventStream {
  private lastEventId: number | null = null;
  private handle: StreamHandle | null = null;
  private closed = false;
  private reconnects = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly urlFor: (lastEventId: number | null) => string,
    private readonly connect: ConnectFn,
    private readonly onMessage: (message: StreamMessage) => void,
    private readonly options: EventStreamOptions = {},
  ) {}

  get lastId(): number | null {
    return this.lastEventId;
  }

  start(): void {
    if (this.closed) return;
    const url = this.urlFor(this.lastEventId);
    this.handle = this.connect(url, this.lastEventId, {
      onEvent: (kind, id, data) => this.receive(kind, id, data),
      onError: () => this.scheduleReconnect(),
    });
  }

  private receive(kind: StreamEventKind, id: number, data: unknown): void {
    if (this.closed) return;
    const expected = this.lastEventId === null ? 0 : this.lastEventId + 1;
    if (id < expected) {
      return; // replayed event we already applied
    }
    if (id > expected) {
      // a gap: drop the connection and resume from the last good id
      this.scheduleReconnect();
      return;
    }
    this.lastEventId = id;
    this.onMessage({ id, kind, data } as StreamMessage);
  }

  private scheduleReconnect(): void {
    if (this.closed) return;
    this.handle?.close();
    this.handle = null;
    const max = this.options.maxReconnects ?? Infinity;
    if (this.reconnects >= max) return;
    this.reconnects += 1;
    const delay = this.options.reconnectDelayMs ?? 250;
    this.timer = setTimeout(() => this.start(), delay);
  }

  /** Simulates or reacts to a dropped connection. */
  interrupt(): void {
    this.scheduleReconnect();
  }

  close(): void {
    this.closed = true;
    if (this.timer !== null) clearTimeout(this.timer);
    this.handle?.close();
    this.handle = null;
  }
}

/** ConnectFn backed by the browser's native EventSource. */
export const eventSourceConnect: ConnectFn = (url, _lastEventId, callbacks) => {
  const source = new EventSource(url);
  const forward = (kind: StreamEventKind) => (event: MessageEvent) => {
    callbacks.onEvent(kind, Number(event.lastEventId), JSON.parse(event.data));
  };
  source.addEventListener("trace", forward("trace"));
  source.addEventListener("emotion", forward("emotion"));
  source.onerror = (err) => callbacks.onError?.(err);
  return { close: () => source.close() };
};
