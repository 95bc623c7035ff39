// The client-side session state: one store per session token, fed by the
// request/response payloads and the push channel (applied in event-id
// order). The UI never re-derives emotions or diagnostics locally.

import { SessionApi } from "./api.js";
import { MapEditor } from "./editor.js";
import { EmotionPanel } from "./emotions.js";
import { PathPicker } from "./paths.js";
import { PracticePlayback } from "./practice.js";
import { ConnectFn, EventStream } from "./stream.js";
import type {
  Catalog,
  EmotionEvent,
  MapResponse,
  PracticeResponse,
  StreamMessage,
  TraceEvent,
} from "./types.js";

export type PanelName = "editor" | "practice" | "paths";

export class SessionStore {
  token = "";
  agent = "";
  readonly editor = new MapEditor();
  readonly emotions = new EmotionPanel();
  readonly playback = new PracticePlayback();
  picker: PathPicker | null = null;
  traceFeed: TraceEvent[] = [];
  panelInView: PanelName = "editor";
  learned = false;
  private stream: EventStream | null = null;
  private listeners: (() => void)[] = [];

  constructor(
    private readonly api: SessionApi,
    private readonly connect: ConnectFn,
  ) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  async start(catalogId: string, seed = 0): Promise<void> {
    const catalogs = await this.api.catalogs();
    const catalog = catalogs.find((c: Catalog) => c.catalog_id === catalogId);
    if (!catalog) throw new Error(`unknown catalog ${catalogId}`);
    this.picker = new PathPicker(catalog);
    const created = await this.api.createSession(catalogId, seed);
    this.token = created.session_id;
    this.agent = created.agent;
    this.openStream();
    this.notify();
  }

  private openStream(): void {
    this.stream = new EventStream(
      (lastId) => this.api.eventsUrl(this.token, lastId),
      this.connect,
      (message) => this.applyStreamMessage(message),
      { reconnectDelayMs: 10 },
    );
    this.stream.start();
  }

  applyStreamMessage(message: StreamMessage): void {
    if (message.kind === "emotion") {
      const event = message.data as EmotionEvent;
      this.emotions.apply(event);
      this.playback.applyEmotion(event);
    } else {
      const record = message.data as TraceEvent;
      this.traceFeed.push(record);
      this.playback.applyTrace(record);
    }
    this.notify();
  }

  get lastEventId(): number | null {
    return this.stream?.lastId ?? null;
  }

  /** Drops the push connection; the stream resumes from the last id. */
  simulateDisconnect(): void {
    this.stream?.interrupt();
  }

  async submitMap(): Promise<MapResponse> {
    const response = await this.api.submitMap(this.token, this.editor.draft());
    this.editor.setDiagnostics(response.diagnostics);
    this.learned = response.learned;
    this.notify();
    return response;
  }

  async practice(goal: string): Promise<PracticeResponse> {
    this.panelInView = "practice";
    const response = await this.api.practice(this.token, goal);
    this.playback.begin(response);
    this.notify();
    return response;
  }

  async confirmPath(): Promise<void> {
    if (!this.picker || !this.picker.canConfirm) return;
    const result = await this.api.selectPath(this.token, this.picker.current);
    this.picker.applyResult(result);
    this.notify();
  }

  close(): void {
    this.stream?.close();
  }
}
