// Payload shapes mirroring the session service responses bit-for-bit.

export interface MapNode {
  id: string;
  label: string;
}

export interface MapLink {
  source: string;
  target: string;
  relation: string;
}

export interface MapDraft {
  map_id: string;
  topic: string;
  nodes: MapNode[];
  links: MapLink[];
}

export interface Diagnostic {
  code: string;
  severity: "error" | "warning";
  message: string;
  subject: string;
}

export interface EmotionEvent {
  holder: string;
  emotion: string;
  intensity: number;
  cause: string;
  t: number;
}

export interface TraceEvent {
  step: number;
  net: string;
  state_from: string;
  transition: string;
  task: string;
  outcome: string;
  timestamp: number;
  thread: string;
  emotions: EmotionEvent[];
}

export interface CreateSessionResponse {
  session_id: string;
  catalog_id: string;
  agent: string;
  emotion_events: EmotionEvent[];
}

export interface MapResponse {
  diagnostics: Diagnostic[];
  learned: boolean;
  emotion_events: EmotionEvent[];
}

export interface PracticeResponse {
  plan: string[] | null;
  no_solution: boolean;
  outcome: string;
  message?: string;
  emotion_events: EmotionEvent[];
}

export interface PathResponse {
  path: string[];
  net: string;
  first_goal: string;
}

export interface PathViolation {
  error: string;
  goal?: string;
  prerequisite?: string;
  message?: string;
}

export interface CatalogGoal {
  id: string;
  topic: string;
  difficulty: number;
  description: string;
  prerequisites: string[];
  covered_points: number[];
}

export interface Catalog {
  catalog_id: string;
  root_description: string;
  topics: string[];
  goals: CatalogGoal[];
}

export interface SessionState {
  session_id: string;
  now: number;
  emotions: { emotion: string; intensity: number }[];
  learned_points: number[];
  mistakes: number[];
  current_panel: string;
  path: string[];
  trace_length: number;
  hints: { point: number; title: string; scene_ref: string; t: number }[];
}

export type StreamEventKind = "trace" | "emotion";

export interface StreamMessage {
  id: number;
  kind: StreamEventKind;
  data: TraceEvent | EmotionEvent;
}
