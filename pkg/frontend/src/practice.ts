// Practice playback: the returned plan steps plus the emotion spikes that
// arrive over the push channel, plotted against virtual time.

import type { EmotionEvent, PracticeResponse, TraceEvent } from "./types.js";

export interface PlaybackFrame {
  kind: "step" | "alert";
  label: string;
  t: number | null;
}

export interface TimelinePoint {
  t: number;
  emotion: string;
  intensity: number;
}

export class PracticePlayback {
  frames: PlaybackFrame[] = [];
  timeline: TimelinePoint[] = [];
  outcome: string = "";
  message: string = "";

  begin(response: PracticeResponse): void {
    this.frames = [];
    // seed from the response; push-channel duplicates are dropped on apply
    this.timeline = response.emotion_events.map((e) => ({
      t: e.t,
      emotion: e.emotion,
      intensity: e.intensity,
    }));
    this.outcome = response.outcome;
    this.message = response.message ?? "";
    if (response.no_solution || response.plan === null) {
      this.frames.push({
        kind: "alert",
        label: this.message || "no solution; teach me more",
        t: null,
      });
      return;
    }
    for (const step of response.plan) {
      this.frames.push({ kind: "step", label: step, t: null });
    }
  }

  /** Stamp plan frames with the execution times from the trace feed. */
  applyTrace(record: TraceEvent): void {
    if (record.net !== "practice") return;
    if (record.task === "execute_plan") {
      for (const frame of this.frames) {
        if (frame.kind === "step" && frame.t === null) frame.t = record.timestamp;
      }
    }
  }

  applyEmotion(event: EmotionEvent): void {
    const duplicate = this.timeline.some(
      (p) => p.t === event.t && p.emotion === event.emotion && p.intensity === event.intensity,
    );
    if (!duplicate) {
      this.timeline.push({ t: event.t, emotion: event.emotion, intensity: event.intensity });
    }
  }

  spike(emotion: string): TimelinePoint | undefined {
    return this.timeline.find((p) => p.emotion === emotion);
  }

  get succeeded(): boolean {
    return this.outcome === "success";
  }
}
