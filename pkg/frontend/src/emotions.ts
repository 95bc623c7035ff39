// Live emotion display: twelve glyphs, newest-event-wins intensities,
// events applied strictly in push-order.

import type { EmotionEvent } from "./types.js";

export const EMOTION_GLYPHS: Record<string, string> = {
  joy: "😊",
  distress: "😞",
  happy_for: "🥰",
  pity: "🥺",
  gloating: "😏",
  resentment: "😠",
  hope: "🤞",
  fear: "😨",
  satisfaction: "😌",
  disappointment: "😔",
  fears_confirmed: "😱",
  relief: "😮‍💨",
};

export interface EmotionRow {
  emotion: string;
  intensity: number;
  cause: string;
  glyph: string;
  bar: string;
}

const BAR_WIDTH = 12;

export function intensityBar(intensity: number): string {
  const filled = Math.round(Math.max(0, Math.min(1, intensity)) * BAR_WIDTH);
  return "█".repeat(filled) + "░".repeat(BAR_WIDTH - filled);
}

export class EmotionPanel {
  private rows = new Map<string, EmotionRow>();
  private history: EmotionEvent[] = [];

  apply(event: EmotionEvent): EmotionRow {
    const row: EmotionRow = {
      emotion: event.emotion,
      intensity: event.intensity,
      cause: event.cause,
      glyph: EMOTION_GLYPHS[event.emotion] ?? "❓",
      bar: intensityBar(event.intensity),
    };
    this.rows.set(event.emotion, row);
    this.history.push(event);
    return row;
  }

  /** Strongest-first rows for rendering. */
  list(): EmotionRow[] {
    return [...this.rows.values()].sort(
      (a, b) => b.intensity - a.intensity || a.emotion.localeCompare(b.emotion),
    );
  }

  timeline(): EmotionEvent[] {
    return [...this.history];
  }

  latest(): EmotionRow | null {
    const last = this.history[this.history.length - 1];
    return last ? this.rows.get(last.emotion) ?? null : null;
  }

  seen(emotion: string): boolean {
    return this.history.some((e) => e.emotion === emotion);
  }
}
