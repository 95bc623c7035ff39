import { describe, expect, it } from "vitest";

import { EMOTION_GLYPHS, EmotionPanel, intensityBar } from "../src/emotions.js";
import { PathPicker } from "../src/paths.js";
import { PracticePlayback } from "../src/practice.js";
import type { Catalog } from "../src/types.js";

const CATALOG: Catalog = {
  catalog_id: "c",
  root_description: "",
  topics: ["t"],
  goals: [
    { id: "g1", topic: "t", difficulty: 1, description: "", prerequisites: [], covered_points: [1] },
    { id: "g2", topic: "t", difficulty: 2, description: "", prerequisites: ["g1"], covered_points: [2] },
  ],
};

describe("EmotionPanel", () => {
  it("covers all twelve emotion glyphs", () => {
    expect(Object.keys(EMOTION_GLYPHS)).toHaveLength(12);
  });

  it("keeps the strongest emotion first", () => {
    const panel = new EmotionPanel();
    panel.apply({ holder: "a", emotion: "joy", intensity: 0.3, cause: "x", t: 1 });
    panel.apply({ holder: "a", emotion: "fear", intensity: 0.9, cause: "y", t: 2 });
    expect(panel.list()[0].emotion).toBe("fear");
    expect(panel.latest()?.emotion).toBe("fear");
  });

  it("renders a proportional intensity bar", () => {
    expect(intensityBar(0)).toBe("░".repeat(12));
    expect(intensityBar(1)).toBe("█".repeat(12));
    expect(intensityBar(0.5).split("█").length - 1).toBe(6);
  });
});

describe("PathPicker", () => {
  it("keeps the confirm control disabled for an empty selection", () => {
    const picker = new PathPicker(CATALOG);
    expect(picker.canConfirm).toBe(false);
    picker.select("g1");
    expect(picker.canConfirm).toBe(true);
  });

  it("rejects duplicates and unknown goals locally", () => {
    const picker = new PathPicker(CATALOG);
    expect(picker.select("g1")).toBe(true);
    expect(picker.select("g1")).toBe(false);
    expect(picker.select("ghost")).toBe(false);
  });

  it("renders a violation banner naming the offending pair", () => {
    const picker = new PathPicker(CATALOG);
    picker.select("g2");
    picker.applyResult({ error: "prerequisite_violation", goal: "g2", prerequisite: "g1" });
    expect(picker.violationBanner()).toContain("g2");
    expect(picker.violationBanner()).toContain("g1");
    expect(picker.confirmed).toBeNull();
  });

  it("stores the confirmed path", () => {
    const picker = new PathPicker(CATALOG);
    picker.select("g1");
    picker.applyResult({ path: ["g1"], net: "n", first_goal: "g1" });
    expect(picker.confirmed).toEqual(["g1"]);
    expect(picker.violationBanner()).toBe("");
  });
});

describe("PracticePlayback", () => {
  it("renders plan steps as frames", () => {
    const playback = new PracticePlayback();
    playback.begin({
      plan: ["enter_hole(osmosis)", "wait_for(rain)"],
      no_solution: false,
      outcome: "success",
      emotion_events: [],
    });
    expect(playback.frames.map((f) => f.label)).toEqual([
      "enter_hole(osmosis)",
      "wait_for(rain)",
    ]);
    expect(playback.succeeded).toBe(true);
  });

  it("renders an alert frame with the teach-more prompt on no solution", () => {
    const playback = new PracticePlayback();
    playback.begin({
      plan: null,
      no_solution: true,
      outcome: "no_solution",
      message: "no solution found; please teach me more",
      emotion_events: [],
    });
    expect(playback.frames).toHaveLength(1);
    expect(playback.frames[0].kind).toBe("alert");
    expect(playback.frames[0].label).toContain("teach me more");
  });

  it("collects emotion spikes on the timeline", () => {
    const playback = new PracticePlayback();
    playback.begin({ plan: ["a"], no_solution: false, outcome: "success", emotion_events: [] });
    playback.applyEmotion({ holder: "x", emotion: "satisfaction", intensity: 0.9, cause: "done", t: 3.5 });
    expect(playback.spike("satisfaction")?.t).toBe(3.5);
  });
});
