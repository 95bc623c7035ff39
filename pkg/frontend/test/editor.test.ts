import { describe, expect, it } from "vitest";

import { MapEditor } from "../src/editor.js";

describe("MapEditor", () => {
  it("adds nodes and links into the draft", () => {
    const editor = new MapEditor("m1", "osmosis_diffusion");
    expect(editor.addNode("water", "water")).toBe(true);
    expect(editor.addNode("root", "entering_root")).toBe(true);
    expect(editor.addLink("water", "root", "moves_by_osmosis_to")).toBe(true);
    const draft = editor.draft();
    expect(draft.nodes).toHaveLength(2);
    expect(draft.links).toContainEqual({
      source: "water",
      target: "root",
      relation: "moves_by_osmosis_to",
    });
  });

  it("rejects duplicate node ids and duplicate links", () => {
    const editor = new MapEditor();
    editor.addNode("a", "A");
    expect(editor.addNode("a", "again")).toBe(false);
    editor.addNode("b", "B");
    editor.addLink("a", "b", "causes");
    expect(editor.addLink("a", "b", "causes")).toBe(false);
    expect(editor.linkCount).toBe(1);
  });

  it("removing a node drops its links", () => {
    const editor = new MapEditor();
    editor.addNode("a", "A");
    editor.addNode("b", "B");
    editor.addLink("a", "b", "causes");
    editor.removeNode("b");
    expect(editor.nodeCount).toBe(1);
    expect(editor.linkCount).toBe(0);
  });

  it("attaches diagnostics as inline markers by subject", () => {
    const editor = new MapEditor();
    editor.addNode("a", "A");
    editor.addLink("a", "ghost", "enables");
    editor.setDiagnostics([
      {
        code: "DanglingEndpoint",
        severity: "error",
        message: "link references undeclared node 'ghost'",
        subject: "ghost",
      },
    ]);
    expect(editor.markersFor("ghost")).toHaveLength(1);
    expect(editor.markersFor("a")).toHaveLength(0);
  });
});
