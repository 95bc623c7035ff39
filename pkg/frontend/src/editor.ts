// Concept-map draft editing: pure local state until submitted; the server
// owns all syntax judgment and returns diagnostics we render inline.

import type { Diagnostic, MapDraft, MapLink, MapNode } from "./types.js";

export class MapEditor {
  private nodes: MapNode[] = [];
  private links: MapLink[] = [];
  private diagnostics: Diagnostic[] = [];

  constructor(
    public mapId: string = "draft",
    public topic: string = "",
  ) {}

  addNode(id: string, label: string): boolean {
    if (!id || this.nodes.some((n) => n.id === id)) return false;
    this.nodes.push({ id, label });
    return true;
  }

  removeNode(id: string): void {
    this.nodes = this.nodes.filter((n) => n.id !== id);
    this.links = this.links.filter((l) => l.source !== id && l.target !== id);
  }

  addLink(source: string, target: string, relation: string): boolean {
    if (!source || !target || !relation) return false;
    const duplicate = this.links.some(
      (l) => l.source === source && l.target === target && l.relation === relation,
    );
    if (duplicate) return false;
    this.links.push({ source, target, relation });
    return true;
  }

  removeLink(source: string, target: string, relation: string): void {
    this.links = this.links.filter(
      (l) => !(l.source === source && l.target === target && l.relation === relation),
    );
  }

  hasLink(source: string, target: string, relation: string): boolean {
    return this.links.some(
      (l) => l.source === source && l.target === target && l.relation === relation,
    );
  }

  draft(): MapDraft {
    return {
      map_id: this.mapId,
      topic: this.topic,
      nodes: [...this.nodes],
      links: [...this.links],
    };
  }

  loadDraft(draft: MapDraft): void {
    this.mapId = draft.map_id;
    this.topic = draft.topic;
    this.nodes = draft.nodes.map((n) => ({ ...n }));
    this.links = draft.links.map((l) => ({ ...l }));
    this.diagnostics = [];
  }

  setDiagnostics(diagnostics: Diagnostic[]): void {
    this.diagnostics = [...diagnostics];
  }

  get currentDiagnostics(): Diagnostic[] {
    return [...this.diagnostics];
  }

  /** Diagnostics attached to one node or link subject, for inline markers. */
  markersFor(subject: string): Diagnostic[] {
    return this.diagnostics.filter((d) => d.subject === subject);
  }

  get nodeCount(): number {
    return this.nodes.length;
  }

  get linkCount(): number {
    return this.links.length;
  }
}
