// Learning-path picker: drag-order selection of catalog goals, confirmed
// through the service which owns all prerequisite checking.

import type { Catalog, CatalogGoal, PathResponse, PathViolation } from "./types.js";

export class PathPicker {
  private selections: string[] = [];
  violation: PathViolation | null = null;
  confirmed: string[] | null = null;

  constructor(readonly catalog: Catalog) {}

  get goals(): CatalogGoal[] {
    return [...this.catalog.goals];
  }

  select(goalId: string): boolean {
    if (!this.catalog.goals.some((g) => g.id === goalId)) return false;
    if (this.selections.includes(goalId)) return false;
    this.selections.push(goalId);
    this.violation = null;
    return true;
  }

  deselect(goalId: string): void {
    this.selections = this.selections.filter((g) => g !== goalId);
    this.violation = null;
  }

  get current(): string[] {
    return [...this.selections];
  }

  /** The confirm control stays disabled for an empty selection. */
  get canConfirm(): boolean {
    return this.selections.length > 0;
  }

  applyResult(result: PathResponse | PathViolation): void {
    if ("path" in result) {
      this.confirmed = [...result.path];
      this.violation = null;
    } else {
      this.confirmed = null;
      this.violation = result;
    }
  }

  /** Rendered banner text for a rejected path. */
  violationBanner(): string {
    if (!this.violation) return "";
    if (this.violation.error === "prerequisite_violation") {
      return `"${this.violation.goal}" needs "${this.violation.prerequisite}" first`;
    }
    return this.violation.message ?? this.violation.error;
  }
}
