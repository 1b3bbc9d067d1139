/**
 * Comparison view controller: selection, loading, sharing and export.
 *
 * The controller performs no table math; it holds exactly what the API
 * returned. Stale responses are discarded by request sequence number, and
 * exports stream the API's bytes through untouched.
 */

import { ApiClient } from "./api.js";
import type { ComparisonTable, ExportFormat } from "./types.js";

export interface ShareResult {
  shortId: string;
  url: string;
}

export class ComparisonController {
  private readonly selection: string[] = [];
  private sequence = 0;
  private appliedSequence = 0;
  table: ComparisonTable | null = null;
  shortId: string | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly shareBaseUrl: string,
    private threshold?: number,
  ) {}

  get selected(): readonly string[] {
    return this.selection;
  }

  get canCompare(): boolean {
    return this.selection.length >= 2;
  }

  toggle(contributionId: string): void {
    const index = this.selection.indexOf(contributionId);
    if (index >= 0) {
      this.selection.splice(index, 1);
    } else {
      this.selection.push(contributionId);
    }
  }

  setThreshold(threshold: number | undefined): void {
    this.threshold = threshold;
  }

  /**
   * Fetch the comparison for the current selection. Returns the table, or
   * null when the response was superseded by a newer request.
   */
  async load(): Promise<ComparisonTable | null> {
    if (!this.canCompare) {
      throw new Error("select at least two contributions to compare");
    }
    const requestSequence = ++this.sequence;
    const table = await this.client.getComparison([...this.selection], this.threshold);
    if (requestSequence < this.appliedSequence) {
      return null; // a newer response already landed
    }
    this.appliedSequence = requestSequence;
    this.table = table;
    this.shortId = null;
    return table;
  }

  /** Persist the current selection and return the shareable link. */
  async share(): Promise<ShareResult> {
    if (!this.canCompare) {
      throw new Error("select at least two contributions to share");
    }
    const shortId = await this.client.saveComparison([...this.selection], this.threshold);
    this.shortId = shortId;
    return { shortId, url: this.shareUrl(shortId) };
  }

  shareUrl(shortId: string): string {
    return `${this.shareBaseUrl.replace(/\/$/, "")}/#/comparisons/${shortId}`;
  }

  /** Open a shared comparison in this session (e.g. from a share link). */
  async openShared(shortId: string): Promise<ComparisonTable> {
    const table = await this.client.getSavedComparison(shortId);
    this.appliedSequence = ++this.sequence;
    this.table = table;
    this.shortId = shortId;
    this.selection.length = 0;
    this.selection.push(...table.contributions.map((c) => c.id));
    return table;
  }

  /** Export bytes come straight from the API; no client-side re-rendering. */
  async exportAs(format: ExportFormat): Promise<Uint8Array> {
    if (this.shortId === null) {
      await this.share();
    }
    if (this.shortId === null) {
      throw new Error("sharing failed; cannot export");
    }
    return this.client.exportComparison(this.shortId, format);
  }
}

export function parseShareFragment(hash: string): string | null {
  const match = /^#\/comparisons\/([0-9A-Za-z]+)$/.exec(hash);
  return match?.[1] ?? null;
}
