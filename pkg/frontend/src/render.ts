/**
 * HTML renderers. Pure string functions so the pass-through property is
 * testable without a browser: every value on screen comes verbatim from an
 * API payload.
 */

import type {
  ComparisonTable,
  SimilarResult,
  StatementRecord,
  Subgraph,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export const MULTI_VALUE_SEPARATOR = "; ";

export function renderComparisonTable(table: ComparisonTable): string {
  const header = table.contributions
    .map((c) => `<th scope="col" data-contribution="${escapeHtml(c.id)}">${escapeHtml(c.label)}</th>`)
    .join("");
  const rows = table.groups
    .map((group) => {
      const cells = group.cells
        .map((cell) => `<td>${escapeHtml(cell.join(MULTI_VALUE_SEPARATOR))}</td>`)
        .join("");
      const frequency = `${Math.round(group.frequency * 100)}%`;
      return (
        `<tr data-frequency="${group.frequency}">` +
        `<th scope="row">${escapeHtml(group.label)} <small>${frequency}</small></th>` +
        cells +
        "</tr>"
      );
    })
    .join("");
  return (
    '<table class="comparison-table">' +
    `<thead><tr><th scope="col">Property</th>${header}</tr></thead>` +
    `<tbody>${rows}</tbody>` +
    "</table>"
  );
}

export interface Crumb {
  label: string;
  href: string;
}

export function renderBreadcrumbs(trail: Crumb[]): string {
  const items = trail
    .map((crumb, index) => {
      const label = escapeHtml(crumb.label);
      if (index === trail.length - 1) {
        return `<li aria-current="page">${label}</li>`;
      }
      return `<li><a href="${escapeHtml(crumb.href)}">${label}</a></li>`;
    })
    .join("");
  return `<nav class="breadcrumbs" aria-label="Breadcrumb"><ol>${items}</ol></nav>`;
}

function renderStatement(statement: StatementRecord): string {
  return (
    `<li data-statement="${escapeHtml(statement.id)}">` +
    `${escapeHtml(statement.subject)} &rarr; ${escapeHtml(statement.predicate)} ` +
    `&rarr; ${escapeHtml(statement.object)}</li>`
  );
}

/** Collapsible live view of the graph being edited. */
export function renderSubgraphPreview(subgraph: Subgraph, collapsed: boolean): string {
  const items = subgraph.statements.map(renderStatement).join("");
  return (
    `<details class="subgraph-preview"${collapsed ? "" : " open"}>` +
    `<summary>Graph preview (${subgraph.statements.length} statements)</summary>` +
    `<ul>${items}</ul></details>`
  );
}

export function renderSimilarList(results: SimilarResult[]): string {
  const items = results
    .map(
      (r) =>
        `<li data-contribution="${escapeHtml(r.id)}">` +
        `<a href="#/contributions/${escapeHtml(r.id)}">${escapeHtml(r.label)}</a>` +
        ` <span class="score">${r.score.toFixed(3)}</span></li>`,
    )
    .join("");
  return `<ol class="similar-list">${items}</ol>`;
}

export function renderAutocomplete(options: Array<{ id: string; label: string }>): string {
  const items = options
    .map(
      (option) =>
        `<li role="option" data-id="${escapeHtml(option.id)}" tabindex="0">` +
        `${escapeHtml(option.label)}</li>`,
    )
    .join("");
  return `<ul class="autocomplete" role="listbox">${items}</ul>`;
}

/** Read the comparison cell texts back out of rendered HTML (test support). */
export function extractCellTexts(html: string): string[][] {
  const rows = html.match(/<tr[^>]*>.*?<\/tr>/gs) ?? [];
  const cells: string[][] = [];
  for (const row of rows) {
    const tds = row.match(/<td>(.*?)<\/td>/gs);
    if (tds) {
      cells.push(
        tds.map((td) =>
          td
            .replace(/<\/?td>/g, "")
            .replace(/&amp;/g, "&")
            .replace(/&lt;/g, "<")
            .replace(/&gt;/g, ">")
            .replace(/&quot;/g, '"')
            .replace(/&#39;/g, "'"),
        ),
      );
    }
  }
  return cells;
}
