/**
 * Browser bootstrap: wires the wizard, comparison view and exploration pages
 * to the DOM. Keyboard-first: Enter advances the wizard, arrow keys walk
 * autocomplete options, Escape closes them.
 */

import { ApiClient } from "./api.js";
import { ComparisonController, parseShareFragment } from "./comparison.js";
import {
  renderAutocomplete,
  renderBreadcrumbs,
  renderComparisonTable,
  renderSimilarList,
  renderSubgraphPreview,
} from "./render.js";
import { WIZARD_STEPS, Wizard } from "./wizard.js";

interface AppConfig {
  apiBaseUrl: string;
}

function requireElement<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (element === null) {
    throw new Error(`missing element #${id}`);
  }
  return element as T;
}

export function startApp(config: AppConfig): void {
  const client = new ApiClient({ baseUrl: config.apiBaseUrl });
  const wizard = new Wizard(window.localStorage);
  const comparison = new ComparisonController(client, window.location.origin);

  const crumbs = requireElement<HTMLElement>("breadcrumbs");
  const wizardPanel = requireElement<HTMLElement>("wizard");
  const wizardErrors = requireElement<HTMLElement>("wizard-errors");
  const preview = requireElement<HTMLElement>("subgraph-preview");
  const tablePanel = requireElement<HTMLElement>("comparison-table");
  const similarPanel = requireElement<HTMLElement>("similar");
  const shareOutput = requireElement<HTMLElement>("share-url");

  function setCrumbs(trail: Array<{ label: string; href: string }>): void {
    crumbs.innerHTML = renderBreadcrumbs(trail);
  }

  function showWizardStep(): void {
    for (const step of WIZARD_STEPS) {
      const section = document.getElementById(`step-${step}`);
      if (section) {
        section.hidden = step !== wizard.step;
      }
    }
    wizardPanel.dataset.step = wizard.step;
  }

  function showErrors(errors: string[]): void {
    wizardErrors.innerHTML = errors.length
      ? `<ul>${errors.map((e) => `<li>${e}</li>`).join("")}</ul>`
      : "";
  }

  wizardPanel.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && !(event.target instanceof HTMLTextAreaElement)) {
      event.preventDefault();
      const validation = wizard.next();
      showErrors(validation.errors);
      showWizardStep();
    }
  });

  requireElement<HTMLButtonElement>("wizard-next").addEventListener("click", () => {
    const validation = wizard.next();
    showErrors(validation.errors);
    showWizardStep();
  });
  requireElement<HTMLButtonElement>("wizard-back").addEventListener("click", () => {
    wizard.previous();
    showErrors([]);
    showWizardStep();
  });

  requireElement<HTMLButtonElement>("wizard-submit").addEventListener("click", () => {
    void wizard.submit(client).then((outcome) => {
      if (outcome.ok) {
        window.location.hash = `#/papers/${outcome.paper.node}`;
      } else {
        showErrors([outcome.message, ...Object.values(outcome.fieldErrors)]);
      }
    });
  });

  // Predicate autocomplete for the free-description step.
  const predicateInput = requireElement<HTMLInputElement>("predicate-input");
  const predicateOptions = requireElement<HTMLElement>("predicate-options");
  let autocompleteTimer: ReturnType<typeof setTimeout> | undefined;
  predicateInput.addEventListener("input", () => {
    clearTimeout(autocompleteTimer);
    autocompleteTimer = setTimeout(() => {
      const query = predicateInput.value.trim();
      if (!query) {
        predicateOptions.innerHTML = "";
        return;
      }
      void client.searchPredicates(query).then((options) => {
        predicateOptions.innerHTML = renderAutocomplete(options);
      });
    }, 120);
  });
  predicateInput.addEventListener("keydown", (event) => {
    if (event.key === "Escape") {
      predicateOptions.innerHTML = "";
    }
  });

  async function refreshPreview(contributionId: string): Promise<void> {
    const subgraph = await client.getSubgraph(contributionId);
    preview.innerHTML = renderSubgraphPreview(subgraph, false);
  }

  requireElement<HTMLButtonElement>("compare-button").addEventListener("click", () => {
    if (!comparison.canCompare) {
      return;
    }
    void comparison.load().then((table) => {
      if (table) {
        tablePanel.innerHTML = renderComparisonTable(table);
        setCrumbs([
          { label: "Papers", href: "#/" },
          { label: "Comparison", href: window.location.hash },
        ]);
      }
    });
  });

  requireElement<HTMLButtonElement>("share-button").addEventListener("click", () => {
    void comparison.share().then(({ url }) => {
      shareOutput.textContent = url;
    });
  });

  for (const format of ["csv", "latex"] as const) {
    requireElement<HTMLButtonElement>(`export-${format}`).addEventListener("click", () => {
      void comparison.exportAs(format).then((bytes) => {
        const blob = new Blob([bytes.buffer as ArrayBuffer]);
        const link = document.createElement("a");
        link.href = URL.createObjectURL(blob);
        link.download = `comparison.${format === "latex" ? "tex" : "csv"}`;
        link.click();
        URL.revokeObjectURL(link.href);
      });
    });
  }

  async function route(): Promise<void> {
    const shared = parseShareFragment(window.location.hash);
    if (shared !== null) {
      const table = await comparison.openShared(shared);
      tablePanel.innerHTML = renderComparisonTable(table);
      setCrumbs([
        { label: "Papers", href: "#/" },
        { label: "Shared comparison", href: window.location.hash },
      ]);
      return;
    }
    const contribution = /^#\/contributions\/(.+)$/.exec(window.location.hash)?.[1];
    if (contribution) {
      const [similar] = await Promise.all([
        client.getSimilar(contribution),
        refreshPreview(contribution),
      ]);
      similarPanel.innerHTML = renderSimilarList(similar.results);
    }
  }

  window.addEventListener("hashchange", () => void route());
  showWizardStep();
  void route();
}
