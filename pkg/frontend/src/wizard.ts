/**
 * Paper creation wizard: a five-step state machine over a persisted draft.
 *
 * Steps: metadata, problem, method and results, free description, review.
 * Forward navigation is blocked while the current step has validation
 * errors, and the draft survives page reloads through the injected storage.
 */

import { ApiClient, ApiRequestError } from "./api.js";
import type { DescriptionTriple, Paper, PaperPayload } from "./types.js";

export const WIZARD_STEPS = [
  "metadata",
  "problem",
  "results",
  "description",
  "review",
] as const;

export type WizardStep = (typeof WIZARD_STEPS)[number];

export interface WizardDraft {
  title: string;
  doi: string;
  authors: string[];
  year: string;
  problem: string;
  method: string;
  results: string[];
  description: Array<[string, string]>;
}

export interface StepValidation {
  ok: boolean;
  errors: string[];
}

export interface SubmitFailure {
  ok: false;
  message: string;
  fieldErrors: Partial<Record<keyof WizardDraft, string>>;
}

export interface SubmitSuccess {
  ok: true;
  paper: Paper;
}

/** localStorage-compatible subset so tests can inject a memory store. */
export interface DraftStorage {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const STORAGE_KEY = "scholargraph.wizard.draft";
const DOI_SHAPE = /^10\.\d{2,9}(\.\d+)*\/\S+$/;

export function emptyDraft(): WizardDraft {
  return {
    title: "",
    doi: "",
    authors: [],
    year: "",
    problem: "",
    method: "",
    results: [],
    description: [],
  };
}

export class Wizard {
  private stepIndex = 0;
  draft: WizardDraft;

  constructor(private readonly storage: DraftStorage) {
    this.draft = this.loadDraft();
  }

  private loadDraft(): WizardDraft {
    const raw = this.storage.getItem(STORAGE_KEY);
    if (raw === null) {
      return emptyDraft();
    }
    try {
      return { ...emptyDraft(), ...(JSON.parse(raw) as Partial<WizardDraft>) };
    } catch {
      return emptyDraft();
    }
  }

  persist(): void {
    this.storage.setItem(STORAGE_KEY, JSON.stringify(this.draft));
  }

  discard(): void {
    this.draft = emptyDraft();
    this.stepIndex = 0;
    this.storage.removeItem(STORAGE_KEY);
  }

  get step(): WizardStep {
    const step = WIZARD_STEPS[this.stepIndex];
    if (step === undefined) {
      throw new Error(`step index out of range: ${this.stepIndex}`);
    }
    return step;
  }

  get isLastStep(): boolean {
    return this.stepIndex === WIZARD_STEPS.length - 1;
  }

  update(patch: Partial<WizardDraft>): void {
    this.draft = { ...this.draft, ...patch };
    this.persist();
  }

  validateStep(step: WizardStep): StepValidation {
    const errors: string[] = [];
    const draft = this.draft;
    switch (step) {
      case "metadata":
        if (!draft.title.trim()) {
          errors.push("title is required");
        }
        if (draft.doi.trim() && !DOI_SHAPE.test(draft.doi.trim())) {
          errors.push("DOI must look like 10.<registrant>/<suffix>");
        }
        if (draft.year.trim() && !/^\d{4}$/.test(draft.year.trim())) {
          errors.push("year must be a four-digit number");
        }
        break;
      case "problem":
        if (!draft.problem.trim()) {
          errors.push("a research problem is required");
        }
        break;
      case "results":
        if (draft.results.filter((r) => r.trim()).length === 0) {
          errors.push("at least one result is required");
        }
        break;
      case "description":
        for (const [predicate, value] of draft.description) {
          if (!predicate.trim() || !value.trim()) {
            errors.push("description rows need both a property and a value");
            break;
          }
        }
        break;
      case "review":
        break;
    }
    return { ok: errors.length === 0, errors };
  }

  /** Advance one step; blocked while the current step has errors. */
  next(): StepValidation {
    const validation = this.validateStep(this.step);
    if (validation.ok && !this.isLastStep) {
      this.stepIndex += 1;
    }
    return validation;
  }

  previous(): void {
    if (this.stepIndex > 0) {
      this.stepIndex -= 1;
    }
  }

  validateAll(): StepValidation {
    const errors = WIZARD_STEPS.flatMap((step) => this.validateStep(step).errors);
    return { ok: errors.length === 0, errors };
  }

  toPayload(): PaperPayload {
    const draft = this.draft;
    const description: DescriptionTriple[] = draft.description
      .filter(([p, v]) => p.trim() && v.trim())
      .map(([p, v]) => [p.trim(), v.trim()]);
    const payload: PaperPayload = {
      title: draft.title.trim(),
      contributions: [
        {
          problem: draft.problem.trim(),
          ...(draft.method.trim() ? { method: draft.method.trim() } : {}),
          results: draft.results.map((r) => r.trim()).filter(Boolean),
          ...(description.length ? { description } : {}),
        },
      ],
    };
    if (draft.doi.trim()) {
      payload.doi = draft.doi.trim();
    }
    const authors = draft.authors.map((a) => a.trim()).filter(Boolean);
    if (authors.length) {
      payload.authors = authors;
    }
    if (draft.year.trim()) {
      payload.year = Number(draft.year.trim());
    }
    return payload;
  }

  /**
   * Submit the assembled paper. On API rejection the draft is retained and
   * the error is mapped to the field it concerns.
   */
  async submit(client: ApiClient): Promise<SubmitSuccess | SubmitFailure> {
    const validation = this.validateAll();
    if (!validation.ok) {
      return { ok: false, message: validation.errors.join("; "), fieldErrors: {} };
    }
    try {
      const paper = await client.createPaper(this.toPayload());
      this.discard();
      return { ok: true, paper };
    } catch (error) {
      if (error instanceof ApiRequestError) {
        return { ok: false, message: error.message, fieldErrors: mapFieldErrors(error) };
      }
      return {
        ok: false,
        message: error instanceof Error ? error.message : String(error),
        fieldErrors: {},
      };
    }
  }
}

function mapFieldErrors(error: ApiRequestError): Partial<Record<keyof WizardDraft, string>> {
  switch (error.code) {
    case "missing_result":
      return { results: error.message };
    case "missing_problem":
      return { problem: error.message };
    case "invalid_doi":
      return { doi: error.message };
    case "empty_label":
      return { title: error.message };
    default:
      return {};
  }
}
