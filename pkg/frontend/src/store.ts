/**
 * Explorer state store. All reasoning results (labellings, sigma,
 * utility, acceptance) are held exactly as the service returned them;
 * the store only orchestrates requests, pending what-if edits, and view
 * models. Stale responses are dropped via per-panel sequence numbers.
 */

import { ApiClient, ApiError } from "./api.js";
import { buildGraphViewModel, type GraphViewModel } from "./graph.js";
import type {
  ArgumentsReport,
  ChallengeResponse,
  Diagnostic,
  ExplainResponse,
  ExtensionsReport,
  SchemesReport,
  WhatifResponse,
} from "./types.js";

export interface PendingWhatIf {
  disabledPremises: Set<string>;
  addPreferences: [string, string][];
  removePreferences: [string, string][];
}

export interface InsufficientState {
  sigmaFull: number;
  tau: number;
  suggestedTau: number;
}

export interface ExplorerState {
  sessionId: string | null;
  theoryName: string | null;
  source: string;
  diagnostics: Diagnostic[];
  argumentsReport: ArgumentsReport | null;
  extensions: ExtensionsReport | null;
  semantics: string;
  profile: string;
  target: string | null;
  tauOverride: number | null;
  explanation: ExplainResponse | null;
  insufficient: InsufficientState | null;
  lastError: string | null;
  schemes: SchemesReport | null;
  pending: PendingWhatIf;
  whatifPreview: WhatifResponse | null;
  lastChallenge: ChallengeResponse | null;
}

function emptyPending(): PendingWhatIf {
  return {
    disabledPremises: new Set(),
    addPreferences: [],
    removePreferences: [],
  };
}

type Listener = (state: ExplorerState) => void;

export class ExplorerStore {
  state: ExplorerState = {
    sessionId: null,
    theoryName: null,
    source: "",
    diagnostics: [],
    argumentsReport: null,
    extensions: null,
    semantics: "grounded",
    profile: "patient",
    target: null,
    tauOverride: null,
    explanation: null,
    insufficient: null,
    lastError: null,
    schemes: null,
    pending: emptyPending(),
    whatifPreview: null,
    lastChallenge: null,
  };

  private listeners: Listener[] = [];
  private seq: Record<string, number> = { graph: 0, explain: 0, whatif: 0 };

  constructor(private api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify() {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  private update(patch: Partial<ExplorerState>) {
    this.state = { ...this.state, ...patch };
    this.notify();
  }

  private next(panel: string): number {
    this.seq[panel] = (this.seq[panel] ?? 0) + 1;
    return this.seq[panel]!;
  }

  private isStale(panel: string, ticket: number): boolean {
    return this.seq[panel] !== ticket;
  }

  async loadSchemes(): Promise<void> {
    const schemes = await this.api.getSchemes();
    this.update({ schemes });
  }

  /** POST the theory source, then pull the graph data. */
  async loadTheory(source: string): Promise<void> {
    const ticket = this.next("graph");
    this.update({ source, lastError: null, diagnostics: [] });
    try {
      const created = await this.api.createTheory(source);
      if (this.isStale("graph", ticket)) return;
      this.update({
        sessionId: created.id,
        theoryName: created.name,
        explanation: null,
        insufficient: null,
        target: null,
        pending: emptyPending(),
        whatifPreview: null,
        lastChallenge: null,
      });
      await this.refreshGraph(ticket);
    } catch (error) {
      if (this.isStale("graph", ticket)) return;
      if (error instanceof ApiError && error.body.diagnostics) {
        this.update({ diagnostics: error.body.diagnostics, sessionId: null });
      } else {
        this.update({ lastError: describe(error), sessionId: null });
      }
    }
  }

  private async refreshGraph(ticket?: number): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    const myTicket = ticket ?? this.next("graph");
    const [argumentsReport, extensions] = await Promise.all([
      this.api.getArguments(id),
      this.api.getExtensions(id, this.state.semantics),
    ]);
    if (this.isStale("graph", myTicket)) return;
    this.update({ argumentsReport, extensions });
  }

  async setSemantics(semantics: string): Promise<void> {
    this.update({ semantics });
    await this.refreshGraph();
  }

  /** Explain the current (or a new) target for the current profile. */
  async explain(target?: string): Promise<void> {
    const id = this.state.sessionId;
    const chosen = target ?? this.state.target;
    if (!id || !chosen) return;
    const ticket = this.next("explain");
    this.update({ target: chosen, lastError: null });
    try {
      const weights =
        this.state.tauOverride !== null ? { tau: this.state.tauOverride } : undefined;
      const explanation = await this.api.explain(id, {
        target: chosen,
        profile: this.state.profile,
        semantics: this.state.semantics,
        weights,
      });
      if (this.isStale("explain", ticket)) return;
      this.update({ explanation, insufficient: null });
    } catch (error) {
      if (this.isStale("explain", ticket)) return;
      if (error instanceof ApiError && error.body.code === "insufficient") {
        const sigmaFull = error.body.sigma_full ?? 0;
        this.update({
          explanation: null,
          insufficient: {
            sigmaFull,
            tau: error.body.tau ?? 0,
            // slider hint: the largest threshold the full tree satisfies
            suggestedTau: Math.floor(sigmaFull * 100) / 100,
          },
        });
      } else {
        this.update({ lastError: describe(error) });
      }
    }
  }

  /** Profile switches re-query only; the session is never mutated. */
  async setProfile(profile: string): Promise<void> {
    this.update({ profile });
    if (this.state.target) {
      await this.explain();
    }
  }

  setTauOverride(tau: number | null): void {
    this.update({ tauOverride: tau });
  }

  // -- pending what-if edits (local until preview/commit) -----------------

  togglePremise(premiseId: string): void {
    const disabled = new Set(this.state.pending.disabledPremises);
    if (disabled.has(premiseId)) {
      disabled.delete(premiseId);
    } else {
      disabled.add(premiseId);
    }
    this.update({
      pending: { ...this.state.pending, disabledPremises: disabled },
    });
  }

  swapPreference(higher: string, lower: string): void {
    this.update({
      pending: {
        ...this.state.pending,
        removePreferences: [
          ...this.state.pending.removePreferences,
          [higher, lower],
        ],
        addPreferences: [...this.state.pending.addPreferences, [lower, higher]],
      },
    });
  }

  hasPendingEdits(): boolean {
    const { pending } = this.state;
    return (
      pending.disabledPremises.size > 0 ||
      pending.addPreferences.length > 0 ||
      pending.removePreferences.length > 0
    );
  }

  async previewWhatIf(target?: string): Promise<void> {
    const id = this.state.sessionId;
    if (!id || !this.hasPendingEdits()) return;
    const ticket = this.next("whatif");
    try {
      const preview = await this.api.whatif(id, {
        disable_premises: [...this.state.pending.disabledPremises].sort(),
        add_preferences: this.state.pending.addPreferences,
        remove_preferences: this.state.pending.removePreferences,
        target: target ?? this.state.target ?? undefined,
        semantics: this.state.semantics,
        commit: false,
      });
      if (this.isStale("whatif", ticket)) return;
      this.update({ whatifPreview: preview });
    } catch (error) {
      if (this.isStale("whatif", ticket)) return;
      this.update({ lastError: describe(error) });
    }
  }

  async commitWhatIf(): Promise<void> {
    const id = this.state.sessionId;
    if (!id || !this.hasPendingEdits()) return;
    await this.api.whatif(id, {
      disable_premises: [...this.state.pending.disabledPremises].sort(),
      add_preferences: this.state.pending.addPreferences,
      remove_preferences: this.state.pending.removePreferences,
      target: this.state.target ?? undefined,
      semantics: this.state.semantics,
      commit: true,
    });
    this.update({ pending: emptyPending(), whatifPreview: null });
    await this.refreshGraph();
    if (this.state.target) {
      await this.explain();
    }
  }

  /** Drop pending edits and the preview; committed state is untouched. */
  cancelWhatIf(): void {
    this.next("whatif"); // invalidate any in-flight preview
    this.update({ pending: emptyPending(), whatifPreview: null });
  }

  async challenge(
    instanceRule: string,
    cqId: string,
    confidence: number,
  ): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    const report = await this.api.challenge(id, {
      instance: instanceRule,
      cq: cqId,
      confidence,
      semantics: this.state.semantics,
    });
    this.update({ lastChallenge: report });
    await this.refreshGraph();
    if (this.state.target) {
      await this.explain();
    }
  }

  /** Current graph view model; all styling comes from service data. */
  graphViewModel(): GraphViewModel {
    const highlighted = new Set<string>(
      this.state.explanation?.subtree.nodes.map((n) => n.argument) ?? [],
    );
    return buildGraphViewModel(this.state.argumentsReport, this.state.extensions, {
      preview: this.state.whatifPreview,
      pendingPremises: this.state.pending.disabledPremises,
      highlightedArguments: highlighted,
    });
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) {
    return `${error.body.code}: ${error.body.message}`;
  }
  return error instanceof Error ? error.message : String(error);
}
