/**
 * Payload types for the phax HTTP API. Field names mirror the service
 * responses exactly; the explorer never recomputes any of these values.
 */

export interface Diagnostic {
  line: number;
  col: number;
  severity: string;
  message: string;
}

export interface ServiceError {
  code: string;
  message: string;
  diagnostics?: Diagnostic[];
  sigma_full?: number;
  tau?: number;
}

export interface CreateTheoryResponse {
  id: string;
  name: string;
  premises: number;
  rules: number;
}

export interface ArgumentRow {
  id: string;
  label: string;
  conclusion: string;
  premises: string[];
  rules: string[];
  defeasible_rules: string[];
  top_rule: string | null;
  scheme: string | null;
  weight: number;
  subarguments: string[];
}

export interface AttackRow {
  attacker: string;
  attacked: string;
  kind: string;
  target: string;
}

export interface ArgumentsReport {
  arguments: ArgumentRow[];
  attacks: AttackRow[];
  defeats: [string, string][];
}

export interface LabellingRow {
  in: string[];
  out: string[];
  undec: string[];
}

export interface ExtensionsReport {
  semantics: string;
  argument_labels: Record<string, string>;
  labellings: LabellingRow[];
}

export interface SubtreeNode {
  id: string;
  role: "proponent" | "opponent";
  argument: string;
  label: string;
  score: number;
  scheme: string | null;
  children: string[];
}

export interface ExplainResponse {
  target: { argument: string; label: string; literal: string };
  profile: string;
  band: string;
  semantics: string;
  sigma: number;
  sigma_full: number;
  utility: number;
  features: { clarity: number; relevance: number; lexical_fit: number };
  tau: number;
  epsilon: number;
  subtree: { root: string; nodes: SubtreeNode[] };
  rendered: {
    format: string;
    body: string;
    claim: string;
    supports: string[];
    challenges: string[];
  };
  acceptance: { skeptical: boolean; credulous: boolean; derivable: boolean };
}

export interface AcceptanceFlags {
  skeptical: boolean;
  credulous: boolean;
  derivable: boolean;
}

export interface WhatifSide {
  acceptance: Record<string, AcceptanceFlags>;
  sigma: number | null;
}

export interface WhatifResponse {
  committed: boolean;
  disabled_premises: string[];
  added_preferences: [string, string][];
  removed_preferences: [string, string][];
  before: WhatifSide;
  after: WhatifSide;
  changes: string[];
}

export interface ChallengeResponse {
  instance: string;
  scheme: string;
  cq: string;
  confidence: number;
  premise: string;
  conclusion: string;
  before: AcceptanceFlags;
  after: AcceptanceFlags;
  changed: boolean;
}

export interface SchemeRow {
  id: string;
  variables: string[];
  premises: string[];
  conclusion: string;
  critical_questions: { id: string; text: string }[];
  audience_templates: Record<string, string>;
}

export interface SchemesReport {
  schemes: SchemeRow[];
}

export interface UtilityWeightsOverride {
  alpha?: number;
  beta?: number;
  gamma?: number;
  tau?: number;
  epsilon?: number;
}
