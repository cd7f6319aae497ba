/**
 * Graph view model: positions arguments on a circle and styles each node
 * from the service labelling. All acceptance states are copied from
 * responses verbatim; this module does layout only.
 */

import type {
  AcceptanceFlags,
  ArgumentsReport,
  ExtensionsReport,
  WhatifResponse,
} from "./types.js";

export type NodeStyling = "in" | "out" | "undec";

export interface GraphNode {
  id: string;
  label: string;
  conclusion: string;
  weight: number;
  styling: NodeStyling;
  x: number;
  y: number;
  /** styling implied by a pending what-if preview, when one is shown */
  preview: NodeStyling | "disabled" | null;
  /** true when a pending (uncommitted) edit touches this node */
  pending: boolean;
  highlighted: boolean;
}

export interface GraphEdge {
  from: string;
  to: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface GraphViewModel {
  nodes: GraphNode[];
  edges: GraphEdge[];
  width: number;
  height: number;
}

function stylingFromLabelling(
  argumentId: string,
  extensions: ExtensionsReport | null,
): NodeStyling {
  const labelling = extensions?.labellings[0];
  if (!labelling) {
    return "undec";
  }
  if (labelling.in.includes(argumentId)) {
    return "in";
  }
  if (labelling.out.includes(argumentId)) {
    return "out";
  }
  return "undec";
}

function previewFromAcceptance(flags: AcceptanceFlags | undefined): NodeStyling | "disabled" {
  if (!flags || !flags.derivable) {
    return "disabled";
  }
  if (flags.skeptical) {
    return "in";
  }
  return flags.credulous ? "undec" : "out";
}

export function buildGraphViewModel(
  args: ArgumentsReport | null,
  extensions: ExtensionsReport | null,
  options: {
    preview?: WhatifResponse | null;
    pendingPremises?: ReadonlySet<string>;
    highlightedArguments?: ReadonlySet<string>;
    size?: number;
  } = {},
): GraphViewModel {
  const size = options.size ?? 480;
  if (!args) {
    return { nodes: [], edges: [], width: size, height: size };
  }
  const rows = [...args.arguments].sort((a, b) =>
    a.label.localeCompare(b.label),
  );
  const radius = size / 2 - 60;
  const cx = size / 2;
  const cy = size / 2;
  const positions = new Map<string, { x: number; y: number }>();
  rows.forEach((row, index) => {
    const angle = (2 * Math.PI * index) / Math.max(rows.length, 1) - Math.PI / 2;
    positions.set(row.id, {
      x: Math.round(cx + radius * Math.cos(angle)),
      y: Math.round(cy + radius * Math.sin(angle)),
    });
  });

  const pending = options.pendingPremises ?? new Set<string>();
  const highlighted = options.highlightedArguments ?? new Set<string>();
  const preview = options.preview ?? null;

  const nodes: GraphNode[] = rows.map((row) => {
    const pos = positions.get(row.id)!;
    let previewStyling: GraphNode["preview"] = null;
    if (preview) {
      previewStyling = previewFromAcceptance(
        preview.after.acceptance[row.conclusion],
      );
    }
    return {
      id: row.id,
      label: row.label,
      conclusion: row.conclusion,
      weight: row.weight,
      styling: stylingFromLabelling(row.id, extensions),
      x: pos.x,
      y: pos.y,
      preview: previewStyling,
      pending: row.premises.some((p) => pending.has(p)),
      highlighted: highlighted.has(row.id),
    };
  });

  const edges: GraphEdge[] = args.defeats
    .filter(([from, to]) => positions.has(from) && positions.has(to))
    .map(([from, to]) => {
      const a = positions.get(from)!;
      const b = positions.get(to)!;
      return { from, to, x1: a.x, y1: a.y, x2: b.x, y2: b.y };
    })
    .sort((a, b) => (a.from + a.to).localeCompare(b.from + b.to));

  return { nodes, edges, width: size, height: size };
}
