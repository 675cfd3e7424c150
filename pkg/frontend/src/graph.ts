/**
 * Graph projection of the influences map: one renderable edge per entry,
 * styled by sign (direct vs inverse) and strength (low vs high).
 *
 * The matrix view and this view are two projections of the same underlying
 * map, so they can never disagree; both read the document's influence
 * entries directly.
 */
import { StudioDocument } from "./types.js";
import { splitEdgeKey } from "./document.js";

export type InfluenceSign = "direct" | "inverse" | "none";
export type InfluenceStrength = "high" | "low" | "none";

export interface EdgeStyle {
  sign: InfluenceSign;
  strength: InfluenceStrength;
  color: string;
  width: number;
  dashed: boolean;
}

export interface GraphEdge extends EdgeStyle {
  source: string;
  target: string;
  label: string;
}

const STYLES: Record<string, EdgeStyle> = {
  "inversely high": { sign: "inverse", strength: "high", color: "#c0392b", width: 3, dashed: true },
  "inversely low": { sign: "inverse", strength: "low", color: "#e67e22", width: 1.5, dashed: true },
  "no influence": { sign: "none", strength: "none", color: "#b0b0b0", width: 1, dashed: false },
  "directly low": { sign: "direct", strength: "low", color: "#27ae60", width: 1.5, dashed: false },
  "directly high": { sign: "direct", strength: "high", color: "#1e8449", width: 3, dashed: false },
};

const FALLBACK: EdgeStyle = { sign: "none", strength: "none", color: "#b0b0b0", width: 1, dashed: false };

/** Style for a linguistic label; tolerant of case and spacing variants. */
export function edgeStyle(label: string): EdgeStyle {
  return STYLES[label.trim().replace(/\s+/g, " ").toLowerCase()] ?? FALLBACK;
}

export function graphEdges(doc: StudioDocument): GraphEdge[] {
  const edges: GraphEdge[] = [];
  for (const [key, label] of doc.influences) {
    const [source, target] = splitEdgeKey(key);
    edges.push({ source, target, label, ...edgeStyle(label) });
  }
  edges.sort((a, b) => (a.source + a.target < b.source + b.target ? -1 : 1));
  return edges;
}
