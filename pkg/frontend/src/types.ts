/**
 * Wire and document types shared with the fcmtrust service.
 *
 * The survey document mirrors the backend format exactly; the studio adds a
 * `studio` sidecar section (canvas layout) that the backend ignores.
 */

export const CONCEPT_IDS = ["C1", "C2", "C3", "C4", "C5", "C6", "C7"] as const;
export const TRUST_ID = "TRUST";
export const ALL_CONCEPT_IDS = [...CONCEPT_IDS, TRUST_ID] as const;

export type ConceptId = (typeof ALL_CONCEPT_IDS)[number];
export type RatedConceptId = (typeof CONCEPT_IDS)[number];

export const ATTRIBUTE_LABELS: Record<ConceptId, string> = {
  C1: "Understandability",
  C2: "Sufficiency of details",
  C3: "Completeness",
  C4: "Feeling of satisfaction",
  C5: "Accuracy",
  C6: "Usability",
  C7: "Functionality",
  TRUST: "Perceived trust",
};

export interface InfluenceEntry {
  source: string;
  target: string;
  label: string;
}

/** Survey document as the backend reads and writes it. */
export interface SurveyDocument {
  format: "fcm-trust/survey";
  version: 1;
  expert_id: string;
  ratings: Record<string, string>;
  influences: InfluenceEntry[];
  metadata?: Record<string, string>;
}

export interface LayoutPoint {
  x: number;
  y: number;
}

/** Survey file with the studio's sidecar section. */
export interface StudioFile extends SurveyDocument {
  studio?: { layout: Record<string, LayoutPoint> };
}

/** In-memory editing state: one document, one layout, one dirty flag. */
export interface StudioDocument {
  expertId: string;
  ratings: Record<RatedConceptId, string>;
  /** keyed "source->target", value is an influence-scale label */
  influences: Map<string, string>;
  metadata: Record<string, string>;
  layout: Record<ConceptId, LayoutPoint>;
  dirty: boolean;
}

export interface ScaleTermDoc {
  label: string;
  tfn: [number, number, number];
  defuzzified: number;
}

export interface ScaleDoc {
  name: string;
  terms: ScaleTermDoc[];
}

export interface OutcomeDoc {
  kind: "FixedPoint" | "LimitCycle" | "NonConvergent";
  period: number | null;
  iterations: number;
  productive_iterations: number;
  concepts: string[];
  final_state: number[];
  trace: number[][];
}

export interface TrustReportDoc {
  format: "fcm-trust/report";
  expert_id: string;
  trust_value: number;
  band: string;
  outcome: OutcomeDoc;
  initial_state: number[];
}

export interface ValidationDoc {
  valid: boolean;
  errors: { error: string; message: string }[];
}

export interface PredictionDoc {
  record_id: string;
  class: string;
  fired_rule: string | null;
}

export interface InferenceConfigDoc {
  epsilon?: number;
  max_iterations?: number;
  cycle_window?: number;
}
