/**
 * Matrix projection of the influences map: an 8x8 grid of cells, rows are
 * sources, columns are targets. Diagonal cells are structurally disabled.
 */
import { ALL_CONCEPT_IDS, StudioDocument } from "./types.js";
import { getInfluence } from "./document.js";

export interface MatrixCell {
  source: string;
  target: string;
  label: string | null;
  editable: boolean;
}

export interface MatrixProjection {
  conceptIds: readonly string[];
  rows: MatrixCell[][];
}

export function matrixProjection(doc: StudioDocument): MatrixProjection {
  const rows = ALL_CONCEPT_IDS.map((source) =>
    ALL_CONCEPT_IDS.map((target) => ({
      source,
      target,
      label: source === target ? null : getInfluence(doc, source, target) ?? null,
      editable: source !== target,
    })),
  );
  return { conceptIds: ALL_CONCEPT_IDS, rows };
}
