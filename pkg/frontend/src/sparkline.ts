/**
 * Iteration sparkline: the trust concept's activation across the trace,
 * scaled into an SVG polyline. Pure geometry; the numbers come from the
 * service's trace as-is.
 */

export interface SparklineGeometry {
  points: string;
  zeroY: number;
  width: number;
  height: number;
}

export function trustSeries(trace: number[][], concepts: string[], trustId = "TRUST"): number[] {
  const index = concepts.indexOf(trustId);
  if (index < 0) throw new Error(`trace has no ${trustId} column`);
  return trace.map((row) => {
    const value = row[index];
    if (value === undefined) throw new Error("trace row shorter than concept list");
    return value;
  });
}

/** Map a [-1, 1] series onto a width x height box, y down, zero line centered. */
export function sparklineGeometry(series: number[], width = 240, height = 60): SparklineGeometry {
  if (series.length === 0) throw new Error("empty series");
  const step = series.length > 1 ? width / (series.length - 1) : 0;
  const y = (v: number) => ((1 - v) / 2) * height;
  const points = series.map((v, i) => `${(i * step).toFixed(2)},${y(v).toFixed(2)}`).join(" ");
  return { points, zeroY: y(0), width, height };
}
