/**
 * Continuum gauge geometry: a pure mapping from trust values on [-1, 1] to
 * pixel positions, with the three fixed markers (distrust threshold at -0.5,
 * ignorance at 0, trust threshold at +0.5) always placed exactly.
 *
 * The value shown next to the pointer is the service's number verbatim; this
 * module never rounds it, only positions it.
 */

export interface GaugeTick {
  value: number;
  x: number;
  label: string;
}

export interface GaugeGeometry {
  width: number;
  pointerX: number;
  ticks: [GaugeTick, GaugeTick, GaugeTick];
  /** [xStart, xEnd] pixel span of each named region, left to right */
  regions: { name: string; from: number; to: number }[];
}

export const THRESHOLD_VALUES: [number, number, number] = [-0.5, 0, 0.5];

/** Linear map from the [-1, 1] continuum onto [0, width]. */
export function valueToX(value: number, width: number): number {
  if (!(value >= -1 && value <= 1)) {
    throw new Error(`trust value ${value} outside [-1, 1]`);
  }
  return ((value + 1) / 2) * width;
}

export function gaugeGeometry(value: number, width = 600): GaugeGeometry {
  const [lo, mid, hi] = THRESHOLD_VALUES;
  const ticks: [GaugeTick, GaugeTick, GaugeTick] = [
    { value: lo, x: valueToX(lo, width), label: "-0.5" },
    { value: mid, x: valueToX(mid, width), label: "0" },
    { value: hi, x: valueToX(hi, width), label: "+0.5" },
  ];
  return {
    width,
    pointerX: valueToX(value, width),
    ticks,
    regions: [
      { name: "distrust", from: 0, to: ticks[0].x },
      { name: "leaning", from: ticks[0].x, to: ticks[2].x },
      { name: "trust", from: ticks[2].x, to: width },
    ],
  };
}
