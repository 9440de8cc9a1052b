/** Chord diagram geometry: author arcs sized by total co-authorship,
 * ribbons between pairs with widths monotone in their counts. */

import { ChordPayload } from "./api.js";

export interface ChordArc {
  id: string;
  name: string;
  index: number;
  startAngle: number;
  endAngle: number;
  total: number;
}

export interface ChordRibbon {
  a: number;
  b: number;
  count: number;
  width: number; // radians consumed on each side
}

export interface ChordLayout {
  arcs: ChordArc[];
  ribbons: ChordRibbon[];
}

const ARC_PADDING = 0.06; // radians between author arcs

export function chordLayout(payload: ChordPayload): ChordLayout {
  const n = payload.authors.length;
  const totals = payload.matrix.map((row) => row.reduce((s, v) => s + v, 0));
  const grandTotal = totals.reduce((s, v) => s + v, 0);
  const padded = n * ARC_PADDING;
  const available = Math.max(0, 2 * Math.PI - padded);

  const arcs: ChordArc[] = [];
  let angle = 0;
  for (let i = 0; i < n; i++) {
    const author = payload.authors[i]!;
    // solo authors still get a visible sliver
    const share = grandTotal > 0 ? totals[i]! / grandTotal : 1 / Math.max(1, n);
    const span = grandTotal > 0 ? available * share : available / Math.max(1, n);
    arcs.push({
      id: author.id,
      name: author.name,
      index: i,
      startAngle: angle,
      endAngle: angle + span,
      total: totals[i]!,
    });
    angle += span + ARC_PADDING;
  }

  const ribbons: ChordRibbon[] = [];
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      const count = payload.matrix[i]![j]!;
      if (count > 0) {
        ribbons.push({ a: i, b: j, count, width: ribbonWidth(count, grandTotal) });
      }
    }
  }
  return { arcs, ribbons };
}

/** Strictly increasing in count: thicker chord = more shared datasets. */
export function ribbonWidth(count: number, grandTotal: number): number {
  const base = grandTotal > 0 ? count / grandTotal : 0;
  return 0.02 + base * Math.PI;
}

export function isSymmetricZeroDiagonal(matrix: number[][]): boolean {
  for (let i = 0; i < matrix.length; i++) {
    const row = matrix[i]!;
    if (row.length !== matrix.length || row[i] !== 0) {
      return false;
    }
    for (let j = 0; j < matrix.length; j++) {
      if (row[j] !== matrix[j]![i]) {
        return false;
      }
    }
  }
  return true;
}
