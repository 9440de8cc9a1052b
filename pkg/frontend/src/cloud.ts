/** Deterministic word-cloud layout.
 *
 * Words walk an archimedean spiral from the canvas center until their
 * bounding box stops colliding with already-placed words; the starting
 * angle is seeded by a hash of the term, so the same cloud always lays out
 * identically. Font size grows with the square root of the weight.
 */

export interface CloudWord {
  term: string;
  weight: number;
}

export interface PlacedWord {
  term: string;
  weight: number;
  x: number;
  y: number;
  fontSize: number;
  width: number;
  height: number;
}

const MIN_FONT = 12;
const MAX_FONT = 42;
// average glyph width relative to the font size, good enough for boxes
const GLYPH_ASPECT = 0.62;

export function hashTerm(term: string): number {
  // FNV-1a, 32-bit
  let hash = 0x811c9dc5;
  for (let i = 0; i < term.length; i++) {
    hash ^= term.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

export function fontSizeFor(weight: number, minWeight: number, maxWeight: number): number {
  if (maxWeight <= minWeight) {
    return (MIN_FONT + MAX_FONT) / 2;
  }
  const t = Math.sqrt((weight - minWeight) / (maxWeight - minWeight));
  return MIN_FONT + t * (MAX_FONT - MIN_FONT);
}

function collides(a: PlacedWord, b: PlacedWord): boolean {
  return (
    Math.abs(a.x - b.x) * 2 < a.width + b.width && Math.abs(a.y - b.y) * 2 < a.height + b.height
  );
}

export function layoutCloud(words: CloudWord[], width: number, height: number): PlacedWord[] {
  if (!words.length) {
    return [];
  }
  const weights = words.map((w) => w.weight);
  const minWeight = Math.min(...weights);
  const maxWeight = Math.max(...weights);
  const placed: PlacedWord[] = [];
  const ordered = [...words].sort(
    (a, b) => b.weight - a.weight || (a.term < b.term ? -1 : a.term > b.term ? 1 : 0),
  );
  for (const word of ordered) {
    const fontSize = fontSizeFor(word.weight, minWeight, maxWeight);
    const box: PlacedWord = {
      term: word.term,
      weight: word.weight,
      x: width / 2,
      y: height / 2,
      fontSize,
      width: word.term.length * fontSize * GLYPH_ASPECT + 4,
      height: fontSize * 1.25,
    };
    const startAngle = ((hashTerm(word.term) % 360) * Math.PI) / 180;
    let step = 0;
    while (placed.some((other) => collides(box, other)) && step < 2000) {
      step += 1;
      const angle = startAngle + step * 0.35;
      const radius = 2.2 * step ** 0.72;
      box.x = width / 2 + radius * Math.cos(angle);
      box.y = height / 2 + radius * Math.sin(angle) * 0.6; // flatten to the frame
    }
    placed.push(box);
  }
  return placed;
}
