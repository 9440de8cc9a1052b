/** Grid-based point clustering keyed to the map zoom level.
 *
 * The world is cut into square cells whose size halves per zoom step; all
 * points in one cell merge into a cluster positioned at their centroid and
 * badged with their count. At MAX_ZOOM and beyond every point stands alone,
 * and cluster counts always sum to the input point count.
 */

export const MAX_ZOOM = 18;
export const BASE_CELL_DEGREES = 90;

export interface Cluster<P extends { lat: number; lon: number }> {
  lat: number;
  lon: number;
  count: number;
  points: P[];
}

export function cellSizeDegrees(zoom: number): number {
  const level = Math.max(0, Math.floor(zoom));
  return BASE_CELL_DEGREES / 2 ** level;
}

export function clusterPoints<P extends { lat: number; lon: number }>(
  points: P[],
  zoom: number,
): Cluster<P>[] {
  if (zoom >= MAX_ZOOM) {
    return points.map((p) => ({ lat: p.lat, lon: p.lon, count: 1, points: [p] }));
  }
  const cell = cellSizeDegrees(zoom);
  const cells = new Map<string, P[]>();
  for (const point of points) {
    const col = Math.floor((point.lon + 180) / cell);
    const row = Math.floor((point.lat + 90) / cell);
    const key = `${row}:${col}`;
    const members = cells.get(key);
    if (members) {
      members.push(point);
    } else {
      cells.set(key, [point]);
    }
  }
  const clusters: Cluster<P>[] = [];
  for (const key of [...cells.keys()].sort()) {
    const members = cells.get(key)!;
    const lat = members.reduce((sum, p) => sum + p.lat, 0) / members.length;
    const lon = members.reduce((sum, p) => sum + p.lon, 0) / members.length;
    clusters.push({ lat, lon, count: members.length, points: members });
  }
  return clusters;
}
