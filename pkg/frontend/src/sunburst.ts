// Sunburst geometry from the API's flat arrays form.
//
// All numbers (counts, citation values) come straight from the payload;
// the only computation here is angles and radii. Child angular spans are
// proportional to slice counts within the parent span, in payload order.
import type { SunburstFlat } from "./types";

export interface Arc {
  id: string;
  label: string;
  depth: number; // 1..ringCount (the root is not drawn)
  startAngle: number;
  endAngle: number;
  innerRadius: number;
  outerRadius: number;
  count: number;
  value: number; // citation color value
}

export interface SunburstLayout {
  arcs: Arc[];
  ringCount: number;
  rootCount: number;
  rootValue: number;
  minValue: number;
  maxValue: number;
}

const TWO_PI = Math.PI * 2;

export function layoutSunburst(flat: SunburstFlat, outerRadius = 220): SunburstLayout {
  const index = new Map<string, number>();
  flat.ids.forEach((id, i) => index.set(id, i));
  const childrenOf = new Map<string, number[]>();
  let rootIdx = -1;
  flat.parents.forEach((parent, i) => {
    if (parent === "") {
      rootIdx = i;
      return;
    }
    const list = childrenOf.get(parent) ?? [];
    list.push(i);
    childrenOf.set(parent, list);
  });
  if (rootIdx < 0) throw new Error("flat sunburst data has no root");

  const depthOf = (i: number): number => {
    let depth = 0;
    let parent = flat.parents[i];
    while (parent !== "") {
      depth += 1;
      const p = index.get(parent);
      if (p === undefined) throw new Error(`unknown parent id: ${parent}`);
      parent = flat.parents[p];
    }
    return depth;
  };

  let ringCount = 0;
  for (let i = 0; i < flat.ids.length; i++) {
    ringCount = Math.max(ringCount, depthOf(i));
  }
  const ringWidth = outerRadius / (ringCount + 1);

  const arcs: Arc[] = [];
  const place = (i: number, start: number, end: number, depth: number) => {
    if (depth > 0) {
      arcs.push({
        id: flat.ids[i],
        label: flat.labels[i],
        depth,
        startAngle: start,
        endAngle: end,
        innerRadius: depth * ringWidth,
        outerRadius: (depth + 1) * ringWidth,
        count: flat.values[i],
        value: flat.colors[i],
      });
    }
    const kids = childrenOf.get(flat.ids[i]) ?? [];
    const total = kids.reduce((acc, k) => acc + flat.values[k], 0);
    if (total <= 0) return;
    let cursor = start;
    for (const k of kids) {
      const span = ((end - start) * flat.values[k]) / total;
      place(k, cursor, cursor + span, depth + 1);
      cursor += span;
    }
  };
  place(rootIdx, 0, TWO_PI, 0);

  const colorValues = arcs.map((a) => a.value);
  return {
    arcs,
    ringCount,
    rootCount: flat.values[rootIdx],
    rootValue: flat.colors[rootIdx],
    minValue: colorValues.length ? Math.min(...colorValues) : 0,
    maxValue: colorValues.length ? Math.max(...colorValues) : 0,
  };
}

export function arcPath(arc: Arc): string {
  const point = (radius: number, angle: number) => {
    // rotate so angle 0 points up
    const a = angle - Math.PI / 2;
    return `${(radius * Math.cos(a)).toFixed(3)} ${(radius * Math.sin(a)).toFixed(3)}`;
  };
  const large = arc.endAngle - arc.startAngle > Math.PI ? 1 : 0;
  return [
    `M ${point(arc.innerRadius, arc.startAngle)}`,
    `L ${point(arc.outerRadius, arc.startAngle)}`,
    `A ${arc.outerRadius} ${arc.outerRadius} 0 ${large} 1 ${point(arc.outerRadius, arc.endAngle)}`,
    `L ${point(arc.innerRadius, arc.endAngle)}`,
    `A ${arc.innerRadius} ${arc.innerRadius} 0 ${large} 0 ${point(arc.innerRadius, arc.startAngle)}`,
    "Z",
  ].join(" ");
}

// Linear white->blue->dark scale over the citation value range.
export function colorFor(value: number, min: number, max: number): string {
  const t = max > min ? (value - min) / (max - min) : 0.5;
  const lightness = 92 - t * 60;
  return `hsl(215 70% ${lightness.toFixed(1)}%)`;
}
