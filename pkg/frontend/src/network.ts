// Network view model and force-directed layout.
//
// Node selection round-trips through the API: toggling a node re-submits
// the network analysis with `selected_nodes` and the view renders exactly
// the nodes and edges of the response. No client-side edge filtering, so
// what is drawn always matches the backend graph semantics.
import type { GraphEdge, GraphNode, NetworkResult } from "./types";

export interface PlacedNode extends GraphNode {
  x: number;
  y: number;
}

export interface NetworkViewModel {
  nodes: PlacedNode[];
  edges: GraphEdge[];
  allNodes: string[]; // full vocabulary of selectable nodes (from the unrestricted run)
  selected: Set<string>;
}

export function viewModelFromResult(
  result: NetworkResult,
  allNodes: string[] | null,
  width = 640,
  height = 480,
): NetworkViewModel {
  const names = result.graph.nodes.map((n) => n.id);
  const everything = allNodes ?? names;
  const selected = new Set(result.selected_nodes ?? everything);
  return {
    nodes: placeNodes(result.graph.nodes, result.graph.edges, width, height),
    edges: result.graph.edges,
    allNodes: everything,
    selected,
  };
}

export function toggleSelection(selected: Set<string>, node: string): string[] {
  const next = new Set(selected);
  if (next.has(node)) {
    next.delete(node);
  } else {
    next.add(node);
  }
  return [...next].sort();
}

// Small deterministic force simulation: circle start, spring edges,
// pairwise repulsion, centering. Deterministic because there is no RNG.
export function placeNodes(
  nodes: GraphNode[],
  edges: GraphEdge[],
  width = 640,
  height = 480,
  iterations = 150,
): PlacedNode[] {
  const n = nodes.length;
  if (n === 0) return [];
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 3;
  const xs = nodes.map((_, i) => cx + radius * Math.cos((2 * Math.PI * i) / n));
  const ys = nodes.map((_, i) => cy + radius * Math.sin((2 * Math.PI * i) / n));
  const idx = new Map(nodes.map((node, i) => [node.id, i]));
  const springLength = radius;

  for (let step = 0; step < iterations; step++) {
    const fx = new Array<number>(n).fill(0);
    const fy = new Array<number>(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = xs[i] - xs[j];
        let dy = ys[i] - ys[j];
        let d2 = dx * dx + dy * dy;
        if (d2 < 1) {
          // deterministic nudge for coincident points
          dx = 0.1 * (i - j);
          dy = 0.1;
          d2 = dx * dx + dy * dy;
        }
        const repulsion = 2000 / d2;
        const d = Math.sqrt(d2);
        fx[i] += (dx / d) * repulsion;
        fy[i] += (dy / d) * repulsion;
        fx[j] -= (dx / d) * repulsion;
        fy[j] -= (dy / d) * repulsion;
      }
    }
    for (const edge of edges) {
      const a = idx.get(edge.source);
      const b = idx.get(edge.target);
      if (a === undefined || b === undefined || a === b) continue;
      const dx = xs[b] - xs[a];
      const dy = ys[b] - ys[a];
      const d = Math.max(1, Math.hypot(dx, dy));
      const pull = 0.02 * (d - springLength);
      fx[a] += (dx / d) * pull * d;
      fy[a] += (dy / d) * pull * d;
      fx[b] -= (dx / d) * pull * d;
      fy[b] -= (dy / d) * pull * d;
    }
    const cooling = 1 - step / iterations;
    for (let i = 0; i < n; i++) {
      xs[i] += Math.max(-15, Math.min(15, fx[i] * 0.05)) * cooling;
      ys[i] += Math.max(-15, Math.min(15, fy[i] * 0.05)) * cooling;
      xs[i] += (cx - xs[i]) * 0.01;
      ys[i] += (cy - ys[i]) * 0.01;
      xs[i] = Math.max(20, Math.min(width - 20, xs[i]));
      ys[i] = Math.max(20, Math.min(height - 20, ys[i]));
    }
  }
  return nodes.map((node, i) => ({ ...node, x: xs[i], y: ys[i] }));
}
