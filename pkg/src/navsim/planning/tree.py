"""Rooted planning tree with exact cost bookkeeping through rewires."""

from dataclasses import dataclass

import numpy as np

from navsim.errors import InvalidInput


@dataclass
class TreeNode:
    state: np.ndarray
    parent: int | None
    cost: float  # cost from root
    edge_cost: float  # cost of the edge from parent (0 at the root)


class PlanTree:
    """Append-only node store; rewiring re-derives descendant costs exactly."""

    def __init__(self, root_state):
        root = np.asarray(root_state, dtype=float)
        self.nodes: list[TreeNode] = [TreeNode(root, None, 0.0, 0.0)]
        self._children: list[set[int]] = [set()]

    def __len__(self) -> int:
        return len(self.nodes)

    def states(self) -> np.ndarray:
        return np.array([n.state for n in self.nodes])

    def add(self, state, parent: int, edge_cost: float) -> int:
        if not 0 <= parent < len(self.nodes):
            raise InvalidInput(f"parent index {parent} out of range")
        node = TreeNode(
            np.asarray(state, dtype=float),
            parent,
            self.nodes[parent].cost + edge_cost,
            edge_cost,
        )
        self.nodes.append(node)
        self._children.append(set())
        idx = len(self.nodes) - 1
        self._children[parent].add(idx)
        return idx

    def rewire(self, index: int, new_parent: int, edge_cost: float) -> None:
        """Reattach ``index`` under ``new_parent`` and refresh subtree costs."""
        if index == 0:
            raise InvalidInput("cannot rewire the root")
        node = self.nodes[index]
        self._children[node.parent].discard(index)
        node.parent = new_parent
        node.edge_cost = edge_cost
        self._children[new_parent].add(index)
        # Recompute cost = parent.cost + edge down the subtree (exact, not a delta).
        stack = [index]
        while stack:
            i = stack.pop()
            n = self.nodes[i]
            n.cost = self.nodes[n.parent].cost + n.edge_cost
            stack.extend(self._children[i])

    def path_to(self, index: int) -> list[int]:
        path = [index]
        while self.nodes[path[-1]].parent is not None:
            path.append(self.nodes[path[-1]].parent)
        path.reverse()
        return path

    def max_cost_inconsistency(self) -> float:
        """Largest |cost - (parent.cost + edge_cost)| over all non-root nodes."""
        worst = 0.0
        for node in self.nodes[1:]:
            worst = max(
                worst, abs(node.cost - (self.nodes[node.parent].cost + node.edge_cost))
            )
        return worst
