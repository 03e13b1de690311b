"""Planar geometry helpers for realizations"""
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist

# Points closer than this fraction of the diameter count as coincident
DISTINCT_TOL = 1e-6


def as_array(points: Sequence[Sequence[float]]) -> np.ndarray:
    return np.asarray(points, dtype=float).reshape(-1, 2)


def signed_area2(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> float:
    """Twice the signed area of triangle pqr"""
    return float((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def diameter(points: np.ndarray) -> float:
    if len(points) < 2:
        return 0.0
    return float(pdist(points).max())


def normalized_residual(p: np.ndarray, q: np.ndarray, r: np.ndarray, scale: float) -> float:
    """
    Collinearity residual of three points: 2*area / perimeter^2, scaled by perimeter / diameter
    Zero exactly when the points are collinear; invariant under similarity transforms.
    """
    perimeter = float(np.linalg.norm(q - p) + np.linalg.norm(r - q) + np.linalg.norm(p - r))
    if perimeter == 0.0 or scale == 0.0:
        return 0.0
    return abs(signed_area2(p, q, r)) / (perimeter * scale)


def line_through(p: np.ndarray, q: np.ndarray) -> Optional[np.ndarray]:
    """Homogeneous coefficients (a, b, c) of the line ax + by + c = 0, or None if p == q"""
    line = np.cross(np.append(p, 1.0), np.append(q, 1.0))
    if np.hypot(line[0], line[1]) == 0.0:
        return None
    return line


def meet(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Homogeneous intersection of two lines, unit length; (0, 0, 0) when the lines coincide"""
    point = np.cross(first, second)
    norm = float(np.linalg.norm(point))
    return point if norm == 0.0 else point / norm


def homogeneous_det(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> float:
    """Determinant of three homogeneous points; zero exactly when they are collinear, points at infinity included"""
    return float(np.linalg.det(np.vstack([p, q, r])))


def intersect(first: Optional[np.ndarray], second: Optional[np.ndarray]) -> Optional[np.ndarray]:
    """Intersection point of two homogeneous lines, or None when parallel or undefined"""
    if first is None or second is None:
        return None
    crossing = np.cross(first, second)
    scale = np.hypot(first[0], first[1]) * np.hypot(second[0], second[1])
    if abs(crossing[2]) <= 1e-14 * scale:
        return None
    return crossing[:2] / crossing[2]


def points_distinct(points: np.ndarray, scale: float) -> bool:
    if len(points) < 2:
        return True
    return bool(pdist(points).min() > DISTINCT_TOL * scale)


def block_line(points: np.ndarray, block: Sequence[int]) -> Optional[np.ndarray]:
    """Supporting line of a block through its two farthest marks, normalized to unit normal"""
    candidates = [(float(np.linalg.norm(points[x - 1] - points[y - 1])), x, y) for x, y in combinations(block, 2)]
    _, x, y = max(candidates)
    line = line_through(points[x - 1], points[y - 1])
    if line is None:
        return None
    return line / np.hypot(line[0], line[1])


def lines_distinct(points: np.ndarray, blocks: Sequence[Sequence[int]], scale: float) -> bool:
    """No two blocks lie on the same line (all six marks within tolerance of one supporting line)"""
    lines = [block_line(points, block) for block in blocks]
    if any(line is None for line in lines):
        return False
    for i, j in combinations(range(len(blocks)), 2):
        marks = set(blocks[i]) | set(blocks[j])
        distances = [abs(lines[i] @ np.append(points[x - 1], 1.0)) for x in marks]
        if max(distances) <= DISTINCT_TOL * scale:
            return False
    return True


def rotation_matrix(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def reflection_matrix(angle: float) -> np.ndarray:
    """Reflection across the line through the origin at the given angle"""
    c, s = np.cos(2 * angle), np.sin(2 * angle)
    return np.array([[c, s], [s, -c]])
