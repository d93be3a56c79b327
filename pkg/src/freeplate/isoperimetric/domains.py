"""Closed-form test regions: balls, ellipsoids, boxes and simple polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import DomainError
from ..special_functions import gamma_half_integer

__all__ = ["DomainSpec", "unit_ball_volume", "parse_domain", "make_domain"]

KINDS = ("ball", "ellipsoid", "box", "polygon2d")


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / gamma_half_integer(d / 2 + 1)


def _shoelace(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return np.sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    return (
        orient(p1, p2, q1) * orient(p1, p2, q2) < 0
        and orient(q1, q2, p1) * orient(q1, q2, p2) < 0
    )


@dataclass(frozen=True)
class DomainSpec:
    """A region given by kind, shape parameters and a translation ``offset``.

    * ball: ``params = (radius,)``
    * ellipsoid: semi-axes, one per dimension
    * box: side lengths, centred at the offset
    * polygon2d: vertex coordinates (n x 2), relative to the offset
    """

    kind: str
    d: int
    params: tuple
    offset: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.d < 2:
            raise DomainError("dimension must be >= 2")
        off = tuple(float(x) for x in self.offset) if self.offset else (0.0,) * self.d
        if len(off) != self.d:
            raise DomainError("offset length must equal d")
        object.__setattr__(self, "offset", off)
        if self.kind == "polygon2d":
            if self.d != 2:
                raise DomainError("polygon2d needs d = 2")
            verts = np.asarray(self.params, dtype=float)
            if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
                raise DomainError("polygon needs at least 3 (x, y) vertices")
            area = _shoelace(verts)
            if abs(area) <= 0:
                raise DomainError("degenerate polygon (zero area)")
            if area < 0:
                verts = verts[::-1]
            n = len(verts)
            for i in range(n):
                for j in range(i + 2, n):
                    if i == 0 and j == n - 1:
                        continue
                    if _segments_cross(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]):
                        raise DomainError("polygon edges intersect")
            object.__setattr__(self, "params", tuple(tuple(map(float, v)) for v in verts))
        else:
            vals = tuple(float(x) for x in self.params)
            need = 1 if self.kind == "ball" else self.d
            if len(vals) != need:
                raise DomainError(f"{self.kind} needs {need} parameter(s), got {len(vals)}")
            if any(not (v > 0 and math.isfinite(v)) for v in vals):
                raise DomainError(f"{self.kind} parameters must be positive")
            object.__setattr__(self, "params", vals)

    @property
    def _off(self) -> np.ndarray:
        return np.asarray(self.offset)

    @property
    def volume(self) -> float:
        if self.kind == "ball":
            return unit_ball_volume(self.d) * self.params[0] ** self.d
        if self.kind == "ellipsoid":
            return unit_ball_volume(self.d) * math.prod(self.params)
        if self.kind == "box":
            return math.prod(self.params)
        return _shoelace(np.asarray(self.params))

    @property
    def bounding_radius(self) -> float:
        """max |x - offset| over the region."""
        if self.kind == "ball":
            return self.params[0]
        if self.kind == "ellipsoid":
            return max(self.params)
        if self.kind == "box":
            return 0.5 * math.sqrt(sum(s * s for s in self.params))
        return float(np.max(np.linalg.norm(np.asarray(self.params), axis=1)))

    @property
    def reference_point(self) -> np.ndarray:
        """Centroid (the offset itself for the centrally symmetric kinds)."""
        if self.kind != "polygon2d":
            return self._off.copy()
        v = np.asarray(self.params)
        x, y = v[:, 0], v[:, 1]
        cross = x * np.roll(y, -1) - np.roll(x, -1) * y
        a = 0.5 * cross.sum()
        cx = ((x + np.roll(x, -1)) * cross).sum() / (6 * a)
        cy = ((y + np.roll(y, -1)) * cross).sum() / (6 * a)
        return self._off + np.array([cx, cy])

    def scaled(self, s: float) -> "DomainSpec":
        if not s > 0:
            raise DomainError("scale factor must be positive")
        if self.kind == "polygon2d":
            params = tuple((s * x, s * y) for x, y in self.params)
        else:
            params = tuple(s * p for p in self.params)
        return replace(self, params=params)

    def translated(self, vec) -> "DomainSpec":
        vec = np.asarray(vec, dtype=float)
        return replace(self, offset=tuple(self._off + vec))

    def contains(self, x) -> np.ndarray:
        """Membership for points of shape (..., d); boundary counts as inside."""
        p = np.asarray(x, dtype=float) - self._off
        if self.kind == "ball":
            return np.sum(p * p, axis=-1) <= self.params[0] ** 2
        if self.kind == "ellipsoid":
            return np.sum((p / np.asarray(self.params)) ** 2, axis=-1) <= 1.0
        if self.kind == "box":
            return np.all(np.abs(p) <= 0.5 * np.asarray(self.params), axis=-1)
        return _winding_inside(np.asarray(self.params), p)

    def crossings(self, center, dirs: np.ndarray):
        """Boundary crossings of the rays center + t u, t > 0.

        Returns (t, sign) arrays of shape (n_dirs, k); sign is +1 where the
        ray leaves the region, -1 where it enters and 0 for unused slots.
        """
        p = np.asarray(center, dtype=float) - self._off
        u = np.asarray(dirs, dtype=float)
        if self.kind in ("ball", "ellipsoid"):
            scale = np.full(self.d, self.params[0]) if self.kind == "ball" else np.asarray(self.params)
            q, w = p / scale, u / scale
            A = np.sum(w * w, axis=1)
            B = w @ q
            C = float(q @ q) - 1.0
            disc = B * B - A * C
            ok = disc > 0
            root = np.sqrt(np.where(ok, disc, 0.0))
            t_out = (-B + root) / A
            t_in = (-B - root) / A
            s_out = np.where(ok & (t_out > 0), 1.0, 0.0)
            s_in = np.where(ok & (t_in > 0), -1.0, 0.0)
            return np.stack([t_out, t_in], 1), np.stack([s_out, s_in], 1)
        if self.kind == "box":
            half = 0.5 * np.asarray(self.params)
            with np.errstate(divide="ignore", invalid="ignore"):
                t1 = (-half - p) / u
                t2 = (half - p) / u
            lo = np.where(u == 0, np.where(np.abs(p) <= half, -np.inf, np.inf), np.minimum(t1, t2))
            hi = np.where(u == 0, np.where(np.abs(p) <= half, np.inf, -np.inf), np.maximum(t1, t2))
            t_in, t_out = lo.max(axis=1), hi.min(axis=1)
            ok = t_out > np.maximum(t_in, 0.0)
            s_out = np.where(ok, 1.0, 0.0)
            s_in = np.where(ok & (t_in > 0), -1.0, 0.0)
            t_out = np.where(ok, t_out, 0.0)
            t_in = np.where(ok & (t_in > 0), t_in, 0.0)
            return np.stack([t_out, t_in], 1), np.stack([s_out, s_in], 1)
        # polygon: each CCW edge e = v_j -> v_{j+1}, outward normal (ey, -ex)
        v = np.asarray(self.params) - p
        e = np.roll(v, -1, axis=0) - v
        normal = np.stack([e[:, 1], -e[:, 0]], 1)
        # solve t u = v_j + s e_j for (t, s)
        det = u[:, None, 0] * (-e[None, :, 1]) - u[:, None, 1] * (-e[None, :, 0])
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (v[None, :, 0] * (-e[None, :, 1]) - v[None, :, 1] * (-e[None, :, 0])) / det
            s = (u[:, None, 0] * v[None, :, 1] - u[:, None, 1] * v[None, :, 0]) / det
        hit = (det != 0) & (t > 0) & (s >= 0) & (s < 1)
        sign = np.where(hit, np.sign(u @ normal.T), 0.0)
        return np.where(hit, t, 0.0), sign

    def to_config(self) -> str:
        lines = [f"kind={self.kind}", f"d={self.d}"]
        if self.kind == "polygon2d":
            lines.append("vertices=" + ";".join(f"{x!r},{y!r}" for x, y in self.params))
        else:
            key = {"ball": "radius", "ellipsoid": "axes", "box": "sides"}[self.kind]
            lines.append(f"{key}=" + ",".join(repr(p) for p in self.params))
        lines.append("offset=" + ",".join(repr(o) for o in self.offset))
        return "\n".join(lines) + "\n"


def _winding_inside(verts: np.ndarray, p: np.ndarray) -> np.ndarray:
    pts = np.atleast_2d(p)
    wn = np.zeros(len(pts), dtype=int)
    on_edge = np.zeros(len(pts), dtype=bool)
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        cross = (b[0] - a[0]) * (pts[:, 1] - a[1]) - (pts[:, 0] - a[0]) * (b[1] - a[1])
        within = (
            (np.minimum(a[0], b[0]) <= pts[:, 0]) & (pts[:, 0] <= np.maximum(a[0], b[0]))
            & (np.minimum(a[1], b[1]) <= pts[:, 1]) & (pts[:, 1] <= np.maximum(a[1], b[1]))
        )
        on_edge |= (cross == 0) & within
        up = (a[1] <= pts[:, 1]) & (b[1] > pts[:, 1]) & (cross > 0)
        down = (a[1] > pts[:, 1]) & (b[1] <= pts[:, 1]) & (cross < 0)
        wn += up.astype(int) - down.astype(int)
    out = (wn != 0) | on_edge
    return out.reshape(np.shape(p)[:-1]) if np.ndim(p) > 1 else bool(out[0])


def make_domain(kind: str, d: int, params, offset=()) -> DomainSpec:
    return DomainSpec(kind, int(d), tuple(params), tuple(offset))


def _floats(text: str) -> tuple:
    return tuple(float(t) for t in text.replace(" ", "").split(",") if t)


def parse_domain(text: str) -> DomainSpec:
    """Parse a key=value block (kind, d, radius|axes|sides|vertices, offset)."""
    entries = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        entries[key] = val
    if "kind" not in entries:
        raise DomainError("domain block needs kind=")
    kind = entries.pop("kind")
    d = int(entries.pop("d", "2"))
    offset = _floats(entries.pop("offset", ""))
    if kind == "polygon2d":
        verts = tuple(_floats(v) for v in entries.pop("vertices").split(";") if v.strip())
        params = verts
    else:
        key = {"ball": "radius", "ellipsoid": "axes", "box": "sides"}.get(kind)
        if key is None:
            raise DomainError(f"unknown domain kind {kind!r}")
        if key not in entries:
            raise DomainError(f"{kind} needs {key}=")
        params = _floats(entries.pop(key))
    if entries:
        raise DomainError(f"unknown domain keys: {sorted(entries)}")
    return DomainSpec(kind, d, params, offset)
