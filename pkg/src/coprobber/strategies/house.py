"""Two cops on {2P_2, house}-free hosts.

With diameter 2 the cops start on the middle edge ``u0 - v0`` of an induced
``P_4`` and split the rest of the graph into the private neighbourhoods
``U`` and ``V``, the common neighbourhood ``W`` and the untouched set ``Z``.
Then:

* robber next to ``W`` (case 1): cop 1 steps onto that common neighbour and
  the robber's only way out runs into it;
* otherwise (case 2): both cops step onto neighbours ``u1 in U``, ``v1 in V``
  of the robber, then retreat one at a time to ``u0`` / ``v0`` as the robber
  crosses sides.  Every robber escape the forbidden structures allow ends
  next to a cop.

Hosts of diameter 1 or without an induced ``P_4`` are handed to
``path_push(4)``; diameter-3 hosts are handed to the solved table.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionViolation
from ..game import Configuration, solve
from ..graph import Graph, bits, diameter
from ..pattern import find_induced, is_induced_witness, make_pattern
from .base import OptimalCops, PursuitMemory, Strategy, capture_move
from .push import PathPush

_P4 = make_pattern("path", [4])
_2P2 = make_pattern("linear_forest", [2, 2])
_HOUSE = make_pattern("co_p5")


@dataclass(frozen=True)
class HousePartition:
    u0: int
    v0: int
    U: int
    V: int
    W: int
    Z: int

    @classmethod
    def around(cls, g: Graph, u0: int, v0: int) -> HousePartition:
        a = g.adj[u0] & ~(1 << v0)
        b = g.adj[v0] & ~(1 << u0)
        rest = g.all_vertices & ~(1 << u0 | 1 << v0)
        return cls(u0, v0, a & ~b, b & ~a, a & b, rest & ~(a | b))

    def check(self, g: Graph) -> None:
        parts = [self.U, self.V, self.W, self.Z, 1 << self.u0, 1 << self.v0]
        union = 0
        for p in parts:
            assert union & p == 0, "partition classes overlap"
            union |= p
        assert union == g.all_vertices, "partition does not cover the graph"

    def z_edge(self, g: Graph) -> tuple[int, int] | None:
        for z in bits(self.Z):
            nz = g.adj[z] & self.Z
            if nz:
                return z, next(bits(nz))
        return None


def _least(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class HouseTwoCop(Strategy):
    name = "house_two_cop"
    validate = True

    def required_cops(self, g):
        return 2

    def init(self, g: Graph):
        diam = diameter(g)
        witness = find_induced(g, _P4) if diam == 2 else None
        if witness is None:
            if diam == 3:
                inner = OptimalCops(solve(g, 2))
                why = "diameter 3: solved-table policy"
            else:
                # the case analysis itself sends P4-free hosts to the two-cop path push
                inner = PathPush(4)
                why = "no induced P4: path_push(4)"
            cops, mem = inner.init(g)
            shell = PursuitMemory(g, list(cops), phase="fallback")
            shell.extra.update(inner=inner, inner_mem=mem, case_moves_only=diam != 3)
            shell.log(f"fallback ({why})")
            return cops, shell
        _, u0, v0, _ = witness
        part = HousePartition.around(g, u0, v0)
        mem = PursuitMemory(g, [u0, v0], phase="open")
        mem.extra.update(partition=part, case_moves_only=True)
        mem.log(f"cops on the middle edge {u0}-{v0} of induced P4 {witness}")
        return (u0, v0), mem

    def step(self, mem, conf: Configuration):
        g = mem.g
        if mem.phase == "fallback":
            inner, imem = mem.extra["inner"], mem.extra["inner_mem"]
            move, imem = inner.step(imem, conf)
            mem.extra["inner_mem"] = imem
            mem.cops = list(move)
            return tuple(move), mem
        part: HousePartition = mem.extra["partition"]
        if self.validate:
            part.check(g)
            edge = part.z_edge(g)
            if edge is not None:
                self._violation(g, _2P2, [part.u0, part.v0, *edge], "Z is not independent")
        r = conf.robber
        take = capture_move(g, mem.cops, r)
        if take is not None:
            mem.log(f"capture at {r}")
            return self._commit(mem, take, r)
        handler = getattr(self, "_" + mem.phase)
        move = handler(mem, part, r)
        return self._commit(mem, move, r)

    @staticmethod
    def _commit(mem, move, robber):
        mem.cops = list(move)
        mem.last_robber = robber
        return tuple(move), mem

    @staticmethod
    def _violation(g, pattern, verts, why):
        if is_induced_witness(g, pattern, verts):
            raise PreconditionViolation(f"{why}: induced {pattern.name} on {verts}", tuple(verts))
        raise PreconditionViolation(why)

    def _open(self, mem, part: HousePartition, z0: int):
        g = mem.g
        mem.extra["z0"] = z0
        w_nb = g.adj[z0] & part.W
        if w_nb:
            w0 = _least(w_nb)
            mem.phase = "case1"
            mem.extra["w0"] = w0
            mem.log(f"case 1: cop 1 to common neighbour {w0}")
            return [w0, part.v0]
        u_nb, v_nb = g.adj[z0] & part.U, g.adj[z0] & part.V
        if not (u_nb and v_nb):
            raise PreconditionViolation(f"robber vertex {z0} lacks neighbours in U and V; diameter exceeds 2")
        u1, v1 = _least(u_nb), _least(v_nb)
        mem.phase = "case2"
        mem.extra.update(u1=u1, v1=v1)
        mem.log(f"case 2: cops to {u1} and {v1}")
        return [u1, v1]

    def _case1(self, mem, part, r):
        w0, z0 = mem.extra["w0"], mem.extra["z0"]
        verts = house_labels(roof=part.v0, top=(part.u0, w0), bottom=(r, z0))
        self._violation(mem.g, _HOUSE, verts, f"case 1: robber escaped to {r}")

    def _case2(self, mem, part, r):
        if part.U >> r & 1:
            mem.phase = "case2_u"
            mem.extra["x2"] = r
            mem.log(f"case 2: robber to {r} in U; cop 1 back to {part.u0}")
            return [part.u0, mem.cops[1]]
        if part.V >> r & 1:
            mem.phase = "case2_v"
            mem.extra["x2"] = r
            mem.log(f"case 2: robber to {r} in V; cop 2 back to {part.v0}")
            return [mem.cops[0], part.v0]
        raise PreconditionViolation(f"robber reached {r} outside U and V in case 2")

    def _case2_side(self, mem, part, r, side):
        x2 = mem.extra["x2"]
        if side == "u":
            other, far, far_home = mem.extra["v1"], part.V, part.v0
        else:
            other, far, far_home = mem.extra["u1"], part.U, part.u0
        if part.Z >> r & 1:
            self._violation(mem.g, _2P2, [r, x2, far_home, other], f"case 2(i): robber reached {r} in Z")
        if far >> r & 1:
            mem.phase = "case2_ii_" + side
            mem.extra["y2"] = r
            mem.log(f"case 2(ii): robber to {r}; cop back to {far_home}")
            move = list(mem.cops)
            move[1 if side == "u" else 0] = far_home
            return move
        raise PreconditionViolation(f"robber reached {r} outside Z and the far side in case 2")

    def _case2_u(self, mem, part, r):
        return self._case2_side(mem, part, r, "u")

    def _case2_v(self, mem, part, r):
        return self._case2_side(mem, part, r, "v")

    def _case2_ii(self, mem, part, r, side):
        g = mem.g
        z0, x2, y2 = mem.extra["z0"], mem.extra["x2"], mem.extra["y2"]
        far1 = mem.extra["v1"] if side == "u" else mem.extra["u1"]
        a, b = (part.u0, part.v0) if side == "u" else (part.v0, part.u0)
        # x2 sits on the near side (next to a), y2 on the far side (next to b)
        candidates = [
            (_HOUSE, house_labels(roof=z0, top=(x2, y2), bottom=(a, b))),
            (_2P2, [z0, far1, r, y2]),
            (_2P2, [r, far1, a, x2]),
            (_HOUSE, house_labels(roof=r, top=(x2, y2), bottom=(a, b))),
        ]
        for pattern, verts in candidates:
            if is_induced_witness(g, pattern, verts):
                raise PreconditionViolation(
                    f"case 2(ii): robber reached {r}; induced {pattern.name} on {verts}", tuple(verts))
        raise PreconditionViolation(f"case 2(ii): robber reached {r}")

    def _case2_ii_u(self, mem, part, r):
        return self._case2_ii(mem, part, r, "u")

    def _case2_ii_v(self, mem, part, r):
        return self._case2_ii(mem, part, r, "v")


def house_labels(roof: int, top: tuple[int, int], bottom: tuple[int, int]) -> list[int]:
    """Embedding of the house pattern given its roof, the two square corners
    under the roof and the two far corners (``bottom[i]`` adjacent to ``top[i]``).

    The pattern is the complement of the path 0-1-2-3-4: vertex 2 is the
    roof over the edge 0-4 and the square is 0-3-1-4.
    """
    return [top[0], bottom[1], roof, bottom[0], top[1]]
