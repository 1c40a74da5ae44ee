"""Parser for component lists such as ``A1*3,A2,P,C10:7,H2:2,1:1``.

Tokens:

* ``A<k>``: an ``A_k`` singularity (odd ``k`` is a tacnode, even ``k`` a cusp)
* ``P``: a simple point
* ``C<N>:<L>``: a 2-curvilinear scheme with length ``N`` and contact ``L``
* ``H<m>:<l0>[,<l1>]:<s>``: a member of ``H_{m,E,s}``

Any token may be followed by ``*<n>`` to repeat it.
"""

from __future__ import annotations

import re

from ..schemes import Component, Cusp, HmesComponent, SimplePoint, Tacnode, TwoCurvilinear
from ..staircase import Staircase

_TOKEN = re.compile(r"""
    \s*(?:
        H(?P<hm>\d+):(?P<l0>\d+)(?:,(?P<l1>\d+))?:(?P<s>\d+)
      | A(?P<ak>\d+)
      | C(?P<cn>\d+):(?P<cl>\d+)
      | (?P<pt>P)
    )(?:\*(?P<rep>\d+))?\s*(?P<sep>,|$)
""", re.VERBOSE)


def a_type(k: int) -> Component:
    if k < 1:
        raise ValueError(f"A_{k} is not a multiplicity-two singularity")
    return Tacnode((k + 1) // 2) if k % 2 else Cusp((k + 2) // 2)


def parse_types(spec: str) -> list[Component]:
    out: list[Component] = []
    pos = 0
    spec = spec.strip()
    if not spec:
        raise ValueError("empty type spec")
    while pos < len(spec):
        m = _TOKEN.match(spec, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse type spec at {spec[pos:]!r}")
        g = m.groupdict()
        if g["hm"] is not None:
            stairs = (int(g["l0"]), int(g["l1"] or 0))
            c = HmesComponent(int(g["hm"]), Staircase(stairs), int(g["s"]))
        elif g["ak"] is not None:
            c = a_type(int(g["ak"]))
        elif g["cn"] is not None:
            c = TwoCurvilinear(int(g["cn"]), int(g["cl"]))
        else:
            c = SimplePoint()
        out.extend([c] * int(g["rep"] or 1))
        pos = m.end()
        if g["sep"] == "," and pos == len(spec):
            raise ValueError("trailing comma in type spec")
    return out


def format_types(components) -> str:
    return ",".join(str(c) for c in components)
