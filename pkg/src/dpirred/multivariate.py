"""Multivariate Dirichlet polynomials: finite sums of terms
a / (i_1^s_1 ... i_n^s_n) with positive integer indices per indeterminate.

The product multiplies index tuples coordinatewise.  JSON schema:
{"vars": ["s1", "s2"], "terms": [{"indices": [8, 2], "coeff": 1}]}.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import Ring, ZZ, gcd_list


class MultiDirichletPoly:
    __slots__ = ("ring", "vars", "_terms")

    def __init__(self, terms, variables, ring: Ring = ZZ):
        variables = tuple(variables)
        t = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for idx, c in items:
            idx = tuple(int(i) for i in idx)
            if len(idx) != len(variables):
                raise ValueError(f"index tuple {idx} does not match {variables}")
            if any(i < 1 for i in idx):
                raise ValueError(f"indices must be >= 1, got {idx}")
            c = ring.coerce(c)
            if c == 0:
                continue
            if idx in t:
                raise ValueError(f"duplicate index {idx}")
            t[idx] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "_terms", dict(sorted(t.items())))

    def __setattr__(self, *a):
        raise AttributeError("MultiDirichletPoly is immutable")

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self):
        return list(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(all(i == 1 for i in idx) for idx in self._terms)

    def n_vars(self):
        return len(self.vars)

    def total_degree(self) -> int:
        best = 0
        for idx in self._terms:
            prod = 1
            for i in idx:
                prod *= i
            best = max(best, prod)
        return best

    def degree_in(self, var: str) -> int:
        k = self.vars.index(var)
        return max((idx[k] for idx in self._terms), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, MultiDirichletPoly)
            and self.ring == other.ring
            and self.vars == other.vars
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.ring, self.vars, tuple(self._terms.items())))

    def __add__(self, other):
        self._check(other)
        t = dict(self._terms)
        for idx, c in other._terms.items():
            t[idx] = self.ring.add(t.get(idx, 0), c)
        return MultiDirichletPoly(t, self.vars, self.ring)

    def __neg__(self):
        return MultiDirichletPoly(
            {i: self.ring.neg(c) for i, c in self._terms.items()}, self.vars, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        acc = {}
        for i1, a in self._terms.items():
            for i2, b in other._terms.items():
                idx = tuple(x * y for x, y in zip(i1, i2))
                acc[idx] = self.ring.add(acc.get(idx, 0), self.ring.mul(a, b))
        return MultiDirichletPoly(acc, self.vars, self.ring)

    def scale(self, c):
        c = self.ring.coerce(c)
        return MultiDirichletPoly(
            {i: self.ring.mul(a, c) for i, a in self._terms.items()}, self.vars, self.ring)

    def pow(self, e: int):
        out = MultiDirichletPoly({(1,) * len(self.vars): 1}, self.vars, self.ring)
        for _ in range(e):
            out = out * self
        return out

    def _check(self, other):
        if self.ring != other.ring or self.vars != other.vars:
            raise ValueError("mismatched rings or variables")

    def algebraic_shift(self) -> tuple[int, ...]:
        """Per-coordinate gcd of the support indices."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        out = []
        for k in range(len(self.vars)):
            out.append(gcd_list(idx[k] for idx in self._terms))
        return tuple(out)

    def is_algebraically_primitive(self) -> bool:
        return all(d == 1 for d in self.algebraic_shift())

    def algebraically_primitive_part(self):
        d = self.algebraic_shift()
        return MultiDirichletPoly(
            {tuple(i // g for i, g in zip(idx, d)): c for idx, c in self._terms.items()},
            self.vars, self.ring)

    def coefficient_polys(self, outer: str):
        """Split off one indeterminate: map outer-index -> the coefficient,
        itself a MultiDirichletPoly in the remaining variables."""
        k = self.vars.index(outer)
        rest = self.vars[:k] + self.vars[k + 1:]
        groups: dict[int, dict] = {}
        for idx, c in self._terms.items():
            sub = idx[:k] + idx[k + 1:]
            groups.setdefault(idx[k], {})[sub] = c
        return {
            i: MultiDirichletPoly(t, rest, self.ring) for i, t in sorted(groups.items())
        }

    def to_json(self) -> str:
        terms = []
        for idx, c in self._terms.items():
            if isinstance(c, Fraction) and c.denominator != 1:
                coeff = [c.numerator, c.denominator]
            else:
                coeff = int(c)
            terms.append({"indices": list(idx), "coeff": coeff})
        obj = {"vars": list(self.vars), "terms": terms}
        if self.ring.kind == "Fp":
            obj["p"] = self.ring.p
        if self.ring.kind == "Q":
            obj["ring"] = "Q"
        return json.dumps(obj, separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "MultiDirichletPoly":
        obj = json.loads(s)
        variables = obj["vars"]
        if "p" in obj:
            from .core import GF

            ring = GF(obj["p"])
        elif obj.get("ring") == "Q":
            ring = Ring("Q")
        else:
            ring = ZZ
        terms = []
        for t in obj["terms"]:
            c = t["coeff"]
            if isinstance(c, list):
                c = Fraction(c[0], c[1])
            terms.append((tuple(t["indices"]), c))
        return cls(terms, variables, ring)

    def text(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for idx, c in self._terms.items():
            den = "*".join(
                f"{i}^{v}" for i, v in zip(idx, self.vars) if i > 1)
            bits.append(f"{c}" if not den else f"{c}/({den})")
        return " + ".join(bits)

    def __repr__(self):
        return f"MultiDirichletPoly({self.text()!r}, vars={self.vars})"
