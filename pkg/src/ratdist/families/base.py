"""Parametric solution families and construction traces."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..exactmath import format_rational
from ..geometry import Point3, VertexSet, distance_report
from ..symbolic import EvaluationAtPole, RatFunc


@dataclass
class ParamFamily:
    """A named tuple of rational-function coordinates in named parameters.

    Every evaluation at a non-excluded rational parameter point must produce
    a point passing the distance oracle against its target configuration.
    ``target`` is either a fixed VertexSet or ("rectangle", width) with the
    width itself a RatFunc of the parameters.
    """

    name: str
    params: tuple[str, ...]
    coords: dict[str, RatFunc]
    target: object
    excluded: tuple[str, ...] = ()

    def evaluate(self, *args, **kwargs) -> tuple[Point3, VertexSet]:
        values = dict(zip(self.params, args))
        values.update({k: Fraction(v) for k, v in kwargs.items()})
        if set(values) != set(self.params):
            raise TypeError(f"need parameters {self.params}, got {sorted(values)}")
        coords = {}
        for name, rf in self.coords.items():
            coords[name] = (rf.eval(values[self.params[0]])
                            if len(self.params) == 1 else rf.eval(values))
        point = Point3(coords.get("x", 0), coords.get("y", 0), coords.get("z", 0))
        target = self.target
        if isinstance(target, tuple) and target[0] == "rectangle":
            width = target[1]
            a = (width.eval(values[self.params[0]])
                 if len(self.params) == 1 else width.eval(values))
            target = VertexSet.rectangle(a)
        return point, target

    def oracle(self, *args, **kwargs):
        point, target = self.evaluate(*args, **kwargs)
        return distance_report(point, target)

    def validate(self, samples: int = 25, seed: int = 0, bound: int = 30) -> bool:
        """Distance oracle at ``samples`` random non-excluded parameter points."""
        rng = random.Random(seed)
        done = 0
        attempts = 0
        while done < samples:
            attempts += 1
            if attempts > 80 * samples:
                raise RuntimeError(f"{self.name}: could not sample enough points")
            vals = {p: Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                    for p in self.params}
            try:
                rep = self.oracle(**vals)
            except (EvaluationAtPole, ZeroDivisionError):
                continue
            if not rep.all_rational:
                raise AssertionError(f"{self.name} fails oracle at {vals}")
            done += 1
        return True

    def to_json(self) -> dict:
        target = self.target
        if isinstance(target, tuple) and target[0] == "rectangle":
            tgt = {"kind": "rectangle", "width": str(target[1])}
        else:
            tgt = {"kind": target.kind,
                   "vertices": [v.as_strings() for v in target.vertices]}
        return {
            "name": self.name,
            "params": list(self.params),
            "coords": {k: str(v) for k, v in self.coords.items()},
            "target": tgt,
            "excluded": list(self.excluded),
        }


@dataclass
class TangentConstructionTrace:
    """Intermediate objects of a tangent-line construction, for auditing."""

    data: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.data[key]

    def __setitem__(self, key, value):
        self.data[key] = value

    def __contains__(self, key):
        return key in self.data
