"""Run every stage on the random corpus once; tests share the results."""

from dataclasses import dataclass, field

from implicitkit.basepoints import analyze_base_points, extraneous_and_split
from implicitkit.corpus import random_corpus
from implicitkit.errors import NotProjectiveDimensionOne
from implicitkit.mubasis import mu_basis, resultant_of_basis
from implicitkit.satur import saturation_indeg
from implicitkit.strands import macrae_generator


@dataclass
class Outcome:
    entry: object
    eta: int
    macrae: dict            # nu -> generator, for nu in eta-1 .. eta+2 (nu >= 0)
    locus: object
    split: object
    resultant: object = None
    mu: tuple | None = None
    notes: list = field(default_factory=list)

    @property
    def param(self):
        return self.entry.param


def run_entry(entry):
    param = entry.param
    sat = saturation_indeg(param)
    eta = sat.eta
    nus = [v for v in range(eta - 1, eta + 3) if v >= 0]
    macrae = {v: macrae_generator(param, v) for v in nus}
    nu = max(eta, 0)
    locus = analyze_base_points(param, nu)
    split = extraneous_and_split(param, macrae[nu], locus.points)
    out = Outcome(entry, eta, macrae, locus, split)
    try:
        basis = mu_basis(param)
    except NotProjectiveDimensionOne as exc:
        out.notes.append(str(exc))
    else:
        out.mu = basis.mu
        out.resultant = resultant_of_basis(basis).normalize()
    return out


def run_corpus(seed=2024):
    return [run_entry(e) for e in random_corpus(seed=seed)]
