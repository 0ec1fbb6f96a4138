"""
catalog.py
--------------------------------
Built-in examples: linear equations and the Lax pairs of the six Painleve
equations, each stored as input source plus the diagram it must produce.

Expected Cartan matrices are written in the order the literature draws them;
`literature_order` lists build-order node indices in that order when they differ.
Entries marked `derived` have inputs reconstructed from the standard
Jimbo-Miwa / classical forms rather than quoted data.
"""

from __future__ import annotations

from dataclasses import dataclass

from diagram_builder import BuildResult, build, check, congruent, isomorphic
from dsl import InputDocument, parse_document
from runtime import ValidationError

_GL2 = "{ a:[1], b:[1] }"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    title: str
    source: str
    cartan: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]
    dim_B: int
    shape: str
    literature_order: tuple[int, ...] | None = None
    derived: bool = False
    parameters: int | None = None
    hom_irr: tuple[tuple[int, ...], ...] | None = None
    special: tuple[str, str] | None = None
    intersection_form: tuple[tuple[int, ...], ...] | None = None
    witness: tuple[tuple[int, ...], ...] | None = None

    @property
    def node_count(self) -> int:
        return len(self.dims)


def _infinity(*factors: str) -> str:
    return "infinity {\n" + "".join(f"  {f}\n" for f in factors) + "}\n"


_ENTRIES = [
    CatalogEntry(
        name="airy",
        title="Airy equation y'' = xy",
        source=_infinity('factor "x^(3/2)" mult 1'),
        cartan=((2,),), dims=(1,), dim_B=0, shape="A1",
    ),
    CatalogEntry(
        name="airy-stokes",
        title="Airy equation in Stokes' form y'' = 9xy",
        source=_infinity('factor "2x^(3/2)" mult 1'),
        cartan=((2,),), dims=(1,), dim_B=0, shape="A1",
    ),
    CatalogEntry(
        name="airy-modern",
        title="Airy equation, exponent (2/3)x^(3/2)",
        source=_infinity('factor "(2/3)x^(3/2)" mult 1'),
        cartan=((2,),), dims=(1,), dim_B=0, shape="A1",
    ),
    CatalogEntry(
        name="p1",
        title="Painleve I",
        source=_infinity('factor "x^(5/2)" mult 1'),
        cartan=((0,),), dims=(1,), dim_B=2, shape="Â0", parameters=0,
    ),
    CatalogEntry(
        name="weber",
        title="Weber equation",
        source=_infinity('factor "x^2" mult 1', 'factor "-x^2" mult 1'),
        cartan=((2, -1), (-1, 2)), dims=(1, 1), dim_B=0, shape="A2",
        hom_irr=((0, 2), (2, 0)),
    ),
    CatalogEntry(
        name="p2-jm",
        title="Painleve II, Jimbo-Miwa Lax pair",
        source=_infinity('factor "x^3" mult 1', 'factor "-x^3" mult 1'),
        cartan=((2, -2), (-2, 2)), dims=(1, 1), dim_B=2, shape="Â1", parameters=1,
        hom_irr=((0, 3), (3, 0)), special=("airy", "c2"),
    ),
    CatalogEntry(
        name="p2-fn",
        title="Painleve II, Flaschka-Newell Lax pair",
        source=_infinity('factor "x^(3/2)" mult 1') + f"pole 0 {_GL2}\n",
        cartan=((2, -2), (-2, 2)), dims=(1, 1), dim_B=2, shape="Â1", parameters=1,
        special=("airy", "t1.2"),
    ),
    CatalogEntry(
        name="bessel-clifford",
        title="Bessel-Clifford equation xy'' + ay' = y",
        source=_infinity('factor "x^(1/2)" mult 1') + f"pole 0 {_GL2}\n",
        cartan=((2, -2), (-2, 4)), dims=(1, 1), dim_B=0, shape="negative-loop A2",
        literature_order=(1, 0),
    ),
    CatalogEntry(
        name="p3",
        title="Painleve III (degenerate Painleve V Lax pair)",
        source=_infinity('factor "x^(1/2)" mult 1') + f"pole 0 {_GL2}\npole 1 {_GL2}\n",
        cartan=((2, -2, 0), (-2, 4, -2), (0, -2, 2)), dims=(1, 1, 1), dim_B=2, shape="D̂2",
        literature_order=(1, 0, 2), parameters=2, special=("bessel-clifford", "t2.2"),
        intersection_form=((2, -2, 0), (-2, 2, 0), (0, 0, 2)),
        witness=((0, 1, 0), (0, 0, 1), (-1, 1, 0)),
    ),
    CatalogEntry(
        name="kummer",
        title="Kummer confluent hypergeometric equation",
        source=_infinity('factor "x" mult 1', 'factor "0" mult 1') + f"pole 0 {_GL2}\n",
        cartan=((2, 0, -1), (0, 2, -1), (-1, -1, 2)), dims=(1, 1, 1), dim_B=0, shape="A3",
        derived=True,
    ),
    CatalogEntry(
        name="gauss",
        title="Gauss hypergeometric equation",
        source=_infinity(f'factor "0" mult 2 monodromy {_GL2}') + f"pole 0 {_GL2}\npole 1 {_GL2}\n",
        cartan=((2, -1, -1, -1), (-1, 2, 0, 0), (-1, 0, 2, 0), (-1, 0, 0, 2)),
        dims=(2, 1, 1, 1), dim_B=0, shape="D4", derived=True,
    ),
    CatalogEntry(
        name="p4",
        title="Painleve IV",
        source=_infinity('factor "x^2" mult 1', 'factor "-x^2" mult 1') + f"pole 0 {_GL2}\n",
        cartan=((2, -1, -1), (-1, 2, -1), (-1, -1, 2)), dims=(1, 1, 1), dim_B=2, shape="Â2",
        derived=True, parameters=2, special=("weber", "t1.2"),
    ),
    CatalogEntry(
        name="p5",
        title="Painleve V",
        source=_infinity('factor "x" mult 1', 'factor "-x" mult 1') + f"pole 0 {_GL2}\npole 1 {_GL2}\n",
        cartan=((2, 0, -1, -1), (0, 2, -1, -1), (-1, -1, 2, 0), (-1, -1, 0, 2)),
        dims=(1, 1, 1, 1), dim_B=2, shape="Â3", derived=True, parameters=3,
        special=("kummer", "t2.2"),
    ),
    CatalogEntry(
        name="p6",
        title="Painleve VI",
        source=_infinity(f'factor "0" mult 2 monodromy {_GL2}')
        + f"pole 0 {_GL2}\npole 1 {_GL2}\npole t {_GL2}\n",
        cartan=(
            (2, -1, -1, -1, -1),
            (-1, 2, 0, 0, 0),
            (-1, 0, 2, 0, 0),
            (-1, 0, 0, 2, 0),
            (-1, 0, 0, 0, 2),
        ),
        dims=(2, 1, 1, 1, 1), dim_B=2, shape="D̂4", derived=True, parameters=4,
        special=("gauss", "t3.2"),
    ),
]

EXAMPLES: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def names() -> list[str]:
    return list(EXAMPLES)


def entry(name: str) -> CatalogEntry:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise ValidationError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}") from None


def catalog(name: str) -> InputDocument:
    return parse_document(entry(name).source)


def verify(name: str, result: BuildResult | None = None) -> list[str]:
    """Compare a build of the named example with its stored expectations.

    Returns a list of mismatch descriptions (empty when everything agrees).
    """
    expected = entry(name)
    result = result or build(catalog(name).problem)
    problems = []

    cartan = result.cartan
    if expected.literature_order is not None:
        cartan = cartan.permuted(expected.literature_order)
    if cartan.C != expected.cartan:
        problems.append(f"Cartan matrix {cartan.C} != expected {expected.cartan}")
    if result.diagram.dims != expected.dims:
        problems.append(f"dimension vector {result.diagram.dims} != expected {expected.dims}")
    if result.diagram.size != expected.node_count:
        problems.append(f"{result.diagram.size} nodes, expected {expected.node_count}")
    if result.cartan.dim_B != expected.dim_B:
        problems.append(f"dim M_B = {result.cartan.dim_B}, expected {expected.dim_B}")
    if expected.parameters is not None and result.diagram.size - 1 != expected.parameters:
        problems.append(f"{result.diagram.size - 1} = nodes - 1, expected {expected.parameters} parameters")
    if expected.hom_irr is not None and result.hom_irr != expected.hom_irr:
        problems.append(f"Irr Hom matrix {result.hom_irr} != expected {expected.hom_irr}")
    try:
        check(result)
    except AssertionError as e:
        problems.append(str(e))

    if expected.special is not None:
        linear, node_id = expected.special
        reduced = result.diagram.delete_node(node_id)
        target = build(catalog(linear).problem).diagram
        if not isomorphic(reduced, target):
            problems.append(f"removing {node_id} does not give the {linear} diagram")

    form = expected.intersection_form
    if form is not None and not congruent(form, expected.cartan, expected.witness):
        problems.append("intersection form is not congruent to the Cartan matrix via the stored witness")
    return problems
