"""Reading and writing structure files.

A structure file is a JSON object (YAML flow syntax is accepted as well):

    {
      "name": "two-chain",
      "elements": ["0", "1"],
      "join": [[0, 1], [1, 1]],
      "specialization": "leq",
      "Z": [1]
    }

"join" is either an explicit index table or "powerset" together with
"ground_size", in which case element labels are the subsets {p,q,...} and
"elements" may be omitted. "specialization" is one of

    "leq"                              the order itself
    {"pairs": [[x, y], ...]}           exactly these pairs, validated
    {"seeds": [[x, y], ...]}           least specialization containing them
    {"ideal": [["p"], ...]}            inclusion modulo an ideal (powerset only)
    {"preorder": [["q", "p"], ...]}    closure = down-closure (powerset only)

Elements in pairs and in "Z" are given by label or by index. See
specs/001-specialization-semilattices/contracts/structure-file-schema.json.
"""

import json
import logging
from typing import Any

import yaml

from src.config import DEFAULT_CORE_CAP, DEFAULT_POWERSET_CAP
from src.models.closure_set import ClosureSet
from src.models.errors import CapExceededError, StructureError, StructureFileError
from src.models.powerset import GroundSet, Ideal
from src.models.semilattice import JoinSemilattice, SpecSemilattice
from src.models.structure_file import StructureFile
from src.services.core import (
    complete_specialization,
    validate_join_table,
    validate_specialization,
)
from src.services.examples_factory import mod_ideal, powerset_from_preorder
from src.utils.bitset import parse_points


logger = logging.getLogger(__name__)

SPECIALIZATION_FORMS = ("pairs", "seeds", "ideal", "preorder")


def _field_lines(text: str) -> dict[str, int]:
    """1-based line of each top-level key, when the document is a mapping."""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return {}
    if not isinstance(node, yaml.MappingNode):
        return {}
    return {
        key.value: key.start_mark.line + 1
        for key, _ in node.value
        if isinstance(key, yaml.ScalarNode)
    }


class _Reader:
    """Field access with error context for one parsed document."""

    def __init__(self, data: dict, lines: dict[str, int]):
        self.data = data
        self.lines = lines

    def error(self, field: str, message: str, witness: tuple | None = None) -> StructureFileError:
        top = field.split(".")[0]
        return StructureFileError(message, field=field, line=self.lines.get(top), witness=witness)

    def require(self, field: str) -> Any:
        if field not in self.data:
            raise self.error(field, "missing required field")
        return self.data[field]


def _element(reader: _Reader, base: JoinSemilattice, value: Any, field: str) -> int:
    if isinstance(value, bool):
        raise reader.error(field, f"expected an element label or index, got {value!r}")
    if isinstance(value, int):
        if not 0 <= value < base.size:
            raise reader.error(field, f"index {value} is outside 0..{base.size - 1}")
        return value
    if isinstance(value, str):
        if value not in base.labels:
            raise reader.error(field, f"unknown element {value!r}")
        return base.labels.index(value)
    raise reader.error(field, f"expected an element label or index, got {value!r}")


def _pair_list(reader: _Reader, base: JoinSemilattice, value: Any, field: str) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise reader.error(field, "expected a list of [x, y] pairs")
    pairs = []
    for i, item in enumerate(value):
        if not isinstance(item, list) or len(item) != 2:
            raise reader.error(f"{field}[{i}]", "expected a pair [x, y]")
        pairs.append(
            (
                _element(reader, base, item[0], f"{field}[{i}]"),
                _element(reader, base, item[1], f"{field}[{i}]"),
            )
        )
    return pairs


def _point_list(reader: _Reader, ground_size: int, value: Any, field: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise reader.error(field, "expected a list of point names")
    try:
        parse_points(value, ground_size)
    except ValueError as e:
        raise reader.error(field, str(e)) from None
    return value


def _read_join(reader: _Reader, core_cap: int, powerset_cap: int) -> tuple[JoinSemilattice, int | None]:
    join = reader.require("join")
    if join == "powerset":
        ground_size = reader.require("ground_size")
        if isinstance(ground_size, bool) or not isinstance(ground_size, int) or ground_size < 0:
            raise reader.error("ground_size", "expected a non-negative integer")
        if ground_size > powerset_cap:
            raise CapExceededError(
                "Powerset ground set exceeds the powerset cap",
                limit=powerset_cap,
                estimate=ground_size,
            )
        base = GroundSet(ground_size).powerset()
        if "elements" in reader.data and list(reader.data["elements"]) != list(base.labels):
            raise reader.error("elements", "powerset elements must be listed as the subsets in mask order")
        return base, ground_size

    if not isinstance(join, list):
        raise reader.error("join", "expected an n x n index table or \"powerset\"")
    if len(join) > core_cap:
        raise CapExceededError(
            "Structure exceeds the core cap", limit=core_cap, estimate=len(join)
        )
    labels = reader.data.get("elements")
    if labels is not None and (
        not isinstance(labels, list) or not all(isinstance(v, (str, int)) for v in labels)
    ):
        raise reader.error("elements", "expected a list of labels")
    if any(not isinstance(row, list) for row in join) or any(
        isinstance(v, bool) or not isinstance(v, int) for row in join for v in row
    ):
        raise reader.error("join", "expected an n x n table of integer indices")
    try:
        base = JoinSemilattice(join=join, labels=labels)
    except StructureError as e:
        raise reader.error("elements" if "label" in str(e) else "join", str(e), e.witness) from None
    return base, None


def _read_specialization(
    reader: _Reader,
    base: JoinSemilattice,
    ground_size: int | None,
    validate: bool,
) -> SpecSemilattice:
    value = reader.require("specialization")
    if value == "leq":
        return SpecSemilattice.from_order(base)
    if not isinstance(value, dict) or len(value) != 1 or next(iter(value)) not in SPECIALIZATION_FORMS:
        raise reader.error(
            "specialization",
            f"expected \"leq\" or an object with one of {', '.join(SPECIALIZATION_FORMS)}",
        )
    form, body = next(iter(value.items()))
    field = f"specialization.{form}"

    if form == "pairs":
        structure = SpecSemilattice.from_pairs(base, _pair_list(reader, base, body, field))
        if validate:
            report = validate_specialization(structure)
            if not report.ok:
                violation = report.violations[0]
                raise reader.error(
                    field,
                    f"relation violates {violation.axiom} at {violation.witness}",
                    violation.witness,
                )
        return structure
    if form == "seeds":
        return complete_specialization(base, _pair_list(reader, base, body, field))

    if ground_size is None:
        raise reader.error(field, f"\"{form}\" needs \"join\": \"powerset\"")
    if not isinstance(body, list):
        raise reader.error(field, "expected a list")
    try:
        if form == "ideal":
            masks = [
                parse_points(_point_list(reader, ground_size, item, f"{field}[{i}]"), ground_size)
                for i, item in enumerate(body)
            ]
            return mod_ideal(ground_size, Ideal.generated_by(ground_size, masks))
        edges = [(x, x) for x in range(ground_size)]
        for i, item in enumerate(body):
            points = _point_list(reader, ground_size, item, f"{field}[{i}]")
            if len(points) != 2:
                raise reader.error(f"{field}[{i}]", "expected a pair of point names")
            edges.append(
                (
                    parse_points(points[:1], ground_size).bit_length() - 1,
                    parse_points(points[1:], ground_size).bit_length() - 1,
                )
            )
        return powerset_from_preorder(ground_size, edges)[0]
    except StructureFileError:
        raise
    except StructureError as e:
        raise reader.error(field, str(e), e.witness) from None


def parse_structure(
    text: str,
    *,
    validate: bool = True,
    core_cap: int = DEFAULT_CORE_CAP,
    powerset_cap: int = DEFAULT_POWERSET_CAP,
) -> StructureFile:
    """Parse and validate a structure file.

    Args:
        text: File contents.
        validate: When False, axiom violations of the join table or of an
            explicit pair list are left for the caller to report.
        core_cap: Maximum carrier size of an explicit table.
        powerset_cap: Maximum powerset ground set.

    Returns:
        StructureFile: Unpacks as (structure, z).

    Raises:
        StructureFileError: Schema or axiom violations, with line and field.
        CapExceededError: If a size cap is exceeded.
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise StructureFileError(
            f"not valid JSON/YAML: {getattr(e, 'problem', None) or e}",
            line=mark.line + 1 if mark is not None else None,
        ) from None
    if not isinstance(data, dict):
        raise StructureFileError("top level must be an object")

    reader = _Reader(data, _field_lines(text))
    unknown = sorted(set(data) - {"name", "elements", "join", "ground_size", "specialization", "Z"})
    if unknown:
        raise reader.error(unknown[0], "unknown field")

    name = reader.require("name")
    if not isinstance(name, str) or not name:
        raise reader.error("name", "expected a non-empty string")

    base, ground_size = _read_join(reader, core_cap, powerset_cap)
    if validate:
        report = validate_join_table(base)
        if not report.ok:
            violation = report.violations[0]
            raise reader.error(
                "join", f"table is not {violation.axiom} at {violation.witness}", violation.witness
            )

    structure = _read_specialization(reader, base, ground_size, validate)

    z = None
    if "Z" in data:
        members = data["Z"]
        if not isinstance(members, list):
            raise reader.error("Z", "expected a list of elements")
        indices = [_element(reader, base, v, f"Z[{i}]") for i, v in enumerate(members)]
        try:
            z = ClosureSet.of(structure, indices)
        except StructureError as e:
            raise reader.error("Z", str(e), e.witness) from None

    logger.debug(
        "Structure parsed",
        extra={"name": name, "size": structure.size, "z": None if z is None else z.sorted()},
    )
    return StructureFile(name=name, structure=structure, z=z)


def serialize_structure(
    structure: SpecSemilattice, z: ClosureSet | None = None, name: str = "structure"
) -> str:
    """Canonical structure file text.

    Elements are sorted by label and the table reindexed accordingly; the
    specialization is written as the full sorted pair list and Z as sorted
    indices in the new numbering.
    """
    labels = structure.labels
    order = sorted(range(structure.size), key=lambda x: labels[x])
    position = {old: new for new, old in enumerate(order)}
    join = structure.base.join

    data: dict[str, Any] = {
        "name": name,
        "elements": [labels[x] for x in order],
        "join": [[position[int(join[x, y])] for y in order] for x in order],
        "specialization": {
            "pairs": sorted([labels[x], labels[y]] for x, y in structure.pairs())
        },
    }
    if z is not None:
        data["Z"] = sorted(position[v] for v in z.members)
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside braces."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def parse_hom_map(text: str, dom: SpecSemilattice, cod: SpecSemilattice) -> list[int]:
    """Parse "a->x,b->y,..." into an image table.

    Every domain label must be mapped exactly once. Labels containing commas
    (powerset labels like {p,q}) are supported.

    Raises:
        StructureError: On unknown, missing or repeated labels or bad syntax.
    """
    table: dict[int, int] = {}
    for entry in _split_top_level(text):
        if "->" not in entry:
            raise StructureError(f"Map entry {entry!r} is not of the form source->target")
        source, target = (part.strip() for part in entry.split("->", 1))
        x = dom.base.index_of(source)
        if x in table:
            raise StructureError(f"Element {source!r} is mapped twice")
        table[x] = cod.base.index_of(target)
    missing = [dom.labels[x] for x in range(dom.size) if x not in table]
    if missing:
        raise StructureError(f"Map does not assign an image to {missing[0]!r}")
    return [table[x] for x in range(dom.size)]
