"""Rendering of check, verification and extension reports.

Every report is first turned into a JSON-compatible dict (its to_json), then
rendered as pretty JSON, YAML or plain text. The JSON and YAML forms follow
specs/001-specialization-semilattices/contracts/report-schema.json.
"""

import json
from typing import Any

import yaml

from src.models.extension import Extension
from src.models.homomorphism import Homomorphism
from src.models.report import AxiomReport, VerificationReport


FORMATS = ("text", "json", "yaml")


def extension_summary(extension: Extension, name: str) -> dict:
    """JSON-compatible description of an extension, one entry per class."""
    return {
        "name": name,
        "base_size": extension.base.size,
        "pairs": extension.space.size,
        "classes": extension.size,
        "normalized": extension.normalized,
        "z": [extension.base.labels[v] for v in sorted(extension.z)],
        "upsilon": {
            extension.base.labels[a]: extension.label(int(c))
            for a, c in enumerate(extension.upsilon)
        },
        "class_table": [
            {
                "class": extension.label(c),
                "closure": extension.label(extension.k(c)),
                "members": len(extension.members(c)),
            }
            for c in range(extension.size)
        ],
    }


def hom_summary(hom: Homomorphism, name: str) -> dict:
    return {
        "name": name,
        "kind": hom.kind.value,
        "map": {hom.dom.labels[x]: hom.cod.labels[y] for x, y in enumerate(hom.as_tuple())},
    }


def check_summary(name: str, reports: list[AxiomReport], verifications: list[VerificationReport]) -> dict:
    return {
        "name": name,
        "ok": all(r.ok for r in reports) and all(v.ok for v in verifications),
        "axioms": [r.to_json() for r in reports],
        "properties": [v.to_json() for v in verifications],
    }


def verification_summary(name: str, verifications: list[VerificationReport]) -> dict:
    return {
        "name": name,
        "ok": all(v.ok for v in verifications),
        "properties": [v.to_json() for v in verifications],
    }


class Reporter:
    """Renders report dicts in the requested output format."""

    @staticmethod
    def generate_json_report(data: dict) -> str:
        """Pretty-printed JSON with sorted keys for determinism."""
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @staticmethod
    def generate_yaml_report(data: dict) -> str:
        return yaml.safe_dump(
            data, default_flow_style=False, sort_keys=True, allow_unicode=True
        )

    @staticmethod
    def generate_text_report(data: dict) -> str:
        """Indented key: value lines, failures and violations flagged.

        Example:
            >>> print(Reporter.generate_text_report({"name": "s", "ok": True}), end="")
            name: s
            ok: PASS
        """
        lines: list[str] = []
        _text_lines(data, 0, lines)
        return "\n".join(lines) + "\n"

    @classmethod
    def render(cls, data: dict, fmt: str = "text") -> str:
        if fmt == "json":
            return cls.generate_json_report(data)
        if fmt == "yaml":
            return cls.generate_yaml_report(data)
        if fmt == "text":
            return cls.generate_text_report(data)
        raise ValueError(f"Unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")


def _scalar(key: str, value: Any) -> str:
    if key == "ok" and isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _text_lines(value: Any, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                _text_lines(item, depth + 1, lines)
            elif isinstance(item, (dict, list)):
                lines.append(f"{pad}{key}: none")
            else:
                lines.append(f"{pad}{key}: {_scalar(key, item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                _text_lines(item, depth + 1, lines)
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{value}")
