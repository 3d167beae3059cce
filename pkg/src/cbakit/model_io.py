"""Versioned text serialization for trained models.

Rule classifiers serialize as the shared one-line rule text plus a trailing
``DEFAULT <class>`` line; trees serialize as the indented tree dump. Both are
wrapped in a small key=value header so files reload into the same objects.
"""

from __future__ import annotations

import json
from pathlib import Path

from .classifier import Classifier
from .errors import ModelFormatError
from .mining import ClassAssociationRule, Item, rule_line
from .tree import DecisionTree, dump_tree, parse_tree

__all__ = ["FORMAT_LINE", "dump_model", "load_model", "read_model", "write_model"]

FORMAT_LINE = "cbakit-model v1"


def dump_model(model: Classifier | DecisionTree, manifest: dict | None = None) -> str:
    kind = "rules" if isinstance(model, Classifier) else "tree"
    lines = [
        FORMAT_LINE,
        f"kind={kind}",
        f"provenance={model.provenance}",
        f"class_attribute={model.class_attribute}",
        f"attributes={','.join(model.attributes)}",
    ]
    if manifest is not None:
        lines.append("# manifest: " + json.dumps(manifest, sort_keys=True))
    if isinstance(model, Classifier):
        lines.append("RULES")
        for rule in model.rules:
            lines.append(rule_line(rule, model.class_attribute))
        lines.append(f"DEFAULT {model.default_class}")
        return "\n".join(lines) + "\n"
    lines.append("TREE")
    return "\n".join(lines) + "\n" + dump_tree(model)


def _parse_rule_line(line: str, n_expected: int | None = None) -> ClassAssociationRule:
    try:
        head, tail = line.split("  ", 1)
    except ValueError:
        raise ModelFormatError(f"bad rule line: {line!r}") from None
    if not head.startswith("IF "):
        raise ModelFormatError(f"bad rule line: {line!r}")
    cond_part, sep, then_part = head[3:].rpartition(" THEN ")
    if not sep:
        raise ModelFormatError(f"bad rule line: {line!r}")
    _, _, class_label = then_part.partition("=")
    if not class_label:
        raise ModelFormatError(f"bad rule line: {line!r}")
    condset: list[Item] = []
    if cond_part != "TRUE":
        for chunk in cond_part.split(" AND "):
            attr, eq, value = chunk.partition("=")
            if not eq or not attr:
                raise ModelFormatError(f"bad condition {chunk!r} in rule line")
            condset.append(Item(attr, value))
    fields = dict(
        token.split("=", 1) for token in tail.split() if "=" in token
    )
    try:
        sup_num, sup_den = (int(x) for x in fields["sup"].split("/"))
        conf_num, conf_den = (int(x) for x in fields["conf"].split("/"))
        level = int(fields.get("pass", 0))
        ordinal = int(fields.get("ord", 0))
    except (KeyError, ValueError):
        raise ModelFormatError(f"bad rule metadata: {tail!r}") from None
    if sup_num != conf_num:
        raise ModelFormatError(f"inconsistent counts in rule line: {line!r}")
    if n_expected is not None and sup_den != n_expected:
        raise ModelFormatError("rule lines disagree on the training size")
    return ClassAssociationRule(
        condset=tuple(condset),
        class_label=class_label,
        rulesup_count=sup_num,
        condsup_count=conf_den,
        n=sup_den,
        level=level,
        ordinal=ordinal,
    )


def load_model(text: str) -> Classifier | DecisionTree:
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_LINE:
        found = lines[0].strip() if lines else "<empty>"
        raise ModelFormatError(f"unsupported model format: {found!r} (expected {FORMAT_LINE!r})")
    header: dict[str, str] = {}
    body_start = None
    section = None
    for i, line in enumerate(lines[1:], start=1):
        if line.startswith("#") or not line.strip():
            continue
        if line.strip() in ("RULES", "TREE"):
            section = line.strip()
            body_start = i + 1
            break
        key, eq, value = line.partition("=")
        if not eq:
            raise ModelFormatError(f"bad header line: {line!r}")
        header[key.strip()] = value.strip()
    for key in ("kind", "provenance", "class_attribute", "attributes"):
        if key not in header:
            raise ModelFormatError(f"model header missing {key!r}")
    attributes = tuple(a for a in header["attributes"].split(",") if a)
    class_attribute = header["class_attribute"]
    if section is None:
        raise ModelFormatError("model body (RULES or TREE section) missing")
    body = [l for l in lines[body_start:] if l.strip() and not l.startswith("#")]
    if header["kind"] == "rules":
        if section != "RULES":
            raise ModelFormatError("kind=rules requires a RULES section")
        if not body or not body[-1].startswith("DEFAULT "):
            raise ModelFormatError("rules model must end with a DEFAULT line")
        default_class = body[-1][len("DEFAULT "):].strip()
        rules = []
        n_expected = None
        for line in body[:-1]:
            rule = _parse_rule_line(line.strip(), n_expected)
            n_expected = rule.n
            rules.append(rule)
        return Classifier(
            rules=tuple(rules),
            default_class=default_class,
            class_attribute=class_attribute,
            attributes=attributes,
            provenance=header["provenance"],
        )
    if header["kind"] == "tree":
        if section != "TREE":
            raise ModelFormatError("kind=tree requires a TREE section")
        tree = parse_tree("\n".join(lines[body_start:]), class_attribute, attributes)
        tree.provenance = header["provenance"]
        return tree
    raise ModelFormatError(f"unknown model kind {header['kind']!r}")


def read_model(path: str | Path) -> Classifier | DecisionTree:
    path = Path(path)
    if not path.is_file():
        raise ModelFormatError(f"model file not found: {path}")
    return load_model(path.read_text(encoding="utf-8"))


def write_model(
    model: Classifier | DecisionTree, path: str | Path, manifest: dict | None = None
) -> None:
    Path(path).write_text(dump_model(model, manifest), encoding="utf-8")
