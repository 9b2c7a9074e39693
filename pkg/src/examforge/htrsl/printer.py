"""Render syntax trees back to ``.htrsl`` source."""

from __future__ import annotations

from .ast import Alt, Desc, HtrslFile, Lit, Name, OptParens, Space


def _quote(text: str) -> str:
    body = (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\t", "\\t")
        .replace("\r", "\\r")
    )
    return f'"{body}"'


def render_item(item) -> str:
    if isinstance(item, Lit):
        return _quote(item.text)
    if isinstance(item, Name):
        return item.ident
    if isinstance(item, Space):
        return "\\\\"
    if isinstance(item, Alt):
        return "[" + " | ".join(render_items(alt) for alt in item.alternatives) + "]"
    if isinstance(item, OptParens):
        return "(" + render_items(item.body) + ")"
    raise TypeError(f"not a description item: {item!r}")


def render_items(items) -> str:
    return " ".join(render_item(it) for it in items)


def render_desc(desc: Desc) -> str:
    return render_items(desc.items)


def render_file(f: HtrslFile) -> str:
    return "".join(render_desc(d) + " ;\n" for d in f.specs)
