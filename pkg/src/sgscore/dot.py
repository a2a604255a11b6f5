"""Graphviz rendering of scene graphs.

Objects are pink boxes, attributes green ellipses and relations light-blue
ellipses placed between subject and object. Node ids are assigned from
sorted tuples, so the same graph always renders to the same bytes. When an
extended graph is given, synonym-derived elements are dashed.
"""

from __future__ import annotations

import os

from .graph import PHI, SceneGraph
from .lexicon import ExtendedGraph

OBJECT_COLOR = "pink"
ATTRIBUTE_COLOR = "palegreen"
RELATION_COLOR = "lightblue"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(g: SceneGraph | ExtendedGraph, name: str = "scene_graph") -> str:
    if isinstance(g, ExtendedGraph):
        graph, original = g.graph, g.original
    else:
        graph = original = g

    def style(is_original: bool) -> str:
        return "" if is_original else ", style=\"filled,dashed\""

    lines = [f"digraph {_quote(name)} {{", '  node [style=filled, fontname="sans-serif"];']
    ids: dict[str, str] = {}
    for k, o in enumerate(sorted(graph.objects)):
        ids[o] = f"o{k}"
        lines.append(f"  o{k} [label={_quote(o)}, shape=box, fillcolor={OBJECT_COLOR}{style(o in original.objects)}];")
    if any(r[0] == PHI for r in graph.relations):
        ids[PHI] = "phi"
        lines.append(f"  phi [label={_quote(PHI)}, shape=box, fillcolor=lightgrey];")
    for k, (o, a) in enumerate(sorted(graph.attributes)):
        keep = (o, a) in original.attributes
        lines.append(f"  a{k} [label={_quote(a)}, shape=ellipse, fillcolor={ATTRIBUTE_COLOR}{style(keep)}];")
        lines.append(f"  {ids[o]} -> a{k}{'' if keep else ' [style=dashed]'};")
    for k, (s, r, o) in enumerate(sorted(graph.relations)):
        keep = (s, r, o) in original.relations
        edge = "" if keep else " [style=dashed]"
        lines.append(f"  r{k} [label={_quote(r)}, shape=ellipse, fillcolor={RELATION_COLOR}{style(keep)}];")
        lines.append(f"  {ids[s]} -> r{k}{edge};")
        lines.append(f"  r{k} -> {ids[o]}{edge};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(g: SceneGraph | ExtendedGraph, path: str | os.PathLike, name: str = "scene_graph") -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(render_dot(g, name))
