"""
Format and parsing utilities for reports and graph exports
"""
import csv
import io
import re
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

Triple = Tuple[int, int, int]

_TRIPLE_PATTERN = re.compile(r'^\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?$')


class FormatParser:
    """Parse and format the small textual values used on the command line"""

    @staticmethod
    def parse_triple(text: str) -> Optional[Triple]:
        """Parse '(1, 2, -1)' or '1,2,-1' into a triple of integers"""
        if not text:
            return None

        match = _TRIPLE_PATTERN.match(text.strip().replace('−', '-'))
        if not match:
            return None

        return tuple(int(g) for g in match.groups())

    @staticmethod
    def format_triple(triple: Optional[Sequence[int]]) -> str:
        if triple is None:
            return "-"
        return "(" + ", ".join(str(n) for n in triple) + ")"

    @staticmethod
    def format_squares(squares: Iterable[int]) -> str:
        """Format boundary squares as a compact signed list"""
        return "[" + " ".join(f"{s:+d}" for s in squares) + "]"

    @staticmethod
    def format_census(total: int, by_class: Dict[str, int]) -> str:
        parts = ", ".join(f"{tag}: {count}" for tag, count in sorted(by_class.items()))
        return f"{total} ({parts})"


class TableWriter:
    """Write class tables as CSV text"""

    @staticmethod
    def to_csv(rows: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
        if not rows:
            return ""

        if columns is None:
            columns = list(rows[0].keys())

        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction='ignore', lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({k: FormatParser.format_triple(v) if isinstance(v, tuple) else v
                             for k, v in row.items()})
        return buffer.getvalue()


class DotWriter:
    """Serialize a graph in the DOT description language"""

    @staticmethod
    def _quote(value: Any) -> str:
        text = str(value).replace('\\', '\\\\').replace('"', '\\"')
        return f'"{text}"'

    @staticmethod
    def to_dot(graph: Any, name: str = "flops") -> str:
        """Write an undirected networkx graph; node and edge attributes become DOT attributes"""
        lines = [f"graph {name} {{"]

        for node, attrs in sorted(graph.nodes(data=True), key=lambda item: str(item[0])):
            rendered = " ".join(f"{k}={DotWriter._quote(v)}" for k, v in sorted(attrs.items()))
            lines.append(f"  {DotWriter._quote(node)} [{rendered}];" if rendered
                         else f"  {DotWriter._quote(node)};")

        edges = sorted(graph.edges(data=True), key=lambda item: (str(item[0]), str(item[1])))
        for u, v, attrs in edges:
            rendered = " ".join(f"{k}={DotWriter._quote(val)}" for k, val in sorted(attrs.items()))
            lines.append(f"  {DotWriter._quote(u)} -- {DotWriter._quote(v)} [{rendered}];")

        lines.append("}")
        return "\n".join(lines) + "\n"
