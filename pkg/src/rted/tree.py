"""Ordered labeled trees and their text encodings.

Trees are written in bracket notation: ``{a{b}{c}}`` is a root labeled ``a``
with the two children ``b`` and ``c``, in that order. Inside a label the
characters ``{``, ``}`` and ``\\`` are escaped with a backslash.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Iterator


class TreeParseError(ValueError):
    """Raised for malformed bracket text; ``offset`` is the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class XMLIngestError(ValueError):
    pass


@dataclass(eq=False)
class Tree:
    label: str
    children: list[Tree] = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        # iterative so that deep (caterpillar) trees do not hit the recursion limit
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a.label != b.label or len(a.children) != len(b.children):
                return False
            stack.extend(zip(a.children, b.children))
        return True

    def __repr__(self):
        text = serialize_bracket(self)
        if len(text) > 60:
            text = text[:57] + "..."
        return f"Tree({text})"

    def postorder(self) -> Iterator[Tree]:
        """Yield the nodes in postorder (children left to right, then parent)."""
        stack = [(self, 0)]
        while stack:
            node, i = stack.pop()
            if i < len(node.children):
                stack.append((node, i + 1))
                stack.append((node.children[i], 0))
            else:
                yield node

    def preorder(self) -> Iterator[Tree]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __len__(self):
        return sum(1 for _ in self.preorder())

    def mirror(self) -> Tree:
        """Return a copy with the children of every node reversed."""
        copies = {}
        for node in self.postorder():
            copies[id(node)] = Tree(node.label, [copies[id(c)] for c in reversed(node.children)])
        return copies[id(self)]


def _escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace("{", "\\{").replace("}", "\\}")


def serialize_bracket(t: Tree) -> str:
    """Canonical bracket text of ``t``."""
    parts = []
    stack = [(t, 0)]
    while stack:
        node, i = stack.pop()
        if i == 0:
            parts.append("{" + _escape(node.label))
        if i < len(node.children):
            stack.append((node, i + 1))
            stack.append((node.children[i], 0))
        else:
            parts.append("}")
    return "".join(parts)


def parse_bracket(text: str) -> Tree:
    """Parse a single bracket term such as ``{a{b}{c}}``.

    Surrounding whitespace is ignored. Raises :class:`TreeParseError` for
    empty input, unbalanced braces, empty labels and trailing garbage; the
    reported offset is a byte offset into the UTF-8 encoding of ``text``.
    """
    data = text.encode("utf-8")
    n = len(data)
    i = 0
    while i < n and data[i] in b" \t\r\n":
        i += 1
    if i == n:
        raise TreeParseError("empty input", i)
    if data[i] != ord("{"):
        raise TreeParseError("expected '{'", i)

    root = None
    stack: list[Tree] = []
    while i < n:
        ch = data[i]
        if ch == ord("{"):
            start = i
            i += 1
            label = bytearray()
            while i < n and data[i] not in b"{}":
                if data[i] == ord("\\"):
                    if i + 1 == n:
                        raise TreeParseError("dangling escape", i)
                    i += 1
                label.append(data[i])
                i += 1
            if not label:
                raise TreeParseError("empty label", start)
            node = Tree(label.decode("utf-8"))
            if stack:
                stack[-1].children.append(node)
            else:
                root = node
            stack.append(node)
        elif ch == ord("}"):
            stack.pop()
            i += 1
            if not stack:
                break
        else:
            # only reachable when a closed subtree is followed by text
            raise TreeParseError("unexpected character", i)
        if not stack:
            break
    if stack:
        raise TreeParseError("unbalanced braces", n)
    j = i
    while j < n and data[j] in b" \t\r\n":
        j += 1
    if j != n:
        raise TreeParseError("trailing characters after tree", j)
    return root


def ingest_xml(text: str) -> Tree:
    """Element structure of an XML document as a tree.

    Labels are element tag names; attributes and text content are dropped.
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise XMLIngestError(f"malformed XML: {exc}") from exc
    copies = {}
    stack = [(root, False)]
    while stack:
        elem, done = stack.pop()
        if done:
            copies[id(elem)] = Tree(elem.tag, [copies[id(c)] for c in elem])
        else:
            stack.append((elem, True))
            stack.extend((c, False) for c in elem)
    return copies[id(root)]
