"""Hand-rolled BibTeX reader and writer.

Covers the subset that reference managers actually emit: ``@kind{key, ...}``
entries with brace- or quote-delimited values, arbitrarily nested braces
inside values, bare numbers, ``@string`` macros with ``#`` concatenation,
and ``@comment``/``@preamble`` blocks. Macros are resolved at parse time
against definitions seen earlier in the same file.

Scanning is lenient: a malformed entry is reported as an issue and skipped,
so one bad entry does not take down the whole bibliography. ``parse_bibtex``
is the strict wrapper that raises on the first error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import BibParseError

_KIND = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_CITE_KEY = re.compile(r"[^\s,{}()]+")
_FIELD_NAME = re.compile(r"[^\s=,{}()\"#]+")
_MACRO_NAME = re.compile(r"[^\s,#{}()\"]+")
_NUMBER = re.compile(r"[0-9]+")

_SKIPPED_KINDS = ("comment", "preamble")


@dataclass
class ParseIssue:
    """One problem found while scanning; ``severity`` is error or warning."""

    severity: str
    message: str
    offset: int
    cite_key: str | None = None

    def __str__(self) -> str:
        where = f"byte {self.offset}"
        if self.cite_key:
            where += f", entry '{self.cite_key}'"
        return f"{self.severity} ({where}): {self.message}"


@dataclass
class RawEntry:
    """One parsed ``@kind{key, ...}`` block with lowercased field names."""

    entry_kind: str
    cite_key: str
    fields: dict[str, str]
    offset: int = field(default=0, compare=False)


class _Unbalanced(Exception):
    def __init__(self, open_pos: int) -> None:
        self.open_pos = open_pos


class _ValueSyntax(Exception):
    def __init__(self, pos: int, message: str) -> None:
        self.pos = pos
        self.message = message


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.entries: list[RawEntry] = []
        self.issues: list[ParseIssue] = []
        self.macros: dict[str, str] = {}
        self._first_seen: dict[str, int] = {}

    # -- helpers ----------------------------------------------------------

    def _byte(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def _issue(self, severity: str, message: str, pos: int,
               cite_key: str | None = None) -> None:
        self.issues.append(ParseIssue(severity, message, self._byte(pos), cite_key))

    def _peek(self) -> str | None:
        if self.pos < len(self.text):
            return self.text[self.pos]
        return None

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _recover(self, close_ch: str) -> None:
        """Skip past the rest of a broken entry.

        Balances braces from the already-open entry delimiter; bails out at a
        line that starts a new ``@`` block so later entries survive even when
        the broken one never closes.
        """
        depth = 1
        at_line_start = False
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if at_line_start and ch == "@" and depth >= 1:
                return
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0 and close_ch == "}":
                    self.pos += 1
                    return
            elif ch == close_ch == ")" and depth == 1:
                self.pos += 1
                return
            at_line_start = ch == "\n" or (at_line_start and ch.isspace())
            self.pos += 1

    # -- value parsing ----------------------------------------------------

    def _read_braced(self) -> str:
        open_pos = self.pos
        self.pos += 1
        depth = 1
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    value = self.text[start:self.pos]
                    self.pos += 1
                    return value
            self.pos += 1
        raise _Unbalanced(open_pos)

    def _read_quoted(self) -> str:
        open_pos = self.pos
        self.pos += 1
        depth = 0
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            elif ch == '"' and depth == 0:
                value = self.text[start:self.pos]
                self.pos += 1
                return value
            self.pos += 1
        raise _Unbalanced(open_pos)

    def _read_value(self, cite_key: str | None) -> str:
        parts: list[str] = []
        while True:
            self._skip_ws()
            ch = self._peek()
            if ch == "{":
                parts.append(self._read_braced())
            elif ch == '"':
                parts.append(self._read_quoted())
            elif ch is not None and ch.isdigit():
                m = _NUMBER.match(self.text, self.pos)
                assert m is not None
                parts.append(m.group(0))
                self.pos = m.end()
            else:
                m = _MACRO_NAME.match(self.text, self.pos) if ch else None
                if not m:
                    raise _ValueSyntax(self.pos, "expected a field value")
                name = m.group(0)
                self.pos = m.end()
                resolved = self.macros.get(name.lower())
                if resolved is None:
                    self._issue("warning", f"undefined macro '{name}' kept verbatim",
                                m.start(), cite_key)
                    resolved = name
                parts.append(resolved)
            self._skip_ws()
            if self._peek() == "#":
                self.pos += 1
                continue
            return "".join(parts)

    # -- block parsing ----------------------------------------------------

    def _skip_block(self, kind: str, at: int) -> None:
        ch = self._peek()
        if ch not in ("{", "("):
            # bare @comment without a group: nothing to skip
            return
        close_ch = "}" if ch == "{" else ")"
        self.pos += 1
        depth = 1
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "{" or (c == "(" and close_ch == ")"):
                depth += 1
            elif c == close_ch:
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return
            self.pos += 1
        self._issue("error", f"unbalanced braces in @{kind} block", at)

    def _read_macro_def(self, at: int) -> None:
        ch = self._peek()
        if ch not in ("{", "("):
            self._issue("error", "expected '{' after @string", self.pos)
            return
        close_ch = "}" if ch == "{" else ")"
        self.pos += 1
        self._skip_ws()
        m = _FIELD_NAME.match(self.text, self.pos)
        if not m:
            self._issue("error", "missing macro name in @string block", self.pos)
            self._recover(close_ch)
            return
        name = m.group(0).lower()
        self.pos = m.end()
        self._skip_ws()
        if self._peek() != "=":
            self._issue("error", f"expected '=' in @string definition of '{name}'", self.pos)
            self._recover(close_ch)
            return
        self.pos += 1
        try:
            value = self._read_value(None)
        except _Unbalanced as exc:
            self._issue("error", f"unbalanced braces in @string '{name}'", exc.open_pos)
            self.pos = len(self.text)
            return
        except _ValueSyntax as exc:
            self._issue("error", exc.message + f" in @string '{name}'", exc.pos)
            self._recover(close_ch)
            return
        self._skip_ws()
        if self._peek() == close_ch:
            self.pos += 1
        self.macros[name] = value

    def _read_entry(self, kind: str, at: int) -> None:
        ch = self._peek()
        if ch not in ("{", "("):
            self._issue("error", f"expected '{{' after '@{kind}'", self.pos)
            return
        close_ch = "}" if ch == "{" else ")"
        self.pos += 1
        self._skip_ws()
        m = _CITE_KEY.match(self.text, self.pos)
        if not m:
            self._issue("error", f"missing cite key in '@{kind}' entry", self.pos)
            self._recover(close_ch)
            return
        cite_key = m.group(0)
        self.pos = m.end()
        self._skip_ws()
        fields: dict[str, str] = {}
        ch = self._peek()
        if ch == ",":
            self.pos += 1
            if not self._read_fields(cite_key, close_ch, fields, at):
                return
        elif ch == close_ch:
            self.pos += 1
        else:
            self._issue("error", f"expected ',' after cite key '{cite_key}'",
                        self.pos, cite_key)
            self._recover(close_ch)
            return
        if cite_key in self._first_seen:
            first = self._byte(self._first_seen[cite_key])
            self._issue("error",
                        f"duplicate cite key '{cite_key}' "
                        f"(first at byte {first}, again at byte {self._byte(at)})",
                        at, cite_key)
            return
        self._first_seen[cite_key] = at
        self.entries.append(RawEntry(kind, cite_key, fields, offset=self._byte(at)))

    def _read_fields(self, cite_key: str, close_ch: str,
                     fields: dict[str, str], at: int) -> bool:
        while True:
            self._skip_ws()
            ch = self._peek()
            if ch is None:
                self._issue("error",
                            f"unterminated entry '{cite_key}' (missing '{close_ch}')",
                            at, cite_key)
                return False
            if ch == close_ch:
                self.pos += 1
                return True
            m = _FIELD_NAME.match(self.text, self.pos)
            if not m:
                self._issue("error", f"expected a field name in entry '{cite_key}'",
                            self.pos, cite_key)
                self._recover(close_ch)
                return False
            name = m.group(0).lower()
            self.pos = m.end()
            self._skip_ws()
            if self._peek() != "=":
                self._issue("error",
                            f"expected '=' after field name '{name}' in entry '{cite_key}'",
                            self.pos, cite_key)
                self._recover(close_ch)
                return False
            self.pos += 1
            name_pos = m.start()
            try:
                value = self._read_value(cite_key)
            except _Unbalanced as exc:
                self._issue("error", f"unbalanced braces in entry '{cite_key}'",
                            exc.open_pos, cite_key)
                self.pos = len(self.text)
                return False
            except _ValueSyntax as exc:
                self._issue("error", exc.message + f" in entry '{cite_key}'",
                            exc.pos, cite_key)
                self._recover(close_ch)
                return False
            if name in fields:
                self._issue("warning",
                            f"duplicate field '{name}' in entry '{cite_key}' "
                            "overwrites the earlier value", name_pos, cite_key)
            fields[name] = value
            self._skip_ws()
            ch = self._peek()
            if ch == ",":
                self.pos += 1
            elif ch == close_ch or ch is None:
                continue
            else:
                self._issue("error",
                            f"expected ',' or '{close_ch}' after field '{name}' "
                            f"in entry '{cite_key}'", self.pos, cite_key)
                self._recover(close_ch)
                return False

    def scan(self) -> tuple[list[RawEntry], list[ParseIssue]]:
        while True:
            at = self.text.find("@", self.pos)
            if at == -1:
                break
            self.pos = at + 1
            m = _KIND.match(self.text, self.pos)
            if not m:
                continue  # stray @ in free text between entries
            kind = m.group(0).lower()
            self.pos = m.end()
            self._skip_ws()
            if kind in _SKIPPED_KINDS:
                self._skip_block(kind, at)
            elif kind == "string":
                self._read_macro_def(at)
            else:
                self._read_entry(kind, at)
        return self.entries, self.issues


def scan_bibtex(text: str) -> tuple[list[RawEntry], list[ParseIssue]]:
    """Lenient scan: returns all well-formed entries plus a list of issues."""
    return _Scanner(text).scan()


def parse_bibtex(text: str) -> list[RawEntry]:
    """Strict parse: raises :class:`BibParseError` on the first error."""
    entries, issues = scan_bibtex(text)
    for issue in issues:
        if issue.severity == "error":
            raise BibParseError(str(issue), offset=issue.offset, cite_key=issue.cite_key)
    return entries


def serialize_entries(entries: list[RawEntry]) -> str:
    """Write entries back out as BibTeX; inverse of parsing up to layout."""
    blocks = []
    for entry in entries:
        lines = [f"@{entry.entry_kind}{{{entry.cite_key},"]
        for name, value in entry.fields.items():
            lines.append(f"  {name} = {{{value}}},")
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
