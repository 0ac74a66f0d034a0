"""Branch addresses: finite L/R prefixes with an optional repeated cycle.

Text form (the only wire format, shared by CLI flags and table columns)::

    item     := ('L' | 'R') ['^' count]
              | '(' item+ ')' ['^' (count | 'inf')]
    address  := item+            -- at most one '^inf' group, and it ends the text

``R^3(LR)^inf`` is the tip R³(LR)^∞, ``RLLR`` the endpoint of a four-branch path.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import groupby

from src.config import get_setting
from src.errors import AddressSyntaxError, ExpansionError

logger = logging.getLogger(__name__)


class Turn(str, Enum):
    L = 'L'
    R = 'R'

    @property
    def mirror(self):
        return Turn.R if self is Turn.L else Turn.L

    @property
    def sign(self):
        # L rotates counterclockwise
        return 1 if self is Turn.L else -1


def _as_turns(seq):
    return tuple(t if isinstance(t, Turn) else Turn(t) for t in seq)


@dataclass(frozen=True)
class Address:
    prefix: tuple = ()
    cycle: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'prefix', _as_turns(self.prefix))
        object.__setattr__(self, 'cycle', _as_turns(self.cycle))

    @property
    def is_finite(self):
        return not self.cycle

    def mirror(self):
        return Address(tuple(t.mirror for t in self.prefix),
                       tuple(t.mirror for t in self.cycle))

    def expand(self, depth, limit=None):
        """First ``depth`` turns of the (possibly infinite) turn sequence."""
        if limit is None:
            limit = get_setting('max_expansion_depth')
        if depth < 0:
            raise ExpansionError(f"Expansion depth must be non-negative, got {depth}")
        if depth > limit:
            raise ExpansionError(f"Expansion depth {depth} exceeds the limit of {limit}")
        if self.is_finite:
            if depth > len(self.prefix):
                raise ExpansionError(
                    f"Depth {depth} exceeds the length {len(self.prefix)} of finite address {self}")
            return self.prefix[:depth]
        turns = list(self.prefix[:depth])
        while len(turns) < depth:
            turns.extend(self.cycle[:depth - len(turns)])
        return tuple(turns)

    def __str__(self):
        return format_address(self)


def mirror(a):
    return a.mirror()


def expand(a, depth):
    return a.expand(depth)


def _run_length(turns):
    parts = []
    for turn, run in groupby(turns):
        n = len(list(run))
        parts.append(turn.value if n == 1 else f"{turn.value}^{n}")
    return ''.join(parts)


def format_address(a):
    """Canonical printer; parse_address(format_address(a)) == a for non-empty a."""
    text = _run_length(a.prefix)
    if a.cycle:
        text += f"({_run_length(a.cycle)})^inf"
    return text


def wound_address(k):
    """R^k(LR)^∞, the candidate family for every extremal direction."""
    return Address((Turn.R,) * k, (Turn.L, Turn.R))


def address_from_index(index):
    """Finite address of a heap-numbered branch (0 is the trunk, 2i+1 / 2i+2 its L / R children)."""
    turns = []
    while index > 0:
        turns.append(Turn.L if index % 2 == 1 else Turn.R)
        index = (index - 1) // 2
    return Address(tuple(reversed(turns)))


class _Parser:
    def __init__(self, text, max_length):
        self.text = text
        self.pos = 0
        self.max_length = max_length

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def fail(self, message, position=None):
        raise AddressSyntaxError(message, self.pos if position is None else position)

    def count(self, allow_inf):
        """Exponent after '^': a positive integer, or the string 'inf'."""
        self.peek()
        start = self.pos
        if self.text.startswith('inf', self.pos):
            if not allow_inf:
                self.fail("'inf' exponent is only allowed on a parenthesised group")
            self.pos += 3
            return 'inf'
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits:
            self.fail("expected a positive integer or 'inf' after '^'", start)
        value = int(digits)
        if value < 1:
            self.fail("exponent must be positive", start)
        return value

    def repeat(self, body, n, start):
        if len(body) * n > self.max_length:
            self.fail(f"expansion longer than {self.max_length} turns", start)
        return body * n

    def items(self, nested):
        """Parse item+ ; returns (turns, cycle or None)."""
        turns = []
        while True:
            ch = self.peek()
            start = self.pos
            if ch in ('L', 'R'):
                self.pos += 1
                body = (Turn(ch),)
                if self.peek() == '^':
                    self.pos += 1
                    body = self.repeat(body, self.count(allow_inf=False), start)
                turns.extend(body)
            elif ch == '(':
                self.pos += 1
                body, _ = self.items(nested=True)
                if self.peek() != ')':
                    self.fail("expected ')'")
                self.pos += 1
                if self.peek() == '^':
                    self.pos += 1
                    exponent = self.count(allow_inf=True)
                    if exponent == 'inf':
                        if nested:
                            self.fail("'inf' group cannot be nested", start)
                        if self.peek():
                            self.fail("'inf' group must end the address")
                        return tuple(turns), tuple(body)
                    body = self.repeat(body, exponent, start)
                turns.extend(body)
            elif ch == '' or ch == ')':
                if not turns:
                    self.fail("expected 'L', 'R' or '('")
                return tuple(turns), None
            else:
                self.fail(f"unexpected character {ch!r}")
            if len(turns) > self.max_length:
                self.fail(f"expansion longer than {self.max_length} turns", start)


def parse_address(text):
    """Parse the address grammar above into an Address."""
    if text is None or not text.strip():
        raise AddressSyntaxError("empty address", 0)
    parser = _Parser(text, get_setting('max_address_length'))
    prefix, cycle = parser.items(nested=False)
    if parser.peek():
        parser.fail(f"unexpected character {parser.peek()!r}")
    address = Address(prefix, cycle or ())
    logger.debug(f"Parsed address {text!r} -> {address}")
    return address
