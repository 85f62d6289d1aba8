"""Single-tape deterministic Turing machines with symbolic transition rules."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

BLANK = "eps"
DIGITS = tuple(str(d) for d in range(10))
CIRCLED = tuple(f"({d})" for d in range(10))
TRUTH = ("T", "F")
ACCEPT = "Accept"
REJECT = "Reject"

_DIGIT_SET = frozenset(DIGITS)
_CIRCLED_SET = frozenset(CIRCLED)


def is_digit(sym: str) -> bool:
    return sym in _DIGIT_SET


def is_circled(sym: str) -> bool:
    return sym in _CIRCLED_SET


def circled(d: int) -> str:
    return CIRCLED[d]


def circled_value(sym: str) -> int:
    return int(sym[1])


class StateId(NamedTuple):
    """A state name split at its first dot, e.g. ``Inc.7`` -> ("Inc", "7")."""

    base: str
    param: str | None = None

    @classmethod
    def parse(cls, text: str) -> "StateId":
        base, dot, param = text.partition(".")
        return cls(base, param if dot else None)

    def render(self) -> str:
        return self.base if self.param is None else f"{self.base}.{self.param}"

    def __str__(self) -> str:
        return self.render()


class Transition(NamedTuple):
    next: str
    write: str
    move: int


@dataclass
class MachineSpec:
    """Finite control of a verifier machine.

    ``rules`` maps (state pattern, read class) to (next pattern, write class, move).
    The resolver turns a concrete (state, symbol) pair into a Transition.
    """

    variant: str
    rules: dict
    resolver: Callable[["MachineSpec", str, str], Transition]
    q_init: str
    alphabet: frozenset
    states: frozenset = frozenset()
    bound: int = 0
    q_acc: str = ACCEPT
    q_rej: str = REJECT
    schema: object = None
    supplement: frozenset = frozenset()
    sanitized: bool = False
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def is_halting(self, state: str) -> bool:
        return state == self.q_acc or state == self.q_rej


def resolve_transition(spec: MachineSpec, state: str, symbol: str) -> Transition:
    key = (state, symbol)
    hit = spec._cache.get(key)
    if hit is None:
        hit = spec.resolver(spec, state, symbol)
        spec._cache[key] = hit
    return hit


class Tape:
    """Two-sided sparse tape; absent cells read as blank."""

    __slots__ = ("cells",)

    def __init__(self, symbols=()):
        self.cells = {i: s for i, s in enumerate(symbols) if s != BLANK}

    def __getitem__(self, i: int) -> str:
        return self.cells.get(i, BLANK)

    def __setitem__(self, i: int, sym: str):
        if sym == BLANK:
            self.cells.pop(i, None)
        else:
            self.cells[i] = sym

    def render(self) -> list:
        if not self.cells:
            return []
        lo, hi = min(self.cells), max(self.cells)
        return [self[i] for i in range(lo, hi + 1)]


@dataclass
class Configuration:
    state: str
    tape: Tape
    head: int = 0
    steps: int = 0


class TraceStep(NamedTuple):
    state: str
    head: int
    read: str
    write: str
    move: int


@dataclass
class RunResult:
    decision: str  # "accept", "reject" or "step-limit"
    trace: list
    final: Configuration


def default_max_steps(n: int) -> int:
    env = os.environ.get("NPSIM_MAX_STEPS")
    if env:
        return int(env)
    return 64 * max(n, 1) ** 2


def step(spec: MachineSpec, config: Configuration) -> TraceStep:
    """Advance ``config`` in place by one move and return the step taken."""
    read = config.tape[config.head]
    nxt, write, move = resolve_transition(spec, config.state, read)
    taken = TraceStep(config.state, config.head, read, write, move)
    config.tape[config.head] = write
    config.head += move
    config.state = nxt
    config.steps += 1
    return taken


def run_direct(spec: MachineSpec, initial_tape, max_steps: int | None = None,
               keep_trace: bool = True) -> RunResult:
    tape = list(initial_tape)
    if max_steps is None:
        max_steps = default_max_steps(len(tape))
    config = Configuration(spec.q_init, Tape(tape))
    trace = []
    while not spec.is_halting(config.state):
        if config.steps >= max_steps:
            return RunResult("step-limit", trace, config)
        taken = step(spec, config)
        if keep_trace:
            trace.append(taken)
    decision = "accept" if config.state == spec.q_acc else "reject"
    return RunResult(decision, trace, config)


def tokenize(text: str) -> list:
    """Split raw tape text into tokens, keeping ``(d)`` circled digits whole."""
    out, i = [], 0
    while i < len(text):
        if text[i] == "(" and i + 2 < len(text) and text[i + 2] == ")":
            out.append(text[i:i + 3])
            i += 3
        else:
            out.append(text[i])
            i += 1
    return out
