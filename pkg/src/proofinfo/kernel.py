"""Rule-based inference kernel for the competition world.

A world declares participants, a day domain, and broadcast sources with
truthfulness schedules. Kernel formulas are structured (day facts, broadcast
facts, winner claims); the checker validates proof listings step by step
against six rules, and a bounded forward chainer enumerates proofs from user
data.

Rules:
  UserData            day and broadcast facts are always admissible
  TruthfulBroadcast   Brd(R,a) with R resolved truthful   => Win(a)
  DeceitfulBroadcast  Brd(R,a) with R resolved deceitful  => ¬Win(a)
  Uniqueness          Win(a)                              => ¬Win(b), b != a
  ExistenceDisj       ¬Win(b) for every b outside X       => disjunction over X
  DisjElim            disjunction over X, ¬Win(b in X)    => disjunction over X∖{b}

Published proof listings usually elide routine intermediate formulas. In the
default (non-strict) mode the checker therefore lets an ExistenceDisj step
justify each missing ¬Win(b) by one implicit hop (a deceitful broadcast, a
uniqueness application, or a truthful broadcast followed by uniqueness); the
hop's formulas are recorded on the step. Strict mode requires every
intermediate formula to be listed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Collection, Iterable, Mapping, Sequence

from .errors import (
    InconsistentDayContextError,
    MalformedDocumentError,
    UnknownNameError,
    UnparsableFormulaError,
)
from .model import KnowledgeSystem, normalize_formula

TRUTHFUL = "truthful"
DECEITFUL = "deceitful"
UNKNOWN = "unknown"


# ---------------------------------------------------------------------------
# world specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WorldSpec:
    """Participants, day domain, and per-source truthfulness schedules.

    A schedule is stored as the set of days on which the source is truthful:
    the full domain (always truthful), the empty set (always deceitful), or
    anything in between (day-dependent). Every (source, day) pair therefore
    resolves to truthful or deceitful.
    """

    participants: tuple[str, ...]
    day_domain: tuple[str, ...]
    truthful_days: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        if len(set(self.participants)) < 2:
            raise MalformedDocumentError("a world needs at least two distinct participants")
        if len(set(self.day_domain)) != len(self.day_domain) or not self.day_domain:
            raise MalformedDocumentError("day domain must be a non-empty set of distinct names")
        if not self.truthful_days:
            raise MalformedDocumentError("a world needs at least one source")
        domain = set(self.day_domain)
        for source, days in self.truthful_days.items():
            stray = set(days) - domain
            if stray:
                raise UnknownNameError(f"source {source!r}: days {sorted(stray)} not in the day domain")

    def truthful_on(self, source: str) -> frozenset[str]:
        try:
            return self.truthful_days[source]
        except KeyError:
            raise UnknownNameError(f"unknown source {source!r}") from None

    def is_day_dependent(self, source: str) -> bool:
        days = self.truthful_on(source)
        return 0 < len(days) < len(self.day_domain)


def builtin_world() -> WorldSpec:
    """The world the built-in example lives in: R2's truthfulness depends on the day."""
    return WorldSpec(
        participants=("Bok", "Dok", "Fok"),
        day_domain=("Fri", "Other"),
        truthful_days={
            "R1": frozenset({"Fri", "Other"}),
            "R2": frozenset({"Fri"}),
            "R3": frozenset(),
        },
    )


_WORLD_KEYS = {"participants", "day_domain", "sources"}


def parse_world(document: object) -> WorldSpec:
    """Build a WorldSpec from a parsed JSON document.

    Schema: {"participants": [...], "day_domain": [...],
             "sources": {"R1": "always_truthful" | "always_deceitful"
                               | {"truthful_on": [days]}, ...}}
    """
    if not isinstance(document, dict):
        raise MalformedDocumentError("top level must be an object")
    if set(document) != _WORLD_KEYS:
        raise MalformedDocumentError(
            f"world document needs exactly keys {sorted(_WORLD_KEYS)}, got {sorted(document)}"
        )
    participants = document["participants"]
    day_domain = document["day_domain"]
    sources = document["sources"]
    for key, value in (("participants", participants), ("day_domain", day_domain)):
        if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
            raise MalformedDocumentError(f"'{key}' must be an array of strings")
    if not isinstance(sources, dict):
        raise MalformedDocumentError("'sources' must be an object")

    truthful_days: dict[str, frozenset[str]] = {}
    for name, schedule in sources.items():
        if schedule == "always_truthful":
            truthful_days[name] = frozenset(day_domain)
        elif schedule == "always_deceitful":
            truthful_days[name] = frozenset()
        elif isinstance(schedule, dict) and set(schedule) == {"truthful_on"}:
            days = schedule["truthful_on"]
            if not isinstance(days, list) or not all(isinstance(d, str) for d in days):
                raise MalformedDocumentError(f"source {name!r}: 'truthful_on' must be an array of day names")
            truthful_days[name] = frozenset(days)
        else:
            raise MalformedDocumentError(
                f"source {name!r}: schedule must be 'always_truthful', 'always_deceitful' "
                "or {'truthful_on': [...]}"
            )
    return WorldSpec(
        participants=tuple(participants),
        day_domain=tuple(day_domain),
        truthful_days=truthful_days,
    )


# ---------------------------------------------------------------------------
# kernel formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KFormula:
    """A structured kernel formula; build with the factory functions below."""

    kind: str  # "day_is" | "day_not" | "brd" | "win" | "not_win" | "win_disj"
    day: str | None = None
    source: str | None = None
    participant: str | None = None
    participants: frozenset[str] = frozenset()

    def text(self) -> str:
        if self.kind == "day_is":
            return f"Day={self.day}"
        if self.kind == "day_not":
            return f"Day≠{self.day}"
        if self.kind == "brd":
            return f"Brd({self.source},{self.participant})"
        if self.kind == "win":
            return f"Win({self.participant})"
        if self.kind == "not_win":
            return f"¬Win({self.participant})"
        return "∨".join(f"Win({p})" for p in sorted(self.participants))

    def __repr__(self) -> str:
        return f"KFormula({self.text()})"


def day_is(day: str) -> KFormula:
    return KFormula("day_is", day=day)


def day_not(day: str) -> KFormula:
    return KFormula("day_not", day=day)


def brd(source: str, participant: str) -> KFormula:
    return KFormula("brd", source=source, participant=participant)


def win(participant: str) -> KFormula:
    return KFormula("win", participant=participant)


def not_win(participant: str) -> KFormula:
    return KFormula("not_win", participant=participant)


def win_disj(participants: Iterable[str]) -> KFormula:
    """Disjunction of winner claims; a one-element disjunction collapses to Win."""
    ps = frozenset(participants)
    if not ps:
        raise ValueError("empty disjunction")
    if len(ps) == 1:
        return win(next(iter(ps)))
    return KFormula("win_disj", participants=ps)


def is_data(formula: KFormula) -> bool:
    """Whether the formula may appear as user data (day and broadcast facts only)."""
    return formula.kind in ("day_is", "day_not", "brd")


_BRD_RE = re.compile(r"Brd\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)")
_WIN_RE = re.compile(r"Win\(\s*([^()\s]+)\s*\)")
_NOT_WIN_RE = re.compile(r"¬\s*Win\(\s*([^()\s]+)\s*\)")


def parse_kformula(text: str, world: WorldSpec) -> KFormula:
    """Parse one formula of the kernel grammar, validating names against the world.

    Grammar: Day=<d> | Day≠<d> | Brd(<R>,<a>) | Win(<a>) | ¬Win(<a>)
             | Win(a)∨Win(b)[∨...]
    ASCII aliases (!=, \\/, ~) are folded by normalization first.
    """
    text = normalize_formula(text)

    if "∨" in text:
        names = []
        for part in text.split("∨"):
            m = _WIN_RE.fullmatch(part.strip())
            if m is None:
                raise UnparsableFormulaError(f"bad disjunct {part.strip()!r} in {text!r}")
            names.append(m.group(1))
        for name in names:
            if name not in world.participants:
                raise UnknownNameError(f"unknown participant {name!r} in {text!r}")
        if len(set(names)) < 2:
            raise UnparsableFormulaError(f"disjunction needs two distinct participants: {text!r}")
        return win_disj(names)

    if text.startswith("Day="):
        day = text[len("Day="):].strip()
        if day not in world.day_domain:
            raise UnknownNameError(f"unknown day {day!r} in {text!r}")
        return day_is(day)
    if text.startswith("Day≠"):
        day = text[len("Day≠"):].strip()
        if day not in world.day_domain:
            raise UnknownNameError(f"unknown day {day!r} in {text!r}")
        return day_not(day)

    m = _BRD_RE.fullmatch(text)
    if m:
        source, participant = m.group(1), m.group(2)
        if source not in world.truthful_days:
            raise UnknownNameError(f"unknown source {source!r} in {text!r}")
        if participant not in world.participants:
            raise UnknownNameError(f"unknown participant {participant!r} in {text!r}")
        return brd(source, participant)
    m = _NOT_WIN_RE.fullmatch(text)
    if m:
        if m.group(1) not in world.participants:
            raise UnknownNameError(f"unknown participant {m.group(1)!r} in {text!r}")
        return not_win(m.group(1))
    m = _WIN_RE.fullmatch(text)
    if m:
        if m.group(1) not in world.participants:
            raise UnknownNameError(f"unknown participant {m.group(1)!r} in {text!r}")
        return win(m.group(1))
    raise UnparsableFormulaError(f"cannot parse {text!r}")


# ---------------------------------------------------------------------------
# reliability resolution
# ---------------------------------------------------------------------------

def _possible_days(world: WorldSpec, day_facts: Iterable[KFormula]) -> frozenset[str]:
    fixed: set[str] = set()
    excluded: set[str] = set()
    for f in day_facts:
        if f.kind == "day_is":
            fixed.add(f.day)
        elif f.kind == "day_not":
            excluded.add(f.day)
    for day in fixed | excluded:
        if day not in world.day_domain:
            raise UnknownNameError(f"unknown day {day!r} in day facts")
    if len(fixed) > 1:
        raise InconsistentDayContextError(f"conflicting day facts: {sorted(fixed)}")
    if fixed & excluded:
        raise InconsistentDayContextError(
            f"day {next(iter(fixed & excluded))!r} both asserted and excluded"
        )
    possible = fixed if fixed else set(world.day_domain) - excluded
    if not possible:
        raise InconsistentDayContextError("day facts exclude every day in the domain")
    return frozenset(possible)


def resolve_reliability(
    world: WorldSpec, source: str, day_context: Iterable[KFormula]
) -> str:
    """Resolve a source to "truthful"/"deceitful"/"unknown" under the day facts.

    Always-truthful and always-deceitful sources resolve with no context; a
    day-dependent source resolves only when the day facts narrow the domain
    to days with a single verdict.
    """
    truthful_days = world.truthful_on(source)
    day_facts = [f for f in day_context if f.kind in ("day_is", "day_not")]
    possible = _possible_days(world, day_facts)
    verdicts = {TRUTHFUL if d in truthful_days else DECEITFUL for d in possible}
    return verdicts.pop() if len(verdicts) == 1 else UNKNOWN


# ---------------------------------------------------------------------------
# proof checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RuleApplication:
    """One justified step: the rule, the indices of the premises used (all
    earlier than the step), and any implicit hop formulas (non-strict mode)."""

    rule: str
    premises: tuple[int, ...]
    conclusion: KFormula
    implicit: tuple[KFormula, ...] = ()


@dataclass(frozen=True)
class CheckedProof:
    proof_id: str
    steps: tuple[RuleApplication, ...]
    valid: bool
    violations: tuple[tuple[int, str], ...]


def _index_of(earlier: Sequence[KFormula], formula: KFormula) -> int | None:
    for j, e in enumerate(earlier):
        if e == formula:
            return j
    return None


def _day_fact_indices(earlier: Sequence[KFormula]) -> tuple[int, ...]:
    return tuple(j for j, e in enumerate(earlier) if e.kind in ("day_is", "day_not"))


def _broadcast_premises(
    world: WorldSpec, source: str, base: tuple[int, ...], earlier: Sequence[KFormula]
) -> tuple[int, ...]:
    # a day-dependent source's verdict rests on the day facts as well
    if world.is_day_dependent(source):
        return base + _day_fact_indices(earlier)
    return base


def _implicit_not_win(
    world: WorldSpec, beta: str, earlier: Sequence[KFormula]
) -> tuple[tuple[int, ...], tuple[KFormula, ...]] | None:
    """One-hop derivation of ¬Win(beta) from earlier formulas, or None."""
    day_ctx = [e for e in earlier if e.kind in ("day_is", "day_not")]
    for j, e in enumerate(earlier):
        if e.kind == "brd" and e.participant == beta:
            try:
                verdict = resolve_reliability(world, e.source, day_ctx)
            except (InconsistentDayContextError, UnknownNameError):
                continue
            if verdict == DECEITFUL:
                return _broadcast_premises(world, e.source, (j,), earlier), (not_win(beta),)
    for j, e in enumerate(earlier):
        if e.kind == "win" and e.participant != beta:
            return (j,), (not_win(beta),)
    for j, e in enumerate(earlier):
        if e.kind == "brd" and e.participant != beta:
            try:
                verdict = resolve_reliability(world, e.source, day_ctx)
            except (InconsistentDayContextError, UnknownNameError):
                continue
            if verdict == TRUTHFUL:
                return (
                    _broadcast_premises(world, e.source, (j,), earlier),
                    (win(e.participant), not_win(beta)),
                )
    return None


def _knockouts(
    world: WorldSpec,
    betas: Iterable[str],
    earlier: Sequence[KFormula],
    strict: bool,
) -> tuple[bool, tuple[int, ...], tuple[KFormula, ...]]:
    """Check ¬Win(beta) for every beta, each explicit or (non-strict) one hop away."""
    premises: list[int] = []
    implicit: list[KFormula] = []
    for beta in sorted(betas):
        j = _index_of(earlier, not_win(beta))
        if j is not None:
            premises.append(j)
            continue
        if strict:
            return False, (), ()
        hop = _implicit_not_win(world, beta, earlier)
        if hop is None:
            return False, (), ()
        premises.extend(hop[0])
        implicit.extend(hop[1])
    return True, tuple(dict.fromkeys(premises)), tuple(implicit)


def _justify_win(
    world: WorldSpec, f: KFormula, earlier: Sequence[KFormula], strict: bool
) -> tuple[RuleApplication | None, str]:
    alpha = f.participant
    day_ctx = [e for e in earlier if e.kind in ("day_is", "day_not")]
    notes: list[str] = []
    for j, e in enumerate(earlier):
        if e.kind == "brd" and e.participant == alpha:
            try:
                verdict = resolve_reliability(world, e.source, day_ctx)
            except InconsistentDayContextError as exc:
                notes.append(str(exc))
                continue
            if verdict == TRUTHFUL:
                return (
                    RuleApplication(
                        "TruthfulBroadcast",
                        _broadcast_premises(world, e.source, (j,), earlier),
                        f,
                    ),
                    "",
                )
            if verdict == UNKNOWN:
                notes.append(f"{e.source} reliability unknown")
    for j, e in enumerate(earlier):
        if e.kind == "win_disj" and alpha in e.participants and len(e.participants) == 2:
            (beta,) = e.participants - {alpha}
            k = _index_of(earlier, not_win(beta))
            if k is not None:
                return RuleApplication("DisjElim", (j, k), f), ""
    others = set(world.participants) - {alpha}
    ok, premises, implicit = _knockouts(world, others, earlier, strict)
    if ok:
        return RuleApplication("ExistenceDisj", premises, f, implicit), ""
    return None, "; ".join(notes) or f"no rule derives {f.text()!r}"


def _justify_not_win(
    world: WorldSpec, f: KFormula, earlier: Sequence[KFormula], strict: bool
) -> tuple[RuleApplication | None, str]:
    beta = f.participant
    day_ctx = [e for e in earlier if e.kind in ("day_is", "day_not")]
    notes: list[str] = []
    for j, e in enumerate(earlier):
        if e.kind == "brd" and e.participant == beta:
            try:
                verdict = resolve_reliability(world, e.source, day_ctx)
            except InconsistentDayContextError as exc:
                notes.append(str(exc))
                continue
            if verdict == DECEITFUL:
                return (
                    RuleApplication(
                        "DeceitfulBroadcast",
                        _broadcast_premises(world, e.source, (j,), earlier),
                        f,
                    ),
                    "",
                )
            if verdict == UNKNOWN:
                notes.append(f"{e.source} reliability unknown")
    for j, e in enumerate(earlier):
        if e.kind == "win" and e.participant != beta:
            return RuleApplication("Uniqueness", (j,), f), ""
    return None, "; ".join(notes) or f"no rule derives {f.text()!r}"


def _justify_disj(
    world: WorldSpec, f: KFormula, earlier: Sequence[KFormula], strict: bool
) -> tuple[RuleApplication | None, str]:
    members = f.participants
    for j, e in enumerate(earlier):
        if (
            e.kind == "win_disj"
            and members < e.participants
            and len(e.participants) == len(members) + 1
        ):
            (beta,) = e.participants - members
            k = _index_of(earlier, not_win(beta))
            if k is not None:
                return RuleApplication("DisjElim", (j, k), f), ""
    knocked = set(world.participants) - members
    ok, premises, implicit = _knockouts(world, knocked, earlier, strict)
    if ok:
        return RuleApplication("ExistenceDisj", premises, f, implicit), ""
    missing = sorted(b for b in knocked if _index_of(earlier, not_win(b)) is None)
    return None, f"cannot rule out {', '.join(missing)} for {f.text()!r}"


def _justify(
    world: WorldSpec, f: KFormula, earlier: Sequence[KFormula], strict: bool
) -> tuple[RuleApplication | None, str]:
    if is_data(f):
        return RuleApplication("UserData", (), f), ""
    if f.kind == "win":
        return _justify_win(world, f, earlier, strict)
    if f.kind == "not_win":
        return _justify_not_win(world, f, earlier, strict)
    if f.kind == "win_disj":
        return _justify_disj(world, f, earlier, strict)
    return None, f"formula kind {f.kind!r} cannot be derived"


def check_proof(
    world: WorldSpec,
    formulas: Sequence[KFormula],
    goal_forms: Collection[KFormula],
    proof_id: str = "proof",
    strict: bool = False,
) -> CheckedProof:
    """Check an ordered proof listing against the rules.

    Each formula must be user data or derivable from the formulas before it;
    the last formula must be one of goal_forms. Unused (extraneous) formulas
    are fine. Invalidity is a result, not an exception.
    """
    formulas = list(formulas)
    if not formulas:
        raise ValueError("empty proof listing")
    steps: list[RuleApplication] = []
    violations: list[tuple[int, str]] = []
    for i, f in enumerate(formulas):
        app, reason = _justify(world, f, formulas[:i], strict)
        if app is None:
            steps.append(RuleApplication("Unjustified", (), f))
            violations.append((i, reason))
        else:
            steps.append(app)
    if formulas[-1] not in goal_forms:
        violations.append(
            (len(formulas) - 1, f"final formula {formulas[-1].text()!r} is not a goal")
        )
    return CheckedProof(
        proof_id=proof_id,
        steps=tuple(steps),
        valid=not violations,
        violations=tuple(violations),
    )


def check_knowledge_system(
    world: WorldSpec, ks: KnowledgeSystem, strict: bool = False
) -> tuple[CheckedProof, ...]:
    """Parse every proof of a knowledge system as kernel formulas and check it."""
    goal_forms = {parse_kformula(g, world) for g in ks.goals}
    results = []
    for p in ks.proofs:
        listing = [parse_kformula(t, world) for t in p.listing]
        results.append(check_proof(world, listing, goal_forms, proof_id=p.id, strict=strict))
    return tuple(results)


# ---------------------------------------------------------------------------
# bounded proof enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProofListing:
    """An enumerated proof: goal plus the ordered formulas that derive it."""

    goal: KFormula
    formulas: tuple[KFormula, ...]

    def texts(self) -> tuple[str, ...]:
        return tuple(f.text() for f in self.formulas)


@dataclass(frozen=True)
class EnumerationResult:
    proofs: tuple[ProofListing, ...]
    contradictions: tuple[str, ...]  # participants derived both to win and not to win


def enumerate_proofs(
    world: WorldSpec,
    user_data: Iterable[KFormula],
    goal_pred: Callable[[str], bool] | None = None,
    max_steps: int = 100,
    include_disjunctive: bool = False,
) -> EnumerationResult:
    """Forward-chain from user data and emit one proof per derivable winner.

    Derives every formula reachable within max_steps rule applications, then
    reconstructs, for each derived Win(a) passing goal_pred, the listing of
    the user data and intermediate formulas its first derivation used. The
    listings are fully explicit and re-check in strict mode. Contradictions
    (both Win(a) and ¬Win(a) derived) are reported in the result, not raised.

    With include_disjunctive, derived disjunctions are emitted as additional
    goal listings; by default only single-winner goals count.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    if goal_pred is None:
        goal_pred = lambda participant: True

    data = sorted(
        set(user_data),
        key=lambda f: (f.kind not in ("day_is", "day_not"), f.text()),
    )
    for f in data:
        if not is_data(f):
            raise ValueError(f"user data may only contain day and broadcast facts, got {f.text()!r}")
    day_facts = [f for f in data if f.kind in ("day_is", "day_not")]
    _possible_days(world, day_facts)  # raises on inconsistent day context

    facts: list[KFormula] = list(data)
    index: dict[KFormula, int] = {f: i for i, f in enumerate(facts)}
    derived_from: dict[int, tuple[int, ...]] = {}
    applications = 0

    day_idx = tuple(i for i, f in enumerate(facts) if f.kind in ("day_is", "day_not"))

    def premises_for(source: str, base: tuple[int, ...]) -> tuple[int, ...]:
        return base + day_idx if world.is_day_dependent(source) else base

    def add(formula: KFormula, premises: tuple[int, ...]) -> bool:
        nonlocal applications
        if formula in index or applications >= max_steps:
            return False
        index[formula] = len(facts)
        facts.append(formula)
        derived_from[index[formula]] = premises
        applications += 1
        return True

    changed = True
    while changed:
        changed = False
        for j, e in list(enumerate(facts)):
            if e.kind == "brd":
                verdict = resolve_reliability(world, e.source, day_facts)
                if verdict == TRUTHFUL:
                    changed |= add(win(e.participant), premises_for(e.source, (j,)))
                elif verdict == DECEITFUL:
                    changed |= add(not_win(e.participant), premises_for(e.source, (j,)))
            elif e.kind == "win":
                for beta in sorted(set(world.participants) - {e.participant}):
                    changed |= add(not_win(beta), (j,))
            elif e.kind == "not_win":
                rest = set(world.participants) - {e.participant}
                changed |= add(win_disj(rest), (j,))
            elif e.kind == "win_disj":
                for beta in sorted(e.participants):
                    k = index.get(not_win(beta))
                    if k is not None:
                        changed |= add(win_disj(e.participants - {beta}), (j, k))

    contradictions = tuple(
        sorted(
            p for p in world.participants
            if win(p) in index and not_win(p) in index
        )
    )

    def listing_for(goal_idx: int) -> ProofListing:
        used: set[int] = set()
        stack = [goal_idx]
        while stack:
            i = stack.pop()
            if i in used:
                continue
            used.add(i)
            stack.extend(derived_from.get(i, ()))
        ordered = tuple(facts[i] for i in sorted(used))
        return ProofListing(goal=facts[goal_idx], formulas=ordered)

    listings: list[ProofListing] = []
    for participant in sorted(world.participants):
        goal = win(participant)
        if goal in index and goal_pred(participant):
            listings.append(listing_for(index[goal]))
    if include_disjunctive:
        for f in facts:
            if f.kind == "win_disj" and index[f] in derived_from:
                listings.append(listing_for(index[f]))

    return EnumerationResult(proofs=tuple(listings), contradictions=contradictions)
