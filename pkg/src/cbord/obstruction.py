"""
Obstruction certificates for C-boundaries and their concordance classes.

Every test produces a ``Certificate``: the named rule, the inputs it was fed,
the hypotheses it takes on trust, the deciding inequality and a verdict.
The verdict is OBSTRUCTED exactly when the inequality holds. Because rules
live in the ``RULES`` registry and read only the stored inputs, a
certificate can be re-checked later with ``verify_certificate``, including
after a JSON round trip.

Genus values carry a kind (exact, lower bound, upper bound) and every rule
states which kinds it accepts; feeding the wrong kind raises
``GenusKindError`` instead of producing an unsound verdict.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Mapping, Optional, Tuple, Union

from cbord.braid import QuasipositiveWord, closure_components, expand_quasipositive
from cbord.errors import GenusKindError, InputError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class Kind(str, Enum):
    EXACT = "exact"
    LOWER = "lower-bound"
    UPPER = "upper-bound"


class Verdict(str, Enum):
    OBSTRUCTED = "OBSTRUCTED"
    NOT_OBSTRUCTED = "NOT_OBSTRUCTED"


@dataclass(frozen=True)
class GenusValue:
    """The Murasugi big genus M(L), or a one-sided bound on it."""

    value: Fraction
    kind: Kind = Kind.EXACT
    provenance: str = "user-supplied"

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.value < 0:
            raise InputError(f"a genus value is never negative, got {self.value}")

    def __str__(self):
        prefix = {Kind.EXACT: "", Kind.LOWER: ">=", Kind.UPPER: "<="}[self.kind]
        return f"{prefix}{self.value}"


def parse_genus(text: str, provenance: str = "user-supplied") -> GenusValue:
    """Parse ``"1"`` or ``"3/2"`` (exact), ``"<=1"`` (upper bound) or ``">=1"`` (lower bound)."""
    raw = text.strip()
    kind = Kind.EXACT
    if raw.startswith("<="):
        kind, raw = Kind.UPPER, raw[2:]
    elif raw.startswith(">="):
        kind, raw = Kind.LOWER, raw[2:]
    try:
        value = Fraction(raw.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"expected a genus like '1', '3/2', '<=1' or '>=1', got {text!r}", position=0)
    return GenusValue(value, kind, provenance)


@dataclass(frozen=True)
class Inequality:
    lhs: Fraction
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in ("<", ">"):
            raise ValueError(f"unsupported relation {self.relation!r}")
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self) -> bool:
        return self.lhs < self.rhs if self.relation == "<" else self.lhs > self.rhs

    def __str__(self):
        return f"{self.lhs} {self.relation} {self.rhs}"


@dataclass(frozen=True)
class Certificate:
    rule: str
    inputs: Dict[str, Any]
    assumptions: Tuple[str, ...]
    computed: Dict[str, Any]
    inequality: Inequality
    verdict: Verdict
    trace: Tuple[str, ...] = field(default=())

    @property
    def obstructed(self) -> bool:
        return self.verdict is Verdict.OBSTRUCTED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "inputs": {k: _encode(v) for k, v in self.inputs.items()},
            "assumptions": list(self.assumptions),
            "computed": {k: _encode(v) for k, v in self.computed.items()},
            "inequality": {
                "lhs": _encode(self.inequality.lhs),
                "relation": self.inequality.relation,
                "rhs": _encode(self.inequality.rhs),
            },
            "inequality_trace": list(self.trace),
            "verdict": self.verdict.value,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Certificate":
        try:
            inequality = data["inequality"]
            return cls(
                rule=data["rule"],
                inputs={k: _decode(v) for k, v in data["inputs"].items()},
                assumptions=tuple(data.get("assumptions", ())),
                computed={k: _decode(v) for k, v in data.get("computed", {}).items()},
                inequality=Inequality(
                    _decode(inequality["lhs"]), inequality["relation"], _decode(inequality["rhs"])
                ),
                verdict=Verdict(data["verdict"]),
                trace=tuple(data.get("inequality_trace", ())),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed certificate: {e}")


def encode_rational(value: Rational):
    """JSON form of a rational: an int when whole, else {"numerator", "denominator"}."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return {"numerator": value.numerator, "denominator": value.denominator}


def _encode(value):
    if isinstance(value, GenusValue):
        return {"value": encode_rational(value.value), "kind": value.kind.value, "provenance": value.provenance}
    if isinstance(value, bool) or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return encode_rational(value)
    return value


def _decode(value):
    if isinstance(value, dict):
        if "kind" in value:
            return GenusValue(_decode(value["value"]), Kind(value["kind"]), value.get("provenance", ""))
        if "numerator" in value:
            return Fraction(value["numerator"], value["denominator"])
    return value


# Rule registry -------------------------------------------------------------

RuleResult = Tuple[Inequality, Dict[str, Any], Tuple[str, ...]]
RULES: Dict[str, Callable[[Mapping[str, Any]], RuleResult]] = {}
ASSUMPTIONS: Dict[str, Tuple[str, ...]] = {}


def rule(name: str, *assumptions: str):
    """Register a certificate rule under ``name`` with the hypotheses it takes on trust."""
    def register(func):
        RULES[name] = func
        ASSUMPTIONS[name] = assumptions
        return func
    return register


def _require_kind(name: str, genus: GenusValue, *allowed: Kind) -> None:
    if not isinstance(genus, GenusValue):
        raise InputError(f"{name} must be a genus value")
    if genus.kind not in allowed:
        accepted = " or ".join(k.value for k in allowed)
        raise GenusKindError(f"{name} is {genus.kind.value} but this rule needs {accepted}")


def _holds_text(inequality: Inequality) -> str:
    return "holds" if inequality.holds() else "fails"


def _certify(name: str, inputs: Dict[str, Any]) -> Certificate:
    inequality, computed, trace = RULES[name](inputs)
    verdict = Verdict.OBSTRUCTED if inequality.holds() else Verdict.NOT_OBSTRUCTED
    logger.debug(f"{name}: {inequality} -> {verdict.value}")
    return Certificate(name, inputs, ASSUMPTIONS[name], computed, inequality, verdict, trace)


def verify_certificate(cert: Certificate) -> bool:
    """Recompute the deciding inequality from the stored inputs and compare."""
    if cert.rule not in RULES:
        raise InputError(f"unknown certificate rule {cert.rule!r}")
    inequality, _, _ = RULES[cert.rule](cert.inputs)
    expected = Verdict.OBSTRUCTED if inequality.holds() else Verdict.NOT_OBSTRUCTED
    return inequality == cert.inequality and expected is cert.verdict


# Valuation tests on the HOMFLY polynomial

@rule(
    "thm_3_2",
    "L is an spc-C-boundary (hypothesis under test; refuted when the inequality holds)",
    "M is the Murasugi big genus of L or a lower bound on it",
    "the pseudoconvex 4-ball and the algebraic curve bounding L are not represented; only the valuation is used",
)
def _spc_rule(inputs):
    d, r, M = int(inputs["ord_v"]), int(inputs["r"]), inputs["M"]
    _require_kind("M", M, Kind.EXACT, Kind.LOWER)
    bound = 1 - r + 2 * M.value
    inequality = Inequality(d, "<", bound)
    trace = (
        "an spc-C-boundary satisfies Ord_v P_L >= 1 - r + 2M(L)",
        f"Ord_v P_L = {d}, r = {r}, M(L) {'=' if M.kind is Kind.EXACT else '>='} {M.value}",
        f"1 - r + 2M = {bound}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {"bound": bound}, trace


@rule("cor_3_3", "L is an spc-C-boundary (hypothesis under test)")
def _cor33_rule(inputs):
    d, r = int(inputs["ord_v"]), int(inputs["r"])
    bound = 1 - r
    inequality = Inequality(d, "<", bound)
    trace = (
        "an spc-C-boundary satisfies Ord_v P_L >= 1 - r",
        f"Ord_v P_L = {d}, r = {r}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {"bound": bound}, trace


@rule("cor_3_4", "K is an spc-C-boundary (hypothesis under test)", "K is a knot")
def _cor34_rule(inputs):
    d, sigma, r = int(inputs["ord_v"]), int(inputs["sigma"]), int(inputs.get("r", 1))
    if r != 1:
        raise InputError(f"the signature test applies to knots only, got {r} components")
    bound = abs(sigma)
    inequality = Inequality(d, "<", bound)
    trace = (
        "an spc-C-boundary knot satisfies Ord_v P_K >= |sigma(K)|",
        f"Ord_v P_K = {d}, sigma(K) = {sigma}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {"bound": bound}, trace


def spc_test(P, M_lb: GenusValue) -> Certificate:
    """Test Ord_v P_L >= 1 - r + 2M(L); ``P`` is a ``HomflyResult``."""
    return _certify("thm_3_2", {"ord_v": P.ord_v, "r": P.components, "M": M_lb})


def cor33_test(P) -> Certificate:
    """Test Ord_v P_L >= 1 - r, which needs no genus information."""
    return _certify("cor_3_3", {"ord_v": P.ord_v, "r": P.components})


def cor34_test(P, sigma: int) -> Certificate:
    """
    Test Ord_v P_K >= |sigma(K)| for a knot.

    Raises:
        InputError: ``P`` has more than one component.
    """
    return _certify("cor_3_4", {"ord_v": P.ord_v, "sigma": int(sigma), "r": P.components})


# Genus values

def quasipositive_genus(q: QuasipositiveWord) -> GenusValue:
    """
    Exact M(L) for the closure of a quasipositive word: (r - n + k) / 2.

    The closure bounds a piece of complex curve of Euler characteristic n - k,
    and for such curves the big genus is realized.
    """
    r = closure_components(expand_quasipositive(q)).components
    twice = r - q.strands + q.band_count
    if twice < 0 or twice % 2:
        raise InputError(
            f"inconsistent quasipositive data: r - n + k = {r} - {q.strands} + {q.band_count} = {twice}"
        )
    return GenusValue(Fraction(twice, 2), Kind.EXACT, f"quasipositive braid: (r - n + k)/2 with r={r}, "
                                                      f"n={q.strands}, k={q.band_count}")


def torus_genus(p: int, q: int) -> GenusValue:
    """Exact M of the torus link T(p, q): (p - 1)(q - 1) / 2."""
    if p < 2 or q < 2:
        raise InputError(f"torus genus needs p, q >= 2, got ({p}, {q})")
    return GenusValue(Fraction((p - 1) * (q - 1), 2), Kind.EXACT, f"torus link T({p},{q})")


def connected_sum_bound(M1: GenusValue, M2: GenusValue) -> GenusValue:
    """Lower bound max(0, M1 + M2 - 1) on M(L1 # L2) for C-boundary-concordant summands."""
    _require_kind("M1", M1, Kind.EXACT, Kind.LOWER)
    _require_kind("M2", M2, Kind.EXACT, Kind.LOWER)
    value = max(Fraction(0), M1.value + M2.value - 1)
    return GenusValue(value, Kind.LOWER, f"connected sum of C-boundary-concordant links ({M1}, {M2})")


def shibuya_upper(M_K: GenusValue, t: int, omega: int) -> GenusValue:
    """Upper bound |omega| M(K) + (t - |omega|)/2 on the genus of a satellite of K."""
    _require_kind("M_K", M_K, Kind.EXACT, Kind.UPPER)
    _check_satellite(t, omega)
    value = abs(omega) * M_K.value + Fraction(t - abs(omega), 2)
    return GenusValue(value, Kind.UPPER, f"satellite with wrapping {t} and winding {omega}")


def _check_satellite(t: int, omega: int) -> None:
    if t < 1:
        raise InputError(f"wrapping number must be at least 1, got {t}")
    if abs(omega) > t:
        raise InputError(f"|winding| {abs(omega)} exceeds wrapping number {t}")
    if (t - omega) % 2:
        raise InputError(f"wrapping {t} and winding {omega} must have the same parity")


# Concordance certificates

@rule(
    "prop_1_4",
    "L1 and L2 are both concordant to C-boundaries (hypothesis under test)",
)
def _prop14_rule(inputs):
    M1, M2, Ms = inputs["M1"], inputs["M2"], inputs["M_sum"]
    _require_kind("M1", M1, Kind.EXACT, Kind.LOWER)
    _require_kind("M2", M2, Kind.EXACT, Kind.LOWER)
    _require_kind("M_sum", Ms, Kind.EXACT, Kind.UPPER)
    bound = M1.value + M2.value - 1
    inequality = Inequality(Ms.value, "<", bound)
    trace = (
        "C-boundary-concordant summands satisfy M(L1 # L2) >= M(L1) + M(L2) - 1",
        f"M(L1 # L2) <= {Ms.value}, M(L1) + M(L2) - 1 >= {bound}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {"bound": bound}, trace


def prop14_certificate(M1: GenusValue, M2: GenusValue, M_sum: GenusValue) -> Certificate:
    """
    Refute that L1 and L2 are both concordant to C-boundaries.

    Args:
        M1, M2: Exact values or lower bounds for the summands.
        M_sum: Exact value or upper bound for the connected sum.

    Returns:
        A certificate that is OBSTRUCTED when M(L1 # L2) < M(L1) + M(L2) - 1.
    """
    return _certify("prop_1_4", {"M1": M1, "M2": M2, "M_sum": M_sum})


@rule(
    "cor_1_6",
    "K is concordant to a C-boundary",
    "K has finite order p in the concordance group",
)
def _cor16_rule(inputs):
    M, p = inputs["M"], int(inputs["order_p"])
    _require_kind("M", M, Kind.EXACT, Kind.LOWER)
    if p < 1:
        raise InputError(f"concordance order must be at least 1, got {p}")
    lhs = p * M.value - (p - 1)
    inequality = Inequality(lhs, ">", 0)
    trace = (
        "0 = M(K # ... # K) >= pM(K) - (p - 1) for p copies of K",
        f"pM(K) - (p - 1) = {p}*{M.value} - {p - 1} = {lhs}",
        f"{inequality}: {'contradiction, so K is null-concordant or of infinite order' if inequality.holds() else 'consistent'}",
    )
    return inequality, {"pM_minus_p_plus_1": lhs}, trace


def cor16_order(M: GenusValue, order_p: int) -> Certificate:
    """
    Check whether a knot concordant to a C-boundary can have concordance order p.

    Args:
        M: Exact value or lower bound for M(K).
        order_p: The order to test, at least 1.

    Returns:
        A certificate that is OBSTRUCTED when pM(K) - (p - 1) > 0.
    """
    return _certify("cor_1_6", {"M": M, "order_p": int(order_p)})


@rule("cor_1_9", "L and its mirror L* are both concordant to C-boundaries (hypothesis under test)")
def _cor19_rule(inputs):
    M = inputs["M"]
    _require_kind("M", M, Kind.EXACT, Kind.LOWER)
    lhs = 2 * M.value - 1
    inequality = Inequality(lhs, ">", 0)
    trace = (
        "L # L* is null-concordant, so 0 = M(L # L*) >= M(L) + M(L*) - 1 = 2M(L) - 1",
        f"2M(L) - 1 = {lhs}",
        f"{inequality}: {'contradiction, L and L* are not both C-boundaries' if inequality.holds() else 'consistent'}",
    )
    return inequality, {"two_M_minus_1": lhs}, trace


def cor19_mirror(M: GenusValue) -> Certificate:
    """Refute that L and its mirror are both concordant to C-boundaries; OBSTRUCTED when 2M(L) - 1 > 0."""
    return _certify("cor_1_9", {"M": M})


@rule(
    "cor_2_4",
    "K1 and K2 are C-boundaries",
)
def _cor24_rule(inputs):
    M1, M2, Ms = inputs["M1"], inputs["M2"], inputs["M_sum"]
    _require_kind("M1", M1, Kind.EXACT)
    _require_kind("M2", M2, Kind.EXACT)
    _require_kind("M_sum", Ms, Kind.EXACT, Kind.LOWER)
    if M1.value != M2.value:
        raise InputError(f"the construction needs M(K1) = M(K2), got {M1.value} and {M2.value}")
    if Ms.value.denominator != 1:
        raise InputError(f"M(K1 # K2*) of a knot is an integer, got {Ms.value}")
    inequality = Inequality(Ms.value, ">", 1)
    trace = (
        "M(K1) = M(K2) and M(K1 # K2*) >= 2 give a knot K concordant to K1 # K2*",
        "such that neither K nor K* is concordant to a C-boundary",
        f"M(K1) = M(K2) = {M1.value}, M(K1 # K2*) {'=' if Ms.kind is Kind.EXACT else '>='} {Ms.value}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {}, trace


def cor24_certificate(M1: GenusValue, M2: GenusValue, M_sum: GenusValue) -> Certificate:
    """
    Certify K1 # K2* as a knot with neither it nor its mirror concordant to a C-boundary.

    Needs exact M(K1) = M(K2); OBSTRUCTED when M(K1 # K2*) > 1.
    """
    return _certify("cor_2_4", {"M1": M1, "M2": M2, "M_sum": M_sum})


@rule(
    "thm_2_3",
    "J is concordant to a C-boundary",
    "K #_b J* is concordant to a C-boundary (hypothesis under test, for every band sum)",
)
def _thm23_rule(inputs):
    M_K, M_J = inputs["M_K"], inputs["M_J"]
    _require_kind("M_J", M_J, Kind.EXACT, Kind.LOWER)
    _require_kind("M_K", M_K, Kind.EXACT, Kind.UPPER)
    inequality = Inequality(M_J.value, ">", M_K.value)
    trace = (
        "K is a band-sum factor of (K #_b J*) # J, so M(K) >= M(J) + M(K #_b J*) - 1 >= M(J)",
        f"M(J) = {M_J.value}, M(K) = {M_K.value}",
        f"{inequality}: {'no band sum K #_b J* is concordant to a C-boundary' if inequality.holds() else 'hypothesis M(J) > M(K) fails'}",
    )
    return inequality, {}, trace


def thm23_certificate(M_K: GenusValue, M_J: GenusValue) -> Certificate:
    """
    Refute every band sum K #_b J* being concordant to a C-boundary.

    Args:
        M_K: Exact value or upper bound for M(K).
        M_J: Exact value or lower bound for M(J).

    Returns:
        A certificate that is OBSTRUCTED when M(J) > M(K).
    """
    return _certify("thm_2_3", {"M_K": M_K, "M_J": M_J})


@rule(
    "thm_2_5",
    "J* is concordant to a C-boundary",
    "K(J) is concordant to a C-boundary (hypothesis under test)",
)
def _thm25_rule(inputs):
    M_J, M_K = inputs["M_J"], inputs["M_K"]
    t, omega = int(inputs["t"]), int(inputs["omega"])
    _require_kind("M_J", M_J, Kind.EXACT, Kind.LOWER)
    upper = shibuya_upper(M_K, t, omega).value
    bound = upper + 1
    inequality = Inequality(M_J.value, ">", bound)
    trace = (
        "M(K(J # J*)) <= |omega| M(K) + (t - |omega|)/2 for the satellite",
        f"|omega| M(K) + (t - |omega|)/2 = {abs(omega)}*{M_K.value} + {Fraction(t - abs(omega), 2)} = {upper}",
        f"M(J) = {M_J.value}, bound + 1 = {bound}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {"satellite_upper": upper, "bound": bound}, trace


def thm25_certificate(M_J: GenusValue, M_K: GenusValue, t: int, omega: int) -> Certificate:
    """
    Refute the satellite K(J) being concordant to a C-boundary.

    The pattern has geometric wrapping ``t`` and winding ``omega``; the
    certificate is OBSTRUCTED when M(J) exceeds the satellite upper bound plus one.
    """
    return _certify("thm_2_5", {"M_J": M_J, "M_K": M_K, "t": int(t), "omega": int(omega)})


@rule(
    "cor_2_6",
    "the (-p, q)-cable K(-p, q) is concordant to a C-boundary (hypothesis under test)",
)
def _cor26_rule(inputs):
    M_K, p, q = inputs["M_K"], int(inputs["p"]), int(inputs["q"])
    _require_kind("M_K", M_K, Kind.EXACT, Kind.UPPER)
    if p < 2 or q < 2:
        raise InputError(f"cable parameters need p, q >= 2, got ({p}, {q})")
    torus = torus_genus(p, q).value
    lhs = (p - 1) * (q - 1)
    rhs = 2 * q * M_K.value + 1
    inequality = Inequality(lhs, ">", rhs)
    trace = (
        f"M(T({p},{q})) = (p - 1)(q - 1)/2 = {torus}; the cable has t = |omega| = {q}",
        f"(p - 1)(q - 1) = {lhs}, 2qM(K) + 1 = {rhs}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {"torus_genus": torus}, trace


def cor26_certificate(M_K: GenusValue, p: int, q: int) -> Certificate:
    """Refute the (-p, q)-cable of K being concordant to a C-boundary."""
    return _certify("cor_2_6", {"M_K": M_K, "p": int(p), "q": int(q)})


@rule(
    "cor_2_7",
    "D(K; rho, -) is concordant to a C-boundary (hypothesis under test)",
    "the mirrored clasp pattern W*_{rho,-} is quasipositive, hence a C-boundary",
    "D(K; rho, -) # W*_{rho,-} is null-concordant because K is",
)
def _cor27_rule(inputs):
    M_pattern, sigma = inputs["M_pattern"], int(inputs["sigma_pattern"])
    if not inputs["K_null_concordant"]:
        raise InputError("hypothesis not met: the companion knot K must be null-concordant")
    _require_kind("M_pattern", M_pattern, Kind.EXACT, Kind.LOWER)
    M_W = max(M_pattern.value, Fraction(abs(sigma), 2))
    M_D = Fraction(1) if sigma else Fraction(0)
    lhs = M_D + M_W - 1
    inequality = Inequality(lhs, ">", 0)
    trace = (
        "0 = M(D # W*) >= M(D) + M(W*) - 1 if both D and W* are C-boundary-concordant",
        f"sigma(W) = {sigma}, so M(D) = M(W) >= {M_D} and M(W*) >= {M_W}",
        f"M(D) + M(W*) - 1 >= {lhs}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {"M_double_lower": M_D, "M_pattern_lower": M_W}, trace


def cor27_certificate(M_pattern: Optional[GenusValue] = None, sigma_pattern: int = -2,
                      K_null_concordant: bool = True) -> Certificate:
    """The clasp pattern defaults to M = 1, the genus of a nontrivial twist knot."""
    if M_pattern is None:
        M_pattern = GenusValue(1, Kind.EXACT, "clasp pattern")
    return _certify("cor_2_7", {
        "M_pattern": M_pattern,
        "sigma_pattern": int(sigma_pattern),
        "K_null_concordant": bool(K_null_concordant),
    })


@rule(
    "tree_valuation",
    "the tree is even and strongly excessive",
    "the valuation of the arborescent link is given by its uniform decomposition",
)
def _tree_valuation_rule(inputs):
    d, r = int(inputs["ord_v"]), int(inputs["r"])
    p, q = int(inputs["p"]), int(inputs["q"])
    positive_sum, s = int(inputs["positive_weight_sum"]), int(inputs["s"])
    M_lb = Fraction(r - 1 + p - q, 2)
    bound = p - q
    inequality = Inequality(d, "<", bound)
    trace = (
        f"Ord_v P_L = p + q - 2*sum(n > 0) - 2s = {p} + {q} - 2*{positive_sum} - 2*{s} = {d}",
        f"M(L) >= (r - 1 + p - q)/2 = {M_lb}",
        f"an spc-C-boundary needs Ord_v >= 1 - r + 2M >= p - q = {bound}",
        f"Ord_v - (p - q) = 2q - 2*sum(n > 0) - 2s = {2 * q - 2 * positive_sum - 2 * s}",
        f"{inequality}: {_holds_text(inequality)}",
    )
    return inequality, {"genus_lower_bound": M_lb, "bound": bound,
                        "gap": 2 * q - 2 * positive_sum - 2 * s}, trace


def tree_valuation_certificate(ord_v: int, r: int, p: int, q: int, positive_weight_sum: int, s: int) -> Certificate:
    """Compare the tree valuation with p - q, the least valuation of an spc-C-boundary with this tree."""
    return _certify("tree_valuation", {
        "ord_v": ord_v, "r": r, "p": p, "q": q,
        "positive_weight_sum": positive_weight_sum, "s": s,
    })
