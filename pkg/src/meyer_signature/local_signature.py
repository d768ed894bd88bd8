"""
Local signatures of fiber germs of non-hyperelliptic genus-3 families.

The signature of a closed fibered 4-manifold is the sum of the local
signatures of its singular fiber germs; for each germ
``loc_sig = phi_value + sign_neighborhood``.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType

from .chow_p1xp2 import SignatureValue
from .errors import NegativeCount, ParseError
from .exact_linalg import format_rational
from .numeric_invariants import lasso_value

logger = logging.getLogger(__name__)


class GermTag(StrEnum):
    TYPE_I = "type_i"
    HYPERELLIPTIC = "hyperelliptic"
    TYPE_II = "type_ii"
    CUSTOM = "custom"


@dataclass(frozen=True, slots=True)
class GermType:
    tag: GermTag
    euler_contribution: int
    loc_sig: Fraction
    phi_value: Fraction
    sign_neighborhood: int
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "loc_sig", Fraction(self.loc_sig))
        object.__setattr__(self, "phi_value", Fraction(self.phi_value))
        if self.loc_sig != self.phi_value + self.sign_neighborhood:
            raise ValueError(
                f"loc_sig {format_rational(self.loc_sig)} != phi {format_rational(self.phi_value)}"
                f" + sign_nbhd {self.sign_neighborhood}"
            )

    @classmethod
    def custom(
        cls,
        euler: int,
        loc_sig: Fraction | int | None = None,
        phi: Fraction | int | None = None,
        sign_nbhd: int = 0,
        label: str | None = None,
    ) -> GermType:
        """A user-declared germ; the missing one of ``loc_sig`` / ``phi`` is derived."""
        if loc_sig is None and phi is None:
            raise ValueError("A custom germ needs loc_sig or phi")
        if loc_sig is None:
            loc_sig = Fraction(phi) + sign_nbhd  # type: ignore[arg-type]
        if phi is None:
            phi = Fraction(loc_sig) - sign_nbhd
        return cls(GermTag.CUSTOM, euler, Fraction(loc_sig), Fraction(phi), sign_nbhd, label)


TYPE_I = GermType(GermTag.TYPE_I, 1, Fraction(-5, 9), Fraction(-5, 9), 0)
HYPERELLIPTIC = GermType(GermTag.HYPERELLIPTIC, 0, Fraction(4, 9), Fraction(4, 9), 0)
TYPE_II = GermType(GermTag.TYPE_II, 1, Fraction(1, 3), Fraction(4, 3), -1)

_GERM_TABLE = MappingProxyType(
    {GermTag.TYPE_I: TYPE_I, GermTag.HYPERELLIPTIC: HYPERELLIPTIC, GermTag.TYPE_II: TYPE_II}
)


def germ_table():
    """The built-in germs keyed by tag."""
    return _GERM_TABLE


def type_i_at_degree(d: int) -> GermType:
    """
    Lefschetz type I germ of the degree-d family, with the lasso value as local signature.

    Only the d = 4 germ belongs to the genus-3 calculus; other degrees are an
    extension used for cross-degree consistency.
    """
    value = lasso_value(d)
    return GermType(GermTag.CUSTOM, 1, value, value, 0, label=f"type_i@d={d}")


type GermList = Sequence[tuple[GermType, int]]


def _check_counts(germs: GermList):
    for germ, count in germs:
        if count < 0:
            raise NegativeCount(f"Germ {germ.label or germ.tag} has negative count {count}")


def total_signature(germs: GermList) -> SignatureValue:
    _check_counts(germs)
    result = SignatureValue.of(sum((count * germ.loc_sig for germ, count in germs), Fraction(0)))
    if not result.integral:
        logger.warning("Total signature %s is not an integer: no closed fibration has these germs", result)
    return result


def total_euler(germs: GermList) -> int:
    _check_counts(germs)
    return sum(count * germ.euler_contribution for germ, count in germs)


def solve_unknown(total_sign: Fraction | int, known: GermList, unknown_count: int) -> Fraction:
    """Local signature shared by ``unknown_count`` germs so that the total is ``total_sign``."""
    if unknown_count < 1:
        raise ValueError(f"unknown_count must be positive, got {unknown_count}")
    return (Fraction(total_sign) - total_signature(known).value) / unknown_count


def typeI_count_from_euler(c2: int, genus: int, other_euler: int) -> int:
    """Number of type I fibers: ``c2 - 2 (2 - 2 genus) - other_euler``."""
    count = c2 - 2 * (2 - 2 * genus) - other_euler
    if count < 0:
        raise NegativeCount(
            f"c2={c2}, genus={genus}, other_euler={other_euler} give {count} type I fibers"
        )
    return count


def phi_from_locsig(t: GermType) -> Fraction:
    return t.loc_sig - t.sign_neighborhood


def _parse_rational(value, field: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{field} must be an integer or a 'p/q' string, got {value!r}")
    try:
        return Fraction(value.replace("−", "-").strip() if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"{field}: {e}") from e


def _parse_int(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{field} must be an integer, got {value!r}")
    return value


def germs_from_json(data) -> list[tuple[GermType, int]]:
    """
    Decode the germ-list format::

        [{"type": "type_i", "count": 26}, {"type": "custom", "count": 1,
          "euler": 0, "loc_sig": "4/9", "sign_nbhd": 0}]
    """
    if not isinstance(data, list):
        raise ParseError("A germ list is a JSON array")

    germs = []
    for index, item in enumerate(data):
        where = f"germ #{index}"
        if not isinstance(item, dict):
            raise ParseError(f"{where} is not an object")
        try:
            tag = GermTag(item.get("type"))
        except ValueError:
            raise ParseError(f"{where} has unknown type {item.get('type')!r}") from None

        count = _parse_int(item.get("count", 1), f"{where}.count")
        if count < 0:
            raise ParseError(f"{where}.count is negative")

        if tag is GermTag.CUSTOM:
            if "euler" not in item:
                raise ParseError(f"{where}: custom germs need 'euler'")
            try:
                germ = GermType.custom(
                    euler=_parse_int(item["euler"], f"{where}.euler"),
                    loc_sig=_parse_rational(item["loc_sig"], f"{where}.loc_sig") if "loc_sig" in item else None,
                    phi=_parse_rational(item["phi"], f"{where}.phi") if "phi" in item else None,
                    sign_nbhd=_parse_int(item.get("sign_nbhd", 0), f"{where}.sign_nbhd"),
                    label=item.get("label"),
                )
            except ParseError:
                raise
            except ValueError as e:
                raise ParseError(f"{where}: {e}") from e
        else:
            germ = _GERM_TABLE[tag]

        germs.append((germ, count))

    return germs


def load_germs(path: str | Path) -> list[tuple[GermType, int]]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e}") from e
    return germs_from_json(data)


def germs_to_json(germs: Iterable[tuple[GermType, int]]) -> list[dict]:
    encoded = []
    for germ, count in germs:
        item: dict = {"type": str(germ.tag), "count": count}
        if germ.tag is GermTag.CUSTOM:
            item |= {
                "euler": germ.euler_contribution,
                "loc_sig": format_rational(germ.loc_sig),
                "phi": format_rational(germ.phi_value),
                "sign_nbhd": germ.sign_neighborhood,
            }
            if germ.label:
                item["label"] = germ.label
        encoded.append(item)
    return encoded
