"""
Exact base fields: the rationals and prime fields GF(p).

Fields are small frozen pydantic models so that they validate, serialize and
hash like any other configuration value. Each one knows its sympy domain and
how scalars travel to and from JSON (``"num/den"`` strings over the rationals,
integers in ``[0, p)`` over GF(p)).
"""

from functools import cache
from typing import Annotated, Any, Literal, TypeAlias

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from sympy import Symbol
from sympy.polys.domains import GF, QQ

from polycomplete.common.validation import PrimeInt, pretty_errors
from polycomplete.exceptions import InvalidInputError

# The polynomial indeterminate shared by every Poly in the package
S = Symbol("s")


@cache
def _prime_domain(p: int):
    return GF(p)


class RationalField(BaseModel):
    """The field of rational numbers."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["rational"] = "rational"

    @property
    def domain(self):
        return QQ

    @property
    def label(self) -> str:
        return "QQ"

    @property
    def is_finite(self) -> bool:
        return False

    def scalar(self, raw: Any):
        """Convert an int or a ``"num/den"`` string into a domain element."""
        if isinstance(raw, bool):
            raise InvalidInputError(f"Rational scalar cannot be a bool: {raw!r}")
        if isinstance(raw, int):
            return QQ(raw)
        if isinstance(raw, str):
            num, _, den = raw.strip().partition("/")
            try:
                value = QQ(int(num), int(den or 1))
            except (ValueError, ZeroDivisionError):
                raise InvalidInputError(
                    f"Malformed rational scalar {raw!r}.\n"
                    "💡 Hint: Use an integer or a 'num/den' string such as '-3/4'."
                ) from None
            return value
        raise InvalidInputError(
            f"Unsupported rational scalar {raw!r} of type {type(raw).__name__}."
        )

    def dump_scalar(self, c) -> str:
        return f"{int(c.numerator)}/{int(c.denominator)}"

    def show_scalar(self, c) -> str:
        num, den = int(c.numerator), int(c.denominator)
        return str(num) if den == 1 else f"{num}/{den}"


class PrimeField(BaseModel):
    """The prime field GF(p), residues normalized to ``[0, p)``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["gfp"] = "gfp"
    p: PrimeInt

    @property
    def domain(self):
        return _prime_domain(self.p)

    @property
    def label(self) -> str:
        return f"GF({self.p})"

    @property
    def is_finite(self) -> bool:
        return True

    def scalar(self, raw: Any):
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise InvalidInputError(
                f"GF({self.p}) scalars are integers.\n  Found: (input={raw!r})"
            )
        return self.domain(raw % self.p)

    def dump_scalar(self, c) -> int:
        return int(c) % self.p

    def show_scalar(self, c) -> str:
        return str(self.dump_scalar(c))

    def residues(self) -> range:
        """All field elements as normalized residues."""
        return range(self.p)


FieldSpec: TypeAlias = Annotated[RationalField | PrimeField, Field(discriminator="type")]


def field_of(domain) -> RationalField | PrimeField:
    """Recover the field model from a sympy domain."""
    if domain.is_FiniteField:
        return PrimeField(p=int(domain.characteristic()))
    if domain == QQ:
        return RationalField()
    raise InvalidInputError(f"Unsupported coefficient domain {domain}.")


def parse_field(text: str) -> RationalField | PrimeField:
    """Parse the CLI spelling of a field: ``rational``/``qq`` or a prime ``p``.

    Raises:
        InvalidInputError: If the text names neither.
    """
    token = text.strip().lower()
    if token in {"rational", "qq", "q"}:
        return RationalField()
    token = token.removeprefix("gf").strip("()")
    if token.isdigit():
        try:
            return PrimeField(p=int(token))
        except ValidationError as e:
            raise InvalidInputError(pretty_errors(e)) from None
    raise InvalidInputError(
        f"Unknown field {text!r}.\n💡 Hint: Use 'rational' or a prime such as '5'."
    )
