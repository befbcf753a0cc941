"""
Dispatch from a prescription variant to the predicate that decides it.

Every variant has a built-in predicate. A predicate registered for a variant
shadows the built-in one until it is unregistered; the oracle tests use this
to inject faulty predicates and check that the search catches them.
"""

import inspect
from collections.abc import Callable, Mapping

from pydantic import TypeAdapter, ValidationError

from polycomplete.common.validation import pretty_errors, validate_input
from polycomplete.completion.finite import check_fin_cmi, check_fin_rmi, check_fin_sing
from polycomplete.completion.full import check_full
from polycomplete.completion.infinite import check_inf_cmi, check_inf_rmi, check_inf_sing
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.report import FeasibilityReport
from polycomplete.completion.singular import check_cmi, check_rmi, check_sing
from polycomplete.exceptions import CallbackError
from polycomplete.structmat.eigenstructure import Eigenstructure

Predicate = Callable[[Eigenstructure, Prescription], FeasibilityReport]

BUILTIN_PREDICATES: dict[Variant, Predicate] = {
    Variant.FULL: check_full,
    Variant.INF_SING: check_inf_sing,
    Variant.INF_CMI: check_inf_cmi,
    Variant.INF_RMI: check_inf_rmi,
    Variant.FIN_SING: check_fin_sing,
    Variant.FIN_CMI: check_fin_cmi,
    Variant.FIN_RMI: check_fin_rmi,
    Variant.SING: check_sing,
    Variant.RMI: check_rmi,
    Variant.CMI: check_cmi,
}

_report_adapter = TypeAdapter(FeasibilityReport)


def _predicate_name(predicate: Callable, name: str | None) -> str:
    """The given name, else the function name; lambdas must be named."""
    if name is not None:
        return name
    if getattr(predicate, "__name__", "<lambda>") == "<lambda>":
        raise ValueError("A lambda predicate needs an explicit name.")
    return predicate.__name__


def _check_arity(predicate: Callable, name: str) -> None:
    required = [
        p
        for p in inspect.signature(predicate).parameters.values()
        if p.default is inspect.Parameter.empty
        and p.kind in (p.POSITIONAL_ONLY, p.POSITIONAL_OR_KEYWORD)
    ]
    if len(required) != 2:
        raise TypeError(
            f"'{name}' takes {len(required)} required arguments.\n"
            "Expected exactly two required parameters: the base eigenstructure "
            "and the prescription.\n"
            "💡 Hint: Optional parameters with default values are allowed."
        )


class PredicateRegistry:
    """
    Resolves each variant to a named predicate.

    Args:
        builtins: The predicate used for a variant when nothing shadows it.
    """

    def __init__(self, builtins: Mapping[Variant, Predicate] = BUILTIN_PREDICATES):
        self._builtins = dict(builtins)
        self._shadows: dict[Variant, tuple[str, Predicate]] = {}

    @validate_input
    def _shadow(self, variants: tuple[Variant, ...], name: str, predicate: Callable):
        for variant in variants:
            self._shadows[variant] = (name, predicate)

    def register(self, *variants: Variant | str, name: str | None = None):
        """
        Decorator shadowing the built-in predicate of ``variants``.

        Examples:
            >>> registry = PredicateRegistry()
            >>> @registry.register("Cmi", name="never")
            ... def never(base, presc): ...
            >>> registry.resolve("Cmi")[0]
            'never'
            >>> registry.unregister("Cmi")
            >>> registry.resolve("Cmi")[0]
            'check_cmi'

        Raises:
            ValueError: If no variant is given, or a lambda has no name.
            TypeError: If the predicate does not take exactly two required
                arguments.
        """
        if not variants:
            raise ValueError("Name at least one variant to register a predicate for.")

        def decorator(predicate: Callable) -> Callable:
            label = _predicate_name(predicate, name)
            _check_arity(predicate, label)
            self._shadow(variants, label, predicate)
            return predicate

        return decorator

    @validate_input
    def unregister(self, *variants: Variant) -> None:
        """Restore the built-in predicates of ``variants``."""
        for variant in variants:
            self._shadows.pop(variant, None)

    @validate_input
    def resolve(self, variant: Variant) -> tuple[str, Predicate]:
        """The name and predicate deciding ``variant``."""
        if variant in self._shadows:
            return self._shadows[variant]
        builtin = self._builtins[variant]
        return builtin.__name__, builtin

    def evaluate(
        self, base: Eigenstructure, presc: Prescription
    ) -> tuple[FeasibilityReport, str]:
        """
        Run the predicate deciding the prescription's variant.

        Returns:
            The report and the name of the predicate that produced it.

        Raises:
            CallbackError: If a registered predicate raises or returns
                something other than a feasibility report.
        """
        name, predicate = self.resolve(presc.variant)
        if presc.variant not in self._shadows:
            return predicate(base, presc), name

        try:
            report = _report_adapter.validate_python(predicate(base, presc))
        except ValidationError as e:
            e.subtitle = f"{name} result"
            e.hint = "💡 Hint: Make sure your predicate returns a FeasibilityReport."
            raise CallbackError(f"{pretty_errors(e)}.\n") from None
        except Exception as e:
            raise CallbackError(
                f"Predicate '{name}' for variant '{presc.variant.value}' raised an "
                f"exception.\nDetails: {e}"
            ) from None
        return report, name


predicate_registry = PredicateRegistry()


def check(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """
    Decide feasibility of any prescription variant.

    Raises:
        InvalidPrescriptionError: If the prescription does not fit the base.
        CallbackError: If a registered predicate fails.
    """
    return predicate_registry.evaluate(base, presc)[0]
