"""Constructors for every protocol, each returning a :class:`SchemeResult`."""

from __future__ import annotations

from ..field import FieldTooSmall, PrimeField, make_field
from .common import SchemeParameterError, SchemeResult, SecureCode, secure_code
from .fig2 import fig2_scheme
from .keysets import (
    bidirected_edge_scheme,
    bidirected_node_scheme,
    cai_yeung_code,
    ksc,
    undirected_scheme,
)
from .routing import (
    PadProfile,
    RoutingMatrix,
    hadamard_scheme_h2,
    plus_one_scheme,
    round_ranks,
    routing_scheme_h3,
)

# name -> (constructor, parameter names in call order)
REGISTRY = {
    "cai-yeung": (cai_yeung_code, ("m", "h", "k")),
    "ksc": (ksc, ("m", "h")),
    "routing-h3": (routing_scheme_h3, ("m",)),
    "hadamard-h2": (hadamard_scheme_h2, ("m",)),
    "plus-one": (plus_one_scheme, ("h",)),
    "undirected": (undirected_scheme, ("m", "h")),
    "bidirected-node": (bidirected_node_scheme, ("m", "h")),
    "bidirected-edge": (bidirected_edge_scheme, ("m", "h")),
    "fig2": (fig2_scheme, ("variant", "h", "q", "k")),
}

SMALL_FIELDS = (3, 5, 7, 11, 13)


def build(name: str, params: dict, F: PrimeField | None = None) -> SchemeResult:
    """Construct a scheme by registry name from a parameter dict."""
    try:
        ctor, names = REGISTRY[name]
    except KeyError:
        raise SchemeParameterError(f"unknown scheme {name!r}; choose from {', '.join(REGISTRY)}") from None
    extra = set(params) - set(names) - {"pads"}
    if extra:
        raise SchemeParameterError(f"{name} does not take {', '.join(sorted(extra))}")
    args = []
    for n in names:
        if n in params and params[n] is not None:
            args.append(params[n])
        elif name == "fig2" and n in ("q", "k"):
            args.append(0 if n == "q" else 1)
        else:
            raise SchemeParameterError(f"{name} needs --{n}")
    kwargs = {"pads": params["pads"]} if "pads" in params else {}
    return ctor(*args, F=F or make_field(), **kwargs)


def build_small(name: str, params: dict, fields=SMALL_FIELDS) -> SchemeResult:
    """Build over the smallest prime in ``fields`` the construction accepts (for enumeration)."""
    last = None
    for p in fields:
        try:
            return build(name, params, make_field(p))
        except (FieldTooSmall, SchemeParameterError) as exc:
            last = exc
    raise FieldTooSmall(f"{name} {params}: no field in {fields} works ({last})")


__all__ = [
    "REGISTRY",
    "PadProfile",
    "RoutingMatrix",
    "SchemeParameterError",
    "SchemeResult",
    "SecureCode",
    "bidirected_edge_scheme",
    "bidirected_node_scheme",
    "build",
    "build_small",
    "cai_yeung_code",
    "fig2_scheme",
    "hadamard_scheme_h2",
    "ksc",
    "plus_one_scheme",
    "round_ranks",
    "routing_scheme_h3",
    "secure_code",
    "undirected_scheme",
]
