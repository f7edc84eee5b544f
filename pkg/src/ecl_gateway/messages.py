"""Typed model of the two XML message kinds and their canonical serializers.

A request carries metadata (addresses, ids, stamp, version) around a
function-call payload; a response carries the same metadata around a
returned value.  Documents are plain unprefixed XML with a fixed child
order:

    request:  sourceIP, destinationIP, sourceID, destinationID,
              functionInvoked, functionParams, stamp, version
    response: sourceIP, destinationIP, sourceID, destinationID,
              returnValue, returnType, stamp, version

Canonical serialization emits UTF-8 text with no XML declaration, no
attributes, no inter-element whitespace and escaped text content, so
that parse(serialize(m)) == m and serialize(parse(x)) is canonical.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .errors import InvariantViolation

PROTOCOL_VERSION = "1.0"

REQUEST_SEQUENCE = (
    "sourceIP", "destinationIP", "sourceID", "destinationID",
    "functionInvoked", "functionParams", "stamp", "version",
)
RESPONSE_SEQUENCE = (
    "sourceIP", "destinationIP", "sourceID", "destinationID",
    "returnValue", "returnType", "stamp", "version",
)

_IP_RE = re.compile(r"^(\d{1,3})\.(\d{1,3})\.(\d{1,3})\.(\d{1,3})$")
# day/month/year, 12-hour clock, AM/PM glued to the seconds
STAMP_RE = re.compile(r"^\d{1,2}/\d{1,2}/\d{4} \d{2}:\d{2}:\d{2}(AM|PM)$")
_INT_RE = re.compile(r"^[+-]?\d+$")
_DOUBLE_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


class ParamType(enum.Enum):
    """The six parameter type names the request grammar admits."""

    INT = "int"
    DOUBLE = "double"
    STRING = "string"
    INT_ARRAY = "int[]"
    DOUBLE_ARRAY = "double[]"
    STRING_ARRAY = "string[]"

    @classmethod
    def from_name(cls, text: str) -> "ParamType":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown parameter type {text!r}")

    @property
    def is_array(self) -> bool:
        return self.value.endswith("[]")

    @property
    def item_type(self) -> "ParamType":
        if not self.is_array:
            return self
        return ParamType.from_name(self.value[:-2])


class ReturnType(enum.Enum):
    """The three return type names the response grammar admits."""

    INT = "int"
    DOUBLE = "double"
    STRING = "string"

    @classmethod
    def from_name(cls, text: str) -> "ReturnType":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown return type {text!r}")


def is_dotted_quad(text: str) -> bool:
    m = _IP_RE.match(text)
    return bool(m) and all(int(octet) <= 255 for octet in m.groups())


def is_stamp(text: str) -> bool:
    return bool(STAMP_RE.match(text))


def format_stamp(when: datetime) -> str:
    """Render a timestamp the way generated messages carry them."""
    hour = when.hour % 12 or 12
    half = "PM" if when.hour >= 12 else "AM"
    return (f"{when.day}/{when.month}/{when.year} "
            f"{hour:02d}:{when.minute:02d}:{when.second:02d}{half}")


def _is_int_text(text: str) -> bool:
    return bool(_INT_RE.match(text)) and INT64_MIN <= int(text) <= INT64_MAX


def _is_double_text(text: str) -> bool:
    if not _DOUBLE_RE.match(text):
        return False
    return math.isfinite(float(text))


def split_array_items(text: str) -> list[str]:
    """Split a comma-separated array value into its items.

    Backslash escapes the next character, so items may contain literal
    commas (``\\,``) and backslashes (``\\\\``).  Empty text means the
    empty array; a lone trailing backslash stands for itself.
    """
    if text == "":
        return []
    items: list[str] = []
    current: list[str] = []
    it = iter(text)
    for ch in it:
        if ch == "\\":
            current.append(next(it, "\\"))
        elif ch == ",":
            items.append("".join(current))
            current = []
        else:
            current.append(ch)
    items.append("".join(current))
    return items


def join_array_items(items: Iterable[str]) -> str:
    """Inverse of :func:`split_array_items` for non-empty items lists."""
    return ",".join(
        item.replace("\\", "\\\\").replace(",", "\\,") for item in items
    )


def value_matches_type(value: str, ptype: ParamType) -> bool:
    """True when a value's text is parseable as the declared type."""
    if ptype is ParamType.STRING:
        return True
    if ptype is ParamType.INT:
        return _is_int_text(value)
    if ptype is ParamType.DOUBLE:
        return _is_double_text(value)
    items = split_array_items(value)
    if ptype is ParamType.STRING_ARRAY:
        return True
    check = _is_int_text if ptype is ParamType.INT_ARRAY else _is_double_text
    return all(check(item) for item in items)


@dataclass(frozen=True)
class Param:
    """One (name, value, type) triple of a request's parameter list."""

    name: str
    value: str
    ptype: ParamType


def _freeze_params(params: Sequence[Param]) -> tuple[Param, ...]:
    return tuple(params)


@dataclass(frozen=True)
class EclRequest:
    source_ip: str
    destination_ip: str
    source_id: int
    destination_id: int
    function_invoked: str
    params: tuple[Param, ...]
    stamp: str
    version: str = PROTOCOL_VERSION

    def __post_init__(self):
        object.__setattr__(self, "params", _freeze_params(self.params))


@dataclass(frozen=True)
class EclResponse:
    source_ip: str
    destination_ip: str
    source_id: int
    destination_id: int
    return_value: str
    return_type: ReturnType
    stamp: str
    version: str = PROTOCOL_VERSION


def _check_common(msg, strict: bool) -> None:
    for label, ip in (("sourceIP", msg.source_ip),
                      ("destinationIP", msg.destination_ip)):
        if not isinstance(ip, str) or (strict and not is_dotted_quad(ip)):
            raise InvariantViolation(f"{label} is not a dotted-quad IPv4 address: {ip!r}")
    for label, value in (("sourceID", msg.source_id),
                         ("destinationID", msg.destination_id)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise InvariantViolation(f"{label} must be a non-negative integer: {value!r}")
    if strict and msg.version != PROTOCOL_VERSION:
        raise InvariantViolation(f"version must be {PROTOCOL_VERSION!r}: {msg.version!r}")
    if strict and not is_stamp(msg.stamp):
        raise InvariantViolation(f"stamp does not match D/M/YYYY hh:mm:ss(AM|PM): {msg.stamp!r}")


def _element(tag: str, text: str) -> str:
    return f"<{tag}>{escape(text)}</{tag}>"


def serialize_request_payload(req: EclRequest) -> tuple[str, str]:
    """The two payload elements of a request, individually serialized.

    Returned as (functionInvoked element, functionParams element); used
    both by the canonical serializer and by payload encryption, which
    encrypts each element separately.
    """
    parts = ["<functionParams>"]
    for param in req.params:
        parts.append(_element("name", param.name))
        parts.append(_element("value", param.value))
        parts.append(_element("type", param.ptype.value))
    parts.append("</functionParams>")
    return _element("functionInvoked", req.function_invoked), "".join(parts)


def serialize_response_payload(resp: EclResponse) -> tuple[str, str]:
    """The two payload elements of a response, individually serialized."""
    return (_element("returnValue", resp.return_value),
            _element("returnType", resp.return_type.value))


def serialize_metadata(msg) -> tuple[str, str]:
    """Leading and trailing metadata elements, shared by both kinds."""
    head = (_element("sourceIP", msg.source_ip)
            + _element("destinationIP", msg.destination_ip)
            + _element("sourceID", str(msg.source_id))
            + _element("destinationID", str(msg.destination_id)))
    tail = _element("stamp", msg.stamp) + _element("version", msg.version)
    return head, tail


def serialize_request(req: EclRequest, *, strict: bool = True) -> str:
    """Canonical document text for a request.

    Raises InvariantViolation when field values break the typed model;
    strict additionally enforces IP syntax, version "1.0", the stamp
    pattern and value/type coherence of every parameter.
    """
    _check_common(req, strict)
    if not isinstance(req.function_invoked, str) or not req.function_invoked:
        raise InvariantViolation("functionInvoked must be non-empty text")
    for param in req.params:
        if not isinstance(param, Param) or not isinstance(param.ptype, ParamType):
            raise InvariantViolation(f"parameter is not a typed triple: {param!r}")
        if not param.name:
            raise InvariantViolation("parameter name must be non-empty text")
        if strict and not value_matches_type(param.value, param.ptype):
            raise InvariantViolation(
                f"value {param.value!r} is not parseable as {param.ptype.value}")
    invoked, params = serialize_request_payload(req)
    head, tail = serialize_metadata(req)
    return f"<protocol>{head}{invoked}{params}{tail}</protocol>"


def serialize_response(resp: EclResponse, *, strict: bool = True) -> str:
    """Canonical document text for a response."""
    _check_common(resp, strict)
    if not isinstance(resp.return_type, ReturnType):
        raise InvariantViolation(f"returnType is not one of int|double|string: {resp.return_type!r}")
    if not isinstance(resp.return_value, str):
        raise InvariantViolation("returnValue must be text")
    value, rtype = serialize_response_payload(resp)
    head, tail = serialize_metadata(resp)
    return f"<protocol>{head}{value}{rtype}{tail}</protocol>"
