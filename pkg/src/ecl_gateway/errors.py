"""Error types shared across the gateway.

Two layers: the fine-grained exceptions raised by the codec, crypto,
registry and adapter modules, and the transport-facing ``GatewayError``
that the pipeline maps every failure onto.  Clients only ever see a
``GatewayError`` code (as an HTTP status plus ``X-ECL-Error`` header, or
as an ``ERR`` frame on the framed-TCP listener).
"""

from __future__ import annotations

import enum


class EclError(Exception):
    """Base class for every error raised by this package."""


# --- codec ---------------------------------------------------------------

class XmlMalformed(EclError):
    """Input is not well-formed XML."""


class GrammarViolation(EclError):
    """Document is well-formed XML but breaks the message grammar."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report  # ValidationReport when produced by a validator


class UnsupportedVersion(EclError):
    """Message carries a protocol version other than "1.0"."""


class InvariantViolation(EclError):
    """A typed message value breaks its own field invariants."""


# --- crypto --------------------------------------------------------------

class CryptoError(EclError):
    """Base class for payload encryption failures."""


class BadKeyLength(CryptoError):
    """Key material is not exactly 24 bytes (48 hex characters)."""


class BadBase64(CryptoError):
    """CipherValue text does not decode as base64."""


class CiphertextTooShort(CryptoError):
    """Decoded CipherValue is shorter than IV plus one block, or not
    a whole number of cipher blocks."""


class BadPadding(CryptoError):
    """Block padding is invalid after decryption: wrong key or corrupt
    ciphertext."""


# --- registry ------------------------------------------------------------

class RegistryError(EclError):
    """Base class for registry file problems."""


class RegistryParseError(RegistryError):
    """Registry file is malformed or breaks a record invariant."""


class DuplicateServiceId(RegistryError):
    """Two registry records share a service id."""


class EmptyBackends(RegistryError):
    """A registry record lists no backend endpoints."""


class UnknownService(EclError):
    """No registry record matches the requested destination id."""


class UnknownFunction(EclError):
    """The service record does not expose the invoked function."""


# --- adapters ------------------------------------------------------------

class AdapterError(EclError):
    """Base class for backend exchange failures."""


class BackendUnreachable(AdapterError):
    """Could not connect to the chosen backend."""


class AdapterTimeout(AdapterError):
    """The backend did not answer within the configured timeout."""


class BackendFailure(AdapterError):
    """The backend answered, but not with a usable response."""


class SoapFault(BackendFailure):
    """The SOAP body carried a Fault element."""


class MalformedSoap(BackendFailure):
    """The SOAP reply could not be interpreted as a response envelope."""


# --- gateway -------------------------------------------------------------

class QueueTimeout(EclError):
    """Waited too long for a free agent slot."""


class ErrorCode(enum.Enum):
    """Client-visible failure classification.

    Values are the exact code strings written to the ``X-ECL-Error``
    header and to framed-TCP ``ERR`` frames.
    """

    INVALID_XML = "InvalidXml"
    GRAMMAR_VIOLATION = "GrammarViolation"
    UNSUPPORTED_VERSION = "UnsupportedVersion"
    DECRYPT_FAILURE = "DecryptFailure"
    UNKNOWN_SERVICE = "UnknownService"
    UNKNOWN_FUNCTION = "UnknownFunction"
    SIGNATURE_MISMATCH = "SignatureMismatch"
    BACKEND_UNREACHABLE = "BackendUnreachable"
    TIMEOUT = "Timeout"
    BACKEND_FAILURE = "BackendFailure"
    OVERSIZE = "Oversize"

    @classmethod
    def from_wire(cls, text: str) -> "ErrorCode":
        for code in cls:
            if code.value == text:
                return code
        raise ValueError(f"unknown error code {text!r}")


#: HTTP status the gateway answers with for each failure class.
HTTP_STATUS = {
    ErrorCode.INVALID_XML: 400,
    ErrorCode.GRAMMAR_VIOLATION: 400,
    ErrorCode.UNSUPPORTED_VERSION: 400,
    ErrorCode.SIGNATURE_MISMATCH: 400,
    ErrorCode.OVERSIZE: 400,
    ErrorCode.DECRYPT_FAILURE: 403,
    ErrorCode.UNKNOWN_SERVICE: 404,
    ErrorCode.UNKNOWN_FUNCTION: 404,
    ErrorCode.TIMEOUT: 504,
    ErrorCode.BACKEND_UNREACHABLE: 502,
    ErrorCode.BACKEND_FAILURE: 502,
}


class GatewayError(EclError):
    """A pipeline failure, classified for transport mapping."""

    def __init__(self, code: ErrorCode, detail: str):
        super().__init__(f"{code.value}: {detail}")
        self.code = code
        self.detail = detail

    @property
    def http_status(self) -> int:
        return HTTP_STATUS[self.code]
