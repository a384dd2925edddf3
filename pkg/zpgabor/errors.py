from typing import Any, Dict, Optional


class ZpGaborError(Exception):
    """Base exception for zpgabor errors"""
    code = "error"

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}


class DomainError(ZpGaborError, ValueError):
    """Input outside the domain an operation is defined on"""
    code = "domain"


class FieldMismatchError(ZpGaborError, ValueError):
    """Operands live over different primes, groups or backends"""
    code = "mismatch"


class PreconditionError(ZpGaborError):
    """A checker was called on input that violates its precondition"""
    code = "precondition"


class CapExceededError(ZpGaborError):
    """Enumeration size above the configured cap"""
    code = "cap_exceeded"


class SearchFailureError(ZpGaborError):
    """A search that is guaranteed to succeed came back empty"""
    code = "search_failure"
