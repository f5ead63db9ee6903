"""Exception hierarchy shared across the package."""

from dataclasses import dataclass
from typing import Optional


class TokenlabError(Exception):
    """Base class for all package-specific errors."""


class DegenerateDistribution(TokenlabError):
    """Raised when a holder distribution is empty or carries zero total weight."""


class SupplyError(TokenlabError):
    """Base class for supply accounting errors."""


class SupplyUnderflow(SupplyError):
    """An operation would drive circulating, staked, or locked supply negative."""


class CapViolation(SupplyError):
    """A supply operation cannot be represented under the configured cap."""


class ConstraintViolation(SupplyError):
    """A flow violates the active supply policy constraints."""


class InsufficientTreasury(SupplyError):
    """A buyback costs more than the available treasury."""


class VotingError(TokenlabError):
    """Base class for voting mechanism errors."""


class InvalidDecay(VotingError):
    """Conviction decay factor outside the open interval (0, 1)."""


class BudgetExceeded(VotingError):
    """A quadratic voter spent more credits than their budget."""


class DuplicateVote(VotingError):
    """The same voter appears more than once in a single tally."""


class UnknownCluster(VotingError):
    """An identity-cluster operation referenced a cluster with no members."""


class UnknownProperty(VotingError):
    """A requirement referenced a voting property that does not exist."""


class SpecError(TokenlabError):
    """Base class for economy-spec document errors."""


@dataclass(frozen=True)
class ParseIssue:
    """One problem found while parsing a document, located by path."""

    path: str
    message: str
    suggestion: Optional[str] = None

    def __str__(self):
        hint = f" (did you mean {self.suggestion!r}?)" if self.suggestion else ""
        return f"{self.path}: {self.message}{hint}"

    def to_dict(self) -> dict:
        out = {"path": self.path, "message": self.message}
        if self.suggestion:
            out["suggestion"] = self.suggestion
        return out


class SchemaError(SpecError):
    """Document does not conform to the economy-spec schema.

    Carries the full list of issues so a caller can report every problem
    at once.
    """

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class UnknownEnumValue(SchemaError):
    """A field held a value outside its enumeration; may carry a suggestion."""

    def __init__(self, path, value, allowed, suggestion=None):
        self.path = path
        self.value = value
        self.allowed = tuple(allowed)
        self.suggestion = suggestion
        issue = ParseIssue(
            path=path,
            message=f"unknown value {value!r}; allowed: {', '.join(self.allowed)}",
            suggestion=suggestion,
        )
        super().__init__([issue])


class ScenarioError(TokenlabError):
    """A scenario definition is inconsistent or a run failed."""

    def __init__(self, message, epoch=None):
        self.epoch = epoch
        if epoch is not None:
            message = f"epoch {epoch}: {message}"
        super().__init__(message)


class UnknownPreset(ScenarioError):
    """Requested scenario preset does not exist."""

    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(f"unknown preset {name!r}; available: {', '.join(available)}")
