"""Exception hierarchy shared by every polydawg module.

Errors that cross the HTTP boundary are split into two families:
syntax errors (client fault, mapped to 400) and everything else
(mapped to 500 by the service layer).
"""


class PolydawgError(Exception):
    """Base class for all errors raised by this package."""


# --- query text / parsing ---------------------------------------------------

class BqlError(PolydawgError):
    """Base for errors raised while lexing or parsing BQL text."""


class BqlSyntaxError(BqlError):
    def __init__(self, message: str, offset: int, expected: str | None = None):
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


class UnterminatedString(BqlSyntaxError):
    pass


class IllegalCharacter(BqlSyntaxError):
    pass


class UnknownFunctionToken(BqlSyntaxError):
    pass


class MisplacedCast(BqlSyntaxError):
    pass


class MisplacedCatalog(BqlSyntaxError):
    pass


class UnsupportedSqlFeature(BqlSyntaxError):
    pass


class UnknownArrayOperator(BqlSyntaxError):
    pass


class ArityError(BqlSyntaxError):
    pass


class MissingKey(BqlSyntaxError):
    pass


class UnknownTextOperator(BqlSyntaxError):
    pass


class SchemaSyntaxError(BqlSyntaxError):
    pass


class BadBounds(SchemaSyntaxError):
    pass


# --- catalog ----------------------------------------------------------------

class CatalogError(PolydawgError):
    pass


class DuplicateName(CatalogError):
    """A name or key that must be unique was registered twice."""


class InvalidPort(CatalogError):
    pass


class UnknownEngine(CatalogError):
    pass


class UnknownDatabase(CatalogError):
    pass


class UnknownObject(CatalogError):
    pass


class UnknownCatalogTable(CatalogError):
    pass


class NoShim(CatalogError):
    """The engine holding an object is not attached to any island."""


class IoFailure(CatalogError):
    pass


class CorruptCatalog(CatalogError):
    pass


# --- storage engines --------------------------------------------------------

class EngineError(PolydawgError):
    pass


class UnknownTable(EngineError):
    pass


class UnknownColumn(EngineError):
    pass


class UnknownArray(EngineError):
    pass


class UnknownAttribute(EngineError):
    pass


class QueryTypeError(EngineError):
    """Operand types incompatible with an operator or column type."""


class DivisionByZero(EngineError):
    pass


class OutOfBounds(EngineError):
    """Array cell coordinate outside the dimension bounds."""


class RedimensionCollision(EngineError):
    """Two cells mapped to the same target coordinate."""


class DuplicateObject(EngineError):
    """Engine already stores an object with this name."""


# --- island layer -----------------------------------------------------------

class IslandError(PolydawgError):
    pass


class NoCandidateEngine(IslandError):
    pass


class ShimUnsupported(IslandError):
    """Query body's island is not served by the target engine."""


class EngineFailure(IslandError):
    """Wraps an engine-level error with the engine id."""

    def __init__(self, engine_id: int, cause: Exception):
        super().__init__(f"engine {engine_id}: {cause}")
        self.engine_id = engine_id
        self.cause = cause


# --- migrator ---------------------------------------------------------------

class MigrationException(PolydawgError):
    """Raised on any migration failure; carries the failing phase."""

    def __init__(self, phase: str, cause):
        super().__init__(f"migration failed in {phase}: {cause}")
        self.phase = phase  # extract | transform | load
        self.cause = cause


class NoCastRegistered(PolydawgError):
    pass


class SchemaMismatch(PolydawgError):
    pass


class CoordinateCollision(SchemaMismatch):
    pass


class NullInDimension(SchemaMismatch):
    pass


class NullInAttribute(SchemaMismatch):
    """Arrays have no null representation; nulls cannot cross into one."""


# --- monitor ----------------------------------------------------------------

class MonitorError(PolydawgError):
    pass


class DuplicateBenchmark(MonitorError):
    pass


class UnknownSignature(MonitorError):
    pass


# --- planner / executor -----------------------------------------------------

class PlanningError(PolydawgError):
    pass


class InvalidPlan(PolydawgError):
    """Plan failed validation (cycle, missing binding)."""


class LocalQueryExecutionException(PolydawgError):
    """Engine failure during plan execution, tagged with the node id."""

    def __init__(self, node_id: str, cause: Exception):
        super().__init__(f"node {node_id}: {cause}")
        self.node_id = node_id
        self.cause = cause


# --- endpoint ---------------------------------------------------------------

class AlreadyLoaded(PolydawgError):
    pass


class BindFailure(PolydawgError):
    pass
