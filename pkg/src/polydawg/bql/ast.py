"""AST node types for BQL queries.

A parsed query is either a CatalogQuery or an IslandQuery whose body is one
of RelationalSelect, an ArrayNode tree, or a TextQuery.  CastLeaf nodes may
appear only where the grammar admits them: relational FROM items, array
dataset positions, and the text 'table' value.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

AGGREGATE_FUNCTIONS = ("count", "sum", "avg", "min", "max")

ISLANDS = ("relational", "array", "text")


# --- scalar expressions (shared by relational and array bodies) -------------

@dataclass
class Literal:
    value: object  # int, float, str or bool


@dataclass
class ColumnRef:
    name: str
    qualifier: Optional[str] = None

    @property
    def full_name(self) -> str:
        return f"{self.qualifier}.{self.name}" if self.qualifier else self.name


@dataclass
class BinaryOp:
    op: str  # + - * / = != < <= > >= and or
    left: "Expr"
    right: "Expr"


@dataclass
class UnaryOp:
    op: str  # - or not
    operand: "Expr"


@dataclass
class FuncCall:
    """Aggregate call; star is the count(*) form."""

    name: str
    arg: Optional["Expr"] = None
    star: bool = False


@dataclass
class IsNull:
    operand: "Expr"
    negated: bool = False


Expr = Union[Literal, ColumnRef, BinaryOp, UnaryOp, FuncCall, IsNull]


def contains_aggregate(expr: Expr) -> bool:
    if isinstance(expr, FuncCall):
        return True
    if isinstance(expr, BinaryOp):
        return contains_aggregate(expr.left) or contains_aggregate(expr.right)
    if isinstance(expr, (UnaryOp, IsNull)):
        return contains_aggregate(expr.operand)
    return False


# --- array schema sublanguage -------------------------------------------------

@dataclass
class Dimension:
    name: str
    low: int
    high: Optional[int]  # None means unbounded ('*')
    chunk: int
    overlap: int


@dataclass
class ArraySchema:
    attributes: list  # of (name, type_name)
    dimensions: list  # of Dimension

    @property
    def attribute_names(self) -> list:
        return [name for name, _ in self.attributes]

    @property
    def dimension_names(self) -> list:
        return [d.name for d in self.dimensions]


# --- cast ---------------------------------------------------------------------

@dataclass
class CastLeaf:
    """Inter-island migration embedded in a retrieval query.

    dest_schema is island-specific: an ArraySchema, a list of
    (column, type) pairs, or the key-column name for the text island.
    """

    inner: "Ast"
    intermediate_name: str
    dest_schema: object
    dest_island: str


# --- relational island ---------------------------------------------------------

@dataclass
class Projection:
    expr: Expr
    alias: Optional[str] = None


@dataclass
class FromItem:
    source: Union[str, CastLeaf]
    alias: Optional[str] = None


@dataclass
class RelationalSelect:
    distinct: bool = False
    star: bool = False
    projections: list = field(default_factory=list)  # of Projection
    from_items: list = field(default_factory=list)  # of FromItem
    where: Optional[Expr] = None
    group_by: list = field(default_factory=list)  # of column names
    order_by: list = field(default_factory=list)  # of (Expr, ascending: bool)
    limit: Optional[int] = None


# --- array island ---------------------------------------------------------------

@dataclass
class ArrayScan:
    source: Union[str, CastLeaf]


@dataclass
class ArrayProject:
    child: "ArrayNode"
    attributes: list  # of attribute names


@dataclass
class ArrayFilter:
    child: "ArrayNode"
    predicate: Expr


@dataclass
class AggCall:
    name: str
    attribute: Optional[str] = None  # None for count(*)

    @property
    def result_name(self) -> str:
        return f"{self.attribute}_{self.name}" if self.attribute else "count"


@dataclass
class ArrayAggregate:
    child: "ArrayNode"
    calls: list  # of AggCall
    group_dims: list = field(default_factory=list)


@dataclass
class ArrayApply:
    child: "ArrayNode"
    definitions: list  # of (new_attribute, Expr)


@dataclass
class ArrayCrossJoin:
    left: "ArrayNode"
    right: "ArrayNode"
    left_alias: Optional[str] = None
    right_alias: Optional[str] = None
    dim_pairs: list = field(default_factory=list)  # of (left_dim, right_dim)


@dataclass
class ArrayRedimension:
    child: "ArrayNode"
    target: Union[str, ArraySchema]  # array name or inline schema


@dataclass
class ArraySort:
    child: "ArrayNode"
    attributes: list = field(default_factory=list)  # empty = all, schema order


ArrayNode = Union[
    ArrayScan,
    ArrayProject,
    ArrayFilter,
    ArrayAggregate,
    ArrayApply,
    ArrayCrossJoin,
    ArrayRedimension,
    ArraySort,
]

ARRAY_OPERATORS = (
    "scan",
    "project",
    "filter",
    "aggregate",
    "apply",
    "cross_join",
    "redimension",
    "sort",
)


# --- text island -----------------------------------------------------------------

@dataclass
class TextRange:
    start: tuple  # (row, colfam, colqual); '' means unbounded at that position
    end: tuple


@dataclass
class TextQuery:
    op: str  # 'scan'; a present range makes it a range retrieval
    table: Union[str, CastLeaf]
    range: Optional[TextRange] = None


# --- top level ---------------------------------------------------------------------

@dataclass
class CatalogQuery:
    table: str
    columns: list = field(default_factory=list)  # empty = all columns
    filter: Optional[tuple] = None  # (column, literal value)


IslandBody = Union[RelationalSelect, ArrayScan, ArrayProject, ArrayFilter,
                   ArrayAggregate, ArrayApply, ArrayCrossJoin,
                   ArrayRedimension, ArraySort, TextQuery]


@dataclass
class IslandQuery:
    island: str  # relational | array | text
    body: IslandBody


Ast = Union[CatalogQuery, IslandQuery]


def body_casts(body: IslandBody) -> list:
    """All CastLeaf nodes in grammar-sanctioned positions of one island body."""
    casts = []
    if isinstance(body, RelationalSelect):
        for item in body.from_items:
            if isinstance(item.source, CastLeaf):
                casts.append(item.source)
    elif isinstance(body, TextQuery):
        if isinstance(body.table, CastLeaf):
            casts.append(body.table)
    else:
        stack = [body]
        while stack:
            node = stack.pop()
            if isinstance(node, ArrayScan):
                if isinstance(node.source, CastLeaf):
                    casts.append(node.source)
            elif isinstance(node, ArrayCrossJoin):
                stack.append(node.right)
                stack.append(node.left)
            else:
                stack.append(node.child)
    return casts


def body_object_names(body: IslandBody) -> list:
    """Names of stored objects referenced by one island body, in query order.

    Cast leaves are not descended into; their intermediates are separate
    plan inputs.
    """
    names = []
    if isinstance(body, RelationalSelect):
        for item in body.from_items:
            if isinstance(item.source, str):
                names.append(item.source)
    elif isinstance(body, TextQuery):
        if isinstance(body.table, str):
            names.append(body.table)
    else:
        def walk(node):
            if isinstance(node, ArrayScan):
                if isinstance(node.source, str):
                    names.append(node.source)
            elif isinstance(node, ArrayCrossJoin):
                walk(node.left)
                walk(node.right)
            else:
                walk(node.child)
                if isinstance(node, ArrayRedimension) and isinstance(node.target, str):
                    names.append(node.target)

        walk(body)
    return names
