"""BQL frontend: tokenizer, recursive-descent parser and canonical renderer."""

from .ast import (
    AggCall,
    ArrayAggregate,
    ArrayApply,
    ArrayCrossJoin,
    ArrayFilter,
    ArrayNode,
    ArrayProject,
    ArrayRedimension,
    ArraySchema,
    ArrayScan,
    ArraySort,
    BinaryOp,
    CastLeaf,
    CatalogQuery,
    ColumnRef,
    Dimension,
    FromItem,
    FuncCall,
    IslandQuery,
    IsNull,
    Literal,
    Projection,
    RelationalSelect,
    TextQuery,
    TextRange,
    UnaryOp,
)
from .parser import (
    parse,
    parse_array_body,
    parse_array_schema,
    parse_relational_body,
    parse_text_body,
)
from .render import render, render_array_schema, render_expr
from .tokens import Token, tokenize

__all__ = [
    "AggCall",
    "ArrayAggregate",
    "ArrayApply",
    "ArrayCrossJoin",
    "ArrayFilter",
    "ArrayNode",
    "ArrayProject",
    "ArrayRedimension",
    "ArraySchema",
    "ArrayScan",
    "ArraySort",
    "BinaryOp",
    "CastLeaf",
    "CatalogQuery",
    "ColumnRef",
    "Dimension",
    "FromItem",
    "FuncCall",
    "IslandQuery",
    "IsNull",
    "Literal",
    "Projection",
    "RelationalSelect",
    "TextQuery",
    "TextRange",
    "Token",
    "UnaryOp",
    "parse",
    "parse_array_body",
    "parse_array_schema",
    "parse_relational_body",
    "parse_text_body",
    "render",
    "render_array_schema",
    "render_expr",
    "tokenize",
]
