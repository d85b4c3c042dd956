"""Recursive-descent parser for BQL.

One token stream covers all five function tokens; the island sublanguages
(SQL subset, array operators, JSON-style text syntax) are parsed by
dedicated methods that recurse through nested bdcast leaves.
"""

from ..errors import (
    ArityError,
    BadBounds,
    BqlSyntaxError,
    DuplicateName,
    MisplacedCast,
    MisplacedCatalog,
    MissingKey,
    SchemaSyntaxError,
    UnknownArrayOperator,
    UnknownFunctionToken,
    UnknownTextOperator,
    UnsupportedSqlFeature,
)
from . import tokens as tk
from .ast import (
    AGGREGATE_FUNCTIONS,
    ARRAY_OPERATORS,
    ISLANDS,
    AggCall,
    ArrayAggregate,
    ArrayApply,
    ArrayCrossJoin,
    ArrayFilter,
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
    contains_aggregate,
)

RELATIONAL_KEYWORDS = {
    "select", "distinct", "from", "where", "group", "by", "order",
    "asc", "desc", "limit", "as", "and", "or", "not", "is", "null",
    "true", "false", "having",
}

FUNCTION_TOKENS = {"bdrel", "bdarray", "bdtext", "bdcast", "bdcatalog"}

ARRAY_SCHEMA_TYPES = {"int32", "int64", "float", "double", "string", "bool"}

_COMPARISONS = {"=", "!=", "<>", "<", "<=", ">", ">="}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tk.tokenize(text)
        self.pos = 0

    # -- cursor helpers --

    def peek(self, ahead: int = 0) -> tk.Token:
        i = min(self.pos + ahead, len(self.toks) - 1)
        return self.toks[i]

    def next(self) -> tk.Token:
        tok = self.toks[self.pos]
        if tok.kind != tk.EOF:
            self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> tk.Token:
        tok = self.peek()
        if tok.kind != kind:
            raise BqlSyntaxError(f"unexpected {tok.text or 'end of input'!r}",
                                 tok.offset, expected)
        return self.next()

    def at_keyword(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == tk.IDENT and tok.text.lower() in words

    def match_keyword(self, *words: str) -> bool:
        if self.at_keyword(*words):
            self.next()
            return True
        return False

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == tk.OP and tok.text in ops

    def match_op(self, *ops: str):
        if self.at_op(*ops):
            return self.next().text
        return None

    def expect_eof(self):
        tok = self.peek()
        if tok.kind != tk.EOF:
            raise BqlSyntaxError(f"trailing input {tok.text!r}", tok.offset,
                                 "end of query")

    # -- names --

    def qualified_name(self, what: str, reserved=RELATIONAL_KEYWORDS) -> str:
        tok = self.peek()
        if tok.kind != tk.IDENT or tok.text.lower() in reserved:
            raise BqlSyntaxError(f"unexpected {tok.text or 'end of input'!r}",
                                 tok.offset, what)
        parts = [self.next().text]
        while self.peek().kind == tk.DOT:
            self.next()
            parts.append(self.expect(tk.IDENT, "identifier after '.'").text)
        return ".".join(parts)

    # -- top level --

    def query(self):
        tok = self.peek()
        if tok.kind != tk.IDENT:
            raise BqlSyntaxError("query must start with a function token",
                                 tok.offset, "bdrel/bdarray/bdtext/bdcatalog")
        low = tok.text.lower()
        if low == "bdcatalog":
            self.next()
            self.expect(tk.LPAREN, "'('")
            ast = self.catalog_body()
            self.expect(tk.RPAREN, "')'")
            self.expect_eof()
            return ast
        if low == "bdcast":
            raise MisplacedCast("bdcast must be nested between island queries",
                                tok.offset)
        if low in ("bdrel", "bdarray", "bdtext"):
            ast = self.island_query()
            self.expect_eof()
            return ast
        raise UnknownFunctionToken(f"unknown function token {tok.text!r}",
                                   tok.offset)

    def island_query(self) -> IslandQuery:
        tok = self.peek()
        low = tok.text.lower() if tok.kind == tk.IDENT else ""
        if low == "bdcatalog":
            raise MisplacedCatalog("bdcatalog cannot be nested", tok.offset)
        if low == "bdcast":
            raise MisplacedCast("bdcast must wrap an island query", tok.offset)
        if low not in ("bdrel", "bdarray", "bdtext"):
            raise BqlSyntaxError(f"unexpected {tok.text or 'end of input'!r}",
                                 tok.offset, "bdrel/bdarray/bdtext")
        self.next()
        self.expect(tk.LPAREN, "'('")
        if low == "bdrel":
            body = self.relational_select()
            island = "relational"
        elif low == "bdarray":
            body = self.array_operator()
            island = "array"
        else:
            body = self.text_body()
            island = "text"
        self.expect(tk.RPAREN, "')'")
        return IslandQuery(island, body)

    # -- catalog --

    def catalog_body(self) -> CatalogQuery:
        if self.at_keyword("select"):
            return self.catalog_select()
        table = self.qualified_name("catalog table name", reserved=frozenset())
        columns = []
        while True:
            if self.peek().kind == tk.COMMA:
                self.next()
                columns.append(self.qualified_name("column name",
                                                   reserved=frozenset()))
            elif self.peek().kind == tk.IDENT:
                columns.append(self.qualified_name("column name",
                                                   reserved=frozenset()))
            else:
                break
        return CatalogQuery(table, columns)

    def catalog_select(self) -> CatalogQuery:
        self.next()  # select
        columns = []
        if not self.match_op("*"):
            columns.append(self.qualified_name("column name"))
            while self.peek().kind == tk.COMMA:
                self.next()
                columns.append(self.qualified_name("column name"))
        if not self.match_keyword("from"):
            raise BqlSyntaxError("catalog query needs FROM",
                                 self.peek().offset, "FROM")
        table = self.qualified_name("catalog table name")
        filt = None
        if self.match_keyword("where"):
            col = self.qualified_name("column name")
            if not self.match_op("="):
                raise BqlSyntaxError("catalog filter supports only '='",
                                     self.peek().offset, "'='")
            filt = (col, self.catalog_literal())
        return CatalogQuery(table, columns, filt)

    def catalog_literal(self):
        tok = self.peek()
        if tok.kind in (tk.INT, tk.FLOAT, tk.STRING):
            return self.next().value
        if self.at_keyword("true", "false"):
            return self.next().text.lower() == "true"
        if self.at_op("-") and self.peek(1).kind in (tk.INT, tk.FLOAT):
            self.next()
            return -self.next().value
        raise BqlSyntaxError("expected literal", tok.offset, "literal")

    # -- relational island --

    def relational_select(self) -> RelationalSelect:
        start = self.peek().offset
        if not self.match_keyword("select"):
            raise BqlSyntaxError("relational body must be a SELECT",
                                 self.peek().offset, "SELECT")
        sel = RelationalSelect()
        sel.distinct = self.match_keyword("distinct")
        if self.match_op("*"):
            sel.star = True
        else:
            sel.projections.append(self.projection())
            while self.peek().kind == tk.COMMA:
                self.next()
                sel.projections.append(self.projection())
        if not self.match_keyword("from"):
            raise BqlSyntaxError("expected FROM", self.peek().offset, "FROM")
        sel.from_items.append(self.from_item())
        while self.peek().kind == tk.COMMA:
            self.next()
            sel.from_items.append(self.from_item())
        if self.match_keyword("where"):
            sel.where = self.expression(allow_aggregates=False)
        if self.match_keyword("group"):
            if not self.match_keyword("by"):
                raise BqlSyntaxError("expected BY after GROUP",
                                     self.peek().offset, "BY")
            sel.group_by.append(self.qualified_name("column name"))
            while self.peek().kind == tk.COMMA:
                self.next()
                sel.group_by.append(self.qualified_name("column name"))
        if self.at_keyword("having"):
            raise UnsupportedSqlFeature("HAVING is not supported",
                                        self.peek().offset)
        if self.match_keyword("order"):
            if not self.match_keyword("by"):
                raise BqlSyntaxError("expected BY after ORDER",
                                     self.peek().offset, "BY")
            sel.order_by.append(self.order_item())
            while self.peek().kind == tk.COMMA:
                self.next()
                sel.order_by.append(self.order_item())
        if self.match_keyword("limit"):
            tok = self.expect(tk.INT, "non-negative integer")
            sel.limit = tok.value
        self.validate_select(sel, start)
        return sel

    def projection(self) -> Projection:
        expr = self.expression(allow_aggregates=True)
        alias = None
        if self.match_keyword("as"):
            alias = self.qualified_name("alias")
        elif (self.peek().kind == tk.IDENT
              and self.peek().text.lower() not in RELATIONAL_KEYWORDS):
            alias = self.next().text
        return Projection(expr, alias)

    def from_item(self) -> FromItem:
        tok = self.peek()
        if tok.kind == tk.LPAREN:
            if self.peek(1).kind == tk.IDENT and \
                    self.peek(1).text.lower() == "select":
                raise UnsupportedSqlFeature(
                    "nested SELECT is not supported; use bdcast", tok.offset)
            raise BqlSyntaxError("unexpected '('", tok.offset,
                                 "table name or bdcast")
        if tok.kind == tk.IDENT:
            low = tok.text.lower()
            if low == "bdcast":
                source = self.cast_leaf()
            elif low == "bdcatalog":
                raise MisplacedCatalog("bdcatalog cannot be nested", tok.offset)
            elif low in ("bdrel", "bdarray", "bdtext"):
                raise BqlSyntaxError(
                    "island queries nest only through bdcast", tok.offset)
            else:
                source = self.qualified_name("table name")
        else:
            raise BqlSyntaxError(f"unexpected {tok.text or 'end of input'!r}",
                                 tok.offset, "table name or bdcast")
        alias = None
        if self.match_keyword("as"):
            alias = self.qualified_name("alias")
        elif (self.peek().kind == tk.IDENT
              and self.peek().text.lower() not in RELATIONAL_KEYWORDS):
            alias = self.next().text
        return FromItem(source, alias)

    def order_item(self):
        expr = self.expression(allow_aggregates=True)
        ascending = True
        if self.match_keyword("desc"):
            ascending = False
        else:
            self.match_keyword("asc")
        return (expr, ascending)

    def validate_select(self, sel: RelationalSelect, offset: int):
        if sel.where is not None and contains_aggregate(sel.where):
            raise UnsupportedSqlFeature("aggregate call in WHERE", offset)
        grouped = bool(sel.group_by) or any(
            contains_aggregate(p.expr) for p in sel.projections)
        if not grouped:
            return
        if sel.star:
            raise BqlSyntaxError(
                "star projection is not allowed with aggregation", offset)
        for proj in sel.projections:
            if contains_aggregate(proj.expr):
                continue
            if (isinstance(proj.expr, ColumnRef)
                    and (proj.expr.full_name in sel.group_by
                         or proj.expr.name in sel.group_by)):
                continue
            raise BqlSyntaxError(
                "non-aggregate projection must appear in GROUP BY", offset)

    # -- expressions --

    def expression(self, allow_aggregates: bool, relational: bool = True):
        return self.expr_or(allow_aggregates, relational)

    def expr_or(self, agg, rel):
        left = self.expr_and(agg, rel)
        while self.at_keyword("or"):
            self.next()
            left = BinaryOp("or", left, self.expr_and(agg, rel))
        return left

    def expr_and(self, agg, rel):
        left = self.expr_not(agg, rel)
        while self.at_keyword("and"):
            self.next()
            left = BinaryOp("and", left, self.expr_not(agg, rel))
        return left

    def expr_not(self, agg, rel):
        if self.at_keyword("not"):
            self.next()
            return UnaryOp("not", self.expr_not(agg, rel))
        return self.expr_cmp(agg, rel)

    def expr_cmp(self, agg, rel):
        left = self.expr_add(agg, rel)
        if self.at_keyword("is"):
            tok = self.next()
            if not rel:
                raise BqlSyntaxError("IS NULL is relational-only", tok.offset)
            negated = self.match_keyword("not")
            if not self.match_keyword("null"):
                raise BqlSyntaxError("expected NULL after IS",
                                     self.peek().offset, "NULL")
            return IsNull(left, negated)
        op = self.match_op(*_COMPARISONS)
        if op:
            if op == "<>":
                op = "!="
            return BinaryOp(op, left, self.expr_add(agg, rel))
        return left

    def expr_add(self, agg, rel):
        left = self.expr_mul(agg, rel)
        while True:
            op = self.match_op("+", "-")
            if not op:
                return left
            left = BinaryOp(op, left, self.expr_mul(agg, rel))

    def expr_mul(self, agg, rel):
        left = self.expr_unary(agg, rel)
        while True:
            op = self.match_op("*", "/")
            if not op:
                return left
            left = BinaryOp(op, left, self.expr_unary(agg, rel))

    def expr_unary(self, agg, rel):
        if self.at_op("-"):
            self.next()
            return UnaryOp("-", self.expr_unary(agg, rel))
        return self.expr_primary(agg, rel)

    def expr_primary(self, agg, rel):
        tok = self.peek()
        if tok.kind in (tk.INT, tk.FLOAT, tk.STRING):
            return Literal(self.next().value)
        if tok.kind == tk.LPAREN:
            self.next()
            inner = self.expression(agg, rel)
            self.expect(tk.RPAREN, "')'")
            return inner
        if tok.kind == tk.IDENT:
            low = tok.text.lower()
            if low in ("true", "false"):
                self.next()
                return Literal(low == "true")
            if low == "null":
                raise BqlSyntaxError(
                    "NULL literal is not supported; use IS NULL", tok.offset)
            if low == "select":
                raise UnsupportedSqlFeature("nested SELECT is not supported",
                                            tok.offset)
            if low == "bdcast":
                raise MisplacedCast("bdcast is not allowed in expressions",
                                    tok.offset)
            if low == "bdcatalog":
                raise MisplacedCatalog("bdcatalog cannot be nested", tok.offset)
            if self.peek(1).kind == tk.LPAREN:
                if low in AGGREGATE_FUNCTIONS:
                    if not agg:
                        raise BqlSyntaxError(
                            f"aggregate {low} is not allowed here", tok.offset)
                    return self.aggregate_call()
                raise BqlSyntaxError(f"unknown function {tok.text!r}",
                                     tok.offset)
            if low in RELATIONAL_KEYWORDS and rel:
                raise BqlSyntaxError(f"unexpected keyword {tok.text!r}",
                                     tok.offset, "expression")
            name = self.qualified_name("column name",
                                       reserved=RELATIONAL_KEYWORDS if rel
                                       else frozenset())
            if "." in name:
                qualifier, _, column = name.rpartition(".")
                return ColumnRef(column, qualifier)
            return ColumnRef(name)
        raise BqlSyntaxError(f"unexpected {tok.text or 'end of input'!r}",
                             tok.offset, "expression")

    def aggregate_call(self) -> FuncCall:
        name = self.next().text.lower()
        self.expect(tk.LPAREN, "'('")
        if self.match_op("*"):
            if name != "count":
                raise BqlSyntaxError(f"{name}(*) is not supported",
                                     self.peek().offset)
            self.expect(tk.RPAREN, "')'")
            return FuncCall(name, star=True)
        arg = self.expression(allow_aggregates=False)
        self.expect(tk.RPAREN, "')'")
        return FuncCall(name, arg)

    # -- array island --

    def array_operator(self):
        tok = self.peek()
        if tok.kind != tk.IDENT:
            raise BqlSyntaxError(f"unexpected {tok.text or 'end of input'!r}",
                                 tok.offset, "array operator")
        low = tok.text.lower()
        if low not in ARRAY_OPERATORS or self.peek(1).kind != tk.LPAREN:
            if self.peek(1).kind == tk.LPAREN:
                raise UnknownArrayOperator(
                    f"unknown array operator {tok.text!r}", tok.offset)
            raise BqlSyntaxError("array body must be an operator call",
                                 tok.offset, "array operator")
        self.next()
        self.expect(tk.LPAREN, "'('")
        node = getattr(self, f"array_{low}")(tok.offset)
        self.expect(tk.RPAREN, "')'")
        return node

    def array_dataset(self):
        tok = self.peek()
        if tok.kind != tk.IDENT:
            raise BqlSyntaxError(f"unexpected {tok.text or 'end of input'!r}",
                                 tok.offset, "array name, operator or bdcast")
        low = tok.text.lower()
        if self.peek(1).kind == tk.LPAREN:
            if low == "bdcast":
                return ArrayScan(self.cast_leaf())
            if low == "bdcatalog":
                raise MisplacedCatalog("bdcatalog cannot be nested", tok.offset)
            if low in ("bdrel", "bdarray", "bdtext"):
                raise BqlSyntaxError(
                    "island queries nest only through bdcast", tok.offset)
            if low in ARRAY_OPERATORS:
                return self.array_operator()
            raise UnknownArrayOperator(f"unknown array operator {tok.text!r}",
                                       tok.offset)
        return ArrayScan(self.qualified_name("array name",
                                             reserved=frozenset()))

    def array_scan(self, offset):
        # scan is the identity; the dataset already is the scan result
        return self.array_dataset()

    def array_project(self, offset):
        child = self.array_dataset()
        attrs = []
        while self.peek().kind == tk.COMMA:
            self.next()
            attrs.append(self.qualified_name("attribute", reserved=frozenset()))
        if not attrs:
            raise ArityError("project needs at least one attribute", offset)
        return ArrayProject(child, attrs)

    def array_filter(self, offset):
        child = self.array_dataset()
        self.expect(tk.COMMA, "','")
        predicate = self.expression(allow_aggregates=False, relational=False)
        return ArrayFilter(child, predicate)

    def array_aggregate(self, offset):
        child = self.array_dataset()
        calls, dims = [], []
        while self.peek().kind == tk.COMMA:
            self.next()
            tok = self.peek()
            low = tok.text.lower() if tok.kind == tk.IDENT else ""
            if low in AGGREGATE_FUNCTIONS and self.peek(1).kind == tk.LPAREN:
                if dims:
                    raise BqlSyntaxError(
                        "aggregate calls must precede dimensions", tok.offset)
                self.next()
                self.next()  # '('
                if self.match_op("*"):
                    if low != "count":
                        raise BqlSyntaxError(f"{low}(*) is not supported",
                                             tok.offset)
                    calls.append(AggCall(low))
                else:
                    attr = self.qualified_name("attribute",
                                               reserved=frozenset())
                    calls.append(AggCall(low, attr))
                self.expect(tk.RPAREN, "')'")
            else:
                dims.append(self.qualified_name("dimension",
                                                reserved=frozenset()))
        if not calls:
            raise ArityError("aggregate needs at least one aggregate call",
                             offset)
        return ArrayAggregate(child, calls, dims)

    def array_apply(self, offset):
        child = self.array_dataset()
        defs = []
        while self.peek().kind == tk.COMMA:
            self.next()
            name = self.qualified_name("new attribute name",
                                       reserved=frozenset())
            self.expect(tk.COMMA, "','")
            defs.append((name, self.expression(allow_aggregates=False,
                                               relational=False)))
        if not defs:
            raise ArityError("apply needs at least one attribute definition",
                             offset)
        return ArrayApply(child, defs)

    def array_cross_join(self, offset):
        left = self.array_dataset()
        left_alias = None
        if self.match_keyword("as"):
            left_alias = self.qualified_name("alias", reserved=frozenset())
        self.expect(tk.COMMA, "','")
        right = self.array_dataset()
        right_alias = None
        if self.match_keyword("as"):
            right_alias = self.qualified_name("alias", reserved=frozenset())
        pairs = []
        while self.peek().kind == tk.COMMA:
            self.next()
            a = self.qualified_name("dimension", reserved=frozenset())
            if self.peek().kind != tk.COMMA:
                raise ArityError("cross_join dimensions come in pairs",
                                 self.peek().offset)
            self.next()
            b = self.qualified_name("dimension", reserved=frozenset())
            pairs.append((a, b))
        return ArrayCrossJoin(left, right, left_alias, right_alias, pairs)

    def array_redimension(self, offset):
        child = self.array_dataset()
        self.expect(tk.COMMA, "','")
        tok = self.peek()
        if tok.kind == tk.STRING:
            self.next()
            target = _parse_schema_string(tok.value, tok.offset + 1)
        elif tok.kind == tk.OP and tok.text == "<":
            target = self.array_schema()
        elif tok.kind == tk.IDENT:
            target = self.qualified_name("array name", reserved=frozenset())
        else:
            raise BqlSyntaxError("expected schema or array name", tok.offset,
                                 "schema")
        return ArrayRedimension(child, target)

    def array_sort(self, offset):
        child = self.array_dataset()
        attrs = []
        while self.peek().kind == tk.COMMA:
            self.next()
            attrs.append(self.qualified_name("attribute", reserved=frozenset()))
        return ArraySort(child, attrs)

    # -- array schema sublanguage --

    def array_schema(self) -> ArraySchema:
        lt = self.peek()
        if not (lt.kind == tk.OP and lt.text == "<"):
            raise SchemaSyntaxError("schema must start with '<'", lt.offset)
        self.next()
        attributes = []
        while True:
            name = self.schema_name()
            self.expect(tk.COLON, "':'")
            type_tok = self.expect(tk.IDENT, "scalar type")
            type_name = type_tok.text.lower()
            if type_name not in ARRAY_SCHEMA_TYPES:
                raise SchemaSyntaxError(f"unknown scalar type {type_tok.text!r}",
                                        type_tok.offset)
            attributes.append((name, type_name))
            if self.peek().kind == tk.COMMA:
                self.next()
                continue
            break
        if not self.match_op(">"):
            raise SchemaSyntaxError("expected '>' to close attributes",
                                    self.peek().offset)
        self.expect(tk.LBRACKET, "'['")
        dimensions = []
        while True:
            dname = self.schema_name()
            if not self.match_op("="):
                raise SchemaSyntaxError("expected '=' after dimension name",
                                        self.peek().offset)
            low = self.schema_int()
            self.expect(tk.COLON, "':'")
            if self.at_op("*"):
                self.next()
                high = None
            else:
                high = self.schema_int()
            self.expect(tk.COMMA, "','")
            chunk_tok = self.peek()
            chunk = self.schema_int()
            self.expect(tk.COMMA, "','")
            overlap_tok = self.peek()
            overlap = self.schema_int()
            if high is not None and low > high:
                raise BadBounds(f"dimension {dname}: low {low} > high {high}",
                                chunk_tok.offset)
            if chunk <= 0:
                raise SchemaSyntaxError("chunk size must be positive",
                                        chunk_tok.offset)
            if overlap < 0:
                raise SchemaSyntaxError("overlap must be non-negative",
                                        overlap_tok.offset)
            dimensions.append(Dimension(dname, low, high, chunk, overlap))
            if self.peek().kind == tk.COMMA:
                self.next()
                continue
            break
        self.expect(tk.RBRACKET, "']'")
        names = [n for n, _ in attributes] + [d.name for d in dimensions]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise DuplicateName(
                f"duplicate name(s) in schema: {', '.join(sorted(dupes))}")
        return ArraySchema(attributes, dimensions)

    def schema_name(self) -> str:
        tok = self.peek()
        if tok.kind != tk.IDENT:
            raise SchemaSyntaxError(
                f"unexpected {tok.text or 'end of input'!r} in schema",
                tok.offset)
        return self.next().text

    def schema_int(self) -> int:
        neg = bool(self.match_op("-"))
        tok = self.peek()
        if tok.kind != tk.INT:
            raise SchemaSyntaxError("expected integer in schema", tok.offset)
        self.next()
        return -tok.value if neg else tok.value

    # -- text island --

    def text_body(self) -> TextQuery:
        brace = self.expect(tk.LBRACE, "'{'")
        seen = {}
        while True:
            key_tok = self.expect(tk.STRING, "quoted key")
            key = key_tok.value
            if key in seen:
                raise BqlSyntaxError(f"duplicate key {key!r}", key_tok.offset)
            self.expect(tk.COLON, "':'")
            if key == "op":
                seen["op"] = (self.expect(tk.STRING, "quoted operator").value,
                              key_tok.offset)
            elif key == "table":
                seen["table"] = (self.text_table_value(), key_tok.offset)
            elif key == "range":
                seen["range"] = (self.text_range(), key_tok.offset)
            else:
                raise BqlSyntaxError(f"unknown key {key!r}", key_tok.offset,
                                     "'op', 'table' or 'range'")
            if self.peek().kind == tk.COMMA:
                self.next()
                continue
            break
        self.expect(tk.RBRACE, "'}'")
        if "op" not in seen:
            raise MissingKey("missing 'op' key", brace.offset)
        if "table" not in seen:
            raise MissingKey("missing 'table' key", brace.offset)
        op, op_offset = seen["op"]
        if op != "scan":
            raise UnknownTextOperator(f"unknown text operator {op!r}",
                                      op_offset)
        rng = seen["range"][0] if "range" in seen else None
        return TextQuery(op, seen["table"][0], rng)

    def text_table_value(self):
        tok = self.peek()
        if tok.kind == tk.STRING:
            return self.next().value
        if tok.kind == tk.IDENT and tok.text.lower() == "bdcast":
            return self.cast_leaf()
        raise BqlSyntaxError("expected quoted table name or bdcast",
                             tok.offset, "table value")

    def text_range(self) -> TextRange:
        brace = self.expect(tk.LBRACE, "'{'")
        bounds = {}
        while True:
            key_tok = self.expect(tk.STRING, "'start' or 'end'")
            if key_tok.value not in ("start", "end"):
                raise BqlSyntaxError(f"unknown range key {key_tok.value!r}",
                                     key_tok.offset, "'start' or 'end'")
            if key_tok.value in bounds:
                raise BqlSyntaxError(f"duplicate key {key_tok.value!r}",
                                     key_tok.offset)
            self.expect(tk.COLON, "':'")
            bounds[key_tok.value] = self.text_triple()
            if self.peek().kind == tk.COMMA:
                self.next()
                continue
            break
        self.expect(tk.RBRACE, "'}'")
        if "start" not in bounds:
            raise MissingKey("range is missing 'start'", brace.offset)
        if "end" not in bounds:
            raise MissingKey("range is missing 'end'", brace.offset)
        return TextRange(bounds["start"], bounds["end"])

    def text_triple(self) -> tuple:
        self.expect(tk.LBRACKET, "'['")
        parts = [self.expect(tk.STRING, "quoted component").value]
        for _ in range(2):
            self.expect(tk.COMMA, "','")
            parts.append(self.expect(tk.STRING, "quoted component").value)
        self.expect(tk.RBRACKET, "']'")
        return tuple(parts)

    # -- casts --

    def cast_leaf(self) -> CastLeaf:
        self.next()  # bdcast
        self.expect(tk.LPAREN, "'('")
        inner = self.island_query()
        self.expect(tk.COMMA, "','")
        name = self.qualified_name("intermediate result name")
        self.expect(tk.COMMA, "','")
        schema_tok = self.expect(tk.STRING, "quoted destination schema")
        self.expect(tk.COMMA, "','")
        island_tok = self.expect(tk.IDENT, "destination island")
        island = island_tok.text.lower()
        if island not in ISLANDS:
            raise BqlSyntaxError(f"unknown island {island_tok.text!r}",
                                 island_tok.offset,
                                 "relational, array or text")
        self.expect(tk.RPAREN, "')'")
        schema = _parse_cast_schema(schema_tok.value, island,
                                    schema_tok.offset + 1)
        return CastLeaf(inner, name, schema, island)


def _parse_schema_string(text: str, base_offset: int) -> ArraySchema:
    sub = _Parser(text)
    try:
        schema = sub.array_schema()
        sub.expect_eof()
    except BqlSyntaxError as exc:
        raise type(exc)(str(exc).rsplit(" at offset", 1)[0],
                        base_offset + exc.offset) from None
    return schema


def _parse_relational_schema(text: str, base_offset: int) -> list:
    sub = _Parser(text)
    try:
        sub.expect(tk.LPAREN, "'('")
        columns = []
        while True:
            name = sub.qualified_name("column name", reserved=frozenset())
            type_tok = sub.expect(tk.IDENT, "scalar type")
            type_name = type_tok.text.lower()
            if type_name not in ARRAY_SCHEMA_TYPES:
                raise SchemaSyntaxError(
                    f"unknown scalar type {type_tok.text!r}", type_tok.offset)
            columns.append((name, type_name))
            if sub.peek().kind == tk.COMMA:
                sub.next()
                continue
            break
        sub.expect(tk.RPAREN, "')'")
        sub.expect_eof()
    except BqlSyntaxError as exc:
        raise type(exc)(str(exc).rsplit(" at offset", 1)[0],
                        base_offset + exc.offset) from None
    names = [n for n, _ in columns]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise DuplicateName(
            f"duplicate column(s) in schema: {', '.join(sorted(dupes))}")
    return columns


def _parse_text_schema(text: str, base_offset: int) -> str:
    sub = _Parser(text)
    try:
        name = sub.qualified_name("key column name", reserved=frozenset())
        sub.expect_eof()
    except BqlSyntaxError as exc:
        raise type(exc)(str(exc).rsplit(" at offset", 1)[0],
                        base_offset + exc.offset) from None
    return name


def _parse_cast_schema(text: str, island: str, base_offset: int):
    if island == "array":
        return _parse_schema_string(text, base_offset)
    if island == "relational":
        return _parse_relational_schema(text, base_offset)
    return _parse_text_schema(text, base_offset)


# -- module-level entry points --

def parse(query_text: str):
    """Parse a full BQL query into an Ast."""
    return _Parser(query_text).query()


def parse_relational_body(text: str) -> RelationalSelect:
    p = _Parser(text)
    sel = p.relational_select()
    p.expect_eof()
    return sel


def parse_array_body(text: str):
    p = _Parser(text)
    node = p.array_operator()
    p.expect_eof()
    return node


def parse_text_body(text: str) -> TextQuery:
    p = _Parser(text)
    q = p.text_body()
    p.expect_eof()
    return q


def parse_array_schema(text: str) -> ArraySchema:
    p = _Parser(text)
    schema = p.array_schema()
    p.expect_eof()
    return schema
