"""Canonical text rendering of BQL ASTs.

parse(render(ast)) is structurally identical to ast.  Binary expressions
are rendered fully parenthesized so no precedence information is lost, and
array datasets always carry an explicit scan() leaf.
"""

from .ast import (
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
    FuncCall,
    IslandQuery,
    IsNull,
    Literal,
    RelationalSelect,
    TextQuery,
    UnaryOp,
)

_ISLAND_TOKEN = {"relational": "bdrel", "array": "bdarray", "text": "bdtext"}


def render(ast) -> str:
    if isinstance(ast, CatalogQuery):
        return _render_catalog(ast)
    if isinstance(ast, IslandQuery):
        return f"{_ISLAND_TOKEN[ast.island]}({_render_body(ast)})"
    raise TypeError(f"not an Ast: {ast!r}")


def _render_body(query: IslandQuery) -> str:
    if query.island == "relational":
        return _render_select(query.body)
    if query.island == "array":
        return _render_array(query.body)
    return _render_text(query.body)


def _render_catalog(q: CatalogQuery) -> str:
    if q.filter is None:
        if q.columns:
            return f"bdcatalog({q.table}, {', '.join(q.columns)})"
        return f"bdcatalog({q.table})"
    cols = ", ".join(q.columns) if q.columns else "*"
    col, value = q.filter
    return (f"bdcatalog(select {cols} from {q.table} "
            f"where {col} = {_render_literal(value)})")


def _render_literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return "'" + value.replace("'", "''") + "'"
    if isinstance(value, float):
        text = repr(value)
        if "e" in text or "E" in text or "inf" in text or "nan" in text:
            text = format(value, ".17f")
        return text
    return str(value)


def render_expr(expr) -> str:
    if isinstance(expr, Literal):
        return _render_literal(expr.value)
    if isinstance(expr, ColumnRef):
        return expr.full_name
    if isinstance(expr, BinaryOp):
        return f"({render_expr(expr.left)} {expr.op} {render_expr(expr.right)})"
    if isinstance(expr, UnaryOp):
        if expr.op == "not":
            return f"(not {render_expr(expr.operand)})"
        return f"-{render_expr(expr.operand)}"
    if isinstance(expr, FuncCall):
        return f"{expr.name}(*)" if expr.star else \
            f"{expr.name}({render_expr(expr.arg)})"
    if isinstance(expr, IsNull):
        middle = "is not null" if expr.negated else "is null"
        return f"({render_expr(expr.operand)} {middle})"
    raise TypeError(f"not an expression: {expr!r}")


def _render_select(sel: RelationalSelect) -> str:
    parts = ["select"]
    if sel.distinct:
        parts.append("distinct")
    if sel.star:
        parts.append("*")
    else:
        rendered = []
        for proj in sel.projections:
            item = render_expr(proj.expr)
            if proj.alias:
                item += f" as {proj.alias}"
            rendered.append(item)
        parts.append(", ".join(rendered))
    items = []
    for item in sel.from_items:
        text = _render_source(item.source)
        if item.alias:
            text += f" as {item.alias}"
        items.append(text)
    parts.append("from " + ", ".join(items))
    if sel.where is not None:
        parts.append("where " + render_expr(sel.where))
    if sel.group_by:
        parts.append("group by " + ", ".join(sel.group_by))
    if sel.order_by:
        keys = [f"{render_expr(e)} {'asc' if asc else 'desc'}"
                for e, asc in sel.order_by]
        parts.append("order by " + ", ".join(keys))
    if sel.limit is not None:
        parts.append(f"limit {sel.limit}")
    return " ".join(parts)


def _render_source(source) -> str:
    if isinstance(source, CastLeaf):
        return _render_cast(source)
    return source


def _render_array(node) -> str:
    if isinstance(node, ArrayScan):
        return f"scan({_render_source(node.source)})"
    if isinstance(node, ArrayProject):
        return f"project({_render_array(node.child)}, " \
               f"{', '.join(node.attributes)})"
    if isinstance(node, ArrayFilter):
        return f"filter({_render_array(node.child)}, " \
               f"{render_expr(node.predicate)})"
    if isinstance(node, ArrayAggregate):
        args = [f"{c.name}({c.attribute})" if c.attribute else "count(*)"
                for c in node.calls]
        args += node.group_dims
        return f"aggregate({_render_array(node.child)}, {', '.join(args)})"
    if isinstance(node, ArrayApply):
        pairs = ", ".join(f"{name}, {render_expr(expr)}"
                          for name, expr in node.definitions)
        return f"apply({_render_array(node.child)}, {pairs})"
    if isinstance(node, ArrayCrossJoin):
        left = _render_array(node.left)
        if node.left_alias:
            left += f" as {node.left_alias}"
        right = _render_array(node.right)
        if node.right_alias:
            right += f" as {node.right_alias}"
        parts = [left, right]
        for a, b in node.dim_pairs:
            parts.append(a)
            parts.append(b)
        return f"cross_join({', '.join(parts)})"
    if isinstance(node, ArrayRedimension):
        target = node.target if isinstance(node.target, str) \
            else render_array_schema(node.target)
        return f"redimension({_render_array(node.child)}, {target})"
    if isinstance(node, ArraySort):
        args = [_render_array(node.child)] + list(node.attributes)
        return f"sort({', '.join(args)})"
    raise TypeError(f"not an array node: {node!r}")


def _render_text(q: TextQuery) -> str:
    if isinstance(q.table, CastLeaf):
        table = _render_cast(q.table)
    else:
        table = "'" + q.table.replace("'", "''") + "'"
    body = f"{{'op':'{q.op}','table':{table}"
    if q.range is not None:
        start = ",".join(f"'{c}'" for c in q.range.start)
        end = ",".join(f"'{c}'" for c in q.range.end)
        body += f",'range':{{'start':[{start}],'end':[{end}]}}"
    return body + "}"


def _render_cast(cast: CastLeaf) -> str:
    if cast.dest_island == "array":
        schema_text = render_array_schema(cast.dest_schema)
    elif cast.dest_island == "relational":
        schema_text = "(" + ", ".join(f"{n} {t}" for n, t in cast.dest_schema) + ")"
    else:
        schema_text = cast.dest_schema
    return (f"bdcast({render(cast.inner)}, {cast.intermediate_name}, "
            f"'{schema_text}', {cast.dest_island})")


def render_array_schema(schema: ArraySchema) -> str:
    attrs = ",".join(f"{n}:{t}" for n, t in schema.attributes)
    dims = ",".join(
        f"{d.name}={d.low}:{'*' if d.high is None else d.high},"
        f"{d.chunk},{d.overlap}"
        for d in schema.dimensions)
    return f"<{attrs}>[{dims}]"
