"""BQL tokenizer.

Tokens carry the offset of their first character so parse errors can point
into the query text.  Single-quoted strings are lexed as one STRING token;
a doubled quote inside the string is an escaped quote.
"""

from dataclasses import dataclass

from ..errors import IllegalCharacter, UnterminatedString

IDENT = "IDENT"
INT = "INT"
FLOAT = "FLOAT"
STRING = "STRING"
LPAREN = "LPAREN"
RPAREN = "RPAREN"
LBRACE = "LBRACE"
RBRACE = "RBRACE"
LBRACKET = "LBRACKET"
RBRACKET = "RBRACKET"
COMMA = "COMMA"
COLON = "COLON"
DOT = "DOT"
OP = "OP"
EOF = "EOF"

_SINGLE = {
    "(": LPAREN,
    ")": RPAREN,
    "{": LBRACE,
    "}": RBRACE,
    "[": LBRACKET,
    "]": RBRACKET,
    ",": COMMA,
    ":": COLON,
}

_OPERATOR_CHARS = "=<>!+-*/"


@dataclass
class Token:
    kind: str
    text: str
    offset: int
    value: object = None  # decoded value for INT/FLOAT/STRING


def tokenize(text: str) -> list:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, i))
            i += 1
            continue
        if ch == "'":
            start = i
            i += 1
            parts = []
            while True:
                if i >= n:
                    raise UnterminatedString("unterminated string", start)
                if text[i] == "'":
                    if i + 1 < n and text[i + 1] == "'":
                        parts.append("'")
                        i += 2
                        continue
                    i += 1
                    break
                parts.append(text[i])
                i += 1
            tokens.append(Token(STRING, text[start:i], start, "".join(parts)))
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i + 1 < n and text[i] == "." and text[i + 1].isdigit():
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
                raw = text[start:i]
                tokens.append(Token(FLOAT, raw, start, float(raw)))
            else:
                raw = text[start:i]
                tokens.append(Token(INT, raw, start, int(raw)))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token(IDENT, text[start:i], start))
            continue
        if ch == ".":
            tokens.append(Token(DOT, ch, i))
            i += 1
            continue
        if ch in _OPERATOR_CHARS:
            two = text[i : i + 2]
            if two in ("<=", ">=", "<>", "!="):
                tokens.append(Token(OP, two, i))
                i += 2
            else:
                if ch == "!":
                    raise IllegalCharacter(f"illegal character {ch!r}", i)
                tokens.append(Token(OP, ch, i))
                i += 1
            continue
        raise IllegalCharacter(f"illegal character {ch!r}", i)
    tokens.append(Token(EOF, "", n))
    return tokens
