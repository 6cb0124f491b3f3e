"""
Expression validator.

Recognizer for the arithmetic-expression language, written independently of
the generator so it can serve as a test oracle. Nesting is tracked on an
explicit stack, so any depth is accepted.
"""

from typing import List

# Position inside one expression: operand operator operand
_FIRST_OPERAND = 0
_OPERATOR = 1
_SECOND_OPERAND = 2
_DONE = 3

_OPERATORS = "+-*/"


class _ExpressionParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.length = len(text)

    def match(self, terminal: str) -> bool:
        if self.text.startswith(terminal, self.pos):
            self.pos += len(terminal)
            return True
        return False

    def parse(self) -> bool:
        self.pos = 0
        stack: List[int] = [_FIRST_OPERAND]
        while stack:
            stage = stack[-1]
            if stage == _DONE:
                stack.pop()
                if stack and not self.match(")"):
                    return False
            elif stage == _OPERATOR:
                if not self.parse_operator():
                    return False
                stack[-1] = _SECOND_OPERAND
            else:
                stack[-1] = stage + 1
                if self.match("("):
                    stack.append(_FIRST_OPERAND)
                elif not self.parse_number():
                    return False
        return self.pos == self.length

    def parse_operator(self) -> bool:
        if self.pos < self.length and self.text[self.pos] in _OPERATORS:
            self.pos += 1
            return True
        return False

    def parse_number(self) -> bool:
        self.match("-")
        start = self.pos
        while self.pos < self.length and "0" <= self.text[self.pos] <= "9":
            self.pos += 1
        return self.pos > start


def validate_expression(s: str) -> bool:
    """True iff `s` is a sentence of the expression grammar."""
    return _ExpressionParser(s).parse()
