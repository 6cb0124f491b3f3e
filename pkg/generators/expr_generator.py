"""
Arithmetic expression generator.

    expression -> operand operator operand
    operand    -> number | '(' expression ')'
    operator   -> '+' | '-' | '*' | '/'
    number     -> ['-'] digit {digit}
"""

from typing import List, Set, Tuple

from engine.choice_points import ChoiceKind, ChoicePoint
from generators.base import GeneratorProgram

OPERATORS = ("+", "-", "*", "/")
DIGITS = "0123456789"

OPERAND_KIND = ChoicePoint(1, ChoiceKind.RULE, 2, "operand_kind", depth_conditioned=True)
OPERATOR = ChoicePoint(2, ChoiceKind.RULE, len(OPERATORS), "operator")
SIGN = ChoicePoint(3, ChoiceKind.BOOLEAN, 2, "sign")
DIGIT_CONTINUE = ChoicePoint(4, ChoiceKind.REPETITION, 2, "digit_continue")
DIGIT_VALUE = ChoicePoint(5, ChoiceKind.VALUE, len(DIGITS), "digit_value")

NUMBER = 0
SUBEXPRESSION = 1


class ExprGenerator(GeneratorProgram):
    """Generates arithmetic-expression strings such as "42+(-7*910)"."""

    @property
    def generator_id(self) -> str:
        return "expr"

    @property
    def choice_points(self) -> Tuple[ChoicePoint, ...]:
        return (OPERAND_KIND, OPERATOR, SIGN, DIGIT_CONTINUE, DIGIT_VALUE)

    def derive(self, ctx) -> None:
        self._expression(ctx)

    def _expression(self, ctx) -> None:
        ctx.reserve(2)  # operator and a one-digit right operand
        self._operand(ctx)
        ctx.release(2)
        ctx.emit(OPERATORS[ctx.choose(OPERATOR)])
        self._operand(ctx)

    def _operand(self, ctx) -> None:
        if ctx.choose(OPERAND_KIND) == NUMBER:
            self._number(ctx)
        else:
            ctx.open_group("(")
            self._expression(ctx)
            ctx.close_group(")")

    def _number(self, ctx) -> None:
        if ctx.choose(SIGN):
            ctx.emit("-")
        ctx.emit(DIGITS[ctx.choose(DIGIT_VALUE)])
        while ctx.choose(DIGIT_CONTINUE):
            ctx.emit(DIGITS[ctx.choose(DIGIT_VALUE)])

    def reachable_features(self, max_length: int, limits) -> Set[Tuple[int, int]]:
        """
        Exhaustive reachability over the grammar, no sampling.

        Digit-count sets are kept as int bitmasks indexed by length; operands
        at depth d may only be parenthesized while d + 1 stays within the
        nesting limit.
        """
        max_length = min(max_length, limits.max_output_length)
        if max_length < 3:
            return set()

        numbers = [0] * (max_length + 1)
        for length in range(1, max_length + 1):
            numbers[length] |= 1 << length          # unsigned, all digits
            if length >= 2:
                numbers[length] |= 1 << (length - 1)  # signed

        inner: List[int] | None = None
        expressions: List[int] = []
        for depth in range(limits.max_nesting_depth, -1, -1):
            operands = list(numbers)
            if inner is not None:
                for length in range(3, max_length + 1):
                    operands[length] |= inner[length - 2]
            expressions = [0] * (max_length + 1)
            for length in range(3, max_length + 1):
                acc = 0
                for left in range(1, length - 1):
                    acc |= _sumset(operands[left], operands[length - 1 - left])
                expressions[length] = acc
            inner = expressions

        reachable = set()
        for length in range(3, max_length + 1):
            mask = expressions[length]
            digits = 0
            while mask:
                if mask & 1:
                    reachable.add((length, digits))
                mask >>= 1
                digits += 1
        return reachable


def _sumset(a: int, b: int) -> int:
    """Bitmask of {x + y : x in a, y in b}."""
    if not a or not b:
        return 0
    acc = 0
    shift = 0
    mask = a
    while mask:
        if mask & 1:
            acc |= b << shift
        mask >>= 1
        shift += 1
    return acc


def build_generator() -> ExprGenerator:
    return ExprGenerator()
