import math
from decimal import Context, Decimal, ROUND_HALF_EVEN

_WIDE = Context(prec=200)


def fmt_fixed(value, decimals=9):
    """Fixed-point text for a float, round-half-even on its exact binary value.

    Negative zero prints as zero so that mirrored coordinates stay diff-able.
    """
    if value is None:
        return ''
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    quantum = Decimal(1).scaleb(-decimals)
    text = format(Decimal(value).quantize(quantum, rounding=ROUND_HALF_EVEN, context=_WIDE), 'f')
    if text.startswith('-') and Decimal(text) == 0:
        text = text[1:]
    return text


def json_number(value, decimals=9):
    """Float carrying exactly the digits fmt_fixed prints (None passes through)."""
    if value is None:
        return None
    if math.isinf(value) or math.isnan(value):
        return fmt_fixed(value, decimals)
    return float(fmt_fixed(value, decimals))
