"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set MONOIDBOUNDARY_PURE=1 to force the pure-Python implementation.
"""

from __future__ import annotations

import os
from typing import List, Tuple

from .rewrite import Presentation, RuleSchema
from .words import Letter, Word

if os.environ.get("MONOIDBOUNDARY_PURE"):
    from . import _kernel_py as impl
else:
    try:
        from . import _kernel_c as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as impl

COMPILED: bool = bool(impl.IS_COMPILED)

_KIND_CODE = {"a": 1, "b": 2, "c": 3, "d": 4, "f": 5, "x": 6, "y": 7}
_CODE_KIND = {v: k for k, v in _KIND_CODE.items()}

# fixed rule slots shared with both kernel implementations
RULES: Tuple[RuleSchema, ...] = (
    RuleSchema("a", "x", 0, False),
    RuleSchema("a", "y", 1, False),
    RuleSchema("c", "x", 1, False),
    RuleSchema("c", "y", 0, False),
    RuleSchema("d", "x", 0, True),
    RuleSchema("f", "y", 0, True),
)


def rule_mask(p: Presentation) -> int:
    mask = 0
    for r in p.rules:
        try:
            mask |= 1 << RULES.index(r)
        except ValueError:
            raise ValueError(f"presentation {p.name} has a rule outside the kernel table") from None
    return mask


def plain_codes(p: Presentation) -> List[int]:
    return [_KIND_CODE[k] for k in p.plain_letters]


def encode_word(w: Word) -> int:
    if len(w) > 7:
        raise ValueError("packed words support length <= 7")
    out = len(w) << 56
    for i, l in enumerate(w):
        idx = l.index if l.indexed else 0
        if not -16 <= idx <= 15:
            raise ValueError("packed indices must lie in [-16, 15]")
        out |= ((_KIND_CODE[l.kind] << 5) | (idx + 16)) << (8 * i)
    return out


def decode_word(v: int) -> Word:
    L = v >> 56
    out = []
    for i in range(L):
        b = (v >> (8 * i)) & 0xFF
        kind = _CODE_KIND[b >> 5]
        out.append(Letter(kind, (b & 31) - 16) if kind in ("x", "y") else Letter(kind))
    return tuple(out)


def nf(v: int, mask: int) -> int:
    return impl.nf(v, mask)


def neighbors(v: int, mask: int, maxlen: int):
    return impl.neighbors(v, mask, maxlen)


def class_members(v: int, mask: int, maxlen: int):
    return impl.class_members(v, mask, maxlen)


def verify_partition(codes, idx_lo, idx_hi, maxlen, mask):
    return impl.verify_partition(codes, idx_lo, idx_hi, maxlen, mask)


def class_words(p: Presentation, w: Word, maxlen: int) -> List[Word]:
    """All words equivalent to w within the length bound (brute-force oracle)."""
    return [decode_word(v) for v in class_members(encode_word(w), rule_mask(p), maxlen)]
