"""Kernel variant ladder and component-ablation flags.

The five variants form a cumulative optimisation ladder: whole-step
batching, then chunked pipelining, then scalar-unit (ThCon) copies, then
128-bit accesses wherever a span is contiguous, and finally the one-reorder
scheme that converts results directly into the next step's stream order.
The one-reorder scatter is non-contiguous on its store side and therefore
drops back to 32-bit there; contiguous sides keep their width.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SimError
from ..sim.ledger import ENGINE_BABY, ENGINE_THCON

TWO_REORDER = "two_reorder"
ONE_REORDER = "one_reorder"

FLAG_ORDER = ("external_read", "read_reorder", "compute", "write_reorder", "external_write")


@dataclass(frozen=True)
class KernelVariant:
    name: str
    chunk_pages: int | None      # pages per pipeline chunk; None = whole step
    copy_engine: str
    contiguous_width: int        # width used where an access run is contiguous
    reorder_scheme: str

    @property
    def whole_step(self) -> bool:
        return self.chunk_pages is None


VARIANTS = {
    "initial": KernelVariant("initial", None, ENGINE_BABY, 32, TWO_REORDER),
    "chunked": KernelVariant("chunked", 1, ENGINE_BABY, 32, TWO_REORDER),
    "thcon": KernelVariant("thcon", 1, ENGINE_THCON, 32, TWO_REORDER),
    "wide128": KernelVariant("wide128", 1, ENGINE_THCON, 128, TWO_REORDER),
    "single_copy": KernelVariant("single_copy", 1, ENGINE_THCON, 128, ONE_REORDER),
}

LADDER_ORDER = ("initial", "chunked", "thcon", "wide128", "single_copy")


def get_variant(name: str) -> KernelVariant:
    try:
        return VARIANTS[name]
    except KeyError:
        raise SimError(f"unknown variant {name!r}; choose from {', '.join(LADDER_ORDER)}")


@dataclass(frozen=True)
class AblationFlags:
    external_read: bool = True
    read_reorder: bool = True
    compute: bool = True
    write_reorder: bool = True
    external_write: bool = True

    @classmethod
    def from_string(cls, text: str) -> "AblationFlags":
        text = text.strip().upper()
        if len(text) != 5 or set(text) - {"Y", "N"}:
            raise SimError(f"flags must be five Y/N characters, got {text!r}")
        return cls(**{name: char == "Y" for name, char in zip(FLAG_ORDER, text)})

    def to_string(self) -> str:
        return "".join("Y" if getattr(self, name) else "N" for name in FLAG_ORDER)

    @property
    def all_enabled(self) -> bool:
        return all(getattr(self, name) for name in FLAG_ORDER)


ALL_ON = AblationFlags()

# The seven ablation rows, in presentation order, with the published
# runtimes (milliseconds) carried along purely as a reference column.
ABLATION_ROWS = (
    ("YYYYY", 14.4),
    ("YNYYY", 7.3),
    ("NNYYY", 7.3),
    ("NYYNN", 10.5),
    ("YYYNN", 10.6),
    ("NNYNY", 0.9),
    ("NNYNN", 0.9),
)
