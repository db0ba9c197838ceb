from .arena import Allocation, DramArena, Span, SramArena, SRAM_CAPACITY_BYTES
from .cb import CircularBuffer, PageHandle, PAGE_ELEMS
from .core import TensixCore
from .grid import CoreGrid
from .ledger import (
    CostLedger,
    COUNTER_NAMES,
    DEFAULT_WEIGHTS,
    ENGINE_BABY,
    ENGINE_THCON,
    resolve_weights,
)
from .registers import ADD, DIV, DST_SEGMENTS, MUL, RegisterFile, SUB
from .scheduler import Scheduler, Semaphore, run_schedule

__all__ = [
    "Allocation",
    "DramArena",
    "Span",
    "SramArena",
    "SRAM_CAPACITY_BYTES",
    "CircularBuffer",
    "PageHandle",
    "PAGE_ELEMS",
    "TensixCore",
    "CoreGrid",
    "CostLedger",
    "COUNTER_NAMES",
    "DEFAULT_WEIGHTS",
    "ENGINE_BABY",
    "ENGINE_THCON",
    "resolve_weights",
    "ADD",
    "SUB",
    "MUL",
    "DIV",
    "DST_SEGMENTS",
    "RegisterFile",
    "Scheduler",
    "Semaphore",
    "run_schedule",
]
