"""Page-based circular buffers: SRAM FIFOs with reserve/push/wait/pop.

A CB combines memory and synchronisation. The producer reserves a writable
page (blocking while all pages are live), fills it and pushes it; the
consumer waits on the oldest pushed page, reads it and pops it to free the
slot. Blocking methods are generators that yield a wait description to the
cooperative scheduler.
"""

from __future__ import annotations

from collections import deque

from ..errors import ProtocolViolation

PAGE_ELEMS = 1024  # one register tile: 1024 FP32 = 4 KiB

RESERVED, PUSHED, POPPED = "reserved", "pushed", "popped"


class PageHandle:
    __slots__ = ("cb", "slot", "seq", "state", "length")

    def __init__(self, cb, slot: int, seq: int):
        self.cb = cb
        self.slot = slot
        self.seq = seq
        self.state = RESERVED
        self.length = 0

    @property
    def array(self):
        """Full-capacity view of this page's SRAM slot."""
        base = self.slot * self.cb.page_size
        return self.cb.storage.data[base : base + self.cb.page_size]

    @property
    def data(self):
        return self.array[: self.length]

    def span(self, start: int = 0, length: int | None = None):
        if length is None:
            length = self.length - start
        return self.cb.storage.span(self.slot * self.cb.page_size + start, length)


class CircularBuffer:
    def __init__(self, core, name: str, num_pages: int, page_size: int = PAGE_ELEMS,
                 producer: str | None = None, consumer: str | None = None):
        self.core = core
        self.name = name
        self.num_pages = num_pages
        self.page_size = page_size
        self.producer = producer
        self.consumer = consumer
        self.storage = core.arena.alloc(f"cb:{name}", num_pages * page_size)
        self.reserved_count = 0
        self.pushed_count = 0
        self.popped_count = 0
        self.peak_live = 0
        self._queue: deque[PageHandle] = deque()

    @property
    def live_pages(self) -> int:
        return self.reserved_count - self.popped_count

    @property
    def pushed_unpopped(self) -> int:
        return self.pushed_count - self.popped_count

    def _check_agent(self, role_name, expected):
        agent = self.core.current_agent
        if expected is not None and agent is not None and agent != expected:
            raise ProtocolViolation(
                "wrong_agent",
                f"cb {self.name}: {role_name} op from {agent!r}, expected {expected!r}",
            )

    def reserve(self):
        """Producer side; blocks while all num_pages pages are live."""
        self._check_agent("producer", self.producer)
        while self.live_pages >= self.num_pages:
            yield f"cb {self.name}: reserve ({self.num_pages} pages live)"
        handle = PageHandle(self, self.reserved_count % self.num_pages, self.reserved_count)
        self.reserved_count += 1
        self.peak_live = max(self.peak_live, self.live_pages)
        self.core.note_op()
        return handle

    def push(self, page: PageHandle) -> None:
        self._check_agent("producer", self.producer)
        if page.cb is not self:
            raise ProtocolViolation("foreign_page", f"page from cb {page.cb.name} pushed to {self.name}")
        if page.state != RESERVED:
            raise ProtocolViolation(
                "push_without_reserve",
                f"cb {self.name}: push of a page in state {page.state!r}",
            )
        page.state = PUSHED
        self.pushed_count += 1
        self._queue.append(page)
        self.core.note_op()

    def wait(self):
        """Consumer side; blocks until a pushed page is available."""
        self._check_agent("consumer", self.consumer)
        while not self._queue:
            yield f"cb {self.name}: wait (no pushed pages)"
        self.core.note_op()
        return self._queue[0]

    def front(self) -> PageHandle:
        if not self._queue:
            raise ProtocolViolation("read_empty", f"cb {self.name}: no pushed page to read")
        return self._queue[0]

    def pop(self) -> None:
        self._check_agent("consumer", self.consumer)
        if not self._queue:
            raise ProtocolViolation("pop_empty", f"cb {self.name}: pop with nothing pushed")
        page = self._queue.popleft()
        page.state = POPPED
        self.popped_count += 1
        self.core.note_op()
