"""Deterministic cooperative round-robin scheduler.

Agents are generator programs. A blocking primitive yields a human-readable
wait description; the scheduler resumes agents in a fixed order, and each
resume runs the agent until it blocks again or finishes. Progress is
tracked through the cores' operation counters: a full pass in which no
primitive completes and no agent terminates is a deadlock, reported with
every agent's wait target instead of hanging.
"""

from __future__ import annotations

from ..errors import DeadlockError


class Semaphore:
    """Counting semaphore for cross-agent step barriers."""

    def __init__(self, core, name: str):
        self.core = core
        self.name = name
        self.value = 0

    def signal(self, amount: int = 1) -> None:
        self.value += amount
        self.core.trace_event("sem_signal", sem=self.name, value=self.value)
        self.core.note_op()

    def wait_at_least(self, target: int):
        while self.value < target:
            yield f"semaphore {self.name}: value {self.value} < {target}"
        self.core.note_op()


class _AgentState:
    __slots__ = ("name", "gen", "done", "waiting_on")

    def __init__(self, name, gen):
        self.name = name
        self.gen = gen
        self.done = False
        self.waiting_on = None


class Scheduler:
    def __init__(self, cores):
        self.cores = list(cores)

    def _op_count(self) -> int:
        return sum(core.op_count for core in self.cores)

    def run(self, agents) -> None:
        """Run (name, generator) agents to completion in list order."""
        states = [_AgentState(name, gen) for name, gen in agents]
        for core in self.cores:
            core.current_agent = None
        while True:
            progressed = False
            pending = False
            for state in states:
                if state.done:
                    continue
                pending = True
                for core in self.cores:
                    core.current_agent = state.name
                before = self._op_count()
                try:
                    state.waiting_on = next(state.gen)
                except StopIteration:
                    state.done = True
                    state.waiting_on = None
                    progressed = True
                if self._op_count() != before:
                    progressed = True
            for core in self.cores:
                core.current_agent = None
            if not pending:
                return
            if not progressed:
                raise DeadlockError(
                    {s.name: s.waiting_on or "unknown" for s in states if not s.done}
                )


def run_schedule(core_or_grid, agents) -> dict:
    """Convenience wrapper: run agents and return a summary of the run."""
    cores = getattr(core_or_grid, "cores", None) or [core_or_grid]
    Scheduler(cores).run(agents)
    from .ledger import CostLedger

    counters = CostLedger.sum_counters([c.ledger for c in cores])
    return {
        "counters": counters,
        "trace_len": sum(c.trace_len for c in cores),
    }
