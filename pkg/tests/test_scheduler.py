import pytest

from tensixfft.errors import DeadlockError
from tensixfft.sim import Scheduler, TensixCore, run_schedule


def test_producer_consumer_completes():
    core = TensixCore()
    cb = core.add_cb("q", 2, page_size=4, producer="prod", consumer="cons")
    received = []

    def producer():
        for value in range(10):
            page = yield from cb.reserve()
            page.length = 1
            page.array[0] = float(value)
            cb.push(page)

    def consumer():
        for _ in range(10):
            page = yield from cb.wait()
            received.append(float(page.data[0]))
            cb.pop()

    Scheduler([core]).run([("prod", producer()), ("cons", consumer())])
    assert received == [float(v) for v in range(10)]
    assert cb.pushed_count == cb.popped_count == 10


def test_wrong_agent_role_detected():
    from tensixfft.errors import ProtocolViolation

    core = TensixCore()
    cb = core.add_cb("q", 2, page_size=4, producer="prod", consumer="cons")

    def impostor():
        yield from cb.reserve()

    with pytest.raises(ProtocolViolation) as err:
        Scheduler([core]).run([("cons", impostor())])
    assert err.value.kind == "wrong_agent"


def test_cyclic_wait_reports_deadlock_with_targets():
    core = TensixCore()
    core.add_cb("a", 1, page_size=4)
    core.add_cb("b", 1, page_size=4)

    def agent_one():
        yield from core.cb("a").wait()
        page = yield from core.cb("b").reserve()
        core.cb("b").push(page)

    def agent_two():
        yield from core.cb("b").wait()
        page = yield from core.cb("a").reserve()
        core.cb("a").push(page)

    with pytest.raises(DeadlockError) as err:
        Scheduler([core]).run([("one", agent_one()), ("two", agent_two())])
    assert set(err.value.waits) == {"one", "two"}
    assert "cb a" in err.value.waits["one"]
    assert "cb b" in err.value.waits["two"]


def test_self_deadlock_on_double_acquire():
    core = TensixCore()

    def greedy():
        yield from core.regs.acquire()
        yield from core.regs.acquire()

    with pytest.raises(DeadlockError) as err:
        Scheduler([core]).run([("greedy", greedy())])
    assert "acquire" in err.value.waits["greedy"]


def test_run_schedule_is_deterministic():
    def run_once():
        core = TensixCore()
        cb = core.add_cb("q", 2, page_size=8)

        def producer():
            for value in range(5):
                page = yield from cb.reserve()
                page.length = 2
                page.array[:2] = [value, value + 0.5]
                cb.push(page)

        def consumer():
            for _ in range(5):
                yield from cb.wait()
                cb.pop()

        return run_schedule(core, [("p", producer()), ("c", consumer())])

    assert run_once() == run_once()


def test_single_agent_copy_report():
    core = TensixCore()
    src = core.arena.alloc("src", 16)
    dst = core.arena.alloc("dst", 16)
    src.data[:] = 3.0

    def mover():
        core.mover_copy(src.span(), dst.span(), "baby_core", 32)
        return
        yield  # makes this a generator program

    summary = run_schedule(core, [("m", mover())])
    assert summary["counters"]["mover_access_32"] == 32
    assert (dst.data == 3.0).all()
