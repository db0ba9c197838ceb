import numpy as np
import pytest

from tensixfft.errors import AlignmentError, AllocationError, SimError
from tensixfft.sim import (
    CostLedger,
    DEFAULT_WEIGHTS,
    SramArena,
    SRAM_CAPACITY_BYTES,
    TensixCore,
    resolve_weights,
)


class TestArena:
    def test_capacity_default(self):
        assert SramArena().capacity == SRAM_CAPACITY_BYTES == 1_331_200

    def test_overflow_is_hard_error(self):
        arena = SramArena(capacity=64)
        arena.alloc("a", 8)  # 32 bytes
        with pytest.raises(AllocationError):
            arena.alloc("b", 16)  # would need 64 more

    def test_allocations_do_not_overlap(self):
        arena = SramArena(capacity=4096)
        spans = [arena.alloc(f"x{i}", 10) for i in range(5)]
        ranges = sorted((a.byte_offset, a.byte_offset + a.nbytes) for a in spans)
        for (s0, e0), (s1, _e1) in zip(ranges, ranges[1:]):
            assert e0 <= s1

    def test_free_returns_budget(self):
        arena = SramArena(capacity=64)
        a = arena.alloc("a", 16)
        with pytest.raises(AllocationError):
            arena.alloc("b", 1)
        arena.free(a)
        arena.alloc("b", 16)

    def test_duplicate_name_rejected(self):
        arena = SramArena(capacity=1024)
        arena.alloc("a", 4)
        with pytest.raises(AllocationError):
            arena.alloc("a", 4)

    def test_span_bounds_checked(self):
        arena = SramArena(capacity=1024)
        a = arena.alloc("a", 8)
        with pytest.raises(AllocationError):
            a.span(4, 8)


class TestWeights:
    def test_defaults_are_published(self):
        assert DEFAULT_WEIGHTS["mover_access_32"] == 3.0
        assert DEFAULT_WEIGHTS["thcon_access_32"] == 1.5
        assert DEFAULT_WEIGHTS["thcon_access_128"] == 1.6
        assert DEFAULT_WEIGHTS["tile_ops"] == 1.0
        assert DEFAULT_WEIGHTS["noc_words"] == 0.5
        assert DEFAULT_WEIGHTS["dram_access_32"] == 6.0

    def test_override(self):
        weights = resolve_weights({"tile_ops": 2.5})
        assert weights["tile_ops"] == 2.5
        assert weights["mover_access_32"] == 3.0

    def test_unknown_weight_rejected(self):
        with pytest.raises(SimError):
            resolve_weights({"bogus": 1.0})


class TestLedgerCounting:
    def test_baby_core_copy_counts_both_sides(self):
        core = TensixCore()
        src = core.arena.alloc("src", 1024)
        dst = core.arena.alloc("dst", 1024)
        core.mover_copy(src.span(), dst.span(), "baby_core", 32)
        assert core.ledger.counters["mover_access_32"] == 2048

    def test_thcon_128_copy_counts_quarter(self):
        core = TensixCore()
        src = core.arena.alloc("src", 1024)
        dst = core.arena.alloc("dst", 1024)
        core.mover_copy(src.span(), dst.span(), "thcon", 128)
        assert core.ledger.counters["thcon_access_128"] == 512

    def test_width_upgrade_is_exactly_four_times(self):
        # Replacing a baby/32 contiguous copy by thcon/128 divides that
        # copy's transaction count by exactly four.
        for length in (4, 64, 1024):
            a, b = TensixCore(), TensixCore()
            src32 = a.arena.alloc("s", length)
            dst32 = a.arena.alloc("d", length)
            a.mover_copy(src32.span(), dst32.span(), "baby_core", 32)
            src128 = b.arena.alloc("s", length)
            dst128 = b.arena.alloc("d", length)
            b.mover_copy(src128.span(), dst128.span(), "thcon", 128)
            assert (a.ledger.counters["mover_access_32"]
                    == 4 * b.ledger.counters["thcon_access_128"])

    def test_misaligned_128_raises(self):
        core = TensixCore()
        src = core.arena.alloc("src", 16)
        dst = core.arena.alloc("dst", 16)
        with pytest.raises(AlignmentError):
            core.mover_copy(src.span(0, 6), dst.span(0, 6), "thcon", 128)
        with pytest.raises(AlignmentError):
            core.mover_copy(src.span(1, 4), dst.span(1, 4), "thcon", 128)

    def test_baby_core_cannot_go_wide(self):
        core = TensixCore()
        src = core.arena.alloc("src", 8)
        dst = core.arena.alloc("dst", 8)
        with pytest.raises(SimError):
            core.mover_copy(src.span(), dst.span(), "baby_core", 128)

    def test_dram_side_counts_separately(self):
        core = TensixCore()
        src = core.dram.alloc("in", 128)
        dst = core.arena.alloc("buf", 128)
        core.mover_copy(src.span(), dst.span(), "thcon", 32)
        assert core.ledger.counters["dram_access_32"] == 128
        assert core.ledger.counters["thcon_access_32"] == 128

    def test_gather_scatter_widths(self):
        core = TensixCore()
        table = core.arena.alloc("table", 64)
        table.data[:] = np.arange(64, dtype=np.float32)
        buf = core.arena.alloc("buf", 16)
        idx = np.arange(0, 64, 4)[:16]
        core.mover_gather(table, idx, buf.span(), "thcon", store_width=128)
        assert core.ledger.counters["thcon_access_32"] == 16   # scattered loads
        assert core.ledger.counters["thcon_access_128"] == 4   # contiguous stores
        np.testing.assert_array_equal(buf.data, table.data[idx])

        core.mover_scatter(buf.span(), table, idx, "thcon", load_width=128)
        assert core.ledger.counters["thcon_access_128"] == 8
        assert core.ledger.counters["thcon_access_32"] == 32

    def test_modeled_cost_is_weighted_sum(self):
        ledger = CostLedger()
        ledger.count_tile_ops(10)
        ledger.count_noc_words(100)
        assert ledger.modeled_cost == 10 * 1.0 + 100 * 0.5

    def test_counters_never_decrease(self):
        ledger = CostLedger()
        with pytest.raises(SimError):
            ledger._bump("tile_ops", -1)
