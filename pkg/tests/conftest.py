import pytest

from patseries.bench import BenchConfig, run_bench


@pytest.fixture(scope="session")
def mg_grid():
    """Full method x depth grid on the chaotic benchmark series, with wall time."""
    import time

    cfg = BenchConfig(
        source="mackey-glass",
        methods=("pt", "lp", "psf"),
        depths=(1, 2, 3, 4, 5),
        downsample_factors=(1,),
        n=10000,
    )
    t0 = time.perf_counter()
    result = run_bench(cfg)
    elapsed = time.perf_counter() - t0
    return result, elapsed


@pytest.fixture(scope="session")
def mg_downsample_grid():
    """Pattern-tree-only grid across downsampling factors."""
    cfg = BenchConfig(
        source="mackey-glass",
        methods=("pt",),
        depths=(1, 2, 3, 4, 5),
        downsample_factors=(1, 2, 4, 8),
        n=10000,
    )
    return run_bench(cfg)
