import numpy as np
import pytest

from src.core.config.manager import DEFAULT_CONFIG
from src.core.numerics.errors import ConvergenceError
from src.core.numerics.quadrature import QuadratureSettings
from src.core.numerics.special_functions import DunklParameter
from src.core.services.verification import (
    CHECKS,
    CheckSpec,
    SuiteContext,
    VerificationSuite,
    select_checks,
)

FAST_CHECKS = [
    "orthonormality",
    "mehler_series",
    "mass_identities",
    "heat_semigroup",
    "dunkl_kernel_eigen",
    "dunkl_kernel_integral",
    "subordination",
    "hilbert_coefficients",
    "adjoint_identity",
    "boundary_recovery",
    "coefficient_decay",
    "pde_residuals",
]


@pytest.fixture
def context():
    return SuiteContext(DunklParameter(0.5), QuadratureSettings())


def test_registry():
    """Names are unique and slow checks are flagged."""
    names = [c.name for c in CHECKS]
    assert len(names) == len(set(names))
    assert {"hilbert_pv", "norm_growth"} <= {c.name for c in CHECKS if c.slow}
    assert set(FAST_CHECKS) <= set(names)


def test_select_checks():
    assert [c.name for c in select_checks(["mehler_series", "orthonormality"])] == [
        "orthonormality",
        "mehler_series",
    ]
    assert all(not c.slow for c in select_checks(include_slow=False))
    with pytest.raises(ValueError, match="unknown checks"):
        select_checks(["nonexistent"])


def test_rng_streams_are_independent_of_order(context):
    first = context.rng("a").standard_normal(3)
    context.rng("b").standard_normal(3)
    np.testing.assert_array_equal(context.rng("a").standard_normal(3), first)


@pytest.mark.parametrize("k", [0.0, 0.5, 1.5])
def test_fast_checks_pass(k):
    context = SuiteContext(DunklParameter(k), QuadratureSettings())
    report = VerificationSuite(context, select_checks(FAST_CHECKS)).run()
    assert report.passed, [f"{r.name}: {r.residual:.3e} {r.detail}" for r in report.failures]
    assert len(report) == len(FAST_CHECKS)


def test_raising_check_is_recorded_as_failure(context):
    def broken(ctx):
        raise ConvergenceError("did not converge")

    checks = [
        CheckSpec("broken", "always raises", 1.0, broken),
        CheckSpec("fine", "always passes", 1.0, lambda ctx: 0.5),
    ]
    report = VerificationSuite(context, checks).run()
    assert not report.passed
    failure = report.failures[0]
    assert failure.name == "broken"
    assert "ConvergenceError" in failure.detail
    assert [r.name for r in report] == ["broken", "fine"]


def test_parallel_run_matches_sequential(context):
    checks = select_checks(["orthonormality", "mehler_series", "hilbert_coefficients"])
    sequential = VerificationSuite(context, checks).run().to_dict()
    parallel = VerificationSuite(context, checks, workers=3).run().to_dict()
    assert parallel == sequential


def test_check_detail_is_kept(context):
    report = VerificationSuite(context, [CheckSpec("d", "a", 1.0, lambda ctx: (0.1, "note"))]).run()
    assert report.records[0].detail == "note"


def test_configured_tolerance_replaces_the_registered_one():
    context = SuiteContext(DunklParameter(0.5), QuadratureSettings(), tolerances={"fine": 0.1})
    report = VerificationSuite(context, [CheckSpec("fine", "a", 1.0, lambda ctx: 0.5)]).run()
    record = report.records[0]
    assert record.tolerance == 0.1
    assert not record.passed


def test_default_config_lists_every_check():
    assert DEFAULT_CONFIG["checks"] == {c.name: c.tolerance for c in CHECKS}


def test_boundary_recovery_follows_its_tolerance():
    """A tighter tolerance shrinks the time step with it, so the check still passes."""
    context = SuiteContext(
        DunklParameter(1.5), QuadratureSettings(), tolerances={"boundary_recovery": 1e-6}
    )
    record = VerificationSuite(context, select_checks(["boundary_recovery"])).run().records[0]
    assert record.tolerance == 1e-6
    assert record.passed, record.residual


@pytest.mark.slow
def test_full_suite_passes(context):
    report = VerificationSuite(context, workers=4).run()
    assert report.passed, [f"{r.name}: {r.residual:.3e} {r.detail}" for r in report.failures]
