from greenmorita.suite import OPERATIONS, Coverage, lemma_ge_oracle, run_suite
from greenmorita.io import dumps


def test_full_suite_passes_with_full_coverage():
    rep = run_suite(trials=20)
    assert rep["ok"]
    assert rep["coverage"]["missing"] == []
    assert rep["coverage"]["checked"]


def test_suite_is_deterministic():
    a = dumps(run_suite(["FIX1", "IND_C_Z2"], trials=10))
    b = dumps(run_suite(["FIX1", "IND_C_Z2"], trials=10))
    assert a == b


def test_seed_changes_report():
    a = dumps(run_suite(["FIX2"], trials=5, seed=1))
    b = dumps(run_suite(["FIX2"], trials=5, seed=2))
    assert a != b


def test_coverage_rejects_unknown_names():
    cov = Coverage()
    try:
        cov.mark("not_an_operation")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown operation accepted")
    assert cov.missing() == list(OPERATIONS)


def test_ge_oracle_on_i2(I2):
    rep = lemma_ge_oracle(I2)
    assert rep["ge_values"] == 29
    assert rep["eq_mismatches"] == rep["assoc_failures"] == 0
