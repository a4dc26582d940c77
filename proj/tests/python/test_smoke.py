import numpy as np
import pytest

import kuboando


def test_evaluate_closed_forms():
    a = np.array([[1.0, 0.0], [0.0, 1.0]])
    b = np.array([[3.0, 0.0], [0.0, 3.0]])
    out = kuboando.evaluate("mean arithmetic", a, b)
    assert np.allclose(out, 2.0 * np.eye(2), atol=1e-12)
    harm = kuboando.evaluate("mean harmonic", np.array([[1.0]]), np.array([[3.0]]))
    assert harm.shape == (1, 1)
    assert abs(harm[0, 0] - 1.5) < 1e-12


def test_evaluate_respects_order():
    rng = np.random.default_rng(5)
    g = rng.normal(size=(3, 3))
    a = g @ g.T + 0.5 * np.eye(3)
    b = a + np.eye(3)
    geo = kuboando.evaluate("mean geometric", a, b)
    am = kuboando.evaluate("mean arithmetic", a, b)
    # geometric <= arithmetic in the Loewner order
    assert np.linalg.eigvalsh(am - geo).min() > -1e-9


def test_norm_and_is_mean():
    assert abs(kuboando.norm("scale 3 mean harmonic") - 3.0) < 1e-12
    assert abs(kuboando.norm("parallel") - 0.5) < 1e-12
    assert kuboando.is_mean("mean geometric")
    assert not kuboando.is_mean("scale 2 mean geometric")


def test_function_value_and_induced_scalar():
    assert abs(kuboando.function_value("mean harmonic", 3.0) - 1.5) < 1e-12
    assert abs(kuboando.induced_scalar("mean geometric", 4.0, 1.0) - 2.0) < 1e-9
    assert kuboando.induced_scalar("mean harmonic", 0.0, 5.0) == 0.0


def test_convert_round_trip():
    assert kuboando.convert("mean harmonic", "function") == "moebius 1"
    measure = kuboando.convert("mean arithmetic", "measure")
    assert measure == "atom0 0.5\natomInf 0.5\n"
    spec = kuboando.convert("mean geometric", "function")
    assert abs(kuboando.function_value("function " + spec, 4.0) - 2.0) < 1e-9


def test_catalog():
    names = kuboando.catalog()
    assert "mean arithmetic" in names
    assert "parallel" in names
    assert len(names) == 5


def test_verify_small_run_passes():
    reports = kuboando.verify(trials=25, dim_lo=1, dim_hi=3)
    assert len(reports) >= 20
    assert all(r["pass"] for r in reports)
    assert any("soundness" in r["property"] for r in reports)


def test_errors_surface_as_kuboando_error():
    with pytest.raises(kuboando.KuboAndoError):
        kuboando.norm("mean banana")
    with pytest.raises(kuboando.KuboAndoError):
        kuboando.evaluate(
            "mean arithmetic", np.array([[1.0, 2.0], [2.0, 1.0]]), np.eye(2)
        )
    with pytest.raises(kuboando.KuboAndoError):
        kuboando.evaluate("mean arithmetic", np.eye(2), np.eye(3))
