import pytest
import qudio as Q
import numpy as np

########## random streams ##########

def test_derive_rng_deterministic():
    a = Q.utils.derive_rng(3, 1, 2).uniform(size=5)
    b = Q.utils.derive_rng(3, 1, 2).uniform(size=5)
    assert np.array_equal(a, b)

def test_derive_rng_keys():
    draws = [Q.utils.derive_rng(*keys).uniform() for keys in [(0,), (1,), (0, 1), (0, 1, 0), (0, 0, 1)]]
    assert len(set(draws)) == len(draws)

def test_derive_rng_trailing_zero_key():
    a = Q.utils.derive_rng(0, 1).uniform(size=4)
    b = Q.utils.derive_rng(0, 1, 0).uniform(size=4)
    c = Q.utils.derive_rng(0, 1, 0, 0).uniform(size=4)
    assert not np.array_equal(a, b)
    assert not np.array_equal(b, c)

def test_node_streams():
    assert Q.utils.node_rng(0, 1, 5).uniform() == Q.utils.derive_rng(0, Q.utils.rng.STREAM_NODE, 1, 5).uniform()
    assert Q.utils.node_rng(0, 1, 5).uniform() != Q.utils.node_rng(0, 2, 5).uniform()
    assert Q.utils.node_rng(0, 1, 5).uniform() != Q.utils.node_rng(0, 1, 6).uniform()
    assert Q.utils.init_rng(0).uniform() != Q.utils.eval_rng(0, 0).uniform()

########## maths ##########

def test_near_equal_split():
    assert Q.utils.near_equal_split(range(7), 3) == [(0, 1, 2), (3, 4), (5, 6)]
    assert Q.utils.near_equal_split([4, 2], 2) == [(4,), (2,)]
    sizes = [len(c) for c in Q.utils.near_equal_split(range(256), 32)]
    assert sizes == [8]*32

def test_clamp_probability():
    assert Q.utils.clamp_probability(-1e-17) == 0.
    assert Q.utils.clamp_probability(1. + 1e-16) == 1.
    assert np.array_equal(Q.utils.clamp_probability(np.array([-0.1, 0.3, 1.2])), [0., 0.3, 1.])

def test_standard_error():
    samples = np.array([[1., 0.], [3., 0.]])
    assert np.allclose(Q.utils.maths.standard_error(samples), [1., 0.])

########## argument checks ##########

def test_check_argument():
    Q.utils.check_argument("mode", "chain", str, ["chain", "ring"])
    with pytest.raises(Q.utils.InvalidArgumentTypeError):
        Q.utils.check_argument("mode", 3, str)
    with pytest.raises(Q.utils.InvalidArgumentValueError):
        Q.utils.check_argument("mode", "star", str, ["chain", "ring"])

def test_check_range():
    Q.utils.check_range("p", 0., 0., 1.)
    Q.utils.check_range("p", 1., 0., 1.)
    with pytest.raises(Q.utils.InvalidRangeArgumentError):
        Q.utils.check_range("p", 1., 0., 1., high_open=True)
    with pytest.raises(Q.utils.InvalidRangeArgumentError):
        Q.utils.check_range("lr", 0., low=0., low_open=True)
    Q.utils.check_range("n", 10**6, low=1)

########## files and logs ##########

def test_file_digest(tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("qudio")
    d1 = Q.utils.file_digest(str(path))
    assert len(d1) == 64
    assert d1 == Q.utils.file_digest(str(path), chunk_size=2)
    path.write_text("qudio!")
    assert Q.utils.file_digest(str(path)) != d1

def test_logger(capsys):
    Q.Logger("test", verbose=False).log("hidden")
    Q.Logger("test", verbose=True).log("shown", 1)
    Q.Logger("test", verbose=False).warn("always")
    out = capsys.readouterr().out
    assert "hidden" not in out
    assert "[test] shown 1" in out
    assert "[test] WARNING always" in out
