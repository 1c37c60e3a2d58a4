import pytest
import qudio as Q
import numpy as np
import scipy.sparse as sp
from utils import *

def test_lr_schedule():
    assert Q.optimize.lr_schedule(0.01, 0.1, 40, 0) == 0.01
    assert Q.optimize.lr_schedule(0.01, 0.1, 40, 39) == 0.01
    assert abs(Q.optimize.lr_schedule(0.01, 0.1, 40, 40) - 0.001) < 1e-15
    assert abs(Q.optimize.lr_schedule(0.01, 0.1, 40, 85) - 1e-4) < 1e-16
    assert Q.optimize.lr_schedule(0.4, 1.0, 40, 1000) == 0.4

def test_sgd_parameters_defaults():
    params = Q.optimize.SGDParameters()
    assert params.learning_rate == 0.01
    assert params.momentum == 0.9
    assert abs(params.learning_rate_at(40) - 0.001) < 1e-15

@pytest.mark.parametrize("kwargs", [
    {"learning_rate" : 0.},
    {"momentum" : 1.},
    {"momentum" : -0.1},
    {"decay_factor" : 0.},
    {"decay_factor" : 1.5},
    {"decay_period" : 0},
])
def test_sgd_parameters_invalid(kwargs):
    with pytest.raises(Q.utils.InvalidRangeArgumentError):
        Q.optimize.SGDParameters(**kwargs)

def test_sgd_step_no_momentum():
    theta, v = Q.optimize.sgd_step(np.array([1., 2.]), np.array([0.5, -1.]), 0.1, np.zeros(2), 0.)
    assert np.allclose(theta, [0.95, 2.1])
    assert np.allclose(v, [0.5, -1.])

def test_sgd_step_momentum():
    theta = np.zeros(2)
    v = np.zeros(2)
    g = np.array([1., 0.])
    theta, v = Q.optimize.sgd_step(theta, g, 0.1, v, 0.9)
    theta, v = Q.optimize.sgd_step(theta, g, 0.1, v, 0.9)
    # v1 = g, v2 = 0.9 g + g
    assert np.allclose(v, [1.9, 0.])
    assert np.allclose(theta, [-0.29, 0.])

def test_sgd_quadratic_converges():
    theta, v = np.array([3., -2.]), np.zeros(2)
    for _ in range(500):
        theta, v = Q.optimize.sgd_step(theta, 2*theta, 0.05, v, 0.5)
    assert np.linalg.norm(theta) < 1e-8

def test_inverse_power_diagonal():
    A = sp.diags([1., 2., 5.]).tocsc()
    val, vec = Q.optimize.inverse_power_method(A, shift=0.9)
    assert abs(val - 1.) < 1e-10
    assert abs(abs(vec[0]) - 1.) < 1e-6

def test_ground_state_inverse_power():
    rng = np.random.default_rng(0)
    M = rng.normal(size=(6,6))
    A = M + M.T
    expected = np.linalg.eigvalsh(A)[0]
    val, vec = Q.optimize.ground_state_inverse_power(sp.csc_matrix(A), shift=expected - 1.)
    assert abs(val - expected) < 1e-8
    assert abs(np.linalg.norm(vec) - 1.) < 1e-12
