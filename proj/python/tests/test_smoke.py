# Copyright 2026 The windstat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import windstat


def test_pmf_small_n():
    pmf = windstat.winding_pmf(1)
    assert pmf["W"] == [-1, 1]
    assert pmf["p"] == pytest.approx([0.5, 0.5], abs=1e-15)
    two = windstat.winding_pmf(2)
    assert two["p"][1] == pytest.approx(10 / 16, abs=1e-14)


def test_pmf_matches_permutation_sum():
    n = 5
    pmf = windstat.winding_pmf(n)
    for m, p in enumerate(pmf["p"]):
        assert p == pytest.approx(math.comb(n, m) * windstat.r_direct(m, n), abs=1e-12)


def test_closed_forms():
    assert windstat.C2(1, 0.3, 1.0) == pytest.approx(-1.0)
    assert windstat.f2_limit(0.5, 2.0, 0.0) == pytest.approx(-0.2454210902778164)
    assert windstat.generator([0.5], [1.2], 4) == pytest.approx(math.cos(0.7) ** 4)
    assert windstat.fd_correlator([0.4, 1.3], 2) == pytest.approx(windstat.C2(2, 0.4, 1.3), abs=1e-7)
    assert windstat.unfolding_sup_distance(1000, 0.5) < 5e-3


def test_spectrum_is_reproducible_and_paired():
    a = windstat.spectrum(3, "CII", seed=4, draw=2)
    b = windstat.spectrum(3, "CII", seed=4, draw=2)
    assert a == b
    z = np.array(a)
    assert np.allclose(np.sort_complex(z), np.sort_complex(z.conj()), atol=1e-8)


def test_winding_numbers():
    out = windstat.winding_numbers(2, 50, streams=4)
    assert out["mismatches"] == 0
    assert set(out["W"]) <= {-2, 0, 2}


def test_mc_correlator_rotation_average():
    est = windstat.mc_correlator([0.5, 1.9], 3, 4000, streams=4, rotation_average=True)
    assert abs(est["mean"] - windstat.C2(3, 0.5, 1.9)) < 4.5 * est["stderr"]


def test_pfaffian():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    a = x - x.T
    assert windstat.pfaffian(a) ** 2 == pytest.approx(np.linalg.det(a), rel=1e-10)


def test_kitaev_and_errors():
    assert abs(windstat.kitaev_winding(1.0, 1.0, 1.0)) == 1
    assert windstat.kitaev_winding(0.25, 1.0, 1.0) == 0
    with pytest.raises(RuntimeError):
        windstat.kitaev_winding(0.5, 1.0, 1.0)
    with pytest.raises(ValueError):
        windstat.u(0, 3, 1.0)
