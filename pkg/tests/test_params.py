import pytest

from approxhe import params
from approxhe.errors import FormatError, ParamsError
from approxhe.params import CkksParams, modulus_chain


def make(**kw):
    base = dict(M=8, N=4, delta=64, p=4, q0=5, L=4, sigma_err=3.2, h=2)
    base.update(kw)
    return CkksParams(**base)


def test_toy_chain():
    assert modulus_chain(make()) == [5, 20, 80, 320, 1280]


def test_single_level_chain():
    assert modulus_chain(make(p=2, q0=1, L=0)) == [1]


def test_chain_matches_direct_products():
    got = modulus_chain(make(p=3, q0=7, L=3))
    expected = [7]
    for _ in range(3):
        expected.append(expected[-1] * 3)
    assert got == expected == [7, 21, 63, 189]


def test_chain_consecutive_ratio_is_p():
    p = make(p=7, q0=11, L=6)
    chain = modulus_chain(p)
    assert all(chain[i] * 7 == chain[i + 1] for i in range(6))
    assert chain == sorted(set(chain))


def test_large_chain_has_no_cap():
    p = make(M=16, N=8, p=2**60, q0=2**61, L=5)
    assert p.q_L == 2**361


@pytest.mark.parametrize(
    "changes, message",
    [
        (dict(M=6, N=3), "power of two"),
        (dict(M=2, N=1), "power of two"),
        (dict(N=8), "M/2"),
        (dict(h=9), "exceeds N"),
        (dict(delta=0), "delta"),
        (dict(p=1), "p must"),
        (dict(q0=0), "q0"),
        (dict(L=-1), "L must"),
        (dict(sigma_err=0.0), "sigma_err"),
        (dict(h=-1), "h must"),
        (dict(P=0), "P must"),
    ],
)
def test_validate_rejects(changes, message):
    with pytest.raises(ParamsError, match=message):
        make(**changes)


def test_default_P_is_q_L():
    assert make().P == 1280
    assert make(P=7).P == 7


def test_presets_validate():
    for preset in params.PRESETS.values():
        params.validate(preset)
    assert params.TOY.chain() == [5, 20, 80, 320, 1280]


def test_text_round_trip(tmp_path):
    p = make(sigma_err=3.25, P=99)
    path = tmp_path / "p.txt"
    params.save(p, path)
    assert path.read_text().splitlines()[6] == "sigma_err=3.25"
    assert params.load(path) == p


def test_malformed_params_file():
    with pytest.raises(FormatError):
        params.loads("M=8\nN=4\n")
    with pytest.raises(FormatError):
        params.loads("M=eight\n")
    with pytest.raises(FormatError):
        params.loads("bogus=1\n")
