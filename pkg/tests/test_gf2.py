"""GF(2) kernel: compiled extension vs pure fallback vs naive oracle."""

import random

import pytest

import oracle
from nilgrowth import gf2, gf2_fallback


def _int_to_bits(v, nbits):
    return [(v >> i) & 1 for i in range(nbits)]


def _bits_to_int(bits):
    out = 0
    for i, b in enumerate(bits):
        if b:
            out |= 1 << i
    return out


@pytest.fixture(autouse=True)
def _restore_backend():
    yield
    gf2.set_backend("auto")


def test_backend_name_reports_a_known_mode():
    assert gf2.backend_name() in ("ext", "py")


def test_set_backend_rejects_junk():
    with pytest.raises(ValueError):
        gf2.set_backend("cuda")


@pytest.mark.parametrize("mode", ["py", "ext"])
@pytest.mark.parametrize("nrows,nbits", [(5, 8), (20, 16), (40, 64), (60, 130)])
def test_rref_matches_naive_oracle(mode, nrows, nbits):
    if mode == "ext" and gf2.backend_name() != "ext":
        pytest.skip("extension not built")
    gf2.set_backend(mode)
    rng = random.Random(nrows * 1000 + nbits)
    rows = [rng.getrandbits(nbits) for _ in range(nrows)]
    basis, pivots = gf2.rref(rows, nbits)
    naive = oracle.rref_mod([_int_to_bits(r, nbits) for r in rows], 2)
    assert len(basis) == len(naive)
    # note: package pivots count from bit 0, the oracle lists rows by column
    assert sorted(_bits_to_int(r) for r in naive) == sorted(basis)
    for b, p in zip(basis, pivots):
        assert b >> p & 1
        assert all(other >> p & 1 == 0 for other in basis if other != b)


@pytest.mark.parametrize("mode", ["py", "ext"])
def test_nullspace_is_the_full_orthogonal_complement(mode):
    if mode == "ext" and gf2.backend_name() != "ext":
        pytest.skip("extension not built")
    gf2.set_backend(mode)
    rng = random.Random(7)
    nbits = 24
    rows = [rng.getrandbits(nbits) for _ in range(10)]
    basis, _ = gf2.rref(rows, nbits)
    null = gf2.nullspace(rows, nbits)
    assert len(null) == nbits - len(basis)
    for v in null:
        assert all(gf2.parity(r, v) == 0 for r in rows)
    nb, _ = gf2.rref(null, nbits)
    assert len(nb) == len(null)  # independent


def test_reduce_vector_detects_membership():
    rows = [0b1011, 0b0110]
    basis, pivots = gf2.rref(rows, 4)
    assert gf2.reduce_vector(0b1011 ^ 0b0110, basis, pivots) == 0
    assert gf2.reduce_vector(0b0001, basis, pivots) != 0


def test_parity():
    assert gf2.parity(0b1101, 0b1001) == 0
    assert gf2.parity(0b1101, 0b0001) == 1


def test_pack_unpack_roundtrip():
    rng = random.Random(3)
    rows = [rng.getrandbits(200) for _ in range(9)]
    assert gf2.unpack_rows(gf2.pack_rows(rows, 200)) == rows


def test_backends_agree_on_random_inputs():
    if gf2.backend_name() != "ext":
        pytest.skip("extension not built")
    rng = random.Random(11)
    for _ in range(20):
        nbits = rng.randrange(1, 300)
        rows = [rng.getrandbits(nbits) for _ in range(rng.randrange(1, 40))]
        gf2.set_backend("py")
        r_py = gf2.rref(rows, nbits)
        gf2.set_backend("ext")
        assert gf2.rref(rows, nbits) == r_py
        assert gf2.nullspace(rows, nbits) == gf2_fallback.nullspace(rows, nbits)
