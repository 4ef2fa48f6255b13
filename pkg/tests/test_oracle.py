import pytest
from hypothesis import given, settings, strategies as st

import closure as ref
from semireg.certificate import Certificate
from semireg.errors import BoundExceeded
from semireg.graphs import corpus_pair, cycle_graph
from semireg.oracle import all_semiregular, brute_force_semiregular, verify_certificate
from semireg.permcore import PermGroup, Permutation


def P(n, *cycles):
    return Permutation.from_cycles(n, cycles)


S3 = PermGroup.symmetric(3)
D4 = PermGroup(4, [P(4, (0, 1, 2, 3)), P(4, (0, 2))])


def test_brute_force_examples():
    rep = brute_force_semiregular(S3)
    assert rep.found == P(3, (0, 1, 2)) and rep.elements_scanned == 4
    rep = brute_force_semiregular(PermGroup.trivial(3))
    assert rep.found is None and rep.exhausted and not rep.budget_exceeded


def test_brute_force_s9():
    rep = brute_force_semiregular(PermGroup.symmetric(9))
    assert rep.found is not None and rep.elements_scanned < 10**6
    assert not any(rep.found(i) == i for i in range(9))


def test_brute_force_budget_is_reported():
    rep = brute_force_semiregular(PermGroup(6, [P(6, (0, 1)), P(6, (2, 3))]), budget=2)
    assert rep.found is None and rep.budget_exceeded and not rep.exhausted


def test_all_semiregular_examples():
    # the two reflections without fixed points are semiregular as well
    assert set(all_semiregular(D4)) == {P(4, (0, 2), (1, 3)), P(4, (0, 1, 2, 3)), P(4, (0, 3, 2, 1)),
                                        P(4, (0, 1), (2, 3)), P(4, (0, 3), (1, 2))}
    C4 = PermGroup(4, [P(4, (0, 1, 2, 3))])
    assert len(all_semiregular(C4)) == 3
    assert set(all_semiregular(S3)) == {P(3, (0, 1, 2)), P(3, (0, 2, 1))}
    with pytest.raises(BoundExceeded):
        all_semiregular(PermGroup.symmetric(7), budget=100)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_oracle_agrees_with_naive_filter(seed):
    r = ref.rng(seed)
    n = r.choice([3, 4, 5, 6])
    gens = [ref.random_perm(n, r) for _ in range(r.choice([1, 2]))]
    G = PermGroup(n, [Permutation(g) for g in gens])
    naive = {x for x in ref.closure(gens, n) if x != ref.ident(n) and ref.is_semiregular(x)}
    found = all_semiregular(G)
    assert {x.images for x in found} == naive
    rep = brute_force_semiregular(G)
    assert (rep.found is None) == (not naive)
    # closed under inversion and coprime powers
    for x in found:
        assert x.inverse() in found
        o = x.order()
        for k in range(2, o):
            if __import__("math").gcd(k, o) == 1:
                assert x ** k in found


def _cert(x, trace=("X",)):
    return Certificate(x, x.order(), x.cycle_lengths()[0], trace, True)


def test_verify_certificate_reasons():
    g = cycle_graph(4)
    assert verify_certificate(_cert(P(4, (0, 1, 2, 3))), g, D4).reason == "ok"
    ident = Certificate(Permutation.identity(4), 1, 1, ("X",), True)
    assert verify_certificate(ident, g, D4).reason == "NonIdentity"
    assert verify_certificate(_cert(P(4, (0, 1))), g, PermGroup.symmetric(4)).reason == "NotSemiregular"
    assert verify_certificate(_cert(P(4, (0, 1, 3, 2))), g, PermGroup.symmetric(4)).reason == "NotAutomorphism"
    C4 = PermGroup(4, [P(4, (0, 1, 2, 3))])
    assert verify_certificate(_cert(P(4, (0, 1), (2, 3))), g, C4).reason == "NotMember"
    lying = Certificate(P(4, (0, 1, 2, 3)), 2, 4, ("X",), True)
    assert verify_certificate(lying, g, D4).reason == "OrderMismatch"
    lying = Certificate(P(4, (0, 1, 2, 3)), 4, 2, ("X",), True)
    assert verify_certificate(lying, g, D4).reason == "CycleLengthMismatch"
    assert verify_certificate(_cert(P(5, (0, 1, 2, 3, 4))), g, D4).reason == "DegreeMismatch"


def test_verify_finder_output_on_corpus():
    from semireg.finder import find_semiregular_8valent
    for spec in ("paley:17", "blowup:c3x4", "blowup:c4,4"):
        g, G = corpus_pair(spec)
        assert verify_certificate(find_semiregular_8valent(g, G), g, G)
