"""Acceptance suite.

Each test covers one numbered criterion and reports a PASS/FAIL line through
the ``criterion`` fixture (see conftest.py); the lines are collected again in
the terminal summary.
"""
import math
import os
import subprocess
import sys
import time

import pytest

import closure as ref
from semireg.alternets import alternet_digraph, alternet_partition
from semireg.certificate import Certificate
from semireg.finder import (find_semiregular_4valent_solvable, find_semiregular_8valent,
                            find_semiregular_digraph4, lift_semiregular_coprime,
                            semiregular_abelian_normal, semiregular_prime_power_degree)
from semireg.graphs import (blowup_group, circulant, complete_graph, corpus_pair, directed_cycle,
                            oriented_blowup, tiny_automorphism_group)
from semireg.oracle import all_semiregular, verify_certificate
from semireg.permcore import (BlockAction, Degree8Class, Partition, PermGroup, Permutation,
                              classify_transitive_degree8, is_pi_number, kernel_on_partition,
                              minimal_blocks, prime_power_base, sylow_subgroup)

CORPUS = ["complete:9", "paley:17", "blowup:c3x4", "blowup:c4,4", "blowup:c5,4",
          "blowup:c6,4", "blowup:c3,4,sym"]
TIME_LIMIT = 10.0
ORACLE_LIMIT = 10**4


def P(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def conjugated(G, r):
    """A random conjugate of G inside the symmetric group."""
    s = Permutation(ref.random_perm(G.degree, r))
    return PermGroup(G.degree, [s.inverse() * g * s for g in G.generators])


def random_word(G, r, length=30):
    x = G.identity
    for _ in range(length):
        x = x * r.choice(G.generators)
    return x


def wreath(m, k):
    """S_m wr S_k in its imprimitive action on m*k points."""
    n = m * k
    gens = []
    if m > 1:
        gens += [P(n, (0, 1)), P(n, tuple(range(m)))]
    if k > 1:
        gens.append(Permutation([(x + m) % n for x in range(n)]))
        gens.append(Permutation([x + m if x < m else x - m if x < 2 * m else x for x in range(n)]))
    return PermGroup(n, gens)


def affine_f2_cube():
    """AGL(3,2) on the 8 vectors of F_2^3 (vector v is the integer with bits v)."""
    def linear(cols):
        images = []
        for x in range(8):
            y = 0
            for i in range(3):
                if x >> i & 1:
                    y ^= cols[i]
            images.append(y)
        return Permutation(images)
    gens = [Permutation([x ^ 1 for x in range(8)]),
            linear([2, 4, 1]), linear([1 | 2, 2, 4])]
    return PermGroup(8, gens)


def affine_f3_plane():
    """ASL(2,3) on the 9 vectors (a, b) of F_3^2, numbered 3a + b."""
    def affine(m, c):
        return Permutation([3 * ((m[0] * (x // 3) + m[1] * (x % 3) + c[0]) % 3)
                            + (m[2] * (x // 3) + m[3] * (x % 3) + c[1]) % 3 for x in range(9)])
    return PermGroup(9, [affine((1, 0, 0, 1), (1, 0)), affine((1, 1, 0, 1), (0, 0)),
                         affine((0, 1, 2, 0), (0, 0))])


AMBIENT = {
    4: [PermGroup.symmetric(4), wreath(2, 2)],
    8: [PermGroup.symmetric(8), wreath(2, 4), wreath(4, 2), affine_f2_cube(),
        PermGroup(8, [Permutation([(x + 1) % 8 for x in range(8)]),
                      Permutation([(3 * x) % 8 for x in range(8)])])],
    9: [PermGroup.symmetric(9), wreath(3, 3), affine_f3_plane()],
}


def random_transitive(n, r):
    while True:
        A = r.choice(AMBIENT[n])
        G = conjugated(PermGroup(n, [random_word(A, r), random_word(A, r)]), r)
        if G.is_transitive():
            return G


# -- 1, 2: corpus ---------------------------------------------------------------

@pytest.fixture(scope="module")
def corpus_runs():
    runs = {}
    for spec in CORPUS:
        g, G = corpus_pair(spec)
        t0 = time.perf_counter()
        cert = find_semiregular_8valent(g, G)
        runs[spec] = (g, G, cert, time.perf_counter() - t0)
    return runs


def test_criterion_1_corpus(criterion, corpus_runs):
    slowest = max(corpus_runs.values(), key=lambda run: run[3])[3]
    criterion(1, f"{len(CORPUS)} corpus graphs certified, slowest {slowest:.2f}s")
    for spec, (g, G, cert, elapsed) in corpus_runs.items():
        assert cert.verified, spec
        assert verify_certificate(cert, g, G), spec
        assert ref.is_semiregular(cert.element.images) and not cert.element.is_identity()
        assert elapsed <= TIME_LIMIT, (spec, elapsed)


def test_criterion_2_branch_coverage(criterion, corpus_runs):
    criterion(2, "PrimePowerDegree, AbelianNormal, QuasiprimitiveOracle and digraph branch seen")
    traces = {spec: run[2].branch_trace for spec, run in corpus_runs.items()}
    seen = {tag for trace in traces.values() for tag in trace}
    assert "PrimePowerDegree" in traces["blowup:c4,4"]
    assert "AbelianNormal" in traces["paley:17"]
    assert "QuasiprimitiveOracle" in traces["complete:9"]
    assert seen & {"DigraphRecursion(0)", "NotLooselyAttached"}
    odd = traces["blowup:c3,4,sym"]
    assert "DigraphRecursion(0)" in odd and "NotLooselyAttached" in odd


# -- 3: prime-power degree ------------------------------------------------------

def test_criterion_3_prime_power_degree(criterion):
    criterion(3, "240 random transitive groups of degree 4, 8, 9")
    r = ref.rng(3)
    checked_by_oracle = 0
    for i in range(240):
        n = (4, 8, 9)[i % 3]
        G = random_transitive(n, r)
        cert = semiregular_prime_power_degree(G)
        z = cert.element
        assert ref.is_semiregular(z.images) and not z.is_identity()
        S = sylow_subgroup(G, prime_power_base(n))
        assert S.contains(z)
        assert all(z * s == s * z for s in S.generators)
        if G.order() <= ORACLE_LIMIT:
            assert z in all_semiregular(G)
            checked_by_oracle += 1
    assert checked_by_oracle >= 50


# -- 4: abelian normal subgroups ------------------------------------------------

def _rotation(n, shift=1, offset=0, total=None):
    total = total or n
    return Permutation([offset + (x - offset + shift) % n if offset <= x < offset + n else x
                        for x in range(total)])


def _multiplier(n, a, offset=0, total=None):
    total = total or n
    return Permutation([offset + (a * (x - offset)) % n if offset <= x < offset + n else x
                        for x in range(total)])


def abelian_normal_pair(r):
    kind = r.randrange(3)
    if kind == 0:
        # Z_n extended by some of its multipliers
        n = r.randrange(3, 16)
        units = [a for a in range(2, n) if math.gcd(a, n) == 1]
        mults = r.sample(units, min(len(units), r.randrange(3)))
        G = PermGroup(n, [_rotation(n)] + [_multiplier(n, a) for a in mults])
        N = PermGroup(n, [_rotation(n)])
    elif kind == 1:
        # Z_a x Z_b acting regularly, extended by inversion
        a, b = r.randrange(2, 6), r.randrange(2, 6)
        n = a * b
        tx = Permutation([((x // b + 1) % a) * b + x % b for x in range(n)])
        ty = Permutation([(x // b) * b + (x % b + 1) % b for x in range(n)])
        neg = Permutation([((-(x // b)) % a) * b + (-x) % b for x in range(n)])
        N = PermGroup(n, [tx, ty])
        G = PermGroup(n, [tx, ty] + ([neg] if r.random() < 0.7 else []))
    else:
        # (Z_m extended by multipliers) wr S_2, with N the base translations
        m = r.randrange(2, 9)
        n = 2 * m
        units = [a for a in range(2, m) if math.gcd(a, m) == 1]
        swap = Permutation([(x + m) % n for x in range(n)])
        gens = [_rotation(m, total=n), swap] + [_multiplier(m, a, total=n)
                                               for a in r.sample(units, min(len(units), 1))]
        G = PermGroup(n, gens)
        N = PermGroup(n, [_rotation(m, total=n), _rotation(m, offset=m, total=n)])
    s = Permutation(ref.random_perm(G.degree, r))
    conj = lambda H: PermGroup(H.degree, [s.inverse() * h * s for h in H.generators])
    return conj(G), conj(N)


def test_criterion_4_abelian_normal(criterion):
    criterion(4, "120 abelian normal pairs and the D_4 witness")
    D4 = PermGroup(4, [P(4, (0, 1, 2, 3)), P(4, (0, 2))])
    N = PermGroup(4, [P(4, (0, 2)), P(4, (1, 3))])
    assert semiregular_abelian_normal(D4, N).element == P(4, (0, 2), (1, 3))
    r = ref.rng(4)
    for _ in range(120):
        G, N = abelian_normal_pair(r)
        assert N.is_abelian() and N.is_normal_in(G) and len(N.orbits()) <= 2
        x = semiregular_abelian_normal(G, N).element
        assert N.contains(x) and not x.is_identity()
        assert ref.is_semiregular(x.images)


# -- 5: coprime lifting ---------------------------------------------------------

def coprime_instance(r):
    m = r.choice([3, 5, 7, 9, 15])
    if r.random() < 0.5:
        # cyclic group of order 2^a m acting regularly, blocks are residues mod m
        q = 2 ** r.randrange(1, 4)
        n = q * m
        G = PermGroup(n, [_rotation(n)])
        P_ = Partition.from_blocks(n, [[x for x in range(n) if x % m == b] for b in range(m)])
    else:
        # C_q wr C_m: q-cycle on the first block, blocks permuted cyclically
        q = r.choice([2, 4])
        n = q * m
        G = PermGroup(n, [_rotation(q, total=n), Permutation([(x + q) % n for x in range(n)])])
        P_ = Partition.from_blocks(n, [range(b * q, b * q + q) for b in range(m)])
    return G, kernel_on_partition(G, P_), P_


def test_criterion_5_coprime_lift(criterion):
    criterion(5, "120 coprime lifts and the C_6 example")
    C6 = PermGroup(6, [P(6, (0, 1, 2, 3, 4, 5))])
    K = PermGroup(6, [P(6, (0, 3), (1, 4), (2, 5))])
    blocks = Partition.from_blocks(6, [[0, 3], [1, 4], [2, 5]])
    assert lift_semiregular_coprime(C6, K, C6.generators[0], blocks).element == P(6, (0, 2, 4), (1, 3, 5))
    r = ref.rng(5)
    done = 0
    while done < 120:
        G, K, P_ = coprime_instance(r)
        g = random_word(G, r, r.randrange(1, 20))
        image = BlockAction(G, P_).image(g)
        if image.is_identity():
            continue
        h = lift_semiregular_coprime(G, K, g, P_).element
        assert h.order() == image.order()
        assert ref.is_semiregular(h.images)
        done += 1


# -- 6: degree-8 classification -------------------------------------------------

def test_criterion_6_degree8_classification(criterion):
    criterion(6, "520 transitive groups of degree 8, no imprimitive group outside {2,3}")
    r = ref.rng(6)
    imprimitive = 0
    for _ in range(520):
        G = random_transitive(8, r)
        cls = classify_transitive_degree8(G)
        if cls is Degree8Class.IMPRIMITIVE_TWO_THREE:
            imprimitive += 1
            blocks = minimal_blocks(G)
            assert all(blocks.is_invariant_under(g) for g in G.generators)
            order = len(ref.closure([g.images for g in G.generators], 8))
            assert order == G.order() and is_pi_number(order, (2, 3))
    assert imprimitive >= 100


# -- 7: 4-valent solvable -------------------------------------------------------

def test_criterion_7_four_valent(criterion):
    criterion(7, "K_5 with p=5 and the octahedron with p=3")
    K5 = PermGroup(5, [P(5, (0, 1, 2, 3, 4)), P(5, (1, 2, 4, 3))])
    octahedron = circulant(6, {1, 2, 4, 5})
    cases = [(complete_graph(5), K5, 5), (octahedron, tiny_automorphism_group(octahedron), 3)]
    for graph, G, p in cases:
        cert = find_semiregular_4valent_solvable(graph, G, p)
        assert cert.order == p and cert.element.order() == p
        assert ref.is_semiregular(cert.element.images)
        assert cert.element in all_semiregular(G)
        assert verify_certificate(cert, graph, G)


# -- 8: 4-valent digraphs -------------------------------------------------------

def test_criterion_8_digraphs(criterion):
    criterion(8, "oriented blowups of C_3, C_5, C_6")
    for k in (3, 5, 6):
        dg = oriented_blowup(k, 4)
        G = PermGroup(4 * k, blowup_group(k, 4, "symmetric").generators[:-1])
        cert = find_semiregular_digraph4(dg, G)
        assert cert.verified and verify_certificate(cert, dg, G)
        assert alternet_digraph(alternet_partition(dg))[0] == directed_cycle(k)
        if k == 3:
            assert cert.element == P(12, (0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11))


# -- 9: oracle soundness --------------------------------------------------------

def _swap_images(x, i, j):
    images = list(x.images)
    images[i], images[j] = images[j], images[i]
    return Permutation(images)


def test_criterion_9_oracle_soundness(criterion, corpus_runs):
    criterion(9, "corpus witnesses in the oracle list, 50 of 50 mutations rejected")
    for g, G, cert, _ in corpus_runs.values():
        if G.order() <= ORACLE_LIMIT:
            assert cert.element in all_semiregular(G)
    r = ref.rng(9)
    runs = list(corpus_runs.values())
    rejected = 0
    for t in range(50):
        g, G, cert, _ = runs[t % len(runs)]
        i, j = r.sample(range(g.n), 2)
        bad = Certificate(_swap_images(cert.element, i, j), cert.order, cert.cycle_length,
                          cert.branch_trace, True)
        rejected += not verify_certificate(bad, g, G)
    assert rejected == 50


# -- 10: determinism ------------------------------------------------------------

_DUMP = """
from semireg.finder import find_semiregular_8valent
from semireg.graphs import corpus_pair
for spec in {specs!r}:
    print(find_semiregular_8valent(*corpus_pair(spec)).to_json())
"""


def test_criterion_10_determinism(criterion):
    criterion(10, "two separate runs give byte-identical certificate JSON")
    outputs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run([sys.executable, "-c", _DUMP.format(specs=CORPUS)],
                              capture_output=True, env=env, check=True)
        outputs.append(proc.stdout)
    assert outputs[0] and outputs[0] == outputs[1]
