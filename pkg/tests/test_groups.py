import itertools
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncgraph import catalog
from ncgraph.errors import DomainError, GroupSizeError
from ncgraph.groups import (
    Context,
    center,
    centralizer,
    centralizer_partition,
    closure_from_generators,
    commuting_probability,
    conjugacy_classes,
    derived_subgroup,
    direct_product,
    distinct_centralizer_count,
    element_orders,
    from_elements,
    is_ac_group,
    is_solvable,
    quotient_by_center,
    recognize_small_family,
    signature,
)

from .conftest import spec

SMALL_SPECS = [
    "family=dihedral;m=3", "family=dihedral;m=4", "family=dihedral;m=6", "family=generalized_quaternion;n=2",
    "family=generalized_quaternion;n=3", "family=quasidihedral;n=4", "family=metacyclic_M;m=5;n=2",
    "family=metacyclic_M;m=4;n=3", "family=frobenius20", "family=order_pq;p=3;q=7",
    "family=extraspecial_p3;p=3;type=exponent-p", "family=extraspecial_p3;p=3;type=exponent-p2",
    "family=hanaki_theta;n=2", "family=hanaki_p;n=1;p=2", "family=symmetric;n=4", "family=alternating5",
    "family=gl2;q=3", "family=direct_product;abelian=2;base=dihedral;m=3",
]


def perm_compose(x, y):
    return tuple(x[i] for i in y)


S3 = closure_from_generators(Context((0, 1, 2), perm_compose), [(1, 2, 0), (1, 0, 2)], name="S3")


def brute_center(G):
    return sorted(z for z in range(G.order) if all(G.mul(z, x) == G.mul(x, z) for x in range(G.order)))


def brute_classes(G):
    seen, classes = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        cls = {G.mul(G.mul(g, x), G.inv(g)) for g in range(G.order)}
        seen |= cls
        classes.append(cls)
    return classes


def test_closure_examples():
    assert S3.order == 6 and not S3.is_abelian
    trivial = closure_from_generators(Context((0, 1, 2), perm_compose), [(0, 1, 2)])
    assert trivial.order == 1
    assert catalog.psl2_2k(2).order == 60
    S3.validate()


def test_closure_respects_cap():
    with pytest.raises(GroupSizeError):
        closure_from_generators(Context((0, 1, 2, 3), perm_compose), [(1, 2, 3, 0), (1, 0, 2, 3)], cap=10)


def test_from_elements_matches_closure():
    elems = list(itertools.permutations(range(3)))
    G = from_elements(elems, perm_compose, name="S3")
    assert G.order == 6 and signature(G) == signature(S3)


def test_center_examples():
    D8 = catalog.dihedral(4)
    assert len(center(D8)) == 2
    assert sorted(center(catalog.generalized_quaternion(2)).tolist()) == brute_center(catalog.generalized_quaternion(2))
    Z6 = catalog.cyclic(6)
    assert len(center(Z6)) == 6


def test_centralizer_examples():
    D8 = catalog.dihedral(4)
    assert len(centralizer(D8, D8.identity)) == 8
    sizes = Counter(len(centralizer(D8, x)) for x in range(8))
    assert sizes == Counter({8: 2, 4: 6})
    QD = catalog.quasidihedral(4)
    assert max(len(centralizer(QD, x)) for x in range(16) if len(centralizer(QD, x)) < 16) == 8


@pytest.mark.parametrize("text,sizes", [
    ("family=dihedral;m=4", [4, 4, 4]),
    ("family=frobenius20", [4, 4, 4, 4, 4, 5]),
    ("family=order_pq;p=2;q=3", [2, 2, 2, 3]),
    ("family=quasidihedral;n=4", [4, 4, 4, 4, 8]),
])
def test_centralizer_partition_sizes(text, sizes):
    part = centralizer_partition(spec(text).build())
    assert part.sizes == sizes


def test_partition_of_abelian_group_is_an_error():
    with pytest.raises(DomainError):
        centralizer_partition(catalog.cyclic(5))


def test_partition_is_deterministic():
    G = catalog.dihedral(6)
    a, b = centralizer_partition(G), centralizer_partition(G)
    assert a == b
    keys = [(len(x), min(set(x) - set(a.center))) for x in a.centralizers]
    assert keys == sorted(keys)


def test_ac_examples():
    assert all(is_ac_group(catalog.dihedral(m)) for m in range(3, 13))
    assert is_ac_group(catalog.gl2(3))
    assert not is_ac_group(catalog.symmetric(4))  # C((12)(34)) is dihedral of order 8


def test_direct_product_examples():
    D6xZ2 = direct_product(catalog.dihedral(3), catalog.cyclic(2))
    assert D6xZ2.order == 12 and len(center(D6xZ2)) == 2
    D6x1 = direct_product(catalog.dihedral(3), catalog.cyclic(1))
    assert np.array_equal(D6x1.mul_table, catalog.dihedral(3).mul_table)
    A5, A5xZ2 = catalog.alternating5(), direct_product(catalog.alternating5(), catalog.cyclic(2))
    assert A5xZ2.order == 120
    assert centralizer_partition(A5xZ2).sizes == [2 * s for s in centralizer_partition(A5).sizes]
    with pytest.raises(GroupSizeError):
        direct_product(A5, A5, cap=1000)


def test_quotient_examples():
    Q = quotient_by_center(catalog.generalized_quaternion(2))
    assert Q.order == 4 and sorted(element_orders(Q)) == [1, 2, 2, 2]
    M = quotient_by_center(catalog.metacyclic_M(5, 2))
    assert M.order == 10 and recognize_small_family(M).kind == "dihedral"
    assert quotient_by_center(catalog.cyclic(6)).order == 1


def test_recognition_examples():
    assert str(recognize_small_family(catalog.abelian((2, 2)))) == "ElementaryAbelian(2^2)"
    assert recognize_small_family(catalog.frobenius20()).kind == "sz2"
    assert str(recognize_small_family(S3)) == "Dihedral(6)"
    assert recognize_small_family(catalog.cyclic(4)).kind == "other"
    assert recognize_small_family(catalog.generalized_quaternion(2)).kind == "other"


def test_commuting_probability_examples():
    assert commuting_probability(catalog.dihedral(4)) == Fraction(5, 8)
    assert commuting_probability(catalog.cyclic(7)) == 1
    assert commuting_probability(catalog.alternating5()) == Fraction(1, 12)
    assert commuting_probability(catalog.frobenius20()) == Fraction(1, 4)


def test_centralizer_count_examples():
    assert distinct_centralizer_count(catalog.cyclic(5)) == 1
    assert distinct_centralizer_count(catalog.dihedral(4)) == 4
    assert distinct_centralizer_count(S3) == 5


def test_element_orders_examples():
    assert sorted(element_orders(catalog.cyclic(4))) == [1, 2, 4, 4]
    assert sorted(element_orders(catalog.generalized_quaternion(2))) == [1, 2] + [4] * 6
    assert sorted(element_orders(catalog.dihedral(3))) == [1, 2, 2, 2, 3, 3]


def test_solvability():
    assert not is_solvable(catalog.alternating5())
    assert is_solvable(catalog.symmetric(4))
    assert len(derived_subgroup(catalog.alternating5())) == 60
    assert len(derived_subgroup(S3)) == 3


@pytest.mark.parametrize("text", SMALL_SPECS)
def test_group_core_invariants(text):
    G = spec(text).build()
    G.validate()
    Z = center(G)
    assert sorted(Z.tolist()) == brute_center(G)
    assert G.order % len(Z) == 0
    classes = brute_classes(G)
    assert commuting_probability(G) == Fraction(len(classes), G.order)
    assert sorted(map(sorted, classes)) == sorted(map(sorted, conjugacy_classes(G)))
    Q = quotient_by_center(G)
    Q.validate()
    QQ = quotient_by_center(Q)
    assert G.order % QQ.order == 0
    if is_ac_group(G):
        part = centralizer_partition(G)
        assert part.pairwise_meets_center()
        z = len(Z)
        assert sum(s - z for s in part.sizes) == G.order - z
        for X in part.centralizers:
            assert set(Z.tolist()) <= set(X)
        owners = Counter(x for X in part.centralizers for x in X if x not in set(Z.tolist()))
        assert set(owners.values()) == {1} and len(owners) == G.order - z


@given(st.sampled_from(SMALL_SPECS), st.data())
def test_brute_force_centralizers(text, data):
    G = spec(text).build()
    x = data.draw(st.integers(0, G.order - 1))
    brute = [y for y in range(G.order) if G.mul(x, y) == G.mul(y, x)]
    assert centralizer(G, x).tolist() == brute


@given(st.sampled_from(SMALL_SPECS), st.data())
def test_ac_flag_matches_centralizer_commutativity(text, data):
    G = spec(text).build()
    Z = set(center(G).tolist())
    brute = all(
        all(G.mul(a, b) == G.mul(b, a) for a in C for b in C)
        for C in (centralizer(G, x).tolist() for x in range(G.order) if x not in Z)
    )
    assert is_ac_group(G) == brute
