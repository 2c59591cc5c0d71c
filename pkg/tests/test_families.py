import pytest

from supersylow.families import (
    FamilySpec, construct, defect, parse_family, sylow_candidate, table_label,
)
from supersylow.liesuper import check_jacobi, is_oddly_generated, restrict


def dims_formula(text):
    """Independent closed forms for the graded dimensions."""
    s = parse_family(text)
    f, p = s.family, s.params
    if f == "gl":
        m, n = p
        return (m * m + n * n, 2 * m * n)
    if f == "sl":
        m, n = p
        return (m * m + n * n - 1, 2 * m * n)
    if f == "psl":
        n = p[0]
        return (2 * n * n - 2, 2 * n * n)
    if f == "osp":
        m, two_n = p
        k = two_n // 2
        return (m * (m - 1) // 2 + k * (2 * k + 1), m * two_n)
    n = p[0]
    return {
        "q": (n * n, n * n), "sq": (n * n, n * n - 1), "pq": (n * n - 1, n * n),
        "psq": (n * n - 1, n * n - 1), "pe": (n * n, n * n), "spe": (n * n - 1, n * n),
        "counterexample": (n * n, n * n + 1),
    }[f]


NAMES = ["gl(1|1)", "gl(2|3)", "sl(1|2)", "sl(2|3)", "psl(2|2)", "psl(3|3)",
         "osp(1|2)", "osp(3|2)", "osp(2|4)", "osp(4|4)", "osp(5|2)",
         "q(2)", "sq(3)", "pq(2)", "psq(2)", "psq(4)", "pe(3)", "spe(4)",
         "counterexample(2)", "counterexample(3)"]


@pytest.mark.parametrize("name", NAMES)
def test_dimensions_match_closed_forms(name):
    assert construct(parse_family(name)).sdim == dims_formula(name)


@pytest.mark.parametrize("name,expected", [
    ("takiff0(sl2)", (3, 4)),
    ("takiff0(sl2+sl3;d=[1,-1])", (11, 12)),
    ("takiff(sl2*2)", (6, 6)),
    ("so(5)", (10, 0)),
    ("sp(4)", (10, 0)),
])
def test_named_small_algebras(name, expected):
    a = construct(parse_family(name))
    assert a.sdim == expected
    assert check_jacobi(a) == []


def test_parse_round_trip_and_errors():
    s = parse_family("takiff0(sl2⊕sl3; d=[1,-1])")
    assert s == parse_family("takiff0(sl2+sl3;d=[1,-1])")
    assert parse_family(s.label()) == s
    for bad in ["gl(1)", "foo(2)", "osp(2|3)", "psq(0)", "takiff0(sl2;d=[1,2,3])"]:
        with pytest.raises(ValueError):
            parse_family(bad)


@pytest.mark.parametrize("name,d", [
    ("gl(2|3)", 2), ("psl(3|3)", 3), ("osp(5|2)", 1), ("osp(3|4)", 1),
    ("osp(4|4)", 2), ("osp(2|4)", 1), ("osp(8|4)", 2),
])
def test_defect(name, d):
    assert defect(parse_family(name)) == d


SYLOW_DIMS = [
    ("gl(1|1)", (1, 2)), ("sl(1|2)", (1, 2)), ("osp(3|2)", (1, 2)),
    ("osp(5|2)", (1, 2)), ("osp(2|4)", (1, 2)), ("gl(2|2)", (2, 4)),
    ("sl(2|3)", (2, 4)), ("sl(2|4)", (2, 4)), ("osp(4|4)", (2, 4)),
    ("psl(2|2)", (1, 4)), ("psl(3|3)", (2, 6)), ("pe(2)", (3, 4)),
    ("pe(3)", (3, 5)), ("spe(4)", (6, 8)), ("spe(5)", (6, 9)),
    ("psq(3)", (4, 4)), ("psq(4)", (7, 7)), ("psq(5)", (8, 8)),
]


@pytest.mark.parametrize("name,sd", SYLOW_DIMS)
@pytest.mark.parametrize("ordering", ["antidiagonal", "straight"])
def test_sylow_candidate_dims_and_odd_generation(name, sd, ordering):
    k = sylow_candidate(parse_family(name), ordering)
    assert k.sdim == sd
    assert is_oddly_generated(restrict(k))


def test_psq2_candidate_is_not_oddly_generated():
    k = sylow_candidate(parse_family("psq(2)"))
    assert k.sdim == (3, 3)
    assert not is_oddly_generated(restrict(k))


def test_table_labels():
    assert table_label(parse_family("gl(2|3)")) == table_label(parse_family("sl(2|3)"))
    assert "spe(2)" in table_label(parse_family("pe(4)"))
