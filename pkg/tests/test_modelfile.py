import pytest

from rcgs import (
    GenParams,
    cgs_mcheck,
    gen_h1,
    gen_h2,
    gen_h3,
    gen_random,
    mcheck,
    parse_formula,
    read_cgs,
    read_model,
    translate,
    validate,
    write_cgs,
    write_model,
)
from rcgs.errors import ModelSyntaxError, ResourceLimit

H1_TEXT = """\
rcgs
# five sensors, threshold three
agents 5
roles 1
states q0 q1
init q0
props p
label q0 :
label q1 : p      # alarm
assign q0 : 1 1 1 1 1
assign q1 : 1 1 1 1 1
actions q0 : 2
actions q1 : 1
trans q0 : r1.a1 >= 3 -> q1
trans q0 : default -> q0
trans q1 : default -> q0
"""


def test_read_h1_text():
    assert read_model(H1_TEXT) == gen_h1(5, 3)


def test_write_h1():
    text = write_model(gen_h1(5, 3))
    assert "trans q0 : r1.a1 >= 3 -> q1" in text
    assert read_model(text) == gen_h1(5, 3)


@pytest.mark.parametrize("model", [gen_h1(3, 2), gen_h2(4, 2), gen_h3(2, 3, 1, 2), gen_h1(1, 0)])
def test_round_trip_generators(model):
    assert read_model(write_model(model)) == model


def test_round_trip_random():
    for seed in range(300):
        m = gen_random(GenParams(seed))
        assert read_model(write_model(m)) == m


def _broken(old, new):
    assert old in H1_TEXT
    return H1_TEXT.replace(old, new)


@pytest.mark.parametrize("text, line", [
    (_broken("assign q1 : 1 1 1 1 1\n", ""), 5),
    (_broken("trans q0 : default -> q0\n", ""), 14),
    (_broken("label q1 : p", "label q1 : z"), 9),
    (_broken("trans q1 : default -> q0", "trans q1 : default -> q7"), 16),
    (_broken("assign q0 : 1 1 1 1 1", "assign q0 : 1 1 1 1"), 10),
    (_broken("actions q0 : 2", "actions q0 : 2 1"), 12),
    (_broken("r1.a1 >= 3", "r1.a3 >= 3"), 14),
    (_broken("r1.a1 >= 3", "r1.a1 => 3"), 14),
    (_broken("init q0", "init q9"), 6),
    (_broken("agents 5", "agents five"), 3),
    (_broken("rcgs\n", "cgs\n"), 1),
    (_broken("trans q0 : r1.a1 >= 3 -> q1\ntrans q0 : default -> q0",
             "trans q0 : default -> q0\ntrans q0 : r1.a1 >= 3 -> q1"), 14),
    (_broken("label q0 :\n", "label q0 :\nfrobnicate q0\n"), 9),
])
def test_read_errors_name_the_line(text, line):
    with pytest.raises(ModelSyntaxError) as info:
        read_model(text)
    assert info.value.line == line


def test_missing_default_is_an_error():
    with pytest.raises(ModelSyntaxError, match="default"):
        read_model(_broken("trans q0 : default -> q0\n", ""))


def test_comments_ignored():
    commented = "\n".join(line + "  # note" if line and not line.startswith("#") else line
                          for line in H1_TEXT.splitlines())
    assert read_model("# leading comment\n\n" + commented) == gen_h1(5, 3)


def test_cgs_export_round_trip():
    m = gen_h1(3, 2)
    text = write_cgs(translate(m), limit=10**6)
    assert sum(1 for line in text.splitlines() if line.startswith("trans q0")) == 8
    back = read_cgs(text)
    for phi in ("<<1,2>>X p", "<<1>>F p", "<<1,2,3>>G !p", "<<>>(!p) U p"):
        assert cgs_mcheck(back, parse_formula(phi))[0] == mcheck(m, parse_formula(phi))[0]


def test_cgs_export_random_round_trip():
    for seed in range(30):
        m = gen_random(GenParams(seed))
        back = read_cgs(write_cgs(translate(m), limit=10**6))
        assert back.moves == translate(m).moves
        for phi in ("<<1>>X p", "<<1>>G q", "<<>>p U q"):
            assert cgs_mcheck(back, parse_formula(phi))[0] == mcheck(m, parse_formula(phi))[0]


def test_cgs_export_refuses_large():
    with pytest.raises(ResourceLimit) as info:
        write_cgs(translate(gen_h1(40, 3)), limit=10**6)
    assert str(2**40) in str(info.value)


def test_cgs_reader_requires_total_table():
    text = write_cgs(translate(gen_h1(2, 1)), limit=100)
    lines = [line for line in text.splitlines() if "(1,2)" not in line]
    with pytest.raises(ModelSyntaxError, match="no transition"):
        read_cgs("\n".join(lines))


def test_generators_validate():
    for n in range(1, 7):
        for k in range(n + 1):
            assert validate(gen_h1(n, k)) == []
            assert validate(gen_h2(n, k)) == []
    for n1, n2 in [(1, 1), (2, 3), (4, 2)]:
        for t1 in range(n1 + 1):
            for t2 in range(n2 + 1):
                assert validate(gen_h3(n1, n2, t1, t2)) == []
