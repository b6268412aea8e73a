import subprocess
import sys

import pytest

from conftest import FIXTURES
from sepiso.cli import (
    COMMANDS,
    InstanceSyntaxError,
    Options,
    UnknownReference,
    ValidationError,
    main,
    parse_instance,
    run_command,
    serialize_instance,
)
from sepiso.errors import NotAssociative

FIXTURE_FILES = sorted(FIXTURES.glob("*.inst"))


def load(name):
    return parse_instance((FIXTURES / name).read_text())


def report(command, name, **kw):
    return run_command(command, load(name), Options(**kw))


def test_even_weight_check_code():
    rep = report("check-code", "even_weight.inst", codes=["even"])
    assert rep.lines == [
        "command = check-code",
        "code.even.size = 4",
        "code.even.separates_points = true",
        "code.even.strongly_separates_points = false",
        "code.even.strongly_separates_points.witness = x0 x1",
        "code.even.pointwise_dense = true",
        "code.even.controllable = false",
        "code.even.controllable.witness.f = a a e",
        "code.even.controllable.witness.D1 = {x0}",
        "code.even.controllable.witness.D2 = {x1}",
    ]
    assert rep.exit_status == 0


def test_repetition_check_code():
    text = report("check-code", "repetition.inst").text
    assert "code.rep.separates_points = false" in text
    assert "code.rep.controllable = true" in text


def test_swap_inversion_decompose():
    rep = report("decompose", "z3_swap_inversion.inst", oracle=True)
    assert "hom.swapinv.h(y0) = x1" in rep.lines
    assert "hom.swapinv.omega(y0)(a) = b" in rep.lines
    assert "hom.swapinv.inverse_consistent = true" in rep.lines
    assert "hom.swapinv.oracle_agreement = true" in rep.lines
    assert rep.exit_status == 0


def test_decompose_errors_exit_2():
    rep = report("decompose", "collapse.inst")
    assert "hom.collapse.error = NullFunctional: point functional at x1 is null" in rep.lines
    assert rep.lines[-1].startswith("hom.merge.error = NotSeparating")
    assert rep.exit_status == 2


def test_equivalent_negative_exit_1():
    rep = report("equivalent", "even_weight.inst", codes=["even", "rep3"])
    assert "equivalent = false" in rep.lines
    assert rep.exit_status == 1


def test_props_report():
    rep = report("props", "klein_weighted.inst")
    assert "hom.twist.all_pass = true" in rep.lines


def test_oracle_supports_report():
    rep = report("oracle-supports", "even_weight.inst")
    assert rep.exit_status == 0
    assert any(line.startswith("hom.swap01.") for line in rep.lines)


def test_unknown_selection():
    rep = report("check-code", "even_weight.inst", codes=["nope"])
    assert rep.exit_status == 2


def test_not_associative_is_validation_error():
    text = """[group M]
elements = e a b c d
table =
e a b c d
a e c d b
b d e a c
c b d e a
d c a b e
"""
    with pytest.raises(ValidationError) as exc:
        parse_instance(text)
    assert isinstance(exc.value.cause, NotAssociative)
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "text, error",
    [
        ("[group]\n", InstanceSyntaxError),
        ("elements = e a\n", InstanceSyntaxError),
        ("[code c]\ngroup = G\nspace = X\ngenerators =\na\n", UnknownReference),
        ("[group G]\nelements = e a\ntable =\ne a\na e\n[group G]\nelements = e\ntable =\ne\n", InstanceSyntaxError),
    ],
)
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_instance(text)


def test_map_must_cover_generators():
    text = (FIXTURES / "collapse.inst").read_text().replace("e a -> e e\n", "")
    with pytest.raises(ValidationError):
        parse_instance(text)


@pytest.mark.parametrize("path", FIXTURE_FILES, ids=lambda p: p.name)
def test_round_trip(path):
    inst = parse_instance(path.read_text())
    text = serialize_instance(inst)
    again = parse_instance(text)
    assert serialize_instance(again) == text
    assert again.codes == inst.codes
    assert again.homs == inst.homs


@pytest.mark.parametrize("path", FIXTURE_FILES, ids=lambda p: p.name)
@pytest.mark.parametrize("command", COMMANDS)
def test_reports_are_deterministic(path, command):
    first = run_command(command, parse_instance(path.read_text()), Options(oracle=True)).text
    second = run_command(command, parse_instance(path.read_text()), Options(oracle=True)).text
    assert first == second


def test_main_writes_report(capsys):
    status = main(["check-hom", str(FIXTURES / "klein_weighted.inst")])
    out = capsys.readouterr().out
    assert status == 0
    assert "hom.twist.biseparating = true" in out
    assert out.endswith("exit = 0\n")


def test_main_missing_file(capsys):
    assert main(["check-code", str(FIXTURES / "absent.inst")]) == 2


def test_format_command(capsys):
    path = FIXTURES / "even_weight.inst"
    assert main(["format", str(path)]) == 0
    out = capsys.readouterr().out
    assert out == serialize_instance(parse_instance(path.read_text()))


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sepiso", "check-code", str(FIXTURES / "repetition.inst")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "code.rep.separates_points = false" in proc.stdout
