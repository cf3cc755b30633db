import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from wirelab import Root, build_multiset_optimized, build_reduced, build_standard, grow
from wirelab import vm
from wirelab.model import BuilderKind


def test_compile_standard_pair():
    prog = vm.compile(build_standard([1, 2]))
    assert len(prog.instructions) == 3
    assert [ins.attach for ins in prog.instructions[:2]] == [Root(0), Root(0)]
    assert prog.instructions[2].attach == 0


def test_compile_single():
    assert len(vm.compile_network(build_standard([7])).instructions) == 1


def test_text_form():
    text = vm.compile(build_standard([1, 2])).to_text()
    assert text == (
        "RWM 1\n"
        "INPUT 1,2\n"
        "KIND standard\n"
        "PLAN 0\n"
        "ADD_WIRE id=0 len=1 attach=ROOT:0 elem=0\n"
        "ADD_WIRE id=1 len=2 attach=ROOT:0 elem=1\n"
        "ADD_WIRE id=2 len=2 attach=0 elem=1\n"
    )
    assert vm.parse_program(text) == vm.compile(build_standard([1, 2]))


def test_forward_reference_rejected():
    prog = vm.compile(build_standard([1, 2]))
    swapped = dataclasses.replace(prog, instructions=(prog.instructions[2],) + prog.instructions[:2])
    with pytest.raises(vm.VMError, match="undefined attachment"):
        vm.execute(swapped)


def test_duplicate_id_rejected():
    prog = vm.compile(build_standard([1, 2]))
    dup = dataclasses.replace(prog, instructions=prog.instructions + (prog.instructions[0],))
    with pytest.raises(vm.VMError, match="duplicate id"):
        vm.execute(dup)


def test_bad_length_rejected():
    prog = vm.compile(build_standard([1, 2]))
    bad = dataclasses.replace(prog.instructions[0], length=0)
    with pytest.raises(vm.VMError, match="bad length"):
        vm.execute(dataclasses.replace(prog, instructions=(bad,) + prog.instructions[1:]))


def test_empty_program_with_header():
    prog = vm.RwmProgram((3,), BuilderKind.STANDARD, (0,), ())
    with pytest.raises(vm.VMError, match="program/header mismatch"):
        vm.execute(prog)


def test_length_must_match_input():
    prog = vm.compile(build_standard([1, 2]))
    wrong = dataclasses.replace(prog.instructions[1], length=5)
    with pytest.raises(vm.VMError, match="invalid network"):
        vm.execute(dataclasses.replace(prog, instructions=(prog.instructions[0], wrong, prog.instructions[2])))


def test_compile_rejects_invalid_network():
    net = build_standard([1, 2])
    broken = dataclasses.replace(net, wires=(dataclasses.replace(net.wires[0], end_row=9),) + net.wires[1:])
    with pytest.raises(vm.VMError, match="invalid network"):
        vm.compile(broken)


@pytest.mark.parametrize("text, needle", [
    ("RWM 1\nINPUT 1\nKIND standard\nPLAN 0\nADD_WIRE id=0 len=1\n", "malformed"),
    ("RWM 2\nINPUT 1\nKIND standard\nPLAN 0\n", "unsupported"),
    ("INPUT 1\nKIND standard\nPLAN 0\n", "missing header"),
    ("RWM 1\nINPUT 1\nKIND bogus\nPLAN 0\n", "bad header"),
    ("RWM 1\nJUMP 3\n", "unknown directive"),
])
def test_parse_errors(text, needle):
    with pytest.raises(vm.VMError, match=needle):
        vm.parse_program(text)


@given(st.lists(st.integers(1, 20), min_size=1, max_size=10), st.integers(1, 20))
@settings(max_examples=40, deadline=None)
def test_round_trip(values, extra):
    nets = [build_standard(values), build_reduced(values), build_multiset_optimized(values),
            grow(build_standard(values), extra)]
    for net in nets:
        prog = vm.compile(net)
        assert len(prog.instructions) == len(net.wires)
        assert vm.execute(prog) == net
        assert vm.execute(vm.parse_program(prog.to_text())) == net
