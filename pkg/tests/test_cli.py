import json

import pytest

from satkit import formats
from satkit.catalog import (
    cable_pattern,
    clasp_pattern,
    core_pattern,
    figure_eight,
    trefoil,
    winding_two_three_operator,
    zigzag_pattern,
)
from satkit.cli import run
from satkit.diagram import unknot
from satkit.patterns import misframed_satellite


@pytest.fixture
def files(tmp_path):
    paths = {}

    def write(name, text):
        p = tmp_path / name
        p.write_text(text + "\n")
        paths[name] = str(p)
        return str(p)

    write("trefoil.pd", formats.serialize_diagram(trefoil()))
    write("fig8.pd", formats.serialize_diagram(figure_eight()))
    write("unknot.pd", formats.serialize_diagram(unknot()))
    write("core.pat", formats.serialize_pattern(core_pattern()))
    write("cable23.pat", formats.serialize_pattern(cable_pattern(2, 3)))
    write("zigzag.pat", formats.serialize_pattern(zigzag_pattern()))
    write("clasp.pat", formats.serialize_pattern(clasp_pattern()))
    write("w23.sl", formats.serialize_string_link(winding_two_three_operator()))
    return paths


def test_round_trip_formats():
    for obj, ser, par in [
        (trefoil(), formats.serialize_diagram, formats.parse_diagram),
        (core_pattern(), formats.serialize_pattern, formats.parse_pattern),
        (winding_two_three_operator(), formats.serialize_string_link, formats.parse_string_link),
    ]:
        text = ser(obj)
        again = ser(par(text))
        assert text == again


def test_named_components_round_trip():
    from satkit.catalog import hopf_link
    from satkit.diagram import Diagram

    h = hopf_link()
    named = Diagram(h.crossings, h.components, ("first", "second"))
    text = formats.serialize_diagram(named)
    assert "N[first,second]" in text
    back = formats.parse_diagram(text)
    assert back.names == ("first", "second")


def test_load_path_unknown_extension(tmp_path):
    from satkit.errors import ParseError

    p = tmp_path / "thing.xyz"
    p.write_text("X[1,2,2,1] C[(1,2)]")
    with pytest.raises(ParseError):
        formats.load_path(p)


def test_framed_link_text_round_trip():
    from satkit.surgery import FramedLink

    fl = FramedLink(trefoil(), (3,), ("companion-handle",))
    text = formats.serialize_framed_link(fl)
    back = formats.parse_framed_link(text)
    assert back.framings == fl.framings
    assert back.roles == fl.roles
    assert formats.serialize_framed_link(back) == text


from hypothesis import given, settings, strategies as st


@st.composite
def _random_closures(draw):
    strands = draw(st.integers(min_value=2, max_value=4))
    length = draw(st.integers(min_value=1, max_value=6))
    word = [
        draw(st.sampled_from([1, -1])) * draw(st.integers(min_value=1, max_value=strands - 1))
        for _ in range(length)
    ]
    from satkit.catalog import braid_closure

    return braid_closure(strands, word)


@settings(max_examples=30, deadline=None)
@given(_random_closures())
def test_parse_serialize_round_trip_random(d):
    text = formats.serialize_diagram(d)
    again = formats.parse_diagram(text)
    from satkit.diagram import diagrams_equal

    assert diagrams_equal(d, again)
    assert formats.serialize_diagram(again) == text


def test_structured_round_trips():
    from satkit.surgery import FramedLink, zero_surgery

    objs = [
        (trefoil(), formats.diagram_to_obj),
        (cable_pattern(2, 3), formats.pattern_to_obj),
        (zero_surgery(trefoil()), formats.framed_link_to_obj),
        (winding_two_three_operator(), formats.string_link_to_obj),
        (winding_two_three_operator().link, formats.string_link_to_obj),
    ]
    for obj, encoder in objs:
        doc = json.loads(json.dumps(encoder(obj)))
        back = formats.obj_to_any(doc)
        assert type(back).__name__ == type(obj).__name__
        assert encoder(back) == encoder(obj)


def test_parse_error_position():
    from satkit.errors import ParseError

    with pytest.raises(ParseError) as err:
        formats.parse_diagram("X[1,2,3] C[(1,2,3)]")
    assert "position" in str(err.value)


def test_invariants_command(files, capsys):
    code = run(["invariants", files["trefoil.pd"]])
    out = capsys.readouterr().out
    assert code == 0
    assert "determinant: 3" in out
    assert "t^2" in out


def test_invariants_structured_deterministic(files, capsys):
    code = run(["--format", "structured", "invariants", files["trefoil.pd"]])
    first = json.loads(capsys.readouterr().out)
    code2 = run(["--format", "structured", "invariants", files["trefoil.pd"]])
    second = json.loads(capsys.readouterr().out)
    assert code == code2 == 0
    first.pop("timing_ms")
    second.pop("timing_ms")
    assert first == second
    assert first["schema"] == "satkit-report/1"


def test_satellite_command(files, tmp_path, capsys):
    out_file = str(tmp_path / "sat.pd")
    code = run(["satellite", files["cable23.pat"], files["trefoil.pd"], "-o", out_file])
    assert code == 0
    d = formats.load_path(out_file)
    assert d.is_knot()
    capsys.readouterr()


def test_satellite_command_structured_output(files, tmp_path, capsys):
    out_file = str(tmp_path / "sat.json")
    assert run(["satellite", files["core.pat"], files["trefoil.pd"], "-o", out_file]) == 0
    doc = json.loads((tmp_path / "sat.json").read_text())
    assert doc["type"] == "diagram"
    d = formats.load_path(out_file)
    assert d.is_knot()
    capsys.readouterr()


def test_winding_and_strong_winding(files, capsys):
    assert run(["winding", files["cable23.pat"]]) == 0
    assert "winding: 2" in capsys.readouterr().out
    assert run(["strong-winding", files["core.pat"]]) == 0
    out = capsys.readouterr().out
    assert "verified" in out
    assert run(["--limit", "300", "strong-winding", files["clasp.pat"]]) == 0
    assert "inconclusive" in capsys.readouterr().out


def test_check_formula_command(files, capsys):
    assert run(["check-satellite-formula", files["cable23.pat"], files["fig8.pd"]]) == 0
    capsys.readouterr()


def test_pattern_r_and_links(files, tmp_path, capsys):
    out_file = str(tmp_path / "r.pat")
    assert run(["pattern-r", files["core.pat"], files["trefoil.pd"], "-o", out_file]) == 0
    capsys.readouterr()
    link_file = str(tmp_path / "core.link.pd")
    assert run(["to-link", files["core.pat"], "-o", link_file]) == 0
    capsys.readouterr()
    assert run(["from-link", link_file, "--circle", "1"]) == 0
    out = capsys.readouterr().out
    assert "winding: 1" in out


def test_surgery_commands(files, capsys):
    assert run(["surgery", "zero", files["trefoil.pd"]]) == 0
    out = capsys.readouterr().out
    assert "F[0]" in out
    assert run(["surgery", "pipeline", files["zigzag.pat"], files["trefoil.pd"], "--emit-trace"]) == 0
    out = capsys.readouterr().out
    assert "diagram_certificate: True" in out


def test_surgery_pipeline_rejects_winding_zero(files, capsys):
    code = run(["surgery", "pipeline", files["clasp.pat"], files["trefoil.pd"]])
    assert code == 1


def test_slink_commands(files, tmp_path, capsys):
    assert run(["slink", "winding", files["w23.sl"]]) == 0
    out = capsys.readouterr().out
    assert "[2, 3]" in out and "winding_gcd: 1" in out
    assert run(["slink", "closure", files["w23.sl"]]) == 0
    capsys.readouterr()
    par_file = str(tmp_path / "par.sl")
    assert run(["slink", "parallel", files["w23.sl"], "--copies", "2,-1", "-o", par_file]) == 0
    capsys.readouterr()
    assert run(["slink", "reduce", files["w23.sl"], "--copies", "2,-1"]) == 0
    out = capsys.readouterr().out
    assert "winding: 1" in out
    assert run(["slink", "infect", files["w23.sl"], files["trefoil.pd"]]) == 0
    capsys.readouterr()
    assert run(["slink", "stack", files["w23.sl"], files["w23.sl"]]) == 0
    capsys.readouterr()
    assert run(["slink", "fuse", par_file]) == 0
    capsys.readouterr()


def test_exit_codes(files, tmp_path, capsys):
    bad = tmp_path / "bad.pd"
    bad.write_text("X[1,2,3,an] C[(1)]\n")
    assert run(["invariants", str(bad)]) == 2
    # domain error: invariants of a two-component link
    hopf = tmp_path / "hopf.pd"
    from satkit.catalog import hopf_link

    hopf.write_text(formats.serialize_diagram(hopf_link()) + "\n")
    assert run(["invariants", str(hopf)]) == 1
    capsys.readouterr()


def test_corpus_empty(tmp_path, capsys):
    assert run(["corpus", str(tmp_path)]) == 0
    capsys.readouterr()


def test_corpus_small_pass(files, tmp_path, capsys):
    d = tmp_path / "corpus"
    d.mkdir()
    for name in ("trefoil.pd", "unknot.pd", "core.pat", "zigzag.pat"):
        (d / name).write_text((tmp_path / name).read_text())
    code = run(["--limit", "10000", "corpus", str(d)])
    out = capsys.readouterr().out
    assert code == 0, out
    assert "satellite-formula" in out


def test_corpus_negative_control(files, tmp_path, capsys):
    d = tmp_path / "corpus2"
    d.mkdir()
    (d / "trefoil.pd").write_text((tmp_path / "trefoil.pd").read_text())
    p = cable_pattern(2, 3)
    k = trefoil()
    fixture = formats.satellite_fixture_to_obj(p, k, misframed_satellite(p, k))
    (d / "bad.json").write_text(json.dumps(fixture))
    code = run(["corpus", str(d), "--suites", "satellite-formula"])
    out = capsys.readouterr().out
    assert code == 1
    assert "bad.json" in out
    assert "declared=" in out and "expected=" in out


def test_corpus_skips_unreadable(tmp_path, capsys):
    d = tmp_path / "corpus3"
    d.mkdir()
    (d / "broken.pd").write_text("X[1,1,1]")
    code = run(["corpus", str(d)])
    err = capsys.readouterr().err
    assert code == 0
    assert "skipped" in err
