import json

import pytest

from meyer_signature import __version__
from meyer_signature.cli import main


def run(capsys, *argv) -> tuple[int, dict | None, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if code in (0, 1) and captured.out else None
    return code, payload, captured.err


def test_invariants(capsys):
    code, payload, _ = run(capsys, "invariants", "--degree", "4")
    assert code == 0
    assert payload["command"] == "invariants"
    assert payload["exact"] is True
    assert payload["inputs"] == {"degree": 4}

    result = payload["result"]
    assert result["genus"] == 3
    assert result["ambient_dim_N"] == 14
    assert result["discriminant_degree"] == 27
    assert result["h1_order"] == 9
    assert result["lasso_value"] == "-5/9"


def test_invariants_cubic(capsys):
    _, payload, _ = run(capsys, "invariants", "--degree", "3")
    assert payload["result"]["genus"] == 1
    assert payload["result"]["discriminant_degree"] == 12
    assert payload["result"]["lasso_value"] == "-2/3"


def test_invariants_conic(capsys):
    _, payload, _ = run(capsys, "invariants", "--degree", "2")
    assert payload["result"]["lasso_value"] is None
    assert payload["result"]["lasso_reason"] == "Pi(2) is trivial"


def test_invariants_bad_degree(capsys):
    code = main(["invariants", "--degree", "1"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert "at least 2" in captured.err


def test_output_is_deterministic(capsys):
    main(["invariants", "--degree", "5"])
    first = capsys.readouterr().out
    main(["invariants", "--degree", "5"])
    assert capsys.readouterr().out == first


@pytest.mark.parametrize(
    "a,b,expected",
    [
        ([[1, 0], [0, 1]], [[1, 0], [0, 1]], 0),
        ([[1, 1], [0, 1]], [[1, 1], [0, 1]], -1),
        ([[1, 1], [0, 1]], [[1, -1], [0, 1]], 0),
        ([[0, -1], [1, 0]], [[0, -1], [1, 0]], 2),
    ],
)
def test_meyer(capsys, a, b, expected):
    code, payload, _ = run(
        capsys, "meyer", "--genus", "1", "--matrix-a", json.dumps(a), "--matrix-b", json.dumps(b)
    )
    assert code == 0
    assert payload["result"]["tau"] == expected


def test_meyer_form(capsys):
    _, payload, _ = run(
        capsys, "meyer", "--matrix-a", "[[1,1],[0,1]]", "--matrix-b", "[[1,1],[0,1]]", "--form"
    )
    result = payload["result"]
    assert result["dim_V"] == 3
    assert (result["n_plus"], result["n_minus"], result["n_zero"]) == (1, 0, 2)


def test_meyer_from_file(capsys, tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"genus": 1, "a": [[0, -1], [1, 0]], "b": [[0, -1], [1, 0]]}))
    _, payload, _ = run(capsys, "meyer", "--file", str(path))
    assert payload["result"]["tau"] == 2


def test_meyer_not_symplectic(capsys):
    code, _, err = run(capsys, "meyer", "--matrix-a", "[[1,1],[1,1]]", "--matrix-b", "[[1,0],[0,1]]")
    assert code == 3
    assert "M^T J M = J" in err


def test_meyer_wrong_size(capsys):
    code, _, _ = run(capsys, "meyer", "--genus", "2", "--matrix-a", "[[1,0],[0,1]]", "--matrix-b", "[[1,0],[0,1]]")
    assert code == 3


def test_meyer_bad_json(capsys):
    code, _, err = run(capsys, "meyer", "--matrix-a", "[[1,", "--matrix-b", "[[1,0],[0,1]]")
    assert code == 2
    assert "not valid JSON" in err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["chern", "1", "4"], [-7, 19, -15]),
        (["chern", "1", "3"], [0, 12, -8]),
        (["chern", "--bidegree", "0", "3"], [0, 0, 0]),
    ],
)
def test_chern(capsys, argv, expected):
    code, payload, _ = run(capsys, *argv)
    assert code == 0
    result = payload["result"]
    assert [result["c1_squared"], result["c2"], result["signature"]] == expected


def test_chern_zero_bidegree(capsys):
    code, _, _ = run(capsys, "chern", "0", "0")
    assert code == 2


@pytest.fixture
def germ_file(tmp_path):
    path = tmp_path / "germs.json"
    path.write_text(
        json.dumps([{"type": "type_i", "count": 26}, {"type": "hyperelliptic", "count": 1}])
    )
    return path


def test_locsig_total(capsys, germ_file):
    code, payload, _ = run(capsys, "locsig", "total", "--germs", str(germ_file))
    assert code == 0
    assert payload["command"] == "locsig total"
    assert payload["result"]["signature"] == "-14"
    assert payload["result"]["euler"] == 26


def test_locsig_total_empty(capsys):
    _, payload, _ = run(capsys, "locsig", "total")
    assert payload["result"]["signature"] == "0"


def test_locsig_solve(capsys, tmp_path):
    path = tmp_path / "known.json"
    path.write_text(json.dumps([{"type": "type_i", "count": 26}]))
    _, payload, _ = run(capsys, "locsig", "solve", "--germs", str(path), "--total-sign", "-14")
    assert payload["result"]["loc_sig"] == "4/9"


def test_locsig_malformed(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    code, _, _ = run(capsys, "locsig", "total", "--germs", str(path))
    assert code == 2

    code, _, _ = run(capsys, "locsig", "total", "--germs", str(tmp_path / "missing.json"))
    assert code == 2


def test_locsig_euler(capsys):
    _, payload, _ = run(capsys, "locsig", "euler", "--c2", "18", "--genus", "3")
    assert payload["result"]["type_i_count"] == 26

    code, _, _ = run(capsys, "locsig", "euler", "--c2", "2", "--genus", "3", "--other-euler", "20")
    assert code == 4


@pytest.mark.parametrize(
    "argv,loc_sig",
    [
        (["hyperelliptic"], "4/9"),
        (["type-ii", "--m", "9"], "1/3"),
        (["pencil", "--degree", "3"], "-2/3"),
    ],
)
def test_locsig_replay(capsys, argv, loc_sig):
    _, payload, _ = run(capsys, "locsig", "replay", *argv)
    assert payload["result"]["loc_sig"] == loc_sig
    assert payload["result"]["consistent"] is True


@pytest.mark.parametrize(
    "poly,expected",
    [("y^2*z-x^3", "degenerate"), ("y^2*z−x^2*(x+z)", "nodal")],
)
def test_curve_classify(capsys, poly, expected):
    code, payload, _ = run(capsys, "curve", "classify", "--poly", poly, "--point", "[0:0:1]")
    assert code == 0
    assert payload["result"]["class"] == expected


def test_curve_classify_smooth_point(capsys):
    code, _, _ = run(capsys, "curve", "classify", "--poly", "x^3+y^3+z^3", "--point", "1,-1,0")
    assert code == 4


def test_curve_parse_error(capsys):
    code, _, _ = run(capsys, "curve", "singular", "--poly", "x^2+y", "--point", "0,0,1")
    assert code == 2


def test_curve_rejects_python_expressions(capsys, tmp_path):
    path = tmp_path / "curve.txt"
    path.write_text("__import__('os').remove('curve.txt')")
    code, _, err = run(capsys, "curve", "conic", "--poly", f"@{path}")
    assert code == 2
    assert "Unexpected characters" in err
    assert path.exists()


def test_curve_needs_point(capsys):
    code, _, _ = run(capsys, "curve", "singular", "--poly", "x^2")
    assert code == 2


def test_curve_conic(capsys):
    _, payload, _ = run(capsys, "curve", "conic", "--poly", "y*z-x^2")
    assert payload["result"]["smooth"] is True
    assert payload["result"]["determinant"] == "1/4"
    assert payload["result"]["singular_points"] == []


def test_curve_poly_from_file(capsys, tmp_path):
    path = tmp_path / "cusp.txt"
    path.write_text("y^2*z - x^3\n")
    _, payload, _ = run(capsys, "curve", "hessian", "--poly", f"@{path}", "--point", "0,0,1")
    assert payload["result"] == {"chart": "z", "determinant": "0"}


def test_curve_gradient_and_tangent(capsys):
    _, payload, _ = run(capsys, "curve", "gradient", "--poly", "x^2+y^2+z^2", "--point", "1,2,3")
    assert payload["result"]["gradient"] == ["2", "4", "6"]

    _, payload, _ = run(capsys, "curve", "tangent", "--poly", "x^2-y^2", "--point", "0,0,1")
    assert payload["result"]["hyperplane"] == ["0", "0", "0", "0", "0", "1"]


def test_curve_singular(capsys):
    _, payload, _ = run(capsys, "curve", "singular", "--poly", "x*y", "--point", "0,0,1")
    assert payload["result"]["singular"] is True


def test_verify(capsys):
    code, payload, _ = run(capsys, "verify", "--trials", "2", "--seed", "7")
    assert code == 0
    assert payload["inputs"]["seed"] == 7
    assert payload["result"]["ok"] is True


def test_verify_bad_trials(capsys):
    code, _, _ = run(capsys, "verify", "--trials", "0")
    assert code == 2


def test_pretty(capsys):
    code = main(["--pretty", "invariants", "--degree", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "genus" in out
    assert "-5/9" in out


def test_usage_error(capsys):
    assert main(["nonsense"]) == 2
    assert main([]) == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert __version__ in capsys.readouterr().out
