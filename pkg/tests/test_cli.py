"""Command-line interface: JSON shapes, exit codes, determinism.

The three documented invocations are pinned byte for byte; beyond that
the tests stick to exit-code contracts (0 pass, 1 verification failure,
2 usage error) and structural checks, so internal table growth does not
churn this file.
"""

import json

from click.testing import CliRunner

from jackcalc.cli import main


def run(*args):
    return CliRunner().invoke(main, args)


def test_e_documented_example():
    res = run("e", "--r", "1", "--alpha", "1", "--eta", "3")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["poly"] == [{"coef": "1", "exp": [3]}]
    assert doc["ones_value"] == "1"


def test_hooks_documented_example():
    res = run("hooks", "--r", "2", "--alpha", "1", "--eta", "0,0")
    assert res.exit_code == 0
    assert json.loads(res.output) == {"d": "1", "d_prime": "1", "e": "1"}


def test_verify_thm43_documented_example():
    res = run(
        "verify", "thm43", "--r", "2", "--alpha", "1", "--b", "2",
        "--eta", "1,1", "--deg", "3",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["pass"] is True
    assert len(doc["rows"]) == 10
    assert all(row["equal"] for row in doc["rows"])
    # evidence carries all three routes per row, as strings
    assert {"kappa", "direct", "formula", "via_mp", "equal"} <= set(doc["rows"][0])


def test_output_is_deterministic():
    args = ("verify", "lemma42", "--r", "2", "--alpha", "1/2", "--b", "2",
            "--eta", "2,2", "--deg", "2")
    assert run(*args).output == run(*args).output


def test_rationals_are_strings():
    res = run("binom", "--r", "2", "--alpha", "1", "--eta", "2,1", "--nu", "1,1")
    doc = json.loads(res.output)
    assert doc["value"] == "3/2"


def test_binom_w_verb():
    res = run(
        "binom-w", "--r", "2", "--alpha", "1", "--eta", "2,1",
        "--nu", "1,0", "--w", "2,1",
    )
    assert res.exit_code == 0
    assert json.loads(res.output)["value"] == "2"


def test_mp_verb_accepts_rational_lambda():
    res = run(
        "mp", "--r", "2", "--alpha", "1", "--kappa", "1,0", "--b", "2",
        "--lam", "1/2,3",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["value"] == "-6"
    assert doc["w"] == [1, 2]


def test_kernel_verb():
    res = run("kernel", "--r", "1", "--alpha", "1", "--deg", "2")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert {"coef": "1/2", "exp": [2, 2]} in doc["terms"]


def test_verify_lemma41_passes():
    res = run("verify", "lemma41", "--r", "1", "--alpha", "2", "--b", "4")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["pass"] is True and doc["residual_terms"] == []


def test_verify_mp1var_passes():
    res = run("verify", "mp1var", "--kmax", "3")
    assert res.exit_code == 0
    assert json.loads(res.output)["pass"] is True


def test_verify_sym_q_passes():
    res = run(
        "verify", "sym-q", "--r", "2", "--alpha", "1", "--b", "2",
        "--eta", "2,1", "--deg", "2",
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["pass"] is True
    assert any("interpolant_symmetric" in row for row in doc["rows"])


def test_quad_ortho_passes():
    res = run("quad", "ortho", "--r", "1", "--alpha", "1", "--b", "2",
              "--max-weight", "2", "--nodes", "16")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["pass"] is True
    assert isinstance(doc["max_offdiag"], float)


def test_quad_laplace_passes():
    res = run("quad", "laplace", "--c", "3/2", "--l", "1", "--nodes", "16")
    assert res.exit_code == 0
    assert json.loads(res.output)["pass"] is True


def test_quad_failure_exits_one():
    res = run("quad", "ortho", "--r", "1", "--alpha", "1", "--b", "2",
              "--max-weight", "1", "--tol", "1e-30")
    assert res.exit_code == 1
    assert json.loads(res.output)["pass"] is False


def test_usage_errors_exit_two():
    assert run("e", "--r", "1", "--alpha", "0", "--eta", "1").exit_code == 2
    assert run("e", "--r", "1", "--alpha", "1", "--eta", "x").exit_code == 2
    assert run("e", "--r", "2", "--alpha", "1", "--eta", "1,2,3").exit_code == 2
    assert run("kernel", "--r", "1", "--alpha", "1", "--deg", "9").exit_code == 2
    assert run("binom-w", "--r", "2", "--alpha", "1", "--eta", "1,0",
               "--nu", "0,0", "--w", "1,1").exit_code == 2
    assert run("verify", "lemma41", "--r", "1", "--alpha", "1", "--b", "3").exit_code == 2


def test_usage_error_names_offending_flag():
    res = run("e", "--r", "1", "--alpha", "3/0", "--eta", "1")
    assert res.exit_code == 2
    assert "--alpha" in res.output
