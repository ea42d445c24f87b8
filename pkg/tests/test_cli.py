import json

import pytest

from cli_cases import CASES, GOLDEN, invoke
from higgscoha import cli, grcoha, jordan, ktheory
from higgscoha.tautalg import chern, hopf, hpoly, series

LIBRARY_OPS = [
    "is_positive", "euler_coh", "euler_higgs", "slope", "twist", "leq_standard",
    "dim_coh", "dim_higgs", "dim_ext_stack", "rank_q_fibration",
    "total_class", "row_classes", "rows_to_type", "kernel_class", "preceq",
    "enumerate_rank0", "enumerate_bounded", "downset", "render_young",
    "vb_stack_rank", "dim_q_correspondence",
    "hpoly_mul", "poincare_coh_positive_rank", "poincare_coh_torsion",
    "kunneth_total_chern", "coproduct", "chern_to_chchar", "twist_class", "k_difference",
    "fundamental_class", "leading_product", "strata_sheaf_classes", "hmodule_act",
    "stratum_series", "downset_series",
]  # fmt: skip

MODULES = (ktheory, jordan, hpoly, series, chern, hopf, grcoha)


def test_spec_examples_verbatim():
    assert invoke("euler coh --genus 2 --a 1,0 --b 1,1") == (0, "0\n", "")
    code, out, _ = invoke("jordan enum --rank0 3")
    assert code == 0 and out.splitlines() == ["0,3", "0,1;0,1", "0,0;0,0;0,1"]
    assert invoke("series torsion --genus 2 --d 1 --N 4")[1] == "1 + 4q + 2q^2 + 4q^3 + 2q^4\n"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name):
    code, out, err = invoke(CASES[name])
    assert code == 0, err
    assert out == (GOLDEN / f"{name}.txt").read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_repeat_invocation_is_byte_identical(name):
    assert invoke(CASES[name]) == invoke(CASES[name])


def test_every_library_op_has_exactly_one_subcommand():
    paths = cli.build_parser().get_default("handlers")
    for op in LIBRARY_OPS:
        assert op in cli.REGISTRY, op
        assert any(hasattr(m, op) for m in MODULES), op
    assert len(set(cli.REGISTRY.values())) == len(cli.REGISTRY)
    assert set(cli.REGISTRY.values()) == set(paths)


def test_every_registered_path_parses():
    parser = cli.build_parser()
    for path in cli.REGISTRY.values():
        with pytest.raises(SystemExit) as exc:
            parser.parse_args(path.split() + ["--help"])
        assert exc.value.code == 0


def test_json_schema():
    code, out, _ = invoke("dims higgs --genus 2 --a 2,1 --format json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"op", "inputs", "result", "bounds"}
    assert payload["op"] == "dims higgs"
    assert payload["inputs"] == {"genus": 2, "a": "2,1"}


def test_rationals_printed_exactly():
    assert invoke("slope --a 3,-4")[1] == "-4/3\n"
    assert json.loads(invoke("slope --a 3,-4 --format json")[1])["result"] == "-4/3"


@pytest.mark.parametrize(
    "argv, arg",
    [
        ("euler coh --genus 2 --a 1,x --b 1,1", "--a"),
        ("jordan total --genus 2 --type 1,0;;1", "--type"),
        ("jordan decode --genus 2 --rows 1,0;1,3", "--rows"),
        ("series torsion --genus 2 --d -1 --N 4", "--d"),
        ("series coh --genus -1 --N 4", "--genus"),
        ("hopf coproduct --genus 1 --poly c[3,w] --a1 1,1 --a2 1,2 --N 2", "N=2"),
        ("hopf mul --genus 1 --p c[1,p3] --q 1", "--p"),
        ("gr fundamental --genus 1 --a 0,0", "--a"),
    ],
)
def test_validation_errors_exit_2_and_name_argument(argv, arg):
    code, out, err = invoke(argv)
    assert code == 2 and out == ""
    assert err.startswith("error:") and arg in err


def test_argparse_error_exits_2(capsys):
    assert invoke("euler coh --genus 2")[0] == 2
    assert invoke("nosuch")[0] == 2


def test_internal_error_exits_1(monkeypatch):
    def boom(args):
        raise RuntimeError("kaput")

    monkeypatch.setattr(cli, "cmd_slope", boom)
    code, out, err = invoke("slope --a 1,1")
    assert code == 1 and out == "" and "kaput" in err
