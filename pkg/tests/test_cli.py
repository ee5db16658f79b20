### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import io

# Installed
import orjson
import pytest

# Package
from clusterscope.catalog import catalog_entry
from clusterscope.cli import dispatch
from clusterscope.formats import format_quiver, parse_quiver
from clusterscope.quiver import from_arrows

### SETUP
### ============================================================================
SMALL_BUDGET = ["--class-budget", "200", "--depth-budget", "4"]


def catalog_text(name: str, surface: bool = False) -> str:
    argv = ["catalog", name] + (["--surface"] if surface else [])
    result = dispatch(argv)
    assert result.exit_status == 0
    return result.payload["text"]


def run(argv, text: str = ""):
    return dispatch(argv, stdin=io.StringIO(text))


### TESTS
### ============================================================================
## Plumbing
## -----------------------------------------------------------------------------
@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["banff", "--stop", "bogus"],
        ["class", "--class-budget", "0"],
        ["mutate"],
        ["laurent-check", "--depth", "-1"],
    ],
)
def test_usage_errors(argv):
    assert run(argv).exit_status == 2
    return


def test_version():
    assert run(["--version"]).exit_status == 0
    return


def test_malformed_input():
    result = run(["info"], "quiver q\nvertices 2\nfrozen none\narrows\n1 1 1\nend\n")
    assert result.exit_status == 2
    assert "line 5" in result.report
    return


def test_missing_file(tmp_path):
    assert run(["info", str(tmp_path / "missing.qvr")]).exit_status == 2
    return


def test_json_output():
    result = run(["covering-pairs", "--json"], catalog_text("smallex"))
    assert result.exit_status == 0
    assert orjson.loads(result.report) == {"name": "smallex", "pairs": [[1, 4], [2, 4], [3, 4]]}
    return


def test_payload_file(tmp_path):
    target = tmp_path / "payload.json"
    result = run(["info", "--payload-file", str(target)], catalog_text("a2"))
    assert result.exit_status == 0
    assert result.payload_path == str(target)
    assert orjson.loads(target.read_bytes())["structure"]["acyclic"] is True
    return


def test_log_file(tmp_path):
    log = tmp_path / "clusterscope.log"
    result = run(["banff", "--debug", "--log-file", str(log)], catalog_text("markov"))
    assert result.exit_status == 1
    assert log.read_text()
    return


## Catalog and quivers
## -----------------------------------------------------------------------------
def test_catalog_list():
    result = run(["catalog", "--list"])
    assert result.exit_status == 0
    assert "smallex" in result.payload["names"]
    assert "markov" in result.payload["not_locally_acyclic"]
    return


def test_catalog_out(tmp_path):
    target = tmp_path / "x6.qvr"
    assert run(["catalog", "x6", "--out", str(target)]).exit_status == 0
    assert parse_quiver(target.read_text()) == ("x6", catalog_entry("x6").quiver)
    return


def test_catalog_errors():
    assert run(["catalog", "nonexistent"]).exit_status == 2
    assert run(["catalog", "smallex", "--surface"]).exit_status == 2
    return


def test_mutate(tmp_path):
    target = tmp_path / "out.qvr"
    result = run(["mutate", "--path", "1", "--out", str(target)], catalog_text("a3cycle"))
    assert result.exit_status == 0
    _, q = parse_quiver(target.read_text())
    assert sorted(q.arrows()) == [(0, 2, 1), (1, 0, 1)]
    return


def test_mutate_frozen_vertex():
    text = format_quiver(from_arrows(2, [(1, 2, 1)], frozen=[2]), "f")
    assert run(["mutate", "--path", "2"], text).exit_status == 2
    assert run(["mutate", "--path", "0"], text).exit_status == 2
    return


def test_info():
    result = run(["info"], catalog_text("smallex"))
    assert result.exit_status == 0
    assert result.payload["covering_pairs"] == [[1, 4], [2, 4], [3, 4]]
    assert result.payload["sinks"] == [4]
    assert result.payload["full_rank"] is True
    return


## Searches
## -----------------------------------------------------------------------------
@pytest.mark.parametrize(
    "name, status",
    [("a3cycle", 0), ("x7", 1), ("markov", 1)],
)
def test_find_acyclic(name, status):
    assert run(["find-acyclic"], catalog_text(name)).exit_status == status
    return


def test_find_acyclic_budget():
    text = catalog_text("smallex")
    result = run(["find-acyclic", "--class-budget", "5", "--depth-budget", "2"], text)
    assert result.exit_status == 3
    assert result.payload["verdict"] == "budget-exhausted"
    return


def test_class():
    result = run(["class"], catalog_text("x6"))
    assert result.exit_status == 0
    assert result.payload["size"] == 5
    assert result.payload["complete"] is True
    assert run(["class", "--budget", "3", "--depth", "2"], catalog_text("smallex")).exit_status == 3
    return


def test_covering_pair_search():
    result = run(["covering-pairs", "--search"], catalog_text("x7"))
    assert result.exit_status == 1
    assert run(["covering-pairs", "--search"], catalog_text("smallex")).exit_status == 0
    return


## Banff
## -----------------------------------------------------------------------------
def test_banff_markov():
    result = run(["banff"], catalog_text("markov"))
    assert result.exit_status == 1
    assert result.report.startswith("NoCoveringPairInCompleteClass at root")
    assert result.payload["witness_size"] == 1
    return


def test_banff_then_verify(tmp_path):
    target = tmp_path / "x6.cert"
    result = run(["banff", "--out", str(target)], catalog_text("x6"))
    assert result.exit_status == 0
    verdict = run(["banff-verify", str(target)])
    assert verdict.exit_status == 0
    assert verdict.report == "Accept"
    return


def test_banff_output_pipes_into_verify():
    result = run(["banff", "--seed-level"] + SMALL_BUDGET, catalog_text("smallex"))
    assert result.exit_status == 0
    assert result.report.startswith("# certificate for smallex")
    verdict = run(["banff-verify"], result.report)
    assert verdict.exit_status == 0
    return


def test_banff_verify_rejects():
    certificate = run(["banff"] + SMALL_BUDGET, catalog_text("smallex")).payload["certificate"]
    tampered = certificate.replace("pair=1,4", "pair=4,1")
    verdict = run(["banff-verify", "--json"], tampered)
    assert verdict.exit_status == 1
    assert orjson.loads(verdict.report)["reason"] == "invalid-covering-pair"
    assert run(["banff-verify"], "garbage").exit_status == 1
    return


def test_banff_budget():
    result = run(["banff", "--node-budget", "2"] + SMALL_BUDGET, catalog_text("smallex"))
    assert result.exit_status == 3
    assert result.report.startswith("BudgetExhausted")
    return


def test_reduced_banff_with_knowledge(tmp_path):
    known = tmp_path / "a3cycle.qvr"
    known.write_text(catalog_text("a3cycle"))
    argv = ["banff", "--reduced", "--knowledge", str(known)] + SMALL_BUDGET
    result = run(argv, catalog_text("smallex"))
    assert result.exit_status == 0
    assert result.payload["mode"] == "delete"
    certificate = result.payload["certificate"]
    assert run(["banff-verify"], certificate).exit_status == 1
    assert run(["banff-verify", "--knowledge", str(known)], certificate).exit_status == 0
    return


def test_reduced_banff_options():
    text = catalog_text("smallex")
    assert run(["banff", "--reduced", "--stop", "tree"], text).exit_status == 2
    assert run(["banff", "--reduced", "--seed-level"], text).exit_status == 2
    frozen = format_quiver(from_arrows(2, [(1, 2, 1)], frozen=[2]), "f")
    assert run(["banff", "--reduced"], frozen).exit_status == 2
    return


## Surfaces
## -----------------------------------------------------------------------------
def test_surface_classify():
    result = run(["surface", "classify"], catalog_text("torus2", surface=True))
    assert result.exit_status == 0
    assert "Thm-atleast2" in result.report
    assert run(["surface", "classify"], catalog_text("markov", surface=True)).exit_status == 1
    unknown = "surface open\ncomponent genus=1 boundary=1 punctures=1\nend\n"
    result = run(["surface", "classify", "--json"], unknown)
    assert result.exit_status == 0
    assert orjson.loads(result.report)["verdict"] == "unknown"
    return


def test_surface_rank():
    result = run(["surface", "rank", "--json"], catalog_text("sphere4", surface=True))
    assert orjson.loads(result.report) == {"name": "sphere4", "rank": 6}
    invalid = "surface bad\ncomponent genus=0 boundary=none punctures=2\nend\n"
    assert run(["surface", "rank"], invalid).exit_status == 2
    assert run(["surface", "rank"], "surface\nend extra\n").exit_status == 2
    return


## Algebraic checks
## -----------------------------------------------------------------------------
def test_present():
    result = run(["present"], catalog_text("a2"))
    assert result.exit_status == 0
    assert result.payload["relations"] == ["a1*a1' = a2 + 1", "a2*a2' = 1 + a1"]
    assert run(["present"], catalog_text("markov")).exit_status == 1
    return


def test_jacobian_check():
    text = format_quiver(from_arrows(2, [(1, 2, 1)], frozen=[2]), "j")
    result = run(["jacobian-check", "--frozen", "2=3"], text)
    assert result.exit_status == 0
    assert result.payload == {"verdict": "pass", "jacobian_rank": 1, "exchange_rank": 1}
    assert run(["jacobian-check", "--frozen", "2=0"], text).exit_status == 1
    assert run(["jacobian-check", "--frozen", "2=x"], text).exit_status == 2
    assert run(["jacobian-check"], catalog_text("point")).payload["verdict"] == "vacuous"
    return


def test_degenerate_hom():
    result = run(["degenerate-hom", "--depth", "6"], catalog_text("markov"))
    assert result.exit_status == 0
    assert set(result.payload["values"].values()) == {"0"}
    assert run(["degenerate-hom"], catalog_text("smallex")).exit_status == 1
    return


def test_evaluate():
    result = run(["evaluate", "--path", "1,2,1,2,1"], catalog_text("a2"))
    assert result.exit_status == 0
    assert result.payload["values"][-1] == ["1", "1"]
    assert result.payload["values"][1] == ["2", "1"]
    zero = run(["evaluate", "--start", "1=0", "--path", "1"], catalog_text("a2"))
    assert zero.exit_status == 1
    assert zero.payload["step"] == 1
    return


def test_kernel_path():
    result = run(["kernel-path"], catalog_text("markov"))
    assert result.exit_status == 0
    assert result.payload["cycle"] == [1, 2, 3]
    assert run(["kernel-path", "--values", "1=1,2=1"], catalog_text("a2")).exit_status == 1
    assert run(["kernel-path"], catalog_text("smallex")).exit_status == 1
    return


def test_laurent_check():
    result = run(["laurent-check", "--depth", "3", "--variables"], catalog_text("a2"))
    assert result.exit_status == 0
    assert result.payload["violations"] == []
    assert len(result.payload["variables"]) == 5
    assert result.payload["complete"] is True
    return


def test_laurent_check_markov_variables():
    # initial variables count too: 3 + 3 after one step + 6 after two
    result = run(["laurent-check", "--depth", "2", "--variables"], catalog_text("markov"))
    assert result.exit_status == 0
    assert len(result.payload["variables"]) == 12
    assert result.payload["complete"] is False
    assert "12 cluster variables (incomplete):" in result.report
    return
