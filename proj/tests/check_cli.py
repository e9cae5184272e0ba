#!/usr/bin/env python3
"""Runs the primesym CLI and checks its reports against schemas/.

usage: check_cli.py <primesym binary> <source dir>
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

CLI = sys.argv[1]
SRC = pathlib.Path(sys.argv[2])

schemas = {}
for path in sorted((SRC / "schemas").glob("*.schema.json")):
    schemas[path.name] = json.loads(path.read_text())
registry = Registry().with_resources(
    (name, Resource.from_contents(s)) for name, s in schemas.items())

failures = []


def fail(msg):
    failures.append(msg)
    print("FAIL:", msg)


def validate(doc, schema_ref, what):
    name, _, pointer = schema_ref.partition("#")
    schema = {"$ref": schema_ref} if pointer else {"$ref": name}
    validator = jsonschema.Draft202012Validator(schema, registry=registry)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors[:3]:
        fail(f"{what}: {'/'.join(map(str, e.path))}: {e.message}")
    return not errors


def run(args, expect_code=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, timeout=600)
    if proc.returncode != expect_code:
        fail(f"{' '.join(args)}: exit {proc.returncode}, want {expect_code}\n{proc.stderr}")
    return proc


def flatten(j, prefix, out):
    if isinstance(j, dict):
        for k, v in j.items():
            flatten(v, k if not prefix else prefix + "." + k, out)
    elif isinstance(j, list) and j and isinstance(j[0], (dict, list)):
        for i, v in enumerate(j):
            flatten(v, f"{prefix}[{i}]", out)
    elif isinstance(j, str):
        out.append(f"{prefix}: {j}")
    else:
        out.append(f"{prefix}: {json.dumps(j, separators=(',', ':'), ensure_ascii=False)}")


def check(args, schema_ref, expect_code=0, extra=None):
    what = " ".join(args)
    proc = run(["--seed", "3", *args], expect_code)
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError as e:
        fail(f"{what}: output is not JSON ({e})")
        return None
    validate(doc, "envelope.schema.json", what + " [envelope]")
    if doc.get("seed") != 3:
        fail(f"{what}: envelope seed {doc.get('seed')}")
    validate(doc.get("result"), schema_ref, what)

    again = run(["--seed", "3", *args], expect_code)
    if again.stdout != proc.stdout:
        fail(f"{what}: output differs between two runs")
    workers = run(["--seed", "3", "--workers", "4", *args], expect_code)
    if workers.stdout != proc.stdout:
        fail(f"{what}: output differs with --workers 4")

    text = run(["--seed", "3", "--format", "text", *args], expect_code)
    if expect_code in (0, 1):
        lines = []
        flatten(doc, "", lines)
        if text.stdout.splitlines() != lines:
            fail(f"{what}: text and json reports disagree")
    if extra is not None:
        try:
            extra(doc["result"])
        except (AssertionError, KeyError, TypeError) as e:
            fail(f"{what}: {e}")
    return doc


def expect(cond, msg):
    if not cond:
        raise AssertionError(msg)


with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    f21 = tmp / "f21.grp"
    f21.write_text("name F21\ndegree 7\norder 21\n"
                   "gen (1,2,3,4,5,6,7)\ngen (2,3,5)(4,7,6)\n")
    z5 = tmp / "z5.grp"
    z5.write_text("name Z5\ndegree 5\norder 5\ngen (1,2,3,4,5)\n")
    a5_12 = tmp / "a5_12.grp"
    a5_12.write_text("name A5\ndegree 12\norder 60\n"
                     "gen (1,2,3)\ngen (1,2,3,4,5)\n")
    m11_12 = tmp / "m11_12.grp"
    m11_12.write_text("name M11\ndegree 12\norder 7920\n"
                      "gen (1,2,3,4,5,6,7,8,9,10,11)\ngen (3,7,11,8)(4,10,5,6)\n")
    s3_4 = tmp / "s3_4.grp"
    s3_4.write_text("name S3\ndegree 4\norder 6\ngen (1,2)\ngen (1,2,3)\n")
    k4 = tmp / "k4.edges"
    k4.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    bad = tmp / "bad.grp"
    bad.write_text("name Bad\ndegree 5\norder 60\ngen (1,2,3\n")

    # number theory
    check(["numth", "phi", "--m", "6", "--q", "2"], "numth.schema.json#/$defs/phi",
          extra=lambda r: expect(r["phi"] == "3", "Phi_6(2) = 3"))
    check(["numth", "zsig", "--m", "12", "--q", "2"], "numth.schema.json#/$defs/zsig_one")
    check(["numth", "zsig", "--max-m", "20", "--max-q", "32"],
          "numth.schema.json#/$defs/zsig_scan",
          extra=lambda r: expect(r["exceptions"] == [[2, "3"], [2, "7"], [2, "31"], [6, "2"]],
                                 f"exceptions {r['exceptions']}"))
    check(["numth", "lemma-r", "--d", "3", "--q", "2"], "numth.schema.json#/$defs/lemma_one",
          extra=lambda r: expect(r["r"] == "7" and r["r_prime"], "(2^3-1)/(2-1) = 7 prime"))
    check(["numth", "lemma-r", "--max-d", "7", "--max-q", "16"],
          "numth.schema.json#/$defs/lemma_scan")
    check(["numth", "ppart", "--n", "720", "--p", "2"], "numth.schema.json#/$defs/ppart",
          extra=lambda r: expect(r["p_part"] == "16", "2-part of 720"))
    check(["table1", "enumerate", "--line", "3", "--bound", "4"], "table1.schema.json")
    check(["table1", "enumerate", "--line", "1", "--bound", "16"], "table1.schema.json",
          extra=lambda r: expect([i["L"] for i in r["instances"]] == ["A_14"], "line 1 bound 16"))

    # groups
    check(["group", "order", "--file", str(SRC / "atlas" / "M12.grp")],
          "group.schema.json#/$defs/order",
          extra=lambda r: expect(r["order"] == "95040", "|M12|"))
    check(["group", "stab", "--file", "M11", "--point", "1"], "group.schema.json#/$defs/stab",
          extra=lambda r: expect(r["stabilizer"]["order"] == "720", "|M11_1|"))
    check(["group", "orbit", "--file", "PSL3_2_deg24", "--point", "1"],
          "group.schema.json#/$defs/orbit")
    check(["group", "normalizer", "--file", "S7", "--sub", str(f21)], "group.schema.json",
          extra=lambda r: expect(r["order"] == "42", "N_S7(F21)"))
    check(["group", "centralizer", "--file", "S5", "--sub", str(z5)], "group.schema.json",
          extra=lambda r: expect(r["order"] == "5", "C_S5(Z5)"))
    check(["group", "intersect", "--file", "A7", "--sub", str(f21)], "group.schema.json",
          extra=lambda r: expect(r["order"] == "21", "A7 meets F21"))

    # graphs
    check(["graph", "analyze", "--group", "M12", "--h", str(m11_12), "--x", "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"],
          "graph.schema.json#/$defs/analyze")
    check(["graph", "build", "--group", "S4", "--h", str(s3_4), "--x", "(1,4)"],
          "graph.schema.json#/$defs/build",
          extra=lambda r: expect(r["props"]["complete"] and r["props"]["valency"] == 3, "K4"))
    check(["graph", "props", "--edges", str(k4), "--n", "4"], "graph.schema.json#/$defs/props",
          extra=lambda r: expect(r["edge_count"] == 6, "K4 edges"))

    # search
    check(["search", "remark", "--h-file", str(f21), "--r", "7", "--ambient", "A"],
          "search.schema.json",
          extra=lambda r: expect(r["search"]["verdict"] == "exists", r["search"]["verdict"]))
    check(["search", "remark", "--h-file", str(z5), "--r", "5", "--ambient", "A"],
          "search.schema.json",
          extra=lambda r: expect(r["search"]["verdict"] == "does not exist", r["search"]["verdict"]))
    check(["search", "remark", "--h-file", str(z5), "--r", "5", "--budget", "30",
           "--mode", "randomized"], "search.schema.json",
          extra=lambda r: expect(r["search"]["verdict"].startswith("not found (budget 30, seed 3)"),
                                 r["search"]["verdict"]))

    # claims and atlas
    check(["claims", "list"], "claims.schema.json#/$defs/list")
    check(["claims", "run", "K12_FROM_M12"], "claims.schema.json",
          extra=lambda r: expect(r["passed"], "K12_FROM_M12 passes"))
    check(["atlas", "list"], "atlas.schema.json#/$defs/list")
    check(["atlas", "verify"], "atlas.schema.json#/$defs/verify",
          extra=lambda r: expect(r["verified"], "all records verify"))
    validate(json.loads((SRC / "claims" / "registry.json").read_text()),
             "registry.schema.json", "claims/registry.json")

    # a failing claim exits 1
    failing = tmp / "failing.json"
    reg = json.loads((SRC / "claims" / "registry.json").read_text())
    zsig = next(c for c in reg["claims"] if c["id"] == "ZSIG_TABLE")
    zsig["expected"]["exceptions"] = [[2, 3]]
    reg["claims"] = [zsig]
    failing.write_text(json.dumps(reg))
    check(["claims", "--registry", str(failing), "run", "ZSIG_TABLE"], "claims.schema.json",
          expect_code=1, extra=lambda r: expect(not r["passed"], "claim must fail"))

    # input errors exit 2, budget errors exit 3
    check(["group", "order", "--file", str(bad)], "error.schema.json", expect_code=2,
          extra=lambda r: expect(r["kind"] == "ParseError", r["kind"]))
    check(["group", "order", "--file", "NoSuchGroup"], "error.schema.json", expect_code=2,
          extra=lambda r: expect(r["kind"] == "UnknownName", r["kind"]))
    check(["claims", "run", "NO_SUCH_CLAIM"], "error.schema.json", expect_code=2,
          extra=lambda r: expect(r["kind"] == "UnknownClaim", r["kind"]))
    check(["search", "remark", "--h-file", "S5", "--r", "5", "--ambient", "A"],
          "error.schema.json", expect_code=2,
          extra=lambda r: expect(r["kind"] == "NotASubgroup", r["kind"]))
    check(["--budget", "3", "group", "normalizer", "--file", "A12", "--sub", str(a5_12)],
          "error.schema.json", expect_code=3,
          extra=lambda r: expect(r["kind"] == "BudgetExceeded", r["kind"]))
    run(["numth", "phi", "--m", "6"], expect_code=2)
    run(["no-such-command"], expect_code=2)
    run(["--format", "yaml", "atlas", "list"], expect_code=2)

if failures:
    print(f"{len(failures)} CLI check(s) failed")
    sys.exit(1)
print("all CLI checks passed")
